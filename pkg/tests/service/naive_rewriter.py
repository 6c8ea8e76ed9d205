# Copyright 2021 ecodeclub
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http:#www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
独立的朴素改写器，作为范式计算的对照。

不调用 app.service.normal_form，直接在记号序列上反复应用改写规则
直到不动点：

- 合并相邻的 a 幂，删除 a^0
- 自由消去 t t^-1 与 t^-1 t
- a^{dq+r} t -> a^r t a^{dp}，a^{dp+r} t^-1 -> a^r t^-1 a^{dq}，r 落在窗口内
"""

import random
from collections.abc import Iterable

from app.domain.group import (
    BSNormalForm,
    GeneratorLetter,
    GroupParams,
    Syllable,
    Variant,
    Word,
)

Token = tuple[str, int]


def _window(params: GroupParams, variant: Variant, t_sign: int) -> range:
    p, q = params.p, params.q
    if variant is Variant.STANDARD:
        return range(0, q) if t_sign > 0 else range(0, p)
    if t_sign > 0:
        return range(-((q - 1) // 2), q // 2 + 1)
    return range(-((p - 1) // 2), p // 2 + 1)


def _rewrite_once(
    tokens: list[Token], params: GroupParams, variant: Variant
) -> bool:
    for i, (kind, value) in enumerate(tokens):
        if kind == "a" and value == 0:
            del tokens[i]
            return True
        if i + 1 == len(tokens):
            break
        next_kind, next_value = tokens[i + 1]
        if kind == "a" and next_kind == "a":
            tokens[i : i + 2] = [("a", value + next_value)]
            return True
        if kind == "t" and next_kind == "t" and value == -next_value:
            del tokens[i : i + 2]
            return True
        if kind == "a" and next_kind == "t":
            window = _window(params, variant, next_value)
            if value in window:
                continue
            divisor, factor = (
                (params.q, params.p) if next_value > 0 else (params.p, params.q)
            )
            r = (value - window.start) % divisor + window.start
            d = (value - r) // divisor
            tokens[i : i + 2] = [("a", r), ("t", next_value), ("a", d * factor)]
            return True
    return False


def naive_normal_form(
    word: Iterable[GeneratorLetter], params: GroupParams, variant: Variant
) -> BSNormalForm:
    tokens: list[Token] = [
        ("a" if letter.base == "a" else "t", letter.sign) for letter in word
    ]
    while _rewrite_once(tokens, params, variant):
        pass

    syllables: list[Syllable] = []
    pending = 0
    for kind, value in tokens:
        if kind == "a":
            pending += value
        else:
            syllables.append(Syllable(pending, value))
            pending = 0
    return BSNormalForm(params, variant, tuple(syllables), pending)


def random_word(rng: random.Random, max_length: int) -> Word:
    """长度在 [0, max_length] 内均匀分布的随机单词"""
    length = rng.randint(0, max_length)
    letters = list(GeneratorLetter)
    return tuple(rng.choice(letters) for _ in range(length))

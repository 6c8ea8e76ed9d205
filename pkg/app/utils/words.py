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

"""生成元单词的解析与格式化：a, A(=a^-1), t, T(=t^-1)，以空白分隔"""

from __future__ import annotations

from typing import TYPE_CHECKING

from app.domain.errors import WordParseError
from app.domain.group import GeneratorLetter, Word

if TYPE_CHECKING:
    from collections.abc import Iterable

    from app.domain.group import BSNormalForm

_TOKENS = {letter.value: letter for letter in GeneratorLetter}


def parse_word(text: str) -> Word:
    """空串或空白串是空单词"""
    letters: list[GeneratorLetter] = []
    for position, token in enumerate(text.split()):
        letter = _TOKENS.get(token)
        if letter is None:
            raise WordParseError(token, position)
        letters.append(letter)
    return tuple(letters)


def format_word(word: Iterable[GeneratorLetter]) -> str:
    return " ".join(letter.value for letter in word)


def pretty_word(word: Iterable[GeneratorLetter]) -> str:
    """人类可读形式，例如 t a t⁻¹；空单词记为 ε"""
    return " ".join(letter.pretty for letter in word) or "ε"


def _pretty_power(base: str, exponent: int) -> str:
    if exponent == 1:
        return base
    if exponent == -1:
        return f"{base}⁻¹"
    return f"{base}^{exponent}"


def pretty_form(nf: BSNormalForm) -> str:
    """范式写成 w = t·(a t⁻¹), N = 3 的形式，每个音节用 · 分隔"""
    syllables: list[str] = []
    for syllable in nf.syllables:
        t = _pretty_power("t", syllable.t_sign)
        if syllable.a_exponent == 0:
            syllables.append(t)
        else:
            syllables.append(f"({_pretty_power('a', syllable.a_exponent)} {t})")
    w = "·".join(syllables) or "ε"
    return f"w = {w}, N = {nf.tail}"

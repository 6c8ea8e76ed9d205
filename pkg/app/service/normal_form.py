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
BS(p,q) 的范式运算。

元素统一表示为 Britton 范式 w(a,t)·a^N。右乘一个生成元时，尾部指数按
t 的符号写成 d·除数 + r（r 落在变体窗口内），然后要么与最后一个符号相反的
音节相消（r = 0 时的 pinch），要么追加新音节并按 q/p 或 p/q 缩放尾部。
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING

from app.domain.errors import InvalidParamsError
from app.domain.group import (
    AffineMap,
    BSNormalForm,
    GeneratorLetter,
    GroupParams,
    SolvableNormalForm,
    Syllable,
    Variant,
    Word,
)

if TYPE_CHECKING:
    from collections.abc import Iterable


class _FormBuilder:
    """可变的范式构造器，右乘均摊 O(1)，只在本模块内部使用"""

    __slots__ = ("_alphabet", "_params", "_syllables", "_tail", "_variant")

    def __init__(self, nf: BSNormalForm) -> None:
        self._params = nf.params
        self._variant = nf.variant
        self._alphabet = nf.alphabet
        self._syllables = list(nf.syllables)
        self._tail = nf.tail

    def push(self, letter: GeneratorLetter) -> None:
        sign = letter.sign
        if letter.base == "a":
            self._tail += sign
            return

        p, q = self._params.p, self._params.q
        divisor, factor = (q, p) if sign > 0 else (p, q)
        d, r = self._alphabet.split(self._tail, divisor, sign)
        syllables = self._syllables
        if r == 0 and syllables and syllables[-1].t_sign == -sign:
            # t^{∓1} a^{d·divisor} t^{±1} = a^{d·factor}
            c = syllables.pop().a_exponent
            self._tail = c + d * factor
        else:
            syllables.append(Syllable(r, sign))
            self._tail = d * factor

    def extend(self, word: Iterable[GeneratorLetter]) -> None:
        for letter in word:
            self.push(letter)

    def freeze(self) -> BSNormalForm:
        return BSNormalForm(
            params=self._params,
            variant=self._variant,
            syllables=tuple(self._syllables),
            tail=self._tail,
        )


def identity(
    params: GroupParams, variant: Variant = Variant.STANDARD
) -> BSNormalForm:
    return BSNormalForm(params=params, variant=variant)


def multiply_generator(
    nf: BSNormalForm, letter: GeneratorLetter
) -> BSNormalForm:
    """返回 nf·letter 的范式"""
    if letter.base == "a":
        return BSNormalForm(
            nf.params, nf.variant, nf.syllables, nf.tail + letter.sign
        )
    builder = _FormBuilder(nf)
    builder.push(letter)
    return builder.freeze()


def normalize(
    word: Iterable[GeneratorLetter],
    params: GroupParams,
    variant: Variant = Variant.STANDARD,
) -> BSNormalForm:
    builder = _FormBuilder(identity(params, variant))
    builder.extend(word)
    return builder.freeze()


def multiply(x: BSNormalForm, y: BSNormalForm) -> BSNormalForm:
    if x.params != y.params or x.variant != y.variant:
        raise InvalidParamsError("只能相乘同一个群、同一变体下的范式")
    builder = _FormBuilder(x)
    builder.extend(to_word(y))
    return builder.freeze()


def to_word(nf: BSNormalForm) -> Word:
    """依次拼出每个音节（a 串后接 t^{±1}），最后是 |N| 个 a^{±1}"""
    letters: list[GeneratorLetter] = []
    for syllable in nf.syllables:
        a = GeneratorLetter.A if syllable.a_exponent > 0 else GeneratorLetter.A_INV
        letters.extend([a] * abs(syllable.a_exponent))
        letters.append(
            GeneratorLetter.T if syllable.t_sign > 0 else GeneratorLetter.T_INV
        )
    a = GeneratorLetter.A if nf.tail > 0 else GeneratorLetter.A_INV
    letters.extend([a] * abs(nf.tail))
    return tuple(letters)


def invert_word(word: Iterable[GeneratorLetter]) -> Word:
    return tuple(letter.inverse for letter in reversed(tuple(word)))


def inverse(nf: BSNormalForm) -> BSNormalForm:
    return normalize(invert_word(to_word(nf)), nf.params, nf.variant)


def convert_variant(nf: BSNormalForm, variant: Variant) -> BSNormalForm:
    if nf.variant is variant:
        return nf
    return normalize(to_word(nf), nf.params, variant)


def word_length_of_form(nf: BSNormalForm) -> int:
    """范式单词的长度 |w| + |N|，是词长度量的上界"""
    return nf.w_length + abs(nf.tail)


def syllable_runs(nf: BSNormalForm) -> list[tuple[int, int]]:
    """
    把音节序列写成 t^{m_0} a^{r_1} t^{m_1} ... a^{r_k} t^{m_k} 的形式。

    Returns:
        [(r_i, m_i)]，第一项的 r 为 0 时对应 t^{m_0}
    """
    runs: list[tuple[int, int]] = []
    for syllable in nf.syllables:
        if runs and syllable.a_exponent == 0:
            r, m = runs[-1]
            if (m > 0) == (syllable.t_sign > 0):
                runs[-1] = (r, m + syllable.t_sign)
                continue
        runs.append((syllable.a_exponent, syllable.t_sign))
    return runs


def free_reduce(word: Iterable[GeneratorLetter]) -> Word:
    stack: list[GeneratorLetter] = []
    for letter in word:
        if stack and stack[-1] is letter.inverse:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def solvable_normal_form(
    word: Iterable[GeneratorLetter], q: int
) -> SolvableNormalForm:
    """
    BS(1,q) 中的范式 t^{-m} a^N t^n，使用改写规则
    ta = a^q t, ta^{-1} = a^{-q} t, at^{-1} = t^{-1}a^q, a^{-1}t^{-1} = t^{-1}a^{-q}。
    """
    if q < 2:
        raise InvalidParamsError(f"可解范式要求 q > 1，实际为 q={q}")
    m = big_n = n = 0
    for letter in word:
        if letter.base == "a":
            big_n += letter.sign * q**n
        elif letter.sign > 0:
            n += 1
        elif n > 0:
            n -= 1
        else:
            m += 1
            big_n *= q
        # t^{-1} a^{qk} t = a^k
        while m > 0 and n > 0 and big_n % q == 0:
            m, n, big_n = m - 1, n - 1, big_n // q
    return SolvableNormalForm(m=m, N=big_n, n=n)


def solvable_to_word(nf: SolvableNormalForm) -> Word:
    a = GeneratorLetter.A if nf.N > 0 else GeneratorLetter.A_INV
    return (
        (GeneratorLetter.T_INV,) * nf.m
        + (a,) * abs(nf.N)
        + (GeneratorLetter.T,) * nf.n
    )


def letter_map(letter: GeneratorLetter, params: GroupParams) -> AffineMap:
    """a -> (x -> x±1)，t -> (x -> (q/p)^{±1} x)"""
    if letter.base == "a":
        return AffineMap(Fraction(1), Fraction(letter.sign))
    ratio = params.ratio if letter.sign > 0 else 1 / params.ratio
    return AffineMap(ratio, Fraction(0))


def affine_image(
    word: Iterable[GeneratorLetter], params: GroupParams
) -> AffineMap:
    """单词在仿射表示下的像，φ(uv) = φ(u)∘φ(v)；p = 1 时是忠实表示"""
    image = AffineMap()
    for letter in word:
        image = image.compose(letter_map(letter, params))
    return image


def solvable_affine_image(nf: SolvableNormalForm, q: int) -> AffineMap:
    """t^{-m} a^N t^n 的像 x -> q^{n-m} x + N q^{-m}"""
    return AffineMap(
        scale=Fraction(q) ** (nf.n - nf.m),
        offset=Fraction(nf.N, q**nf.m),
    )

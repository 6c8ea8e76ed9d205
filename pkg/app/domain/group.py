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

"""Baumslag–Solitar 群 BS(p,q) = <a,t | t a^p t^-1 = a^q> 的领域值对象"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from app.domain.errors import InvalidParamsError


class Variant(str, Enum):
    """范式的字母表变体"""

    STANDARD = "standard"  # a^r t (0<=r<q), a^s t^-1 (0<=s<p)
    BALANCED = "balanced"  # 指数落在以 0 为中心的窗口内


class GeneratorLetter(str, Enum):
    """生成元字母，取值即命令行中的记号 (A = a^-1, T = t^-1)"""

    A = "a"
    A_INV = "A"
    T = "t"
    T_INV = "T"

    @property
    def base(self) -> str:
        return self.value.lower()

    @property
    def sign(self) -> int:
        return 1 if self.value.islower() else -1

    @property
    def inverse(self) -> GeneratorLetter:
        return _INVERSES[self]

    @property
    def pretty(self) -> str:
        return self.base if self.sign > 0 else f"{self.base}⁻¹"

    @classmethod
    def of(cls, base: str, sign: int) -> GeneratorLetter:
        token = base.lower() if sign > 0 else base.upper()
        return cls(token)


_INVERSES = {
    GeneratorLetter.A: GeneratorLetter.A_INV,
    GeneratorLetter.A_INV: GeneratorLetter.A,
    GeneratorLetter.T: GeneratorLetter.T_INV,
    GeneratorLetter.T_INV: GeneratorLetter.T,
}

# 固定的生成元顺序，BFS、自动机导出等都依赖它保证输出确定
GENERATORS: tuple[GeneratorLetter, ...] = (
    GeneratorLetter.A,
    GeneratorLetter.A_INV,
    GeneratorLetter.T,
    GeneratorLetter.T_INV,
)

Word = tuple[GeneratorLetter, ...]


@dataclass(frozen=True, slots=True)
class GroupParams:
    """群参数 (p, q)，要求 1 <= p <= q"""

    p: int
    q: int

    def __post_init__(self) -> None:
        if not 1 <= self.p <= self.q:
            raise InvalidParamsError(
                f"群参数必须满足 1 <= p <= q，实际为 p={self.p}, q={self.q}"
            )

    @property
    def ratio(self) -> Fraction:
        """q/p，t 共轭作用的伸缩因子"""
        return Fraction(self.q, self.p)

    @property
    def is_solvable(self) -> bool:
        return self.p == 1

    def __str__(self) -> str:
        return f"BS({self.p},{self.q})"


@dataclass(frozen=True, slots=True)
class AlphabetSpec:
    """
    音节指数的允许范围。

    t 之前的指数落在 [-beta, alpha]，t^-1 之前的指数落在 [-delta, gamma]。
    标准变体中 beta = delta = 0，alpha = q-1，gamma = p-1。
    """

    variant: Variant
    alpha: int
    beta: int
    gamma: int
    delta: int

    @classmethod
    def for_params(cls, params: GroupParams, variant: Variant) -> AlphabetSpec:
        p, q = params.p, params.q
        if variant is Variant.STANDARD:
            return cls(variant, alpha=q - 1, beta=0, gamma=p - 1, delta=0)
        return cls(
            variant,
            alpha=q // 2,
            beta=(q - 1) // 2,
            gamma=p // 2,
            delta=(p - 1) // 2,
        )

    def window(self, t_sign: int) -> tuple[int, int]:
        """t^{t_sign} 之前允许的指数闭区间"""
        if t_sign > 0:
            return -self.beta, self.alpha
        return -self.delta, self.gamma

    def admits(self, a_exponent: int, t_sign: int) -> bool:
        low, high = self.window(t_sign)
        return low <= a_exponent <= high

    def split(self, exponent: int, divisor: int, t_sign: int) -> tuple[int, int]:
        """
        把 exponent 写成 d*divisor + r，余数 r 落在 t_sign 对应的窗口内。

        Returns:
            (d, r)
        """
        low, _ = self.window(t_sign)
        r = (exponent - low) % divisor + low
        return (exponent - r) // divisor, r


@dataclass(frozen=True, slots=True)
class Syllable:
    """音节 a^{a_exponent} t^{t_sign}"""

    a_exponent: int
    t_sign: int

    @property
    def length(self) -> int:
        return abs(self.a_exponent) + 1


@dataclass(frozen=True, slots=True)
class BSNormalForm:
    """
    Britton 范式 w(a,t) a^N。

    syllables 是 w 的音节序列，tail 是尾部 a 的指数 N（任意精度整数）。
    同一变体下两个不同的范式表示不同的群元素。
    """

    params: GroupParams
    variant: Variant
    syllables: tuple[Syllable, ...] = ()
    tail: int = 0

    @property
    def is_identity(self) -> bool:
        return not self.syllables and self.tail == 0

    @property
    def w_length(self) -> int:
        """|w|：音节部分的生成元长度"""
        return sum(s.length for s in self.syllables)

    @property
    def alphabet(self) -> AlphabetSpec:
        return AlphabetSpec.for_params(self.params, self.variant)

    def is_valid(self) -> bool:
        """检查音节指数范围以及自由约化（相邻音节之间没有 t t^-1 / t^-1 t）"""
        alphabet = self.alphabet
        previous: Syllable | None = None
        for syllable in self.syllables:
            if syllable.t_sign not in (1, -1):
                return False
            if not alphabet.admits(syllable.a_exponent, syllable.t_sign):
                return False
            if (
                previous is not None
                and syllable.a_exponent == 0
                and previous.t_sign == -syllable.t_sign
            ):
                return False
            previous = syllable
        return True


@dataclass(frozen=True, slots=True)
class SolvableNormalForm:
    """BS(1,q) 中元素的范式 t^{-m} a^N t^n"""

    m: int
    N: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 0 or self.n < 0:
            raise InvalidParamsError(
                f"m, n 必须非负，实际为 m={self.m}, n={self.n}"
            )

    def is_reduced(self, q: int) -> bool:
        """m, n 都为正时 N 不能是 q 的倍数（包括 0）"""
        return self.m == 0 or self.n == 0 or self.N % q != 0


@dataclass(frozen=True, slots=True)
class AffineMap:
    """仿射映射 x -> scale*x + offset，系数为精确有理数"""

    scale: Fraction = field(default_factory=lambda: Fraction(1))
    offset: Fraction = field(default_factory=lambda: Fraction(0))

    def __post_init__(self) -> None:
        if self.scale == 0:
            raise InvalidParamsError("仿射映射的伸缩系数不能为 0")

    def compose(self, inner: AffineMap) -> AffineMap:
        """self ∘ inner"""
        return AffineMap(
            scale=self.scale * inner.scale,
            offset=self.scale * inner.offset + self.offset,
        )

    def inverse(self) -> AffineMap:
        return AffineMap(scale=1 / self.scale, offset=-self.offset / self.scale)

    def __call__(self, x: Fraction | int) -> Fraction:
        return self.scale * x + self.offset

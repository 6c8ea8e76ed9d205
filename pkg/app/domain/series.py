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


"""整系数多项式与有理生成函数 - 值对象"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np
import sympy as sp

from app.domain.errors import InvalidParamsError

_Z = sp.Symbol("z")


def _fractions(poly: sp.Poly) -> list[Fraction]:
    """sympy 多项式的升幂有理系数，零多项式为空列表"""
    if poly.is_zero:
        return []
    return [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]


@dataclass(frozen=True, slots=True)
class IntPolynomial:
    """
    整系数单变量多项式，coefficients 按升幂排列。

    构造时去掉高次零系数，零多项式的 coefficients 为空。
    整除、最大公因式和无平方部分交给 sympy.Poly 在 ZZ / QQ 上计算。
    """

    coefficients: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        trimmed = list(self.coefficients)
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        object.__setattr__(self, "coefficients", tuple(int(c) for c in trimmed))

    @classmethod
    def of(cls, *coefficients: int) -> IntPolynomial:
        return cls(tuple(coefficients))

    @classmethod
    def product(cls, *factors: IntPolynomial) -> IntPolynomial:
        return reduce(lambda x, y: x * y, factors, cls.of(1))

    @classmethod
    def from_sympy(cls, poly: sp.Poly) -> IntPolynomial:
        """本原整系数代表：去分母、除去容量、首项为正"""
        if poly.is_zero:
            return cls()
        _, integral = poly.clear_denoms(convert=True)
        _, primitive = integral.primitive()
        if primitive.LC() < 0:
            primitive = -primitive
        return cls(tuple(int(c) for c in reversed(primitive.all_coeffs())))

    def to_sympy(self) -> sp.Poly:
        return sp.Poly(
            list(reversed(self.coefficients)) or [0], _Z, domain=sp.ZZ
        )

    @property
    def degree(self) -> int:
        """零多项式的次数记为 -1"""
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def __call__(self, x: int | Fraction) -> int | Fraction:
        """精确求值（Horner）"""
        value: int | Fraction = 0
        for c in reversed(self.coefficients):
            value = value * x + c
        return value

    def evaluate(self, x: float | np.ndarray) -> float | np.ndarray:
        """浮点求值，支持 numpy 数组"""
        if self.is_zero:
            return np.zeros_like(x, dtype=np.float64)
        return np.polynomial.polynomial.polyval(
            x, np.asarray(self.coefficients, dtype=np.float64)
        )

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(tuple(-c for c in self.coefficients))

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        size = max(len(self.coefficients), len(other.coefficients))
        left = self.coefficients + (0,) * (size - len(self.coefficients))
        right = other.coefficients + (0,) * (size - len(other.coefficients))
        return IntPolynomial(
            tuple(x + y for x, y in zip(left, right, strict=True))
        )

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        if self.is_zero or other.is_zero:
            return IntPolynomial()
        result = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, x in enumerate(self.coefficients):
            for j, y in enumerate(other.coefficients):
                result[i + j] += x * y
        return IntPolynomial(tuple(result))

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(
            tuple(i * c for i, c in enumerate(self.coefficients) if i > 0)
        )

    def rational_divmod(
        self, divisor: IntPolynomial
    ) -> tuple[list[Fraction], list[Fraction]]:
        """在有理数域上带余除法，返回升幂排列的 (商, 余式)"""
        if divisor.is_zero:
            raise ZeroDivisionError("除数为零多项式")
        quotient, remainder = self.to_sympy().div(divisor.to_sympy(), auto=True)
        return _fractions(quotient), _fractions(remainder)

    def exact_quotient(self, divisor: IntPolynomial) -> IntPolynomial:
        """整除的商；余式非零或商不是整系数时抛出 InvalidParamsError"""
        quotient, remainder = self.rational_divmod(divisor)
        if remainder or any(c.denominator != 1 for c in quotient):
            raise InvalidParamsError(f"{divisor} 不整除 {self}")
        return IntPolynomial(tuple(int(c) for c in quotient))

    def gcd(self, other: IntPolynomial) -> IntPolynomial:
        """最大公因式，取本原且首项为正的整系数代表"""
        return IntPolynomial.from_sympy(self.to_sympy().gcd(other.to_sympy()))

    def squarefree(self) -> IntPolynomial:
        """去掉重因式，保持整系数"""
        if self.degree < 1:
            return self
        return IntPolynomial.from_sympy(self.to_sympy().sqf_part())

    def render(self, variable: str = "x") -> str:
        """降幂书写，例如 x^3 - x^2 - 4x - 2"""
        if self.is_zero:
            return "0"
        terms: list[str] = []
        for power in range(self.degree, -1, -1):
            c = self.coefficients[power]
            if c == 0:
                continue
            magnitude = abs(c)
            if power == 0:
                body = str(magnitude)
            else:
                monomial = variable if power == 1 else f"{variable}^{power}"
                body = monomial if magnitude == 1 else f"{magnitude}{monomial}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(terms)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True, slots=True)
class RationalSeries:
    """形式幂级数 numerator(z) / denominator(z)，要求 denominator(0) != 0"""

    numerator: IntPolynomial
    denominator: IntPolynomial

    def __post_init__(self) -> None:
        if self.denominator.is_zero or self.denominator.coefficients[0] == 0:
            raise InvalidParamsError(
                f"分母常数项必须非零才能展开为幂级数: {self.denominator}"
            )

    def render(self) -> str:
        return f"({self.numerator.render('z')}) / ({self.denominator.render('z')})"


@dataclass(frozen=True, slots=True)
class DominantSingularity:
    """
    生成函数离原点最近的奇点。

    Attributes:
        radius: 收敛半径，即奇点的模
        growth_rate: 1 / radius
        is_real: 奇点是否为实数
    """

    radius: float
    growth_rate: float
    is_real: bool


@dataclass(frozen=True, slots=True)
class SeriesExpansion:
    """
    生成函数的展开结果，可附带 BFS 球面计数做交叉验证

    Attributes:
        coefficients: 前 n+1 个幂级数系数
        bfs_spheres: 可选，同一半径范围内 BFS 得到的球面大小
    """

    series: RationalSeries
    coefficients: tuple[int, ...]
    singularity: DominantSingularity
    bfs_spheres: tuple[int, ...] | None = None

    @property
    def matches_bfs(self) -> bool | None:
        if self.bfs_spheres is None:
            return None
        size = min(len(self.bfs_spheres), len(self.coefficients))
        return self.coefficients[:size] == self.bfs_spheres[:size]

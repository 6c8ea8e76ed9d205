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
增长多项式的最大实根、Edjvet–Johnson 球面生长级数，以及有理生成函数的
系数展开与主奇点。
"""

from __future__ import annotations

import logging

import numpy as np
from scipy import optimize

from app.domain.errors import (
    InvalidParamsError,
    RootNotFoundError,
    UnsupportedSeriesError,
)
from app.domain.group import GroupParams
from app.domain.series import DominantSingularity, IntPolynomial, RationalSeries

logger = logging.getLogger(__name__)

_ONE_MINUS_Z = IntPolynomial.of(1, -1)


def growth_polynomial(params: GroupParams) -> IntPolynomial:
    """
    平衡自动机增长率对应的多项式 P_pq，k = p//2，l = q//2：

        x^(l+1) - x^l - 2(x^(l-1) + ... + x^(l-k+1)) - C_k x^(l-k)
                      - 2(x^(l-1) + ... + x) - C_l

    C_k 在 p 为偶数时取 1，奇数时取 2；C_l 同理。两段求和重叠的项系数相加。
    p = 2, 3 时 k = 1，第一段求和为空，公式即退化为 P_22、P_23、P_2q、P_33、P_3q。
    """
    p, q = params.p, params.q
    if p < 2:
        raise InvalidParamsError(f"增长多项式要求 2 <= p <= q，实际为 {params}")
    k, ell = p // 2, q // 2
    c_k = 1 if p % 2 == 0 else 2
    c_ell = 1 if q % 2 == 0 else 2

    coefficients = [0] * (ell + 2)
    coefficients[ell + 1] += 1
    coefficients[ell] -= 1
    for power in range(ell - k + 1, ell):
        coefficients[power] -= 2
    coefficients[ell - k] -= c_k
    for power in range(1, ell):
        coefficients[power] -= 2
    coefficients[0] -= c_ell
    return IntPolynomial(tuple(coefficients))


def largest_real_root(
    poly: IntPolynomial,
    tolerance: float = 1e-12,
    scan_points: int = 4096,
) -> float:
    """
    [1, 1 + max|a_i| / |a_n|] 上的最大实根。

    从右端点向左扫描网格，找到第一个变号区间后用二分法求根。
    """
    if poly.degree < 1:
        raise RootNotFoundError(f"常数多项式没有根: {poly}")
    lower = 1.0
    upper = 1.0 + max(abs(c) for c in poly.coefficients) / abs(poly.leading)
    grid = np.linspace(upper, lower, scan_points + 1)
    values = np.asarray(poly.evaluate(grid))
    if values[0] == 0.0:
        return float(grid[0])

    for i in range(scan_points):
        right, left = values[i], values[i + 1]
        if left == 0.0:
            return float(grid[i + 1])
        if (left < 0.0) != (right < 0.0):
            root = optimize.bisect(
                lambda x: float(poly.evaluate(x)),
                float(grid[i + 1]),
                float(grid[i]),
                xtol=tolerance,
            )
            return float(root)

    raise RootNotFoundError(f"在 [{lower}, {upper}] 上找不到 {poly} 的变号区间")


def edjvet_johnson_series(p: int) -> RationalSeries:
    """
    BS(p,p) 的球面生长级数，目前只有 p = 2, 3 的闭式：

        p = 2: (1 - z - 2z^3) / ((1 - z)(1 - 2z)^2)
        p = 3: (1+z)^2 (1-2z)(1+z+2z^3) / ((1-z)(1-z-4z^2)(1-z-2z^2-2z^3))
    """
    if p == 2:
        return RationalSeries(
            numerator=IntPolynomial.of(1, -1, 0, -2),
            denominator=IntPolynomial.product(
                _ONE_MINUS_Z, IntPolynomial.of(1, -2), IntPolynomial.of(1, -2)
            ),
        )
    if p == 3:
        return RationalSeries(
            numerator=IntPolynomial.product(
                IntPolynomial.of(1, 1),
                IntPolynomial.of(1, 1),
                IntPolynomial.of(1, -2),
                IntPolynomial.of(1, 1, 0, 2),
            ),
            denominator=IntPolynomial.product(
                _ONE_MINUS_Z,
                IntPolynomial.of(1, -1, -4),
                IntPolynomial.of(1, -1, -2, -2),
            ),
        )
    raise UnsupportedSeriesError(f"BS({p},{p}) 没有已知的生成函数，只支持 p = 2, 3")


def ball_series(series: RationalSeries) -> RationalSeries:
    """球面级数 S(z) 对应的球级数 B(z) = S(z) / (1 - z)"""
    return RationalSeries(
        numerator=series.numerator,
        denominator=series.denominator * _ONE_MINUS_Z,
    )


def series_coefficients(series: RationalSeries, n: int) -> list[int]:
    """
    前 n+1 个幂级数系数，按分母给出的线性递推精确计算：

        d_0 c_k = a_k - sum_{j>=1} d_j c_{k-j}
    """
    if n < 0:
        raise InvalidParamsError(f"n 必须非负，实际为 {n}")
    numerator = series.numerator.coefficients
    denominator = series.denominator.coefficients
    d0 = denominator[0]
    coefficients: list[int] = []
    for k in range(n + 1):
        value = numerator[k] if k < len(numerator) else 0
        for j in range(1, min(k, len(denominator) - 1) + 1):
            value -= denominator[j] * coefficients[k - j]
        quotient, remainder = divmod(value, d0)
        if remainder:
            raise InvalidParamsError(
                f"{series.render()} 的第 {k} 个系数不是整数"
            )
        coefficients.append(quotient)
    return coefficients


def _refine_real_root(
    poly: IntPolynomial, estimate: float, spacing: float, tolerance: float
) -> float:
    """在 estimate 附近（不含其它根的区间内）用二分法精化单根"""
    half_width = spacing / 2
    left, right = estimate - half_width, estimate + half_width
    f_left = float(poly.evaluate(left))
    f_right = float(poly.evaluate(right))
    if f_left == 0.0:
        return left
    if f_right == 0.0:
        return right
    if (f_left < 0.0) == (f_right < 0.0):
        logger.warning(f"⚠️ {poly} 在 {estimate} 附近没有变号，保留特征值估计")
        return estimate
    return float(
        optimize.bisect(
            lambda x: float(poly.evaluate(x)), left, right, xtol=tolerance
        )
    )


def dominant_singularity(
    series: RationalSeries, tolerance: float = 1e-12
) -> DominantSingularity:
    """
    约去分子分母公因式后，分母模最小的根。

    根由伴随矩阵特征值（numpy.roots）筛选，实根再用二分法精化到 tolerance。
    重根先通过无平方部分化为单根。
    """
    common = series.numerator.gcd(series.denominator)
    denominator = series.denominator.exact_quotient(common)
    if denominator.degree < 1:
        raise RootNotFoundError(f"{series.render()} 约分后没有极点")
    if common.degree > 0:
        logger.debug(f"约去公因式 {common.render('z')}")

    poles = denominator.squarefree()
    roots = np.roots(np.asarray(poles.coefficients[::-1], dtype=np.float64))
    moduli = np.abs(roots)
    order = np.argsort(moduli, kind="stable")
    nearest = roots[order[0]]
    radius = float(moduli[order[0]])

    # 模相同时优先取正实根
    candidates = [
        roots[i] for i in order if moduli[i] - radius <= 1e-9 * max(radius, 1.0)
    ]
    real = [z for z in candidates if abs(z.imag) <= 1e-9 * max(radius, 1.0)]
    if real:
        nearest = max(real, key=lambda z: z.real)
        gaps = np.abs(roots - nearest)
        spacing = min([radius * 1e-3, *(float(d) for d in gaps if d > 1e-12)])
        refined = _refine_real_root(
            poles, float(nearest.real), spacing, tolerance
        )
        radius = abs(refined)

    singularity = DominantSingularity(
        radius=radius, growth_rate=1.0 / radius, is_real=bool(real)
    )
    logger.debug(
        f"{series.render()} 主奇点模 {radius:.12g}，增长率 "
        f"{singularity.growth_rate:.12g}"
    )
    return singularity


def growth_rate_from_series(
    series: RationalSeries, tolerance: float = 1e-12
) -> float:
    return dominant_singularity(series, tolerance).growth_rate

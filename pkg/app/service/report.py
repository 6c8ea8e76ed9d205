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

"""汇总各模块的增长率界，生成可复现的表格行"""

from __future__ import annotations

import logging
from decimal import ROUND_HALF_EVEN, Decimal
from typing import TYPE_CHECKING

from app.domain.errors import InvalidParamsError, UnsupportedSeriesError
from app.domain.group import GroupParams, Variant
from app.domain.report import ReportRow
from app.service.analysis import (
    dominant_singularity,
    edjvet_johnson_series,
    growth_polynomial,
    largest_real_root,
)
from app.service.automata import build_automaton, spectral_radius

if TYPE_CHECKING:
    from app.config.settings import Settings
    from app.service.cayley import CayleyGraphService

logger = logging.getLogger(__name__)

# 四舍五入到 4 位会变成整数的非整数值，按 6 位输出
_NEAR_INTEGER = Decimal("5e-5")
_INTEGER_SLACK = Decimal("1e-9")


def format_rate(value: float, digits: int) -> str:
    """银行家舍入到 digits 位小数"""
    quantum = Decimal(1).scaleb(-digits)
    exact = Decimal(repr(float(value)))
    return str(exact.quantize(quantum, rounding=ROUND_HALF_EVEN))


def format_paper_rate(value: float, digits: int) -> str:
    """
    按印刷表格的精度输出：整数值写成整数，离整数不到 5e-5 的非整数
    值用 6 位小数，其余用 digits 位。
    """
    exact = Decimal(repr(float(value)))
    distance = abs(exact - exact.to_integral_value(rounding=ROUND_HALF_EVEN))
    if distance <= _INTEGER_SLACK:
        return str(exact.to_integral_value(rounding=ROUND_HALF_EVEN))
    if distance < _NEAR_INTEGER:
        return format_rate(value, max(digits, 6))
    return format_rate(value, digits)


class ReportService:
    """把自动机、多项式、生成函数和 BFS 的结果合成 ReportRow"""

    def __init__(self, settings: Settings, cayley: CayleyGraphService) -> None:
        self._settings = settings
        self._cayley = cayley

    def grid(self, max_q: int, min_p: int = 2) -> list[tuple[int, int]]:
        """min_p <= p <= q <= max_q 的全部参数，按 (p, q) 字典序"""
        self._check_max_q(max_q)
        return [
            (p, q)
            for p in range(min_p, max_q + 1)
            for q in range(p, max_q + 1)
        ]

    def _check_max_q(self, q: int) -> None:
        limit = self._settings.report.max_q
        if q > limit:
            raise InvalidParamsError(f"q = {q} 超过配置的上限 {limit}")

    def row(
        self,
        params: GroupParams,
        fekete_radius: int | None = None,
        *,
        memory_limit: int | None = None,
        threads: int | None = None,
    ) -> ReportRow:
        automata = self._settings.automata
        tolerance = automata.power_iteration_tolerance
        iterations = automata.max_iterations
        standard = spectral_radius(
            build_automaton(params, Variant.STANDARD), tolerance, iterations
        )
        balanced = spectral_radius(
            build_automaton(params, Variant.BALANCED), tolerance, iterations
        )

        poly_root = None
        if params.p >= 2:
            analysis = self._settings.analysis
            poly_root = largest_real_root(
                growth_polynomial(params),
                analysis.root_tolerance,
                analysis.root_scan_points,
            )

        fekete = None
        if fekete_radius is not None:
            fekete = self._cayley.fekete_upper_bound(
                params,
                fekete_radius,
                memory_limit=memory_limit,
                threads=threads,
            )

        exact = None
        if params.p == params.q:
            try:
                series = edjvet_johnson_series(params.p)
                exact = dominant_singularity(
                    series, self._settings.analysis.root_tolerance
                ).growth_rate
            except UnsupportedSeriesError:
                exact = None

        return ReportRow(
            p=params.p,
            q=params.q,
            standard_bound=standard,
            balanced_bound=balanced,
            poly_root=poly_root,
            fekete_upper=fekete,
            exact_rate=exact,
        )

    def rows(
        self,
        pairs: list[tuple[int, int]],
        fekete_radius: int | None = None,
        *,
        memory_limit: int | None = None,
        threads: int | None = None,
    ) -> list[ReportRow]:
        logger.info(f"🚀 开始计算 {len(pairs)} 组参数的增长率界")
        result: list[ReportRow] = []
        for p, q in pairs:
            self._check_max_q(q)
            row = self.row(
                GroupParams(p, q),
                fekete_radius,
                memory_limit=memory_limit,
                threads=threads,
            )
            if not row.is_consistent():
                logger.warning(f"⚠️ BS({p},{q}) 的界不满足大小关系: {row}")
            result.append(row)
        logger.info(f"✅ 增长率表计算完成，共 {len(result)} 行")
        return result

    def format_row(
        self, row: ReportRow, *, paper_precision: bool, digits: int | None = None
    ) -> dict[str, str]:
        """CSV 输出用的字符串字段，空值输出为空串"""
        report = self._settings.report
        default = report.digits if digits is None else digits

        def render(value: float | None, paper_digits: int) -> str:
            if value is None:
                return ""
            if paper_precision:
                return format_paper_rate(value, paper_digits)
            return format_rate(value, default)

        return {
            "p": str(row.p),
            "q": str(row.q),
            "standard": render(row.standard_bound, report.standard_digits),
            "balanced": render(row.balanced_bound, report.balanced_digits),
            "poly_root": render(row.poly_root, report.balanced_digits),
            "fekete_upper": render(row.fekete_upper, 3),
            "exact_rate": render(row.exact_rate, report.balanced_digits),
        }

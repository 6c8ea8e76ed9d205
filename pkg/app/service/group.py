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

"""命令行与 HTTP 接口共用的门面服务，负责把各算法模块串起来"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

from app.domain.group import GroupParams, Variant
from app.domain.series import SeriesExpansion
from app.service import analysis, automata, metrics
from app.service.cayley import CayleyGraphService
from app.service.normal_form import normalize, solvable_normal_form
from app.service.report import ReportService

if TYPE_CHECKING:
    from app.config.settings import Settings
    from app.domain.automaton import GrowthAutomaton
    from app.domain.ball import BallTable
    from app.domain.group import BSNormalForm, SolvableNormalForm, Word
    from app.domain.metric import MetricBounds
    from app.domain.report import ReportRow
    from app.domain.series import IntPolynomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class NormalForms:
    standard: BSNormalForm
    balanced: BSNormalForm
    solvable: SolvableNormalForm | None


class BSGroupService:
    """BS(p,q) 各项计算的统一入口"""

    def __init__(
        self,
        settings: Settings,
        cayley: CayleyGraphService,
        report: ReportService,
    ) -> None:
        self._settings = settings
        self._cayley = cayley
        self._report = report

    @classmethod
    def create(cls, settings: Settings) -> BSGroupService:
        """按配置组装服务，命令行与 HTTP 接口共用"""
        cayley = CayleyGraphService(settings.bfs)
        return cls(settings, cayley, ReportService(settings, cayley))

    def normal_forms(self, params: GroupParams, word: Word) -> NormalForms:
        solvable = None
        if params.is_solvable and params.q > 1:
            solvable = solvable_normal_form(word, params.q)
        return NormalForms(
            standard=normalize(word, params, Variant.STANDARD),
            balanced=normalize(word, params, Variant.BALANCED),
            solvable=solvable,
        )

    def bounds(
        self,
        params: GroupParams,
        word: Word,
        exact_radius: int | None = None,
        *,
        memory_limit: int | None = None,
    ) -> tuple[BSNormalForm, MetricBounds, int | None]:
        nf = normalize(word, params, Variant.STANDARD)
        bounds = metrics.metric_estimate(nf)
        exact = None
        if exact_radius is not None:
            exact = self._cayley.word_length(
                params, word, exact_radius, memory_limit=memory_limit
            )
            if exact is not None and not bounds.contains(exact):
                logger.error(
                    f"❌ {params} 元素的精确长度 {exact} 不在估计区间 "
                    f"[{bounds.lower}, {bounds.upper}] 内"
                )
        return nf, bounds, exact

    def word_length(
        self,
        params: GroupParams,
        word: Word,
        max_radius: int,
        *,
        memory_limit: int | None = None,
    ) -> int | None:
        return self._cayley.word_length(
            params, word, max_radius, memory_limit=memory_limit
        )

    def sphere(
        self,
        params: GroupParams,
        radius: int,
        *,
        memory_limit: int | None = None,
        threads: int | None = None,
    ) -> BallTable:
        return self._cayley.ball(
            params, radius, memory_limit=memory_limit, threads=threads
        )

    def automaton(
        self, params: GroupParams, variant: Variant
    ) -> GrowthAutomaton:
        return automata.build_automaton(params, variant)

    def accepted_words(
        self, params: GroupParams, variant: Variant, n: int
    ) -> list[Word]:
        """长度 <= n 的接受单词，总数超过配置的枚举上限时抛出 ResourceLimitError"""
        return automata.enumerate_accepted(
            automata.build_automaton(params, variant),
            n,
            self._settings.automata.enumerate_cap,
        )

    def lower_rate(self, params: GroupParams, variant: Variant) -> float:
        config = self._settings.automata
        return automata.spectral_radius(
            automata.build_automaton(params, variant),
            config.power_iteration_tolerance,
            config.max_iterations,
        )

    def poly_rate(self, params: GroupParams) -> tuple[IntPolynomial, float]:
        config = self._settings.analysis
        poly = analysis.growth_polynomial(params)
        root = analysis.largest_real_root(
            poly, config.root_tolerance, config.root_scan_points
        )
        return poly, root

    def upper_rate(
        self,
        params: GroupParams,
        radius: int,
        *,
        memory_limit: int | None = None,
        threads: int | None = None,
    ) -> tuple[int, float]:
        """(sphere(radius), sphere(radius)^(1/radius))"""
        table = self._cayley.ball(
            params,
            radius,
            memory_limit=memory_limit,
            threads=threads,
            record_parents=False,
        )
        return table.sphere_sizes[radius], table.fekete(radius)

    def series(
        self,
        p: int,
        n: int,
        check_bfs: bool = False,
        *,
        memory_limit: int | None = None,
        threads: int | None = None,
    ) -> SeriesExpansion:
        series = analysis.edjvet_johnson_series(p)
        coefficients = analysis.series_coefficients(series, n)
        singularity = analysis.dominant_singularity(
            series, self._settings.analysis.root_tolerance
        )
        spheres = None
        if check_bfs:
            table = self._cayley.ball(
                GroupParams(p, p),
                n,
                memory_limit=memory_limit,
                threads=threads,
                record_parents=False,
            )
            spheres = tuple(table.sphere_sizes)
        expansion = SeriesExpansion(
            series=series,
            coefficients=tuple(coefficients),
            singularity=singularity,
            bfs_spheres=spheres,
        )
        if expansion.matches_bfs is False:
            logger.error(f"❌ BS({p},{p}) 生成函数系数与 BFS 球面计数不一致")
        return expansion

    def tables(
        self,
        max_q: int,
        min_p: int = 2,
        fekete_radius: int | None = None,
        *,
        memory_limit: int | None = None,
        threads: int | None = None,
    ) -> list[ReportRow]:
        return self._report.rows(
            self._report.grid(max_q, min_p),
            fekete_radius,
            memory_limit=memory_limit,
            threads=threads,
        )

    def format_row(
        self, row: ReportRow, *, paper_precision: bool, digits: int | None
    ) -> dict[str, str]:
        return self._report.format_row(
            row, paper_precision=paper_precision, digits=digits
        )

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

from app.domain.automaton import GrowthAutomaton
from app.domain.ball import BallTable
from app.domain.group import BSNormalForm, SolvableNormalForm, Word
from app.domain.metric import MetricBounds
from app.domain.report import ReportRow
from app.service.normal_form import to_word
from app.service.report import format_paper_rate, format_rate
from app.utils.codec import encode
from app.utils.words import format_word, pretty_word
from app.web.vo import (
    AutomatonResponse,
    BoundsResponse,
    EdgeVO,
    NormalFormVO,
    ReportRowVO,
    SolvableFormVO,
    SphereResponse,
    SphereRowVO,
    SyllableVO,
    TablesResponse,
)


class GroupConverter:
    """领域对象到 VO 的转换器"""

    @staticmethod
    def normal_form_to_vo(nf: BSNormalForm) -> NormalFormVO:
        word = to_word(nf)
        return NormalFormVO(
            variant=nf.variant,
            syllables=[
                SyllableVO(a_exponent=s.a_exponent, t_sign=s.t_sign)
                for s in nf.syllables
            ],
            tail=nf.tail,
            word=format_word(word),
            pretty=pretty_word(word),
            encoding=encode(nf).hex(),
        )

    @staticmethod
    def solvable_to_vo(nf: SolvableNormalForm) -> SolvableFormVO:
        return SolvableFormVO(m=nf.m, N=nf.N, n=nf.n)

    @staticmethod
    def bounds_to_vo(
        nf: BSNormalForm, bounds: MetricBounds, exact_length: int | None
    ) -> BoundsResponse:
        constants = bounds.constants
        return BoundsResponse(
            p=nf.params.p,
            q=nf.params.q,
            estimate=bounds.estimate,
            lower=bounds.lower,
            upper=bounds.upper,
            c1=constants.c1,
            d1=constants.d1,
            c2=constants.c2,
            d2=constants.d2,
            exact_length=exact_length,
        )

    @staticmethod
    def ball_to_vo(table: BallTable) -> SphereResponse:
        return SphereResponse(
            p=table.params.p,
            q=table.params.q,
            radius=table.radius,
            rows=[
                SphereRowVO(
                    radius=row.radius,
                    sphere=row.sphere,
                    ball=row.ball,
                    fekete=row.fekete,
                )
                for row in table.rows()
            ],
            submultiplicative=table.is_submultiplicative(),
        )

    @staticmethod
    def report_to_vo(
        rows: list[ReportRow],
        *,
        digits: int,
        paper_digits: tuple[int, int] | None = None,
    ) -> TablesResponse:
        """
        数值按银行家舍入后输出；paper_digits = (标准列, 平衡列) 时使用
        印刷表格的精度。
        """

        def rounded(value: float, paper: int) -> float:
            if paper_digits is None:
                return float(format_rate(value, digits))
            return float(format_paper_rate(value, paper))

        def optional(value: float | None, paper: int) -> float | None:
            return None if value is None else rounded(value, paper)

        standard, balanced = paper_digits or (digits, digits)

        return TablesResponse(
            rows=[
                ReportRowVO(
                    p=row.p,
                    q=row.q,
                    standard=rounded(row.standard_bound, standard),
                    balanced=rounded(row.balanced_bound, balanced),
                    poly_root=optional(row.poly_root, balanced),
                    fekete_upper=optional(row.fekete_upper, 3),
                    exact_rate=optional(row.exact_rate, balanced),
                )
                for row in rows
            ]
        )

    @staticmethod
    def automaton_to_vo(
        automaton: GrowthAutomaton,
        radius: float,
        counts: list[int],
        words: list[Word] | None = None,
    ) -> AutomatonResponse:
        index = automaton.state_index
        return AutomatonResponse(
            p=automaton.params.p,
            q=automaton.params.q,
            variant=automaton.variant,
            states=list(automaton.states),
            accept=sorted(automaton.accept, key=index.__getitem__),
            edges=[
                EdgeVO(source=s, letter=letter.value, target=t)
                for s, letter, t in automaton.edges
            ],
            spectral_radius=radius,
            counts=counts,
            words=(
                None if words is None else [format_word(w) for w in words]
            ),
        )

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
import math

import numpy as np
import pytest

from app.domain.automaton import GrowthAutomaton
from app.domain.errors import InvalidParamsError, ResourceLimitError
from app.domain.group import GeneratorLetter, GroupParams, Variant
from app.service.automata import (
    accepts,
    adjacency_matrix,
    ball_count,
    build_automaton,
    build_balanced_automaton,
    build_standard_automaton,
    count_accepted,
    enumerate_accepted,
    export_edges,
    lower_bound_table,
    spectral_radius,
)
from app.utils.words import parse_word

a, A, t, T = (
    GeneratorLetter.A,
    GeneratorLetter.A_INV,
    GeneratorLetter.T,
    GeneratorLetter.T_INV,
)

# 标准范式自动机给出的下界（5 位小数）
STANDARD_BOUNDS = {
    (2, 2): 2.0,
    (2, 3): 2.14790,
    (2, 4): 2.20557,
    (2, 5): 2.22919,
    (2, 10): 2.24668,
    (2, 20): 2.24698,
    (3, 3): 2.26953,
    (3, 4): 2.31651,
    (3, 5): 2.33529,
    (3, 10): 2.34841,
    (3, 20): 2.34859,
    (4, 4): 2.35930,
    (4, 5): 2.37627,
    (4, 10): 2.38786,
    (4, 20): 2.38801,
    (5, 5): 2.39246,
    (5, 10): 2.40345,
    (5, 20): 2.40358,
    (10, 10): 2.41396,
    (10, 20): 2.41409,
    (20, 20): 2.41421,
}

# 平衡范式自动机给出的改进下界（4 位小数，(20,20) 为 6 位）
# (4,10) 与 (10,20) 按特征多项式最大实根取 6 位
BALANCED_BOUNDS = {
    (2, 2): 2.0,
    (2, 3): 2.3028,
    (2, 4): 2.4142,
    (2, 5): 2.5115,
    (2, 10): 2.6083,
    (2, 20): 2.6180,
    (3, 3): 2.5616,
    (3, 4): 2.6511,
    (3, 5): 2.7321,
    (3, 10): 2.8071,
    (3, 20): 2.8136,
    (4, 4): 2.7321,
    (4, 5): 2.8063,
    (4, 10): 2.873816,
    (4, 20): 2.8794,
    (5, 5): 2.8751,
    (5, 10): 2.9365,
    (5, 20): 2.9413,
    (10, 10): 2.9917,
    (10, 20): 2.995839,
}


class TestConstruction:
    """自动机的状态和边"""

    def test_standard_bs22(self) -> None:
        automaton = build_standard_automaton(GroupParams(2, 2))
        assert automaton.states == ("S", "P", "M", "A1")
        assert automaton.accept == frozenset({"S", "P", "M"})
        assert automaton.start == "S"

    def test_standard_bs23_chain(self) -> None:
        automaton = build_standard_automaton(GroupParams(2, 3))
        assert automaton.states == ("S", "P", "M", "A1", "A2")
        assert automaton.transition("A1", a) == "A2"
        assert automaton.transition("A1", T) == "M"
        assert automaton.transition("A2", T) is None
        assert automaton.transition("A2", t) == "P"

    def test_balanced_bs23_edges(self) -> None:
        """5 个状态，13 条边，A-1 只有 t 出边"""
        automaton = build_balanced_automaton(GroupParams(2, 3))
        assert automaton.states == ("S", "P", "M", "A1", "A-1")
        assert len(automaton.edges) == 13
        assert export_edges(automaton) == (
            "S a A1\n"
            "S A A-1\n"
            "S t P\n"
            "S T M\n"
            "P a A1\n"
            "P A A-1\n"
            "P t P\n"
            "M a A1\n"
            "M A A-1\n"
            "M T M\n"
            "A1 t P\n"
            "A1 T M\n"
            "A-1 t P\n"
        )

    def test_balanced_bs47_edges(self) -> None:
        automaton = build_balanced_automaton(GroupParams(4, 7))
        assert len(automaton.states) == 9
        assert len(automaton.edges) == 23
        outgoing = {
            state: {
                letter.value
                for source, letter, _ in automaton.edges
                if source == state
            }
            for state in automaton.states
        }
        assert outgoing["A2"] == {"a", "t", "T"}
        assert outgoing["A3"] == {"t"}
        assert outgoing["A-1"] == {"A", "t", "T"}
        assert outgoing["A-2"] == {"A", "t"}
        assert outgoing["A-3"] == {"t"}

    def test_free_reduction(self) -> None:
        automaton = build_balanced_automaton(GroupParams(3, 5))
        assert automaton.transition("P", T) is None
        assert automaton.transition("M", t) is None
        assert automaton.transition("S", T) == "M"

    @pytest.mark.parametrize("variant", list(Variant))
    def test_deterministic_and_reachable(self, variant: Variant) -> None:
        for q in range(2, 11):
            for p in range(1, q + 1):
                automaton = build_automaton(GroupParams(p, q), variant)
                keys = [(s, letter) for s, letter, _ in automaton.edges]
                assert len(keys) == len(set(keys))
                assert automaton.reachable_states() == set(automaton.states)

    def test_adjacency_matrix(self) -> None:
        matrix = adjacency_matrix(build_standard_automaton(GroupParams(2, 2)))
        assert matrix.tolist() == [
            [0, 1, 1, 1],
            [0, 1, 0, 1],
            [0, 0, 1, 1],
            [0, 1, 1, 0],
        ]

    def test_rejects_nondeterministic_edges(self) -> None:
        with pytest.raises(InvalidParamsError):
            GrowthAutomaton(
                params=GroupParams(2, 2),
                variant=Variant.STANDARD,
                states=("S", "P"),
                edges=(("S", t, "P"), ("S", t, "S")),
                accept=frozenset({"S"}),
            )

    def test_rejects_unknown_accept_state(self) -> None:
        with pytest.raises(InvalidParamsError):
            GrowthAutomaton(
                params=GroupParams(2, 2),
                variant=Variant.STANDARD,
                states=("S",),
                edges=(),
                accept=frozenset({"X"}),
            )


class TestSpectralRadius:
    """邻接矩阵谱半径"""

    @pytest.mark.parametrize(("pq", "expected"), STANDARD_BOUNDS.items())
    def test_standard_bounds(
        self, pq: tuple[int, int], expected: float
    ) -> None:
        automaton = build_standard_automaton(GroupParams(*pq))
        assert spectral_radius(automaton) == pytest.approx(expected, abs=5e-6)

    @pytest.mark.parametrize(("pq", "expected"), BALANCED_BOUNDS.items())
    def test_balanced_bounds(
        self, pq: tuple[int, int], expected: float
    ) -> None:
        automaton = build_balanced_automaton(GroupParams(*pq))
        assert spectral_radius(automaton) == pytest.approx(expected, abs=5e-5)

    def test_balanced_bs2020(self) -> None:
        automaton = build_balanced_automaton(GroupParams(20, 20))
        assert spectral_radius(automaton) == pytest.approx(2.999966, abs=5e-7)

    def test_balanced_bs23_closed_form(self) -> None:
        automaton = build_balanced_automaton(GroupParams(2, 3))
        assert spectral_radius(automaton) == pytest.approx(
            (1 + math.sqrt(13)) / 2, abs=1e-9
        )

    def test_standard_bs23_characteristic_factor(self) -> None:
        rho = spectral_radius(build_standard_automaton(GroupParams(2, 3)))
        assert rho**3 - rho**2 - 2 * rho - 1 == pytest.approx(0, abs=1e-9)

    def test_balanced_bs47(self) -> None:
        automaton = build_balanced_automaton(GroupParams(4, 7))
        assert spectral_radius(automaton) == pytest.approx(2.85502, abs=5e-6)

    @pytest.mark.parametrize(
        ("variant", "pq", "expected"),
        [
            (Variant.BALANCED, (5, 10), 2.93650),
            (Variant.BALANCED, (10, 10), 2.99165),
            (Variant.BALANCED, (10, 20), 2.995839),
            (Variant.STANDARD, (2, 10), 2.2466809),
            (Variant.STANDARD, (2, 20), 2.24698),
        ],
    )
    def test_long_chains_not_stuck_on_row_sums(
        self, variant: Variant, pq: tuple[int, int], expected: float
    ) -> None:
        """长 a 链上最大分量会连续停在整数行和 3 或 2.25，不能据此停止"""
        automaton = build_automaton(GroupParams(*pq), variant)
        rho = spectral_radius(automaton)
        assert rho == pytest.approx(expected, abs=5e-6)
        assert rho not in (3.0, 2.25)

    @pytest.mark.parametrize("variant", list(Variant))
    def test_agrees_with_eigenvalues(self, variant: Variant) -> None:
        for q in range(2, 21):
            for p in range(2, q + 1):
                automaton = build_automaton(GroupParams(p, q), variant)
                matrix = adjacency_matrix(automaton).astype(np.float64)
                expected = float(np.abs(np.linalg.eigvals(matrix)).max())
                assert spectral_radius(automaton) == pytest.approx(
                    expected, abs=1e-9
                ), (p, q)

    def test_single_state_without_edges(self) -> None:
        automaton = GrowthAutomaton(
            params=GroupParams(1, 1),
            variant=Variant.STANDARD,
            states=("S",),
            edges=(),
            accept=frozenset({"S"}),
        )
        assert spectral_radius(automaton) == 0
        assert count_accepted(automaton, 3) == [1, 0, 0, 0]

    def test_balanced_dominates_standard(self) -> None:
        for q in range(2, 11):
            for p in range(2, q + 1):
                params = GroupParams(p, q)
                standard = spectral_radius(build_standard_automaton(params))
                balanced = spectral_radius(build_balanced_automaton(params))
                assert balanced >= standard - 1e-12, params

    def test_lower_bound_table(self) -> None:
        table = lower_bound_table(Variant.STANDARD, [(2, 2), (2, 3)])
        assert list(table) == [(2, 2), (2, 3)]
        assert table[(2, 3)] == pytest.approx(2.14790, abs=5e-6)


class TestCounting:
    """接受单词的精确计数与枚举"""

    def test_balanced_bs23_counts(self) -> None:
        automaton = build_balanced_automaton(GroupParams(2, 3))
        assert count_accepted(automaton, 2) == [1, 2, 5]
        assert ball_count(automaton, 2) == [1, 3, 8]

    def test_standard_bs22_counts(self) -> None:
        """标准字母表没有 a^-1：长度 2 的是 tt, TT, at, aT"""
        automaton = build_standard_automaton(GroupParams(2, 2))
        assert count_accepted(automaton, 2) == [1, 2, 4]
        assert enumerate_accepted(automaton, 2) == [
            (),
            (t,),
            (T,),
            (a, t),
            (a, T),
            (t, t),
            (T, T),
        ]

    def test_balanced_bs23_enumerate(self) -> None:
        automaton = build_balanced_automaton(GroupParams(2, 3))
        assert enumerate_accepted(automaton, 0) == [()]
        assert enumerate_accepted(automaton, 1) == [(), (t,), (T,)]
        assert set(enumerate_accepted(automaton, 2)[3:]) == {
            (t, t),
            (T, T),
            (a, t),
            (a, T),
            (A, t),
        }

    def test_enumerate_matches_counts(self) -> None:
        for variant in Variant:
            automaton = build_automaton(GroupParams(3, 5), variant)
            words = enumerate_accepted(automaton, 6)
            assert len(words) == sum(count_accepted(automaton, 6))
            assert len(set(words)) == len(words)
            assert all(accepts(automaton, w) for w in words)

    def test_enumerate_cap(self) -> None:
        automaton = build_balanced_automaton(GroupParams(4, 7))
        with pytest.raises(ResourceLimitError):
            enumerate_accepted(automaton, 12, cap=1000)

    def test_accepts(self) -> None:
        automaton = build_standard_automaton(GroupParams(2, 3))
        assert accepts(automaton, parse_word("a a t t"))
        assert accepts(automaton, ())
        assert not accepts(automaton, parse_word("a a T"))
        assert not accepts(automaton, parse_word("t a"))

    def test_negative_length(self) -> None:
        with pytest.raises(InvalidParamsError):
            count_accepted(build_standard_automaton(GroupParams(2, 2)), -1)

    @pytest.mark.parametrize("variant", list(Variant))
    def test_counts_converge_to_radius(self, variant: Variant) -> None:
        """相邻项之比与 n 次方根都逼近谱半径"""
        for q in range(2, 11):
            for p in range(2, q + 1):
                automaton = build_automaton(GroupParams(p, q), variant)
                rho = spectral_radius(automaton)
                counts = count_accepted(automaton, 200)
                assert counts[60] / counts[59] == pytest.approx(rho, abs=1e-4)
                assert abs(counts[200] ** (1 / 200) - rho) < 0.02
        print(f"\n✅ {variant.value} 计数收敛到谱半径")

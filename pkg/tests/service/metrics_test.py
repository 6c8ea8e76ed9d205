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
import random
from collections.abc import Callable

import pytest

from app.domain.ball import BallTable
from app.domain.errors import InvalidParamsError
from app.domain.group import (
    BSNormalForm,
    GeneratorLetter,
    GroupParams,
    SolvableNormalForm,
    Variant,
)
from app.domain.metric import MetricBounds
from app.service.automata import build_standard_automaton, enumerate_accepted
from app.service.metrics import (
    base_q_witness,
    estimate_1q,
    estimate_pp,
    estimate_pq,
    horocyclic_upper_length,
    horocyclic_witness,
    in_d_set,
    metric_estimate,
)
from app.service.normal_form import inverse, normalize, solvable_normal_form
from app.utils.codec import decode, encode
from app.utils.words import parse_word
from tests.service.naive_rewriter import random_word

a, A, t, T = (
    GeneratorLetter.A,
    GeneratorLetter.A_INV,
    GeneratorLetter.T,
    GeneratorLetter.T_INV,
)


class TestEstimate1q:
    """BS(1,q) 的度量估计"""

    def test_power_of_a(self) -> None:
        bounds = estimate_1q(SolvableNormalForm(0, 4, 0), 2)
        assert bounds.upper == 12
        assert bounds.lower == pytest.approx(
            math.log(4) / (2 * (math.log(2) + 1))
        )
        assert bounds.lower == pytest.approx(0.409, abs=1e-3)
        assert bounds.contains(4)

    def test_pure_t_power_is_geodesic(self) -> None:
        bounds = estimate_1q(SolvableNormalForm(0, 0, 5), 2)
        assert bounds.lower == bounds.upper == 5

    def test_requires_q_above_one(self) -> None:
        with pytest.raises(InvalidParamsError):
            estimate_1q(SolvableNormalForm(0, 1, 0), 1)

    def test_constants_cover_constructive_upper(self) -> None:
        """q = 2 时构造性上界 12 不超过 c2·f + d2"""
        bounds = estimate_1q(SolvableNormalForm(0, 4, 0), 2)
        c = bounds.constants
        assert c.c2 == pytest.approx(4 / math.log(2))
        assert c.d2 == 4
        assert bounds.upper <= c.c2 * bounds.estimate + c.d2 + 1e-9


class TestUpperConstants:
    """每个估计函数的上界都不超过 c2·f + d2"""

    @staticmethod
    def assert_covered(bounds: MetricBounds) -> None:
        c = bounds.constants
        assert bounds.lower <= bounds.upper
        assert bounds.upper <= c.c2 * bounds.estimate + c.d2 + 1e-9, bounds

    @pytest.mark.parametrize("q", [2, 3, 4, 7])
    def test_estimate_1q_grid(self, q: int) -> None:
        for exponent in range(-300, 301):
            for k in range(3):
                self.assert_covered(
                    estimate_1q(SolvableNormalForm(k, exponent, 0), q)
                )
                self.assert_covered(
                    estimate_1q(SolvableNormalForm(0, exponent, k), q)
                )

    @pytest.mark.parametrize(
        ("p", "q"), [(1, 3), (2, 2), (2, 3), (3, 3), (3, 5)]
    )
    def test_metric_estimate_random_words(
        self, p: int, q: int, rng: random.Random
    ) -> None:
        params = GroupParams(p, q)
        for _ in range(300):
            nf = normalize(random_word(rng, 30), params)
            self.assert_covered(metric_estimate(nf))


class TestEstimatePq:
    """p < q 的度量估计"""

    BS23 = GroupParams(2, 3)

    def test_power_of_a(self) -> None:
        bounds = estimate_pq(normalize((a,) * 9, self.BS23))
        expected = 4 * math.log(10) / math.log(1.5) + 3
        assert bounds.upper == pytest.approx(expected)
        assert bounds.upper == pytest.approx(25.7, abs=0.05)
        assert bounds.contains(8)

    def test_identity(self) -> None:
        bounds = estimate_pq(normalize((), self.BS23))
        assert bounds.estimate == 0
        assert bounds.lower == 0

    def test_single_t(self) -> None:
        bounds = estimate_pq(normalize((t,), self.BS23))
        assert bounds.upper == pytest.approx(7)
        assert bounds.contains(1)

    def test_constants(self) -> None:
        bounds = estimate_pq(normalize((), GroupParams(3, 5)))
        c = 3 * 5 / (5 - 3)
        assert bounds.constants.c1 == pytest.approx(1 / 6)
        assert bounds.constants.d1 == pytest.approx(
            math.log(2 * c) / math.log(5 / 3)
        )
        assert bounds.constants.c2 == 6
        assert bounds.constants.d2 == 5

    def test_rejects_p_equal_q(self) -> None:
        with pytest.raises(InvalidParamsError):
            estimate_pq(normalize((a,), GroupParams(2, 2)))


class TestEstimatePp:
    """p = q 的度量估计"""

    def test_power_of_a(self) -> None:
        bounds = estimate_pp(normalize((a, a, a), GroupParams(2, 2)))
        assert (bounds.lower, bounds.upper) == (0.75, 3)

    def test_identity(self) -> None:
        bounds = estimate_pp(normalize((), GroupParams(2, 2)))
        assert (bounds.lower, bounds.upper) == (0, 0)

    def test_t_a(self) -> None:
        bounds = estimate_pp(normalize((t, a), GroupParams(3, 3)))
        assert bounds.lower == pytest.approx(1 / 3)
        assert bounds.upper == 2

    def test_rejects_p_below_q(self) -> None:
        with pytest.raises(InvalidParamsError):
            estimate_pp(normalize((a,), GroupParams(2, 3)))


class TestWitnesses:
    """证明中构造的短单词"""

    def test_base_q_examples(self) -> None:
        assert base_q_witness(SolvableNormalForm(0, 4, 0), 2) == (t, t, a, T, T)
        assert base_q_witness(SolvableNormalForm(0, 1, 0), 2) == (a,)
        assert base_q_witness(SolvableNormalForm(1, 5, 0), 3) == (
            T,
            a,
            a,
            t,
            a,
            T,
        )

    def test_base_q_negative_and_zero(self) -> None:
        assert base_q_witness(SolvableNormalForm(0, -4, 0), 2) == (
            t,
            t,
            A,
            T,
            T,
        )
        assert base_q_witness(SolvableNormalForm(2, 0, 0), 2) == (T, T)

    def test_horocyclic_examples(self) -> None:
        assert horocyclic_witness(9, GroupParams(2, 3)) == parse_word(
            "t t a t a a T T T"
        )
        assert horocyclic_witness(1, GroupParams(2, 3)) == (a,)
        word = horocyclic_witness(25, GroupParams(3, 5))
        assert word == parse_word("t t a a a a t a a a T T T")
        assert len(word) == 13

    def test_horocyclic_requires_p_below_q(self) -> None:
        with pytest.raises(InvalidParamsError):
            horocyclic_witness(5, GroupParams(3, 3))

    @pytest.mark.parametrize("q", [2, 3])
    def test_base_q_validity(self, q: int, rng: random.Random) -> None:
        for _ in range(500):
            exponent = rng.randint(-(10**6), 10**6)
            if rng.random() < 0.5:
                target = SolvableNormalForm(rng.randint(0, 4), exponent, 0)
            else:
                target = SolvableNormalForm(0, exponent, rng.randint(0, 4))
            word = base_q_witness(target, q)
            assert solvable_normal_form(word, q) == target
            assert len(word) <= estimate_1q(target, q).upper

    @pytest.mark.parametrize(("p", "q"), [(1, 2), (2, 3), (3, 5), (4, 7)])
    def test_horocyclic_validity(
        self, p: int, q: int, rng: random.Random
    ) -> None:
        params = GroupParams(p, q)
        for _ in range(300):
            exponent = rng.randint(1, 10**6) * rng.choice((1, -1))
            word = horocyclic_witness(exponent, params)
            assert normalize(word, params) == BSNormalForm(
                params, Variant.STANDARD, (), exponent
            )
            bound = horocyclic_upper_length(exponent, params)
            assert len(word) <= bound + 1e-9

    @pytest.mark.slow
    def test_witnesses_at_scale(self, rng: random.Random) -> None:
        """10^4 个随机指数，覆盖全部参数"""
        for p, q in [(1, 2), (1, 3), (2, 3), (3, 5), (4, 7)]:
            params = GroupParams(p, q)
            for _ in range(10_000):
                exponent = rng.randint(1, 10**6)
                word = horocyclic_witness(exponent, params)
                assert normalize(word, params).tail == exponent
                assert len(word) <= horocyclic_upper_length(exponent, params)
                if p == 1:
                    target = SolvableNormalForm(0, exponent, 0)
                    witness = base_q_witness(target, q)
                    assert solvable_normal_form(witness, q) == target
                    assert len(witness) <= estimate_1q(target, q).upper
        print("\n✅ 10^4 个见证单词全部有效")


class TestSandwich:
    """BFS 精确长度落在估计区间内"""

    @pytest.mark.parametrize(("p", "q"), [(1, 2), (2, 3), (3, 3)])
    def test_ball_within_bounds(
        self,
        p: int,
        q: int,
        ball_of: Callable[[int, int, int], BallTable],
    ) -> None:
        table = ball_of(p, q, 8)
        params = GroupParams(p, q)
        checked = 0
        for key, length in table.lengths.items():
            if length > 8:
                continue
            bounds = metric_estimate(decode(key, params))
            assert bounds.contains(length), (key.hex(), length, bounds)
            checked += 1
        print(f"\n✅ BS({p},{q}) 半径 8 内 {checked} 个元素全部满足估计")

    @pytest.mark.parametrize(("p", "q"), [(2, 2), (2, 3), (1, 3)])
    def test_inverse_shares_exact_length(
        self,
        p: int,
        q: int,
        ball_of: Callable[[int, int, int], BallTable],
        rng: random.Random,
    ) -> None:
        """||x|| = ||x^-1||，两者的估计区间都必须包含它"""
        table = ball_of(p, q, 7)
        params = GroupParams(p, q)
        for _ in range(200):
            word = random_word(rng, 7)
            x = normalize(word, params)
            length = table.lengths[encode(x)]
            assert metric_estimate(x).contains(length)
            assert metric_estimate(inverse(x)).contains(length)


class TestDSet:
    """D(n) = {w a^N : |w| + (q+1) log_{q/p} N + q <= n} 包含于 B(n)"""

    def test_upper_length(self) -> None:
        params = GroupParams(2, 3)
        assert horocyclic_upper_length(0, params) == 0
        assert horocyclic_upper_length(9, params) == pytest.approx(
            4 * math.log(9) / math.log(1.5) + 3
        )
        with pytest.raises(InvalidParamsError):
            horocyclic_upper_length(3, GroupParams(2, 2))

    @pytest.mark.parametrize(("p", "q"), [(1, 2), (2, 3), (1, 5)])
    def test_d_set_inside_ball(
        self,
        p: int,
        q: int,
        ball_of: Callable[[int, int, int], BallTable],
    ) -> None:
        radius = 8
        params = GroupParams(p, q)
        table = ball_of(p, q, radius)
        automaton = build_standard_automaton(params)
        members = 0
        for w in enumerate_accepted(automaton, radius):
            for exponent in range(-60, 61):
                a_power = (a if exponent > 0 else A,) * abs(exponent)
                x = normalize(w + a_power, params)
                if not in_d_set(x, radius):
                    continue
                assert table.lengths[encode(x)] <= radius
                members += 1
        assert members > 0
        print(f"\n✅ BS({p},{q}) D({radius}) 的 {members} 个元素都在球内")

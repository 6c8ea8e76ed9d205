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
范式语言的有限状态自动机，精确的按长度计数，以及谱半径（增长率下界）。

状态：S 起始；P 上一个字母是 t；M 上一个字母是 t^-1；A_i / A_-i 为末尾
连续 i 个 a / a^-1。接受状态 {S, P, M}，即恰好在音节结束处接受。
"""

from __future__ import annotations

import logging
from itertools import accumulate

import numpy as np

from app.domain.automaton import Edge, GrowthAutomaton
from app.domain.errors import InvalidParamsError, ResourceLimitError
from app.domain.group import (
    GENERATORS,
    AlphabetSpec,
    GeneratorLetter,
    GroupParams,
    Variant,
    Word,
)

logger = logging.getLogger(__name__)

_A = GeneratorLetter.A
_A_INV = GeneratorLetter.A_INV
_T = GeneratorLetter.T
_T_INV = GeneratorLetter.T_INV

START, PLUS, MINUS = "S", "P", "M"


def _chain_state(i: int) -> str:
    return f"A{i}"


def build_automaton(params: GroupParams, variant: Variant) -> GrowthAutomaton:
    """
    按字母表窗口构造自动机。a 链长 alpha，a^-1 链长 beta；
    A_i 上允许 t^-1 当且仅当 i <= gamma，A_-i 上当且仅当 i <= delta。
    """
    alphabet = AlphabetSpec.for_params(params, variant)
    positive = [_chain_state(i) for i in range(1, alphabet.alpha + 1)]
    negative = [_chain_state(-i) for i in range(1, alphabet.beta + 1)]
    edges: list[Edge] = []

    def enter_chains(source: str) -> None:
        if positive:
            edges.append((source, _A, positive[0]))
        if negative:
            edges.append((source, _A_INV, negative[0]))

    # S 可以接任何字母，P 不能接 t^-1，M 不能接 t（自由约化）
    edges.append((START, _T, PLUS))
    edges.append((START, _T_INV, MINUS))
    enter_chains(START)
    edges.append((PLUS, _T, PLUS))
    enter_chains(PLUS)
    edges.append((MINUS, _T_INV, MINUS))
    enter_chains(MINUS)

    for chain, letter, t_inv_limit in (
        (positive, _A, alphabet.gamma),
        (negative, _A_INV, alphabet.delta),
    ):
        for i, state in enumerate(chain, start=1):
            if i < len(chain):
                edges.append((state, letter, chain[i]))
            edges.append((state, _T, PLUS))
            if i <= t_inv_limit:
                edges.append((state, _T_INV, MINUS))

    automaton = GrowthAutomaton(
        params=params,
        variant=variant,
        states=(START, PLUS, MINUS, *positive, *negative),
        edges=tuple(edges),
        accept=frozenset({START, PLUS, MINUS}),
    )
    logger.debug(
        f"构造 {params} {variant.value} 自动机: "
        f"{len(automaton.states)} 个状态，{len(edges)} 条边"
    )
    return automaton


def build_standard_automaton(params: GroupParams) -> GrowthAutomaton:
    """字母表 {a^r t : 0<=r<q} ∪ {a^s t^-1 : 0<=s<p} 上的自由约化单词"""
    return build_automaton(params, Variant.STANDARD)


def build_balanced_automaton(params: GroupParams) -> GrowthAutomaton:
    """指数在 [-beta, alpha] / [-delta, gamma] 内的平衡字母表"""
    return build_automaton(params, Variant.BALANCED)


def adjacency_matrix(automaton: GrowthAutomaton) -> np.ndarray:
    """matrix[i, j] = 状态 i 到状态 j 的边数"""
    index = automaton.state_index
    size = len(automaton.states)
    matrix = np.zeros((size, size), dtype=np.int64)
    for source, _, target in automaton.edges:
        matrix[index[source], index[target]] += 1
    return matrix


def _recurrent_core(matrix: np.ndarray) -> np.ndarray:
    """
    反复删去（在剩余子图内）没有入边或没有出边的状态。

    删去的状态不在任何环上，不影响谱半径；剩下的每个状态都有入边和出边。
    """
    keep = np.ones(matrix.shape[0], dtype=bool)
    while True:
        sub = matrix[np.ix_(keep, keep)]
        alive = (sub.sum(axis=0) > 0) & (sub.sum(axis=1) > 0)
        if alive.all():
            return keep
        keep[np.flatnonzero(keep)[~alive]] = False


def spectral_radius(
    automaton: GrowthAutomaton,
    tolerance: float = 1e-12,
    max_iterations: int = 1_000_000,
) -> float:
    """
    邻接矩阵的 Perron–Frobenius 特征值，使用幂迭代。

    S 没有入边，是暂态；只在常返部分上迭代。每一步用 Collatz–Wielandt
    界夹住谱半径：min (Mv)_i / v_i <= rho <= max (Mv)_i / v_i，两者之差
    不超过 tolerance 时返回中点。未收敛时退回到 numpy 的全特征值分解。
    """
    matrix = adjacency_matrix(automaton).astype(np.float64)
    core = _recurrent_core(matrix)
    if not core.any():
        # 幂零矩阵：没有环
        return 0.0
    matrix = matrix[np.ix_(core, core)]

    # 核内每行都有出边，正向量的像仍为正
    vector = np.ones(matrix.shape[0])
    for _ in range(max_iterations):
        image = matrix @ vector
        ratios = image / vector
        lower, upper = float(ratios.min()), float(ratios.max())
        if upper - lower <= tolerance * max(1.0, upper):
            return (lower + upper) / 2
        vector = image / image.max()

    logger.warning(
        f"⚠️ {automaton.params} 幂迭代 {max_iterations} 次未收敛，改用特征值分解"
    )
    return float(np.abs(np.linalg.eigvals(matrix)).max())


def count_accepted(automaton: GrowthAutomaton, n: int) -> list[int]:
    """counts[k] 为长度恰好为 k 的接受单词数，纯整数转移矩阵迭代"""
    if n < 0:
        raise InvalidParamsError(f"n 必须非负，实际为 {n}")
    index = automaton.state_index
    arcs = [(index[s], index[t]) for s, _, t in automaton.edges]
    accepting = [index[state] for state in automaton.accept]

    paths = [0] * len(automaton.states)
    paths[index[automaton.start]] = 1
    counts: list[int] = []
    for _ in range(n + 1):
        counts.append(sum(paths[i] for i in accepting))
        following = [0] * len(paths)
        for source, target in arcs:
            following[target] += paths[source]
        paths = following
    return counts


def ball_count(automaton: GrowthAutomaton, n: int) -> list[int]:
    """#E(k)：长度不超过 k 的接受单词数"""
    return list(accumulate(count_accepted(automaton, n)))


def accepts(automaton: GrowthAutomaton, word: Word) -> bool:
    state: str | None = automaton.start
    for letter in word:
        state = automaton.transition(state, letter)
        if state is None:
            return False
    return state in automaton.accept


def enumerate_accepted(
    automaton: GrowthAutomaton, n: int, cap: int = 1_000_000
) -> list[Word]:
    """长度 <= n 的全部接受单词，按长度、再按生成元顺序排列"""
    total = sum(count_accepted(automaton, n))
    if total > cap:
        raise ResourceLimitError(
            f"长度 <= {n} 的接受单词共有 {total} 个，超过上限 {cap}"
        )

    words: list[Word] = []
    layer: list[tuple[Word, str]] = [((), automaton.start)]
    for length in range(n + 1):
        words.extend(word for word, state in layer if state in automaton.accept)
        if length == n:
            break
        layer = [
            (word + (letter,), target)
            for word, state in layer
            for letter in GENERATORS
            if (target := automaton.transition(state, letter)) is not None
        ]
    return words


def export_edges(automaton: GrowthAutomaton) -> str:
    """每行一条边 `state letter state`，按状态顺序再按生成元顺序"""
    order = {letter: i for i, letter in enumerate(GENERATORS)}
    index = automaton.state_index
    edges = sorted(automaton.edges, key=lambda e: (index[e[0]], order[e[1]]))
    return "".join(f"{s} {letter.value} {t}\n" for s, letter, t in edges)


def lower_bound_table(
    variant: Variant,
    pairs: list[tuple[int, int]],
    tolerance: float = 1e-12,
    max_iterations: int = 1_000_000,
) -> dict[tuple[int, int], float]:
    """对一组 (p, q) 计算自动机谱半径（增长率下界）"""
    table: dict[tuple[int, int], float] = {}
    for p, q in pairs:
        automaton = build_automaton(GroupParams(p, q), variant)
        table[(p, q)] = spectral_radius(automaton, tolerance, max_iterations)
    logger.info(f"✅ {variant.value} 下界表计算完成，共 {len(table)} 组参数")
    return table

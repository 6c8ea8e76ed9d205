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
Cayley 图的逐层广度优先枚举。

元素以规范字节编码为键去重（范式唯一，所以去重是精确的）。保留完整的
访问集合：x·g 可能落在上一层、本层或下一层。每层按键排序，结果与调度无关。
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from typing import TYPE_CHECKING

from app.domain.ball import BallTable
from app.domain.errors import InvalidParamsError, ResourceLimitError
from app.domain.group import GENERATORS, GeneratorLetter, GroupParams, Variant
from app.service.normal_form import identity, multiply_generator, normalize
from app.utils.codec import decode, encode

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator

    from app.config.settings import BfsSettings
    from app.domain.group import Word

logger = logging.getLogger(__name__)


def _expand_chunk(task: tuple[GroupParams, list[bytes]]) -> list[bytes]:
    """对每个键依次右乘 GENERATORS，返回 4·len(keys) 个子键（顺序固定）"""
    params, keys = task
    children: list[bytes] = []
    for key in keys:
        nf = decode(key, params)
        children.extend(encode(multiply_generator(nf, g)) for g in GENERATORS)
    return children


class _LayeredSearch:
    """逐层推进的搜索状态，ball 和 word_length 共用"""

    def __init__(
        self,
        params: GroupParams,
        settings: BfsSettings,
        memory_limit: int,
        threads: int,
        record_parents: bool,
        executor: ProcessPoolExecutor | None,
    ) -> None:
        self.params = params
        self._settings = settings
        self._memory_limit = memory_limit
        self._threads = threads
        self._executor = executor
        origin = encode(identity(params, Variant.STANDARD))
        self.table = BallTable(
            params=params,
            radius=0,
            lengths={origin: 0},
            sphere_sizes=[1],
            parents={} if record_parents else None,
        )
        self.frontier: list[bytes] = [origin]
        self._memory_used = self._entry_cost(origin)

    def _entry_cost(self, key: bytes) -> int:
        cost = len(key) + self._settings.entry_overhead_bytes
        if self.table.parents is not None:
            cost += self._settings.entry_overhead_bytes // 2
        return cost

    def _children(self) -> Iterable[bytes]:
        if self._executor is None or self._threads <= 1:
            return _expand_chunk((self.params, self.frontier))
        size = self._settings.chunk_size
        tasks = [
            (self.params, self.frontier[i : i + size])
            for i in range(0, len(self.frontier), size)
        ]
        # map 保持任务顺序，合并顺序与顺序执行完全一致
        return (
            child
            for children in self._executor.map(_expand_chunk, tasks)
            for child in children
        )

    def advance(self) -> list[bytes]:
        """计算下一层；超出内存预算时回滚该层并抛出 ResourceLimitError"""
        radius = self.table.radius + 1
        lengths = self.table.lengths
        parents = self.table.parents
        layer: list[bytes] = []
        for index, child in enumerate(self._children()):
            if child in lengths:
                continue
            lengths[child] = radius
            if parents is not None:
                parents[child] = GENERATORS[index % len(GENERATORS)]
            layer.append(child)
            self._memory_used += self._entry_cost(child)
            if self._memory_used > self._memory_limit:
                self._rollback(layer)
                raise ResourceLimitError(
                    f"{self.params} 的 BFS 在半径 {radius} 处超出内存预算 "
                    f"{self._memory_limit} 字节，已完成半径 {radius - 1}",
                    completed_radius=radius - 1,
                    partial=self.table,
                )

        layer.sort()
        self.frontier = layer
        self.table.radius = radius
        self.table.sphere_sizes.append(len(layer))
        logger.info(
            f"{self.params} 半径 {radius}: 球面 {len(layer)} 个元素，"
            f"累计 {len(lengths)} 个"
        )
        return layer

    def _rollback(self, layer: list[bytes]) -> None:
        for key in layer:
            del self.table.lengths[key]
            if self.table.parents is not None:
                self.table.parents.pop(key, None)


class CayleyGraphService:
    """BS(p,q) Cayley 图上的精确词长度、球面/球大小与 Fekete 上界"""

    def __init__(self, settings: BfsSettings) -> None:
        self._settings = settings

    @contextmanager
    def _search(
        self,
        params: GroupParams,
        memory_limit: int | None,
        threads: int | None,
        record_parents: bool | None,
    ) -> Iterator[_LayeredSearch]:
        threads = threads or self._settings.threads
        limit = memory_limit or self._settings.memory_limit_bytes
        parents = (
            self._settings.record_parents
            if record_parents is None
            else record_parents
        )
        if threads > 1:
            with ProcessPoolExecutor(max_workers=threads) as executor:
                yield _LayeredSearch(
                    params, self._settings, limit, threads, parents, executor
                )
        else:
            yield _LayeredSearch(
                params, self._settings, limit, threads, parents, None
            )

    def ball(
        self,
        params: GroupParams,
        radius: int,
        *,
        memory_limit: int | None = None,
        threads: int | None = None,
        record_parents: bool | None = None,
    ) -> BallTable:
        """从单位元出发逐层闭包，得到半径 radius 的球"""
        if radius < 0:
            raise InvalidParamsError(f"半径必须非负，实际为 {radius}")
        logger.info(f"🚀 开始枚举 {params} 的半径 {radius} 球")
        with self._search(
            params, memory_limit, threads, record_parents
        ) as search:
            while search.table.radius < radius:
                search.advance()
        logger.info(
            f"✅ {params} 半径 {radius} 枚举完成，共 {len(search.table)} 个元素"
        )
        return search.table

    def word_length(
        self,
        params: GroupParams,
        word: Word,
        max_radius: int,
        *,
        memory_limit: int | None = None,
    ) -> int | None:
        """normalize(word) 到单位元的精确距离；超过 max_radius 时返回 None"""
        if max_radius < 0:
            raise InvalidParamsError(f"max_radius 必须非负，实际为 {max_radius}")
        target = encode(normalize(word, params, Variant.STANDARD))
        with self._search(params, memory_limit, 1, False) as search:
            lengths = search.table.lengths
            while target not in lengths:
                if search.table.radius >= max_radius:
                    return None
                search.advance()
            return lengths[target]

    def fekete_upper_bound(
        self,
        params: GroupParams,
        n: int,
        *,
        memory_limit: int | None = None,
        threads: int | None = None,
    ) -> float:
        """sphere(n)^(1/n)；球面增长序列次可乘，由 Fekete 引理这是增长率的上界"""
        if n < 1:
            raise InvalidParamsError(f"n 必须至少为 1，实际为 {n}")
        table = self.ball(
            params,
            n,
            memory_limit=memory_limit,
            threads=threads,
            record_parents=False,
        )
        return table.fekete(n)


def witness_word(table: BallTable, key: bytes) -> Word:
    """沿父边回溯，重建长度等于表中记录值的单词"""
    if table.parents is None:
        raise InvalidParamsError("球表没有记录父边，无法重建单词")
    if key not in table.lengths:
        raise KeyError(key)
    letters: list[GeneratorLetter] = []
    nf = decode(key, table.params)
    while table.lengths[key]:
        letter = table.parents[key]
        letters.append(letter)
        nf = multiply_generator(nf, letter.inverse)
        key = encode(nf)
    return tuple(reversed(letters))


def element_key(word: Word, params: GroupParams) -> bytes:
    """单词对应元素在球表中的键（标准变体）"""
    return encode(normalize(word, params, Variant.STANDARD))

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

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING

from app.domain.errors import InvalidParamsError

if TYPE_CHECKING:
    from app.domain.group import GeneratorLetter, GroupParams, Variant

Edge = tuple[str, "GeneratorLetter", str]


@dataclass(frozen=True)
class GrowthAutomaton:
    """
    识别范式音节语言的确定性有限自动机 - 值对象

    states 的顺序即邻接矩阵的行列顺序，第一个为起始状态 S。
    """

    params: GroupParams
    variant: Variant
    states: tuple[str, ...]
    edges: tuple[Edge, ...]
    accept: frozenset[str]

    def __post_init__(self) -> None:
        known = set(self.states)
        if not self.states:
            raise InvalidParamsError("自动机至少需要一个状态")
        if not self.accept <= known:
            raise InvalidParamsError(f"接受状态不在状态集中: {self.accept - known}")
        seen: set[tuple[str, GeneratorLetter]] = set()
        for source, letter, target in self.edges:
            if source not in known or target not in known:
                raise InvalidParamsError(f"边的端点不在状态集中: {source}->{target}")
            if (source, letter) in seen:
                raise InvalidParamsError(f"状态 {source} 在字母 {letter.value} 上不确定")
            seen.add((source, letter))

    @property
    def start(self) -> str:
        return self.states[0]

    @cached_property
    def state_index(self) -> dict[str, int]:
        return {state: i for i, state in enumerate(self.states)}

    @cached_property
    def delta(self) -> dict[tuple[str, GeneratorLetter], str]:
        return {(source, letter): target for source, letter, target in self.edges}

    def transition(self, state: str, letter: GeneratorLetter) -> str | None:
        return self.delta.get((state, letter))

    def reachable_states(self) -> set[str]:
        reached = {self.start}
        stack = [self.start]
        while stack:
            state = stack.pop()
            for source, _, target in self.edges:
                if source == state and target not in reached:
                    reached.add(target)
                    stack.append(target)
        return reached

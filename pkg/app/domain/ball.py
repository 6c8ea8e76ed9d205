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

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from app.domain.group import GeneratorLetter, GroupParams


@dataclass(frozen=True, slots=True)
class SphereRow:
    """球面统计的一行：半径、球面大小、球大小、Fekete 上界"""

    radius: int
    sphere: int
    ball: int
    fekete: float | None


@dataclass
class BallTable:
    """
    Cayley 图中半径 radius 的球 - 聚合根

    Attributes:
        lengths: 规范字节编码 -> 精确词长度
        sphere_sizes: sphere_sizes[k] 为长度恰好为 k 的元素个数
        parents: 可选，编码 -> 首次发现该元素时右乘的生成元
    """

    params: GroupParams
    radius: int
    lengths: dict[bytes, int] = field(default_factory=dict)
    sphere_sizes: list[int] = field(default_factory=list)
    parents: dict[bytes, GeneratorLetter] | None = None

    def __len__(self) -> int:
        return len(self.lengths)

    def ball_sizes(self) -> list[int]:
        """γ(n) = #B(n)"""
        sizes: list[int] = []
        total = 0
        for size in self.sphere_sizes:
            total += size
            sizes.append(total)
        return sizes

    def fekete(self, n: int) -> float:
        """sphere(n)^(1/n)，球面增长率的上界"""
        if not 1 <= n <= self.radius:
            raise ValueError(f"n 必须在 [1, {self.radius}] 内，实际为 {n}")
        return float(self.sphere_sizes[n] ** (1 / n))

    def is_submultiplicative(self) -> bool:
        s = self.sphere_sizes
        return all(
            s[m + n] <= s[m] * s[n]
            for m in range(len(s))
            for n in range(len(s) - m)
        )

    def rows(self) -> list[SphereRow]:
        return [
            SphereRow(
                radius=k,
                sphere=sphere,
                ball=ball,
                fekete=self.fekete(k) if k else None,
            )
            for k, (sphere, ball) in enumerate(
                zip(self.sphere_sizes, self.ball_sizes(), strict=True)
            )
        ]

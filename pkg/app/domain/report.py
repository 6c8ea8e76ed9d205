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


@dataclass(frozen=True, slots=True)
class ReportRow:
    """
    一组 (p, q) 的增长率界 - 值对象

    Attributes:
        standard_bound: 标准自动机谱半径
        balanced_bound: 平衡自动机谱半径
        poly_root: 增长多项式最大实根，p = 1 时没有
        fekete_upper: 球面计数给出的 Fekete 上界，可选
        exact_rate: 已知精确增长率（p = q = 2, 3），可选
    """

    p: int
    q: int
    standard_bound: float
    balanced_bound: float
    poly_root: float | None = None
    fekete_upper: float | None = None
    exact_rate: float | None = None

    def is_consistent(self, slack: float = 1e-9) -> bool:
        """下界之间以及下界与上界之间的大小关系"""
        if self.standard_bound > self.balanced_bound + slack:
            return False
        if self.fekete_upper is not None:
            return self.balanced_bound <= self.fekete_upper + slack
        return True

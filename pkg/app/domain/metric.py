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

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class MetricConstants:
    """C1·f - D1 <= ||x|| <= C2·f + D2 中的常数"""

    c1: float
    d1: float
    c2: float
    d2: float


@dataclass(frozen=True, slots=True)
class MetricBounds:
    """
    词长度的上下界 - 值对象

    Attributes:
        estimate: 度量估计函数的取值 f(x)
        lower: max(0, C1·f - D1)
        upper: 上界（BS(1,q) 使用构造性证明给出的上界）
    """

    estimate: float
    lower: float
    upper: float
    constants: MetricConstants

    def contains(self, length: int, slack: float = 1e-9) -> bool:
        return self.lower - slack <= length <= self.upper + slack

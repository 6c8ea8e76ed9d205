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

"""领域异常定义"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from app.domain.ball import BallTable


class BSGroupError(Exception):
    """所有领域异常的基类"""


class InvalidParamsError(BSGroupError, ValueError):
    """群参数 (p, q) 或运算前置条件不合法"""


class WordParseError(BSGroupError, ValueError):
    """单词中出现了 {a, A, t, T} 之外的记号"""

    def __init__(self, token: str, position: int) -> None:
        super().__init__(
            f"无法识别的生成元记号 {token!r} (位置 {position})，"
            "只允许 a, A, t, T"
        )
        self.token = token
        self.position = position


class CodecError(BSGroupError, ValueError):
    """规范字节编码格式错误"""


class UnsupportedSeriesError(BSGroupError, ValueError):
    """没有已知闭式生成函数的参数"""


class RootNotFoundError(BSGroupError, ArithmeticError):
    """找不到变号区间或分母没有极点"""


class ResourceLimitError(BSGroupError, RuntimeError):
    """
    资源预算（内存、枚举上限）被突破。

    Attributes:
        completed_radius: 已完整计算的半径，没有则为 -1
        partial: 截至 completed_radius 的部分结果
    """

    def __init__(
        self,
        message: str,
        completed_radius: int = -1,
        partial: BallTable | None = None,
    ) -> None:
        super().__init__(message)
        self.completed_radius = completed_radius
        self.partial = partial

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

"""Web层VO模型定义，命令行 --format json 输出同样的模型"""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.domain.group import Variant

SCHEMA_VERSION = "v1"


class VersionedResponse(BaseModel):
    """所有响应都带有 schema 版本字段"""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: Literal["v1"] = Field(
        SCHEMA_VERSION, alias="schema", description="输出格式版本"
    )


class GroupRequest(BaseModel):
    """群参数 (p, q)"""

    p: int = Field(..., ge=1, description="关系 t a^p t^-1 = a^q 中的 p")
    q: int = Field(..., ge=1, description="关系 t a^p t^-1 = a^q 中的 q")

    @model_validator(mode="after")
    def check_order(self) -> "GroupRequest":
        if self.p > self.q:
            raise ValueError(f"要求 p <= q，实际为 p={self.p}, q={self.q}")
        return self


class WordRequest(GroupRequest):
    """群参数加一个单词，单词为空白分隔的 a, A, t, T"""

    word: str = Field("", description="例如 't a a a T'，A = a^-1, T = t^-1")


class LengthRequest(WordRequest):
    max_radius: int = Field(..., ge=0, le=64, description="BFS 的最大半径")


class BoundsRequest(WordRequest):
    exact_radius: int | None = Field(
        None, ge=0, le=64, description="给出时用 BFS 计算精确词长度"
    )


class SyllableVO(BaseModel):
    a_exponent: int = Field(..., description="音节中 a 的指数")
    t_sign: int = Field(..., description="音节末尾 t 的符号，1 或 -1")


class NormalFormVO(BaseModel):
    """Britton 范式 w(a,t) a^N"""

    variant: Variant
    syllables: list[SyllableVO]
    tail: int = Field(..., description="尾部 a 的指数 N")
    word: str = Field(..., description="范式单词，a/A/t/T 记号")
    pretty: str = Field(..., description="便于阅读的写法")
    encoding: str = Field(..., description="规范字节编码的十六进制")


class SolvableFormVO(BaseModel):
    """BS(1,q) 的范式 t^-m a^N t^n"""

    m: int
    N: int
    n: int


class NormalizeResponse(VersionedResponse):
    p: int
    q: int
    standard: NormalFormVO
    balanced: NormalFormVO
    solvable: SolvableFormVO | None = Field(
        None, description="仅 p = 1 时给出"
    )


class BoundsResponse(VersionedResponse):
    """度量估计 C1·f - D1 <= ||x|| <= C2·f + D2"""

    p: int
    q: int
    estimate: float = Field(..., description="估计函数的值 f")
    lower: float
    upper: float
    c1: float
    d1: float
    c2: float
    d2: float
    exact_length: int | None = Field(
        None, description="BFS 给出的精确词长度，超出半径时为空"
    )


class LengthResponse(VersionedResponse):
    p: int
    q: int
    word: str
    max_radius: int
    length: int | None = Field(None, description="超出 max_radius 时为空")


class SphereRowVO(BaseModel):
    radius: int
    sphere: int
    ball: int
    fekete: float | None = None


class SphereResponse(VersionedResponse):
    p: int
    q: int
    radius: int
    rows: list[SphereRowVO]
    submultiplicative: bool = Field(..., description="球面序列是否次可乘")


class LowerRateResponse(VersionedResponse):
    p: int
    q: int
    variant: Variant
    rate: float = Field(..., description="自动机邻接矩阵的谱半径")


class PolyRateResponse(VersionedResponse):
    p: int
    q: int
    polynomial: str
    rate: float = Field(..., description="增长多项式的最大实根")


class UpperRateResponse(VersionedResponse):
    p: int
    q: int
    radius: int
    sphere: int
    rate: float = Field(..., description="sphere(n)^(1/n)")


class SeriesResponse(VersionedResponse):
    p: int
    numerator: str
    denominator: str
    coefficients: list[int]
    singularity: float = Field(..., description="主奇点的模")
    growth_rate: float
    bfs_spheres: list[int] | None = Field(
        None, description="--check-bfs 时 BFS 得到的球面大小"
    )
    matches_bfs: bool | None = None


class ReportRowVO(BaseModel):
    p: int
    q: int
    standard: float
    balanced: float
    poly_root: float | None = None
    fekete_upper: float | None = None
    exact_rate: float | None = None


class TablesResponse(VersionedResponse):
    rows: list[ReportRowVO]


class EdgeVO(BaseModel):
    source: str
    letter: str
    target: str


class AutomatonResponse(VersionedResponse):
    p: int
    q: int
    variant: Variant
    states: list[str]
    accept: list[str]
    edges: list[EdgeVO]
    spectral_radius: float
    counts: list[int] = Field(..., description="counts[k] 为长度 k 的接受单词数")
    words: list[str] | None = Field(
        None, description="可选，按长度排列的接受单词（空格分隔的字母）"
    )

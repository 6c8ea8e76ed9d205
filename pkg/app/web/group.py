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

import logging
from collections.abc import Callable
from typing import TypeVar

from fastapi import APIRouter, HTTPException, Query

from app.config.settings import Settings
from app.domain.errors import BSGroupError, ResourceLimitError
from app.domain.group import GroupParams, Variant
from app.service.automata import count_accepted
from app.service.group import BSGroupService
from app.utils.converters import GroupConverter
from app.utils.words import parse_word
from app.web.vo import (
    AutomatonResponse,
    BoundsRequest,
    BoundsResponse,
    LengthRequest,
    LengthResponse,
    LowerRateResponse,
    NormalizeResponse,
    PolyRateResponse,
    SeriesResponse,
    SphereResponse,
    TablesResponse,
    UpperRateResponse,
    WordRequest,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")

# HTTP 接口上的计算规模上限，防止单个请求占满服务
_MAX_RADIUS = 14
_MAX_SERIES_TERMS = 500
_MAX_COUNT_LENGTH = 200


def _guard(call: Callable[[], T]) -> T:
    """把领域异常映射为 HTTP 状态码"""
    try:
        return call()
    except ResourceLimitError as e:
        logger.warning(f"⚠️ 请求超出资源预算: {e}")
        raise HTTPException(status_code=413, detail=str(e)) from e
    except BSGroupError as e:
        raise HTTPException(status_code=400, detail=str(e)) from e


def _params(p: int, q: int) -> GroupParams:
    return _guard(lambda: GroupParams(p, q))


class GroupHandler:
    """
    BS(p,q) 计算接口处理器 - 采用自注册路由模式。
    """

    def __init__(
        self,
        router: APIRouter,
        service: BSGroupService,
        settings: Settings,
    ) -> None:
        """
        初始化处理器

        Args:
            router: FastAPI的路由器实例，用于注册本处理器的API端点。
            service: 群计算门面服务。
            settings: 应用的全局配置对象。
        """
        self._router = router
        self._service = service
        self._settings = settings

    def register_routes(self) -> None:
        """将本处理器中的所有API端点注册到构造时传入的路由器上。"""
        self._router.get("/health", summary="健康检查")(GroupHandler.health)
        self._router.post(
            "/normalize",
            response_model=NormalizeResponse,
            response_model_by_alias=True,
            summary="计算单词的标准范式、平衡范式（p = 1 时还有可解范式）",
        )(self.normalize)
        self._router.post(
            "/bounds",
            response_model=BoundsResponse,
            response_model_by_alias=True,
            summary="词长度的度量估计上下界",
        )(self.bounds)
        self._router.post(
            "/length",
            response_model=LengthResponse,
            response_model_by_alias=True,
            summary="BFS 计算精确词长度",
        )(self.length)
        self._router.get(
            "/sphere",
            response_model=SphereResponse,
            response_model_by_alias=True,
            summary="球面与球的大小",
        )(self.sphere)
        self._router.get(
            "/rates/lower",
            response_model=LowerRateResponse,
            response_model_by_alias=True,
            summary="自动机谱半径给出的增长率下界",
        )(self.lower_rate)
        self._router.get(
            "/rates/poly",
            response_model=PolyRateResponse,
            response_model_by_alias=True,
            summary="增长多项式的最大实根",
        )(self.poly_rate)
        self._router.get(
            "/rates/upper",
            response_model=UpperRateResponse,
            response_model_by_alias=True,
            summary="Fekete 上界",
        )(self.upper_rate)
        self._router.get(
            "/series",
            response_model=SeriesResponse,
            response_model_by_alias=True,
            summary="BS(p,p) 生成函数的展开与主奇点",
        )(self.series)
        self._router.get(
            "/tables",
            response_model=TablesResponse,
            response_model_by_alias=True,
            summary="(p, q) 网格上的增长率界",
        )(self.tables)
        self._router.get(
            "/automaton",
            response_model=AutomatonResponse,
            response_model_by_alias=True,
            summary="范式语言自动机及按长度的计数",
        )(self.automaton)

    @staticmethod
    async def health() -> dict[str, str]:
        """健康检查接口。"""
        return {"status": "healthy"}

    def normalize(self, request: WordRequest) -> NormalizeResponse:
        params = _params(request.p, request.q)
        word = _guard(lambda: parse_word(request.word))
        forms = _guard(lambda: self._service.normal_forms(params, word))
        return NormalizeResponse(
            p=params.p,
            q=params.q,
            standard=GroupConverter.normal_form_to_vo(forms.standard),
            balanced=GroupConverter.normal_form_to_vo(forms.balanced),
            solvable=(
                GroupConverter.solvable_to_vo(forms.solvable)
                if forms.solvable is not None
                else None
            ),
        )

    def bounds(self, request: BoundsRequest) -> BoundsResponse:
        params = _params(request.p, request.q)
        word = _guard(lambda: parse_word(request.word))
        nf, bounds, exact = _guard(
            lambda: self._service.bounds(params, word, request.exact_radius)
        )
        return GroupConverter.bounds_to_vo(nf, bounds, exact)

    def length(self, request: LengthRequest) -> LengthResponse:
        params = _params(request.p, request.q)
        word = _guard(lambda: parse_word(request.word))
        length = _guard(
            lambda: self._service.word_length(params, word, request.max_radius)
        )
        return LengthResponse(
            p=params.p,
            q=params.q,
            word=request.word,
            max_radius=request.max_radius,
            length=length,
        )

    def sphere(
        self,
        p: int = Query(..., ge=1),
        q: int = Query(..., ge=1),
        radius: int = Query(..., ge=0, le=_MAX_RADIUS),
    ) -> SphereResponse:
        params = _params(p, q)
        table = _guard(lambda: self._service.sphere(params, radius))
        return GroupConverter.ball_to_vo(table)

    def lower_rate(
        self,
        p: int = Query(..., ge=1),
        q: int = Query(..., ge=1),
        variant: Variant = Query(Variant.BALANCED),
    ) -> LowerRateResponse:
        params = _params(p, q)
        rate = _guard(lambda: self._service.lower_rate(params, variant))
        return LowerRateResponse(p=p, q=q, variant=variant, rate=rate)

    def poly_rate(
        self,
        p: int = Query(..., ge=2),
        q: int = Query(..., ge=2),
    ) -> PolyRateResponse:
        params = _params(p, q)
        poly, root = _guard(lambda: self._service.poly_rate(params))
        return PolyRateResponse(p=p, q=q, polynomial=poly.render(), rate=root)

    def upper_rate(
        self,
        p: int = Query(..., ge=1),
        q: int = Query(..., ge=1),
        radius: int = Query(..., ge=1, le=_MAX_RADIUS),
    ) -> UpperRateResponse:
        params = _params(p, q)
        sphere, rate = _guard(lambda: self._service.upper_rate(params, radius))
        return UpperRateResponse(
            p=p, q=q, radius=radius, sphere=sphere, rate=rate
        )

    def series(
        self,
        p: int = Query(..., ge=1),
        n: int = Query(20, ge=0, le=_MAX_SERIES_TERMS),
        check_bfs: bool = Query(False),
    ) -> SeriesResponse:
        if check_bfs and n > _MAX_RADIUS:
            raise HTTPException(
                status_code=413,
                detail=f"check_bfs 时 n 不能超过 {_MAX_RADIUS}",
            )
        expansion = _guard(lambda: self._service.series(p, n, check_bfs))
        return SeriesResponse(
            p=p,
            numerator=expansion.series.numerator.render("z"),
            denominator=expansion.series.denominator.render("z"),
            coefficients=list(expansion.coefficients),
            singularity=expansion.singularity.radius,
            growth_rate=expansion.singularity.growth_rate,
            bfs_spheres=(
                list(expansion.bfs_spheres)
                if expansion.bfs_spheres is not None
                else None
            ),
            matches_bfs=expansion.matches_bfs,
        )

    def tables(
        self,
        max_q: int = Query(10, ge=2),
        min_p: int = Query(2, ge=1),
        paper_precision: bool = Query(False),
    ) -> TablesResponse:
        rows = _guard(lambda: self._service.tables(max_q, min_p))
        report = self._settings.report
        return GroupConverter.report_to_vo(
            rows,
            digits=report.digits,
            paper_digits=(
                (report.standard_digits, report.balanced_digits)
                if paper_precision
                else None
            ),
        )

    def automaton(
        self,
        p: int = Query(..., ge=1),
        q: int = Query(..., ge=1),
        variant: Variant = Query(Variant.BALANCED),
        n: int = Query(10, ge=0, le=_MAX_COUNT_LENGTH),
        words: int | None = Query(None, ge=0),
    ) -> AutomatonResponse:
        params = _params(p, q)
        automaton = _guard(lambda: self._service.automaton(params, variant))
        radius = _guard(lambda: self._service.lower_rate(params, variant))
        accepted = None
        if words is not None:
            length = words
            accepted = _guard(
                lambda: self._service.accepted_words(params, variant, length)
            )
        return GroupConverter.automaton_to_vo(
            automaton, radius, count_accepted(automaton, n), accepted
        )

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
测试配置和共享fixtures
"""

import logging
import random
from collections.abc import Callable, Generator
from typing import Any

import pytest
from fastapi.testclient import TestClient

from app.config.settings import settings
from app.domain.ball import BallTable
from app.domain.group import GroupParams
from app.main import app
from app.service.cayley import CayleyGraphService
from app.service.group import BSGroupService

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

# 性质测试覆盖的参数
PROPERTY_PARAMS = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 3), (3, 5), (4, 7)]


@pytest.fixture(scope="module")
def client() -> Generator[TestClient, Any]:
    """API 测试客户端"""
    with TestClient(app) as test_client:
        yield test_client


@pytest.fixture(scope="session")
def cayley() -> CayleyGraphService:
    """按测试配置（记录父边）构造的 BFS 服务"""
    return CayleyGraphService(settings.bfs)


@pytest.fixture(scope="session")
def group_service() -> BSGroupService:
    return BSGroupService.create(settings)


@pytest.fixture(scope="session")
def ball_of(
    cayley: CayleyGraphService,
) -> Callable[[int, int, int], BallTable]:
    """
    同一会话内缓存 BFS 结果：ball_of(p, q, radius)。

    返回的 BallTable 是共享对象，测试中不要修改。
    """
    cache: dict[tuple[int, int], BallTable] = {}

    def _ball(p: int, q: int, radius: int) -> BallTable:
        cached = cache.get((p, q))
        if cached is None or cached.radius < radius:
            cached = cayley.ball(GroupParams(p, q), radius)
            cache[(p, q)] = cached
            logger.info(f"✅ 缓存 BS({p},{q}) 半径 {radius} 的球")
        return cached

    return _ball


@pytest.fixture
def rng() -> random.Random:
    """固定种子的随机数发生器，失败可复现"""
    return random.Random(20240607)

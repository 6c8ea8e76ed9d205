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
import sys
from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, Field
from pydantic_settings import (
    BaseSettings,
    SettingsConfigDict,
)

logger = logging.getLogger(__name__)

# 定义与 YAML 和 .env 文件结构匹配的 Pydantic 模型


class BfsSettings(BaseModel):
    """Cayley 图广度优先枚举相关配置"""

    memory_limit_bytes: int = Field(
        2 * 1024**3, ge=1, description="访问集合的内存预算（字节）"
    )
    entry_overhead_bytes: int = Field(
        120, ge=0, description="每个已访问元素的估计簿记开销（字节）"
    )
    threads: int = Field(1, ge=1, description="并行展开的进程数，1 表示顺序执行")
    chunk_size: int = Field(
        20000, ge=1, description="并行模式下每个任务分到的前沿元素个数"
    )
    record_parents: bool = Field(
        False, description="是否记录父边字母，用于重建测地线"
    )


class AutomataSettings(BaseModel):
    """自动机与谱半径相关配置"""

    power_iteration_tolerance: float = Field(1e-12, gt=0)
    max_iterations: int = Field(1_000_000, ge=1)
    enumerate_cap: int = Field(
        1_000_000, ge=1, description="显式枚举接受单词的数量上限"
    )


class AnalysisSettings(BaseModel):
    """多项式求根相关配置"""

    root_tolerance: float = Field(1e-12, gt=0)
    root_scan_points: int = Field(
        4096, ge=2, description="寻找最大实根时变号扫描的网格点数"
    )


class ReportSettings(BaseModel):
    """表格输出相关配置"""

    max_q: int = Field(20, ge=2, description="tables 命令允许的最大 q")
    digits: int = Field(6, ge=0, description="默认输出的小数位数")
    standard_digits: int = Field(5, ge=0, description="印刷精度：标准列小数位数")
    balanced_digits: int = Field(4, ge=0, description="印刷精度：平衡列小数位数")


class ServerSettings(BaseModel):
    """HTTP 服务相关配置"""

    host: str = "127.0.0.1"
    port: int = Field(8080, ge=1, le=65535)


class Settings(BaseSettings):
    """
    主设置类，聚合所有配置，并编排加载顺序。
    优先级：YAML 配置 > 环境变量 > .env > 默认值。
    """

    bfs: BfsSettings = Field(default_factory=BfsSettings)
    automata: AutomataSettings = Field(default_factory=AutomataSettings)
    analysis: AnalysisSettings = Field(default_factory=AnalysisSettings)
    report: ReportSettings = Field(default_factory=ReportSettings)
    server: ServerSettings = Field(default_factory=ServerSettings)

    model_config = SettingsConfigDict(
        env_prefix="BSGROWTH_",
        env_file=".env",
        env_nested_delimiter="__",
        env_file_encoding="utf-8",
        extra="ignore",
    )


def _load_yaml(path: Path) -> dict[str, Any]:
    with open(path, encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValueError(f"YAML 顶层必须是映射: {path}")
    return data


def create_settings(config_path: Path | None = None) -> Settings:
    """
    创建设置实例的工厂函数。
    根据环境选择合适的配置文件，然后创建 Settings 实例。
    """
    project_root = Path(__file__).parent.parent.parent

    if config_path is None:
        # 检测是否在测试环境中
        is_testing = "pytest" in sys.modules
        if is_testing:
            config_path = project_root / "tests" / "fixtures" / "config.yaml"
            if not config_path.is_file():
                logger.warning(f"⚠️ 测试配置文件不存在: {config_path}，回退使用生产配置")
                config_path = project_root / "config.yaml"
        else:
            config_path = project_root / "config.yaml"

    yaml_config: dict[str, Any] = {}
    if config_path.is_file():
        try:
            yaml_config = _load_yaml(config_path)
            logger.debug(f"✅ 成功加载 YAML 配置文件: {config_path}")
        except Exception as e:
            raise RuntimeError(f"读取 YAML 配置文件失败: {config_path}") from e
    else:
        logger.debug(f"YAML 配置文件不存在，使用默认配置: {config_path}")

    # 创建设置实例，传递 YAML 配置；YAML 中未给出的字段由环境变量补齐
    try:
        return Settings(**yaml_config)
    except Exception as e:
        raise RuntimeError("配置文件加载失败，请检查配置") from e


# 创建并导出全局单例。
settings = create_settings()

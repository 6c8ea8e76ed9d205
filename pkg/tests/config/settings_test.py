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
from pathlib import Path

import pytest

from app.config.settings import Settings, create_settings, settings


class TestCreateSettings:
    """YAML 配置加载"""

    def test_fixture_config_loaded(self) -> None:
        """测试环境下使用 tests/fixtures/config.yaml"""
        assert settings.bfs.record_parents is True
        assert settings.bfs.chunk_size == 512
        assert settings.automata.enumerate_cap == 200000

    def test_explicit_path(self, tmp_path: Path) -> None:
        config = tmp_path / "config.yaml"
        config.write_text(
            "bfs:\n  threads: 4\nreport:\n  digits: 3\n", encoding="utf-8"
        )
        loaded = create_settings(config)
        assert loaded.bfs.threads == 4
        assert loaded.report.digits == 3
        assert loaded.report.max_q == 20
        assert loaded.analysis.root_tolerance == 1e-12

    def test_missing_file_uses_defaults(self, tmp_path: Path) -> None:
        loaded = create_settings(tmp_path / "absent.yaml")
        assert loaded == Settings()
        assert loaded.bfs.memory_limit_bytes == 2 << 30

    def test_environment_fills_missing_sections(
        self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        monkeypatch.setenv("BSGROWTH_SERVER__PORT", "9000")
        loaded = create_settings(tmp_path / "absent.yaml")
        assert loaded.server.port == 9000
        assert loaded.server.host == "127.0.0.1"

    def test_invalid_value(self, tmp_path: Path) -> None:
        config = tmp_path / "config.yaml"
        config.write_text("bfs:\n  threads: 0\n", encoding="utf-8")
        with pytest.raises(RuntimeError, match="配置文件加载失败"):
            create_settings(config)

    def test_top_level_must_be_mapping(self, tmp_path: Path) -> None:
        config = tmp_path / "config.yaml"
        config.write_text("- 1\n- 2\n", encoding="utf-8")
        with pytest.raises(RuntimeError, match="读取 YAML 配置文件失败"):
            create_settings(config)

import pytest
from pythonjsonlogger import jsonlogger

from jamscope.sim.scenario import ScenarioKind
from jamscope.util import get_logger
from jamscope.util.configuration import (
    coerce_value, format_config_value, parse_bool, read_config_file, write_config_file,
)
from jamscope.util.errors import ConfigError, JamscopeError, UnknownCaseError


class TestConfigFiles:
    def test_round_trip(self, tmp_path):
        values = {"kind": ScenarioKind.SMART_ATTACK, "base_speed": 15.0, "header_only": True, "seed": 3,
                  "noise_power": 100 / 35**4 / 100}
        path = write_config_file(str(tmp_path / "a" / "run.cfg"), values, header="two\nlines")
        back = read_config_file(path)
        assert list(back) == list(values)
        assert back["kind"] == "SmartAttack"
        assert back["header_only"] == "true"
        assert float(back["noise_power"]) == values["noise_power"]
        with open(path) as f:
            assert f.readline() == "# two\n"

    def test_key_without_value(self, tmp_path):
        path = tmp_path / "broken.cfg"
        path.write_text("base_speed\n")
        with pytest.raises(ConfigError) as e:
            read_config_file(str(path))
        assert e.value.key == "base_speed"

    def test_format(self):
        assert format_config_value(False) == "false"
        assert format_config_value(0.1) == "0.1"
        assert format_config_value(ScenarioKind.INTERFERENCE) == "Interference"

    @pytest.mark.parametrize("raw,expected", [("true", True), ("Yes", True), ("0", False), ("f", False)])
    def test_parse_bool(self, raw, expected):
        assert parse_bool("header_only", raw) is expected

    def test_coerce(self):
        assert coerce_value("seed", " 7 ", int) == 7
        assert coerce_value("f_c", "5.9e9", float) == 5.9e9
        with pytest.raises(ConfigError):
            coerce_value("seed", "7.5", int)


class TestErrors:
    def test_hierarchy(self):
        assert issubclass(ConfigError, JamscopeError)
        assert issubclass(UnknownCaseError, ValueError)
        assert ConfigError("k").key == "k"


class TestLogger:
    def test_json_output(self, monkeypatch):
        monkeypatch.setenv("JAMSCOPE_LOG_JSON", "1")
        logger = get_logger("jamscope.tests.json")
        assert isinstance(logger.handlers[0].formatter, jsonlogger.JsonFormatter)
        assert not logger.propagate

    def test_level_from_env(self, monkeypatch):
        monkeypatch.setenv("JAMSCOPE_LOG_LEVEL", "debug")
        assert get_logger("jamscope.tests.level").level == 10
        assert get_logger("jamscope.tests.level") is get_logger("jamscope.tests.level")

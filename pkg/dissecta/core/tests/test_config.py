import pytest
import yaml
from pydantic import ValidationError

from dissecta.core import config
from dissecta.core.config import (
    MAX_ELEMENTS_ENV,
    get_config,
    get_config_from_dict,
    load_config,
    set_config,
)


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    monkeypatch.setattr(config, "_config", None)
    monkeypatch.delenv(MAX_ELEMENTS_ENV, raising=False)


def test_shipped_configuration():
    cfg = load_config()
    assert cfg.limits.max_elements == 4096
    assert cfg.limits.prime_ideal_max_elements == 24
    assert cfg.compute.workers == 1
    assert cfg.logging["loggers"]["dissecta"]["handlers"] == ["stderr"]


def test_environment_overrides_max_elements(monkeypatch):
    monkeypatch.setenv(MAX_ELEMENTS_ENV, "12")
    assert load_config().limits.max_elements == 12


@pytest.mark.parametrize("value", ["lots", "0", "1.5"])
def test_invalid_environment_override(monkeypatch, value):
    monkeypatch.setenv(MAX_ELEMENTS_ENV, value)
    with pytest.raises(ValidationError):
        load_config()


def test_config_from_dict_fills_defaults():
    cfg = get_config_from_dict({"compute": {"workers": 4}})
    assert cfg.compute.workers == 4
    assert cfg.limits.dlattice_max_ground == 12


def test_invalid_values_are_rejected():
    with pytest.raises(ValidationError):
        get_config_from_dict({"compute": {"workers": 0}})


def test_custom_file(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump({"limits": {"max_elements": 7}}))
    assert load_config(str(path)).limits.max_elements == 7

    empty = tmp_path / "empty.yaml"
    empty.write_text("")
    assert load_config(str(empty)).limits.max_elements == 4096


def test_get_and_set_config():
    assert get_config() is get_config()
    custom = get_config_from_dict({"limits": {"max_elements": 3}})
    set_config(custom)
    assert get_config() is custom

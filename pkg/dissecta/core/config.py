import os
from typing import Any, Dict, Optional, Union

import yaml
from pydantic import BaseModel, Field

CONFIG_PATH = os.path.join(
    os.path.dirname(os.path.abspath(__file__)), "configurations/config.yaml"
)
MAX_ELEMENTS_ENV = "DISSECTA_MAX_ELEMENTS"


class LimitsConfiguration(BaseModel):
    max_elements: int = Field(
        4096, ge=1, description="largest poset accepted when loading a document"
    )
    prime_ideal_max_elements: int = Field(
        24, ge=1, description="largest lattice whose prime ideals are enumerated"
    )
    dlattice_max_ground: int = Field(
        12, ge=0, description="largest ground set for which D(L) is materialised"
    )


class ComputeConfiguration(BaseModel):
    workers: int = Field(1, ge=1, description="threads for per-flat/per-element loops")


class DissectaConfiguration(BaseModel):
    limits: LimitsConfiguration = Field(default_factory=LimitsConfiguration)
    compute: ComputeConfiguration = Field(default_factory=ComputeConfiguration)
    logging: Dict[str, Any] = Field(
        default_factory=lambda: {"version": 1, "disable_existing_loggers": False},
        description="logging.config.dictConfig dictionary",
    )


def get_config_from_dict(config_data: dict) -> Union[DissectaConfiguration, None]:
    data = DissectaConfiguration(**config_data)
    return data


def load_config(path: Optional[str] = None) -> DissectaConfiguration:
    with open(path or CONFIG_PATH, "r") as f:
        config_data = yaml.safe_load(f) or {}

    override = os.environ.get(MAX_ELEMENTS_ENV)
    if override:
        config_data.setdefault("limits", {})["max_elements"] = override

    return get_config_from_dict(config_data)


_config: Optional[DissectaConfiguration] = None


def get_config() -> DissectaConfiguration:
    global _config
    if _config is None:
        _config = load_config()
    return _config


def set_config(config: DissectaConfiguration) -> None:
    global _config
    _config = config

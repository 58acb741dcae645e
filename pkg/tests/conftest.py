from importlib.resources import files

import pytest
from hypothesis import HealthCheck, settings

from besmints.logic.base import Base, parse_base

settings.register_profile(
    "ci",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("ci")


@pytest.fixture
def conj_base() -> Base:
    """a, b => r; r => a; r => b"""
    return parse_base(files("besmints.data").joinpath("conj.base").read_text(encoding="utf-8"))

import pytest

from kernel.errors import InvalidTolerancesError
from kernel.geometry_types import Tolerances
from utilities.settings import KernelSettings, workers_from_environment


@pytest.fixture
def settings():
    settings = KernelSettings()
    yield settings
    settings.reset()


def test_settings_are_a_singleton(settings):
    assert KernelSettings() is settings


def test_workers_from_environment(monkeypatch):
    monkeypatch.setenv("APOLLO_THREADS", "3")
    assert workers_from_environment() == 3
    monkeypatch.setenv("APOLLO_THREADS", "0")
    assert workers_from_environment() == 1
    monkeypatch.setenv("APOLLO_THREADS", "many")
    assert workers_from_environment() >= 1
    monkeypatch.delenv("APOLLO_THREADS")
    assert workers_from_environment() >= 1


def test_configure_and_reset(settings, monkeypatch):
    monkeypatch.setenv("APOLLO_THREADS", "2")
    settings.reset()
    assert settings.workers == 2

    settings.configure(residual_rel=1e-6, workers=5)
    assert settings.tolerances.residual_rel == 1e-6
    assert settings.tolerances.singular_rel == Tolerances().singular_rel
    assert settings.workers == 5

    settings.reset()
    assert settings.tolerances == Tolerances()
    assert settings.workers == 2


def test_invalid_tolerance_is_rejected(settings):
    with pytest.raises(InvalidTolerancesError):
        settings.configure(residual_rel=2.0)


def test_tolerances_for(settings):
    assert settings.tolerances_for() is settings.tolerances
    assert settings.tolerances_for(1e-4).residual_rel == 1e-4
    assert settings.tolerances.residual_rel == Tolerances().residual_rel

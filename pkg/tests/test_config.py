import logging

from core.config import Config, TestingConfig, config, get_config
from core.tuning import load_tuning
from components.omega.logic import numerical_rank


def test_testing_environment_selected():
    assert get_config() is TestingConfig
    assert TestingConfig.CHECK_SAMPLES == 10


def test_unknown_environment_falls_back(monkeypatch):
    monkeypatch.setenv("SLOCC_ENV", "staging")
    assert get_config() is config["default"]


def test_base_tolerances():
    assert Config.MAX_SECTOR_LABELS == 2 ** 20
    assert Config.INVARIANCE_TOLERANCE == 1e-8
    assert Config.SAMPLING_SCALE > 0


def test_component_tuning_loads():
    assert load_tuning("hubbard")["hamiltonian"]["J"] == 1.0
    assert load_tuning("maxent")["cyclic"]["max_labels"] == 2 ** 20
    assert load_tuning("omega")["sampling"]["proportionality_samples"] >= 3


def test_missing_tuning_is_empty(caplog):
    with caplog.at_level(logging.WARNING, logger="core.tuning"):
        assert load_tuning("nonexistent") == {}
    assert "nonexistent" in caplog.text


def test_rank_tolerance_falls_back_to_config(monkeypatch):
    nearly_dependent = [[1.0, 1.0], [1.0, 1.01]]
    monkeypatch.setattr("components.omega.logic.load_tuning", lambda component: {})
    assert numerical_rank(nearly_dependent) == 2
    monkeypatch.setattr(TestingConfig, "RANK_TOLERANCE", 0.5)
    assert numerical_rank(nearly_dependent) == 1

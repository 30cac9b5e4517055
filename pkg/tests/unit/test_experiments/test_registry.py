"""
Tests for the experiment registry and parameter resolution.
"""

import pytest

from src.core.exceptions import ConfigurationError, ValidationError
from src.experiments.registry import ExperimentOutput, ExperimentRegistry, get_registry

REGISTERED_EXPERIMENTS = {
    "antenna_experiment",
    "antenna_scaling",
    "born_emergence",
    "born_grid",
    "chain_consistency",
    "deferred_projection",
    "dominance_gap",
    "fiber_network",
    "overlap_decay",
    "path_uniqueness",
}


@pytest.fixture
def registry() -> ExperimentRegistry:
    reg = ExperimentRegistry()

    @reg.register("toy", "A toy experiment", n=10, scale=1.5, mode="fast")
    def run_toy(params, seed, threads):
        return ExperimentOutput({"n": params["n"]})

    return reg


class TestRegistry:
    def test_defaults_fill_missing_params(self, registry):
        params = registry.get("toy").resolve_params({"n": 3})
        assert params == {"n": 3, "scale": 1.5, "mode": "fast"}

    def test_int_param_accepts_integral_float(self, registry):
        assert registry.get("toy").resolve_params({"n": 4.0})["n"] == 4

    def test_float_param_accepts_int(self, registry):
        params = registry.get("toy").resolve_params({"scale": 2})
        assert params["scale"] == 2.0
        assert isinstance(params["scale"], float)

    @pytest.mark.parametrize(
        "params",
        [{"n": 2.5}, {"n": "ten"}, {"scale": "big"}, {"mode": 3}, {"n": True}],
    )
    def test_wrong_types_rejected(self, registry, params):
        with pytest.raises(ConfigurationError):
            registry.get("toy").resolve_params(params)

    def test_unknown_param_rejected(self, registry):
        with pytest.raises(ConfigurationError) as info:
            registry.get("toy").resolve_params({"nn": 3})
        assert info.value.details["unknown"] == ["nn"]

    def test_unknown_experiment(self, registry):
        with pytest.raises(ConfigurationError):
            registry.get("missing")

    def test_duplicate_registration(self, registry):
        with pytest.raises(ConfigurationError):
            registry.register("toy", "again")(lambda p, s, t: ExperimentOutput({}))

    def test_domain_check_becomes_configuration_error(self, registry):
        def positive(params):
            if params["n"] < 1:
                raise ValidationError("n must be positive", details={"n": params["n"]})

        registry.register("checked", "With a domain check", check=positive, n=1)(
            lambda p, s, t: ExperimentOutput({})
        )
        experiment = registry.get("checked")
        experiment.check_params(experiment.resolve_params({"n": 2}))
        with pytest.raises(ConfigurationError) as info:
            experiment.check_params(experiment.resolve_params({"n": 0}))
        assert info.value.details == {"n": 0, "experiment": "checked"}
        assert "n must be positive" in info.value.message

    def test_listing_is_sorted(self, registry):
        registry.register("alpha", "first")(lambda p, s, t: ExperimentOutput({}))
        assert [item.name for item in registry.listing()] == ["alpha", "toy"]


class TestGlobalRegistry:
    def test_singleton(self):
        assert get_registry() is get_registry()

    def test_every_experiment_registered(self):
        assert set(get_registry().names()) == REGISTERED_EXPERIMENTS

    def test_names_sorted(self):
        names = get_registry().names()
        assert names == sorted(names)

    def test_born_emergence_defaults(self):
        defaults = get_registry().get("born_emergence").defaults
        assert defaults["w"] == 3
        assert defaults["N"] == 100000
        assert defaults["ensemble"] == "haar"

"""
Tests for the invariant verification suite and `tbsim verify`.
"""

import pytest
from click.testing import CliRunner

from src.experiments import verify
from src.main import cli


@pytest.fixture
def only(monkeypatch):
    """Restrict the suite to the named checks."""

    def restrict(*names: str) -> None:
        monkeypatch.setattr(verify, "_CHECKS", {n: verify._CHECKS[n] for n in names})

    return restrict


class TestRunChecks:
    def test_full_level_adds_acceptance_checks(self):
        quick = set(verify.check_names("quick"))
        full = set(verify.check_names("full"))
        assert quick < full
        assert {"born_theta_grid", "performance_20q"} <= full - quick

    @pytest.mark.parametrize(
        "name",
        [
            "unitarity_preserved",
            "abl_normalization",
            "deferral_identity",
            "chain_brute_force",
            "jump_consistency",
            "time_symmetry",
            "three_box",
            "overlap_decay_exact",
            "witness_deferral",
            "path_uniqueness",
            "mach_zehnder",
            "rule_one",
            "antenna_single_flat",
            "antenna_second_order",
        ],
    )
    def test_exact_checks_pass(self, only, name):
        only(name)
        (result,) = verify.run_checks("quick")
        assert result.passed, result.detail

    def test_exception_counts_as_failure(self, monkeypatch):
        def broken(full):
            raise RuntimeError("boom")

        monkeypatch.setattr(verify, "_CHECKS", {"broken": verify.Check("broken", broken)})
        (result,) = verify.run_checks("quick")
        assert not result.passed
        assert "boom" in result.detail


class TestVerifyCommand:
    def test_passing_subset(self, only):
        only("three_box", "mach_zehnder")
        result = CliRunner().invoke(cli, ["verify"])
        assert result.exit_code == 0, result.output
        assert "PASS  three_box" in result.output
        assert "2/2 checks passed" in result.output

    def test_broken_deferral_is_reported(self, only, monkeypatch):
        only("deferral_identity", "three_box")
        monkeypatch.setattr(
            "src.services.boundary.engine.defer_projection",
            lambda p, u2, n_qubits=None: p,
        )
        result = CliRunner().invoke(cli, ["verify"])
        assert result.exit_code == 4
        assert "FAIL  deferral_identity" in result.output
        assert "PASS  three_box" in result.output
        assert "VerificationFailure" in result.output

    @pytest.mark.slow
    def test_quick_suite_passes(self):
        result = CliRunner().invoke(cli, ["verify"])
        assert result.exit_code == 0, result.output

"""Tests for clsmooth.bench.suites: suite registry, verdicts and fault injection."""

from __future__ import annotations

import math

import pytest

from clsmooth.bench.suites import (
    SUITES,
    cross_face_smoothness,
    property_suites,
    run_suite,
    suite,
    suite_names,
)
from clsmooth.config import default_config
from clsmooth.exceptions import GeometryError, PreconditionError
from clsmooth.extension.axis import AxisExtension

EXPECTED_SUITES = {
    "partition-identities",
    "polynomial-exactness",
    "convergence",
    "operator-bound",
    "support",
    "tensor-witness",
    "interpolated-family",
    "linearity",
    "extension-restriction",
    "cross-face-smoothness",
    "vandermonde",
    "cube-smoothing",
    "extension-bound",
    "dugundji",
    "calculus",
    "domains",
    "seed-stability",
}


class TestRegistry:
    def test_all_suites_registered(self):
        assert set(suite_names()) == EXPECTED_SUITES

    def test_duplicate_name_rejected(self):
        with pytest.raises(PreconditionError, match="already registered"):
            suite("vandermonde")(lambda config: None)


class TestRunSuite:
    def test_vandermonde_passes(self):
        result = run_suite("vandermonde")
        assert result.passed
        assert result.checks == 6
        assert result.max_violation == 0.0

    def test_unknown_suite(self):
        with pytest.raises(PreconditionError, match="unknown suite"):
            run_suite("no-such-suite")

    def test_operator_error_becomes_failure(self, monkeypatch: pytest.MonkeyPatch):
        def broken(config):
            raise GeometryError("boom")

        monkeypatch.setitem(SUITES, "broken", broken)
        result = run_suite("broken")
        assert not result.passed
        assert result.max_violation == math.inf
        assert result.checks == 0
        assert result.details == ("GeometryError: boom",)

    def test_partition_identities_respect_configured_order(self):
        config = default_config()
        config.jets.max_order = 1
        config.harness.random_points = 50
        result = run_suite("partition-identities", config)
        assert result.passed, result.details
        assert result.checks == 6

    def test_domains_passes(self):
        result = run_suite("domains")
        assert result.passed, result.details
        assert result.checks == 7


class TestFaultInjection:
    def test_reference_weights_pass(self):
        result = cross_face_smoothness(default_config())
        assert result.passed
        assert result.checks > 0

    def test_perturbed_weight_detected(self):
        perturbed = AxisExtension.build(2).perturbed(0, 1e-3)
        result = cross_face_smoothness(default_config(), perturbed)
        assert not result.passed
        assert result.max_violation > 0.0
        assert result.details


class TestPropertySuites:
    def test_names_deduplicated(self):
        results = property_suites(default_config(), ["vandermonde", "vandermonde"])
        assert [r.suite for r in results] == ["vandermonde"]

    def test_unknown_names_rejected_before_running(self):
        with pytest.raises(PreconditionError, match="nope"):
            property_suites(default_config(), ["vandermonde", "nope"])

    def test_verdicts_do_not_depend_on_the_seed(self):
        names = ["domains", "calculus", "vandermonde"]
        config = default_config()
        shifted = default_config()
        shifted.sampling.seed = config.sampling.seed + 17
        first = property_suites(config, names)
        second = property_suites(shifted, names)
        assert [r.passed for r in first] == [r.passed for r in second]
        assert all(r.passed for r in first)

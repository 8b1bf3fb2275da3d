"""Phase/expectation-value bridge and the magnetization identity."""

import numpy as np
import pytest

from xyberry import (
    CriticalPointError,
    CyclicGeneratorSpec,
    XYParams,
    classify_criticality,
    expectation_from_phase,
    magnetization_analytic,
    magnetization_ed,
    phase_magnetization_identity,
)


def params(lam, gamma, n):
    return XYParams(lam=lam, gamma=gamma, n_sites=n)


class TestExpectationFromPhase:
    def test_spin_half_verification(self):
        # A full azimuthal circuit is generated with lam*T = 2 pi; the
        # generator's mean is (1 - cos theta) / 2.
        for theta in (0.3, np.pi / 2, 2.4):
            phase = np.pi * (1 - np.cos(theta))
            spec = CyclicGeneratorSpec(lambda_t=2 * np.pi, description="(1 - sz)/2")
            assert expectation_from_phase(phase, spec) == pytest.approx(
                (1 - np.cos(theta)) / 2, abs=1e-14
            )

    def test_trivial_loop(self):
        assert expectation_from_phase(0.0, CyclicGeneratorSpec(1.0)) == 0.0

    def test_equator(self):
        assert expectation_from_phase(np.pi, CyclicGeneratorSpec(2 * np.pi)) == pytest.approx(0.5)

    def test_zero_generator_rejected(self):
        with pytest.raises(ValueError):
            CyclicGeneratorSpec(lambda_t=0.0)

    def test_linearity_and_homogeneity(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            a, b = rng.uniform(-5, 5, 2)
            lt = rng.uniform(0.1, 9.0)
            spec = CyclicGeneratorSpec(lt)
            assert expectation_from_phase(a + b, spec) == pytest.approx(
                expectation_from_phase(a, spec) + expectation_from_phase(b, spec),
                abs=1e-12,
            )
            assert expectation_from_phase(a, CyclicGeneratorSpec(2 * lt)) == pytest.approx(
                0.5 * expectation_from_phase(a, spec), abs=1e-12
            )


class TestMagnetizationAnalytic:
    def test_polarized_limit(self):
        assert magnetization_analytic(params(50.0, 0.5, 8)) == pytest.approx(8.0, abs=1e-2)

    def test_zero_field_vanishes_exactly(self):
        # At lam = 0 the polar cosines cancel pairwise under q -> pi - q.
        assert magnetization_analytic(params(0.0, 0.3, 6)) == pytest.approx(0.0, abs=1e-13)

    def test_matches_oracle_n6(self):
        p = params(0.5, 0.5, 6)
        assert magnetization_analytic(p) == pytest.approx(magnetization_ed(p), abs=1e-8)

    def test_rejects_critical(self):
        with pytest.raises(CriticalPointError):
            magnetization_analytic(params(1.0, 0.5, 6))


class TestPhaseMagnetizationIdentity:
    def test_polarized_limit(self):
        lhs, rhs = phase_magnetization_identity(params(100.0, 0.5, 6))
        assert lhs == pytest.approx(6 * np.pi, rel=1e-4)
        assert rhs == pytest.approx(6 * np.pi, rel=1e-4)

    @pytest.mark.parametrize("point,n", [((0.5, 0.5), 6), ((0.3, 0.8), 4)])
    def test_reference_points(self, point, n):
        lhs, rhs = phase_magnetization_identity(params(*point, n))
        assert abs(lhs - rhs) < 1e-10

    def test_random_draws_and_oracle(self):
        rng = np.random.default_rng(21)
        checked = 0
        while checked < 50:
            lam = rng.uniform(-2, 2)
            gamma = rng.uniform(-2, 2)
            if classify_criticality(lam, gamma).distance <= 0.05:
                continue
            checked += 1
            n = int(rng.choice([4, 6, 8]))
            p = params(lam, gamma, n)
            lhs, rhs = phase_magnetization_identity(p)
            assert abs(lhs - rhs) < 1e-10
            assert magnetization_analytic(p) == pytest.approx(
                magnetization_ed(p), abs=1e-8
            ), (lam, gamma, n)

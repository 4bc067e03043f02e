# tests/test_quadrature.py
"""Adaptive Gauss-Kronrod engine against closed-form integrals."""

import math

import numpy as np
import pytest

from planarcp import (IntegralResult, NonDecaying, NotConverged,
                      QuadratureSpec, integrate_evanescent,
                      integrate_propagating)


class TestSpecValidation:
    def test_rejects_bad_tolerances(self):
        with pytest.raises(ValueError):
            QuadratureSpec(rel_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(abs_tol=-1.0)
        with pytest.raises(ValueError):
            QuadratureSpec(max_subdivisions=0)
        with pytest.raises(ValueError):
            QuadratureSpec(tail_cutoff=1.5)


class TestPropagating:
    def test_polynomial_exact(self):
        # int_0^1 beta dbeta = 1/2, exact for Gauss-Kronrod.
        res = integrate_propagating(lambda b: b + 0j, 1.0)
        assert res.value == pytest.approx(0.5, rel=1e-14)
        assert res.converged

    def test_oscillatory_closed_form(self):
        # int_0^B exp(2 i beta z) dbeta = (exp(2 i B z) - 1)/(2 i z).
        z, B = 7.3, 2.0
        res = integrate_propagating(lambda b: np.exp(2j * b * z), B,
                                    max_panel_width=math.pi / (4 * z))
        expected = (np.exp(2j * B * z) - 1.0) / (2j * z)
        assert res.value == pytest.approx(expected, rel=1e-10)

    def test_error_estimate_honest_on_smooth_integrand(self):
        z = 3.0
        res = integrate_propagating(lambda b: np.exp(2j * b * z), 1.0,
                                    max_panel_width=math.pi / (4 * z))
        expected = (np.exp(2j * z) - 1.0) / (2j * z)
        assert abs(res.value - expected) <= max(res.error_estimate, 1e-14)

    def test_rejects_empty_interval(self):
        with pytest.raises(ValueError):
            integrate_propagating(lambda b: b, 0.0)

    def test_not_converged_carries_partial_result(self):
        # A needle the subdivision budget cannot resolve.
        spec = QuadratureSpec(rel_tol=1e-14, max_subdivisions=2)

        def needle(b):
            return 1.0 / ((b - 0.331) ** 2 + 1e-14)

        with pytest.raises(NotConverged) as exc_info:
            integrate_propagating(needle, 1.0, spec)
        partial = exc_info.value.result
        assert isinstance(partial, IntegralResult)
        assert not partial.converged
        assert partial.error_estimate > 0.0


class TestEvanescent:
    def test_unit_prefactor(self):
        # int_0^inf exp(-2 kappa z) dkappa = 1/(2z).
        res = integrate_evanescent(lambda k: np.ones_like(k) + 0j, 2.0)
        assert res.value == pytest.approx(0.25, rel=1e-12)

    def test_linear_prefactor(self):
        # int_0^inf kappa exp(-2 kappa z) dkappa = 1/(4 z^2).
        res = integrate_evanescent(lambda k: k + 0j, 1.0)
        assert res.value == pytest.approx(0.25, rel=1e-12)

    def test_growing_prefactor_tail_extension(self):
        # Prefactor exp(+kappa) delays the decay: the effective rate is
        # 2z - 1, so truncation at the bare-exponential point would lose
        # a visible fraction without the tail-extension loop.
        z = 0.75
        res = integrate_evanescent(lambda k: np.exp(k) + 0j, z)
        assert res.value == pytest.approx(1.0 / (2.0 * z - 1.0), rel=1e-10)

    def test_breakpoints_pin_narrow_feature(self):
        # A Lorentzian spike of width 1e-7 that uniform panels miss.
        center, width = 5.0, 1e-7

        def spike(k):
            return width / ((k - center) ** 2 + width ** 2) + 0j

        # Exact: int L(k) e^(-2kz) dk ~ pi * e^(-2*center*z) for a
        # narrow spike (plus a smooth background integral ~ width).
        z = 0.5
        edges = tuple(center + s * width * 10.0 ** e
                      for s in (-1, 1) for e in range(0, 7))
        res = integrate_evanescent(spike, z, breakpoints=edges + (center,))
        assert res.value.real == pytest.approx(math.pi * math.exp(-2 * center * z),
                                               rel=1e-3)

    def test_requires_decay(self):
        with pytest.raises(NonDecaying):
            integrate_evanescent(lambda k: k, 0.0)
        with pytest.raises(NonDecaying):
            integrate_evanescent(lambda k: k, -1.0)


class TestDeterminism:
    def test_bit_identical_repeats(self):
        def f(b):
            return np.exp(2j * b * 4.7) / (1.0 + b * b)

        r1 = integrate_propagating(f, 3.0, max_panel_width=0.1)
        r2 = integrate_propagating(f, 3.0, max_panel_width=0.1)
        assert r1.value == r2.value
        assert r1.error_estimate == r2.error_estimate
        assert r1.evaluations == r2.evaluations

        def g(k):
            return np.exp(1j * k) / (1.0 + k)

        e1 = integrate_evanescent(g, 0.8, breakpoints=(1.0, 2.5))
        e2 = integrate_evanescent(g, 0.8, breakpoints=(1.0, 2.5))
        assert e1.value == e2.value and e1.evaluations == e2.evaluations

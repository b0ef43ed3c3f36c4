import cmath
import math

import numpy as np
import pytest

from scripts.quadrature import (
    ConvergenceError,
    DomainError,
    OscillatoryKernel,
    ReferenceConfig,
    default_points,
    gl_rule,
    integrate,
    make_grid,
    make_partition,
    moment_table,
    reference_integral,
    reference_levels,
    reference_q,
    sample,
)
from scripts.quadrature.functions import f1


def _monomial_moment(k, omega):
    """int_{-1}^{1} x^k exp(-i omega x) dx for k = 0, 1, 2."""
    s, c = math.sin(omega), math.cos(omega)
    if k == 0:
        return complex(2 * s / omega, 0.0)
    if k == 1:
        return complex(0.0, -2 * (s - omega * c) / omega ** 2)
    return complex(2 * ((omega ** 2 - 2) * s + 2 * omega * c) / omega ** 3, 0.0)


def _closed_form(k, variant, omega, y):
    # kappa(omega (y - x)) is the real or imaginary part of exp(i omega y) exp(-i omega x)
    value = cmath.exp(1j * omega * y) * _monomial_moment(k, omega)
    return value.imag if variant == 'sin' else value.real


class TestReferenceIntegral:

    @pytest.mark.parametrize('k', [0, 1, 2])
    @pytest.mark.parametrize('variant', ['sin', 'cos'])
    @pytest.mark.parametrize('omega', [1.0, 10.0, 100.0])
    def test_closed_forms(self, k, variant, omega):
        y = 0.3
        result = reference_integral(lambda x: x ** k, OscillatoryKernel(variant, omega), 1.0, y)
        assert result.value == pytest.approx(_closed_form(k, variant, omega, y), abs=1e-12)
        assert result.achieved_tol <= 1e-13 * max(1.0, abs(result.value))

    def test_constant_cosine_example(self):
        result = reference_integral(lambda x: np.ones_like(x), OscillatoryKernel('cos', 10.0), 1.0, 0.0)
        assert result.value == pytest.approx(2 * math.sin(10.0) / 10.0, abs=1e-13)
        assert result.value == pytest.approx(-0.10880422, abs=1e-8)

    def test_linear_sine_example(self):
        result = reference_integral(lambda x: x, OscillatoryKernel('sin', 10.0), 1.0, 0.0)
        expected = -2 * (math.sin(10.0) - 10.0 * math.cos(10.0)) / 100.0
        assert result.value == pytest.approx(expected, abs=1e-13)

    def test_zero_function(self):
        result = reference_integral(lambda x: np.zeros_like(x), OscillatoryKernel('sin', 10.0), 1.0, 0.2)
        assert result.value == 0.0
        assert result.achieved_tol == 0.0

    def test_scalar_valued_callable(self):
        result = reference_integral(lambda x: 1.0, OscillatoryKernel('cos', 0.0), 2.0, 0.0)
        assert result.value == pytest.approx(4.0, abs=1e-13)

    def test_tolerance_is_relative_for_large_values(self):
        kernel = OscillatoryKernel('cos', 10.0)
        unit = reference_integral(f1, kernel, 1.0, 0.5)
        scaled = reference_integral(lambda x: 1e8 * f1(x), kernel, 1.0, 0.5)
        assert scaled.value == pytest.approx(1e8 * unit.value, rel=1e-12)
        assert scaled.achieved_tol <= 1e-13 * abs(scaled.value)

    def test_levels_approach_limit(self):
        cfg = ReferenceConfig(refinement=2, points_per_panel=4, max_doublings=4)
        levels = list(reference_levels(np.exp, OscillatoryKernel('cos', 10.0), 1.0, 0.1, cfg))
        assert [panels for panels, _ in levels] == [8, 16, 32, 64, 128]
        diffs = [abs(b[1] - a[1]) for a, b in zip(levels, levels[1:])]
        assert all(later < earlier for earlier, later in zip(diffs, diffs[1:]))

    def test_convergence_failure_carries_last_value(self):
        cfg = ReferenceConfig(refinement=1, points_per_panel=2, target_tol=1e-30, max_doublings=1)
        with pytest.raises(ConvergenceError) as excinfo:
            reference_integral(np.exp, OscillatoryKernel('cos', 10.0), 1.0, 0.0, cfg)
        assert math.isfinite(excinfo.value.value)
        assert excinfo.value.achieved_tol > 0

    def test_rejects_points_outside_interval(self):
        with pytest.raises(DomainError):
            reference_integral(np.exp, OscillatoryKernel('sin', 1.0), 1.0, 1.5)
        with pytest.raises(DomainError):
            reference_integral(np.exp, OscillatoryKernel('sin', 1.0), 0.0, 0.0)

    @pytest.mark.parametrize('field,value', [
        ('refinement', 0),
        ('points_per_panel', 1),
        ('target_tol', 0.0),
        ('max_doublings', 0),
    ])
    def test_config_validation(self, field, value):
        with pytest.raises(DomainError):
            ReferenceConfig(**{field: value})


class TestReferenceMoments:

    def test_sine_at_zero_frequency(self):
        assert reference_q(3, 8, 1.0, OscillatoryKernel('sin', 0.0), 0.4) == 0.0

    @pytest.mark.parametrize('i', [0, 4, 8])
    def test_cosine_at_zero_frequency(self, i):
        assert reference_q(i, 8, 1.0, OscillatoryKernel('cos', 0.0), 0.0) == pytest.approx(2 / 9, abs=1e-12)

    def test_independent_panel_counts_agree(self):
        kernel = OscillatoryKernel('cos', 10.0)
        coarse = reference_q(3, 8, 1.0, kernel, 0.5, ReferenceConfig(refinement=4))
        fine = reference_q(3, 8, 1.0, kernel, 0.5, ReferenceConfig(refinement=16))
        assert math.isfinite(coarse)
        assert coarse == pytest.approx(fine, abs=1e-12)

    def test_bad_index(self):
        with pytest.raises(DomainError):
            reference_q(9, 8, 1.0, OscillatoryKernel('cos', 1.0), 0.0)


class TestCrossCheck:

    @pytest.mark.parametrize('variant', ['sin', 'cos'])
    @pytest.mark.parametrize('y', [-0.7, 0.0, 0.5])
    def test_rule_moments_match_reference(self, variant, y):
        m = 8
        kernel = OscillatoryKernel(variant, 10.0)
        q = moment_table(y, kernel, make_partition(1.0, kernel), m, gl_rule(default_points(m))).q
        for i in range(m + 1):
            assert q[i] == pytest.approx(reference_q(i, m, 1.0, kernel, y), rel=1e-10, abs=1e-12)

    @pytest.mark.parametrize('omega', [10.0, 100.0])
    def test_self_reference_agrees_with_oracle(self, omega):
        kernel = OscillatoryKernel('sin', omega)
        y, ell = -0.7, 256
        oracle = reference_integral(f1, kernel, 1.0, y).value
        self_ref = integrate(sample(f1, make_grid(512, 1.0)), kernel, ell, y)
        assert self_ref == pytest.approx(oracle, abs=1e-11)

        for m in [16, 32, 64]:
            value = integrate(sample(f1, make_grid(m, 1.0)), kernel, ell, y)
            oracle_error = abs(oracle - value)
            self_error = abs(self_ref - value)
            assert oracle_error <= 10 * self_error + 1e-12
            assert self_error <= 10 * oracle_error + 1e-12

import mpmath
import numpy as np
import pytest

from scripts.quadrature import (
    DimensionError,
    DomainError,
    GridFunction,
    approximation_error,
    basis_eval,
    basis_eval_all,
    basis_matrix,
    build_A,
    build_C,
    gb_eval,
    gb_eval_many,
    make_grid,
    node_operator,
    sample,
)
from scripts.quadrature.functions import f1, f2


def _mp_bernstein(m, a, values, x):
    """B_m f(x) with values f(t_k), in 50-digit arithmetic."""
    x = mpmath.mpf(x)
    a = mpmath.mpf(a)
    u = (a + x) / (2 * a)
    return mpmath.fsum(
        mpmath.binomial(m, k) * u ** k * (1 - u) ** (m - k) * values[k]
        for k in range(m + 1)
    )


class TestGrid:

    def test_endpoints_exact_and_constant_step(self):
        grid = make_grid(7, 1.3)
        assert grid.nodes[0] == -1.3
        assert grid.nodes[-1] == 1.3
        np.testing.assert_allclose(np.diff(grid.nodes), grid.step, rtol=1e-15)

    def test_rejects_bad_degree_and_width(self):
        with pytest.raises(DomainError):
            make_grid(0, 1.0)
        with pytest.raises(DomainError):
            make_grid(4, -1.0)

    def test_grid_function_checks_length_and_finiteness(self):
        grid = make_grid(4, 1.0)
        with pytest.raises(DimensionError):
            GridFunction(grid=grid, values=[1.0, 2.0])
        with pytest.raises(DomainError):
            GridFunction(grid=grid, values=[0.0, 1.0, np.nan, 0.0, 0.0])


class TestBasis:

    def test_endpoint_value(self):
        assert basis_eval(512, 1.0, 0, -1.0) == 1.0

    def test_midpoint_binomial(self):
        assert basis_eval(4, 1.0, 2, 0.0) == pytest.approx(0.375, rel=1e-14)

    def test_high_degree_matches_arbitrary_precision(self):
        with mpmath.workdps(50):
            u = (mpmath.mpf(2) + mpmath.mpf('0.3')) / 4
            expected = mpmath.binomial(512, 256) * u ** 256 * (1 - u) ** 256
        assert basis_eval(512, 2.0, 256, 0.3) == pytest.approx(float(expected), rel=1e-13)

    def test_all_at_endpoint(self):
        np.testing.assert_array_equal(basis_eval_all(3, 1.0, 1.0), [0.0, 0.0, 0.0, 1.0])

    def test_all_at_midpoint(self):
        np.testing.assert_allclose(basis_eval_all(2, 1.0, 0.0), [0.25, 0.5, 0.25], rtol=1e-14)

    def test_all_sums_to_one(self):
        assert basis_eval_all(64, 2.0, 0.7).sum() == pytest.approx(1.0, abs=1e-13)

    def test_batched_matches_single(self):
        xs = np.array([-0.9, -0.1, 0.4, 1.0])
        matrix = basis_matrix(12, 1.0, xs)
        for k in range(13):
            np.testing.assert_allclose(matrix[:, k], basis_eval(12, 1.0, k, xs), rtol=1e-14, atol=0)

    @pytest.mark.parametrize('m', [4, 64, 512])
    def test_partition_of_unity(self, m, rng):
        a = 1.5
        xs = rng.uniform(-a, a, 100)
        matrix = basis_matrix(m, a, xs)
        assert np.all(matrix >= 0)
        np.testing.assert_allclose(matrix.sum(axis=1), 1.0, atol=1e-13)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            basis_eval(4, 1.0, 2, 1.5)
        with pytest.raises(DomainError):
            basis_eval(4, 1.0, 5, 0.0)
        with pytest.raises(DomainError):
            basis_eval_all(4, 1.0, -1.01)


class TestNodeMatrix:

    def test_degree_one_is_identity(self):
        np.testing.assert_array_equal(build_A(1, 1.0), np.eye(2))

    @pytest.mark.parametrize('m', [4, 32, 512])
    def test_row_stochastic(self, m):
        A = build_A(m, 1.0)
        assert np.all(A >= 0)
        np.testing.assert_allclose(A @ np.ones(m + 1), 1.0, atol=1e-13)

    def test_reproduces_linear(self):
        t = make_grid(4, 1.0).nodes
        np.testing.assert_allclose(build_A(4, 1.0) @ t, t, atol=1e-13)

    def test_is_read_only(self):
        with pytest.raises(ValueError):
            build_A(4, 1.0)[0, 0] = 2.0


class TestBooleanSumMatrix:

    def test_ell_one_is_identity(self):
        np.testing.assert_array_equal(build_C(8, 1.0, 1).entries, np.eye(9))

    def test_ell_two(self):
        I = np.eye(9)
        expected = I + (I - build_A(8, 1.0))
        np.testing.assert_allclose(build_C(8, 1.0, 2).entries, expected, atol=1e-14)

    def test_general_ell_matches_naive_power_sum(self):
        I = np.eye(7)
        R = I - build_A(6, 1.0)
        naive = sum(np.linalg.matrix_power(R, q) for q in range(5))
        np.testing.assert_allclose(build_C(6, 1.0, 5).entries, naive, atol=1e-12)

    def test_rejects_zero(self):
        with pytest.raises(DomainError):
            build_C(8, 1.0, 0)

    @pytest.mark.parametrize('m', [4, 16, 64])
    @pytest.mark.parametrize('ell', [1, 2, 16, 256])
    def test_row_sums(self, m, ell):
        np.testing.assert_allclose(build_C(m, 1.0, ell).row_sums(), 1.0, atol=1e-8)

    @pytest.mark.parametrize('m', [4, 8, 16])
    @pytest.mark.parametrize('ell', [1, 2, 3, 4])
    def test_inf_norm_bound(self, m, ell):
        assert build_C(m, 1.0, ell).inf_norm() <= 2 ** ell - 1 + 1e-12

    @pytest.mark.parametrize('m', [4, 9, 16])
    @pytest.mark.parametrize('ell', [1, 2, 4])
    def test_doubling_identity(self, m, ell):
        R = np.eye(m + 1) - build_A(m, 1.0)
        C = build_C(m, 1.0, ell).entries
        expected = C + np.linalg.matrix_power(R, ell) @ C
        np.testing.assert_allclose(build_C(m, 1.0, 2 * ell).entries, expected, atol=1e-10)

    @pytest.mark.parametrize('ell', [1, 2, 4])
    def test_operator_doubling_at_nodes(self, ell):
        V = node_operator(build_C(10, 1.0, ell))
        V2 = node_operator(build_C(10, 1.0, 2 * ell))
        np.testing.assert_allclose(V2, 2 * V - V @ V, atol=1e-10)


class TestGeneralizedBernstein:

    @pytest.mark.parametrize('m,ell,x', [(4, 1, 0.2), (16, 4, -0.9), (32, 256, 0.55)])
    def test_constant_reproduction(self, m, ell, x):
        fs = sample(lambda t: np.ones_like(t), make_grid(m, 1.0))
        assert gb_eval(build_C(m, 1.0, ell), fs, x) == pytest.approx(1.0, abs=1e-10)

    def test_linear_reproduction_example(self):
        fs = sample(lambda t: t, make_grid(16, 1.0))
        assert gb_eval(build_C(16, 1.0, 4), fs, 0.3) == pytest.approx(0.3, abs=1e-10)

    def test_linear_reproduction_random(self, rng):
        grid = make_grid(20, 2.0)
        C = build_C(20, 2.0, 8)
        for alpha, beta in rng.uniform(-10, 10, (10, 2)):
            fs = sample(lambda t: alpha * t + beta, grid)
            x = rng.uniform(-2.0, 2.0)
            assert gb_eval(C, fs, x) == pytest.approx(alpha * x + beta, abs=1e-10)

    def test_quadratic_matches_operator_definition(self):
        m, a = 8, 1
        with mpmath.workdps(50):
            x = mpmath.mpf('0.5')
            t = [mpmath.mpf(-a) + mpmath.mpf(2 * a * k) / m for k in range(m + 1)]
            f_t = [tk ** 2 for tk in t]
            b_at_nodes = [_mp_bernstein(m, a, f_t, tk) for tk in t]
            # f - (f - B f)^2 = 2 B f - B(B f)
            expected = 2 * _mp_bernstein(m, a, f_t, x) - _mp_bernstein(m, a, b_at_nodes, x)

        fs = sample(lambda s: s ** 2, make_grid(m, 1.0))
        assert gb_eval(build_C(m, 1.0, 2), fs, 0.5) == pytest.approx(float(expected), abs=1e-12)

    def test_many_matches_single(self):
        fs = sample(f1, make_grid(12, 1.0))
        C = build_C(12, 1.0, 4)
        xs = np.linspace(-1.0, 1.0, 7)
        np.testing.assert_allclose(gb_eval_many(C, fs, xs), [gb_eval(C, fs, x) for x in xs], rtol=1e-14)

    def test_dimension_mismatch(self):
        fs = sample(f1, make_grid(8, 1.0))
        with pytest.raises(DimensionError):
            gb_eval(build_C(6, 1.0, 2), fs, 0.0)
        with pytest.raises(DimensionError):
            gb_eval(build_C(8, 2.0, 2), fs, 0.0)

    def test_out_of_range(self):
        fs = sample(f1, make_grid(8, 1.0))
        with pytest.raises(DomainError):
            gb_eval(build_C(8, 1.0, 2), fs, 1.2)

    def test_boolean_sum_accelerates_convergence(self):
        a = 2.0
        previous = np.inf
        for m in [16, 32, 64, 128, 256]:
            t = make_grid(m, a).nodes
            fs = sample(f2, make_grid(m, a))
            err_classic = np.max(np.abs(node_operator(build_C(m, a, 1)) @ fs.values - fs.values))
            err_boolean = np.max(np.abs(node_operator(build_C(m, a, 2)) @ fs.values - f2(t)))
            assert err_boolean < err_classic
            assert err_boolean < previous
            previous = err_boolean

    def test_approximation_error_improves_with_ell(self):
        assert approximation_error(f1, 32, 1.0, 4) < approximation_error(f1, 32, 1.0, 1)

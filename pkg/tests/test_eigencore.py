"""
Eigensolver, dual-path and Wielandt checks.

Ground truth: numpy.linalg.eigh (LAPACK)
"""
import numpy as np
import pytest

from common.errors import DimensionMismatch, NonFinite
from eigencore import (
    EigenPath,
    SymMatrix,
    choose_path,
    decompose,
    dual_eigen,
    dual_split,
    orthonormality_error,
    reconstruction_residual,
    sample_cov,
    sym_eigen,
    wielandt_check,
    wielandt_check_all,
)
from metrics import abs_inner


def _random_symmetric(rng, p):
    a = rng.standard_normal((p, p))
    return a + a.T


class TestSymMatrix:

    def test_symmetrizes(self):
        m = SymMatrix(np.array([[1.0, 2.0], [4.0, 3.0]]))
        np.testing.assert_allclose(m.entries, [[1.0, 3.0], [3.0, 3.0]])
        assert m.order == 2

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatch):
            SymMatrix(np.zeros((2, 3)))

    def test_rejects_nan(self):
        with pytest.raises(NonFinite):
            SymMatrix(np.array([[1.0, np.nan], [np.nan, 1.0]]))


class TestSymEigen:

    @pytest.mark.parametrize("solver", ["lapack", "jacobi"])
    def test_identity(self, solver):
        result = sym_eigen(np.eye(5), solver=solver)
        np.testing.assert_allclose(result.values, np.ones(5), atol=1e-12)

    @pytest.mark.parametrize("solver", ["lapack", "jacobi"])
    def test_diagonal_sorted_descending(self, solver):
        result = sym_eigen(np.diag([1.0, 5.0, 3.0, 4.0, 2.0]), solver=solver)
        np.testing.assert_allclose(result.values, [5.0, 4.0, 3.0, 2.0, 1.0], atol=1e-12)
        assert result.path is EigenPath.DIRECT

    def test_rank_one(self):
        v = np.array([1.0, 2.0, 3.0])
        result = sym_eigen(np.outer(v, v))
        np.testing.assert_allclose(result.values[0], 14.0)
        assert np.all(np.abs(result.values[1:]) < 1e-10)

    def test_jacobi_matches_lapack(self, rng):
        m = _random_symmetric(rng, 12)
        ours = sym_eigen(m, solver="jacobi").values
        theirs = np.sort(np.linalg.eigh(m)[0])[::-1]
        np.testing.assert_allclose(ours, theirs, atol=1e-9 * np.linalg.norm(m))

    def test_one_by_one(self):
        result = sym_eigen(np.array([[3.5]]), solver="jacobi")
        np.testing.assert_allclose(result.values, [3.5])
        np.testing.assert_allclose(result.vectors, [[1.0]])

    def test_sign_convention(self, rng):
        result = sym_eigen(_random_symmetric(rng, 8))
        for k in range(result.vectors.shape[1]):
            col = result.vectors[:, k]
            assert col[np.argmax(np.abs(col))] > 0

    def test_unknown_solver(self):
        with pytest.raises(ValueError):
            sym_eigen(np.eye(2), solver="qr")

    @pytest.mark.parametrize("solver", ["lapack", "jacobi"])
    def test_certification(self, rng, solver):
        for _ in range(200):
            p = int(rng.integers(1, 101))
            m = _random_symmetric(rng, p)
            result = sym_eigen(m, solver=solver)
            norm = np.linalg.norm(m)
            assert reconstruction_residual(m, result) <= 1e-10 * norm
            assert orthonormality_error(result) <= 1e-10

    def test_jacobi_converges_on_random_orders(self):
        rng = np.random.default_rng(2024)
        for _ in range(30):
            p = int(rng.integers(2, 61))
            m = _random_symmetric(rng, p)
            values = sym_eigen(m, solver="jacobi").values
            np.testing.assert_allclose(values, np.linalg.eigvalsh(m)[::-1], atol=1e-10 * np.linalg.norm(m))

    def test_jacobi_negligible_off_diagonal(self):
        m = np.diag([3.0, 2.0, 1.0])
        m[0, 2] = m[2, 0] = 0.5
        m[0, 1] = m[1, 0] = 1e-310
        with np.errstate(over='raise', divide='raise', invalid='raise'):
            result = sym_eigen(m, solver="jacobi")
        np.testing.assert_allclose(result.values, np.linalg.eigvalsh(m)[::-1], atol=1e-12)
        assert orthonormality_error(result) <= 1e-12


class TestDualPath:

    def test_choose_path(self):
        assert choose_path(1000, 10) is EigenPath.DUAL
        assert choose_path(100, 50) is EigenPath.DIRECT
        assert choose_path(40, 10) is EigenPath.DIRECT

    def test_dual_equals_direct(self, rng):
        """Same nonzero spectrum and eigenvectors as the d x d path"""
        for _ in range(100):
            d = int(rng.integers(20, 51))
            n = int(rng.integers(4, 11))
            spectrum = np.ones(d)
            spectrum[:3] = [400.0, 100.0, 25.0]
            x = np.sqrt(spectrum)[:, None] * rng.standard_normal((d, n))

            direct = decompose(x, path=EigenPath.DIRECT)
            dual = decompose(x, path=EigenPath.DUAL)
            assert dual.path is EigenPath.DUAL
            assert dual.rank == n

            top = direct.values[:n]
            np.testing.assert_allclose(dual.values, top, rtol=1e-8, atol=1e-12 * top[0])
            for j in range(3):
                e = np.zeros(d)
                e[j] = 1.0
                np.testing.assert_allclose(abs_inner(dual.vectors[:, j], e),
                                           abs_inner(direct.vectors[:, j], e), atol=1e-8)
                np.testing.assert_allclose(abs(dual.vectors[:, j] @ direct.vectors[:, j]), 1.0, atol=1e-8)

    def test_dual_rank_deficient(self, rng):
        """Zero dual eigenvalues carry no vector"""
        x = rng.standard_normal((30, 2))
        x = np.hstack([x, x[:, :1]])
        result = dual_eigen(x)
        assert result.rank == 2
        assert result.values[2] == 0.0
        np.testing.assert_allclose(result.nonzero_values(), result.values[:2])

    def test_dual_rejects_nan(self):
        x = np.ones((5, 2))
        x[0, 0] = np.inf
        with pytest.raises(NonFinite):
            dual_eigen(x)

    def test_sample_cov_uses_n(self):
        x = np.array([[1.0, -1.0], [2.0, 0.0]])
        np.testing.assert_allclose(sample_cov(x).entries, [[1.0, 1.0], [1.0, 2.0]])

    def test_dual_split_sums_to_dual_matrix(self, rng):
        d, n, m = 40, 6, 2
        scores = rng.standard_normal((d, n))
        spectrum = np.ones(d)
        spectrum[:m] = [50.0, 20.0]
        x = np.sqrt(spectrum)[:, None] * scores
        a, b = dual_split(scores, spectrum, m)
        np.testing.assert_allclose((a + b).entries, x.T @ x / n, atol=1e-10)
        assert np.linalg.matrix_rank(a.entries) == m

    def test_dual_split_checks_shapes(self, rng):
        with pytest.raises(DimensionMismatch):
            dual_split(rng.standard_normal((5, 3)), np.ones(4), 1)


class TestWielandt:

    def test_random_pairs(self, rng):
        violations = 0
        for _ in range(100):
            p = int(rng.integers(1, 16))
            a = SymMatrix(_random_symmetric(rng, p))
            b = SymMatrix(_random_symmetric(rng, p))
            violations += sum(not check.holds for check in wielandt_check_all(a, b))
        assert violations == 0

    def test_diagonal_bounds(self):
        a = SymMatrix(np.diag([3.0, 1.0]))
        b = SymMatrix(np.diag([2.0, 0.0]))
        top = wielandt_check(a, b, 1)
        assert top.holds
        np.testing.assert_allclose(top.value, 5.0)
        np.testing.assert_allclose(top.upper, 5.0)
        np.testing.assert_allclose(top.lower, 3.0)

    def test_order_mismatch(self):
        with pytest.raises(DimensionMismatch):
            wielandt_check(SymMatrix(np.eye(2)), SymMatrix(np.eye(3)), 1)

    def test_index_out_of_range(self):
        with pytest.raises(DimensionMismatch):
            wielandt_check(SymMatrix(np.eye(2)), SymMatrix(np.eye(2)), 3)

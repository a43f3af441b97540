import numpy as np
import pytest

from toeplitz_unitary.linalg import haar_unitary, spectral_norm
from toeplitz_unitary.symbols import (
    MatrixSymbol,
    PolyMatrix,
    adjoint_symbol,
    bcl_symbol,
    is_inner,
    multiply,
    sup_norm_estimate,
)
from toeplitz_unitary.hardy import (
    HardyVector,
    LaurentVector,
    brown_halmos_check,
    brown_halmos_residual,
    laurent_apply_exact,
    laurent_window_matrix,
    toeplitz_apply_exact,
    toeplitz_window_matrix,
    truncate,
)

P = np.diag([1.0, 0.0])


def random_hardy(rng, dim, degree):
    return HardyVector(
        dim, rng.standard_normal((degree + 1, dim)) + 1j * rng.standard_normal((degree + 1, dim)))


class TestToeplitzApply:
    def test_shift_on_constant(self):
        h = HardyVector.constant([1.0, 2.0])
        out = toeplitz_apply_exact(MatrixSymbol.shift(2), h)
        np.testing.assert_allclose(out.coeffs, [[0, 0], [1, 2]])

    def test_adjoint_shift_kills_constants(self):
        h = HardyVector.constant([1.0, 2.0])
        sym = MatrixSymbol(2, 2, {-1: np.eye(2)})
        out = toeplitz_apply_exact(sym, h)
        assert out.norm() == 0.0

    def test_model_symbol_on_constant(self):
        h = HardyVector.constant([3.0, 4.0])
        out = toeplitz_apply_exact(bcl_symbol(np.eye(2), P), h)
        # P-complement part stays constant, P part moves up one degree
        np.testing.assert_allclose(out.coeffs, [[0, 4], [3, 0]])

    def test_matches_truncation_inside_window(self):
        rng = np.random.default_rng(0)
        coeffs = {k: rng.standard_normal((2, 2)) for k in (-1, 0, 1)}
        sym = MatrixSymbol(2, 2, coeffs)
        h = random_hardy(rng, 2, 3)
        out = toeplitz_apply_exact(sym, h)
        n = 3 + 1 + sym.band
        t = truncate(sym, n)
        flat = t.matrix @ np.concatenate([h.coeffs, np.zeros((n - 4, 2))]).ravel()
        np.testing.assert_allclose(out.coeffs[:n].ravel(), flat, atol=1e-13)

    def test_linearity(self):
        rng = np.random.default_rng(1)
        sym = MatrixSymbol(2, 2, {k: rng.standard_normal((2, 2)) for k in (-2, 0, 1)})
        g = random_hardy(rng, 2, 4)
        h = random_hardy(rng, 2, 4)
        alpha = 0.7 - 0.2j
        combined = HardyVector(2, alpha * g.coeffs + h.coeffs)
        lhs = toeplitz_apply_exact(sym, combined).coeffs
        rhs = alpha * toeplitz_apply_exact(sym, g).coeffs + toeplitz_apply_exact(sym, h).coeffs
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            toeplitz_apply_exact(MatrixSymbol.shift(2), HardyVector.constant([1.0]))


class TestLaurentApply:
    def test_constant_symbol(self):
        u = haar_unitary(2, np.random.default_rng(2))
        h = HardyVector(2, np.array([[1.0, 0.0], [0.0, 2.0]]))
        out = laurent_apply_exact(MatrixSymbol.constant(u), h)
        np.testing.assert_allclose(out.coeff(0), u @ [1.0, 0.0], atol=1e-14)
        np.testing.assert_allclose(out.coeff(1), u @ [0.0, 2.0], atol=1e-14)

    def test_down_shift_leaves_analytic(self):
        sym = MatrixSymbol(1, 1, {-1: [[1.0]]})
        out = laurent_apply_exact(sym, HardyVector.constant([1.0]))
        np.testing.assert_allclose(out.coeff(-1), [1.0])
        assert not out.is_analytic(1e-12)
        assert out.negative_part_norm() == 1.0

    def test_model_symbol_preserves_kernel_vectors(self):
        sym = bcl_symbol(np.eye(2), P)
        eta = HardyVector.constant([0.0, 1.0])  # P eta = 0
        out = laurent_apply_exact(sym, eta)
        assert out.is_analytic(0.0)
        np.testing.assert_allclose(out.analytic_part().coeffs[0], [0.0, 1.0])
        assert abs(out.norm() - eta.norm()) < 1e-15

    def test_norm_is_circle_average(self):
        # Parseval: coefficient norm of F h equals the L2 norm on the circle
        rng = np.random.default_rng(3)
        sym = MatrixSymbol(2, 2, {k: rng.standard_normal((2, 2)) * 0.5 for k in (-1, 0, 2)})
        h = random_hardy(rng, 2, 3)
        out = laurent_apply_exact(sym, h)
        from toeplitz_unitary.symbols import CircleGrid, eval_symbol

        grid = CircleGrid(64)
        total = 0.0
        hpoly = h.coeffs
        for t in grid.points:
            hval = sum(hpoly[k] * np.exp(1j * k * t) for k in range(hpoly.shape[0]))
            total += np.linalg.norm(eval_symbol(sym, t) @ hval) ** 2 / grid.size
        assert abs(np.sqrt(total) - out.norm()) < 1e-12


class TestTruncate:
    def test_constant_block_diagonal(self):
        u = haar_unitary(2, np.random.default_rng(4))
        t = truncate(MatrixSymbol.constant(u), 3)
        np.testing.assert_allclose(t.matrix, np.kron(np.eye(3), u), atol=1e-15)

    def test_shift_is_nilpotent_lower(self):
        t = truncate(MatrixSymbol.shift(1), 3)
        np.testing.assert_allclose(t.matrix, [[0, 0, 0], [1, 0, 0], [0, 1, 0]])

    def test_model_symbol_window_two(self):
        t = truncate(bcl_symbol(np.eye(2), P), 2)
        pp = np.eye(2) - P
        expected = np.block([[pp, np.zeros((2, 2))], [P, pp]])
        np.testing.assert_allclose(t.matrix, expected, atol=1e-15)

    def test_norm_bounded_by_symbol(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            sym = MatrixSymbol(
                2, 2, {k: rng.standard_normal((2, 2)) for k in range(-2, 3)})
            t = truncate(sym, 6)
            assert spectral_norm(t.matrix) <= sup_norm_estimate(sym) + 1e-9


class TestBrownHalmos:
    def test_truncations_satisfy_identity(self):
        rng = np.random.default_rng(6)
        for _ in range(5):
            sym = MatrixSymbol(
                2, 2, {k: rng.standard_normal((2, 2)) for k in range(-2, 3)})
            res, ok = brown_halmos_check(truncate(sym, 5))
            assert ok and res <= 1e-12

    def test_constant_symbol_exact(self):
        res, ok = brown_halmos_check(truncate(MatrixSymbol.constant(np.eye(2)), 4))
        assert res == 0.0 and ok

    def test_random_matrix_fails(self):
        rng = np.random.default_rng(7)
        m = rng.standard_normal((8, 8))
        assert brown_halmos_residual(m, 2) > 1e-6


class TestWindowMatrices:
    def test_window_matrix_matches_apply(self):
        rng = np.random.default_rng(8)
        sym = MatrixSymbol(2, 2, {k: rng.standard_normal((2, 2)) for k in (-1, 1)})
        h = random_hardy(rng, 2, 3)
        out = toeplitz_apply_exact(sym, h)
        m = toeplitz_window_matrix(sym, 4, 5)
        np.testing.assert_allclose(m @ h.coeffs.ravel(), out.coeffs.ravel(), atol=1e-13)

    def test_laurent_window_matrix_matches_apply(self):
        rng = np.random.default_rng(9)
        sym = MatrixSymbol(2, 2, {k: rng.standard_normal((2, 2)) for k in (-1, 0, 1)})
        h = random_hardy(rng, 2, 3)
        out = laurent_apply_exact(sym, h)
        m, offset = laurent_window_matrix(sym, 4)
        assert offset == -1
        np.testing.assert_allclose(m @ h.coeffs.ravel(), out.coeffs.ravel(), atol=1e-13)


class TestIsometryCharacterization:
    """Norm preservation on polynomial vectors versus innerness of the symbol."""

    def build_cases(self):
        rng = np.random.default_rng(10)
        inner = [
            MatrixSymbol.constant(haar_unitary(2, rng)),
            bcl_symbol(haar_unitary(2, rng), P),
            multiply(bcl_symbol(np.eye(2), P), bcl_symbol(haar_unitary(2, rng), np.eye(2) - P)),
        ]
        non_inner = [
            MatrixSymbol.constant(0.5 * np.eye(2)),
            MatrixSymbol(2, 2, {0: 0.9 * np.eye(2), 1: 0.05 * np.eye(2)}),
        ]
        return rng, inner, non_inner

    def preserves_norm(self, sym, rng, samples=100):
        worst = 0.0
        for _ in range(samples):
            h = random_hardy(rng, sym.dim_in, 8)
            worst = max(worst, abs(toeplitz_apply_exact(sym, h).norm() - h.norm()))
        return worst <= 1e-10

    def test_isometry_iff_inner(self):
        rng, inner, non_inner = self.build_cases()
        for sym in inner:
            assert is_inner(PolyMatrix.from_symbol(sym)).is_inner
            assert self.preserves_norm(sym, rng)
        for sym in non_inner:
            assert not is_inner(PolyMatrix.from_symbol(sym)).is_inner
            assert not self.preserves_norm(sym, rng)

    def test_two_sided_iff_constant_unitary(self):
        rng = np.random.default_rng(11)
        u = haar_unitary(2, rng)
        both_sided = [MatrixSymbol.constant(u)]
        one_sided = [MatrixSymbol.shift(2), bcl_symbol(np.eye(2), P)]
        for sym in both_sided:
            assert self.preserves_norm(sym, rng)
            assert self.preserves_norm(adjoint_symbol(sym), rng)
            assert sym.band == 0
        for sym in one_sided:
            assert self.preserves_norm(sym, rng)
            assert not self.preserves_norm(adjoint_symbol(sym), rng)

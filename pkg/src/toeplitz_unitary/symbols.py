"""Matrix-valued symbols on the unit circle and analytic matrix polynomials.

A symbol is a matrix-valued trigonometric (Laurent) polynomial

    F(e^{it}) = sum_k  A_k e^{ikt},      A_k complex dim_out x dim_in,

stored sparsely by integer Fourier index.  Analytic matrix polynomials
(nonnegative indices only) get their own type since they are evaluated on the
closed disc, not just on the circle.  Circle measure statements are tested on
uniform grids with a declared tolerance, never claimed almost-everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import DEFAULT_TOL, as_complex, spectral_norm

DEFAULT_GRID_SIZE = 512


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class MatrixSymbol:
    """Sparse Fourier-coefficient representation of a matrix trig polynomial.

    Parameters
    ----------
    dim_out, dim_in : int
        Codomain and domain dimensions of each coefficient matrix.
    coeffs : dict[int, array]
        Map from Fourier index k to the dim_out x dim_in coefficient.
        Absent keys mean zero; exact-zero coefficients are dropped.
    """

    dim_out: int
    dim_in: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.dim_out < 1 or self.dim_in < 1:
            raise ValueError("matrix symbol dimensions must be positive")
        clean = {}
        for k, mat in self.coeffs.items():
            mat = as_complex(mat)
            if mat.shape != (self.dim_out, self.dim_in):
                raise ValueError(
                    f"coefficient at k={k} has shape {mat.shape}, "
                    f"expected {(self.dim_out, self.dim_in)}"
                )
            if np.any(mat != 0):
                clean[int(k)] = _freeze(mat)
        object.__setattr__(self, "coeffs", clean)

    @property
    def band(self) -> int:
        """Smallest m with all coefficients supported in [-m, m]."""
        if not self.coeffs:
            return 0
        return max(abs(k) for k in self.coeffs)

    @property
    def is_square(self) -> bool:
        return self.dim_out == self.dim_in

    @property
    def is_analytic(self) -> bool:
        return all(k >= 0 for k in self.coeffs)

    def coeff(self, k: int) -> np.ndarray:
        """Fourier coefficient at index k (zero matrix when absent)."""
        got = self.coeffs.get(int(k))
        if got is None:
            return np.zeros((self.dim_out, self.dim_in), dtype=complex)
        return got

    @staticmethod
    def constant(mat) -> "MatrixSymbol":
        mat = as_complex(mat)
        return MatrixSymbol(mat.shape[0], mat.shape[1], {0: mat})

    @staticmethod
    def shift(dim: int) -> "MatrixSymbol":
        """The symbol e^{it} I, whose Toeplitz operator is the block shift."""
        return MatrixSymbol(dim, dim, {1: np.eye(dim)})

    @staticmethod
    def zero(dim_out: int, dim_in: int) -> "MatrixSymbol":
        return MatrixSymbol(dim_out, dim_in, {})

    def scale(self, c: complex) -> "MatrixSymbol":
        return MatrixSymbol(
            self.dim_out, self.dim_in, {k: c * m for k, m in self.coeffs.items()}
        )

    def add(self, other: "MatrixSymbol") -> "MatrixSymbol":
        if (self.dim_out, self.dim_in) != (other.dim_out, other.dim_in):
            raise ValueError("symbol shapes do not match")
        keys = set(self.coeffs) | set(other.coeffs)
        return MatrixSymbol(
            self.dim_out, self.dim_in, {k: self.coeff(k) + other.coeff(k) for k in keys}
        )


@dataclass(frozen=True, eq=False)
class PolyMatrix:
    """Analytic matrix polynomial P(z) = sum_k C_k z^k, possibly rectangular.

    ``coeffs`` lists C_0 .. C_degree; the leading coefficient is nonzero
    unless the polynomial is constant.
    """

    dim_out: int
    dim_in: int
    coeffs: tuple = ()

    def __post_init__(self):
        mats = [as_complex(c) for c in self.coeffs]
        if not mats:
            mats = [np.zeros((self.dim_out, self.dim_in), dtype=complex)]
        for c in mats:
            if c.shape != (self.dim_out, self.dim_in):
                raise ValueError("inconsistent polynomial coefficient shapes")
        while len(mats) > 1 and not np.any(mats[-1] != 0):
            mats.pop()
        object.__setattr__(self, "coeffs", tuple(_freeze(c) for c in mats))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def eval_at(self, z: complex) -> np.ndarray:
        """Evaluate at a point of the closed disc (Horner)."""
        acc = np.zeros((self.dim_out, self.dim_in), dtype=complex)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def as_symbol(self) -> MatrixSymbol:
        return MatrixSymbol(
            self.dim_out, self.dim_in, {k: c for k, c in enumerate(self.coeffs)}
        )

    @staticmethod
    def from_symbol(sym: MatrixSymbol) -> "PolyMatrix":
        if not sym.is_analytic:
            raise ValueError("symbol has negative Fourier coefficients")
        deg = max(sym.coeffs, default=0)
        return PolyMatrix(
            sym.dim_out, sym.dim_in, tuple(sym.coeff(k) for k in range(deg + 1))
        )

    @staticmethod
    def identity(dim: int) -> "PolyMatrix":
        return PolyMatrix(dim, dim, (np.eye(dim),))


@dataclass(frozen=True, eq=False)
class CircleGrid:
    """Uniform grid t_j = 2 pi j / size on [0, 2 pi), weight 1/size per point."""

    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("grid size must be positive")

    @property
    def points(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.size) / self.size

    @property
    def weight(self) -> float:
        return 1.0 / self.size


@dataclass(frozen=True, eq=False)
class GridMask:
    """Boolean flags over a circle grid with the induced measure estimate."""

    grid: CircleGrid
    flags: np.ndarray

    def __post_init__(self):
        flags = np.asarray(self.flags, dtype=bool)
        if flags.shape != (self.grid.size,):
            raise ValueError("flag vector does not match grid size")
        object.__setattr__(self, "flags", flags)

    @property
    def measure(self) -> float:
        return float(self.flags.mean())


@dataclass(frozen=True)
class InnerReport:
    """Residuals of the isometry identity P(e^{it})* P(e^{it}) = I.

    ``residual_grid`` is the grid maximum of the pointwise defect,
    ``residual_coeff`` the largest Fourier coefficient of P*P - I (an exact
    finite computation, equivalent to the grid identity for polynomials).
    """

    residual_grid: float
    residual_coeff: float
    tol: float

    @property
    def is_inner(self) -> bool:
        return self.residual_grid <= self.tol and self.residual_coeff <= self.tol


def eval_symbol(sym: MatrixSymbol, t: float) -> np.ndarray:
    """Evaluate the finite Fourier sum at angle ``t`` (radians)."""
    out = np.zeros((sym.dim_out, sym.dim_in), dtype=complex)
    for k, mat in sym.coeffs.items():
        out += mat * np.exp(1j * k * t)
    return out


def adjoint_symbol(sym: MatrixSymbol) -> MatrixSymbol:
    """Pointwise adjoint: coefficient at k becomes the adjoint of the one at -k."""
    return MatrixSymbol(
        sym.dim_in, sym.dim_out, {-k: mat.conj().T for k, mat in sym.coeffs.items()}
    )


def multiply(a: MatrixSymbol, b: MatrixSymbol) -> MatrixSymbol:
    """Pointwise product of symbols by exact coefficient convolution."""
    if a.dim_in != b.dim_out:
        raise ValueError(
            f"cannot multiply {a.dim_out}x{a.dim_in} by {b.dim_out}x{b.dim_in} symbols"
        )
    out: dict[int, np.ndarray] = {}
    for j, ma in a.coeffs.items():
        for k, mb in b.coeffs.items():
            idx = j + k
            cur = out.get(idx)
            out[idx] = ma @ mb if cur is None else cur + ma @ mb
    return MatrixSymbol(a.dim_out, b.dim_in, out)


def symbol_power(sym: MatrixSymbol, n: int) -> MatrixSymbol:
    """n-th pointwise power of a square symbol (n >= 0)."""
    if not sym.is_square:
        raise ValueError("powers need a square symbol")
    acc = MatrixSymbol.constant(np.eye(sym.dim_out))
    for _ in range(n):
        acc = multiply(acc, sym)
    return acc


def compose_scalar_polynomial(sym: MatrixSymbol, poly_coeffs) -> MatrixSymbol:
    """Exact symbol of u(F) = sum_j c_j F^j for a scalar polynomial u."""
    coeffs = np.atleast_1d(as_complex(poly_coeffs).ravel())
    acc = MatrixSymbol.zero(sym.dim_out, sym.dim_out)
    power = MatrixSymbol.constant(np.eye(sym.dim_out))
    for j, c in enumerate(coeffs):
        if c != 0:
            acc = acc.add(power.scale(c))
        if j < len(coeffs) - 1:
            power = multiply(power, sym)
    return acc


def is_inner(theta: PolyMatrix, grid: CircleGrid | None = None,
             tol: float = DEFAULT_TOL) -> InnerReport:
    """Check that an analytic matrix polynomial has isometric boundary values.

    Two routes are evaluated and both reported: the grid maximum of
    ``norm(theta* theta - I)`` and the exact Fourier coefficients of the trig
    polynomial theta* theta - I (all of them, not only the zeroth Gram sum;
    the off-diagonal coefficients are what rules out non-inner polynomials
    with an accidentally isometric coefficient Gram).
    """
    if theta.dim_out < theta.dim_in:
        raise ValueError("inner polynomials need dim_out >= dim_in")
    if grid is None:
        grid = CircleGrid(max(DEFAULT_GRID_SIZE, 2 * theta.degree + 1))
    sym = theta.as_symbol()
    eye = np.eye(theta.dim_in)

    residual_grid = 0.0
    for t in grid.points:
        v = eval_symbol(sym, t)
        residual_grid = max(residual_grid, spectral_norm(v.conj().T @ v - eye))

    prod = multiply(adjoint_symbol(sym), sym)
    residual_coeff = spectral_norm(prod.coeff(0) - eye)
    for k in prod.coeffs:
        if k != 0:
            residual_coeff = max(residual_coeff, spectral_norm(prod.coeff(k)))
    return InnerReport(residual_grid, residual_coeff, tol)


def pointwise_unitarity_mask(sym: MatrixSymbol, grid: CircleGrid,
                             tol: float = DEFAULT_TOL) -> GridMask:
    """Flag the grid points where the symbol value is unitary within ``tol``."""
    if not sym.is_square:
        raise ValueError("unitarity mask needs a square symbol")
    eye = np.eye(sym.dim_out)
    flags = np.zeros(grid.size, dtype=bool)
    for j, t in enumerate(grid.points):
        v = eval_symbol(sym, t)
        flags[j] = (
            spectral_norm(v.conj().T @ v - eye) <= tol
            and spectral_norm(v @ v.conj().T - eye) <= tol
        )
    return GridMask(grid, flags)


def sup_norm_estimate(sym: MatrixSymbol, grid: CircleGrid | None = None) -> float:
    """Grid maximum of the largest singular value.

    A lower bound on the true sup norm; exact up to grid resolution for the
    trigonometric polynomials in scope.
    """
    if grid is None:
        grid = CircleGrid(max(DEFAULT_GRID_SIZE, 2 * sym.band + 1))
    best = 0.0
    for t in grid.points:
        best = max(best, spectral_norm(eval_symbol(sym, t)))
    return best


def bcl_symbol(u, p) -> MatrixSymbol:
    """The model symbol U (e^{it} P + (I - P)) for a unitary U and projection P."""
    u = as_complex(u)
    p = as_complex(p)
    eye = np.eye(u.shape[0])
    return MatrixSymbol(u.shape[0], u.shape[0], {0: u @ (eye - p), 1: u @ p})


def block_diag_symbol(symbols: list[MatrixSymbol]) -> MatrixSymbol:
    """Direct sum of square symbols (block-diagonal coefficientwise)."""
    dims = [s.dim_out for s in symbols]
    for s in symbols:
        if not s.is_square:
            raise ValueError("direct sums take square symbols")
    total = sum(dims)
    keys = set()
    for s in symbols:
        keys |= set(s.coeffs)
    out = {}
    for k in keys:
        mat = np.zeros((total, total), dtype=complex)
        at = 0
        for s, d in zip(symbols, dims):
            mat[at:at + d, at:at + d] = s.coeff(k)
            at += d
        out[k] = mat
    return MatrixSymbol(total, total, out)

"""Phase-space quadratic forms, Gaussian Weyl symbols, and linear-canonical
bookkeeping.

Conventions: phase space is ordered (x_1..x_n, xi_1..xi_n); the symplectic
form is sigma(X, Y) = X . J Y with J = [[0, -I], [I, 0]]. A quadratic form
is q(Z) = (1/2) Z . H Z for a complex symmetric Hessian H, its fundamental
matrix is F = -(1/2) J H, and a Gaussian symbol is a(Z) = c exp(-(1/2) Z . A Z)
for a complex symmetric exponent A.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import TOL
from .errors import NotPositive, PoleAtGamma
from .linalg import sym_eig, symplectic_j


def _check_symmetric_complex(a: np.ndarray, what: str) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] % 2 != 0:
        raise ValueError(f"{what} must be a 2n x 2n matrix, got {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a))))
    if np.max(np.abs(a - a.T)) > TOL.symmetry * scale:
        raise ValueError(f"{what} must be symmetric within {TOL.symmetry:.0e}")
    return 0.5 * (a + a.T)


@dataclass
class QuadraticForm:
    """q(Z) = (1/2) Z . H Z on phase space of dimension 2n."""

    n: int
    hessian: np.ndarray

    def __post_init__(self):
        self.hessian = _check_symmetric_complex(self.hessian, "hessian")
        if self.hessian.shape[0] != 2 * self.n:
            raise ValueError(
                f"hessian is {self.hessian.shape[0]}x..., expected {2 * self.n}"
            )
        self.hessian.setflags(write=False)

    def __call__(self, z) -> complex:
        z = np.asarray(z, dtype=np.complex128)
        return complex(0.5 * z @ self.hessian @ z)


@dataclass
class GaussianSymbol:
    """a(Z) = c exp(-(1/2) Z . A Z) with complex symmetric exponent A.

    `integrable` (Re A positive definite) and `bounded` (Re A positive
    semidefinite) are fixed at construction; callers never re-derive them.
    """

    n: int
    prefactor: complex
    exponent: np.ndarray
    integrable: bool = field(init=False)
    bounded: bool = field(init=False)

    def __post_init__(self):
        self.prefactor = complex(self.prefactor)
        self.exponent = _check_symmetric_complex(self.exponent, "exponent")
        if self.exponent.shape[0] != 2 * self.n:
            raise ValueError(
                f"exponent is {self.exponent.shape[0]}x..., expected {2 * self.n}"
            )
        self.exponent.setflags(write=False)
        w, _ = sym_eig(self.exponent.real)
        band = TOL.psd_band * max(1.0, abs(w[-1]))
        self.integrable = bool(w[0] > band)
        self.bounded = bool(w[0] >= -band)

    def __call__(self, z) -> complex:
        z = np.asarray(z, dtype=np.complex128)
        return complex(self.prefactor * np.exp(-0.5 * z @ self.exponent @ z))


@dataclass
class CanonicalMap2x2:
    """Entries (a, b; c, d) of the inverse canonical map K^{-1} in dimension
    one, normalized by det = ad - bc = 1. Complex entries are allowed (the
    Bargmann map needs them)."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > TOL.symmetry * 10:
            raise ValueError(f"canonical map must have det 1, got {det}")

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=np.complex128)


def davies_form(theta: float) -> QuadraticForm:
    """Symbol of the Davies oscillator: e^{i theta} x^2 + e^{-i theta} xi^2."""
    h = np.diag([2 * np.exp(1j * theta), 2 * np.exp(-1j * theta)])
    return QuadraticForm(1, h)


def quad_form_1d(a: complex, b: complex, c: complex) -> QuadraticForm:
    """One-dimensional form a x^2 + 2 b x xi + c xi^2."""
    h = np.array([[2 * a, 2 * b], [2 * b, 2 * c]], dtype=np.complex128)
    return QuadraticForm(1, h)


def supersymmetric_form(m) -> QuadraticForm:
    """The form (1/2) M(xi + i x) . (xi - i x) built from an n x n matrix M.

    Its Hessian blocks are H_xx = H_xixi = sym(M) and
    H_{x xi} = (i/2)(M^T - M).
    """
    mm = np.asarray(m, dtype=np.complex128)
    if mm.ndim != 2 or mm.shape[0] != mm.shape[1]:
        raise ValueError("M must be square")
    n = mm.shape[0]
    s = 0.5 * (mm + mm.T)
    cross = 0.5j * (mm.T - mm)
    h = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    h[:n, :n] = s
    h[n:, n:] = s
    h[:n, n:] = cross
    h[n:, :n] = cross.T
    return QuadraticForm(n, h)


def fundamental_matrix(q: QuadraticForm) -> np.ndarray:
    """F = -(1/2) J H, the sigma-antisymmetric matrix with q(Z) = sigma(Z, FZ)."""
    j = symplectic_j(q.n)
    return -0.5 * j @ q.hessian


def is_elliptic(q: QuadraticForm) -> bool:
    """True iff Re q is positive definite (min eig of Re H above band)."""
    w, _ = sym_eig(q.hessian.real)
    return bool(w[0] > TOL.elliptic_band * max(abs(w[-1]), 1e-300))


def ho_reduce_1d(q: QuadraticForm) -> tuple[float, complex]:
    """Harmonic-oscillator reduction of a real positive definite 1D form.

    For q = a x^2 + 2 b x xi + c xi^2, returns (sqrt(delta), gamma) with
    delta = ac - b^2 and gamma = (sqrt(delta) + i b)/c, so that
    q = (sqrt(delta)/Re gamma) |xi - i gamma x|^2 and the Gaussian
    exp(-gamma x^2 / 2) is the ground state with eigenvalue sqrt(delta).
    """
    if q.n != 1:
        raise ValueError("reduction is one-dimensional")
    h = q.hessian
    if np.max(np.abs(h.imag)) > TOL.symmetry * max(1.0, np.max(np.abs(h))):
        raise NotPositive("Hessian must be real")
    w, _ = sym_eig(h.real)
    if w[0] <= 0.0:
        raise NotPositive(f"form is not positive definite (min eig {w[0]:.3e})")
    a = h[0, 0].real / 2.0
    b = h[0, 1].real / 2.0
    c = h[1, 1].real / 2.0
    delta = a * c - b * b
    sqrt_delta = float(np.sqrt(delta))
    gamma = (sqrt_delta + 1j * b) / c
    return sqrt_delta, complex(gamma)


def adjoint_symbol(g: GaussianSymbol) -> GaussianSymbol:
    """Symbol of the adjoint operator: entrywise complex conjugate."""
    return GaussianSymbol(g.n, np.conj(g.prefactor), np.conj(g.exponent))


def mobius_transport(k: CanonicalMap2x2, gamma: complex) -> complex:
    """Transport of the Gaussian parameter gamma under a canonical map:
    L(gamma) = (i c + gamma a) / (d - i gamma b).

    For real canonical maps this is an automorphism of {Re gamma > 0}.
    """
    gamma = complex(gamma)
    denom = k.d - 1j * gamma * k.b
    if abs(denom) < TOL.pivot_singular:
        raise PoleAtGamma(f"denominator {denom} at gamma = {gamma}")
    return complex((1j * k.c + gamma * k.a) / denom)


def bargmann_map(theta: float = 0.0) -> CanonicalMap2x2:
    """Canonical map of the scaled Bargmann transform; at theta = 0 its
    Moebius action on gamma is the Cayley transform (gamma-1)/(gamma+1)."""
    s = 1.0 / np.sqrt(2.0)
    return CanonicalMap2x2(
        a=s, b=1j * s * np.exp(1j * theta), c=1j * s * np.exp(-1j * theta), d=s
    )

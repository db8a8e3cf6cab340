"""Independent brute-force verification: Weyl symbol -> integral kernel in
closed form, kernel composition, grid/Galerkin operator-norm estimation, and
weighted-Fock-space quadrature with a Gaussian-scan maximizer.

Nothing here consults the closed-form norm results; these routines exist to
check them. The only shared machinery is the linear algebra layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import TOL
from .errors import (
    DimensionMismatch,
    Divergent,
    GridTooCoarse,
    InternalContractViolation,
    NonIntegrableComposition,
    NonIntegrableFiber,
    QuadratureOverflow,
)
from .linalg import spectral_norm, sym_eig
from .mehler import mehler_symbol
from .norms import HolomorphicWeight
from .symbols import GaussianSymbol

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass
class GaussianKernel:
    """Two-point kernel K(x, y) = prefactor * exp(-(1/2) (x,y) . E (x,y))
    with complex symmetric E over the 2n variables (x, y). The diagonal
    blocks of Re E must be positive definite (integrability in each
    variable)."""

    n: int
    prefactor: complex
    exponent: np.ndarray

    def __post_init__(self):
        self.prefactor = complex(self.prefactor)
        e = np.asarray(self.exponent, dtype=np.complex128)
        if e.shape != (2 * self.n, 2 * self.n):
            raise ValueError(f"exponent must be {2 * self.n} square, got {e.shape}")
        scale = max(1.0, float(np.max(np.abs(e))))
        if np.max(np.abs(e - e.T)) > 100 * TOL.symmetry * scale:
            raise ValueError("kernel exponent must be symmetric")
        self.exponent = 0.5 * (e + e.T)
        self.exponent.setflags(write=False)
        n = self.n
        for block in (self.exponent[:n, :n], self.exponent[n:, n:]):
            w, _ = sym_eig(block.real)
            if w[0] <= 0.0:
                raise ValueError("kernel must decay in each variable separately")

    def __call__(self, x, y) -> complex:
        v = np.concatenate([np.atleast_1d(x), np.atleast_1d(y)]).astype(np.complex128)
        return complex(self.prefactor * np.exp(-0.5 * v @ self.exponent @ v))


@dataclass
class GaussianState:
    """Normalized Gaussian u_gamma(x) = (pi / Re gamma)^{-1/4} e^{-gamma x^2 / 2}
    for Re gamma > 0."""

    gamma: complex

    def __post_init__(self):
        self.gamma = complex(self.gamma)
        if not self.gamma.real > 0:
            raise ValueError("GaussianState needs Re gamma > 0")

    def value(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        c = (math.pi / self.gamma.real) ** -0.25
        return c * np.exp(-0.5 * self.gamma * x * x)


def gaussian_integral_factor(sigma: np.ndarray) -> complex:
    """Value of the d-dimensional integral of exp(-(1/2) v . sigma v) for a
    complex symmetric sigma with positive definite real part:

        (2 pi)^{d/2} (det R)^{-1/2} prod_j (1 + i w_j)^{-1/2},

    where R = Re sigma and w_j are the eigenvalues of R^{-1/2} Im(sigma)
    R^{-1/2}. The per-factor principal roots realize the analytic
    continuation from real positive definite sigma.
    """
    sigma = np.asarray(sigma, dtype=np.complex128)
    d = sigma.shape[0]
    wr, vr = sym_eig(sigma.real)
    if wr[0] <= 0.0:
        raise ValueError("Re sigma must be positive definite")
    r_inv_half = (vr / np.sqrt(wr)) @ vr.T
    wmat = r_inv_half @ sigma.imag @ r_inv_half
    wi, _ = sym_eig(0.5 * (wmat + wmat.T))
    det_r = float(np.prod(wr))
    return complex(
        (2.0 * math.pi) ** (0.5 * d)
        * det_r ** -0.5
        * np.prod((1.0 + 1j * wi) ** -0.5)
    )


def kernel_from_weyl(g: GaussianSymbol) -> GaussianKernel:
    """Integral kernel of the Weyl quantization of a Gaussian symbol,

        K(x, y) = (2 pi)^{-n} int e^{i (x - y) . xi} a((x+y)/2, xi) d xi,

    with the xi integral evaluated in closed form."""
    n = g.n
    a = g.exponent
    axx = a[:n, :n]
    axk = a[:n, n:]
    akk = a[n:, n:]
    wk, _ = sym_eig(akk.real)
    if wk[0] <= 0.0:
        raise NonIntegrableFiber(
            "xi-block of the exponent has no positive definite real part"
        )

    akk_inv = np.linalg.inv(akk)
    m1 = axx - axk @ akk_inv @ axk.T
    m3 = akk_inv @ axk.T

    eye = np.eye(n)
    s_mean = 0.5 * np.hstack([eye, eye])       # m = (x + y)/2
    s_diff = np.hstack([eye, -eye])            # d = x - y
    raw = (
        s_mean.T @ m1 @ s_mean
        + s_diff.T @ akk_inv @ s_diff
        + 2j * s_diff.T @ m3 @ s_mean
    )
    exponent = 0.5 * (raw + raw.T)
    prefactor = (
        g.prefactor * (2.0 * math.pi) ** -n * gaussian_integral_factor(akk)
    )
    return GaussianKernel(n=n, prefactor=prefactor, exponent=exponent)


def compose_kernels(k1: GaussianKernel, k2: GaussianKernel) -> GaussianKernel:
    """Kernel of the operator composition, int K1(x, w) K2(w, y) dw, as a
    closed-form Gaussian integral over the shared variable."""
    if k1.n != k2.n:
        raise DimensionMismatch(f"n = {k1.n} vs n = {k2.n}")
    n = k1.n
    e1 = k1.exponent
    e2 = k2.exponent
    sigma_w = e1[n:, n:] + e2[:n, :n]
    wr, _ = sym_eig(sigma_w.real)
    if wr[0] <= 0.0:
        raise NonIntegrableComposition(
            "shared-variable block has no positive definite real part"
        )
    # linear coefficient of w: b = -(E1_wx x + E2_wy y)
    bmat = -np.hstack([e1[n:, :n], e2[:n, n:]])
    block = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    block[:n, :n] = e1[:n, :n]
    block[n:, n:] = e2[n:, n:]
    raw = block - bmat.T @ np.linalg.solve(sigma_w, bmat)
    exponent = 0.5 * (raw + raw.T)
    prefactor = k1.prefactor * k2.prefactor * gaussian_integral_factor(sigma_w)
    return GaussianKernel(n=n, prefactor=prefactor, exponent=exponent)


# --- grid discretization oracle ---------------------------------------------

@dataclass
class KernelSVDReport:
    norm: float
    singular_values: np.ndarray


def _trapezoid_axis(half_width: float, points: int) -> tuple[np.ndarray, np.ndarray]:
    x = np.linspace(-half_width, half_width, points)
    h = x[1] - x[0]
    w = np.full(points, h)
    w[0] = w[-1] = 0.5 * h
    return x, w


def _kernel_matrix(kernel: GaussianKernel, x_flat: np.ndarray,
                   w_flat: np.ndarray) -> np.ndarray:
    """sqrt(w_i) K(X_i, X_j) sqrt(w_j) on a flattened grid."""
    n = kernel.n
    e = kernel.exponent
    exx = e[:n, :n]
    exy = e[:n, n:]
    eyy = e[n:, n:]
    qx = np.einsum("pi,ij,pj->p", x_flat, exx, x_flat)
    qy = np.einsum("pi,ij,pj->p", x_flat, eyy, x_flat)
    cross = (x_flat @ exy) @ x_flat.T
    expo = -0.5 * (qx[:, None] + qy[None, :]) - cross
    sw = np.sqrt(w_flat)
    return kernel.prefactor * np.exp(expo) * sw[:, None] * sw[None, :]


def _top_singular_values(m: np.ndarray, count: int, rel_tol: float = 1e-12,
                         max_iter: int = TOL.power_max_iter) -> np.ndarray:
    """Leading singular values of m by power iteration on m* m with implicit
    matvecs, deflating by projection onto the singular vectors found."""
    mh = m.conj().T
    rng = np.random.default_rng(0xACE)
    found: list[np.ndarray] = []
    out = []
    for _ in range(count):
        v = rng.standard_normal(m.shape[1]) + 1j * rng.standard_normal(m.shape[1])
        for u in found:
            v -= u * np.vdot(u, v)
        v /= np.linalg.norm(v)
        lam = 0.0
        for _ in range(max_iter):
            w = mh @ (m @ v)
            for u in found:
                w -= u * np.vdot(u, w)
            nw = np.linalg.norm(w)
            if nw == 0.0:
                lam = 0.0
                break
            lam_new = float(np.real(np.vdot(v, w)))
            v = w / nw
            if abs(lam_new - lam) <= rel_tol * max(abs(lam_new), 1e-300):
                lam = lam_new
                break
            lam = lam_new
        found.append(v)
        out.append(max(lam, 0.0))
    return np.sqrt(np.asarray(out))


def kernel_svd_norm(kernel: GaussianKernel, half_width: float = 8.0,
                    points: int = 400, num_values: int = 1,
                    check_tol: float | None = None) -> KernelSVDReport:
    """Operator norm (and leading singular values) of an integral kernel by
    trapezoid discretization and power iteration on M* M.

    With check_tol set, the grid is doubled once and GridTooCoarse is raised
    if the norm moves by more than check_tol (relative)."""
    n = kernel.n
    x, w = _trapezoid_axis(half_width, points)
    if n == 1:
        x_flat = x[:, None]
        w_flat = w
    else:
        grids = np.meshgrid(*([x] * n), indexing="ij")
        x_flat = np.stack([gg.ravel() for gg in grids], axis=1)
        w_parts = np.meshgrid(*([w] * n), indexing="ij")
        w_flat = np.prod(np.stack([ww.ravel() for ww in w_parts], axis=1), axis=1)

    m = _kernel_matrix(kernel, x_flat, w_flat)
    svals = _top_singular_values(m, num_values)
    report = KernelSVDReport(norm=float(svals[0]), singular_values=svals)

    if check_tol is not None:
        finer = kernel_svd_norm(kernel, half_width=half_width,
                                points=2 * points, num_values=1)
        if abs(finer.norm - report.norm) > check_tol * max(finer.norm, 1e-300):
            raise GridTooCoarse(
                f"norm moved from {report.norm:.12e} to {finer.norm:.12e} "
                f"on grid doubling"
            )
    return report


def auto_grid(kernel: GaussianKernel, decay: float = 38.0,
              min_points: int = 400) -> tuple[float, int]:
    """Suggest (half_width, points) so the kernel decays below e^{-decay} at
    the window edge and the grid resolves the phase oscillation."""
    w, _ = sym_eig(kernel.exponent.real)
    lam_min = max(w[0], 1e-4)
    half_width = min(max(8.0, math.sqrt(2.0 * decay / lam_min)), 50.0)
    emax = float(np.max(np.abs(kernel.exponent)))
    # phase gradient at the window edge is about emax * half_width
    points_osc = int(3.0 * emax * half_width * half_width / math.pi)
    points = min(max(min_points, 25 * int(half_width), points_osc), 2400)
    return half_width, points


# --- Hermite-Galerkin oracle -------------------------------------------------

def hermite_functions(count: int, x: np.ndarray) -> np.ndarray:
    """Orthonormal Hermite functions h_0 .. h_{count-1} evaluated at x,
    by the stable three-term recurrence. Shape (count, len(x))."""
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros((count, x.size))
    out[0] = math.pi ** -0.25 * np.exp(-0.5 * x * x)
    if count > 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for k in range(1, count - 1):
        out[k + 1] = (
            math.sqrt(2.0 / (k + 1)) * x * out[k]
            - math.sqrt(k / (k + 1.0)) * out[k - 1]
        )
    return out


def _gh_weighted_hermites(n_basis: int, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Hermite nodes plus Hermite-function rows pre-multiplied by the
    e^{x^2}-compensated weights."""
    if order > 300:
        raise QuadratureOverflow("Gauss-Hermite order beyond double-precision range")
    t, w = np.polynomial.hermite.hermgauss(order)
    if np.any(w <= 0.0):
        raise QuadratureOverflow("Gauss-Hermite weights underflowed")
    w_comp = np.exp(np.log(w) + t * t)
    h = hermite_functions(n_basis, t)
    return t, h * w_comp[None, :]


def hermite_galerkin_matrix(kernel: GaussianKernel, n_basis: int,
                            quad_order: int | None = None) -> np.ndarray:
    """Matrix of the kernel operator in the (tensor) Hermite basis, by
    Gauss-Hermite quadrature. For n = 2 the basis index is k1 * n_basis + k2
    and the returned matrix is n_basis^2 square."""
    n = kernel.n
    order = quad_order if quad_order is not None else 2 * n_basis
    t, hw = _gh_weighted_hermites(n_basis, order)
    e = kernel.exponent

    if n == 1:
        v = t[:, None]
        kmat = kernel.prefactor * np.exp(
            -0.5 * (
                np.einsum("pi,ij,pj->p", v, e[:1, :1], v)[:, None]
                + np.einsum("pi,ij,pj->p", v, e[1:, 1:], v)[None, :]
            )
            - (v @ e[:1, 1:]) @ v.T
        )
        return hw @ kmat @ hw.T

    if n != 2:
        raise ValueError("Galerkin oracle implemented for n in {1, 2}")

    g1, g2 = np.meshgrid(t, t, indexing="ij")
    xg = np.stack([g1.ravel(), g2.ravel()], axis=1)
    p = xg.shape[0]
    exx, exy, eyy = e[:2, :2], e[:2, 2:], e[2:, 2:]
    ex = -0.5 * np.einsum("pi,ij,pj->p", xg, exx, xg)
    ey = -0.5 * np.einsum("pi,ij,pj->p", xg, eyy, xg)
    u = xg @ exy

    nb = n_basis
    c = np.zeros((nb, nb, p), dtype=np.complex128)
    chunk = max(1, (1 << 22) // p)
    for lo in range(0, p, chunk):
        hi = min(lo + chunk, p)
        block = np.exp(ex[:, None] - u @ xg[lo:hi].T + ey[None, lo:hi])
        block = block.reshape(order, order, hi - lo)
        t1 = np.tensordot(hw, block, axes=(1, 0))       # (nb, order, c)
        c[:, :, lo:hi] = np.tensordot(hw, t1, axes=(1, 1)).transpose(1, 0, 2)
    c4 = c.reshape(nb, nb, order, order)
    t2 = np.tensordot(c4, hw, axes=(2, 1))              # (j1, j2, q2, k1)
    m4 = np.tensordot(t2, hw, axes=(2, 1))              # (j1, j2, k1, k2)
    m4 = m4 * kernel.prefactor
    return m4.reshape(nb * nb, nb * nb)


def hermite_galerkin_norm(q, t: float, n_basis: int,
                          quad_order: int | None = None) -> float:
    """Spectral norm of the Hermite-Galerkin truncation of e^{-t q^w}."""
    kernel = kernel_from_weyl(mehler_symbol(q, t))
    mat = hermite_galerkin_matrix(kernel, n_basis, quad_order=quad_order)
    return spectral_norm(mat)


# --- weighted Fock-space quadrature ------------------------------------------

@dataclass
class FockNorm:
    """Quadrature value of || e^{-gamma z^2 / 2} ||_{H_Phi} together with the
    closed form sqrt(pi) / (4 alpha^2 - |gamma + 2 beta|^2)^{1/4}."""

    value: float
    closed_form: float


def fock_norm_quadrature(gamma: complex, w: HolomorphicWeight,
                         half_width: float | None = None,
                         points: int = 400) -> FockNorm:
    """Norm of the unnormalized Gaussian e^{-gamma z^2 / 2} in H_Phi by 2D
    tensor trapezoid quadrature of |e^{-gamma z^2}| e^{-2 Phi(z)}."""
    gamma = complex(gamma)
    c = gamma + 2.0 * w.beta
    alpha = w.alpha
    qm = np.array([
        [2.0 * alpha + c.real, -c.imag],
        [-c.imag, 2.0 * alpha - c.real],
    ])
    wq, _ = sym_eig(qm)
    if wq[0] <= 0.0:
        raise Divergent(
            f"total quadratic exponent not negative definite "
            f"(alpha = {alpha}, |gamma + 2 beta| = {abs(c)})"
        )
    closed = math.sqrt(math.pi) / (4.0 * alpha * alpha - abs(c) ** 2) ** 0.25

    if half_width is None:
        half_width = math.sqrt(80.0 / wq[0])
    x, wx = _trapezoid_axis(half_width, points)
    xx, yy = np.meshgrid(x, x, indexing="ij")
    expo = -(qm[0, 0] * xx * xx + 2.0 * qm[0, 1] * xx * yy + qm[1, 1] * yy * yy)
    integral = float(np.einsum("i,ij,j->", wx, np.exp(expo), wx))
    return FockNorm(value=math.sqrt(integral), closed_form=closed)


# --- Gaussian scan for embedding norms ---------------------------------------

@dataclass
class ScanResult:
    gamma_star: float
    norm: float
    grid_max_gamma: complex
    grid_max_value: float


def _embedding_ratio4(a: float, b: float, gamma: complex) -> float:
    return (1.0 - abs(gamma) ** 2) / (a * a - abs(b - gamma) ** 2)


def _golden_max(f, lo: float, hi: float, xtol: float = 1e-12) -> float:
    c = hi - GOLDEN * (hi - lo)
    d = lo + GOLDEN * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > xtol:
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - GOLDEN * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + GOLDEN * (hi - lo)
            fd = f(d)
    return 0.5 * (lo + hi)


def gaussian_scan_embedding(a: float, b: float) -> ScanResult:
    """Embedding norm by maximizing the Gaussian-family ratio
    ((1 - |gamma|^2) / (a^2 - |b - gamma|^2))^{1/4}: a coarse 41 x 41 scan
    over the disk confirms the maximum sits on the real axis, then a
    golden-section search on (-1, 1) locates it."""
    a = float(a)
    b = float(b)
    if a - b < 1.0 - 1e-12:
        raise ValueError("scan requires a - b >= 1")

    side = np.linspace(-1.0, 1.0, 41)
    grid_best_val = -np.inf
    grid_best_gamma = 0.0 + 0.0j
    for gi in side:
        for gr in side:
            gamma = complex(gr, gi)
            if abs(gamma) >= 1.0 - 1e-12:
                continue
            val = _embedding_ratio4(a, b, gamma)
            if val > grid_best_val:
                grid_best_val = val
                grid_best_gamma = gamma

    eps = 1e-9
    gamma_star = _golden_max(
        lambda g: _embedding_ratio4(a, b, g), -1.0 + eps, 1.0 - eps
    )
    best = _embedding_ratio4(a, b, gamma_star)
    if grid_best_val > best + 1e-8:
        raise InternalContractViolation(
            f"complex-grid maximum {grid_best_val:.3e} at {grid_best_gamma} "
            f"exceeds the real-axis maximum {best:.3e}"
        )
    return ScanResult(
        gamma_star=float(gamma_star),
        norm=float(best ** 0.25),
        grid_max_gamma=grid_best_gamma,
        grid_max_value=float(grid_best_val ** 0.25),
    )

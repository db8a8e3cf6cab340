"""Dense complex/real matrix primitives sized for phase-space dimensions.

Everything here is a pure function of its inputs. Factorizations are backed
by LAPACK through numpy/scipy (LU with partial pivoting, symmetric
eigendecomposition, Pade-13 scaling-and-squaring for the exponential); the
singularity and symmetry contracts are enforced in front of them. The
spectral norm is a power iteration on m*m, and symplectic eigenvalues are
computed through K^T K with K = b^{1/2} J b^{1/2}, so only real symmetric
eigendecompositions are ever required.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .config import TOL
from .errors import (
    NoConvergence,
    NotPositiveDefinite,
    NotSymmetric,
    SingularCosine,
    SingularMatrix,
)


def _as_square(m) -> np.ndarray:
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix entries must be finite")
    return a.astype(np.complex128, copy=False)


def symplectic_j(n: int) -> np.ndarray:
    """Standard symplectic matrix [[0, -I], [I, 0]] in (x, xi) order."""
    if n < 1:
        raise ValueError("n must be positive")
    j = np.zeros((2 * n, 2 * n))
    j[:n, n:] = -np.eye(n)
    j[n:, :n] = np.eye(n)
    return j


def determinant(m) -> complex:
    """Determinant via LU with partial pivoting. Returns 0 for singular."""
    a = _as_square(m)
    return complex(np.linalg.det(a))


def solve(m, rhs) -> np.ndarray:
    """Solve m x = rhs, raising SingularMatrix on a sub-threshold pivot."""
    a = _as_square(m)
    b = np.asarray(rhs, dtype=np.complex128)
    lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    pivots = np.abs(np.diag(lu))
    scale = np.max(np.abs(a))
    if scale == 0.0 or np.min(pivots) < TOL.pivot_singular * scale:
        raise SingularMatrix(
            f"pivot {np.min(pivots):.3e} below {TOL.pivot_singular:.0e} * max entry"
        )
    return scipy.linalg.lu_solve((lu, piv), b, check_finite=False)


def sym_eig(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a real symmetric matrix.

    Returns (eigenvalues ascending, orthogonal eigenvectors as columns),
    with m = V diag(w) V^T.
    """
    a = np.asarray(m)
    if np.iscomplexobj(a):
        if np.max(np.abs(a.imag)) > TOL.symmetry * max(1.0, np.max(np.abs(a))):
            raise NotSymmetric("matrix has a nontrivial imaginary part")
        a = a.real
    a = a.astype(np.float64, copy=False)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, np.max(np.abs(a)))
    if np.max(np.abs(a - a.T)) > TOL.symmetry * scale:
        raise NotSymmetric("matrix is not symmetric within tolerance")
    w, v = np.linalg.eigh(0.5 * (a + a.T))
    return w, v


def mat_exp(m) -> np.ndarray:
    """Matrix exponential (scaling-and-squaring, diagonal Pade order 13)."""
    a = _as_square(m)
    return scipy.linalg.expm(a)


def mat_trig(f) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """cos f, sin f, and tan f = sin f (cos f)^{-1} of a square matrix.

    Raises SingularCosine when cos f fails the solve pivot test, which is
    the signature of a semigroup at an exceptional time.
    """
    a = _as_square(f)
    ep = mat_exp(1j * a)
    em = mat_exp(-1j * a)
    cos_f = 0.5 * (ep + em)
    sin_f = (ep - em) / 2j
    try:
        # tan f = sin f (cos f)^{-1}: solve cos^T X^T = sin^T
        tan_f = solve(cos_f.T, sin_f.T).T
    except SingularMatrix as exc:
        raise SingularCosine(f"cos f is singular: {exc}") from exc
    return cos_f, sin_f, tan_f


def spectral_norm(m, rel_tol: float = TOL.power_rel,
                  max_iter: int = TOL.power_max_iter) -> float:
    """Largest singular value by power iteration on m* m."""
    a = _as_square(m)
    n = a.shape[0]
    rng = np.random.default_rng(0x5EED)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    ah = a.conj().T
    lam = 0.0
    for _ in range(max_iter):
        w = ah @ (a @ v)
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        lam_new = float(np.real(np.vdot(v, w)))
        v = w / nw
        if abs(lam_new - lam) <= rel_tol * max(lam_new, 1e-300):
            return float(np.sqrt(max(lam_new, 0.0)))
        lam = lam_new
    raise NoConvergence(
        f"power iteration did not reach rel tol {rel_tol:.0e} in {max_iter} steps",
        best_estimate=float(np.sqrt(max(lam, 0.0))),
    )


def symplectic_eigenvalues(b) -> np.ndarray:
    """Symplectic (Williamson) eigenvalues of a real symmetric positive
    definite 2n x 2n matrix, ascending.

    These are the positive reals s_j with Spec(J b) = {+-i s_j}, computed
    through K = b^{1/2} J b^{1/2}: the eigenvalues of K^T K = -K^2 are the
    s_j^2, each twice.
    """
    w, v = sym_eig(b)
    if w[0] <= TOL.psd_band * max(w[-1], 0.0) or w[-1] <= 0.0:
        raise NotPositiveDefinite(
            f"min eigenvalue {w[0]:.3e} vs max {w[-1]:.3e}"
        )
    dim = b.shape[0] if hasattr(b, "shape") else len(b)
    if dim % 2 != 0:
        raise ValueError("symplectic eigenvalues need even dimension")
    n = dim // 2
    sqrt_b = (v * np.sqrt(w)) @ v.T
    k = sqrt_b @ symplectic_j(n) @ sqrt_b
    s2, _ = sym_eig(k.T @ k)
    s = np.sqrt(np.maximum(s2, 0.0))
    # eigenvalues of K^T K come in +- pairs; keep one of each
    s_sorted = np.sort(s)
    pairs = s_sorted.reshape(n, 2)
    if np.max(np.abs(pairs[:, 0] - pairs[:, 1])) > 1e-8 * max(1.0, s_sorted[-1]):
        raise NotPositiveDefinite("symplectic spectrum did not pair up")
    out = pairs.mean(axis=1)
    det_b = np.prod(w)
    prod_s2 = np.prod(out**2)
    if abs(prod_s2 - det_b) > 1e-9 * abs(det_b):
        raise NotPositiveDefinite(
            f"prod s_j^2 = {prod_s2:.12e} disagrees with det b = {det_b:.12e}"
        )
    return out


def tracked_inv_sqrt(path, steps: int = TOL.branch_steps,
                     max_steps: int = 1 << 16) -> complex:
    """path(1)^{-1/2} with the branch fixed by continuity from path(0) > 0.

    `path` maps s in [0, 1] to a nonvanishing complex number with path(0)
    on the positive real axis. The argument is accumulated along sampled
    increments; sampling doubles until no increment exceeds a quarter turn.
    """
    while True:
        s = np.linspace(0.0, 1.0, steps + 1)
        vals = np.asarray([complex(path(si)) for si in s])
        if np.any(vals == 0.0):
            raise SingularCosine("branch path passes through zero")
        inc = np.angle(vals[1:] / vals[:-1])
        if np.max(np.abs(inc)) < 0.5 * np.pi:
            break
        steps *= 2
        if steps > max_steps:
            raise ValueError("branch tracking failed to resolve the path")
    total_arg = np.angle(vals[0]) + float(np.sum(inc))
    return complex(np.abs(vals[-1]) ** -0.5 * np.exp(-0.5j * total_arg))

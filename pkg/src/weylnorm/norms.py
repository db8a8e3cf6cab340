"""Closed-form operator norms: the Davies semigroup norm and singular-value
law, Fock-space embedding norms, the general n-dimensional Gaussian-symbol
norm, the elliptic-semigroup pipeline, and the supersymmetric special case.

The Davies norm at a bounded complex time t is

    norm = (sqrt(1 + A) + sqrt(A))^{-1/2},
    A = (1/2) |sinh 2t|^2 (cos 2 theta + cos 2 phi),  phi = arg tanh t,

with unitary behavior at t in (i pi / 2) Z. The singular values follow the
geometric law s_k = (sqrt(1+A) + sqrt(A))^{-(k + 1/2)}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import TOL
from .errors import (
    InternalContractViolation,
    NotIntegrable,
    NotOscillatorType,
    NotPlurisubharmonic,
    NotPositiveDefinite,
    Unbounded,
)
from .linalg import (
    determinant,
    mat_exp,
    spectral_norm,
    symplectic_eigenvalues,
    symplectic_j,
)
from .mehler import mehler_symbol, region_report
from .sharp import sharp_intermediates
from .symbols import GaussianSymbol, QuadraticForm

# band around a - b = 1 (and around the heat-type angle condition) inside
# which the degenerate closed forms are used
BOUNDARY_BAND = 1e-10


@dataclass
class DaviesResult:
    """Norm and classification of e^{-t Q_theta} at a bounded time."""

    theta: float
    t: complex
    phi: float | None
    A: float
    norm: float
    delta: float
    classification: str  # "unitary" | "heat_type" | "oscillator_type"
    sv_ratio: float | None
    bounded: bool
    compact: bool

    def to_json_dict(self) -> dict:
        return {
            "norm": self.norm,
            "bounded": self.bounded,
            "compact": self.compact,
            "A": self.A,
            "phi": self.phi,
            "delta": self.delta,
            "classification": self.classification,
        }


def davies_norm(theta: float, t: complex) -> DaviesResult:
    """Exact norm of e^{-t Q_theta} for t in the closed boundedness region.

    Raises Unbounded (with the embedding parameters a, b and the deficit
    1 - (a - b)) outside the region. On the region boundary off the
    imaginary axis the operator is heat type with norm exactly 1; at
    t in (i pi / 2) Z it is unitary.
    """
    t = complex(t)
    report = region_report(theta, t)
    if not report.bounded:
        raise Unbounded(
            f"e^(-t Q_theta) unbounded at theta = {theta}, t = {t}",
            a=report.a, b=report.b, deficit=1.0 - (report.a - report.b),
        )

    if report.special_imaginary:
        return DaviesResult(
            theta=theta, t=t, phi=None, A=0.0, norm=1.0, delta=0.0,
            classification="unitary", sv_ratio=None,
            bounded=True, compact=report.compact,
        )

    phi = report.phi
    heat = abs(abs(phi) + abs(theta) - 0.5 * math.pi) <= BOUNDARY_BAND
    if abs(t.real) <= TOL.special_imaginary:
        # pure imaginary time, bounded: only theta = 0, where the
        # semigroup is unitary
        classification = "unitary"
    elif heat:
        classification = "heat_type"
    else:
        classification = "oscillator_type"

    if heat:
        # the closed form has A = 0 exactly on the boundary; snap the
        # rounding residue so that delta = 0 iff heat type
        big_a = 0.0
    else:
        big_a = 0.5 * abs(np.sinh(2.0 * t)) ** 2 * (
            math.cos(2.0 * theta) + math.cos(2.0 * phi)
        )
        big_a = max(big_a, 0.0)

    base = math.sqrt(1.0 + big_a) + math.sqrt(big_a)
    norm = base ** -0.5
    delta = big_a / (1.0 + big_a)
    sv_ratio = 1.0 / base if classification == "oscillator_type" else None
    return DaviesResult(
        theta=theta, t=t, phi=phi, A=big_a, norm=norm, delta=delta,
        classification=classification, sv_ratio=sv_ratio,
        bounded=True, compact=report.compact,
    )


def davies_singular_values(theta: float, t: complex, k_max: int) -> np.ndarray:
    """First k_max + 1 singular values s_k = (sqrt(1+A) + sqrt(A))^{-(k+1/2)}.

    Only defined in the oscillator-type case (delta > 0)."""
    result = davies_norm(theta, t)
    if result.classification != "oscillator_type":
        raise NotOscillatorType(
            f"classification is {result.classification}; need delta > 0"
        )
    base = math.sqrt(1.0 + result.A) + math.sqrt(result.A)
    k = np.arange(k_max + 1)
    return base ** -(k + 0.5)


def ho_action(r: complex, k: int) -> complex:
    """Eigenvalue of the Weyl quantization of e^{-r(x^2 + xi^2)} on the k-th
    Hermite function: (1 - r)^k / (1 + r)^{k+1}, for Re r > 0."""
    r = complex(r)
    if not r.real > 0:
        raise ValueError("ho_action needs Re r > 0")
    if k < 0:
        raise ValueError("k must be nonnegative")
    return (1.0 - r) ** k / (1.0 + r) ** (k + 1)


@dataclass
class HolomorphicWeight:
    """Quadratic Fock-space weight Phi(z) = alpha |z|^2 + Re(beta z^2).

    Strictly plurisubharmonic iff alpha > 0; Gaussians are integrable
    against e^{-2 Phi} iff alpha > |beta|.
    """

    alpha: float
    beta: complex

    def __post_init__(self):
        self.alpha = float(self.alpha)
        self.beta = complex(self.beta)

    @property
    def strictly_plurisubharmonic(self) -> bool:
        return self.alpha > 0.0

    def value(self, z: complex) -> float:
        z = complex(z)
        return self.alpha * abs(z) ** 2 + (self.beta * z * z).real


@dataclass
class EmbeddingResult:
    """Norm of the embedding between two weighted Fock spaces."""

    a: float
    b: float
    bounded: bool
    gamma_star: float | None
    norm: float | None


def weight_reduce(phi1: HolomorphicWeight, phi2: HolomorphicWeight) -> tuple[float, float]:
    """Reduce a pair of weights to the model parameters
    a = alpha2/alpha1, b = |beta2 - beta1|/alpha1."""
    for w in (phi1, phi2):
        if not w.strictly_plurisubharmonic:
            raise NotPlurisubharmonic(f"alpha = {w.alpha} is not positive")
    return phi2.alpha / phi1.alpha, abs(phi2.beta - phi1.beta) / phi1.alpha


def embedding_norm_ab(a: float, b: float) -> EmbeddingResult:
    """Embedding norm from reduced parameters (a, b), b >= 0."""
    a = float(a)
    b = float(b)
    gap = a - b - 1.0
    if gap < -BOUNDARY_BAND:
        return EmbeddingResult(a=a, b=b, bounded=False, gamma_star=None, norm=None)
    if b <= BOUNDARY_BAND:
        return EmbeddingResult(a=a, b=b, bounded=True, gamma_star=0.0,
                               norm=a ** -0.5)
    if gap <= BOUNDARY_BAND:
        return EmbeddingResult(a=a, b=b, bounded=True, gamma_star=-1.0,
                               norm=a ** -0.25)
    disc = (a * a - b * b - 1.0) ** 2 - 4.0 * b * b
    gamma = (1.0 - a * a + b * b + math.sqrt(max(disc, 0.0))) / (2.0 * b)
    norm = ((1.0 - gamma * gamma) / (a * a - (b - gamma) ** 2)) ** 0.25
    return EmbeddingResult(a=a, b=b, bounded=True, gamma_star=gamma, norm=norm)


def embedding_norm(phi1: HolomorphicWeight, phi2: HolomorphicWeight) -> EmbeddingResult:
    """Norm of the embedding of H_{Phi_1} into H_{Phi_2} (unboundedness is a
    result state, not an error)."""
    a, b = weight_reduce(phi1, phi2)
    return embedding_norm_ab(a, b)


def davies_to_embedding(theta: float, t: complex) -> tuple[float, float]:
    """Embedding parameters induced by the Davies semigroup at time t:
    a = e^{4 Re t}, b = |(e^{4t} - 1) sin theta|."""
    t = complex(t)
    a = math.exp(4.0 * t.real)
    b = abs((np.exp(4.0 * t) - 1.0) * math.sin(theta))
    return a, b


def davies_weight(theta: float) -> HolomorphicWeight:
    """Fock weight of the Davies Bargmann transform:
    Phi(z) = |z|^2/(2 cos theta) + Re(i e^{i theta} sin(theta) z^2)/(2 cos theta)."""
    c = 2.0 * math.cos(theta)
    return HolomorphicWeight(alpha=1.0 / c,
                             beta=1j * np.exp(1j * theta) * math.sin(theta) / c)


def scale_weight(w: HolomorphicWeight, r: complex) -> HolomorphicWeight:
    """Weight z -> Phi(r z)."""
    r = complex(r)
    return HolomorphicWeight(alpha=w.alpha * abs(r) ** 2, beta=w.beta * r * r)


def general_gaussian_norm(g: GaussianSymbol) -> float:
    """Operator norm of the Weyl quantization of an integrable Gaussian:
    |c| (det D)^{-1/4} prod_j (1 + s_j/2)^{-1/2}, with D = 1 - (1/4) A J A* J
    and s_j the symplectic eigenvalues of the (real symmetric positive
    definite) gram exponent B."""
    if not g.integrable:
        raise NotIntegrable("norm formula needs Re A positive definite")
    a = g.exponent
    dim = 2 * g.n
    j = symplectic_j(g.n)
    d = np.eye(dim) - 0.25 * a @ j @ np.conj(a) @ j
    det_d = determinant(d)
    if abs(det_d.imag) > TOL.detd_imag * abs(det_d) or det_d.real <= 0.0:
        raise InternalContractViolation(
            f"det D = {det_d} is not positive real", offending=d
        )

    inter = sharp_intermediates(np.conj(a), a)
    b = inter.B
    scale = max(1.0, float(np.max(np.abs(b))))
    if np.max(np.abs(b.imag)) > TOL.b_real_sym * scale:
        raise InternalContractViolation(
            "gram exponent B is not real within tolerance", offending=b
        )
    b_real = 0.5 * (b.real + b.real.T)
    try:
        s = symplectic_eigenvalues(b_real)
    except NotPositiveDefinite as exc:
        raise InternalContractViolation(
            f"gram exponent B is not positive definite: {exc}", offending=b_real
        ) from exc
    if np.any(s >= 2.0 + TOL.sj_bound_slack):
        raise InternalContractViolation(
            f"symplectic eigenvalues {s} exceed the positivity bound 2",
            offending=b_real,
        )
    prod = float(np.prod((1.0 + 0.5 * s) ** -0.5))
    return abs(g.prefactor) * det_d.real ** -0.25 * prod


def semigroup_norm(q: QuadraticForm, t: float) -> float:
    """Norm of e^{-t q^w} for elliptic q and real t > 0 (Mehler symbol fed
    into the general Gaussian norm)."""
    return general_gaussian_norm(mehler_symbol(q, t))


def supersymmetric_norm(m, t: complex) -> float:
    """Norm of the supersymmetric semigroup e^{-tQ} with symbol built from
    the n x n matrix M: e^{-(1/2) Re(t Tr M)}, provided ||e^{-tM}|| <= 1.

    Raises Unbounded (carrying the offending spectral norm as `deficit`
    above 1) when the matrix-semigroup condition fails.
    """
    mm = np.asarray(m, dtype=np.complex128)
    t = complex(t)
    sn = spectral_norm(mat_exp(-t * mm))
    if sn > 1.0 + BOUNDARY_BAND:
        raise Unbounded(
            f"||e^(-tM)|| = {sn} exceeds 1 at t = {t}",
            deficit=sn - 1.0,
        )
    return float(np.exp(-0.5 * (t * np.trace(mm)).real))

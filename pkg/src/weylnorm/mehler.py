"""Gaussian Weyl symbols of exp(-t q^w) via the Mehler formula, the closed
form for the Davies oscillator, and the boundedness region of complex times.

The region of complex t where the Davies semigroup is bounded has two
characterizations that are computed side by side and cross-checked on every
call: the geometric one through phi = arg tanh t, and the algebraic one
through the Fock-side weight parameters a = e^{4 Re t},
b = |(e^{4t} - 1) sin theta| with boundedness iff a - b >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import TOL
from .errors import (
    CharacterizationMismatch,
    ExceptionalTime,
    InternalContractViolation,
    NotElliptic,
    SingularCosine,
)
from .linalg import determinant, mat_exp, mat_trig, symplectic_j, tracked_inv_sqrt
from .symbols import GaussianSymbol, QuadraticForm, fundamental_matrix, is_elliptic


@dataclass
class RegionReport:
    """Classification of a complex time for the Davies semigroup.

    phi is arg tanh t where defined and NaN at t in (i pi / 2) Z, where
    tanh t is 0 or infinite.
    """

    theta: float
    t: complex
    phi: float
    bounded: bool
    compact: bool
    a: float
    b: float
    special_imaginary: bool


def arg_tanh(t: complex) -> float:
    """arg tanh t = atan2(sin 2 Im t, sinh 2 Re t); NaN where tanh is 0 or a
    pole (t in (i pi / 2) Z)."""
    t = complex(t)
    sh = math.sinh(2.0 * t.real)
    sn = math.sin(2.0 * t.imag)
    if is_special_imaginary(t):
        return math.nan
    return math.atan2(sn, sh)


def is_special_imaginary(t: complex) -> bool:
    """True iff t lies in (i pi / 2) Z within tolerance."""
    t = complex(t)
    if abs(t.real) > TOL.special_imaginary:
        return False
    k = round(t.imag / (0.5 * math.pi))
    return abs(t.imag - 0.5 * math.pi * k) <= TOL.special_imaginary


def _check_theta(theta: float) -> float:
    theta = float(theta)
    if not abs(theta) < 0.5 * math.pi:
        raise ValueError(f"theta must satisfy |theta| < pi/2, got {theta}")
    return theta


def region_report(theta: float, t: complex) -> RegionReport:
    """Boundedness/compactness report for e^{-t Q_theta} at complex t.

    The returned flags come from the algebraic test (bounded iff
    a - b >= 1, compact iff a - b > 1, with a 1e-12 band); the geometric
    test is recomputed and any disagreement outside a 1e-10 band around
    a - b = 1 raises CharacterizationMismatch.
    """
    theta = _check_theta(theta)
    t = complex(t)

    a = math.exp(4.0 * t.real)
    b = abs((np.exp(4.0 * t) - 1.0) * math.sin(theta))
    gap = a - b - 1.0
    bounded = gap >= -TOL.region_band
    compact = gap > TOL.region_band
    special = is_special_imaginary(t)
    phi = arg_tanh(t)

    if abs(gap) > TOL.region_mismatch_band:
        half_aperture = 0.5 * math.pi - abs(theta)
        if t.real > TOL.special_imaginary:
            geo_bounded = abs(phi) <= half_aperture
            geo_compact = abs(phi) < half_aperture
        elif abs(t.real) <= TOL.special_imaginary:
            geo_bounded = special or abs(theta) <= TOL.special_imaginary
            geo_compact = False
        else:
            geo_bounded = False
            geo_compact = False
        if geo_bounded != bounded or geo_compact != compact:
            raise CharacterizationMismatch(
                f"theta={theta}, t={t}: geometric (bounded={geo_bounded}, "
                f"compact={geo_compact}) vs algebraic (bounded={bounded}, "
                f"compact={compact}, a-b-1={gap:.3e})"
            )

    return RegionReport(
        theta=theta, t=t, phi=phi, bounded=bounded, compact=compact,
        a=a, b=b, special_imaginary=special,
    )


def davies_mehler(theta: float, t: complex) -> GaussianSymbol:
    """Weyl symbol of e^{-t Q_theta}: (1/cosh t) exp(-tanh(t) q_theta)."""
    theta = _check_theta(theta)
    t = complex(t)
    ch = np.cosh(t)
    if abs(ch) < TOL.exceptional_time:
        raise ExceptionalTime(f"cosh t vanishes at t = {t}")
    th = np.tanh(t)
    exponent = np.diag([
        2.0 * th * np.exp(1j * theta),
        2.0 * th * np.exp(-1j * theta),
    ])
    return GaussianSymbol(1, 1.0 / ch, exponent)


def _matrix_cos(m: np.ndarray) -> np.ndarray:
    return 0.5 * (mat_exp(1j * m) + mat_exp(-1j * m))


def mehler_symbol(q: QuadraticForm, t: float) -> GaussianSymbol:
    """Weyl symbol of e^{-t q^w} for elliptic q and real t > 0.

    Built from the fundamental matrix F' = -t F as
    (det cos F')^{-1/2} exp(sigma(Z, (tan F') Z)); the square-root branch is
    anchored at value 1 at t = 0 and tracked continuously along [0, t].
    """
    if not is_elliptic(q):
        raise NotElliptic("mehler_symbol needs Re q positive definite")
    t = float(t)
    if not t > 0.0:
        raise ValueError("mehler_symbol is restricted to real t > 0")

    f = fundamental_matrix(q)
    try:
        cos_f, _, tan_f = mat_trig(-t * f)
    except SingularCosine as exc:
        raise ExceptionalTime(f"cos(-tF) singular at t = {t}") from exc

    prefactor = tracked_inv_sqrt(lambda s: determinant(_matrix_cos(-s * t * f)))
    j = symplectic_j(q.n)
    jt = j @ tan_f
    exponent = -(jt + jt.T)
    symbol = GaussianSymbol(q.n, prefactor, exponent)
    if not symbol.integrable:
        raise InternalContractViolation(
            "Mehler symbol of an elliptic form must be integrable",
            offending=exponent,
        )
    return symbol

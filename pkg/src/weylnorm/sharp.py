"""Sharp (Moyal) product of integrable Gaussian symbols in any dimension,
plus the closed-form gram symbol of the Davies semigroup used as a
high-precision test vector.

For a_j = c_j exp(-(1/2) Z . A_j Z) with Re A_j positive definite,

    a_1 # a_2 = c_1 c_2 (det D)^{-1/2} exp(-(1/2) Z . B Z),
    D = 1 - (1/4) A_2 J A_1 J,
    B = A_1 + (1 + (i/2) A_1 J) D^{-1} A_2 (1 - (i/2) J A_1).

The square-root branch is fixed by scaling both exponents by s in [0, 1]
and tracking det D(s) continuously from its value 1 at s = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import TOL
from .errors import (
    DimensionMismatch,
    InternalContractViolation,
    NotIntegrable,
    OutsideRegion,
    SingularD,
    SingularMatrix,
)
from .linalg import determinant, solve, symplectic_j, tracked_inv_sqrt
from .mehler import arg_tanh, region_report
from .symbols import GaussianSymbol


@dataclass
class SharpIntermediates:
    """The pairing matrix D and symmetrized exponent B of a sharp product."""

    D: np.ndarray
    B: np.ndarray


def sharp_intermediates(a1: np.ndarray, a2: np.ndarray) -> SharpIntermediates:
    """D and B for exponent matrices a1, a2 (a1 is the left factor)."""
    dim = a1.shape[0]
    n = dim // 2
    j = symplectic_j(n)
    eye = np.eye(dim)
    d = eye - 0.25 * a2 @ j @ a1 @ j
    try:
        d_inv_a2 = solve(d, a2)
    except SingularMatrix as exc:
        raise SingularD(
            "sharp-product pairing matrix is singular; should be "
            "unreachable for integrable factors"
        ) from exc
    b = a1 + (eye + 0.5j * a1 @ j) @ d_inv_a2 @ (eye - 0.5j * j @ a1)
    scale = max(1.0, float(np.max(np.abs(b))))
    if np.max(np.abs(b - b.T)) > TOL.sharp_symmetry * scale:
        raise InternalContractViolation(
            "sharp-product exponent drifted from symmetric", offending=b
        )
    return SharpIntermediates(D=d, B=0.5 * (b + b.T))


def sharp_product(g1: GaussianSymbol, g2: GaussianSymbol) -> GaussianSymbol:
    """Sharp product of two integrable Gaussian symbols."""
    if g1.n != g2.n:
        raise DimensionMismatch(f"n = {g1.n} vs n = {g2.n}")
    if not (g1.integrable and g2.integrable):
        raise NotIntegrable("sharp_product needs Re A positive definite")

    inter = sharp_intermediates(g1.exponent, g2.exponent)
    dim = 2 * g1.n
    j = symplectic_j(g1.n)
    m = g2.exponent @ j @ g1.exponent @ j
    eye = np.eye(dim)
    root = tracked_inv_sqrt(lambda s: determinant(eye - 0.25 * s * s * m))
    symbol = GaussianSymbol(g1.n, g1.prefactor * g2.prefactor * root, inter.B)
    if not symbol.integrable:
        raise InternalContractViolation(
            "sharp product of integrable symbols must be integrable",
            offending=inter.B,
        )
    return symbol


@dataclass
class DaviesGramCoefficients:
    """Data of the gram symbol prefactor * e^{p} of the Davies semigroup:
    T = tanh t, phi = arg T, A_theta = |T| e^{i theta},
    f_val = A_theta + 1/A_theta, and the real coefficients of
    p(x, xi) = cxx x^2 + cxxi x xi + cxixi xi^2."""

    T: complex
    phi: float
    A_theta: complex
    f_val: complex
    cxx: float
    cxxi: float
    cxixi: float

    @property
    def det_f(self) -> float:
        """Determinant of the fundamental matrix of p; equals A/(1+A)."""
        return self.cxx * self.cxixi - 0.25 * self.cxxi * self.cxxi

    def symbol_exponent(self) -> np.ndarray:
        """Exponent matrix of the gram symbol in the -(1/2) Z . A Z
        convention, i.e. A = -2 P for p(Z) = Z . P Z."""
        return -2.0 * np.array([
            [self.cxx, 0.5 * self.cxxi],
            [0.5 * self.cxxi, self.cxixi],
        ], dtype=np.complex128)


def davies_gram_symbol(theta: float, t: complex) -> tuple[float, DaviesGramCoefficients]:
    """Closed form of the Weyl symbol of (e^{-t Q_theta})* e^{-t Q_theta}.

    Returns (prefactor, coefficients) with prefactor 2 / |f(A_theta) sinh 2t|
    and the three real coefficients of the exponent p(x, xi).
    """
    t = complex(t)
    report = region_report(theta, t)
    if not report.bounded:
        raise OutsideRegion(f"t = {t} outside the closed region for theta = {theta}")
    if abs(t.real) <= TOL.special_imaginary:
        raise OutsideRegion("gram symbol needs t off the imaginary axis")

    big_t = complex(np.tanh(t))
    phi = arg_tanh(t)
    a_theta = abs(big_t) * np.exp(1j * theta)
    f_val = a_theta + 1.0 / a_theta
    eiphi = np.exp(1j * phi)

    cxx = -2.0 * float(np.real(eiphi / f_val))
    cxxi = 4.0 * float(np.imag(a_theta / f_val))
    cxixi = -2.0 * float(np.real(eiphi / np.conj(f_val)))
    prefactor = 2.0 / abs(f_val * np.sinh(2.0 * t))

    coeffs = DaviesGramCoefficients(
        T=big_t, phi=phi, A_theta=complex(a_theta), f_val=complex(f_val),
        cxx=cxx, cxxi=cxxi, cxixi=cxixi,
    )
    return prefactor, coeffs

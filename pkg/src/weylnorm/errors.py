"""Exception hierarchy for the weylnorm package.

Every failure mode raised by the library derives from WeylNormError, so
callers (and the CLI) can catch one type. Errors that carry diagnostic
payloads (best estimates, offending matrices) expose them as attributes.
"""


class WeylNormError(Exception):
    """Base class for all weylnorm errors."""


# --- linear algebra ---------------------------------------------------------

class SingularMatrix(WeylNormError):
    """A pivot fell below the singularity threshold during a solve."""


class NotSymmetric(WeylNormError):
    """Matrix expected to be (real) symmetric is not, beyond tolerance."""


class SingularCosine(WeylNormError):
    """cos(F) is singular: the semigroup is at an exceptional time."""


class NoConvergence(WeylNormError):
    """Power iteration hit its iteration cap. Carries the best estimate."""

    def __init__(self, message, best_estimate):
        super().__init__(message)
        self.best_estimate = best_estimate


class NotPositiveDefinite(WeylNormError):
    """Matrix expected positive definite has a nonpositive eigenvalue."""


# --- symbols ----------------------------------------------------------------

class NotPositive(WeylNormError):
    """Quadratic form expected real positive definite is not."""


class PoleAtGamma(WeylNormError):
    """Moebius transport evaluated at (or too close to) its pole."""


# --- mehler -----------------------------------------------------------------

class NotElliptic(WeylNormError):
    """Quadratic form does not have positive definite real part."""


class ExceptionalTime(WeylNormError):
    """The Mehler formula degenerates at this time (cos F singular)."""


class CharacterizationMismatch(WeylNormError):
    """Geometric and algebraic region tests disagree outside the boundary
    band. Indicates an implementation bug, not a user error."""


# --- sharp ------------------------------------------------------------------

class DimensionMismatch(WeylNormError):
    """Operands live in different phase-space dimensions."""


class NotIntegrable(WeylNormError):
    """Gaussian symbol does not have positive definite real exponent part."""


class SingularD(WeylNormError):
    """The sharp-product pairing matrix D is singular. Unreachable for
    integrable factors; raised as an internal error."""


class OutsideRegion(WeylNormError):
    """Requested a closed form at a time outside the boundedness region."""


# --- norms ------------------------------------------------------------------

class Unbounded(WeylNormError):
    """The semigroup is unbounded at the requested time. Carries the
    embedding parameters (a, b) and the deficit 1 - (a - b)."""

    def __init__(self, message, a=None, b=None, deficit=None):
        super().__init__(message)
        self.a = a
        self.b = b
        self.deficit = deficit


class NotOscillatorType(WeylNormError):
    """Singular-value law requested for a non-oscillator-type operator."""


class NotPlurisubharmonic(WeylNormError):
    """Weight is not strictly plurisubharmonic (alpha <= 0)."""


class InternalContractViolation(WeylNormError):
    """A structural assertion failed (e.g. det D not positive real, or B not
    real symmetric positive definite). Carries the offending object."""

    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = offending


# --- oracles ----------------------------------------------------------------

class NonIntegrableFiber(WeylNormError):
    """The xi-block of the symbol exponent is not integrable."""


class NonIntegrableComposition(WeylNormError):
    """The shared-variable block in a kernel composition is not integrable."""


class GridTooCoarse(WeylNormError):
    """Doubling the discretization grid moved the result beyond tolerance."""


class QuadratureOverflow(WeylNormError):
    """Quadrature exponents too extreme to evaluate in double precision."""


class Divergent(WeylNormError):
    """The quadratic exponent of a weighted integral is not negative
    definite, so the integral diverges."""


# --- cli --------------------------------------------------------------------

class GridGuard(WeylNormError):
    """Contour grid exceeds the hard point-count guard."""

"""Centralized numerical tolerances.

Every threshold used by the package lives in one frozen record so that the
boundary behavior (singularity cutoffs, PSD bands, branch-tracking steps) is
documented and reproducible. Modules import TOL rather than hard-coding
magic numbers.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # relative pivot magnitude below which a matrix counts as singular
    pivot_singular: float = 1e-13
    # relative symmetry defect allowed on symmetric inputs
    symmetry: float = 1e-12
    # power iteration: relative tolerance and iteration cap
    power_rel: float = 1e-10
    power_max_iter: int = 10_000
    # eigenvalue band for positive-(semi)definiteness flags
    psd_band: float = 1e-12
    # relative band for ellipticity (min eig of Re H vs max eig)
    elliptic_band: float = 1e-10
    # boundary band for a - b = 1 classifications
    region_band: float = 1e-12
    # band within which geometric/algebraic region tests may disagree
    region_mismatch_band: float = 1e-10
    # |cosh t| below this is an exceptional (pole) time
    exceptional_time: float = 1e-13
    # detection band for t in (i pi / 2) Z
    special_imaginary: float = 1e-12
    # default number of path steps for branch-tracked square roots
    branch_steps: int = 64
    # asymmetry on the sharp-product exponent that flags an internal bug
    sharp_symmetry: float = 1e-10
    # allowed relative imaginary part of det D in the norm formula
    detd_imag: float = 1e-9
    # allowed defect when checking B real symmetric positive definite
    b_real_sym: float = 1e-8
    # slack on the symplectic-eigenvalue bound s_j < 2
    sj_bound_slack: float = 1e-9


TOL = Tolerances()

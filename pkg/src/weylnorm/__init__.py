"""Exact operator norms of quadratic-operator semigroups via Gaussian
Weyl-symbol calculus, validated against independent brute-force oracles.

Public surface: phase-space symbols and forms (symbols), Mehler symbols and
the boundedness region (mehler), the sharp product (sharp), closed-form
norms (norms), and the oracle suite (oracles). The command line lives in
weylnorm.cli.
"""

from .config import TOL, Tolerances
from .linalg import (
    determinant,
    mat_exp,
    mat_trig,
    solve,
    spectral_norm,
    sym_eig,
    symplectic_eigenvalues,
    symplectic_j,
)
from .mehler import RegionReport, arg_tanh, davies_mehler, mehler_symbol, region_report
from .norms import (
    DaviesResult,
    EmbeddingResult,
    HolomorphicWeight,
    davies_norm,
    davies_singular_values,
    davies_to_embedding,
    davies_weight,
    embedding_norm,
    embedding_norm_ab,
    general_gaussian_norm,
    ho_action,
    scale_weight,
    semigroup_norm,
    supersymmetric_norm,
    weight_reduce,
)
from .oracles import (
    FockNorm,
    GaussianKernel,
    GaussianState,
    ScanResult,
    auto_grid,
    compose_kernels,
    fock_norm_quadrature,
    gaussian_scan_embedding,
    hermite_functions,
    hermite_galerkin_matrix,
    hermite_galerkin_norm,
    kernel_from_weyl,
    kernel_svd_norm,
)
from .sharp import (
    DaviesGramCoefficients,
    SharpIntermediates,
    davies_gram_symbol,
    sharp_intermediates,
    sharp_product,
)
from .symbols import (
    CanonicalMap2x2,
    GaussianSymbol,
    QuadraticForm,
    adjoint_symbol,
    bargmann_map,
    davies_form,
    fundamental_matrix,
    ho_reduce_1d,
    is_elliptic,
    mobius_transport,
    quad_form_1d,
    supersymmetric_form,
)

__version__ = "0.1.0"

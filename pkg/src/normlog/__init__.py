"""normlog: spectral measures and branch logarithms of normal matrices.

The toolkit decomposes normal complex matrices into eigenprojections,
evaluates projection-valued measures over plane regions, computes
principal and branch-shifted logarithms, and mechanically verifies the
identities that constrain two logarithms of the same exponential.
"""

__version__ = "0.1.0"

from .checks import (
    check_congruence_free,
    check_corollary_cases,
    check_difference_formula,
    check_double_commutant,
    check_kurepa,
    check_modulus_commute,
    check_modulus_equal,
    check_one_boundary_eigenvalue,
    check_real_part,
    check_spectral_agreement,
    check_square_commute,
    check_y_in_bicommutant_of_exp,
)
from .config import DEFAULT_TOL, Tolerances
from .errors import (
    AmbiguousBoundary,
    ConstructionFailed,
    ExpNotNormal,
    NoConvergence,
    NormLogError,
    NotCommuting,
    NotHermitian,
    NotNormal,
    OutOfFoldRange,
    Singular,
    SpectrumOutOfRange,
)
from .linalg import (
    CommutantBasis,
    commutant_basis,
    herm_eig,
    in_double_commutant,
    is_normal,
    modulus,
    simultaneous_diagonalize,
)
from .logs import (
    BranchShift,
    KurepaDecomposition,
    branch_log,
    exp_general,
    exp_normal,
    kurepa_decompose,
    principal_log,
)
from .report import CheckReport
from .spectral import (
    Conjugate,
    HLine,
    Negate,
    Points,
    Rect,
    Region,
    RegionUnion,
    Shift,
    SpectralDecomposition,
    StripProjections,
    borel_calculus,
    fold_scalar,
    normal_eig,
    spectral_measure,
    strip,
    strip_boundary,
    strip_interior,
    strip_projections,
    verify_pushforward,
    whole_plane,
)

"""Matrix exponentials and branch logarithms.

Normal matrices get their exponential and logarithm through the
spectral decomposition; a scaling-and-squaring Pade kernel covers the
general (non-normal) exponential. ``kurepa_decompose`` splits any
matrix with a normal exponential into a principal normal logarithm
plus 2*pi*i times an integer-spectrum branch weight.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import ExpNotNormal, Singular
from .linalg import as_square_matrix, commutator, frob, is_normal
from .spectral import SpectralDecomposition, borel_calculus, normal_eig

__all__ = [
    "BranchShift",
    "KurepaDecomposition",
    "branch_log",
    "exp_general",
    "exp_normal",
    "kurepa_decompose",
    "principal_log",
]

TWO_PI = 2.0 * math.pi


def exp_normal(dec: SpectralDecomposition) -> np.ndarray:
    """Exponential through the spectral decomposition: sum e^lam_j proj_j."""
    return borel_calculus(dec, cmath.exp)


# Pade(13,13) numerator coefficients for exp; theta bounds the scaled norm
# for which the approximant is accurate to double precision.
_PADE13_B = (
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0, 129060195264000.0, 10559470521600.0, 670442572800.0,
    33522128640.0, 1323241920.0, 40840800.0, 960960.0, 16380.0, 182.0, 1.0,
)
_PADE13_THETA = 5.371920351148152


def exp_general(x) -> np.ndarray:
    """Matrix exponential via scaling and squaring with a Pade(13,13) core.

    Works for arbitrary square complex input; agrees with
    :func:`exp_normal` on normal matrices up to rounding.
    """
    x = as_square_matrix(x)
    n = x.shape[0]
    norm = np.linalg.norm(x, 1)
    if norm == 0.0:
        return np.eye(n, dtype=complex)
    squarings = max(0, int(math.ceil(math.log2(norm / _PADE13_THETA))))
    a = x / (2.0 ** squarings)

    b = _PADE13_B
    eye = np.eye(n)
    a2 = a @ a
    a4 = a2 @ a2
    a6 = a4 @ a2
    u = a @ (a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
             + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * eye)
    v = (a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
         + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * eye)
    r = np.linalg.solve(v - u, v + u)
    for _ in range(squarings):
        r = r @ r
    return r


def _principal_scalar_log(lam: complex, eps_on: float) -> complex:
    """Scalar log with Im in (-pi, pi]; the cut maps onto +i*pi.

    Arguments within ``eps_on`` of -pi (i.e. just below the negative real
    axis, where rounding noise lands) are pulled up to the +i*pi side.
    """
    theta = cmath.phase(lam)
    if theta <= -math.pi + eps_on:
        theta = math.pi
    return math.log(abs(lam)) + 1j * theta


@dataclass(frozen=True)
class BranchShift:
    """Integer branch offsets per cluster index, in units of 2*pi*i.

    Unlisted clusters default to offset 0.
    """

    shifts: dict = field(default_factory=dict)

    def offset(self, cluster_index: int) -> int:
        return int(self.shifts.get(cluster_index, 0))


def _require_invertible(dec: SpectralDecomposition, scale: float,
                        tol: Tolerances):
    floor = tol.inv * max(scale, 1e-300)
    for lam in dec.eigenvalues:
        if abs(lam) < floor:
            raise Singular(f"eigenvalue {lam} below invertibility floor "
                           f"{floor:.3e}")


def branch_log(dec_n: SpectralDecomposition, shift: BranchShift, *,
               tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Normal logarithm with per-cluster branch offsets.

    Returns sum (Log lam_j + 2*pi*i*k_j) proj_j over the clusters of an
    invertible normal matrix; offset 0 everywhere reproduces
    :func:`principal_log`.
    """
    scale = frob(dec_n.reconstruct())
    _require_invertible(dec_n, scale, tol)
    out = np.zeros((dec_n.n, dec_n.n), dtype=complex)
    for j, c in enumerate(dec_n.clusters):
        w = _principal_scalar_log(c.lam, tol.on_feature)
        out += (w + TWO_PI * 1j * shift.offset(j)) * c.proj
    return out


def principal_log(n_mat, *, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Principal logarithm of an invertible normal matrix.

    Every eigenvalue of the result has imaginary part in (-pi, pi];
    negative real eigenvalues map to log|lam| + i*pi. Raises NotNormal
    or Singular when the input fails the preconditions.
    """
    n_mat = as_square_matrix(n_mat)
    dec = normal_eig(n_mat, tol=tol)
    return branch_log(dec, BranchShift(), tol=tol)


@dataclass(frozen=True)
class KurepaDecomposition:
    """Splitting Y = N0 + 2*pi*i*W with N0 the principal log of e^Y.

    ``W`` commutes with ``N0`` and has spectrum within
    ``integer_spectrum_residual`` of the integers whenever e^Y is
    normal (which construction requires). ``commute_residual`` is the
    relative commutator norm actually measured.
    """

    n0: np.ndarray
    w: np.ndarray
    commute_residual: float
    integer_spectrum_residual: float

    def reconstruct(self) -> np.ndarray:
        return self.n0 + TWO_PI * 1j * self.w


def kurepa_decompose(y, *, tol: Tolerances = DEFAULT_TOL) -> KurepaDecomposition:
    """Decompose Y = N0 + 2*pi*i*W given that e^Y is normal.

    N0 is the principal logarithm of e^Y; W = (Y - N0) / (2*pi*i). The
    branch weight W is generally non-normal, so its eigenvalues come
    from the general eigensolver (the only place one is needed).

    Raises
    ------
    ExpNotNormal
        when e^Y fails the normality test, so no normal logarithm
        structure exists.
    Singular
        when e^Y is numerically singular.
    """
    y = as_square_matrix(y)
    e = exp_general(y)
    if not is_normal(e, tol=tol):
        raise ExpNotNormal("exp(Y) is not normal within tolerance")
    n0 = principal_log(e, tol=tol)
    w = (y - n0) / (TWO_PI * 1j)

    denom = frob(n0) * frob(w)
    commute_residual = 0.0 if denom == 0.0 else frob(commutator(n0, w)) / denom

    eigs = np.linalg.eigvals(w)
    integer_residual = 0.0
    for mu in eigs:
        integer_residual = max(integer_residual,
                               abs(mu - round(mu.real)))
    return KurepaDecomposition(n0=n0, w=w, commute_residual=commute_residual,
                               integer_spectrum_residual=float(integer_residual))

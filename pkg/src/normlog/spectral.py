"""Spectral decompositions of normal matrices and plane-region measures.

A normal matrix is decomposed into eigenvalue clusters with orthogonal
eigenprojections; a projection-valued measure then assigns to each
plane :class:`Region` the sum of projections whose eigenvalue lies in
it. Regions carry explicit edge-inclusivity so open/closed strips are
distinguished exactly, with a two-scale tolerance:

* a point within ``tol.on_feature`` of an edge or line is treated as
  lying exactly on it (exact constructions survive rounding);
* a point farther than that but within ``tol.boundary`` of an excluded
  edge cannot be classified and raises :class:`AmbiguousBoundary`
  rather than letting rounding noise pick a side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import AmbiguousBoundary, NotNormal, OutOfFoldRange, SpectrumOutOfRange
from .linalg import (
    as_square_matrix,
    commutator,
    dagger,
    frob,
    im_part,
    is_normal,
    re_part,
    simultaneous_diagonalize,
)
from .report import CheckReport

__all__ = [
    "Cluster",
    "Conjugate",
    "HLine",
    "Negate",
    "Points",
    "Rect",
    "Region",
    "RegionUnion",
    "Shift",
    "SpectralDecomposition",
    "StripProjections",
    "borel_calculus",
    "fold_scalar",
    "normal_eig",
    "odd_line",
    "open_branch_strip",
    "spectral_measure",
    "strip",
    "strip_boundary",
    "strip_interior",
    "strip_projections",
    "verify_pushforward",
    "whole_plane",
]

_IN, _OUT, _AMBIG = 1, 0, -1


class Region:
    """Finite description of a plane subset with decidable membership."""

    def _status(self, z: complex, tol: Tolerances) -> int:
        raise NotImplementedError

    def contains(self, z: complex, *, tol: Tolerances = DEFAULT_TOL) -> bool:
        """Membership with boundary-band safety.

        Raises AmbiguousBoundary when ``z`` falls in the uncertainty band
        of an excluded edge and no other feature decides the point.
        """
        s = self._status(complex(z), tol)
        if s == _AMBIG:
            raise AmbiguousBoundary(
                f"point {z} lies within {tol.boundary:.1e} of an excluded "
                f"edge of {self!r}")
        return s == _IN


def _interval_status(x: float, lo: float, hi: float, incl_lo: bool,
                     incl_hi: bool, tol: Tolerances) -> int:
    statuses = []
    for edge, incl, sign in ((lo, incl_lo, 1.0), (hi, incl_hi, -1.0)):
        if math.isinf(edge):
            continue
        d = (x - edge) * sign  # positive on the interior side
        if abs(d) <= tol.on_feature:
            statuses.append(_IN if incl else _OUT)
        elif abs(d) <= tol.boundary:
            statuses.append(_IN if incl else _AMBIG)
        else:
            statuses.append(_IN if d > 0 else _OUT)
    if _OUT in statuses:
        return _OUT
    if _AMBIG in statuses:
        return _AMBIG
    return _IN


@dataclass(frozen=True)
class Rect(Region):
    """Axis-aligned rectangle, possibly unbounded, with per-edge inclusivity."""

    re_lo: float = -math.inf
    re_hi: float = math.inf
    im_lo: float = -math.inf
    im_hi: float = math.inf
    incl_re_lo: bool = True
    incl_re_hi: bool = True
    incl_im_lo: bool = True
    incl_im_hi: bool = True

    def __post_init__(self):
        if self.re_lo > self.re_hi or self.im_lo > self.im_hi:
            raise ValueError("rectangle bounds must satisfy lo <= hi")

    def _status(self, z, tol):
        s_re = _interval_status(z.real, self.re_lo, self.re_hi,
                                self.incl_re_lo, self.incl_re_hi, tol)
        s_im = _interval_status(z.imag, self.im_lo, self.im_hi,
                                self.incl_im_lo, self.incl_im_hi, tol)
        if _OUT in (s_re, s_im):
            return _OUT
        if _AMBIG in (s_re, s_im):
            return _AMBIG
        return _IN


@dataclass(frozen=True)
class HLine(Region):
    """The horizontal line Im z = c (always an included feature)."""

    c: float

    def _status(self, z, tol):
        return _IN if abs(z.imag - self.c) <= tol.boundary else _OUT


@dataclass(frozen=True)
class Points(Region):
    """Finite point set with a match radius."""

    points: tuple
    radius: float = 1e-9

    def _status(self, z, tol):
        return _IN if any(abs(z - complex(p)) <= self.radius
                          for p in self.points) else _OUT


@dataclass(frozen=True)
class RegionUnion(Region):
    members: tuple

    def _status(self, z, tol):
        statuses = [m._status(z, tol) for m in self.members]
        if _IN in statuses:
            return _IN
        if _AMBIG in statuses:
            return _AMBIG
        return _OUT


@dataclass(frozen=True)
class Conjugate(Region):
    """Mirror of ``inner`` across the real axis."""

    inner: Region

    def _status(self, z, tol):
        return self.inner._status(z.conjugate(), tol)


@dataclass(frozen=True)
class Negate(Region):
    """Point reflection of ``inner`` through the origin."""

    inner: Region

    def _status(self, z, tol):
        return self.inner._status(-z, tol)


@dataclass(frozen=True)
class Shift(Region):
    """Translate of ``inner`` by ``delta``."""

    inner: Region
    delta: complex

    def _status(self, z, tol):
        return self.inner._status(z - complex(self.delta), tol)


def whole_plane() -> Region:
    return Rect()


def strip() -> Region:
    """Closed strip |Im z| <= pi."""
    return Rect(im_lo=-math.pi, im_hi=math.pi)


def strip_interior() -> Region:
    """Open strip |Im z| < pi."""
    return Rect(im_lo=-math.pi, im_hi=math.pi,
                incl_im_lo=False, incl_im_hi=False)


def strip_boundary() -> Region:
    """The two lines Im z = +/- pi."""
    return RegionUnion((HLine(math.pi), HLine(-math.pi)))


def open_branch_strip(k: int) -> Region:
    """Open strip (2k-1)pi < Im z < (2k+1)pi."""
    return Rect(im_lo=(2 * k - 1) * math.pi, im_hi=(2 * k + 1) * math.pi,
                incl_im_lo=False, incl_im_hi=False)


def odd_line(k: int) -> Region:
    """The line Im z = (2k+1)pi."""
    return HLine((2 * k + 1) * math.pi)


@dataclass(frozen=True)
class Cluster:
    lam: complex
    proj: np.ndarray
    mult: int


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalue clusters of a normal matrix with their eigenprojections.

    Each projection is Hermitian idempotent, projections are mutually
    orthogonal and sum to the identity, and the matrix is reconstructed
    by sum(lam_j * proj_j). Representatives are pairwise separated by
    more than the merge radius used to build them.
    """

    n: int
    clusters: tuple

    @property
    def eigenvalues(self) -> list[complex]:
        return [c.lam for c in self.clusters]

    def reconstruct(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=complex)
        for c in self.clusters:
            out += c.lam * c.proj
        return out

    def identity_sum(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=complex)
        for c in self.clusters:
            out += c.proj
        return out

    def validate(self, x=None) -> dict[str, float]:
        """Residuals of the decomposition invariants (not thresholded)."""
        res = {"idempotent": 0.0, "hermitian": 0.0, "orthogonal": 0.0}
        for c in self.clusters:
            res["idempotent"] = max(res["idempotent"], frob(c.proj @ c.proj - c.proj))
            res["hermitian"] = max(res["hermitian"], frob(c.proj - dagger(c.proj)))
        for i, ci in enumerate(self.clusters):
            for cj in self.clusters[i + 1:]:
                res["orthogonal"] = max(res["orthogonal"], frob(ci.proj @ cj.proj))
        res["resolution"] = frob(self.identity_sum() - np.eye(self.n))
        if x is not None:
            res["reconstruction"] = frob(self.reconstruct() - x)
        return res


def normal_eig(x, *, tol: Tolerances = DEFAULT_TOL) -> SpectralDecomposition:
    """Spectral decomposition of a normal matrix.

    The commuting Hermitian parts Re(X), Im(X) are diagonalized in a
    common basis; eigenvalue pairs are merged into clusters within the
    radius ``tol.cluster * max(1, ||X||)``.

    Raises NotNormal when ``X*X != XX*`` beyond tolerance.
    """
    x = as_square_matrix(x)
    if not is_normal(x, tol=tol):
        raise NotNormal(f"commutator of X with X* has norm "
                        f"{frob(commutator(dagger(x), x)):.3e}")
    n = x.shape[0]
    v = simultaneous_diagonalize(re_part(x), im_part(x), tol=tol)
    diag_a = np.real(np.diag(dagger(v) @ re_part(x) @ v))
    diag_b = np.real(np.diag(dagger(v) @ im_part(x) @ v))
    lams = diag_a + 1j * diag_b

    radius = tol.cluster * max(1.0, frob(x))
    groups: list[list[int]] = []
    sums: list[complex] = []
    for j in range(n):
        for gi, g in enumerate(groups):
            if abs(lams[j] - sums[gi] / len(g)) <= radius:
                g.append(j)
                sums[gi] += lams[j]
                break
        else:
            groups.append([j])
            sums.append(lams[j])

    clusters = []
    for g, s in zip(groups, sums):
        rep = s / len(g)
        cols = v[:, g]
        clusters.append(Cluster(lam=complex(rep), proj=cols @ dagger(cols),
                                mult=len(g)))
    clusters.sort(key=lambda c: (c.lam.real, c.lam.imag))
    return SpectralDecomposition(n=n, clusters=tuple(clusters))


def spectral_measure(dec: SpectralDecomposition, omega: Region, *,
                     tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Sum of eigenprojections whose eigenvalue lies in ``omega``.

    An empty selection yields the zero matrix. AmbiguousBoundary
    propagates from membership testing.
    """
    out = np.zeros((dec.n, dec.n), dtype=complex)
    for c in dec.clusters:
        if omega.contains(c.lam, tol=tol):
            out += c.proj
    return out


def borel_calculus(dec: SpectralDecomposition,
                   f: Callable[[complex], complex]) -> np.ndarray:
    """Apply a scalar function to a normal matrix: sum f(lam_j) proj_j."""
    out = np.zeros((dec.n, dec.n), dtype=complex)
    for c in dec.clusters:
        out += complex(f(c.lam)) * c.proj
    return out


def verify_pushforward(dec: SpectralDecomposition,
                       f: Callable[[complex], complex], omega: Region, *,
                       tol: Tolerances = DEFAULT_TOL) -> CheckReport:
    """Check that the measure of f(X) pulls back through f.

    Compares the projection of f(X) onto ``omega`` (computed from a fresh
    decomposition of f(X)) against the sum of projections of X whose
    eigenvalue maps into ``omega``.
    """
    fx = borel_calculus(dec, f)
    dec_f = normal_eig(fx, tol=tol)
    left = spectral_measure(dec_f, omega, tol=tol)
    right = np.zeros((dec.n, dec.n), dtype=complex)
    for c in dec.clusters:
        if omega.contains(complex(f(c.lam)), tol=tol):
            right += c.proj
    residual = frob(left - right)
    bound = tol.check * dec.n
    return CheckReport(
        check_name="pushforward",
        passed=residual <= bound,
        hypothesis_met=True,
        residuals={"pushforward": residual},
        tolerances={"pushforward": bound},
    )


def _fold_branch(t: float, eps_on: float) -> tuple[int, float]:
    """Branch index and folded value: t = 2*pi*k + r with r in (-pi, pi].

    Values within ``eps_on`` of an odd multiple of pi snap onto it, so
    exactly-placed boundary inputs land on the closed upper endpoint.
    """
    two_pi = 2.0 * math.pi
    k = round(t / two_pi)
    r = t - two_pi * k
    if r > math.pi + eps_on:
        k += 1
        r -= two_pi
    if r <= -math.pi + eps_on:
        k -= 1
        r += two_pi
    return k, r


def fold_scalar(t: float, k_lo: int, k_hi: int, *,
                tol: Tolerances = DEFAULT_TOL) -> float:
    """Sawtooth fold t -> t - 2*k*pi onto (-pi, pi].

    The branch index k is the unique integer with
    t in ((2k-1)pi, (2k+1)pi]; it must lie in [k_lo - 1, k_hi], else
    OutOfFoldRange is raised.
    """
    k, r = _fold_branch(float(t), tol.on_feature)
    if k < k_lo - 1 or k > k_hi:
        raise OutOfFoldRange(
            f"t={t} folds with branch index {k}, outside [{k_lo - 1}, {k_hi}]")
    return r


@dataclass(frozen=True)
class StripProjections:
    """Spectral projections of a pair (X, Y) onto branch strips and lines.

    For each k in [k_lo, k_hi]: ``p[k]``/``q[k]`` project X/Y onto the
    open strip (2k-1)pi < Im z < (2k+1)pi, and ``e[k]``/``f[k]`` onto
    the line Im z = (2k+1)pi.
    """

    k_lo: int
    k_hi: int
    p: dict = field(default_factory=dict)
    q: dict = field(default_factory=dict)
    e: dict = field(default_factory=dict)
    f: dict = field(default_factory=dict)


def strip_projections(dec_x: SpectralDecomposition,
                      dec_y: SpectralDecomposition, k_lo: int, k_hi: int, *,
                      tol: Tolerances = DEFAULT_TOL) -> StripProjections:
    """Populate strip and line projections over a branch window.

    Requires every eigenvalue of both inputs to satisfy
    (2*k_lo+1)pi <= Im z <= (2*k_hi+1)pi (within the boundary band).
    """
    if k_hi < k_lo:
        raise ValueError("k_hi must be >= k_lo")
    lo_line = (2 * k_lo + 1) * math.pi
    hi_line = (2 * k_hi + 1) * math.pi
    for name, dec in (("X", dec_x), ("Y", dec_y)):
        for lam in dec.eigenvalues:
            if not (lo_line - tol.boundary <= lam.imag <= hi_line + tol.boundary):
                raise SpectrumOutOfRange(
                    f"eigenvalue {lam} of {name} outside "
                    f"Im in [{lo_line:.6f}, {hi_line:.6f}]")
    out = StripProjections(k_lo=k_lo, k_hi=k_hi)
    for k in range(k_lo, k_hi + 1):
        band = open_branch_strip(k)
        line = odd_line(k)
        out.p[k] = spectral_measure(dec_x, band, tol=tol)
        out.q[k] = spectral_measure(dec_y, band, tol=tol)
        out.e[k] = spectral_measure(dec_x, line, tol=tol)
        out.f[k] = spectral_measure(dec_y, line, tol=tol)
    return out

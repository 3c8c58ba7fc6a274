"""Identity checks for pairs of matrix logarithms.

Each function verifies one consequence of the exponential equation
(exp(X) = exp(Y), or exp(iX) = exp(Y) for self-adjoint X) on a concrete
instance and returns a :class:`CheckReport`. Preconditions act as
hypothesis gates: an instance violating them is reported with
``hypothesis_met=False`` and is never marked passed.

All residuals are relative, normalized by operand norms with a
``max(1, .)`` guard against tiny denominators.
"""

from __future__ import annotations

import math

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import ExpNotNormal, Singular
from .linalg import (
    as_square_matrix,
    commutant_basis,
    commutator,
    dagger,
    frob,
    in_double_commutant,
    is_normal,
    modulus,
)
from .logs import TWO_PI, exp_general, kurepa_decompose
from .report import CheckReport
from .spectral import (
    HLine,
    Points,
    Rect,
    SpectralDecomposition,
    _fold_branch,
    borel_calculus,
    normal_eig,
    spectral_measure,
    strip_projections,
)

__all__ = [
    "check_congruence_free",
    "check_corollary_cases",
    "check_difference_formula",
    "check_double_commutant",
    "check_kurepa",
    "check_modulus_commute",
    "check_modulus_equal",
    "check_one_boundary_eigenvalue",
    "check_real_part",
    "check_spectral_agreement",
    "check_square_commute",
    "check_y_in_bicommutant_of_exp",
]

_FINITE_DIM_NOTE = ("verified on finite-dimensional input; the unbounded "
                    "self-adjoint case is outside this toolkit's scope")


def _rel(value: float, *norms: float) -> float:
    denom = 1.0
    for n in norms:
        denom *= n
    return value / max(1.0, denom)


def _exp_gate(ex: np.ndarray, ey: np.ndarray, tol: Tolerances):
    residual = frob(ex - ey) / max(frob(ex), 1e-300)
    return residual <= tol.gate, residual


def _is_hermitian(x: np.ndarray, tol: Tolerances) -> bool:
    return frob(x - dagger(x)) <= tol.herm * max(1.0, frob(x))


def _spectrum_in_strip(dec: SpectralDecomposition, tol: Tolerances) -> bool:
    return all(abs(lam.imag) <= math.pi + tol.boundary
               for lam in dec.eigenvalues)


def _odd_pi_distance(t: float) -> float:
    """Distance from a real number to the nearest odd multiple of pi."""
    k = round((t - math.pi) / TWO_PI)
    return abs(t - (2 * k + 1) * math.pi)


def _fail(name: str, note: str, residuals=None, tolerances=None) -> CheckReport:
    return CheckReport(check_name=name, passed=False, hypothesis_met=False,
                       residuals=residuals or {}, tolerances=tolerances or {},
                       notes=note)


def check_real_part(x, y, *, tol: Tolerances = DEFAULT_TOL) -> CheckReport:
    """Re(X) = Re(Y) whenever X, Y are normal with equal exponentials."""
    name = "real_part"
    x = as_square_matrix(x)
    y = as_square_matrix(y)
    if not (is_normal(x, tol=tol) and is_normal(y, tol=tol)):
        return _fail(name, "inputs must both be normal")
    ok, gate = _exp_gate(exp_general(x), exp_general(y), tol)
    if not ok:
        return _fail(name, "exponentials differ; hypothesis not met",
                     {"exp_gate": gate}, {"exp_gate": tol.gate})
    r = _rel(frob((x + dagger(x)) / 2 - (y + dagger(y)) / 2), frob(x))
    return CheckReport(
        check_name=name, passed=r <= tol.check, hypothesis_met=True,
        residuals={"exp_gate": gate, "real_part": r},
        tolerances={"exp_gate": tol.gate, "real_part": tol.check})


def _interior_region_family(dec_x: SpectralDecomposition,
                            dec_y: SpectralDecomposition,
                            scale: float, tol: Tolerances):
    """Rectangles isolating each interior eigenvalue plus point singletons.

    Edges are kept clear of every eigenvalue and of the strip boundary so
    membership is never ambiguous.
    """
    reps = list(dec_x.eigenvalues) + list(dec_y.eigenvalues)
    margin = 10 * tol.boundary
    radius = tol.cluster * max(1.0, scale)
    regions = []
    for lam in dec_x.eigenvalues:
        if math.pi - abs(lam.imag) <= margin:
            continue  # boundary eigenvalue: not an interior region target
        regions.append(Points((lam,), radius=radius))
        gap = min((abs(lam - mu) for mu in reps if abs(lam - mu) > radius),
                  default=1.0)
        half = min(gap / 3.0, (math.pi - abs(lam.imag)) / 2.0, 0.5)
        if half > margin:
            regions.append(Rect(lam.real - half, lam.real + half,
                                lam.imag - half, lam.imag + half))
    return regions


def check_spectral_agreement(x, y, *, tol: Tolerances = DEFAULT_TOL) -> CheckReport:
    """Spectral measures of X and Y agree inside the open strip, their
    boundary-line projections have equal sums, and the real parts match,
    exactly when the exponentials coincide (both directions reported).
    """
    name = "spectral_agreement"
    x = as_square_matrix(x)
    y = as_square_matrix(y)
    if not (is_normal(x, tol=tol) and is_normal(y, tol=tol)):
        return _fail(name, "inputs must both be normal")
    dec_x = normal_eig(x, tol=tol)
    dec_y = normal_eig(y, tol=tol)
    if not (_spectrum_in_strip(dec_x, tol) and _spectrum_in_strip(dec_y, tol)):
        return _fail(name, "spectra must lie in the closed strip |Im z| <= pi")
    ok, gate = _exp_gate(exp_general(x), exp_general(y), tol)
    if not ok:
        return _fail(name, "exponentials differ; hypothesis not met",
                     {"exp_gate": gate}, {"exp_gate": tol.gate})

    scale = frob(x)
    interior = 0.0
    for omega in _interior_region_family(dec_x, dec_y, scale, tol):
        diff = spectral_measure(dec_x, omega, tol=tol) \
            - spectral_measure(dec_y, omega, tol=tol)
        interior = max(interior, frob(diff))

    lines = (HLine(math.pi), HLine(-math.pi))
    bx = sum(spectral_measure(dec_x, l, tol=tol) for l in lines)
    by = sum(spectral_measure(dec_y, l, tol=tol) for l in lines)
    boundary = frob(bx - by)
    r_re = _rel(frob((x + dagger(x)) / 2 - (y + dagger(y)) / 2), frob(x))

    bound = tol.check * dec_x.n
    residuals = {"exp_gate": gate, "interior_measure": interior,
                 "boundary_sum": boundary, "real_part": r_re}
    tols = {"exp_gate": tol.gate, "interior_measure": bound,
            "boundary_sum": bound, "real_part": bound}
    passed = all(residuals[k] <= tols[k] for k in residuals)
    return CheckReport(check_name=name, passed=passed, hypothesis_met=True,
                       residuals=residuals, tolerances=tols,
                       notes="equality of exponentials re-verified against "
                             "the measure/real-part conditions (converse "
                             "direction included)")


def check_modulus_equal(x, y, *, tol: Tolerances = DEFAULT_TOL) -> CheckReport:
    """|X| = |Y| for normal X, Y with spectra in the strip and e^X = e^Y."""
    name = "modulus_equal"
    x = as_square_matrix(x)
    y = as_square_matrix(y)
    if not (is_normal(x, tol=tol) and is_normal(y, tol=tol)):
        return _fail(name, "inputs must both be normal")
    if not (_spectrum_in_strip(normal_eig(x, tol=tol), tol)
            and _spectrum_in_strip(normal_eig(y, tol=tol), tol)):
        return _fail(name, "spectra must lie in the closed strip |Im z| <= pi")
    ok, gate = _exp_gate(exp_general(x), exp_general(y), tol)
    if not ok:
        return _fail(name, "exponentials differ; hypothesis not met",
                     {"exp_gate": gate}, {"exp_gate": tol.gate})
    r = _rel(frob(modulus(x, tol=tol) - modulus(y, tol=tol)), frob(x))
    return CheckReport(
        check_name=name, passed=r <= tol.check, hypothesis_met=True,
        residuals={"exp_gate": gate, "modulus": r},
        tolerances={"exp_gate": tol.gate, "modulus": tol.check})


def check_modulus_commute(x, y, *, tol: Tolerances = DEFAULT_TOL) -> CheckReport:
    """|X| commutes with Y for normal X (spectrum in the strip) and any
    bounded Y with e^X = e^Y."""
    name = "modulus_commute"
    x = as_square_matrix(x)
    y = as_square_matrix(y)
    if not is_normal(x, tol=tol):
        return _fail(name, "X must be normal")
    if not _spectrum_in_strip(normal_eig(x, tol=tol), tol):
        return _fail(name, "spectrum of X must lie in |Im z| <= pi")
    ok, gate = _exp_gate(exp_general(x), exp_general(y), tol)
    if not ok:
        return _fail(name, "exponentials differ; hypothesis not met",
                     {"exp_gate": gate}, {"exp_gate": tol.gate})
    mx = modulus(x, tol=tol)
    r = _rel(frob(commutator(mx, y)), frob(x), frob(y))
    return CheckReport(
        check_name=name, passed=r <= tol.check, hypothesis_met=True,
        residuals={"exp_gate": gate, "modulus_commutator": r},
        tolerances={"exp_gate": tol.gate, "modulus_commutator": tol.check})


def check_square_commute(x, y, *, tol: Tolerances = DEFAULT_TOL) -> CheckReport:
    """X^2 commutes with Y when the boundary spectrum of X (apart from
    the two corner points +/- i*pi) is free of conjugate pairs."""
    name = "square_commute"
    x = as_square_matrix(x)
    y = as_square_matrix(y)
    if not is_normal(x, tol=tol):
        return _fail(name, "X must be normal")
    dec_x = normal_eig(x, tol=tol)
    if not _spectrum_in_strip(dec_x, tol):
        return _fail(name, "spectrum of X must lie in |Im z| <= pi")
    ok, gate = _exp_gate(exp_general(x), exp_general(y), tol)
    if not ok:
        return _fail(name, "exponentials differ; hypothesis not met",
                     {"exp_gate": gate}, {"exp_gate": tol.gate})

    radius = tol.cluster * max(1.0, frob(x))
    corner = complex(0.0, math.pi)
    for lam in dec_x.eigenvalues:
        if math.pi - abs(lam.imag) > tol.boundary:
            continue  # interior eigenvalue
        if abs(lam - corner) <= tol.boundary or abs(lam + corner) <= tol.boundary:
            continue  # the corner points are exempt
        if any(abs(lam.conjugate() - mu) <= radius for mu in dec_x.eigenvalues):
            return _fail(name, f"conjugate pair on the strip boundary at "
                               f"{lam:.6g}; hypothesis not met",
                         {"exp_gate": gate}, {"exp_gate": tol.gate})

    x2 = x @ x
    r = _rel(frob(commutator(x2, y)), frob(x) ** 2, frob(y))
    return CheckReport(
        check_name=name, passed=r <= tol.check, hypothesis_met=True,
        residuals={"exp_gate": gate, "square_commutator": r},
        tolerances={"exp_gate": tol.gate, "square_commutator": tol.check})


def check_difference_formula(x, y, k_lo: int, k_hi: int, *,
                             tol: Tolerances = DEFAULT_TOL) -> CheckReport:
    """X - Y equals the weighted sum of strip and boundary-line
    projections over the branch window [k_lo, k_hi]."""
    name = "difference_formula"
    x = as_square_matrix(x)
    y = as_square_matrix(y)
    if not (is_normal(x, tol=tol) and is_normal(y, tol=tol)):
        return _fail(name, "inputs must both be normal")
    ok, gate = _exp_gate(exp_general(x), exp_general(y), tol)
    if not ok:
        return _fail(name, "exponentials differ; hypothesis not met",
                     {"exp_gate": gate}, {"exp_gate": tol.gate})
    dec_x = normal_eig(x, tol=tol)
    dec_y = normal_eig(y, tol=tol)
    sp = strip_projections(dec_x, dec_y, k_lo, k_hi, tol=tol)

    n = dec_x.n
    rhs = np.zeros((n, n), dtype=complex)
    for k in range(k_lo, k_hi + 1):
        rhs += 2 * k * math.pi * 1j * (sp.p[k] - sp.q[k])
        rhs += (2 * k + 1) * math.pi * 1j * (sp.e[k] - sp.f[k])
    r = _rel(frob((x - y) - rhs), frob(x))
    bound = tol.check * n
    return CheckReport(
        check_name=name, passed=r <= bound, hypothesis_met=True,
        residuals={"exp_gate": gate, "difference": r},
        tolerances={"exp_gate": tol.gate, "difference": bound},
        notes=f"branch window [{k_lo}, {k_hi}]")


def check_corollary_cases(x, y, *, tol: Tolerances = DEFAULT_TOL) -> CheckReport:
    """Vanishing boundary-line projections of X force commutation:
    no spectrum on Im z = pi gives XY = YX with X - Y = -2*pi*i*F1, the
    mirror case on Im z = -pi gives X - Y = +2*pi*i*F{-1}, and both
    together force X = Y."""
    name = "corollary_cases"
    x = as_square_matrix(x)
    y = as_square_matrix(y)
    if not (is_normal(x, tol=tol) and is_normal(y, tol=tol)):
        return _fail(name, "inputs must both be normal")
    dec_x = normal_eig(x, tol=tol)
    dec_y = normal_eig(y, tol=tol)
    if not (_spectrum_in_strip(dec_x, tol) and _spectrum_in_strip(dec_y, tol)):
        return _fail(name, "spectra must lie in the closed strip |Im z| <= pi")
    ok, gate = _exp_gate(exp_general(x), exp_general(y), tol)
    if not ok:
        return _fail(name, "exponentials differ; hypothesis not met",
                     {"exp_gate": gate}, {"exp_gate": tol.gate})

    e1 = spectral_measure(dec_x, HLine(math.pi), tol=tol)
    em1 = spectral_measure(dec_x, HLine(-math.pi), tol=tol)
    f1 = spectral_measure(dec_y, HLine(math.pi), tol=tol)
    fm1 = spectral_measure(dec_y, HLine(-math.pi), tol=tol)
    top_empty = frob(e1) <= tol.gate
    bottom_empty = frob(em1) <= tol.gate
    if not (top_empty or bottom_empty):
        return _fail(name, "spectrum of X meets both boundary lines; "
                           "no case applies",
                     {"exp_gate": gate}, {"exp_gate": tol.gate})

    residuals = {"exp_gate": gate,
                 "commutator": _rel(frob(commutator(x, y)), frob(x), frob(y))}
    tols = {"exp_gate": tol.gate, "commutator": tol.check}
    cases = []
    if top_empty:
        cases.append("top line empty")
        residuals["difference_top"] = _rel(frob((x - y) + TWO_PI * 1j * f1),
                                           frob(x))
        tols["difference_top"] = tol.check
    if bottom_empty:
        cases.append("bottom line empty")
        residuals["difference_bottom"] = _rel(frob((x - y) - TWO_PI * 1j * fm1),
                                              frob(x))
        tols["difference_bottom"] = tol.check
    if top_empty and bottom_empty:
        cases.append("both empty: X = Y")
        residuals["equality"] = _rel(frob(x - y), frob(x))
        tols["equality"] = tol.check

    passed = all(residuals[k] <= tols[k] for k in residuals)
    return CheckReport(check_name=name, passed=passed, hypothesis_met=True,
                       residuals=residuals, tolerances=tols,
                       notes="; ".join(cases))


def check_congruence_free(dec_x: SpectralDecomposition, *,
                          tol: Tolerances = DEFAULT_TOL) -> CheckReport:
    """No two eigenvalues of a self-adjoint matrix differ by a nonzero
    multiple of 2*pi (within the cluster radius)."""
    name = "congruence_free"
    scale = math.sqrt(sum(c.mult * abs(c.lam) ** 2 for c in dec_x.clusters))
    if any(abs(lam.imag) > tol.boundary for lam in dec_x.eigenvalues):
        return _fail(name, "input must be self-adjoint (real spectrum)")
    radius = tol.cluster * max(1.0, scale)
    nearest = math.inf
    values = [lam.real for lam in dec_x.eigenvalues]
    for i, a in enumerate(values):
        for b in values[i + 1:]:
            gap = abs(a - b)
            k = round(gap / TWO_PI)
            if k != 0:
                nearest = min(nearest, abs(gap - TWO_PI * k))
    free = nearest > radius
    residual = 0.0 if math.isinf(nearest) else nearest
    return CheckReport(
        check_name=name, passed=free, hypothesis_met=True,
        residuals={"nearest_congruence": residual},
        tolerances={"nearest_congruence": radius},
        notes="passes when every nonzero 2*pi-translate of the spectrum "
              "stays farther than the cluster radius from the spectrum")


def check_double_commutant(x, y, *, tol: Tolerances = DEFAULT_TOL) -> CheckReport:
    """Every spectral projection of a congruence-free self-adjoint X lies
    in the double commutant of Y when exp(iX) = exp(Y); in particular X
    and Y commute."""
    name = "double_commutant"
    x = as_square_matrix(x)
    y = as_square_matrix(y)
    if not _is_hermitian(x, tol):
        return _fail(name, "X must be self-adjoint")
    ok, gate = _exp_gate(exp_general(1j * x), exp_general(y), tol)
    if not ok:
        return _fail(name, "exp(iX) and exp(Y) differ; hypothesis not met",
                     {"exp_gate": gate}, {"exp_gate": tol.gate})
    dec_x = normal_eig(x, tol=tol)
    gatecheck = check_congruence_free(dec_x, tol=tol)
    if not gatecheck.passed:
        return _fail(name, "spectrum is not 2*pi-congruence-free; "
                           "hypothesis not met",
                     {"exp_gate": gate}, {"exp_gate": tol.gate})

    basis = commutant_basis(y, tol=tol)
    worst = 0.0
    for c in dec_x.clusters:
        _, res = in_double_commutant(c.proj, y, tol=tol, basis=basis)
        worst = max(worst, res)
    r_comm = _rel(frob(commutator(x, y)), frob(x), frob(y))
    residuals = {"exp_gate": gate, "double_commutant": worst,
                 "commutator": r_comm}
    tols = {"exp_gate": tol.gate, "double_commutant": tol.check,
            "commutator": tol.check}
    passed = all(residuals[k] <= tols[k] for k in residuals)
    return CheckReport(check_name=name, passed=passed, hypothesis_met=True,
                       residuals=residuals, tolerances=tols,
                       notes=_FINITE_DIM_NOTE)


def check_one_boundary_eigenvalue(x, y, *,
                                  tol: Tolerances = DEFAULT_TOL) -> CheckReport:
    """X and Y commute when exp(iX) = exp(Y), Y is normal with spectrum
    in the strip, and at most one eigenvalue of the self-adjoint X is an
    odd multiple of pi."""
    name = "one_boundary_eigenvalue"
    x = as_square_matrix(x)
    y = as_square_matrix(y)
    if not _is_hermitian(x, tol):
        return _fail(name, "X must be self-adjoint")
    if not is_normal(y, tol=tol):
        return _fail(name, "Y must be normal")
    if not _spectrum_in_strip(normal_eig(y, tol=tol), tol):
        return _fail(name, "spectrum of Y must lie in |Im z| <= pi")
    ok, gate = _exp_gate(exp_general(1j * x), exp_general(y), tol)
    if not ok:
        return _fail(name, "exp(iX) and exp(Y) differ; hypothesis not met",
                     {"exp_gate": gate}, {"exp_gate": tol.gate})
    dec_x = normal_eig(x, tol=tol)
    radius = tol.cluster * max(1.0, frob(x))
    odd_hits = sum(1 for lam in dec_x.eigenvalues
                   if _odd_pi_distance(lam.real) <= radius)
    if odd_hits > 1:
        return _fail(name, f"{odd_hits} distinct odd-pi eigenvalues; "
                           "hypothesis not met",
                     {"exp_gate": gate}, {"exp_gate": tol.gate})
    r = _rel(frob(commutator(x, y)), frob(x), frob(y))
    return CheckReport(
        check_name=name, passed=r <= tol.check, hypothesis_met=True,
        residuals={"exp_gate": gate, "commutator": r},
        tolerances={"exp_gate": tol.gate, "commutator": tol.check},
        notes=_FINITE_DIM_NOTE)


def check_y_in_bicommutant_of_exp(x, y, *,
                                  tol: Tolerances = DEFAULT_TOL) -> CheckReport:
    """Y lies in the double commutant of exp(iX) when exp(iX) = exp(Y),
    Y is normal with spectrum in the strip, and no eigenvalue of the
    self-adjoint X is an odd multiple of pi. Also verifies the folded
    form of X reproduces Y (through multiplication by i)."""
    name = "y_in_bicommutant_of_exp"
    x = as_square_matrix(x)
    y = as_square_matrix(y)
    if not _is_hermitian(x, tol):
        return _fail(name, "X must be self-adjoint")
    if not is_normal(y, tol=tol):
        return _fail(name, "Y must be normal")
    if not _spectrum_in_strip(normal_eig(y, tol=tol), tol):
        return _fail(name, "spectrum of Y must lie in |Im z| <= pi")
    exp_ix = exp_general(1j * x)
    ok, gate = _exp_gate(exp_ix, exp_general(y), tol)
    if not ok:
        return _fail(name, "exp(iX) and exp(Y) differ; hypothesis not met",
                     {"exp_gate": gate}, {"exp_gate": tol.gate})
    dec_x = normal_eig(x, tol=tol)
    radius = tol.cluster * max(1.0, frob(x))
    if any(_odd_pi_distance(lam.real) <= radius for lam in dec_x.eigenvalues):
        return _fail(name, "an eigenvalue of X is an odd multiple of pi; "
                           "hypothesis not met",
                     {"exp_gate": gate}, {"exp_gate": tol.gate})

    _, r_bicomm = in_double_commutant(y, exp_ix, tol=tol)
    folded = borel_calculus(
        dec_x, lambda lam: 1j * _fold_branch(lam.real, tol.on_feature)[1])
    r_fold = _rel(frob(folded - y), frob(y))
    residuals = {"exp_gate": gate, "double_commutant": r_bicomm,
                 "fold_identity": r_fold}
    tols = {"exp_gate": tol.gate, "double_commutant": tol.check,
            "fold_identity": tol.check}
    passed = all(residuals[k] <= tols[k] for k in residuals)
    return CheckReport(check_name=name, passed=passed, hypothesis_met=True,
                       residuals=residuals, tolerances=tols,
                       notes=_FINITE_DIM_NOTE)


def check_kurepa(y, *, tol: Tolerances = DEFAULT_TOL) -> CheckReport:
    """The principal-log splitting of Y reconstructs it, commutes, and
    carries integer branch weights whenever exp(Y) is normal."""
    name = "kurepa"
    y = as_square_matrix(y)
    try:
        dec = kurepa_decompose(y, tol=tol)
    except (ExpNotNormal, Singular) as exc:
        return _fail(name, f"hypothesis not met: {exc}")
    r_recon = _rel(frob(dec.reconstruct() - y), frob(y))
    residuals = {"reconstruction": r_recon,
                 "commute": dec.commute_residual,
                 "integer_spectrum": dec.integer_spectrum_residual}
    tols = {"reconstruction": tol.check, "commute": tol.check,
            "integer_spectrum": tol.integer}
    passed = all(residuals[k] <= tols[k] for k in residuals)
    return CheckReport(check_name=name, passed=passed, hypothesis_met=True,
                       residuals=residuals, tolerances=tols)

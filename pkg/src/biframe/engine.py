"""Biframe operators, optimal bounds, classification and reconstruction.

For families ``Xi`` and ``Phi`` on the same finite measure the biframe
operator is

    T_{Xi,Phi} xi = sum_i mu_i <xi, Xi_i> Phi_i,

so ``<T xi, xi>`` is the mixed quadratic form whose two-sided bounds
define a biframe. The optimal bounds are the extreme eigenvalues of the
Hermitian part of ``T``.
"""

from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction

import numpy as np

from . import linalg
from ._validation import check_operator, check_vector
from .exceptions import DimensionMismatchError, NumericalInconsistencyError, SingularOperatorError
from .family import analysis_map, check_compatible, synthesis_map

ADJOINT_TOL = 1e-12
BOUND_SYMMETRY_TOL = 1e-10


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared by the classification routines.

    ``positivity`` is relative: a pair is a biframe when its lower bound
    exceeds ``positivity * max(1, ||T||)``.
    """

    positivity: float = 1e-10
    parseval: float = 1e-8
    self_adjoint: float = 1e-10
    cond_max: float = 1e12
    duality: float = 1e-9
    reconstruction: float = 1e-9
    claim: float = 1e-6

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not value > 0:
                raise ValueError(f"tolerance {name!r} must be positive, got {value!r}")

    def updated(self, **overrides):
        unknown = set(overrides) - set(asdict(self))
        if unknown:
            raise ValueError(f"unknown tolerance(s): {sorted(unknown)}")
        return replace(self, **{k: float(v) for k, v in overrides.items()})

    def to_dict(self):
        return asdict(self)


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class ClaimCheck:
    """A published value compared against the computed one."""

    name: str
    claimed: object
    computed: object
    match: bool

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class BiframeReport:
    lower_bound_C: float
    upper_bound_D: float
    operator: np.ndarray
    hermitian_spectrum: np.ndarray
    is_bessel_pair: bool
    is_biframe: bool
    is_parseval: bool
    is_pair_frame: bool
    self_adjoint_defect: float
    tolerances: Tolerances
    claims: tuple = ()
    extras: dict = field(default_factory=dict)

    @property
    def bounds(self):
        return self.lower_bound_C, self.upper_bound_D

    @property
    def claims_match(self):
        return all(c.match for c in self.claims)

    def with_claims(self, claims):
        return replace(self, claims=self.claims + tuple(claims))

    def with_extras(self, **extras):
        merged = dict(self.extras)
        merged.update(extras)
        return replace(self, extras=merged)

    def to_dict(self):
        return {
            "lower_bound_C": self.lower_bound_C,
            "upper_bound_D": self.upper_bound_D,
            "operator": self.operator,
            "hermitian_spectrum": self.hermitian_spectrum,
            "is_bessel_pair": self.is_bessel_pair,
            "is_biframe": self.is_biframe,
            "is_parseval": self.is_parseval,
            "is_pair_frame": self.is_pair_frame,
            "self_adjoint_defect": self.self_adjoint_defect,
            "tolerances": self.tolerances.to_dict(),
            "claims": [c.to_dict() for c in self.claims],
            "extras": dict(self.extras),
        }


def _rel_diff(A, B):
    return linalg.operator_norm(np.asarray(A) - np.asarray(B)) / max(1.0, linalg.operator_norm(B))


def assemble_biframe_operator(xi, phi):
    """Matrix of ``T_{Xi,Phi}``: ``sum_i mu_i Phi_i conj(Xi_i)^T``.

    Examples
    --------
    >>> from biframe.family import VectorFamily
    >>> from biframe.measure import make_counting_measure
    >>> e = VectorFamily(make_counting_measure(2), np.eye(2))
    >>> assemble_biframe_operator(e, e)
    array([[1., 0.],
           [0., 1.]])
    """
    check_compatible(xi, phi)
    w = xi.space.weights
    return (phi.vectors.T * w) @ xi.vectors.conj()


def frame_operator(xi):
    """``T_Xi = T_{Xi,Xi}``, self-adjoint and positive semidefinite."""
    T = assemble_biframe_operator(xi, xi)
    return 0.5 * (T + linalg.adjoint(T))


def biframe_bounds(T):
    """Optimal ``(C, D)`` with ``C ||xi||^2 <= Re <T xi, xi> <= D ||xi||^2``."""
    T = check_operator(T)
    try:
        eigs = linalg.hermitian_spectrum(T)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(f"eigenvalue solver failed: {exc}") from exc
    return float(eigs[0]), float(eigs[-1])


def classify_operator(T, tolerances=DEFAULT_TOLERANCES):
    """Build a :class:`BiframeReport` from an already assembled operator."""
    T = check_operator(T)
    tol = tolerances
    spectrum = linalg.hermitian_spectrum(T)
    C, D = float(spectrum[0]), float(spectrum[-1])
    nrm = linalg.operator_norm(T)
    n = T.shape[0]
    is_biframe = bool(C > tol.positivity * max(1.0, nrm))
    is_parseval = bool(linalg.operator_norm(T - np.eye(n)) <= tol.parseval) and is_biframe
    return BiframeReport(
        lower_bound_C=C,
        upper_bound_D=D,
        operator=T,
        hermitian_spectrum=spectrum,
        is_bessel_pair=bool(np.isfinite(nrm)),
        is_biframe=is_biframe,
        is_parseval=is_parseval,
        is_pair_frame=bool(linalg.condition_number(T) <= tol.cond_max),
        self_adjoint_defect=linalg.self_adjoint_defect(T),
        tolerances=tol,
    )


def classify_pair(xi, phi, tolerances=DEFAULT_TOLERANCES):
    """Assemble ``T_{Xi,Phi}`` and classify the pair.

    ``is_biframe`` holds when the lower bound is strictly positive (above the
    positivity tolerance); ``is_pair_frame`` when ``T`` is invertible.
    """
    return classify_operator(assemble_biframe_operator(xi, phi), tolerances)


def _as_fraction_float(value):
    if isinstance(value, str):
        return float(Fraction(value.strip()))
    return float(value)


def values_match(claimed, computed, tol):
    """Compare a published value with a computed one.

    Booleans must agree exactly; numbers (or fraction strings such as
    ``"1/3"``) within ``tol * max(1, |claimed|)``; lists elementwise.
    """
    if isinstance(claimed, bool) or isinstance(computed, (bool, np.bool_)):
        return bool(claimed) == bool(computed)
    if isinstance(claimed, (list, tuple)):
        if isinstance(computed, np.ndarray):
            computed = computed.tolist()
        return len(claimed) == len(computed) and all(
            values_match(c, v, tol) for c, v in zip(claimed, computed, strict=True)
        )
    value = _as_fraction_float(claimed)
    return bool(abs(value - float(computed)) <= tol * max(1.0, abs(value)))


def normalize_claim(claimed):
    if isinstance(claimed, (list, tuple)):
        return [normalize_claim(c) for c in claimed]
    if isinstance(claimed, (bool, np.bool_)):
        return bool(claimed)
    return _as_fraction_float(claimed)


def compare_claims(report, expected, tol=None):
    """Attach published-value comparisons to ``report``.

    ``expected`` may contain ``bounds`` (a pair, entries may be strings such
    as ``"1/3"``), either bound on its own, or any boolean report flag such
    as ``is_biframe``.
    """
    tol = report.tolerances.claim if tol is None else tol
    claims = []
    for key, claimed in expected.items():
        if key == "bounds":
            computed = [report.lower_bound_C, report.upper_bound_D]
        elif hasattr(report, key) and (key.startswith("is_") or key.endswith(("_C", "_D"))):
            computed = getattr(report, key)
        else:
            raise ValueError(f"unsupported claim key {key!r}")
        claims.append(
            ClaimCheck(key, normalize_claim(claimed), computed, values_match(claimed, computed, tol))
        )
    return report.with_claims(claims)


def swap_check(xi, phi, tolerances=DEFAULT_TOLERANCES):
    """``(Xi, Phi)`` and ``(Phi, Xi)`` share bounds since ``T_{Phi,Xi} = T_{Xi,Phi}*``."""
    T = assemble_biframe_operator(xi, phi)
    T_swapped = assemble_biframe_operator(phi, xi)
    adjoint_ok = _rel_diff(T_swapped, linalg.adjoint(T)) <= ADJOINT_TOL
    C1, D1 = biframe_bounds(T)
    C2, D2 = biframe_bounds(T_swapped)
    scale = max(1.0, abs(C1), abs(D1))
    bounds_ok = abs(C1 - C2) <= BOUND_SYMMETRY_TOL * scale and abs(D1 - D2) <= BOUND_SYMMETRY_TOL * scale
    return bool(adjoint_ok and bounds_ok)


def _require_invertible(T, tolerances, what="biframe operator"):
    c = linalg.condition_number(T)
    if not c <= tolerances.cond_max:
        raise SingularOperatorError(
            f"{what} is numerically singular (condition number {c:.3e} > {tolerances.cond_max:.1e})"
        )


def reconstruct(xi, phi, x, side="right", tolerances=DEFAULT_TOLERANCES):
    """Recover ``x`` from its biframe coefficients.

    ``side="left"`` uses ``sum mu <x, T_{Phi,Xi}^{-1} Xi_i> Phi_i`` and
    ``side="right"`` uses ``sum mu <x, Xi_i> T_{Xi,Phi}^{-1} Phi_i``.
    """
    x = check_vector(x, name="x")
    T = assemble_biframe_operator(xi, phi)
    _require_invertible(T, tolerances)
    if side == "left":
        dual = np.linalg.solve(linalg.adjoint(T), xi.vectors.T).T
        coeffs = dual.conj() @ x
        return synthesis_map(phi, coeffs)
    if side == "right":
        dual = np.linalg.solve(T, phi.vectors.T).T
        coeffs = analysis_map(xi, x)
        return (xi.space.weights * coeffs) @ dual
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def biframe_coefficients(xi, phi, x, tolerances=DEFAULT_TOLERANCES):
    """Coefficients ``<x, T_{Xi,Phi}^{-1} Xi_i>``.

    When ``T`` is self-adjoint, synthesizing these against ``Phi`` returns
    ``x``; in general the reconstruction-exact choice is
    ``reconstruct(..., side="left")``.
    """
    x = check_vector(x, name="x")
    T = assemble_biframe_operator(xi, phi)
    _require_invertible(T, tolerances)
    if x.shape[0] != xi.dim:
        raise DimensionMismatchError(f"x has dimension {x.shape[0]}, families have {xi.dim}")
    transformed = np.linalg.solve(T, xi.vectors.T).T
    return transformed.conj() @ x


def controlled_frame_check(xi, P, Q=None, tolerances=DEFAULT_TOLERANCES):
    """Classify ``Xi`` as a ``P``-controlled or ``(P, Q)``-controlled frame.

    Without ``Q`` the pair ``(Xi, P Xi)`` is classified; with ``Q`` the pair
    ``(P Xi, Q Xi)``.
    """
    P = check_operator(P, name="P", dim=xi.dim)
    if Q is None:
        return classify_pair(xi, xi.map(P, label=f"P({xi.label})"), tolerances)
    Q = check_operator(Q, name="Q", dim=xi.dim)
    return classify_pair(
        xi.map(P, label=f"P({xi.label})"), xi.map(Q, label=f"Q({xi.label})"), tolerances
    )


def dual_relation_check(xi, phi, tolerances=DEFAULT_TOLERANCES, n_samples=32, seed=0):
    """True iff ``xi = sum mu <xi, Phi_i> Xi_i`` for every ``xi``.

    The equivalent forms (synthesis with the roles swapped, and the
    inner-product identity on ``n_samples`` random pairs) are evaluated too;
    a disagreement raises ``NumericalInconsistencyError``.
    """
    n = xi.dim
    eye = np.eye(n)
    res_i = _rel_diff(assemble_biframe_operator(phi, xi), eye)
    res_ii = _rel_diff(assemble_biframe_operator(xi, phi), eye)
    cond_i = res_i <= tolerances.duality
    cond_ii = res_ii <= tolerances.duality

    rng = np.random.default_rng(seed)
    complex_field = xi.field == "complex"
    worst = 0.0
    for _ in range(n_samples):
        u = rng.standard_normal(n)
        v = rng.standard_normal(n)
        if complex_field:
            u = u + 1j * rng.standard_normal(n)
            v = v + 1j * rng.standard_normal(n)
        lhs = np.vdot(v, u)
        rhs = np.sum(xi.space.weights * analysis_map(xi, u) * np.conj(analysis_map(phi, v)))
        worst = max(worst, abs(lhs - rhs) / (np.linalg.norm(u) * np.linalg.norm(v)))
    cond_iii = worst <= tolerances.duality

    if cond_i != cond_ii or (cond_i and not cond_iii):
        raise NumericalInconsistencyError(
            f"duality conditions disagree: residuals {res_i:.3e}, {res_ii:.3e}, sampled {worst:.3e}"
        )
    return bool(cond_i)


def g_dual_check(xi, phi, A, tolerances=DEFAULT_TOLERANCES):
    """True iff ``xi = sum mu <A xi, Phi_i> Xi_i``, i.e. ``T_{Phi,Xi} A = I``."""
    A = check_operator(A, name="A", dim=xi.dim)
    _require_invertible(A, tolerances, what="A")
    T = assemble_biframe_operator(phi, xi)
    return bool(_rel_diff(T @ A, np.eye(xi.dim)) <= tolerances.duality)


def quadratic_form(xi, phi, x):
    """``sum_i mu_i <x, Xi_i> <Phi_i, x>`` evaluated directly on the nodes."""
    x = check_vector(x, name="x")
    a = analysis_map(xi, x)
    b = np.conj(analysis_map(phi, x))
    return np.sum(xi.space.weights * a * b)


__all__ = [
    "BiframeReport",
    "ClaimCheck",
    "DEFAULT_TOLERANCES",
    "Tolerances",
    "assemble_biframe_operator",
    "biframe_bounds",
    "biframe_coefficients",
    "classify_operator",
    "classify_pair",
    "compare_claims",
    "values_match",
    "controlled_frame_check",
    "dual_relation_check",
    "frame_operator",
    "g_dual_check",
    "quadratic_form",
    "reconstruct",
    "swap_check",
]

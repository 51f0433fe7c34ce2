"""Riesz bases, biframe-Riesz (b-Riesz) bases and operator factorizations.

Riesz-type checks only make sense for indexed families, so they require a
counting measure with as many nodes as the space has dimensions.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from ._validation import check_operator
from .engine import (
    DEFAULT_TOLERANCES,
    assemble_biframe_operator,
    classify_pair,
    frame_operator,
)
from .exceptions import (
    BadSpecError,
    DimensionMismatchError,
    NotOrthonormalError,
    NotPositiveDefiniteError,
    NumericalInconsistencyError,
    SingularOperatorError,
)
from .family import VectorFamily, check_compatible

SPEC_SUM_TOL = 1e-12
SPEC_INVERSE_TOL = 1e-10
FACTOR_RESIDUAL_TOL = 1e-10
TRANSFORM_TARGET_TOL = 1e-9
ORTHONORMAL_TOL = 1e-10
RELATION_TOL = 1e-9


@dataclass(frozen=True)
class FactorizationSpec:
    """Exponents ``a + b = 1``, ``c + d = 1`` and operators with ``Top W* = I``."""

    a: float
    b: float
    c: float
    d: float
    W: np.ndarray
    Top: np.ndarray

    @classmethod
    def balanced(cls, n, W=None, Top=None):
        """All exponents 1/2; ``W`` and ``Top`` default to the identity."""
        W = np.eye(n) if W is None else W
        Top = W if Top is None else Top
        return cls(0.5, 0.5, 0.5, 0.5, W, Top)

    def validate(self, dim=None):
        if abs(self.a + self.b - 1.0) > SPEC_SUM_TOL:
            raise BadSpecError(f"a + b must equal 1, got {self.a + self.b!r}")
        if abs(self.c + self.d - 1.0) > SPEC_SUM_TOL:
            raise BadSpecError(f"c + d must equal 1, got {self.c + self.d!r}")
        W = check_operator(self.W, name="W", dim=dim)
        Top = check_operator(self.Top, name="Top", dim=W.shape[0])
        defect = linalg.operator_norm(Top @ linalg.adjoint(W) - np.eye(W.shape[0]))
        if defect > SPEC_INVERSE_TOL:
            raise BadSpecError(f"Top W* must equal I, defect {defect:.3e}")
        return W, Top

    def to_dict(self):
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d, "W": self.W, "Top": self.Top}


@dataclass(frozen=True)
class BRieszCertificate:
    is_b_riesz: bool
    U: np.ndarray
    basis: VectorFamily
    residual: float

    def to_dict(self):
        return {
            "is_b_riesz": self.is_b_riesz,
            "U": self.U,
            "basis": None if self.basis is None else self.basis.vectors,
            "residual": self.residual,
        }


def _require_counting(*families):
    for fam in families:
        if fam.space.kind != "counting" or not np.all(fam.space.weights == 1.0):
            raise DimensionMismatchError(
                f"family {fam.label!r} must be indexed by a counting measure"
            )


def _require_square_index(*families):
    _require_counting(*families)
    for fam in families:
        if len(fam) != fam.dim:
            raise DimensionMismatchError(
                f"family {fam.label!r} has {len(fam)} members in dimension {fam.dim}"
            )


def _require_orthonormal(E):
    _require_square_index(E)
    gram = E.vectors.conj() @ E.vectors.T
    err = float(np.max(np.abs(gram - np.eye(len(E)))))
    if err > ORTHONORMAL_TOL:
        raise NotOrthonormalError(f"family {E.label!r} is not orthonormal (Gram error {err:.3e})")


def _require_pd(T, name, tol):
    if not linalg.is_positive_definite_self_adjoint(T, tol):
        raise NotPositiveDefiniteError(f"{name} must be self-adjoint positive definite")


def factorize_pair(S1, S2, spec):
    """Operators ``U, V`` with ``S2 = U S1 V*`` built from ``spec``.

    ``V = S2^c W S1^{-a}`` and ``U = S2^d Top S1^{-b}``. Returns
    ``(U, V, residual)`` with ``residual = ||S2 - U S1 V*|| / ||S2||``.

    Examples
    --------
    >>> spec = FactorizationSpec.balanced(2)
    >>> U, V, r = factorize_pair(np.diag([1.0, 4.0]), np.diag([9.0, 1.0]), spec)
    >>> np.diag(U)
    array([3. , 0.5])
    """
    S1 = check_operator(S1, name="S1")
    S2 = check_operator(S2, name="S2", dim=S1.shape[0])
    _require_pd(S1, "S1", linalg.DEFAULT_SELF_ADJOINT_TOL)
    _require_pd(S2, "S2", linalg.DEFAULT_SELF_ADJOINT_TOL)
    W, Top = spec.validate(dim=S1.shape[0])
    V = linalg.fractional_power(S2, spec.c) @ W @ linalg.fractional_power(S1, -spec.a)
    U = linalg.fractional_power(S2, spec.d) @ Top @ linalg.fractional_power(S1, -spec.b)
    residual = linalg.operator_norm(S2 - U @ S1 @ linalg.adjoint(V)) / linalg.operator_norm(S2)
    return U, V, residual


def transform_biframe(xi, phi, Q, spec, tolerances=DEFAULT_TOLERANCES):
    """Move a biframe with positive operator ``T`` onto one with operator ``Q``.

    ``S = Q^c W T^{-a}`` acts on ``Xi`` and ``U = Q^d Top T^{-b}`` on ``Phi``.
    The new operator ``T_{S Xi, U Phi}`` equals ``U T S*`` for any bounded
    ``S, U``, and equals ``Q`` because ``Top W* = I``. Both identities are
    checked; the residuals are stored in ``report.extras``.

    Returns ``(S Xi, U Phi, report)``.
    """
    T = assemble_biframe_operator(xi, phi)
    Q = check_operator(Q, name="Q", dim=xi.dim)
    _require_pd(T, "biframe operator", tolerances.self_adjoint)
    _require_pd(Q, "Q", tolerances.self_adjoint)
    W, Top = spec.validate(dim=xi.dim)

    S = linalg.fractional_power(Q, spec.c) @ W @ linalg.fractional_power(T, -spec.a)
    U = linalg.fractional_power(Q, spec.d) @ Top @ linalg.fractional_power(T, -spec.b)
    new_xi = xi.map(S, label=f"S({xi.label})")
    new_phi = phi.map(U, label=f"U({phi.label})")
    report = classify_pair(new_xi, new_phi, tolerances)

    T_new = report.operator
    identity_residual = pushforward_residual(T_new, U, T, S)
    target_residual = linalg.operator_norm(T_new - Q) / max(1.0, linalg.operator_norm(Q))
    if identity_residual > FACTOR_RESIDUAL_TOL or target_residual > TRANSFORM_TARGET_TOL:
        raise NumericalInconsistencyError(
            f"transformed operator check failed: U T S* residual {identity_residual:.3e}, "
            f"target residual {target_residual:.3e}"
        )
    report = report.with_extras(
        S=S, U=U, identity_residual=identity_residual, target_residual=target_residual
    )
    return new_xi, new_phi, report


def pushforward_residual(T_new, U, T, S):
    """Relative gap between ``T_{S Xi, U Phi}`` and ``U T S*``."""
    expected = U @ T @ linalg.adjoint(S)
    scale = max(1.0, linalg.operator_norm(U) * linalg.operator_norm(T) * linalg.operator_norm(S))
    return linalg.operator_norm(T_new - expected) / scale


def parseval_factor_check(S, U, E, tolerances=DEFAULT_TOLERANCES):
    """``(S E, U E)`` is Parseval iff ``U S* = I`` for an orthonormal basis ``E``.

    Both sides are evaluated independently; a disagreement raises
    ``NumericalInconsistencyError``.
    """
    _require_orthonormal(E)
    S = check_operator(S, name="S", dim=E.dim)
    U = check_operator(U, name="U", dim=E.dim)
    algebraic = linalg.operator_norm(U @ linalg.adjoint(S) - np.eye(E.dim)) <= tolerances.parseval
    report = classify_pair(E.map(S), E.map(U), tolerances)
    if algebraic != report.is_parseval:
        raise NumericalInconsistencyError(
            f"U S* = I test says {algebraic} but the pair classification says {report.is_parseval}"
        )
    return bool(algebraic)


def biorthogonality_check(xi, phi, tol=ORTHONORMAL_TOL):
    """Cross-Gram ``<Xi_i, Phi_j>`` equals the identity."""
    _require_counting(xi, phi)
    check_compatible(xi, phi)
    gram = xi.vectors @ phi.vectors.conj().T
    return bool(np.max(np.abs(gram - np.eye(len(xi)))) <= tol)


def b_riesz_check(xi, tolerances=DEFAULT_TOLERANCES):
    """Certify ``Xi_i = U e_i`` with ``U`` positive definite and ``e`` orthonormal.

    The certificate comes from the left polar decomposition ``F = P Q0`` of
    the matrix with columns ``Xi_i``: ``U = P`` and ``e_i`` are the columns of
    ``Q0``. Singular ``F`` yields ``is_b_riesz = False``.

    Examples
    --------
    >>> from biframe.sampling import family_from_columns
    >>> cert = b_riesz_check(family_from_columns(np.eye(2)))
    >>> cert.is_b_riesz, cert.residual
    (True, 0.0)
    """
    _require_square_index(xi)
    F = xi.column_matrix()
    if not linalg.condition_number(F) <= tolerances.cond_max:
        return BRieszCertificate(False, None, None, np.inf)
    P, Q0 = linalg.polar_decompose(F)
    basis = VectorFamily(xi.space, Q0.T, label=f"polar_basis({xi.label})")
    residual = float(np.max(np.linalg.norm(F - P @ Q0, axis=0)) / max(1.0, linalg.operator_norm(F)))

    report = classify_pair(basis, xi, tolerances)
    op_gap = linalg.operator_norm(report.operator - P) / max(1.0, linalg.operator_norm(P))
    if not report.is_biframe or op_gap > RELATION_TOL:
        raise NumericalInconsistencyError(
            f"polar certificate failed verification (biframe={report.is_biframe}, gap {op_gap:.3e})"
        )
    ok = linalg.is_positive_definite_self_adjoint(P, tolerances.self_adjoint)
    return BRieszCertificate(bool(ok), P, basis, residual)


def onb_class_check(E, xi, tolerances=DEFAULT_TOLERANCES):
    """Membership of ``Xi`` in the class of ``E``: ``Xi_k = U e_k``, ``U`` positive.

    ``U`` is solved from ``U e_k = Xi_k``. Membership requires ``U`` to be
    self-adjoint and positive definite, not merely to have a positive
    Hermitian part. Returns ``(member, U)``.
    """
    _require_orthonormal(E)
    _require_square_index(xi)
    check_compatible(E, xi)
    U = xi.column_matrix() @ E.column_matrix().conj().T
    return linalg.is_positive_definite_self_adjoint(U, tolerances.self_adjoint), U


def onb_uniqueness_check(xi, E, Delta, tolerances=DEFAULT_TOLERANCES):
    """If ``Xi`` belongs to the classes of both ``E`` and ``Delta`` then ``E = Delta``.

    Returns ``True`` when the implication holds (vacuously if ``Xi`` is not
    in both classes). The frame operator of ``Xi`` is verified to equal
    ``U^2``.
    """
    member_e, U = onb_class_check(E, xi, tolerances)
    member_d, V = onb_class_check(Delta, xi, tolerances)
    if not (member_e and member_d):
        return True
    T = frame_operator(xi)
    if linalg.operator_norm(T - U @ U) > FACTOR_RESIDUAL_TOL * max(1.0, linalg.operator_norm(T)):
        raise NumericalInconsistencyError("frame operator differs from U^2")
    same_op = linalg.operator_norm(U - V) <= RELATION_TOL * max(1.0, linalg.operator_norm(U))
    same_basis = np.max(np.abs(E.vectors - Delta.vectors)) <= RELATION_TOL
    return bool(same_op and same_basis)


def product_pair_check(E, U, V, tolerances=DEFAULT_TOLERANCES):
    """Classify ``(U E, V E)`` for an orthonormal basis ``E``.

    The biframe operator is ``V U*``. The report carries that identity's
    residual together with the positivity of the product ``V U`` so the two
    orderings can be compared; the verdict itself comes from the bounds.
    """
    _require_orthonormal(E)
    U = check_operator(U, name="U", dim=E.dim)
    V = check_operator(V, name="V", dim=E.dim)
    report = classify_pair(E.map(U, label="U E"), E.map(V, label="V E"), tolerances)
    expected = V @ linalg.adjoint(U)
    residual = linalg.operator_norm(report.operator - expected) / max(1.0, linalg.operator_norm(expected))
    if residual > FACTOR_RESIDUAL_TOL:
        raise NumericalInconsistencyError(f"T_(UE,VE) differs from V U* by {residual:.3e}")
    vu = linalg.positivity_report(V @ U)
    return report.with_extras(
        v_u_adjoint_residual=residual,
        vu_product=V @ U,
        vu_is_positive=vu.is_positive,
    )


def construct_dual_family(xi, Q, eta, tolerances=DEFAULT_TOLERANCES):
    """Build ``Phi`` with ``T_{Xi,Phi} = Q^{-1}`` from a Bessel family ``eta``.

    ``Phi_w = (T_Xi Q)^{-1} Xi_w + eta_w - sum_k mu_k <T_Xi^{-1} Xi_w, Xi_k> eta_k``.
    The eta-terms cancel in ``T_{Xi,Phi}`` whatever ``eta`` is.

    Returns ``(Phi, report)``; ``report.extras["residual"]`` is the relative
    gap to ``Q^{-1}``.
    """
    check_compatible(xi, eta)
    Q = check_operator(Q, name="Q", dim=xi.dim)
    _require_pd(Q, "Q", tolerances.self_adjoint)
    T = frame_operator(xi)
    if not linalg.condition_number(T) <= tolerances.cond_max:
        raise SingularOperatorError("family is not a frame: frame operator is singular")

    X = xi.vectors
    H = eta.vectors
    w = xi.space.weights
    Y = np.linalg.solve(T, X.T).T
    gram = Y @ X.conj().T
    Phi = np.linalg.solve(Q, Y.T).T + H - (gram * w) @ H
    phi = VectorFamily(xi.space, Phi, label=f"dual({xi.label})")

    report = classify_pair(xi, phi, tolerances)
    Q_inv = np.linalg.inv(Q)
    residual = linalg.operator_norm(report.operator - Q_inv) / max(1.0, linalg.operator_norm(Q_inv))
    if residual > TRANSFORM_TARGET_TOL:
        raise NumericalInconsistencyError(f"T_(Xi,Phi) differs from Q^-1 by {residual:.3e}")
    return phi, report.with_extras(residual=residual)


def canonical_dual(xi, tolerances=DEFAULT_TOLERANCES):
    """``T_Xi^{-1} Xi_w``."""
    T = frame_operator(xi)
    if not linalg.condition_number(T) <= tolerances.cond_max:
        raise SingularOperatorError("family is not a frame: frame operator is singular")
    return VectorFamily(xi.space, np.linalg.solve(T, xi.vectors.T).T, label=f"canonical_dual({xi.label})")


def riesz_transfer_check(xi, phi, tolerances=DEFAULT_TOLERANCES):
    """Riesz property passes from ``Xi`` to its biframe partner ``Phi``.

    Returns ``True`` when ``(Xi, Phi)`` is a biframe, both column matrices
    are invertible and ``Phi_w = T_{Xi,Phi} T_Xi^{-1} Xi_w``. A pair that is
    not a biframe, or whose families are singular, returns ``False``.
    """
    _require_square_index(xi, phi)
    check_compatible(xi, phi)
    report = classify_pair(xi, phi, tolerances)
    inv_xi = linalg.condition_number(xi.column_matrix()) <= tolerances.cond_max
    inv_phi = linalg.condition_number(phi.column_matrix()) <= tolerances.cond_max
    if not (report.is_biframe and inv_xi and inv_phi):
        return False
    T_xi = frame_operator(xi)
    predicted = report.operator @ np.linalg.solve(T_xi, xi.column_matrix())
    gap = np.max(np.abs(predicted - phi.column_matrix())) / max(1.0, np.max(np.abs(phi.vectors)))
    return bool(gap <= RELATION_TOL)


def bessel_pair_from_factors(E, Q, W, S, c, d, tolerances=DEFAULT_TOLERANCES):
    """Families ``Xi_w = Q^c W e_w`` and ``Phi_w = Q^d S e_w``.

    When ``S W* = I`` and ``c + d = 1`` their biframe operator is ``Q``.
    """
    _require_orthonormal(E)
    if abs(c + d - 1.0) > SPEC_SUM_TOL:
        raise BadSpecError(f"c + d must equal 1, got {c + d!r}")
    W = check_operator(W, name="W", dim=E.dim)
    S = check_operator(S, name="S", dim=E.dim)
    if linalg.operator_norm(S @ linalg.adjoint(W) - np.eye(E.dim)) > SPEC_INVERSE_TOL:
        raise BadSpecError("S W* must equal I")
    Q = check_operator(Q, name="Q", dim=E.dim)
    _require_pd(Q, "Q", tolerances.self_adjoint)
    xi = E.map(linalg.fractional_power(Q, c) @ W, label="Q^c W E")
    phi = E.map(linalg.fractional_power(Q, d) @ S, label="Q^d S E")
    return xi, phi


__all__ = [
    "BRieszCertificate",
    "FactorizationSpec",
    "b_riesz_check",
    "bessel_pair_from_factors",
    "biorthogonality_check",
    "canonical_dual",
    "construct_dual_family",
    "pushforward_residual",
    "factorize_pair",
    "onb_class_check",
    "onb_uniqueness_check",
    "parseval_factor_check",
    "product_pair_check",
    "riesz_transfer_check",
    "transform_biframe",
]

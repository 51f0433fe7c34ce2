"""Dense linear algebra over R or C used throughout the package.

Vectors are 1-d numpy arrays and operators are square 2-d arrays; the
scalar field is read off the dtype. The inner product is linear in its
first argument and conjugate-linear in its second.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import (
    check_operator,
    check_positive_tol,
    check_same_dim,
    check_vector,
)
from .exceptions import NotPositiveDefiniteError, NotSelfAdjointError, SingularOperatorError

DEFAULT_SELF_ADJOINT_TOL = 1e-10
DEFAULT_POSITIVITY_TOL = 1e-10


def inner(u, v):
    """``<u, v> = sum_i u_i * conj(v_i)``.

    A real vector paired with a complex one is read as a complex vector.

    >>> inner([1j, 0], [1, 0])
    1j
    """
    u = check_vector(u, name="u")
    v = check_vector(v, name="v")
    check_same_dim(u, v)
    out = np.vdot(v, u)
    return out.item() if np.iscomplexobj(out) else float(out)


def adjoint(T):
    return np.conj(np.asarray(T)).T


def operator_norm(T):
    """Largest singular value."""
    return float(np.linalg.norm(np.asarray(T), 2))


def condition_number(T):
    s = np.linalg.svd(np.asarray(T), compute_uv=False)
    if s[-1] == 0.0:
        return np.inf
    return float(s[0] / s[-1])


def self_adjoint_defect(T):
    """``||T - T*|| / ||T||`` in operator norm; 0 for the zero operator."""
    T = np.asarray(T)
    nrm = operator_norm(T)
    if nrm == 0.0:
        return 0.0
    return operator_norm(T - adjoint(T)) / nrm


def hermitian_part(T):
    """``(T + T*) / 2``, which carries the real part of ``<T xi, xi>``."""
    T = check_operator(T)
    H = 0.5 * (T + adjoint(T))
    return H


def hermitian_spectrum(T):
    """Ascending eigenvalues of the Hermitian part of ``T``."""
    return np.linalg.eigvalsh(hermitian_part(T))


@dataclass(frozen=True)
class PositivityReport:
    hermitian_min_eig: float
    hermitian_max_eig: float
    is_positive: bool
    is_self_adjoint: bool
    self_adjoint_defect: float

    def to_dict(self):
        return dict(self.__dict__)


def positivity_report(T, tol=DEFAULT_POSITIVITY_TOL, self_adjoint_tol=DEFAULT_SELF_ADJOINT_TOL):
    """Classify ``T`` by its quadratic form.

    ``T`` counts as positive when the Hermitian part is positive definite,
    i.e. its smallest eigenvalue exceeds ``tol``. Over the reals this does
    not force ``T`` to be symmetric.

    >>> r = positivity_report([[2, 1], [3, 4]])
    >>> r.is_positive, r.is_self_adjoint
    (True, False)
    """
    T = check_operator(T)
    tol = check_positive_tol(tol)
    try:
        eigs = hermitian_spectrum(T)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(f"eigenvalue solver failed on Hermitian part: {exc}") from exc
    defect = self_adjoint_defect(T)
    return PositivityReport(
        hermitian_min_eig=float(eigs[0]),
        hermitian_max_eig=float(eigs[-1]),
        is_positive=bool(eigs[0] > tol),
        is_self_adjoint=bool(defect <= self_adjoint_tol),
        self_adjoint_defect=float(defect),
    )


def quadratic_form_coefficients(T):
    """Coefficients ``(xx, xy, yy)`` of ``<T (x, y), (x, y)>`` for a real 2x2 ``T``."""
    T = np.asarray(T, dtype=np.float64)
    if T.shape != (2, 2):
        raise ValueError("quadratic_form_coefficients expects a real 2x2 matrix")
    return float(T[0, 0]), float(T[0, 1] + T[1, 0]), float(T[1, 1])


def _checked_eigh(T, tol):
    T = check_operator(T)
    tol = check_positive_tol(tol)
    defect = self_adjoint_defect(T)
    if defect > tol:
        raise NotSelfAdjointError(
            f"operator is not self-adjoint: relative defect {defect:.3e} > {tol:.1e}"
        )
    lam, E = np.linalg.eigh(hermitian_part(T))
    scale = max(1.0, float(np.max(np.abs(lam))))
    if lam[0] <= tol * scale:
        raise NotPositiveDefiniteError(
            f"operator is not positive definite: smallest eigenvalue {lam[0]:.3e}"
        )
    return lam, E


def fractional_power(T, a, tol=DEFAULT_SELF_ADJOINT_TOL):
    """``T**a`` for self-adjoint positive definite ``T`` via ``E diag(lam**a) E*``.

    Non-self-adjoint input is rejected rather than silently symmetrized.

    >>> fractional_power(np.diag([4.0, 9.0]), 0.5)
    array([[2., 0.],
           [0., 3.]])
    """
    lam, E = _checked_eigh(T, tol)
    out = (E * lam ** float(a)) @ adjoint(E)
    return out


def is_positive_definite_self_adjoint(T, tol=DEFAULT_SELF_ADJOINT_TOL):
    """Membership test for positive, bounded, boundedly invertible operators.

    Requires self-adjointness within ``tol`` (relative) and a smallest
    eigenvalue above ``tol * ||T||``.
    """
    T = check_operator(T)
    nrm = operator_norm(T)
    if nrm == 0.0 or self_adjoint_defect(T) > tol:
        return False
    return bool(hermitian_spectrum(T)[0] > tol * nrm)


def polar_decompose(F):
    """Left polar decomposition ``F = P @ Q`` from the SVD ``F = Us S Vs*``.

    ``P = Us S Us*`` is positive semidefinite and ``Q = Us Vs*`` is unitary.
    ``P`` is positive definite exactly when ``F`` is invertible.
    """
    F = check_operator(F, name="F")
    try:
        Us, s, Vh = np.linalg.svd(F)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(f"singular value decomposition failed: {exc}") from exc
    P = (Us * s) @ adjoint(Us)
    P = 0.5 * (P + adjoint(P))
    Q = Us @ Vh
    return P, Q


def neumann_invertibility_check(T):
    """Sufficient test ``||I - T|| < 1`` for invertibility.

    ``False`` means the criterion is inconclusive, not that ``T`` is singular.
    """
    T = check_operator(T)
    return bool(operator_norm(np.eye(T.shape[0]) - T) < 1.0)


def solve_invertible(T, B, cond_max):
    """Solve ``T X = B``; raise ``SingularOperatorError`` if ``cond(T) > cond_max``."""
    c = condition_number(T)
    if not c <= cond_max:
        raise SingularOperatorError(
            f"operator is numerically singular: condition number {c:.3e} > {cond_max:.1e}"
        )
    return np.linalg.solve(T, B)

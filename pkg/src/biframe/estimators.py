"""scikit-learn style wrapper around the biframe engine."""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import as_scalar_array, check_positive_tol
from .engine import Tolerances, classify_pair
from .exceptions import DimensionMismatchError
from .family import VectorFamily
from .linalg import adjoint, solve_invertible
from .measure import make_counting_measure, make_weighted_measure


class BiframeAnalyzer(TransformerMixin, BaseEstimator):
    """Classify a discretized pair and expand vectors in it.

    ``fit`` takes the analysis family as rows of ``X`` (one row per node),
    an optional synthesis family of the same shape and optional positive
    node weights. ``transform`` maps vectors to the coefficients of the
    left reconstruction formula and ``inverse_transform`` synthesizes them
    back, so ``inverse_transform(transform(Z))`` returns ``Z`` whenever the
    biframe operator is invertible.

    Parameters
    ----------
    tolerance_positivity : float, default=1e-10
        Relative lower-bound threshold for the biframe verdict.
    tolerance_parseval : float, default=1e-8
        Threshold on ``||T - I||`` for the Parseval verdict.
    cond_max : float, default=1e12
        Largest condition number treated as invertible.

    Attributes
    ----------
    operator_ : ndarray of shape (n_features, n_features)
        Biframe operator ``sum_i w_i Phi_i <., Xi_i>``.
    lower_bound_, upper_bound_ : float
        Optimal biframe bounds.
    report_ : BiframeReport
    n_features_in_ : int

    Examples
    --------
    >>> import numpy as np
    >>> est = BiframeAnalyzer().fit(np.eye(3))
    >>> est.report_.is_parseval
    True
    >>> est.inverse_transform(est.transform([[1.0, 2.0, 3.0]]))
    array([[1., 2., 3.]])
    """

    def __init__(self, tolerance_positivity=1e-10, tolerance_parseval=1e-8, cond_max=1e12):
        self.tolerance_positivity = tolerance_positivity
        self.tolerance_parseval = tolerance_parseval
        self.cond_max = cond_max

    def _tolerances(self):
        return Tolerances(
            positivity=check_positive_tol(self.tolerance_positivity, "tolerance_positivity"),
            parseval=check_positive_tol(self.tolerance_parseval, "tolerance_parseval"),
            cond_max=check_positive_tol(self.cond_max, "cond_max"),
        )

    def fit(self, X, y=None, synthesis=None, sample_weight=None):
        X = as_scalar_array(X, name="X", ndim=2)
        Phi = X if synthesis is None else as_scalar_array(synthesis, name="synthesis", ndim=2)
        if Phi.shape != X.shape:
            raise DimensionMismatchError(f"synthesis has shape {Phi.shape}, X has {X.shape}")
        if sample_weight is None:
            space = make_counting_measure(X.shape[0])
        else:
            w = as_scalar_array(sample_weight, name="sample_weight", ndim=1)
            if w.shape[0] != X.shape[0]:
                raise DimensionMismatchError(f"{w.shape[0]} weights for {X.shape[0]} nodes")
            space = make_weighted_measure(np.arange(1.0, X.shape[0] + 1), w)

        dtype = np.result_type(X, Phi)
        self.xi_ = VectorFamily(space, X.astype(dtype), label="X")
        self.phi_ = VectorFamily(space, Phi.astype(dtype), label="synthesis")
        self.report_ = classify_pair(self.xi_, self.phi_, self._tolerances())
        self.operator_ = self.report_.operator
        self.lower_bound_, self.upper_bound_ = self.report_.bounds
        self.n_features_in_ = X.shape[1]
        return self

    def _check_features(self, Z, name):
        Z = as_scalar_array(Z, name=name, ndim=2)
        if Z.shape[1] != self.n_features_in_:
            raise DimensionMismatchError(f"{name} has {Z.shape[1]} features, expected {self.n_features_in_}")
        return Z

    def transform(self, X):
        """Coefficients ``<z, (T*)^{-1} Xi_i>`` for every row ``z``."""
        check_is_fitted(self, "operator_")
        Z = self._check_features(X, "X")
        # rows of Y are (T*)^{-1} Xi_i
        Y = solve_invertible(adjoint(self.operator_), self.xi_.vectors.T, self._tolerances().cond_max).T
        return Z @ Y.conj().T

    def inverse_transform(self, X):
        """Synthesize ``sum_i w_i c_i Phi_i`` from coefficient rows."""
        check_is_fitted(self, "operator_")
        C = as_scalar_array(X, name="X", ndim=2)
        if C.shape[1] != len(self.phi_):
            raise DimensionMismatchError(f"expected {len(self.phi_)} coefficients per row, got {C.shape[1]}")
        return (C * self.phi_.space.weights) @ self.phi_.vectors

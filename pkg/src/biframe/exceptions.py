"""Exception hierarchy for the biframe toolkit."""

import numpy as np


class BiframeError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(BiframeError, ValueError):
    """Vectors, families or operators have incompatible shapes or fields."""


class NotSelfAdjointError(BiframeError, np.linalg.LinAlgError):
    """An operator required to be self-adjoint is not (beyond tolerance)."""


class NotPositiveDefiniteError(BiframeError, np.linalg.LinAlgError):
    """An operator required to be positive definite is not."""


class SingularOperatorError(BiframeError, np.linalg.LinAlgError):
    """An operator required to be invertible fails the conditioning threshold."""


class BadSpecError(BiframeError, ValueError):
    """A factorization spec violates a + b = 1, c + d = 1 or Top W* = I."""


class NotOrthonormalError(BiframeError, ValueError):
    """A family that must be an orthonormal basis is not."""


class NumericalInconsistencyError(BiframeError, ArithmeticError):
    """Two computations that must agree mathematically disagree numerically."""


class ScenarioError(BiframeError, ValueError):
    """A scenario document is malformed or references undefined names."""

"""Input validation helpers.

scikit-learn's ``check_array`` rejects complex input, and complex Hilbert
spaces are a first-class case here, so the package carries its own small
set of checks.
"""

import numbers

import numpy as np

from .exceptions import DimensionMismatchError


def as_scalar_array(a, *, name="array", ndim=None, copy=False):
    """Convert ``a`` to a finite float64 or complex128 array.

    Integer and boolean input is promoted to float64. Complex input keeps
    its complex dtype even when every imaginary part is zero.
    """
    arr = np.array(a, copy=copy) if copy else np.asarray(a)
    if arr.dtype == object:
        raise DimensionMismatchError(f"{name} is ragged or non-numeric")
    if np.iscomplexobj(arr):
        arr = arr.astype(np.complex128, copy=False)
    else:
        arr = arr.astype(np.float64, copy=False)
    if ndim is not None and arr.ndim != ndim:
        raise DimensionMismatchError(
            f"{name} must be {ndim}-dimensional, got shape {arr.shape}"
        )
    if arr.size == 0:
        raise DimensionMismatchError(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise DimensionMismatchError(f"{name} contains non-finite entries")
    return arr


def check_vector(v, *, name="vector"):
    return as_scalar_array(v, name=name, ndim=1)


def check_operator(T, *, name="operator", dim=None):
    """Validate a dense square matrix, optionally of a given size."""
    T = as_scalar_array(T, name=name, ndim=2)
    if T.shape[0] != T.shape[1]:
        raise DimensionMismatchError(f"{name} must be square, got shape {T.shape}")
    if dim is not None and T.shape[0] != dim:
        raise DimensionMismatchError(
            f"{name} acts on dimension {T.shape[0]}, expected {dim}"
        )
    return T


def check_same_dim(u, v, names=("u", "v")):
    if u.shape[-1] != v.shape[-1]:
        raise DimensionMismatchError(
            f"{names[0]} has dimension {u.shape[-1]} but {names[1]} has {v.shape[-1]}"
        )


def check_positive_tol(tol, name="tol"):
    if not isinstance(tol, numbers.Real) or not tol > 0:
        raise ValueError(f"{name} must be a positive real, got {tol!r}")
    return float(tol)


def field_of(arr):
    return "complex" if np.iscomplexobj(arr) else "real"

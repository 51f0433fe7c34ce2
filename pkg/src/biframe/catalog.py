"""Named family and operator generators usable from scenario files."""

import numpy as np

from .family import VectorFamily, sample_family
from . import sampling


def example1_xi(w):
    return np.array([0.0, w])


def example1_phi(w):
    return np.array([w, 1.0])


# 2x2 diagonal matrices diag(a, b) embedded as (a, b) under the Hilbert-Schmidt inner product.
def example2_xi(w):
    return np.array([w, w / 2.0])


def example2_phi(w):
    return np.array([2.0 * w, w])


RIESZ_EXAMPLE_VECTORS = np.array([[1.0, -2.0], [-1.0, 0.0]])
RIESZ_EXAMPLE_ONB = np.array([[0.5, np.sqrt(3.0) / 2.0], [-np.sqrt(3.0) / 2.0, 0.5]])

_SYMBOLIC = {
    "example1_xi": example1_xi,
    "example1_phi": example1_phi,
    "example2_xi": example2_xi,
    "example2_phi": example2_phi,
}

FAMILY_GENERATORS = (
    "example1_xi",
    "example1_phi",
    "example2_xi",
    "example2_phi",
    "riesz_example",
    "riesz_example_onb",
    "onb",
    "random_positive",
    "random_invertible",
    "random_gaussian",
)

OPERATOR_GENERATORS = (
    "identity",
    "scalar",
    "diag",
    "rotation",
    "random_positive",
    "random_unitary",
    "random_invertible",
)


def _require_square(space, dim, name):
    if space.size != dim:
        raise ValueError(f"generator {name!r} needs a measure with {dim} nodes, got {space.size}")


def make_family(name, space, dim, field="real", seed=None, n=None):
    """Instantiate a catalog family on ``space``.

    Symbolic generators (``example*``) are sampled at the nodes. ``onb`` and
    the random matrix generators place the columns of an ``n x n`` matrix on
    a counting measure of size ``n``.
    """
    if name in _SYMBOLIC:
        if dim != 2:
            raise ValueError(f"generator {name!r} lives in dimension 2, scenario has {dim}")
        return sample_family(space, _SYMBOLIC[name], label=name)
    if name in ("riesz_example", "riesz_example_onb"):
        if dim != 2:
            raise ValueError(f"generator {name!r} lives in dimension 2, scenario has {dim}")
        _require_square(space, 2, name)
        vecs = RIESZ_EXAMPLE_VECTORS if name == "riesz_example" else RIESZ_EXAMPLE_ONB
        return VectorFamily(space, vecs, label=name)
    n = dim if n is None else int(n)
    if n != dim:
        raise ValueError(f"generator {name!r} with n={n} does not match dimension {dim}")
    rng = sampling.rng_from(seed)
    if name == "onb":
        _require_square(space, dim, name)
        vecs = np.eye(dim, dtype=np.complex128 if field == "complex" else np.float64)
        return VectorFamily(space, vecs, label=f"onb({dim})")
    if name == "random_positive":
        _require_square(space, dim, name)
        return VectorFamily(space, sampling.random_positive_definite(rng, dim, field).T, label=f"random_positive({seed})")
    if name == "random_invertible":
        _require_square(space, dim, name)
        return VectorFamily(space, sampling.random_invertible(rng, dim, field).T, label=f"random_invertible({seed})")
    if name == "random_gaussian":
        return sampling.random_family(rng, space, dim, field, label=f"random_gaussian({seed})")
    raise ValueError(f"unknown family generator {name!r}; known: {', '.join(FAMILY_GENERATORS)}")


def make_operator(name, dim, field="real", seed=None, value=None, values=None, angle=None):
    rng = sampling.rng_from(seed)
    dtype = np.complex128 if field == "complex" else np.float64
    if name == "identity":
        return np.eye(dim, dtype=dtype)
    if name == "scalar":
        return complex(value) * np.eye(dim) if field == "complex" else float(value) * np.eye(dim)
    if name == "diag":
        if values is None or len(values) != dim:
            raise ValueError(f"diag needs {dim} values")
        return np.diag(np.asarray(values, dtype=dtype))
    if name == "rotation":
        if dim != 2:
            raise ValueError("rotation is only defined in dimension 2")
        t = np.deg2rad(float(angle))
        return np.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]], dtype=dtype)
    if name == "random_positive":
        return sampling.random_positive_definite(rng, dim, field)
    if name == "random_unitary":
        return sampling.random_unitary(rng, dim, field)
    if name == "random_invertible":
        return sampling.random_invertible(rng, dim, field)
    raise ValueError(f"unknown operator generator {name!r}; known: {', '.join(OPERATOR_GENERATORS)}")

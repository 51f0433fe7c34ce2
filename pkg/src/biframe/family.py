"""Vector families sampled on the nodes of a measure space.

A family stores one vector per node as the rows of a ``(n_nodes, dim)``
array. Weak measurability is taken for granted: a finite sample is
measurable by construction.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import as_scalar_array, check_operator, check_vector, field_of
from .exceptions import DimensionMismatchError
from .measure import MeasureSpace


@dataclass(frozen=True, eq=False)
class VectorFamily:
    """Family ``omega -> Xi_omega`` materialized at the nodes of ``space``."""

    space: MeasureSpace
    vectors: np.ndarray
    label: str = ""

    def __post_init__(self):
        vectors = as_scalar_array(self.vectors, name="family vectors", ndim=2, copy=True)
        if vectors.shape[0] != self.space.size:
            raise DimensionMismatchError(
                f"family has {vectors.shape[0]} vectors but the measure has {self.space.size} nodes"
            )
        vectors.flags.writeable = False
        object.__setattr__(self, "vectors", vectors)

    @property
    def dim(self):
        return self.vectors.shape[1]

    @property
    def field(self):
        return field_of(self.vectors)

    def __len__(self):
        return self.vectors.shape[0]

    def __getitem__(self, i):
        return self.vectors[i]

    def column_matrix(self):
        """Matrix whose ``i``-th column is ``Xi_{omega_i}``."""
        return self.vectors.T.copy()

    def map(self, A, label=None):
        """Pointwise image ``omega -> A Xi_omega``."""
        A = check_operator(A, dim=self.dim)
        return VectorFamily(self.space, self.vectors @ A.T, label=label or f"op({self.label})")

    def scale(self, alpha, label=None):
        return VectorFamily(self.space, alpha * self.vectors, label=label or f"{alpha}*{self.label}")

    def with_label(self, label):
        return VectorFamily(self.space, self.vectors, label=label)


def sample_family(space, evaluator, label=""):
    """Evaluate ``evaluator(omega)`` at every node of ``space``.

    >>> from biframe.measure import make_counting_measure
    >>> fam = sample_family(make_counting_measure(2), lambda k: np.eye(2)[int(k) - 1])
    >>> fam.vectors
    array([[1., 0.],
           [0., 1.]])
    """
    rows = [np.atleast_1d(np.asarray(evaluator(w))) for w in space.nodes]
    dims = {r.shape for r in rows}
    if len(dims) != 1 or rows[0].ndim != 1:
        raise DimensionMismatchError(f"evaluator returned inconsistent shapes {sorted(dims)}")
    fields = {np.iscomplexobj(r) for r in rows}
    if len(fields) != 1:
        raise DimensionMismatchError("evaluator mixed real and complex vectors")
    return VectorFamily(space, np.vstack(rows), label=label)


def check_compatible(*families):
    """Raise unless all families share measure, dimension and field."""
    first = families[0]
    for other in families[1:]:
        if not first.space.same_as(other.space):
            raise DimensionMismatchError(
                f"families {first.label!r} and {other.label!r} live on different measure spaces"
            )
        if first.dim != other.dim:
            raise DimensionMismatchError(
                f"families {first.label!r} (dim {first.dim}) and {other.label!r} (dim {other.dim}) differ in dimension"
            )
        if first.field != other.field:
            raise DimensionMismatchError(
                f"families {first.label!r} and {other.label!r} live over different fields"
            )


def analysis_map(family, xi):
    """Coefficients ``<xi, Xi_omega>`` at each node.

    Real input against a complex family (or the reverse) is promoted to
    complex, as for :func:`biframe.linalg.inner`.
    """
    xi = check_vector(xi, name="xi")
    if xi.shape[0] != family.dim:
        raise DimensionMismatchError(f"xi has dimension {xi.shape[0]}, family has {family.dim}")
    return family.vectors.conj() @ xi


def synthesis_map(family, coefficients):
    """Weighted superposition ``sum_i mu_i c_i Phi_{omega_i}``."""
    c = np.asarray(coefficients)
    if c.ndim != 1 or c.shape[0] != len(family):
        raise DimensionMismatchError(
            f"expected {len(family)} coefficients, got shape {c.shape}"
        )
    return (family.space.weights * c) @ family.vectors

"""Finite surrogates for a measure space (Omega, mu).

A measure is a list of nodes with strictly positive weights. Continuous
intervals are replaced by a Gauss-Legendre rule; discrete index sets use
the counting measure.
"""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import DimensionMismatchError

DEFAULT_QUADRATURE_NODES = 16


@dataclass(frozen=True, eq=False)
class MeasureSpace:
    """Nodes ``omega_i`` with weights ``mu_i > 0``.

    ``kind`` is ``"counting"`` or ``"quadrature"``; quadrature measures also
    record ``interval`` and ``rule``. Instances are immutable: the arrays are
    flagged read-only on construction.
    """

    nodes: np.ndarray
    weights: np.ndarray
    kind: str = "counting"
    interval: tuple = None
    rule: str = None
    labels: tuple = field(default=None, repr=False)

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=np.float64)
        weights = np.array(self.weights, dtype=np.float64)
        if nodes.ndim != 1 or weights.ndim != 1 or nodes.shape != weights.shape:
            raise DimensionMismatchError("nodes and weights must be 1-d arrays of equal length")
        if nodes.size < 1:
            raise ValueError("a measure space needs at least one node")
        if not np.all(np.isfinite(weights)) or np.any(weights <= 0):
            raise ValueError("all weights must be finite and strictly positive")
        if self.kind not in ("counting", "quadrature"):
            raise ValueError(f"unknown measure kind {self.kind!r}")
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self):
        return self.nodes.size

    def __len__(self):
        return self.size

    @property
    def total_mass(self):
        return float(self.weights.sum())

    def same_as(self, other, rtol=0.0):
        """True when both measures share nodes and weights (up to ``rtol``)."""
        if self is other:
            return True
        if self.size != other.size:
            return False
        return bool(
            np.allclose(self.nodes, other.nodes, rtol=rtol, atol=0.0)
            and np.allclose(self.weights, other.weights, rtol=rtol, atol=0.0)
        )

    def to_dict(self):
        if self.kind == "quadrature":
            return {"kind": "quadrature", "interval": list(self.interval), "nodes": self.size}
        if self.kind == "counting" and np.all(self.weights == 1.0):
            return {"kind": "counting", "size": self.size}
        return {"kind": "weighted", "nodes": self.nodes.tolist(), "weights": self.weights.tolist()}


def make_uniform_quadrature(interval, node_count=DEFAULT_QUADRATURE_NODES):
    """Gauss-Legendre rule with ``node_count`` nodes mapped onto ``[a, b]``.

    Exact for polynomials of degree up to ``2 * node_count - 1``.

    Examples
    --------
    >>> m = make_uniform_quadrature((0.0, 1.0), 1)
    >>> float(m.nodes[0]), float(m.weights[0])
    (0.5, 1.0)
    """
    try:
        a, b = (float(x) for x in interval)
    except (TypeError, ValueError):
        raise ValueError(f"interval must be a pair of reals, got {interval!r}") from None
    if not (np.isfinite(a) and np.isfinite(b)) or not a < b:
        raise ValueError(f"invalid interval [{a}, {b}]: need finite a < b")
    if int(node_count) != node_count or node_count < 1:
        raise ValueError(f"node_count must be a positive integer, got {node_count!r}")
    x, w = np.polynomial.legendre.leggauss(int(node_count))
    half = 0.5 * (b - a)
    return MeasureSpace(
        nodes=half * x + 0.5 * (a + b),
        weights=half * w,
        kind="quadrature",
        interval=(a, b),
        rule="gauss-legendre",
    )


def make_counting_measure(size):
    """Counting measure on the index set ``1..size``."""
    if int(size) != size or size < 1:
        raise ValueError(f"size must be a positive integer, got {size!r}")
    size = int(size)
    return MeasureSpace(
        nodes=np.arange(1, size + 1, dtype=np.float64),
        weights=np.ones(size),
        kind="counting",
    )


def make_weighted_measure(nodes, weights):
    """Arbitrary finite positive measure; used for randomized instances."""
    return MeasureSpace(nodes=nodes, weights=weights, kind="counting")


def integrate(space, values):
    """Weighted sum ``sum_i mu_i * values[i]``.

    ``values`` has one entry per node: scalars give a scalar, vectors (rows)
    give a vector.
    """
    values = np.asarray(values)
    if values.ndim == 0 or values.shape[0] != space.size:
        raise DimensionMismatchError(
            f"expected {space.size} values (one per node), got shape {values.shape}"
        )
    out = np.tensordot(space.weights, values, axes=(0, 0))
    if out.ndim == 0:
        return out.item()
    return out

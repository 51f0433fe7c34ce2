"""Seeded random operators, measures and families.

Every function takes an explicit ``numpy.random.Generator``; nothing here
touches global RNG state.
"""

import numpy as np

from .family import VectorFamily
from .measure import make_counting_measure, make_weighted_measure

POSITIVE_SHIFT = 0.1


def rng_from(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def gaussian(rng, shape, field="real"):
    out = rng.standard_normal(shape)
    if field == "complex":
        out = (out + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    return out


def random_positive_definite(rng, n, field="real", shift=POSITIVE_SHIFT):
    """``G* G / n + shift * I`` for Gaussian ``G``."""
    G = gaussian(rng, (n, n), field)
    S = G.conj().T @ G / n + shift * np.eye(n)
    return 0.5 * (S + S.conj().T)


def random_unitary(rng, n, field="real"):
    """Haar-distributed unitary (orthogonal over R) via QR with phase fix."""
    Z = gaussian(rng, (n, n), field)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    phases = d / np.abs(d)
    return Q * phases


def random_invertible(rng, n, field="real", spread=(0.5, 2.0)):
    """``U diag(s) V`` with singular values drawn from ``spread``."""
    s = rng.uniform(*spread, size=n)
    return (random_unitary(rng, n, field) * s) @ random_unitary(rng, n, field)


def random_rank_deficient(rng, n, field="real", rank=None):
    rank = n - 1 if rank is None else rank
    s = rng.uniform(0.5, 2.0, size=n)
    s[rank:] = 0.0
    return (random_unitary(rng, n, field) * s) @ random_unitary(rng, n, field)


def random_measure(rng, n_nodes):
    """Finite measure with weights uniform on ``[0.1, 1]``."""
    return make_weighted_measure(np.arange(1, n_nodes + 1), rng.uniform(0.1, 1.0, size=n_nodes))


def random_family(rng, space, dim, field="real", label="random"):
    return VectorFamily(space, gaussian(rng, (space.size, dim), field), label=label)


def family_from_columns(F, label=""):
    """Counting-measure family whose vectors are the columns of ``F``."""
    F = np.asarray(F)
    return VectorFamily(make_counting_measure(F.shape[1]), F.T, label=label)

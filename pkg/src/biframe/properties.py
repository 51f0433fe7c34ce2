"""Seeded randomized checks of every module invariant.

Each invariant maps a ``numpy.random.Generator`` and a maximum dimension to
a non-negative residual; the suite records the worst residual over all
trials and compares it with the invariant's threshold. Trial ``t`` of
invariant ``k`` always draws from ``default_rng([seed, k, t])`` so any
failure can be replayed in isolation.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import engine, linalg, riesz, sampling
from .family import VectorFamily, analysis_map, synthesis_map
from .measure import integrate, make_counting_measure, make_uniform_quadrature
from .report import FAIL, PASS, CheckResult, RunReport


@dataclass(frozen=True)
class Invariant:
    name: str
    threshold: float
    func: object
    description: str = ""


INVARIANTS = []


def invariant(name, threshold):
    def register(func):
        INVARIANTS.append(Invariant(name, threshold, func, (func.__doc__ or "").strip()))
        return func

    return register


def _dim(rng, dim_max):
    return int(rng.integers(2, dim_max + 1))


def _field(rng):
    return "complex" if rng.random() < 0.5 else "real"


def _vec(rng, n, field):
    return sampling.gaussian(rng, n, field)


def _rel(A, B):
    return linalg.operator_norm(np.asarray(A) - np.asarray(B)) / max(1.0, linalg.operator_norm(B))


def _random_pair(rng, dim_max, max_nodes=64, field=None):
    n = _dim(rng, dim_max)
    field = field or _field(rng)
    space = sampling.random_measure(rng, int(rng.integers(1, max_nodes + 1)))
    xi = sampling.random_family(rng, space, n, field, "xi")
    phi = sampling.random_family(rng, space, n, field, "phi")
    return xi, phi


def _invertible_pair(rng, dim_max, field=None):
    """Random pair with a well-conditioned biframe operator."""
    n = _dim(rng, dim_max)
    field = field or _field(rng)
    for _ in range(100):
        space = sampling.random_measure(rng, int(rng.integers(n, 65)))
        xi = sampling.random_family(rng, space, n, field, "xi")
        phi = sampling.random_family(rng, space, n, field, "phi")
        if linalg.condition_number(engine.assemble_biframe_operator(xi, phi)) < 1e6:
            return xi, phi
    raise RuntimeError("could not draw a well-conditioned pair")


def _positive_pair(rng, dim_max, field=None):
    """Pair whose biframe operator is a random positive definite ``Q0``."""
    n = _dim(rng, dim_max)
    field = field or _field(rng)
    space = sampling.random_measure(rng, int(rng.integers(n, 65)))
    xi = sampling.random_family(rng, space, n, field, "xi")
    T_xi = engine.frame_operator(xi)
    Q0 = sampling.random_positive_definite(rng, n, field)
    phi = xi.map(Q0 @ np.linalg.inv(T_xi), label="phi")
    return xi, phi


def _onb(rng, n, field):
    return VectorFamily(make_counting_measure(n), sampling.random_unitary(rng, n, field).T, label="E")


# -- measure -----------------------------------------------------------------


@invariant("measure.linearity", 1e-12)
def _measure_linearity(rng, dim_max):
    """integrate(a f + g) = a integrate(f) + integrate(g)."""
    k = int(rng.integers(1, 33))
    space = make_uniform_quadrature(sorted(rng.uniform(-2, 2, size=2)) + np.array([0.0, 0.5]), k)
    f, g = rng.standard_normal(k), rng.standard_normal(k)
    a = rng.standard_normal()
    lhs = integrate(space, a * f + g)
    rhs = a * integrate(space, f) + integrate(space, g)
    scale = max(1.0, float(np.sum(space.weights * (abs(a * f) + abs(g)))))
    return abs(lhs - rhs) / scale


@invariant("measure.polynomial_exactness", 1e-12)
def _measure_exactness(rng, dim_max):
    """k-node Gauss-Legendre integrates monomials of degree <= 2k-1 exactly."""
    k = int(rng.integers(1, 21))
    a = rng.uniform(-1.5, 1.0)
    b = a + rng.uniform(0.1, 1.5)
    space = make_uniform_quadrature((a, b), k)
    worst = 0.0
    for p in range(2 * k):
        exact = (b ** (p + 1) - a ** (p + 1)) / (p + 1)
        scale = max(abs(a), abs(b)) ** p * (b - a)
        worst = max(worst, abs(integrate(space, space.nodes**p) - exact) / max(scale, abs(exact)))
    return worst


@invariant("measure.positivity", 0.0)
def _measure_positivity(rng, dim_max):
    """Non-negative integrands have non-negative integrals."""
    space = sampling.random_measure(rng, int(rng.integers(1, 65)))
    return max(0.0, -integrate(space, np.abs(rng.standard_normal(space.size))))


# -- linear core ---------------------------------------------------------------


@invariant("linalg.adjoint_identity", 1e-10)
def _adjoint_identity(rng, dim_max):
    """<T u, v> = <u, T* v>."""
    n, field = _dim(rng, dim_max), _field(rng)
    T = sampling.gaussian(rng, (n, n), field)
    u, v = _vec(rng, n, field), _vec(rng, n, field)
    lhs = linalg.inner(T @ u, v)
    rhs = linalg.inner(u, linalg.adjoint(T) @ v)
    return abs(lhs - rhs) / (linalg.operator_norm(T) * np.linalg.norm(u) * np.linalg.norm(v))


@invariant("linalg.hermitian_form", 1e-10)
def _hermitian_form(rng, dim_max):
    """Re <T x, x> = <H x, x> with H the Hermitian part."""
    n, field = _dim(rng, dim_max), _field(rng)
    T = sampling.gaussian(rng, (n, n), field)
    x = _vec(rng, n, field)
    H = linalg.hermitian_part(T)
    diff = abs(np.real(linalg.inner(T @ x, x)) - linalg.inner(H @ x, x))
    return float(diff) / (linalg.operator_norm(T) * np.linalg.norm(x) ** 2)


@invariant("linalg.complex_positive_is_self_adjoint", 1e-8)
def _complex_positive(rng, dim_max):
    """Over C, a real quadratic form with positive minimum forces T = T*."""
    n = _dim(rng, dim_max)
    if rng.random() < 0.5:
        T = sampling.random_positive_definite(rng, n, "complex")
    else:
        T = sampling.gaussian(rng, (n, n), "complex") + 3.0 * n * np.eye(n)
    samples = sampling.gaussian(rng, (64, n), "complex")
    forms = np.einsum("ij,ij->i", (T @ samples.T).T, samples.conj())
    real_form = np.max(np.abs(forms.imag)) <= 1e-12 * linalg.operator_norm(T) * np.max(
        np.sum(np.abs(samples) ** 2, axis=1)
    )
    report = linalg.positivity_report(T)
    if real_form and report.hermitian_min_eig > 0:
        return report.self_adjoint_defect
    return 0.0


@invariant("linalg.fractional_semigroup", 1e-10)
def _fractional_semigroup(rng, dim_max):
    """T^a T^b = T^(a+b) for self-adjoint positive definite T."""
    n, field = _dim(rng, dim_max), _field(rng)
    T = sampling.random_positive_definite(rng, n, field)
    a, b = rng.uniform(-1.5, 1.5, size=2)
    lhs = linalg.fractional_power(T, a) @ linalg.fractional_power(T, b)
    return _rel(lhs, linalg.fractional_power(T, a + b))


@invariant("linalg.polar", 1e-10)
def _polar(rng, dim_max):
    """F = P Q with P >= 0 self-adjoint and Q unitary."""
    n, field = _dim(rng, dim_max), _field(rng)
    F = sampling.gaussian(rng, (n, n), field)
    P, Q = linalg.polar_decompose(F)
    res = linalg.operator_norm(F - P @ Q) / linalg.operator_norm(F)
    unit = linalg.operator_norm(linalg.adjoint(Q) @ Q - np.eye(n))
    psd = max(0.0, -float(np.linalg.eigvalsh(P)[0])) / linalg.operator_norm(P)
    return max(res, unit, psd, linalg.self_adjoint_defect(P))


# -- family ------------------------------------------------------------------


@invariant("family.frame_operator_action", 1e-10)
def _frame_action(rng, dim_max):
    """synthesis(analysis(x)) = T_{Xi,Xi} x."""
    xi, _ = _random_pair(rng, dim_max)
    x = _vec(rng, xi.dim, xi.field)
    y = synthesis_map(xi, analysis_map(xi, x))
    T = engine.assemble_biframe_operator(xi, xi)
    return np.linalg.norm(y - T @ x) / max(1.0, linalg.operator_norm(T) * np.linalg.norm(x))


# -- biframe engine ----------------------------------------------------------


@invariant("engine.adjoint_symmetry", 1e-12)
def _adjoint_symmetry(rng, dim_max):
    """T_{Phi,Xi} = T_{Xi,Phi}*."""
    xi, phi = _random_pair(rng, dim_max)
    T = engine.assemble_biframe_operator(xi, phi)
    return _rel(engine.assemble_biframe_operator(phi, xi), linalg.adjoint(T))


@invariant("engine.bound_symmetry", 1e-10)
def _bound_symmetry(rng, dim_max):
    """Both orderings of a pair have the same optimal bounds."""
    xi, phi = _random_pair(rng, dim_max)
    C1, D1 = engine.biframe_bounds(engine.assemble_biframe_operator(xi, phi))
    C2, D2 = engine.biframe_bounds(engine.assemble_biframe_operator(phi, xi))
    return max(abs(C1 - C2), abs(D1 - D2)) / max(1.0, abs(C1), abs(D1))


@invariant("engine.sesquilinearity", 1e-12)
def _sesquilinearity(rng, dim_max):
    """T_{a Xi, Phi} = conj(a) T and T_{Xi, a Phi} = a T."""
    xi, phi = _random_pair(rng, dim_max)
    a = complex(*rng.standard_normal(2)) if xi.field == "complex" else float(rng.standard_normal())
    T = engine.assemble_biframe_operator(xi, phi)
    r1 = _rel(engine.assemble_biframe_operator(xi.scale(a), phi), np.conj(a) * T)
    r2 = _rel(engine.assemble_biframe_operator(xi, phi.scale(a)), a * T)
    return max(r1, r2) / max(1.0, abs(a))


@invariant("engine.quadratic_form_agreement", 1e-12)
def _quadratic_form(rng, dim_max):
    """<T x, x> equals the integral of <x, Xi><Phi, x> over the nodes."""
    xi, phi = _random_pair(rng, dim_max)
    T = engine.assemble_biframe_operator(xi, phi)
    x = _vec(rng, xi.dim, xi.field)
    direct = engine.quadratic_form(xi, phi, x)
    via_operator = np.vdot(x, T @ x)
    scale = max(1.0, float(np.sum(xi.space.weights * np.abs(analysis_map(xi, x) * analysis_map(phi, x)))))
    return abs(direct - via_operator) / scale


@invariant("engine.enclosure", 1e-9)
def _enclosure(rng, dim_max):
    """C <= Re <T x, x> <= D for unit x."""
    xi, phi = _random_pair(rng, dim_max)
    T = engine.assemble_biframe_operator(xi, phi)
    C, D = engine.biframe_bounds(T)
    worst = 0.0
    for _ in range(16):
        x = _vec(rng, xi.dim, xi.field)
        x = x / np.linalg.norm(x)
        f = float(np.real(np.vdot(x, T @ x)))
        worst = max(worst, C - f, f - D)
    return max(0.0, worst)


@invariant("engine.reconstruction", 1e-9)
def _reconstruction(rng, dim_max):
    """Both reconstruction formulas return x for invertible T."""
    xi, phi = _invertible_pair(rng, dim_max)
    x = _vec(rng, xi.dim, xi.field)
    nx = np.linalg.norm(x)
    return max(
        np.linalg.norm(engine.reconstruct(xi, phi, x, "left") - x) / nx,
        np.linalg.norm(engine.reconstruct(xi, phi, x, "right") - x) / nx,
    )


@invariant("engine.parseval_reconstruction", 1e-9)
def _parseval_reconstruction(rng, dim_max):
    """For a Parseval pair, sum mu <x, Xi> Phi = x without any inverse."""
    xi, _ = _invertible_pair(rng, dim_max)
    phi = riesz.canonical_dual(xi)
    report = engine.classify_pair(xi, phi)
    if not report.is_parseval:
        return np.inf
    x = _vec(rng, xi.dim, xi.field)
    return np.linalg.norm(synthesis_map(phi, analysis_map(xi, x)) - x) / np.linalg.norm(x)


# -- riesz lab ---------------------------------------------------------------


@invariant("riesz.factorization_roundtrip", 1e-10)
def _factorization(rng, dim_max):
    """S2 = U S1 V* for U, V built from any valid factorization spec."""
    n, field = _dim(rng, dim_max), _field(rng)
    S1 = sampling.random_positive_definite(rng, n, field)
    S2 = sampling.random_positive_definite(rng, n, field)
    a, c = rng.uniform(-1, 2, size=2)
    W = sampling.random_invertible(rng, n, field)
    Top = np.linalg.inv(linalg.adjoint(W))
    spec = riesz.FactorizationSpec(a, 1.0 - a, c, 1.0 - c, W, Top)
    return riesz.factorize_pair(S1, S2, spec)[2]


@invariant("riesz.pushforward_identity", 1e-10)
def _pushforward(rng, dim_max):
    """T_{S Xi, U Phi} = U T_{Xi,Phi} S* for arbitrary bounded S, U."""
    xi, phi = _random_pair(rng, dim_max)
    S = sampling.gaussian(rng, (xi.dim, xi.dim), xi.field)
    U = sampling.gaussian(rng, (xi.dim, xi.dim), xi.field)
    T = engine.assemble_biframe_operator(xi, phi)
    T_new = engine.assemble_biframe_operator(xi.map(S), phi.map(U))
    return riesz.pushforward_residual(T_new, U, T, S)


@invariant("riesz.transform_to_target", 1e-9)
def _transform(rng, dim_max):
    """transform_biframe lands exactly on the requested operator Q."""
    xi, phi = _positive_pair(rng, dim_max)
    n, field = xi.dim, xi.field
    Q = sampling.random_positive_definite(rng, n, field)
    W = sampling.random_unitary(rng, n, field)
    a, c = rng.uniform(-1, 2, size=2)
    spec = riesz.FactorizationSpec(a, 1.0 - a, c, 1.0 - c, W, W)
    _, _, report = riesz.transform_biframe(xi, phi, Q, spec)
    return report.extras["target_residual"]


@invariant("riesz.parseval_factors", 1e-9)
def _parseval_factors(rng, dim_max):
    """(S E, U E) is Parseval iff U S* = I; a 1e-3 perturbation breaks it."""
    n, field = _dim(rng, dim_max), _field(rng)
    E = _onb(rng, n, field)
    S = sampling.random_invertible(rng, n, field)
    U = np.linalg.inv(linalg.adjoint(S))
    if not riesz.parseval_factor_check(S, U, E):
        return np.inf
    T_new = engine.assemble_biframe_operator(E.map(S), E.map(U))
    if riesz.parseval_factor_check(S, U + 1e-3 * np.eye(n), E):
        return np.inf
    return linalg.operator_norm(T_new - np.eye(n))


@invariant("riesz.dual_biorthogonal_parseval", 0.0)
def _dual_biorthogonal(rng, dim_max):
    """Dual and biorthogonal indexed families form a Parseval biframe."""
    n, field = _dim(rng, dim_max), _field(rng)
    F = sampling.random_invertible(rng, n, field)
    xi = sampling.family_from_columns(F, "xi")
    phi = sampling.family_from_columns(np.linalg.inv(linalg.adjoint(F)), "phi")
    ok = (
        engine.dual_relation_check(xi, phi)
        and riesz.biorthogonality_check(xi, phi)
        and engine.classify_pair(xi, phi).is_parseval
    )
    return 0.0 if ok else 1.0


@invariant("riesz.b_riesz_completeness", 1e-10)
def _b_riesz(rng, dim_max):
    """Invertible column matrices are b-Riesz; rank-deficient ones are not."""
    n, field = _dim(rng, dim_max), _field(rng)
    cert = riesz.b_riesz_check(sampling.family_from_columns(sampling.random_invertible(rng, n, field)))
    if not cert.is_b_riesz:
        return np.inf
    gram = cert.basis.vectors.conj() @ cert.basis.vectors.T
    bad = riesz.b_riesz_check(sampling.family_from_columns(sampling.random_rank_deficient(rng, n, field)))
    if bad.is_b_riesz:
        return np.inf
    return max(cert.residual, float(np.max(np.abs(gram - np.eye(n)))))


@invariant("riesz.onb_uniqueness", 1e-10)
def _uniqueness(rng, dim_max):
    """Xi = U E with U positive pins down both U and E; T_Xi = U^2."""
    n, field = _dim(rng, dim_max), _field(rng)
    E = _onb(rng, n, field)
    U = sampling.random_positive_definite(rng, n, field)
    xi = E.map(U, label="xi")
    member, U_found = riesz.onb_class_check(E, xi)
    if not member or not riesz.onb_uniqueness_check(xi, E, _onb(rng, n, field)):
        return np.inf
    if not riesz.onb_uniqueness_check(xi, E, E):
        return np.inf
    return max(_rel(engine.frame_operator(xi), U_found @ U_found), _rel(U_found, U))


@invariant("riesz.dual_construction", 1e-9)
def _dual_construction(rng, dim_max):
    """The constructed Phi has T_{Xi,Phi} = Q^{-1} whatever eta is."""
    xi, _ = _invertible_pair(rng, dim_max)
    Q = sampling.random_positive_definite(rng, xi.dim, xi.field)
    eta = sampling.random_family(rng, xi.space, xi.dim, xi.field, "eta")
    return riesz.construct_dual_family(xi, Q, eta)[1].extras["residual"]


@invariant("riesz.bessel_characterization", 1e-9)
def _bessel(rng, dim_max):
    """Xi = Q^c W E, Phi = Q^d S E with S W* = I gives T_{Xi,Phi} = Q."""
    n, field = _dim(rng, dim_max), _field(rng)
    E = _onb(rng, n, field)
    Q = sampling.random_positive_definite(rng, n, field)
    W = sampling.random_invertible(rng, n, field)
    S = np.linalg.inv(linalg.adjoint(W))
    c = rng.uniform(-1, 2)
    xi, phi = riesz.bessel_pair_from_factors(E, Q, W, S, c, 1.0 - c)
    return _rel(engine.assemble_biframe_operator(xi, phi), Q)


@invariant("riesz.b_riesz_parseval_and_duals", 0.0)
def _b_riesz_duals(rng, dim_max):
    """U E with U^{-1} E is Parseval; canonical duals of b-Riesz bases are b-Riesz."""
    n, field = _dim(rng, dim_max), _field(rng)
    E = _onb(rng, n, field)
    U = sampling.random_positive_definite(rng, n, field)
    xi = E.map(U)
    parseval = engine.classify_pair(xi, E.map(np.linalg.inv(U))).is_parseval
    dual_ok = riesz.b_riesz_check(riesz.canonical_dual(xi)).is_b_riesz
    transfer = riesz.riesz_transfer_check(xi, E.map(2.0 * np.eye(n) @ np.linalg.inv(U)))
    return 0.0 if (parseval and dual_ok and transfer) else 1.0


def _run_trial(inv, index, seed, trial, dim_max):
    rng = np.random.default_rng([seed, index, trial])
    try:
        return float(inv.func(rng, dim_max)), None
    except Exception as exc:  # a crash counts as a violation of the invariant
        return np.inf, f"{type(exc).__name__}: {exc}"


def run_property_suite(seed=42, trials=100, dimension_max=8, parallel=False, only=None):
    """Run every registered invariant ``trials`` times.

    The machine-readable report is a deterministic function of
    ``(seed, trials, dimension_max)``.
    """
    if int(trials) != trials or trials < 1:
        raise ValueError(f"trials must be a positive integer, got {trials!r}")
    if int(dimension_max) != dimension_max or dimension_max < 2:
        raise ValueError(f"dimension_max must be an integer >= 2, got {dimension_max!r}")
    trials, dimension_max = int(trials), int(dimension_max)
    selected = [(k, inv) for k, inv in enumerate(INVARIANTS) if only is None or inv.name in only]
    report = RunReport(title=f"properties seed={seed} trials={trials} max_dim={dimension_max}")

    def run_one(item):
        k, inv = item
        start = time.perf_counter()
        results = [_run_trial(inv, k, seed, t, dimension_max) for t in range(trials)]
        return k, inv, results, time.perf_counter() - start

    items = selected
    if parallel:
        with ThreadPoolExecutor() as pool:
            outcomes = list(pool.map(run_one, items))
    else:
        outcomes = [run_one(item) for item in items]

    for k, inv, results, elapsed in outcomes:
        residuals = [r for r, _ in results]
        worst_trial = int(np.argmax(residuals))
        worst = residuals[worst_trial]
        ok = worst <= inv.threshold
        result = CheckResult(
            name=inv.name,
            op="property",
            verdict=PASS if ok else FAIL,
            computed={"worst_residual": worst, "worst_trial": worst_trial, "trials": trials},
            claimed={},
            residuals={"threshold": inv.threshold},
            notes={"invariant": inv.description},
            elapsed=elapsed,
        )
        if not ok:
            err = results[worst_trial][1]
            result.message = (
                f"violated at seed={seed} invariant_index={k} trial={worst_trial} "
                f"(replay: default_rng([{seed}, {k}, {worst_trial}]))" + (f"; {err}" if err else "")
            )
        report.add(result)
    return report

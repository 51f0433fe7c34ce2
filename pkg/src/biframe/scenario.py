"""Scenario documents: declarative verification runs.

A scenario is a JSON document (``schema_version`` 1) naming a measure,
families, operators and an ordered list of checks. ``run_scenario``
executes the checks and returns a :class:`~biframe.report.RunReport`.

Minimal example::

    {
      "schema_version": 1,
      "space": {"dimension": 2, "field": "real"},
      "measure": {"kind": "counting", "size": 2},
      "families": {"e": {"generator": "onb"}},
      "checks": [{"op": "classify_pair", "xi": "e", "phi": "e",
                  "expect": {"is_parseval": true}}]
    }
"""

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import catalog, engine, linalg, riesz
from .engine import DEFAULT_TOLERANCES, Tolerances, normalize_claim, values_match
from .exceptions import BiframeError, NumericalInconsistencyError, ScenarioError
from .family import VectorFamily, synthesis_map
from .measure import (
    DEFAULT_QUADRATURE_NODES,
    make_counting_measure,
    make_uniform_quadrature,
    make_weighted_measure,
)
from .report import ERROR, FAIL, MISMATCH, PASS, CheckResult, RunReport

SCHEMA_VERSION = 1
POLAR_TOL = 1e-10

# op -> (family arguments, required operator arguments, optional operator arguments)
OPS = {
    "classify_pair": (("xi", "phi"), (), ()),
    "swap_check": (("xi", "phi"), (), ()),
    "reconstruct": (("xi", "phi"), (), ()),
    "biframe_coefficients": (("xi", "phi"), (), ()),
    "controlled_frame_check": (("xi",), ("P",), ("Q",)),
    "dual_relation_check": (("xi", "phi"), (), ()),
    "g_dual_check": (("xi", "phi"), ("A",), ()),
    "positivity_report": ((), ("operator",), ()),
    "biframe_bounds": ((), ("operator",), ()),
    "neumann_invertibility_check": ((), ("operator",), ()),
    "fractional_power": ((), ("operator",), ()),
    "polar_decompose": ((), ("operator",), ()),
    "factorize_pair": ((), ("S1", "S2"), ()),
    "transform_biframe": (("xi", "phi"), ("Q",), ()),
    "parseval_factor_check": (("E",), ("S", "U"), ()),
    "biorthogonality_check": (("xi", "phi"), (), ()),
    "b_riesz_check": (("xi",), (), ()),
    "onb_class_check": (("E", "xi"), (), ()),
    "product_pair_check": (("E",), ("U", "V"), ()),
    "construct_dual_family": (("xi", "eta"), ("Q",), ()),
    "riesz_transfer_check": (("xi", "phi"), (), ()),
}

SPEC_OPS = ("factorize_pair", "transform_biframe")


@dataclass
class Scenario:
    name: str
    schema_version: int
    dimension: int
    field: str
    measure: object
    families: dict
    operators: dict
    checks: list
    tolerances: Tolerances
    expected: dict = field(default_factory=dict)


def _err(path, msg):
    return ScenarioError(f"{path}: {msg}")


def _get(d, key, path, kind=None):
    if not isinstance(d, dict) or key not in d:
        raise _err(path, f"missing required field {key!r}")
    value = d[key]
    if kind is not None and not isinstance(value, kind):
        raise _err(f"{path}.{key}", f"expected {getattr(kind, '__name__', kind)}, got {type(value).__name__}")
    return value


def decode_array(data, field_name, path, ndim):
    """Nested real arrays, or ``[re, im]`` pairs in the innermost position for complex."""
    try:
        arr = np.asarray(data, dtype=np.float64)
    except (TypeError, ValueError):
        raise _err(path, "array is ragged or non-numeric") from None
    if field_name == "complex":
        if arr.ndim != ndim + 1 or arr.shape[-1] != 2:
            raise _err(path, f"complex arrays need [re, im] pairs at depth {ndim + 1}")
        arr = arr[..., 0] + 1j * arr[..., 1]
    elif arr.ndim != ndim:
        raise _err(path, f"expected a {ndim}-dimensional array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise _err(path, "array contains non-finite values")
    return arr


def _decode_scalar(value, field_name, path):
    if isinstance(value, list):
        if field_name != "complex" or len(value) != 2:
            raise _err(path, "scalar must be a number (or [re, im] over the complex field)")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        return float(engine._as_fraction_float(value))
    if not isinstance(value, (int, float)):
        raise _err(path, "scalar must be a number")
    return value


def parse_measure(desc, path="measure"):
    if not isinstance(desc, dict):
        raise _err(path, "measure must be an object")
    kind = _get(desc, "kind", path, str)
    try:
        if kind == "quadrature":
            interval = _get(desc, "interval", path, list)
            nodes = desc.get("nodes", DEFAULT_QUADRATURE_NODES)
            return make_uniform_quadrature(interval, nodes)
        if kind == "counting":
            return make_counting_measure(_get(desc, "size", path, int))
        if kind == "weighted":
            return make_weighted_measure(_get(desc, "nodes", path, list), _get(desc, "weights", path, list))
    except ScenarioError:
        raise
    except (ValueError, TypeError) as exc:
        raise _err(path, str(exc)) from None
    raise _err(f"{path}.kind", f"unknown measure kind {kind!r}")


def _parse_family(name, desc, ctx, path):
    if not isinstance(desc, dict):
        raise _err(path, "family descriptor must be an object")
    space = parse_measure(desc["measure"], f"{path}.measure") if "measure" in desc else ctx["measure"]
    try:
        if "vectors" in desc:
            vecs = decode_array(desc["vectors"], ctx["field"], f"{path}.vectors", 2)
            if vecs.shape[1] != ctx["dimension"]:
                raise _err(f"{path}.vectors", f"vectors have dimension {vecs.shape[1]}, space has {ctx['dimension']}")
            fam = VectorFamily(space, vecs, label=name)
        elif "generator" in desc:
            fam = catalog.make_family(
                desc["generator"], space, ctx["dimension"], ctx["field"],
                seed=desc.get("seed"), n=desc.get("n"),
            )
            fam = fam.with_label(name)
        else:
            raise _err(path, "family needs 'vectors' or 'generator'")
        if "apply" in desc:
            op_name = desc["apply"]
            if op_name not in ctx["operators"]:
                raise _err(f"{path}.apply", f"undefined operator {op_name!r}")
            fam = fam.map(ctx["operators"][op_name], label=name)
        if "scale" in desc:
            fam = fam.scale(_decode_scalar(desc["scale"], ctx["field"], f"{path}.scale"), label=name)
    except ScenarioError:
        raise
    except (BiframeError, ValueError) as exc:
        raise _err(path, str(exc)) from None
    if ctx["field"] == "complex" and fam.field == "real":
        fam = VectorFamily(fam.space, fam.vectors.astype(np.complex128), label=fam.label)
    return fam


def _parse_operator(name, desc, ctx, path):
    n, fld = ctx["dimension"], ctx["field"]
    if not isinstance(desc, dict):
        raise _err(path, "operator descriptor must be an object")
    ops = ctx["operators"]

    def ref(key):
        other = desc[key]
        if other not in ops:
            raise _err(f"{path}.{key}", f"undefined operator {other!r} (operators are resolved in order)")
        return ops[other]

    try:
        if "matrix" in desc:
            M = decode_array(desc["matrix"], fld, f"{path}.matrix", 2)
            if M.shape != (n, n):
                raise _err(f"{path}.matrix", f"expected a {n}x{n} matrix, got {M.shape}")
        elif "generator" in desc:
            values = desc.get("values")
            if values is not None:
                values = [_decode_scalar(v, fld, f"{path}.values") for v in values]
            value = desc.get("value")
            if value is not None:
                value = _decode_scalar(value, fld, f"{path}.value")
            M = catalog.make_operator(
                desc["generator"], n, fld, seed=desc.get("seed"), value=value,
                values=values, angle=desc.get("angle"),
            )
        elif "inverse_of" in desc:
            M = np.linalg.inv(ref("inverse_of"))
        elif "adjoint_of" in desc:
            M = linalg.adjoint(ref("adjoint_of"))
        elif "inverse_adjoint_of" in desc:
            M = np.linalg.inv(linalg.adjoint(ref("inverse_adjoint_of")))
        elif "product" in desc:
            names = desc["product"]
            M = np.eye(n)
            for i, other in enumerate(names):
                if other not in ops:
                    raise _err(f"{path}.product[{i}]", f"undefined operator {other!r}")
                M = M @ ops[other]
        else:
            raise _err(path, "operator needs one of matrix, generator, inverse_of, adjoint_of, inverse_adjoint_of, product")
        if "scale" in desc:
            M = _decode_scalar(desc["scale"], fld, f"{path}.scale") * M
    except ScenarioError:
        raise
    except (BiframeError, ValueError, np.linalg.LinAlgError) as exc:
        raise _err(path, str(exc)) from None
    return np.asarray(M, dtype=np.complex128 if fld == "complex" else M.dtype)


def _parse_spec(desc, ctx, path):
    if not isinstance(desc, dict):
        raise _err(path, "spec must be an object")
    vals = {}
    for key in ("a", "b", "c", "d"):
        vals[key] = float(_decode_scalar(_get(desc, key, path), "real", f"{path}.{key}"))
    for key in ("W", "Top"):
        op_name = _get(desc, key, path, str)
        if op_name not in ctx["operators"]:
            raise _err(f"{path}.{key}", f"undefined operator {op_name!r}")
        vals[key] = ctx["operators"][op_name]
    return riesz.FactorizationSpec(**vals)


def _validate_check(check, ctx, path):
    if not isinstance(check, dict):
        raise _err(path, "check must be an object")
    op = _get(check, "op", path, str)
    if op not in OPS:
        raise _err(f"{path}.op", f"unknown check {op!r}; known: {', '.join(sorted(OPS))}")
    fams, req_ops, opt_ops = OPS[op]
    for key in fams:
        fname = _get(check, key, path, str)
        if fname not in ctx["families"]:
            raise _err(f"{path}.{key}", f"undefined family {fname!r}")
    for key in req_ops + opt_ops:
        if key in req_ops or key in check:
            oname = _get(check, key, path, str)
            if oname not in ctx["operators"]:
                raise _err(f"{path}.{key}", f"undefined operator {oname!r}")
    parsed = dict(check)
    parsed.setdefault("name", f"{op}#{path.rsplit('[', 1)[-1].rstrip(']')}")
    if op in SPEC_OPS:
        parsed["spec"] = _parse_spec(_get(check, "spec", path), ctx, f"{path}.spec")
    for key in ("x",):
        if key in check:
            parsed[key] = decode_array(check[key], ctx["field"], f"{path}.{key}", 1)
    if op in ("reconstruct", "biframe_coefficients") and "x" not in check:
        raise _err(path, f"{op} needs a vector 'x'")
    if op == "fractional_power" and "exponent" not in check:
        raise _err(path, "fractional_power needs 'exponent'")
    for key in ("expect", "claimed"):
        if key in check and not isinstance(check[key], dict):
            raise _err(f"{path}.{key}", "must be an object")
    return parsed


def parse_scenario(doc, source="<scenario>"):
    """Validate a decoded scenario document and materialize its objects."""
    if not isinstance(doc, dict):
        raise _err(source, "top level must be an object")
    version = _get(doc, "schema_version", source, int)
    if version != SCHEMA_VERSION:
        raise _err(f"{source}.schema_version", f"unsupported schema version {version}; expected {SCHEMA_VERSION}")
    space = _get(doc, "space", source, dict)
    dim = _get(space, "dimension", f"{source}.space", int)
    if dim < 1:
        raise _err(f"{source}.space.dimension", "dimension must be positive")
    fld = space.get("field", "real")
    if fld not in ("real", "complex"):
        raise _err(f"{source}.space.field", f"field must be 'real' or 'complex', got {fld!r}")

    tol_overrides = doc.get("tolerances", {})
    try:
        tolerances = DEFAULT_TOLERANCES.updated(**tol_overrides)
    except (TypeError, ValueError) as exc:
        raise _err(f"{source}.tolerances", str(exc)) from None

    ctx = {"dimension": dim, "field": fld, "families": {}, "operators": {}}
    ctx["measure"] = parse_measure(_get(doc, "measure", source, dict), f"{source}.measure")

    for name, desc in doc.get("operators", {}).items():
        ctx["operators"][name] = _parse_operator(name, desc, ctx, f"{source}.operators.{name}")
    for name, desc in doc.get("families", {}).items():
        ctx["families"][name] = _parse_family(name, desc, ctx, f"{source}.families.{name}")

    checks = _get(doc, "checks", source, list)
    parsed_checks = [_validate_check(c, ctx, f"{source}.checks[{i}]") for i, c in enumerate(checks)]
    names = [c["name"] for c in parsed_checks]
    if len(set(names)) != len(names):
        raise _err(f"{source}.checks", "check names must be unique")

    expected = doc.get("expected", {})
    if not isinstance(expected, dict):
        raise _err(f"{source}.expected", "must be an object keyed by check name")
    for key in expected:
        if key not in names:
            raise _err(f"{source}.expected.{key}", "refers to an unknown check name")

    return Scenario(
        name=doc.get("name", source),
        schema_version=version,
        dimension=dim,
        field=fld,
        measure=ctx["measure"],
        families=ctx["families"],
        operators=ctx["operators"],
        checks=parsed_checks,
        tolerances=tolerances,
        expected=expected,
    )


def load_scenario(path):
    """Read and parse a scenario file; JSON syntax errors carry line/column."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"{path}: cannot read file: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    return parse_scenario(doc, source=str(path))


# -- check execution ---------------------------------------------------------


def _report_fields(report):
    out = {
        "lower_bound_C": report.lower_bound_C,
        "upper_bound_D": report.upper_bound_D,
        "is_bessel_pair": report.is_bessel_pair,
        "is_biframe": report.is_biframe,
        "is_parseval": report.is_parseval,
        "is_pair_frame": report.is_pair_frame,
        "self_adjoint_defect": report.self_adjoint_defect,
        "operator": report.operator,
        "hermitian_spectrum": report.hermitian_spectrum,
    }
    T = report.operator
    if T.shape == (2, 2) and not np.iscomplexobj(T):
        out["quadratic_form_xx_xy_yy"] = list(linalg.quadratic_form_coefficients(T))
    return out


def _run_op(sc, check):
    fam = lambda key: sc.families[check[key]]  # noqa: E731
    op_ = lambda key: sc.operators[check[key]]  # noqa: E731
    tol = sc.tolerances
    op = check["op"]
    computed, residuals, failures = {}, {}, []

    if op == "classify_pair":
        computed = _report_fields(engine.classify_pair(fam("xi"), fam("phi"), tol))
    elif op == "swap_check":
        computed["result"] = engine.swap_check(fam("xi"), fam("phi"), tol)
    elif op == "reconstruct":
        x = check["x"]
        sides = [check["side"]] if "side" in check else ["left", "right"]
        for side in sides:
            y = engine.reconstruct(fam("xi"), fam("phi"), x, side, tol)
            computed[f"reconstructed_{side}"] = y
            res = float(np.linalg.norm(y - x) / max(np.linalg.norm(x), np.finfo(float).tiny))
            residuals[f"relative_{side}"] = res
            if res > tol.reconstruction:
                failures.append(f"{side} reconstruction residual {res:.3e} > {tol.reconstruction:.1e}")
    elif op == "biframe_coefficients":
        c = engine.biframe_coefficients(fam("xi"), fam("phi"), check["x"], tol)
        computed["coefficients"] = c
        computed["synthesis_against_phi"] = synthesis_map(fam("phi"), c)
    elif op == "controlled_frame_check":
        Q = op_("Q") if "Q" in check else None
        computed = _report_fields(engine.controlled_frame_check(fam("xi"), op_("P"), Q, tol))
    elif op == "dual_relation_check":
        computed["result"] = engine.dual_relation_check(fam("xi"), fam("phi"), tol)
    elif op == "g_dual_check":
        computed["result"] = engine.g_dual_check(fam("xi"), fam("phi"), op_("A"), tol)
    elif op == "positivity_report":
        r = linalg.positivity_report(op_("operator"), tol.positivity, tol.self_adjoint)
        computed = r.to_dict()
        T = op_("operator")
        if T.shape == (2, 2) and not np.iscomplexobj(T):
            computed["quadratic_form_xx_xy_yy"] = list(linalg.quadratic_form_coefficients(T))
    elif op == "biframe_bounds":
        C, D = engine.biframe_bounds(op_("operator"))
        computed = {"lower_bound_C": C, "upper_bound_D": D}
    elif op == "neumann_invertibility_check":
        computed["result"] = linalg.neumann_invertibility_check(op_("operator"))
    elif op == "fractional_power":
        computed["power"] = linalg.fractional_power(op_("operator"), float(check["exponent"]), tol.self_adjoint)
    elif op == "polar_decompose":
        F = op_("operator")
        P, Q = linalg.polar_decompose(F)
        computed = {"P": P, "Q": Q}
        residuals["factorization"] = linalg.operator_norm(F - P @ Q) / max(linalg.operator_norm(F), np.finfo(float).tiny)
        residuals["unitarity"] = linalg.operator_norm(linalg.adjoint(Q) @ Q - np.eye(F.shape[0]))
        failures += [f"{k} residual {v:.3e} > {POLAR_TOL:.0e}" for k, v in residuals.items() if v > POLAR_TOL]
    elif op == "factorize_pair":
        U, V, r = riesz.factorize_pair(op_("S1"), op_("S2"), check["spec"])
        computed = {"U": U, "V": V}
        residuals["factorization"] = r
        if r > riesz.FACTOR_RESIDUAL_TOL:
            failures.append(f"factorization residual {r:.3e}")
    elif op == "transform_biframe":
        _, _, report = riesz.transform_biframe(fam("xi"), fam("phi"), op_("Q"), check["spec"], tol)
        computed = _report_fields(report)
        computed["S"] = report.extras["S"]
        computed["U"] = report.extras["U"]
        residuals["U_T_Sstar"] = report.extras["identity_residual"]
        residuals["target_Q"] = report.extras["target_residual"]
    elif op == "parseval_factor_check":
        computed["result"] = riesz.parseval_factor_check(op_("S"), op_("U"), fam("E"), tol)
    elif op == "biorthogonality_check":
        computed["result"] = riesz.biorthogonality_check(fam("xi"), fam("phi"))
    elif op == "b_riesz_check":
        cert = riesz.b_riesz_check(fam("xi"), tol)
        computed = cert.to_dict()
    elif op == "onb_class_check":
        member, U = riesz.onb_class_check(fam("E"), fam("xi"), tol)
        computed = {"member": member, "U": U}
    elif op == "product_pair_check":
        report = riesz.product_pair_check(fam("E"), op_("U"), op_("V"), tol)
        computed = _report_fields(report)
        computed["vu_product"] = report.extras["vu_product"]
        computed["vu_is_positive"] = report.extras["vu_is_positive"]
        residuals["V_Ustar"] = report.extras["v_u_adjoint_residual"]
    elif op == "construct_dual_family":
        phi, report = riesz.construct_dual_family(fam("xi"), op_("Q"), fam("eta"), tol)
        computed = _report_fields(report)
        computed["phi"] = phi.vectors
        residuals["Q_inverse"] = report.extras["residual"]
    elif op == "riesz_transfer_check":
        computed["result"] = riesz.riesz_transfer_check(fam("xi"), fam("phi"), tol)
    else:  # pragma: no cover - guarded by parse_scenario
        raise ScenarioError(f"unknown op {op!r}")
    return computed, residuals, failures


def _lookup(computed, key):
    if key == "bounds":
        return [computed["lower_bound_C"], computed["upper_bound_D"]]
    if key not in computed:
        raise KeyError(key)
    return computed[key]


def _compare(spec, computed, tol):
    """Return ``(claimed, mismatches)`` for an expect/claimed mapping."""
    shown, bad = {}, []
    for key, want in spec.items():
        shown[key] = normalize_claim(want)
        try:
            got = _lookup(computed, key)
        except KeyError:
            bad.append(f"{key}: not produced by this check")
            continue
        if not values_match(want, got, tol):
            bad.append(key)
    return shown, bad


def _error_matches(exc, wanted):
    names = {cls.__name__ for cls in type(exc).__mro__}
    return wanted in names or f"{wanted}Error" in names


def run_check(sc, check):
    name, op = check["name"], check["op"]
    start = time.perf_counter()
    result = CheckResult(name=name, op=op, verdict=PASS)
    if "note" in check:
        result.notes["note"] = check["note"]
    if "notes" in check:
        result.notes.update(check["notes"])
    wanted_error = check.get("expect_error")
    try:
        computed, residuals, failures = _run_op(sc, check)
    except Exception as exc:  # classified below; anything unknown is re-raised
        result.elapsed = time.perf_counter() - start
        if wanted_error and _error_matches(exc, wanted_error):
            result.computed = {"error": type(exc).__name__}
            result.message = f"raised {type(exc).__name__} as expected: {exc}"
            return result
        if isinstance(exc, NumericalInconsistencyError) or (
            isinstance(exc, np.linalg.LinAlgError) and not isinstance(exc, BiframeError)
        ):
            result.verdict = ERROR
        elif isinstance(exc, (BiframeError, ValueError)):
            result.verdict = FAIL
        else:
            raise
        result.computed = {"error": type(exc).__name__}
        result.message = str(exc)
        return result

    result.elapsed = time.perf_counter() - start
    result.computed, result.residuals = computed, residuals
    if wanted_error:
        failures.append(f"expected {wanted_error} but the check completed")
    expect = check.get("expect", {})
    if expect:
        _, bad = _compare(expect, computed, float(check.get("tolerance", sc.tolerances.claim)))
        failures += [f"expectation failed: {b}" for b in bad]
        result.notes["expected"] = {k: normalize_claim(v) for k, v in expect.items()}
    claimed = dict(check.get("claimed", {}))
    claimed.update(sc.expected.get(name, {}))
    mismatches = []
    if claimed:
        result.claimed, mismatches = _compare(claimed, computed, sc.tolerances.claim)
    if failures:
        result.verdict = FAIL
        result.message = "; ".join(failures)
    elif mismatches:
        result.verdict = MISMATCH
        result.message = "computed values differ from published claim: " + ", ".join(mismatches)
    return result


def run_parsed(sc, strict_claims=False, title=None):
    report = RunReport(title=title or sc.name, strict_claims=strict_claims)
    for check in sc.checks:
        report.add(run_check(sc, check))
    return report


def apply_tolerances(sc, overrides):
    if overrides:
        sc.tolerances = sc.tolerances.updated(**overrides)
    return sc


def run_scenario(source, strict_claims=False, tolerance_overrides=None):
    """Load (path) or parse (dict) a scenario and run it.

    Command-line tolerance overrides take precedence over the scenario's own.
    """
    sc = parse_scenario(source) if isinstance(source, dict) else load_scenario(source)
    apply_tolerances(sc, tolerance_overrides)
    return run_parsed(sc, strict_claims)

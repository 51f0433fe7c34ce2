import copy
import json
import math
from pathlib import Path

import numpy as np
import pytest

from biframe import catalog
from biframe.exceptions import ScenarioError
from biframe.report import ERROR, EXIT_FAIL, EXIT_NUMERICAL, EXIT_OK, FAIL, MISMATCH, PASS
from biframe.scenario import decode_array, load_scenario, parse_measure, parse_scenario, run_scenario
from biframe.worked_examples import FIXTURES, run_paper_examples

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"

ONB = {
    "schema_version": 1,
    "space": {"dimension": 2, "field": "real"},
    "measure": {"kind": "counting", "size": 2},
    "families": {"e": {"generator": "onb"}},
    "checks": [{"op": "classify_pair", "xi": "e", "phi": "e", "expect": {"is_parseval": True}}],
}


def _doc(**changes):
    doc = copy.deepcopy(ONB)
    doc.update(changes)
    return doc


def test_onb_scenario_passes():
    report = run_scenario(ONB)
    assert report.exit_code == EXIT_OK
    (check,) = report.checks
    assert check.verdict == PASS and check.computed["is_parseval"]
    assert check.name == "classify_pair#0"


def test_example1_scenario_mismatch():
    report = run_scenario(str(SCENARIOS / "example1.json"))
    check = report.checks[0]
    assert check.verdict == MISMATCH
    assert check.computed["lower_bound_C"] == pytest.approx(-0.0504626, abs=1e-6)
    assert check.computed["upper_bound_D"] == pytest.approx(0.5504626, abs=1e-6)
    assert check.claimed["bounds"] == [1 / 3, 1 / 2]
    assert report.exit_code == EXIT_OK
    assert run_scenario(str(SCENARIOS / "example1.json"), strict_claims=True).exit_code == EXIT_FAIL


@pytest.mark.parametrize("path", sorted(p.name for p in SCENARIOS.glob("*.json") if p.name != "malformed.json"))
def test_shipped_scenarios_have_no_failures(path):
    report = run_scenario(str(SCENARIOS / path))
    assert report.summary[FAIL] == 0 and report.summary[ERROR] == 0, report.to_text()


def test_shipped_fixture_files_match_builtins():
    for key, doc in FIXTURES.items():
        assert json.loads((SCENARIOS / f"{key}.json").read_text()) == json.loads(json.dumps(doc))


def test_malformed_file_position(tmp_path):
    with pytest.raises(ScenarioError, match=r"malformed\.json:3:28"):
        load_scenario(SCENARIOS / "malformed.json")
    with pytest.raises(ScenarioError, match="cannot read"):
        load_scenario(tmp_path / "missing.json")


@pytest.mark.parametrize(
    "doc, message",
    [
        ([], "top level"),
        (_doc(schema_version=2), "unsupported schema version"),
        ({k: v for k, v in ONB.items() if k != "space"}, "missing required field 'space'"),
        (_doc(space={"dimension": 2, "field": "quaternion"}), "field"),
        (_doc(space={"dimension": 0}), "dimension must be positive"),
        (_doc(tolerances={"parseval": -1}), "tolerances"),
        (_doc(tolerances={"nonsense": 1}), "unknown tolerance"),
        (_doc(measure={"kind": "lebesgue"}), "unknown measure kind"),
        (_doc(measure={"kind": "quadrature", "interval": [1, 0]}), "invalid interval"),
        (_doc(families={"e": {"generator": "nope"}}), "unknown family generator"),
        (_doc(families={"e": {}}), "needs 'vectors' or 'generator'"),
        (_doc(families={"e": {"vectors": [[1, 0, 0], [0, 1, 0]]}}), "dimension 3"),
        (_doc(families={"e": {"vectors": [[1, 0], [0]]}}), "ragged"),
        (_doc(families={"e": {"generator": "onb", "apply": "X"}}), "undefined operator"),
        (_doc(checks=[{"op": "frobnicate"}]), "unknown check"),
        (_doc(checks=[{"op": "classify_pair", "xi": "e", "phi": "f"}]), "undefined family 'f'"),
        (_doc(checks=[{"op": "positivity_report", "operator": "N"}]), "undefined operator 'N'"),
        (_doc(checks=[{"op": "reconstruct", "xi": "e", "phi": "e"}]), "needs a vector 'x'"),
        (_doc(checks=[{"op": "classify_pair", "xi": "e", "phi": "e", "expect": [1]}]), "must be an object"),
        (_doc(checks=[{"name": "a", "op": "swap_check", "xi": "e", "phi": "e"}] * 2), "unique"),
        (_doc(expected={"ghost": {"is_biframe": True}}), "unknown check name"),
        (_doc(operators={"A": {"matrix": [[1, 0, 0]]}}), "expected a 2x2 matrix"),
        (_doc(operators={"A": {"inverse_of": "B"}}), "undefined operator 'B'"),
        (_doc(operators={"A": {"generator": "rotation", "angle": 10}}, space={"dimension": 3}, measure={"kind": "counting", "size": 3}), "rotation"),
    ],
)
def test_parse_errors(doc, message):
    with pytest.raises(ScenarioError, match=message):
        parse_scenario(doc, source="doc")


def test_complex_arrays_and_measures():
    arr = decode_array([[[1, 2], [0, -1]]], "complex", "x", 2)
    np.testing.assert_array_equal(arr, [[1 + 2j, -1j]])
    with pytest.raises(ScenarioError):
        decode_array([[1, 2]], "complex", "x", 2)
    m = parse_measure({"kind": "weighted", "nodes": [0, 1], "weights": [0.5, 2]})
    assert m.weights.tolist() == [0.5, 2.0]
    with pytest.raises(ScenarioError):
        parse_measure({"kind": "weighted", "nodes": [0, 1], "weights": [0.5, -2]})
    with pytest.raises(ScenarioError, match="non-finite"):
        decode_array([[1e400, 0]], "real", "x", 2)


def test_expect_error_and_failures():
    doc = _doc(
        measure={"kind": "counting", "size": 2},
        families={"e": {"generator": "onb"}, "z": {"vectors": [[1, 0], [1, 0]]}},
        checks=[
            {"name": "singular", "op": "reconstruct", "xi": "z", "phi": "e", "x": [1, 0], "expect_error": "SingularOperator"},
            {"name": "singular-unexpected", "op": "reconstruct", "xi": "z", "phi": "e", "x": [1, 0]},
            {"name": "wrong-expect", "op": "classify_pair", "xi": "e", "phi": "e", "expect": {"bounds": [2, 2]}},
            {"name": "missing-key", "op": "swap_check", "xi": "e", "phi": "e", "expect": {"bounds": [1, 1]}},
            {"name": "error-not-raised", "op": "swap_check", "xi": "e", "phi": "e", "expect_error": "SingularOperator"},
        ],
    )
    report = run_scenario(doc)
    verdicts = {c.name: c.verdict for c in report.checks}
    assert verdicts == {
        "singular": PASS,
        "singular-unexpected": FAIL,
        "wrong-expect": FAIL,
        "missing-key": FAIL,
        "error-not-raised": FAIL,
    }
    assert report.exit_code == EXIT_FAIL
    assert "not produced" in report.checks[3].message


def test_numerical_inconsistency_is_error(monkeypatch):
    from biframe import engine
    from biframe.exceptions import NumericalInconsistencyError

    def boom(*args, **kwargs):
        raise NumericalInconsistencyError("forced")

    monkeypatch.setattr(engine, "swap_check", boom)
    report = run_scenario(_doc(checks=[{"op": "swap_check", "xi": "e", "phi": "e"}]))
    assert report.checks[0].verdict == ERROR and report.exit_code == EXIT_NUMERICAL


def test_top_level_expected_and_tolerance_overrides():
    doc = _doc(
        families={"e": {"generator": "onb"}, "f": {"generator": "onb", "scale": 1.001}},
        checks=[{"name": "near", "op": "classify_pair", "xi": "e", "phi": "f"}],
        expected={"near": {"is_parseval": True}},
    )
    assert run_scenario(doc).checks[0].verdict == MISMATCH
    loose = run_scenario(doc, tolerance_overrides={"parseval": 1e-2})
    assert loose.checks[0].verdict == PASS


def test_operator_descriptors():
    doc = _doc(
        operators={
            "S": {"matrix": [[1, 1], [0, 1]]},
            "Si": {"inverse_of": "S"},
            "Sa": {"adjoint_of": "S"},
            "Sia": {"inverse_adjoint_of": "S"},
            "P": {"product": ["S", "Si"]},
            "D": {"generator": "diag", "values": ["1/2", 3]},
            "Z": {"generator": "scalar", "value": 2, "scale": 0.5},
        },
        checks=[
            {"name": "p", "op": "positivity_report", "operator": "P", "expect": {"hermitian_min_eig": 1, "is_self_adjoint": True}},
            {"name": "f", "op": "parseval_factor_check", "E": "e", "S": "S", "U": "Sia", "expect": {"result": True}},
            {"name": "d", "op": "biframe_bounds", "operator": "D", "expect": {"bounds": ["1/2", 3]}},
            {"name": "z", "op": "neumann_invertibility_check", "operator": "Z", "expect": {"result": True}},
            {"name": "a", "op": "fractional_power", "operator": "D", "exponent": -1, "expect": {"power": [[2, 0], [0, "1/3"]]}},
            {"name": "polar", "op": "polar_decompose", "operator": "Sa"},
            {"name": "fac", "op": "factorize_pair", "S1": "D", "S2": "Z",
             "spec": {"a": 0.5, "b": 0.5, "c": 0.5, "d": 0.5, "W": "Z", "Top": "Z"}},
        ],
    )
    report = run_scenario(doc)
    assert [c.verdict for c in report.checks] == [PASS] * 7, report.to_text()


def test_biframe_coefficients_and_biorthogonality_ops():
    doc = _doc(
        families={"xi": {"vectors": [[2, 0], [0, 1]]}, "e": {"generator": "onb"}, "d": {"vectors": [[0.5, 0], [0, 1]]}},
        checks=[
            {"name": "c", "op": "biframe_coefficients", "xi": "xi", "phi": "e", "x": [2, 0],
             "expect": {"synthesis_against_phi": [2, 0]}},
            {"name": "b", "op": "biorthogonality_check", "xi": "xi", "phi": "d", "expect": {"result": True}},
        ],
    )
    assert [c.verdict for c in run_scenario(doc).checks] == [PASS, PASS]


def test_paper_examples_report():
    report = run_paper_examples()
    by_name = {c.name: c for c in report.checks}
    pos = by_name["positive_matrix.positivity"]
    assert pos.verdict == PASS
    assert pos.computed["is_positive"] and not pos.computed["is_self_adjoint"]
    assert pos.computed["hermitian_min_eig"] == pytest.approx(3 - math.sqrt(5), abs=1e-10)
    assert by_name["example1.classify"].verdict == MISMATCH
    ex2 = by_name["example2.classify"]
    assert ex2.verdict == MISMATCH
    assert ex2.computed["lower_bound_C"] == pytest.approx(0.0, abs=1e-10)
    assert ex2.claimed["bounds"] == [0.5, 2.0]
    assert by_name["b_riesz_example.certificate"].verdict == PASS
    assert by_name["b_riesz_example.literal_pairing"].verdict == MISMATCH
    assert by_name["b_riesz_example.corrected_pairing"].verdict == MISMATCH
    assert report.exit_code == EXIT_OK
    assert run_paper_examples(strict_claims=True).exit_code == EXIT_FAIL


def test_catalog_errors():
    from biframe.measure import make_counting_measure, make_uniform_quadrature

    with pytest.raises(ValueError):
        catalog.make_family("example1_xi", make_uniform_quadrature((0, 1), 2), 3)
    with pytest.raises(ValueError):
        catalog.make_family("riesz_example", make_counting_measure(3), 2)
    with pytest.raises(ValueError):
        catalog.make_family("onb", make_counting_measure(2), 2, n=3)
    with pytest.raises(ValueError):
        catalog.make_operator("diag", 2, values=[1])
    with pytest.raises(ValueError):
        catalog.make_operator("warp", 2)
    a = catalog.make_family("random_gaussian", make_counting_measure(4), 2, seed=3)
    b = catalog.make_family("random_gaussian", make_counting_measure(4), 2, seed=3)
    np.testing.assert_array_equal(a.vectors, b.vectors)
    R = catalog.make_operator("rotation", 2, angle=90)
    np.testing.assert_allclose(R, [[0, -1], [1, 0]], atol=1e-15)

"""Built-in regression fixtures with their published claims.

Each fixture is an ordinary scenario document. Published numbers that do
not survive direct computation show up as ``mismatch-with-paper-claim``
verdicts; they are reported, not asserted.
"""

import math

from .report import RunReport
from .scenario import parse_scenario, run_parsed

SQRT3_2 = math.sqrt(3.0) / 2.0

EXAMPLE1 = {
    "schema_version": 1,
    "name": "example1",
    "space": {"dimension": 2, "field": "real"},
    "measure": {"kind": "quadrature", "interval": [0, 1], "nodes": 16},
    "families": {
        "xi": {"generator": "example1_xi"},
        "phi": {"generator": "example1_phi"},
    },
    "checks": [
        {
            "name": "example1.classify",
            "op": "classify_pair",
            "xi": "xi",
            "phi": "phi",
            "expect": {"operator": [[0, "1/3"], [0, "1/2"]]},
            "tolerance": 1e-12,
            "claimed": {"bounds": ["1/3", "1/2"], "is_biframe": True},
        },
        {
            "name": "example1.swap",
            "op": "swap_check",
            "xi": "xi",
            "phi": "phi",
            "expect": {"result": True},
        },
        {
            "name": "example1.reconstruct",
            "op": "reconstruct",
            "xi": "xi",
            "phi": "phi",
            "x": [1, 0],
            "expect_error": "SingularOperator",
        },
    ],
}

EXAMPLE2 = {
    "schema_version": 1,
    "name": "example2",
    "space": {"dimension": 2, "field": "real"},
    "measure": {"kind": "quadrature", "interval": [0, 1], "nodes": 16},
    "families": {
        "xi": {"generator": "example2_xi"},
        "phi": {"generator": "example2_phi"},
    },
    "checks": [
        {
            "name": "example2.classify",
            "op": "classify_pair",
            "xi": "xi",
            "phi": "phi",
            "expect": {"operator": [["2/3", "1/3"], ["1/3", "1/6"]], "lower_bound_C": 0},
            "tolerance": 1e-12,
            "claimed": {"bounds": ["1/2", "2"], "is_biframe": True},
            "notes": {"embedding": "diag(a, b) -> (a, b), Hilbert-Schmidt inner product"},
        },
    ],
}

POSITIVE_MATRIX = {
    "schema_version": 1,
    "name": "positive_non_self_adjoint",
    "space": {"dimension": 2, "field": "real"},
    "measure": {"kind": "counting", "size": 2},
    "operators": {"N": {"matrix": [[2, 1], [3, 4]]}},
    "checks": [
        {
            "name": "positive_matrix.positivity",
            "op": "positivity_report",
            "operator": "N",
            "claimed": {"is_positive": True, "is_self_adjoint": False},
            "notes": {"printed_quadratic_form_xx_xy_yy": [5, 1, 4]},
        },
    ],
}

B_RIESZ_EXAMPLE = {
    "schema_version": 1,
    "name": "b_riesz_example",
    "space": {"dimension": 2, "field": "real"},
    "measure": {"kind": "counting", "size": 2},
    "families": {
        "xi": {"generator": "riesz_example"},
        "e": {"generator": "riesz_example_onb"},
        "e_literal": {"vectors": [[0.5, SQRT3_2], [0.5, SQRT3_2]]},
    },
    "checks": [
        {
            "name": "b_riesz_example.certificate",
            "op": "b_riesz_check",
            "xi": "xi",
            "expect": {"is_b_riesz": True},
        },
        {
            "name": "b_riesz_example.literal_pairing",
            "op": "classify_pair",
            "xi": "e_literal",
            "phi": "xi",
            "claimed": {"is_biframe": True},
            "notes": {
                "reading": "both terms pair with the first basis vector, as printed",
                "printed_quadratic_form_xx_xy_yy": [0, -1, -2 * SQRT3_2],
            },
        },
        {
            "name": "b_riesz_example.corrected_pairing",
            "op": "classify_pair",
            "xi": "e",
            "phi": "xi",
            "claimed": {"is_biframe": True},
            "notes": {"reading": "second term paired with the second basis vector"},
        },
    ],
}

FIXTURES = {
    "example1": EXAMPLE1,
    "example2": EXAMPLE2,
    "positive_matrix": POSITIVE_MATRIX,
    "b_riesz_example": B_RIESZ_EXAMPLE,
}


def run_paper_examples(strict_claims=False, tolerance_overrides=None):
    """Run every built-in fixture and collect the results in one report."""
    report = RunReport(title="paper-examples", strict_claims=strict_claims)
    for key, doc in FIXTURES.items():
        sc = parse_scenario(doc, source=key)
        if tolerance_overrides:
            sc.tolerances = sc.tolerances.updated(**tolerance_overrides)
        report.extend(run_parsed(sc, strict_claims))
    return report

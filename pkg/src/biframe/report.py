"""Run reports and their text / JSON renderings.

The JSON writer is hand-rolled so floats come out with 17 significant
digits and the byte stream is a pure function of the report contents.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

PASS = "pass"
FAIL = "fail"
MISMATCH = "mismatch-with-paper-claim"
ERROR = "error"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


@dataclass
class CheckResult:
    name: str
    op: str
    verdict: str
    computed: dict = field(default_factory=dict)
    claimed: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)
    message: str = ""
    elapsed: float = 0.0

    def to_dict(self, include_timing=False):
        out = {
            "name": self.name,
            "op": self.op,
            "verdict": self.verdict,
            "computed": self.computed,
            "claimed": self.claimed,
            "residuals": self.residuals,
        }
        if self.notes:
            out["notes"] = self.notes
        if self.message:
            out["message"] = self.message
        if include_timing:
            out["elapsed_seconds"] = self.elapsed
        return out


@dataclass
class RunReport:
    title: str
    checks: list = field(default_factory=list)
    strict_claims: bool = False

    def add(self, result):
        self.checks.append(result)
        return result

    def extend(self, other):
        self.checks.extend(other.checks)

    @property
    def summary(self):
        counts = {PASS: 0, FAIL: 0, MISMATCH: 0, ERROR: 0}
        for c in self.checks:
            counts[c.verdict] += 1
        counts["total"] = len(self.checks)
        return counts

    @property
    def exit_code(self):
        s = self.summary
        if s[ERROR]:
            return EXIT_NUMERICAL
        if s[FAIL] or (self.strict_claims and s[MISMATCH]):
            return EXIT_FAIL
        return EXIT_OK

    def to_dict(self, include_timing=False):
        return {
            "title": self.title,
            "strict_claims": self.strict_claims,
            "summary": self.summary,
            "exit_code": self.exit_code,
            "checks": [c.to_dict(include_timing) for c in self.checks],
        }

    def to_json(self, include_timing=False):
        return dumps(self.to_dict(include_timing)) + "\n"

    def to_text(self):
        lines = [f"== {self.title} =="]
        for c in self.checks:
            lines.append(f"[{c.verdict.upper():>4}] {c.name} ({c.op}) {c.elapsed * 1e3:.1f} ms")
            for key, value in c.computed.items():
                lines.append(f"    computed {key}: {format_value(value)}")
            for key, value in c.claimed.items():
                lines.append(f"    claimed  {key}: {format_value(value)}")
            for key, value in c.residuals.items():
                lines.append(f"    residual {key}: {format_value(value)}")
            for key, value in c.notes.items():
                lines.append(f"    note     {key}: {format_value(value)}")
            if c.message:
                lines.append(f"    {c.message}")
        s = self.summary
        lines.append(
            f"-- {s['total']} checks: {s[PASS]} pass, {s[FAIL]} fail, "
            f"{s[MISMATCH]} mismatch-with-paper-claim, {s[ERROR]} error; exit {self.exit_code}"
        )
        return "\n".join(lines) + "\n"


def to_plain(value):
    """Convert numpy / complex values into JSON-ready Python objects."""
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_plain(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (np.floating, float)):
        return float(value)
    if hasattr(value, "to_dict"):
        return to_plain(value.to_dict())
    return value


def _float_token(x):
    if math.isnan(x):
        return '"NaN"'
    if math.isinf(x):
        return '"Infinity"' if x > 0 else '"-Infinity"'
    text = format(x, ".17g")
    if text in ("-0", "0"):
        return "0"
    return text


def _encode(value, out):
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        out.append(_float_token(value))
    elif isinstance(value, str):
        out.append(json.dumps(value, ensure_ascii=False))
    elif isinstance(value, dict):
        out.append("{")
        for i, (k, v) in enumerate(value.items()):
            if i:
                out.append(", ")
            _encode(str(k), out)
            out.append(": ")
            _encode(v, out)
        out.append("}")
    elif isinstance(value, list):
        out.append("[")
        for i, v in enumerate(value):
            if i:
                out.append(", ")
            _encode(v, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(value):
    """JSON text with every float written to 17 significant digits."""
    out = []
    _encode(to_plain(value), out)
    return "".join(out)


def format_value(value):
    value = to_plain(value)
    if isinstance(value, float):
        return f"{value:.10g}"
    if isinstance(value, list):
        return "[" + ", ".join(format_value(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {format_value(v)}" for k, v in value.items()) + "}"
    return str(value)

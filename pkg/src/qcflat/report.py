"""Analysis report: a JSON-serializable summary of one full pipeline run.

All scalar invariants are stored as strings in exact mode (lowest-terms
rationals) and as numbers in float mode.  Norms are plain component
sums of squares in the orthonormal frame, no combinatorial weights.
The schema is versioned; ``from_dict(to_dict(r)) == r`` holds exactly.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .scalars import ScalarMode, rational_to_string

SCHEMA_VERSION = 1

#: verdict vocabulary, ordered from strongest to weakest flatness
VERDICT_FLAT_CONNECTION = "flat-connection"
VERDICT_CONFORMALLY_FLAT = "qc-conformally-flat"
VERDICT_NOT_CONFORMALLY_FLAT = "not-conformally-flat"


def format_scalar(x, mode: ScalarMode):
    """Exact mode: lowest-terms string.  Float mode: a JSON number."""
    return rational_to_string(x) if mode.exact else float(x)


@dataclass
class AnalysisReport:
    input_name: str
    n: int
    scalar_mode: str
    connection_summary: dict = field(default_factory=dict)
    torsion_summary: dict = field(default_factory=dict)
    curvature_summary: dict = field(default_factory=dict)
    wqc_summary: dict = field(default_factory=dict)
    identity_suite: list = field(default_factory=list)
    conformal_suite: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return self.wqc_summary.get("verdict", "")

    def all_passed(self) -> bool:
        ok = all(entry["passed"] for entry in self.identity_suite)
        if self.conformal_suite:
            ok = ok and self.conformal_suite["passed"]
        return ok

    def to_dict(self) -> dict:
        out = {"schema": SCHEMA_VERSION}
        out.update(asdict(self))
        return out

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisReport":
        data = dict(data)
        version = data.pop("schema", None)
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema: {version!r}")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = [
            f"input: {self.input_name}  (n = {self.n}, dim = {4 * self.n + 3}, mode = {self.scalar_mode})",
            "",
            "connection:",
            f"  nonzero Christoffel entries: {self.connection_summary['gamma_nonzero']}",
            f"  sp(1) connection forms vanish on H: {self.connection_summary['alpha_horizontal_zero']}",
            "torsion:",
            f"  |T0|^2 = {self.torsion_summary['T0_norm_sq']}",
            f"  |U|^2  = {self.torsion_summary['U_norm_sq']}",
            f"  u = 0: {self.torsion_summary['u_zero']}",
            "curvature:",
            f"  Scal = {self.curvature_summary['Scal']}",
            f"  |R_H|^2 = {self.curvature_summary['R_norm_sq']}",
            f"  flat connection: {self.curvature_summary['flat']}",
            "conformal tensor:",
            f"  |WR|^2 = {self.wqc_summary['WR_norm_sq']}",
            f"  verdict: {self.wqc_summary['verdict']}",
            "",
            "identity suite:",
        ]
        for entry in self.identity_suite:
            status = "ok" if entry["passed"] else "FAIL"
            lines.append(f"  [{status}] {entry['name']}: residual {entry['residual']:g}")
        if self.conformal_suite:
            cs = self.conformal_suite
            status = "ok" if cs["passed"] else "FAIL"
            lines.append("conformal suite:")
            lines.append(
                f"  [{status}] {cs['trials']} jets, max residual {cs['max_residual']:g}"
            )
        lines.append("timings:")
        for key, value in self.timings.items():
            lines.append(f"  {key}: {value:.3f} s")
        lines.append("")
        lines.append("overall: " + ("PASS" if self.all_passed() else "FAIL"))
        return "\n".join(lines) + "\n"


def checks_to_entries(checks) -> list:
    return [
        {"name": c.name, "residual": float(c.residual), "passed": bool(c.passed)}
        for c in checks
    ]

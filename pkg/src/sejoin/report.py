"""Reports on evaluated expressions and their table, JSON and TSV renderings.

JSON schema ``sejoin.report/1`` (keys in this order)::

    schema       "sejoin.report/1"
    expression   the input text
    space        name, dim, n, index, order, order_bounds, regular, smooth,
                 simply_connected, homogeneous, three_sasakian,
                 se_irreducible, ke_certified, moduli_dim_lower, betti,
                 euler_characteristic
    certificates one object per join step: left, right, l1, l2, m1, m2, g, verdict
    integral     "rational only", or {rule, scope, description, relations, groups}
                 where groups lists {degree, free, torsion} for every degree
                 (torsion as invariant factors) or {degree, group: "unknown"}
    notes        list of strings
    violations   list of {rule, expected, found}

Unknown values are the string ``"unknown"``, never omitted or null.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .algebra import GradedGroup, euler_characteristic
from .join import JoinExpr, Leaf, ambiguity_notes, flatten, integral_model, join, smoothness_certificate
from .space import SeSpace
from .validators import validate_space

SCHEMA = "sejoin.report/1"
UNKNOWN = "unknown"


def tri(value: Any) -> Any:
    return UNKNOWN if value is None else value


def groups_data(graded: GradedGroup) -> list[dict]:
    out = []
    for q in range(graded.dim + 1):
        if q > graded.top_known:
            out.append({"degree": q, "group": UNKNOWN})
            continue
        free, torsion = graded[q].canonical()
        out.append({"degree": q, "free": free, "torsion": list(torsion)})
    return out


def group_text(entry: dict) -> str:
    if entry.get("group") == UNKNOWN:
        return "?"
    parts = []
    if entry["free"]:
        parts.append("Z" if entry["free"] == 1 else f"Z^{entry['free']}")
    parts += [f"Z_{t}" for t in entry["torsion"]]
    return "+".join(parts) or "0"


def space_data(s: SeSpace) -> dict:
    return {
        "name": s.name,
        "dim": s.dim,
        "n": s.n,
        "index": s.index,
        "order": tri(s.order),
        "order_bounds": [tri(b) for b in s.order_bounds] if s.order_bounds else UNKNOWN,
        "regular": s.regular,
        "smooth": tri(s.smooth),
        "simply_connected": s.simply_connected,
        "homogeneous": s.homogeneous,
        "three_sasakian": s.three_sasakian,
        "se_irreducible": tri(s.se_irreducible),
        "ke_certified": s.ke_certified,
        "moduli_dim_lower": s.moduli_dim_lower,
        "betti": list(s.betti.ranks),
        "euler_characteristic": euler_characteristic(s.betti),
    }


@dataclass(frozen=True)
class Report:
    expression: str
    space: dict
    certificates: list = field(default_factory=list)
    integral: Any = "rational only"
    notes: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    schema: str = SCHEMA

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "expression": self.expression,
            "space": self.space,
            "certificates": self.certificates,
            "integral": self.integral,
            "notes": self.notes,
            "violations": self.violations,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {data.get('schema')!r}")
        return cls(
            expression=data["expression"],
            space=data["space"],
            certificates=data["certificates"],
            integral=data["integral"],
            notes=data["notes"],
            violations=data["violations"],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    @property
    def indeterminate(self) -> bool:
        return self.space["smooth"] == UNKNOWN or any(c["verdict"] == "indeterminate" for c in self.certificates)


def _cert_walk(expr: JoinExpr, out: list) -> SeSpace:
    """Evaluate ``expr`` bottom-up, recording a certificate at every join node."""
    if isinstance(expr, Leaf):
        return expr.space
    left = _cert_walk(expr.left, out)
    right = _cert_walk(expr.right, out)
    if not (left.is_identity or right.is_identity):
        c = smoothness_certificate(left, right)
        out.append({"left": left.name, "right": right.name, "l1": c.l1, "l2": c.l2,
                    "m1": tri(c.m1), "m2": tri(c.m2), "g": tri(c.g), "verdict": c.verdict.value})
    return join(left, right)


def build_report(text: str, expr: JoinExpr) -> Report:
    certs: list = []
    space = _cert_walk(expr, certs)
    integral: Any = "rational only"
    model = integral_model(flatten(expr), space.betti)
    if model is not None:
        integral = {
            "rule": model.rule_id,
            "scope": model.scope.value,
            "description": model.match_description,
            "relations": list(model.ring_relations),
            "groups": groups_data(model.groups),
        }
    elif space.integral is not None:
        integral = {
            "rule": "atom",
            "scope": "full" if space.integral.complete else "low",
            "description": space.name,
            "relations": [],
            "groups": groups_data(space.integral),
        }
    violations = [{"rule": v.rule, "expected": v.expected, "found": v.found} for v in validate_space(space)]
    return Report(text, space_data(space), certs, integral, ambiguity_notes(space), violations)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return "(" + ",".join(str(v) for v in value) + ")"
    return str(value)


def render_report(report: Report, fmt: str) -> str:
    if fmt == "json":
        return report.to_json()
    sp = report.space
    rows = [(key, _cell(value)) for key, value in sp.items()]
    if isinstance(report.integral, dict):
        rows.append(("integral_rule", f"{report.integral['rule']} ({report.integral['scope']})"))
        rows.append(("integral", "(" + ", ".join(group_text(g) for g in report.integral["groups"]) + ")"))
    else:
        rows.append(("integral", report.integral))
    for c in report.certificates:
        rows.append(
            ("certificate", f"{c['left']} * {c['right']}: l=({c['l1']},{c['l2']}) "
             f"m=({c['m1']},{c['m2']}) g={c['g']} {c['verdict']}")
        )
    rows += [("note", n) for n in report.notes]
    rows += [("violation", f"{v['rule']}: expected {v['expected']}, found {v['found']}") for v in report.violations]
    if fmt == "tsv":
        return "\n".join(f"{k}\t{v}" for k, v in [("expression", report.expression)] + rows)
    width = max(len(k) for k, _ in rows)
    lines = [report.expression, "-" * len(report.expression)]
    lines += [f"{k.ljust(width)}  {v}" for k, v in rows]
    return "\n".join(lines)


def render_rows(columns: Sequence[str], rows: Iterable[Sequence[Any]], fmt: str, meta: dict | None = None) -> str:
    """A list of records as an aligned table, TSV, or a JSON object."""
    rows = [list(r) for r in rows]
    if fmt == "json":
        body = {"schema": SCHEMA, **(meta or {}), "columns": list(columns),
                "rows": [dict(zip(columns, (tri(v) for v in r))) for r in rows]}
        return json.dumps(body, indent=2)
    cells = [[_cell(tri(v)) for v in r] for r in rows]
    if fmt == "tsv":
        buf = io.StringIO()
        writer = csv.writer(buf, delimiter="\t", lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(cells)
        return buf.getvalue().rstrip("\n")
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines)

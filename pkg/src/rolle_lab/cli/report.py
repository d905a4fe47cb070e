"""Report assembly and rendering."""

from __future__ import annotations

import json
from typing import Any

from .. import __version__
from ..certificate import jsonable

SCHEMA = "rolle-lab/report/v1"


def build_report(kind: str, echo: Any, seed: int, body: dict, timing: float | None = None) -> dict:
    rep = {"schema": SCHEMA, "tool_version": __version__, "kind": kind, "input": jsonable(echo), "seed": seed}
    rep.update(body)
    rep.setdefault("certificates", {})
    rep.setdefault("ok", None)
    if timing is not None:
        rep["timing_seconds"] = timing
    return rep


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _fmt(x: Any) -> str:
    if isinstance(x, (dict, list)):
        return json.dumps(x, sort_keys=True)
    return str(x)


def to_text(report: dict) -> str:
    lines = [f"rolle-lab {report['tool_version']}  kind={report['kind']}  seed={report['seed']}"]
    for name in sorted(report.get("certificates", {})):
        c = report["certificates"][name]
        lines.append(f"[{name}] bound = {c['bound']} {c['unit']}  ({c['theorem']})  valid={c['valid']}")
        for h in c["hypotheses"]:
            mark = "ok " if h["holds"] else "FAIL"
            lines.append(f"    {mark} {h['name']}: {h['lhs']} {h['relation']} {h['rhs']}")
        for step in c["trace"]:
            lines.append(f"    - {step}")
    for key in ("results", "oracle"):
        if key in report:
            lines.append(f"{key}:")
            for k in sorted(report[key]):
                lines.append(f"    {k}: {_fmt(report[key][k])}")
    for name in sorted(report.get("series", {})):
        lines.append(f"series {name}:")
        data = report["series"][name]
        rows = data["points"] if isinstance(data, dict) else data
        for row in rows:
            lines.append("    " + " ".join(_fmt(v) for v in (row if isinstance(row, list) else [row])))
    for c in report.get("comparisons", []):
        lines.append(f"compare {c['name']}: bound {c['bound']} vs oracle {c['oracle']}")
    if "timing_seconds" in report:
        lines.append(f"time: {report['timing_seconds']:.3f} s")
    lines.append(f"ok: {report.get('ok')}")
    return "\n".join(lines) + "\n"

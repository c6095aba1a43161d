"""Deterministic rendering of reports and exit-code mapping."""

from __future__ import annotations

import json

from .schemas import Report


def render_json(report: Report) -> str:
    """Canonical machine format: sorted keys, compact separators, trailing
    newline.  Parsing and re-emitting is byte-identical."""
    return json.dumps(report.model_dump(), sort_keys=True, separators=(",", ":")) + "\n"


def reemit_json(text: str) -> str:
    """Round-trip a rendered report through its own schema."""
    return render_json(Report.model_validate(json.loads(text)))


def render_text(report: Report) -> str:
    lines = [f"# torsionkit report v{report.format_version}"]
    lines.append("command: " + " ".join(report.command))
    lines.append(f"result: {report.result}")
    for name, verdict in report.verdicts.items():
        lines.append(f"verdict {name}: {verdict}")
    for key in sorted(report.info):
        lines.append(f"info {key}: " + json.dumps(report.info[key], sort_keys=True, separators=(",", ":")))
    for key in sorted(report.witnesses):
        lines.append(f"witness {key}: " + json.dumps(report.witnesses[key], sort_keys=True, separators=(",", ":")))
    if report.timing is not None:
        lines.append(f"time: {report.timing:.6f}s")
    return "\n".join(lines) + "\n"


def exit_code(report: Report) -> int:
    if report.result == "pass":
        return 0
    if report.result == "fail":
        return 1
    return 2

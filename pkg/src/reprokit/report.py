"""Deterministic serialization of comparison reports.

A report is a plain nested dict (JSON-shaped). Emission is byte-deterministic
for identical inputs: JSON keys are sorted, the CSV column order is fixed
(see CSV_HEADER), and the text table groups columns as
ARP | Correlation | RMSE | p-value. No timestamps unless provenance was
explicitly requested upstream.
"""

from __future__ import annotations

import json

from .errors import ConfigError

CSV_HEADER = (
    "measure,arp_orig,arp_rpl,delta_arp,delta_arp_signed,"
    "tau_union,tau_intersection,overlap,rbo,rmse,t_stat,p_value,"
    "er,ri,ri_prime,delta_ri,region,dist"
)

FORMATS = ("json", "csv", "table")


def _fmt(value, sci_below: float | None = None) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if sci_below is not None and 0 < abs(value) < sci_below:
        mantissa, _, exp = f"{value:.0E}".partition("E")
        return f"{mantissa}E{int(exp)}"
    return f"{value:.4f}"


def emit(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return emit_csv(report)
    if fmt == "table":
        return emit_table(report)
    raise ConfigError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def _row_values(report: dict, label: str) -> dict:
    block = report["measures"][label]
    effects = (report.get("effects") or {}).get(label, {})
    return {
        "measure": label,
        "arp_orig": block.get("arp_orig"),
        "arp_rpl": block.get("arp_rpl"),
        "delta_arp": block.get("delta_arp"),
        "delta_arp_signed": block.get("delta_arp_signed"),
        "tau_union": (report.get("ordering") or {}).get("tau_union_mean"),
        "tau_intersection": (report.get("ordering") or {}).get("tau_intersection_mean"),
        "overlap": (report.get("ordering") or {}).get("mean_overlap"),
        "rbo": (report.get("ordering") or {}).get("rbo_mean"),
        "rmse": block.get("rmse"),
        "t_stat": block.get("t_stat"),
        "p_value": block.get("p_value"),
        "er": effects.get("er"),
        "ri": effects.get("ri"),
        "ri_prime": effects.get("ri_prime"),
        "delta_ri": effects.get("delta_ri"),
        "region": effects.get("region"),
        "dist": effects.get("dist"),
    }


def emit_csv(report: dict) -> str:
    lines = [CSV_HEADER]
    for label in report["measures"]:
        row = _row_values(report, label)
        lines.append(",".join(_fmt(row[col]) for col in CSV_HEADER.split(",")))
    return "\n".join(lines) + "\n"


def emit_table(report: dict) -> str:
    lines = []
    runs = report["runs"]
    lines.append(f"mode: {report['mode']}    topics: {report['topics']}")
    lines.append("runs: " + ", ".join(f"{role}={tag}" for role, tag in runs.items()))
    lines.append("")
    header = f"{'measure':<12}{'ARP orig':>10}{'ARP rpl':>10}{'dARP':>8} | {'tau':>8}{'RBO':>8} | {'RMSE':>8} | {'p-value':>10}"
    lines.append(header)
    lines.append("-" * len(header))
    ordering = report.get("ordering") or {}
    for label in report["measures"]:
        row = _row_values(report, label)
        lines.append(
            f"{label:<12}"
            f"{_fmt(row['arp_orig']):>10}{_fmt(row['arp_rpl']):>10}{_fmt(row['delta_arp']):>8}"
            f" | {_fmt(row['tau_union']):>8}{_fmt(row['rbo']):>8}"
            f" | {_fmt(row['rmse']):>8}"
            f" | {_fmt(row['p_value'], sci_below=1e-3):>10}"
        )
    if ordering.get("tau_intersection_mean") is not None:
        lines.append("")
        lines.append(
            f"tau on intersection: {_fmt(ordering['tau_intersection_mean'])} "
            f"(mean overlap {_fmt(ordering['mean_overlap'])})"
        )
    effects = report.get("effects")
    if effects:
        lines.append("")
        eff_header = f"{'measure':<12}{'ER':>10}{'RI':>10}{'RI prime':>10}{'dRI':>10}  {'region':<16}{'dist':>8}"
        lines.append(eff_header)
        lines.append("-" * len(eff_header))
        for label, eff in effects.items():
            lines.append(
                f"{label:<12}{_fmt(eff['er']):>10}{_fmt(eff['ri']):>10}"
                f"{_fmt(eff['ri_prime']):>10}{_fmt(eff['delta_ri']):>10}"
                f"  {eff['region']:<16}{_fmt(eff['dist']):>8}"
            )
    cutoffs = report.get("cutoffs")
    if cutoffs:
        lines.append("")
        lines.append(f"{'cutoff':<8}{'measure':<12}{'tau':>8}{'RBO':>8}{'RMSE':>8}")
        for k, block in cutoffs.items():
            for label, vals in block.items():
                lines.append(
                    f"{k:<8}{label:<12}{_fmt(vals.get('tau_union')):>8}"
                    f"{_fmt(vals.get('rbo')):>8}{_fmt(vals.get('rmse')):>8}"
                )
    if report.get("warnings"):
        lines.append("")
        lines.append("warnings:")
        lines.extend(f"  - {w}" for w in report["warnings"])
    return "\n".join(lines) + "\n"

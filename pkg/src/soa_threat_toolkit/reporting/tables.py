"""Plain-text tables for terminal output."""

from typing import List, Optional, Sequence

from soa_threat_toolkit.analysis.prefixes import EntryGroup, PlacementHint
from soa_threat_toolkit.analysis.summary import PairCount
from soa_threat_toolkit.core.model import Violation
from soa_threat_toolkit.core.tara import TraceRow
from soa_threat_toolkit.reporting.report import Report
from soa_threat_toolkit.utils.constants import GAP_MARKER, PATH_ARROW


def render_table(headers: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    """Left-aligned columns separated by two spaces, with a dashed rule under the header."""
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def violations_listing(violations: Sequence[Violation]) -> str:
    return "".join(f"{v}\n" for v in violations)


def summary_table(report: Report) -> str:
    rows = []
    for profile, counts in sorted(report.atom_counts.items()):
        profile_counts = getattr(report.summary, profile)
        rows.append((
            profile,
            profile_counts.path_count,
            profile_counts.element_path_count,
            counts.reach,
            ", ".join(counts.attacked_topics) or "-",
        ))
    table = render_table(("Intruder", "#Attack Paths", "#Element Paths", "#Reached Ports", "Attacked Topics"), rows)
    timings = report.summary.timings_ms
    if timings:
        table += "Timings (ms): " + ", ".join(f"{k} {v:.1f}" for k, v in timings.items()) + "\n"
    gaps = report.trace_matrix.gaps
    if gaps:
        table += f"Traceability gaps: {', '.join(gaps)}\n"
    return table


def prefix_table(groups: Sequence[EntryGroup], hints: Sequence[PlacementHint], heading: str = "Public element") -> str:
    """Entry / count / prefix rows followed by the placement hints."""
    text = render_table(
        (heading, "#Attack Paths", "Prefix"),
        [(g.entry, g.path_count, PATH_ARROW.join(g.common_prefix)) for g in groups],
    )
    if hints:
        text += "\nPlacement hints\n"
        text += render_table(
            ("Location", "#Entries", "#Attack Paths", "In front of"),
            [
                (
                    h.location,
                    len(h.covered_entries),
                    h.covered_path_count,
                    ", ".join(f"{a}{PATH_ARROW}{b}" for a, b in h.incoming) or "-",
                )
                for h in hints
            ],
        )
    return text


def pair_table(pairs: Sequence[PairCount]) -> str:
    """Potential attacks: one row per (from, to, affected topic)."""
    return "Potential attacks\n" + render_table(
        ("From", "To", "Affected Topic", "#Attack Paths"),
        [(p.source, p.target, p.affected_topic, p.path_count) for p in pairs],
    )


def trace_listing(row: TraceRow, report: Report) -> str:
    lines: List[str] = [f"Loss scenario: {row.loss_scenario_id}{'  ' + GAP_MARKER if row.gap else ''}"]
    lines.append("Assets:")
    for asset_id in row.asset_ids:
        asset = report.asset(asset_id)
        label = f"{asset.kind.value} {asset.referent} ({asset.property.value})" if asset else ""
        lines.append(f"  {asset_id}  {label}".rstrip())
    lines.append("Damage scenarios: " + (", ".join(row.damage_ids) or GAP_MARKER))
    threats = {t.id: t for t in report.tara.threat_scenarios}
    lines.append("Threat scenarios:")
    for threat_id in row.threat_ids:
        threat = threats.get(threat_id)
        lines.append(f"  {threat_id}  {threat.stride.value if threat else ''}".rstrip())
    count: Optional[str] = str(row.attack_path_count) if row.attack_path_count else f"0 {GAP_MARKER}"
    lines.append(f"Attack paths: {count}")
    return "\n".join(lines) + "\n"

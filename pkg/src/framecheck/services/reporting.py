"""Machine-readable (JSON) and human-readable (markdown) run reports."""

from collections.abc import Sequence

from pydantic import TypeAdapter

from framecheck.core.schemas import ConsistencyStatus, ReportEntry, RunReport

_ENTRIES = TypeAdapter(list[ReportEntry])


def report_entries(reports: Sequence[RunReport]) -> list[ReportEntry]:
    """Fixed-schema rows, sorted by case name, then prime, then source."""
    entries = [
        ReportEntry(
            case=r.case,
            prime=r.prime,
            source=r.source,
            verdict=r.zero_at_p,
            m=r.minimal_multiple,
            certificate_path=r.certificate_path,
            consistency=r.consistency,
        )
        for r in reports
    ]
    return sorted(entries, key=lambda e: (e.case, e.prime, e.source))


def render_json(entries: Sequence[ReportEntry]) -> str:
    return _ENTRIES.dump_json(list(entries), indent=2).decode() + "\n"


def parse_json(text: str) -> list[ReportEntry]:
    return _ENTRIES.validate_json(text)


def _verdict_cell(report: RunReport) -> str:
    if report.zero_at_p and report.unbalanced_support:
        return f"t = 0 (rests on unbalanced {', '.join(report.unbalanced_support)})"
    if report.zero_at_p:
        return "t = 0"
    return "open"


def _multiple(m: int | None) -> str:
    return "∞" if m is None else str(m)


def render_markdown(reports: Sequence[RunReport], case_order: Sequence[str]) -> str:
    """One section per case in ``case_order``; cases not listed follow alphabetically."""
    rank = {name: n for n, name in enumerate(case_order)}
    by_case: dict[str, list[RunReport]] = {}
    for r in reports:
        by_case.setdefault(r.case, []).append(r)
    names = sorted(by_case, key=lambda name: (rank.get(name, len(rank)), name))

    lines = ["# [G, L] verification report", ""]
    for name in names:
        runs = sorted(by_case[name], key=lambda r: (r.prime, r.source))
        first = runs[0]
        lines += [f"## {name} ({first.group})", ""]
        lines += [
            "| prime | source | verdict | m | dropped | certificate |",
            "|---|---|---|---|---|---|",
        ]
        for r in runs:
            certificate = "verified" if r.certificate_verified else "-"
            if r.certificate_path:
                certificate += f" (`{r.certificate_path}`)"
            lines.append(
                f"| {r.prime} | {r.source} | {_verdict_cell(r)} | {_multiple(r.minimal_multiple)} "
                f"| {r.dropped_relations} | {certificate} |"
            )
        lines.append("")

        if first.consistency:
            lines += ["### Printed displays", ""]
            for entry in first.consistency:
                line = f"- {entry.source} (λ^{entry.lambda_power}): {entry.status.value}"
                if entry.status is ConsistencyStatus.DISCREPANT and entry.diff:
                    diffs = ", ".join(
                        f"t^{d.exponent}: {d.printed} printed vs {d.computed}" for d in entry.diff
                    )
                    line += f" ({diffs})"
                if entry.note:
                    line += f"; {entry.note}"
                lines.append(line)
            lines.append("")

        identities = [(r.prime, o) for r in runs for o in r.identities]
        if identities:
            lines += ["### Identities", ""]
            for prime, outcome in identities:
                status = "holds" if outcome.holds else "not derived"
                detail = outcome.error or f"order {_multiple(outcome.minimal_multiple)}"
                lines.append(f"- p={prime}: `{outcome.identity}` {status} ({detail})")
            lines.append("")

        problems = [(r.prime, f) for r in runs for f in r.failures]
        if problems:
            lines += ["### Failures", ""]
            lines += [f"- p={prime}: {text}" for prime, text in problems]
            notes = sorted({n for r in runs for n in r.notes})
            lines += [f"- note: {n}" for n in notes]
            lines.append("")
    return "\n".join(lines)

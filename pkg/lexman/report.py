"""Text rendering of Hilbert functions, Betti tables, step logs and theorem reports.

Human output is meant for reading; machine output is tab-separated and sorted so
that two runs can be diffed.
"""

from typing import Iterable, Sequence

from lexman.betti import BettiTable
from lexman.hilbert import HilbertFunction
from lexman.ideal_file import instance_file, render_ideal_file
from lexman.models import TheoremReport, TransformStep
from lexman.theorem import report_ok


def render_hf(hf: HilbertFunction, machine: bool = False) -> str:
    """Render a Hilbert function as ``d dim`` lines or as a small table with quotient dimensions."""
    if machine:
        return "\n".join(f"{d}\t{dim}" for d, dim in enumerate(hf.dims))
    lines = [f"{'degree':>6} {'ideal':>8} {'quotient':>8}"]
    for d, (dim, rest) in enumerate(zip(hf.dims, hf.quotient())):
        lines.append(f"{d:>6} {dim:>8} {rest:>8}")
    return "\n".join(lines)


def render_betti(tables: Iterable[BettiTable], machine: bool = False) -> str:
    """Render Betti tables, as ``char i j value`` lines or in the Macaulay2 layout."""
    tables = sorted(
        tables, key=lambda table: -1 if table.field is None else table.field.characteristic
    )
    if machine:
        return "\n".join(
            f"{'-' if table.field is None else table.field.characteristic}\t{i}\t{j}\t{value}"
            for table in tables
            for (i, j), value in sorted(table.entries.items())
        )
    blocks = []
    for table in tables:
        title = "closed form" if table.field is None else f"over {table.field}"
        blocks.append(f"betti ({table.convention}) {title}\n{table}")
    return "\n\n".join(blocks)


def render_log(log: Sequence[TransformStep]) -> str:
    """One line per applied step, with 1-based variable indices."""
    lines = []
    for number, step in enumerate(log, start=1):
        a, b = step.pair
        lines.append(
            f"{number:>4} {step.kind.value:<16} x{a + 1},x{b + 1} t={step.t} -> {step.ideal}"
        )
    return "\n".join(lines)


def render_report(report: TheoremReport) -> str:
    """Deterministic text for a theorem report; failing reports carry the instance file."""
    inst = report.instance
    lines = [
        f"instance seed={inst.seed} n={inst.ring.n} powers={' '.join(map(str, inst.powers.e))}",
        f"  I         = {inst.ideal}",
        f"  L         = {report.lex}",
        f"  P + L~ + L = {report.combined}",
        f"  hf_match  = {str(report.hf_match).lower()}",
    ]
    for char, ok in sorted(report.betti_ok.items()):
        lines.append(f"  betti char {char} = {'ok' if ok else 'FAILED'}")
    if report.stable is not None:
        lines.append(f"  B         = {report.stable}")
        lines.append(f"  stable_ok = {str(report.stable_ok).lower()}")
        if report.log:
            lines.append(render_log(report.log))
    if not report_ok(report):
        lines.append("COUNTEREXAMPLE")
        lines.append(render_ideal_file(instance_file(inst)).rstrip("\n"))
        for char, (table_ideal, table_combined) in sorted(report.tables.items()):
            lines.append(f"I, characteristic {char}:\n{table_ideal}")
            lines.append(f"P + L~ + L, characteristic {char}:\n{table_combined}")
    return "\n".join(lines)

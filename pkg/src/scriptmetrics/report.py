"""Report model and its plain-text, CSV and Markdown renderings.

A report is a list of sections; each section may hold a table, ``key=value``
fields and free-text notes.  Numbers carry their display precision so output
is byte-for-byte reproducible.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Union

FORMATS = ("text", "csv", "md")


@dataclass(frozen=True)
class Num:
    value: float
    digits: int = 2

    def __str__(self) -> str:
        return f"{self.value:.{self.digits}f}"


Cell = Union[str, int, Num, None]


def render_cell(cell: Cell) -> str:
    if cell is None:
        return ""
    if isinstance(cell, bool):
        return "yes" if cell else "no"
    return str(cell)


@dataclass
class Table:
    columns: list[str]
    rows: list[list[Cell]] = field(default_factory=list)


@dataclass
class Section:
    title: str
    table: Table | None = None
    fields: list[tuple[str, Cell]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


@dataclass
class Report:
    sections: list[Section] = field(default_factory=list)

    def add(self, section: Section) -> Section:
        self.sections.append(section)
        return section


def _is_numeric(cell: Cell) -> bool:
    return isinstance(cell, (int, float, Num)) and not isinstance(cell, bool)


def _text_table(table: Table) -> list[str]:
    cells = [table.columns] + [[render_cell(c) for c in row] for row in table.rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(table.columns))]
    numeric = [bool(table.rows) and all(_is_numeric(row[i]) or row[i] is None for row in table.rows)
               for i in range(len(table.columns))]
    out = []
    for r in cells:
        parts = [c.rjust(w) if num else c.ljust(w) for c, w, num in zip(r, widths, numeric)]
        out.append("  ".join(parts).rstrip())
    return out


def _emit_text(report: Report) -> str:
    blocks = []
    for sec in report.sections:
        lines = [f"== {sec.title} =="]
        if sec.table is not None:
            lines += _text_table(sec.table)
        lines += [f"{k}={render_cell(v)}" for k, v in sec.fields]
        lines += [f"note: {n}" for n in sec.notes]
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


def _emit_csv(report: Report) -> str:
    blocks = []
    titled = len(report.sections) > 1
    for sec in report.sections:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if titled:
            buf.write(f"# {sec.title}\n")
        if sec.table is not None:
            w.writerow(sec.table.columns)
            w.writerows([render_cell(c) for c in row] for row in sec.table.rows)
        if sec.fields:
            if sec.table is not None:
                buf.write("\n")
            w.writerow(["field", "value"])
            w.writerows([k, render_cell(v)] for k, v in sec.fields)
        for n in sec.notes:
            buf.write(f"# note: {n}\n")
        blocks.append(buf.getvalue())
    return "\n".join(blocks)


def _md_escape(s: str) -> str:
    return s.replace("|", "\\|")


def _emit_md(report: Report) -> str:
    blocks = []
    for sec in report.sections:
        lines = [f"### {sec.title}", ""]
        if sec.table is not None:
            t = sec.table
            lines.append("| " + " | ".join(_md_escape(c) for c in t.columns) + " |")
            aligns = [all(_is_numeric(r[i]) or r[i] is None for r in t.rows) and bool(t.rows)
                      for i in range(len(t.columns))]
            lines.append("|" + "|".join("---:" if a else "---" for a in aligns) + "|")
            for row in t.rows:
                lines.append("| " + " | ".join(_md_escape(render_cell(c)) for c in row) + " |")
            lines.append("")
        if sec.fields:
            lines += [f"- {k}: {render_cell(v)}" for k, v in sec.fields]
            lines.append("")
        if sec.notes:
            lines += [f"> {n}" for n in sec.notes]
            lines.append("")
        blocks.append("\n".join(lines))
    return "\n".join(blocks)


def emit_report(report: Report, fmt: str = "text") -> str:
    """Render ``report``; an empty report renders as the empty string."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    if not report.sections:
        return ""
    return {"text": _emit_text, "csv": _emit_csv, "md": _emit_md}[fmt](report)

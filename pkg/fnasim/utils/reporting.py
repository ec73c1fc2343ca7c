"""CSV reports and aligned console tables."""

import csv
import io
from typing import Dict, Iterable, List, Optional, Sequence

# Every float in a report is written with this many decimals
DECIMALS = 6


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.{DECIMALS}f}"
    return str(value)


def render_csv(
    columns: Sequence[str],
    rows: Iterable[Sequence],
    comments: Optional[Sequence[str]] = None,
) -> str:
    """CSV text with optional leading ``# comment`` lines."""
    buf = io.StringIO()
    for comment in comments or []:
        buf.write(f"# {comment}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    return buf.getvalue()


def write_csv(
    path: str,
    columns: Sequence[str],
    rows: Iterable[Sequence],
    comments: Optional[Sequence[str]] = None,
) -> str:
    """Write a report to ``path`` and return its text."""
    text = render_csv(columns, rows, comments)
    with open(path, "w", newline="", encoding="utf-8") as f:
        f.write(text)
    return text


def read_csv(path: str) -> List[Dict[str, str]]:
    """Rows of a report written by :func:`write_csv`, comment lines skipped."""
    with open(path, newline="", encoding="utf-8") as f:
        lines = [line for line in f if not line.startswith("#")]
    return list(csv.DictReader(lines))


def read_comments(path: str) -> List[str]:
    with open(path, encoding="utf-8") as f:
        return [line[2:].rstrip("\n") for line in f if line.startswith("# ")]


def format_table(columns: Sequence[str], rows: Iterable[Sequence]) -> str:
    """Plain-text table with right-aligned columns."""
    cells = [list(columns)] + [[format_value(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
    lines = []
    for n, row in enumerate(cells):
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
        if n == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)

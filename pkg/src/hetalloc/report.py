"""Run-report rendering: per-user rows as CSV or an aligned text table.

The CSV form is the machine interface: full-precision values, stable
column order, LF line endings, byte-identical across repeat runs.  The
table form is for eyeballs and floors unit counts for display.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .engine import RunSummary
from .errors import DomainError
from .scenario import Scenario

CSV_HEADER = "user,n_of,n_bit,data_size,allocated_units,system_state"
_COLUMNS = CSV_HEADER.split(",")


@dataclass(frozen=True)
class ReportRow:
    """One user's line in the final report.

    ``system_state`` is the running cumulative carried bits including
    this user's rows above it.
    """

    user: int
    n_of: int
    n_bit: int
    data_size: float
    allocated_units: float
    system_state: float


def build_rows(summary: RunSummary, scenario: Scenario) -> list[ReportRow]:
    """One row per scenario user, ascending id.

    Modulation columns reflect the network that last served the user;
    users never served report against the mobile network and keep zero
    units.
    """
    rows = []
    running = 0.0
    for user in scenario.users:
        net_id = summary.per_user_last_network.get(user.id)
        net = scenario.network(net_id) if net_id else scenario.mobile_network()
        n_of, n_bit = scenario.user_modulation(user, net)
        bits = summary.per_user_bits.get(user.id, 0.0)
        running += bits
        rows.append(
            ReportRow(
                user=user.id,
                n_of=n_of,
                n_bit=n_bit,
                data_size=user.data_size,
                allocated_units=summary.per_user_units.get(user.id, 0.0),
                system_state=running,
            )
        )
    return rows


def _fmt(value) -> str:
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    return repr(value) if isinstance(value, float) else str(value)


def emit_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_COLUMNS)
    for row in rows:
        writer.writerow(
            [
                row.user,
                row.n_of,
                row.n_bit,
                _fmt(row.data_size),
                _fmt(row.allocated_units),
                _fmt(row.system_state),
            ]
        )
    return buf.getvalue()


def emit_table(rows) -> str:
    header = list(_COLUMNS)
    body = [
        [
            str(row.user),
            str(row.n_of),
            str(row.n_bit),
            _fmt(row.data_size),
            str(math.floor(row.allocated_units)),
            f"{row.system_state:.6g}",
        ]
        for row in rows
    ]
    widths = [
        max(len(header[i]), *(len(line[i]) for line in body)) if body else len(header[i])
        for i in range(len(header))
    ]
    lines = [
        "  ".join(header[i].ljust(widths[i]) for i in range(len(header))).rstrip(),
        "  ".join("-" * widths[i] for i in range(len(header))),
    ]
    for line in body:
        lines.append("  ".join(line[i].rjust(widths[i]) for i in range(len(header))))
    return "\n".join(lines) + "\n"


def emit_report(summary: RunSummary, scenario: Scenario, fmt: str = "table") -> str:
    """Render the per-user report in the requested format.

    Raises:
        DomainError: On a format other than ``"table"`` or ``"csv"``.
    """
    rows = build_rows(summary, scenario)
    if fmt == "csv":
        return emit_csv(rows)
    if fmt == "table":
        return emit_table(rows)
    raise DomainError(f"unknown report format {fmt!r}; choose 'table' or 'csv'")


def parse_report_csv(text: str) -> list[ReportRow]:
    """Inverse of ``emit_csv``, for round-trips and downstream tooling.

    Raises:
        DomainError: On a missing or unexpected header.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise DomainError("empty report: missing CSV header") from None
    if header != _COLUMNS:
        raise DomainError(f"unexpected CSV header {','.join(header)!r}")
    rows = []
    for record in reader:
        if not record:
            continue
        user, n_of, n_bit, data_size, units, system_state = record
        rows.append(
            ReportRow(
                user=int(user),
                n_of=int(n_of),
                n_bit=int(n_bit),
                data_size=float(data_size),
                allocated_units=float(units),
                system_state=float(system_state),
            )
        )
    return rows

import csv
import io
import json
import logging

from dataclasses import dataclass, field
from fractions import Fraction
from openpyxl import Workbook
from openpyxl.styles import Font

SCHEMA = "hkspread.report.v1"


def encode(value):
    """Replace exact rationals by {"num": int, "den": int} pairs, recursively."""
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, dict):
        return {k: encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    return value


def decode(value):
    if isinstance(value, dict):
        if set(value) == {"num", "den"}:
            return Fraction(value["num"], value["den"])
        return {k: decode(v) for k, v in value.items()}
    if isinstance(value, list):
        return [decode(v) for v in value]
    return value


@dataclass
class Report:
    """Everything a session produced. Timing is kept apart from results so that results are
    deterministic for a fixed script and config."""

    version: str
    config: dict
    results: list = field(default_factory=list)
    timing: list = field(default_factory=list)
    error: dict = None
    schema: str = SCHEMA

    @property
    def ok(self):
        return self.error is None and all(r["status"] == "ok" for r in self.results)

    def to_dict(self):
        return encode(
            {
                "schema": self.schema,
                "version": self.version,
                "config": self.config,
                "results": self.results,
                "timing": self.timing,
                "error": self.error,
            }
        )

    @classmethod
    def from_dict(cls, data):
        data = decode(data)
        if data.get("schema") != SCHEMA:
            logging.warning(f"unexpected report schema: {data.get('schema')}")
        return cls(
            version=data["version"],
            config=data["config"],
            results=data.get("results", []),
            timing=data.get("timing", []),
            error=data.get("error"),
            schema=data.get("schema", SCHEMA),
        )

    def to_json(self, timing=True):
        data = self.to_dict()
        if not timing:
            del data["timing"]
        return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _cell(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (list, tuple)):
        return ", ".join(str(v) for v in value)
    if value is None:
        return ""
    return value


def result_tables(result):
    """Return (table name, rows) pairs for one command result; each row is a flat dict."""
    payload = result.get("result") or {}
    command = result["command"]
    if "samples" in payload and "method" in payload:
        rows = [dict(s) for s in payload["samples"]]
        summary = {k: payload[k] for k in ("value", "method", "error", "trend")}
        return [("samples", rows), ("estimate", [summary])]
    if "entries" in payload:
        return [("entries", [dict(e) for e in payload["entries"]])]
    if "rows" in payload and "name" in payload:
        return [("identity", [dict(r) for r in payload["rows"]])]
    if "diagnostics" in payload:
        rows = []
        for diagnostic in payload["diagnostics"]:
            for row in diagnostic["rows"]:
                rows.append(dict(candidate=diagnostic["candidate"], **row))
        return [("independence", rows)]
    if "rows" in payload and "candidate" in payload:
        return [("criterion", [dict(r) for r in payload["rows"]])]
    if "samples" in payload:
        return [("fspread", [dict(s) for s in payload["samples"]])]
    if "basis" in payload:
        return [("basis", [{"generator": g} for g in payload["basis"]])]
    if payload:
        return [(command.split()[0], [dict(payload)])]
    return [("status", [{"status": result["status"], "error": result.get("error")}])]


def to_csv(report):
    """Write every table of the report as one CSV, one row per sample, entry or identity row."""
    rows = []
    fieldnames = ["index", "command", "table"]
    for index, result in enumerate(report.results):
        for table, table_rows in result_tables(result):
            for row in table_rows:
                for key in row:
                    if key not in fieldnames:
                        fieldnames.append(key)
                flat = {"index": index, "command": result["command"], "table": table}
                flat.update({k: _cell(v) for k, v in row.items()})
                rows.append(flat)
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=fieldnames, lineterminator="\n", restval="")
    writer.writeheader()
    writer.writerows(rows)
    return out.getvalue()


def to_xlsx(report, path):
    """Write one worksheet per command, its table under a frozen header row."""
    wb = Workbook()
    wb.remove(wb.active)
    if report.error:
        sheet = wb.create_sheet("error")
        for col, key in enumerate(("message", "line", "column"), start=1):
            sheet.cell(column=col, row=1, value=key).font = Font(bold=True)
            sheet.cell(column=col, row=2, value=_cell(report.error.get(key)))
        sheet.freeze_panes = "A2"
    for index, result in enumerate(report.results):
        title = f"{index + 1} {result['command']}"[:31]
        for bad in "[]:*?/\\":
            title = title.replace(bad, "_")
        sheet = wb.create_sheet(title)
        row_num = 1
        for table, rows in result_tables(result):
            headers = []
            for row in rows:
                headers += [k for k in row if k not in headers]
            sheet.cell(column=1, row=row_num, value=table).font = Font(italic=True)
            row_num += 1
            for col, header in enumerate(headers, start=1):
                sheet.cell(column=col, row=row_num, value=header).font = Font(bold=True)
            row_num += 1
            for row in rows:
                for col, header in enumerate(headers, start=1):
                    sheet.cell(column=col, row=row_num, value=_cell(row.get(header)))
                row_num += 1
        sheet.freeze_panes = "A3"
    logging.info(f"writing {len(wb.sheetnames)} sheets to {path}")
    wb.save(path)

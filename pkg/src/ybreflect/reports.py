"""Census reports: text/CSV/JSON rendering and golden-file comparison."""
from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import __version__
from .braces import CensusRow

COUNT_COLUMNS = (
    "total",
    "only_lambda_centralizing",
    "only_rho_invariant",
    "both",
    "only_lambda_invariant",
    "only_rho_centralizing",
    "all_four",
)
CSV_COLUMNS = ("order", "type", "additive", "multiplicative") + COUNT_COLUMNS
# columns that identify a row; ``type`` is informational only
KEY_COLUMNS = ("order", "additive", "multiplicative") + COUNT_COLUMNS

GOLDEN = {
    "small_orders": "golden_small_orders.csv",
    "order8": "golden_order8.csv",
}


def row_record(row: CensusRow) -> dict:
    rec = {"order": row.order, "type": row.type_index, "additive": row.additive,
           "multiplicative": row.multiplicative}
    rec.update(row.counts.as_dict())
    return rec


def _sort_key(rec: dict):
    return (int(rec["order"]), rec["additive"], rec["multiplicative"],
            tuple(int(rec[c]) for c in COUNT_COLUMNS))


@dataclass
class CensusReport:
    rows: list[CensusRow]
    mode: str = "enumerated"
    metadata: dict = field(default_factory=dict)

    def records(self) -> list[dict]:
        return sorted((row_record(r) for r in self.rows), key=_sort_key)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for rec in self.records():
            w.writerow(rec)
        return buf.getvalue()

    def to_text(self) -> str:
        heads = ["n", "type", "(B,+)", "(B,o)", "Tot.", "lam-centr.", "rho-inv.", "Both",
                 "lam-inv.", "rho-centr.", "All"]
        body = [[str(rec[c]) for c in CSV_COLUMNS] for rec in self.records()]
        widths = [max(len(h), *(len(r[i]) for r in body)) if body else len(h) for i, h in enumerate(heads)]
        lines = ["  ".join(h.rjust(w) for h, w in zip(heads, widths))]
        lines.append("  ".join("-" * w for w in widths))
        lines.extend("  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in body)
        return "\n".join(lines) + "\n"

    def to_json(self, timings: bool = False) -> str:
        by_key = {(r.order, r.additive, r.multiplicative, r.signature): r for r in self.rows}
        out = []
        for rec in self.records():
            row = by_key[(rec["order"], rec["additive"], rec["multiplicative"],
                          tuple(rec[c] for c in COUNT_COLUMNS))]
            rec = dict(rec, mode=row.mode, trivial=row.trivial, almost_trivial=row.almost_trivial)
            if timings:
                rec["seconds"] = round(row.seconds, 6)
            out.append(rec)
        meta = {"tool_version": __version__, "mode": self.mode}
        meta.update(self.metadata)
        return json.dumps({"metadata": meta, "rows": out}, indent=2) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        return self.to_text()


def golden_path(name: str) -> Path:
    return Path(str(resources.files("ybreflect") / "data" / GOLDEN[name]))


def read_table_csv(source) -> list[dict]:
    """Rows of a census CSV; blank cells are kept as empty strings."""
    text = Path(source).read_text() if not isinstance(source, str) or "\n" not in source else source
    rows = list(csv.DictReader(io.StringIO(text)))
    for rec in rows:
        missing = [c for c in KEY_COLUMNS[:3] if not rec.get(c)]
        if missing:
            raise ValueError(f"golden row lacks {missing}: {rec}")
    return rows


@dataclass
class TableDiff:
    missing: list[tuple]
    unexpected: list[tuple]
    compared_orders: list[int]

    @property
    def ok(self) -> bool:
        return not self.missing and not self.unexpected

    def summary(self) -> str:
        if self.ok:
            return f"golden match for orders {self.compared_orders}"
        lines = [f"golden mismatch for orders {self.compared_orders}"]
        lines += [f"  missing (in golden, not computed): {k}" for k in self.missing]
        lines += [f"  unexpected (computed, not in golden): {k}" for k in self.unexpected]
        return "\n".join(lines)


def diff_against_golden(computed: list[dict], golden: list[dict], orders=None) -> TableDiff:
    """Multiset comparison per order on the identifying columns that the golden
    file fills in (blank golden cells are not compared).
    """
    g_orders = sorted({int(r["order"]) for r in golden})
    if orders is not None:
        g_orders = [o for o in g_orders if o in set(orders)]
    missing, unexpected = [], []
    for order in g_orders:
        g_rows = [r for r in golden if int(r["order"]) == order]
        cols = [c for c in KEY_COLUMNS if all(str(r.get(c, "")).strip() != "" for r in g_rows)]

        def key(rec):
            return tuple(str(rec[c]) for c in cols)

        want = Counter(key(r) for r in g_rows)
        have = Counter(key(r) for r in computed if int(r["order"]) == order)
        missing += sorted((want - have).elements())
        unexpected += sorted((have - want).elements())
    return TableDiff(missing, unexpected, g_orders)

"""JSON/CSV serialization of structure-constant tables.

Schema::

    {"n": N, "generator": "t_hat" | "s_hat",
     "entries": [{"from": {"kind", "k", "q"}, "to": {"kind", "k", "q"},
                  "coeff": [{"pi_power", "num", "den"}, ...]}, ...]}

Entries are sorted by (from, to) so output is byte-stable.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Mapping

from .scalars import PiScalar

AreaKey = tuple[str, int, int]
Table = dict[AreaKey, dict[AreaKey, PiScalar]]

KIND_ORDER = {"B": 0, "Gamma": 1}


def area_sort_key(key: AreaKey) -> tuple[int, int, int]:
    kind, k, q = key
    return (k, KIND_ORDER[kind], q)


def _idx(key: AreaKey) -> dict:
    kind, k, q = key
    return {"kind": kind, "k": k, "q": q}


def table_entries(table: Mapping[AreaKey, Mapping[AreaKey, PiScalar]]) -> list[dict]:
    entries = []
    for src in sorted(table, key=area_sort_key):
        for dst in sorted(table[src], key=area_sort_key):
            c = table[src][dst]
            if c:
                entries.append({"from": _idx(src), "to": _idx(dst), "coeff": c.to_json()})
    return entries


def table_to_json(n: int, generator: str, table: Mapping) -> str:
    doc = {"n": n, "generator": generator, "entries": table_entries(table)}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def table_from_json(text: str) -> tuple[int, str, Table]:
    doc = json.loads(text)
    table: Table = {}
    for e in doc["entries"]:
        src = (e["from"]["kind"], int(e["from"]["k"]), int(e["from"]["q"]))
        dst = (e["to"]["kind"], int(e["to"]["k"]), int(e["to"]["q"]))
        table.setdefault(src, {})[dst] = PiScalar.from_json(e["coeff"])
    return int(doc["n"]), doc["generator"], table


def table_to_csv(n: int, generator: str, table: Mapping) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "generator", "from_kind", "from_k", "from_q", "to_kind", "to_k", "to_q", "pi_power", "num", "den"])
    for e in table_entries(table):
        for term in e["coeff"]:
            w.writerow([
                n, generator,
                e["from"]["kind"], e["from"]["k"], e["from"]["q"],
                e["to"]["kind"], e["to"]["k"], e["to"]["q"],
                term["pi_power"], term["num"], term["den"],
            ])
    return buf.getvalue()


def tables_equal(a: Mapping, b: Mapping) -> bool:
    def clean(t):
        return {src: {dst: c for dst, c in row.items() if c} for src, row in t.items() if any(row.values())}

    return clean(a) == clean(b)


def table_diff(a: Mapping, b: Mapping) -> list[str]:
    """Human-readable list of differing entries."""
    out = []
    keys = set(a) | set(b)
    for src in sorted(keys, key=area_sort_key):
        ra, rb = a.get(src, {}), b.get(src, {})
        for dst in sorted(set(ra) | set(rb), key=area_sort_key):
            ca, cb = ra.get(dst, PiScalar()), rb.get(dst, PiScalar())
            if ca != cb:
                out.append(f"{src} -> {dst}: {ca} != {cb}")
    return out

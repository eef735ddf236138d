import csv
import io
import json

import pytest

from hermarea.areamod import AreaModule, area_module
from hermarea.scalars import PiScalar
from hermarea.tables import (
    area_sort_key,
    table_diff,
    table_from_json,
    table_to_csv,
    table_to_json,
    tables_equal,
)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("which", ["hat_t_table", "hat_s_table"])
def test_json_round_trip(n, which):
    mod = area_module(n)
    raw = AreaModule.raw_table(getattr(mod, which))
    text = table_to_json(n, which[:5], raw)
    n2, gen, back = table_from_json(text)
    assert (n2, gen) == (n, which[:5])
    assert tables_equal(back, raw)
    assert table_to_json(n, which[:5], back) == text


def test_json_is_sorted_and_stable():
    raw = AreaModule.raw_table(area_module(2).hat_t_table)
    doc = json.loads(table_to_json(2, "t_hat", raw))
    keys = [(e["from"]["kind"], e["from"]["k"], e["from"]["q"]) for e in doc["entries"]]
    assert keys == sorted(keys, key=area_sort_key)
    assert table_to_json(2, "t_hat", dict(reversed(list(raw.items())))) == table_to_json(2, "t_hat", raw)


def test_csv_matches_json_terms():
    raw = AreaModule.raw_table(area_module(2).hat_t_table)
    rows = list(csv.DictReader(io.StringIO(table_to_csv(2, "t_hat", raw))))
    doc = json.loads(table_to_json(2, "t_hat", raw))
    assert len(rows) == sum(len(e["coeff"]) for e in doc["entries"])
    rebuilt = {}
    for r in rows:
        src = (r["from_kind"], int(r["from_k"]), int(r["from_q"]))
        dst = (r["to_kind"], int(r["to_k"]), int(r["to_q"]))
        term = PiScalar.from_json([{"pi_power": int(r["pi_power"]), "num": int(r["num"]), "den": int(r["den"])}])
        row = rebuilt.setdefault(src, {})
        row[dst] = row.get(dst, PiScalar()) + term
    assert tables_equal(rebuilt, raw)


def test_diff():
    a = {("B", 1, 0): {("Gamma", 0, 0): PiScalar({0: 1})}}
    b = {("B", 1, 0): {("Gamma", 0, 0): PiScalar({0: 2})}}
    assert tables_equal(a, a) and not tables_equal(a, b)
    assert len(table_diff(a, b)) == 1
    assert tables_equal(a, {**a, ("B", 2, 0): {}})

import json

import pytest

from lieder import catalog
from lieder.catalog import (algebra_from_json, algebra_to_json, builtin, builtin_names,
                            dumps, expected_mismatches, invariant_table, load, loads,
                            save, shipped_path, standard_catalog, table_csv, table_jsonl)
from lieder.errors import ParseError, UnknownName, ValidationFailed
from lieder.liealg import structural_predicates, validate

H3_GOLDEN = {"name": "heisenberg_3", "dim": 3,
             "brackets": [{"i": 1, "j": 2, "c": {"3": "1"}}]}


def test_every_builtin_validates_and_tags_match():
    for name in builtin_names():
        e = builtin(name)
        assert validate(e.algebra).ok
        assert e.tags == structural_predicates(e.algebra).tags(), name


def test_unknown_name():
    with pytest.raises(UnknownName):
        builtin("nope")
    with pytest.raises(KeyError):
        builtin("nope")


def test_h3_golden():
    assert algebra_to_json(builtin("heisenberg_3").algebra) == H3_GOLDEN
    g = algebra_from_json(H3_GOLDEN)
    assert g == builtin("heisenberg_3").algebra


def test_round_trip(tmp_path):
    for name in builtin_names():
        g = builtin(name).algebra
        p = tmp_path / f"{name}.json"
        save(p, g)
        assert load(p) == g
        assert loads(dumps(g)) == g


def test_shipped_files_match_builtins():
    for e in standard_catalog():
        g = load(shipped_path(f"algebras/{e.algebra.name}.json"))
        assert g == e.algebra


def test_antisymmetry_violation():
    doc = {"name": "x", "dim": 2, "brackets": [{"i": 1, "j": 1, "c": {"2": "1"}}]}
    with pytest.raises(ValidationFailed):
        algebra_from_json(doc)


def test_jacobi_violation_reports_triple():
    doc = {"name": "x", "dim": 3, "brackets": [
        {"i": 1, "j": 2, "c": {"1": "1"}}, {"i": 2, "j": 3, "c": {"2": "1"}},
        {"i": 1, "j": 3, "c": {"3": "-1"}}]}
    with pytest.raises(ValidationFailed) as exc:
        algebra_from_json(doc)
    assert exc.value.failing_triples[0][0] == (0, 1, 2)


@pytest.mark.parametrize("doc", [
    [],
    {"name": "x", "dim": 2},
    {"name": "x", "dim": 0, "brackets": []},
    {"name": "x", "dim": 2, "brackets": [{"i": 2, "j": 1, "c": {"1": "1"}}]},
    {"name": "x", "dim": 2, "brackets": [{"i": 1, "j": 3, "c": {"1": "1"}}]},
    {"name": "x", "dim": 2, "brackets": [{"i": 1, "j": 2, "c": {"1": "0.5"}}]},
    {"name": "x", "dim": 2, "brackets": [{"i": 1, "j": 2, "c": {"a": "1"}}]},
])
def test_parse_errors(doc):
    with pytest.raises(ParseError):
        algebra_from_json(doc)


def test_bad_json_text():
    with pytest.raises(ParseError):
        loads("{not json")


def test_table_rows_and_expected():
    rows = invariant_table([builtin("abelian_3"), builtin("heisenberg_3"), builtin("sl2")], 2)
    assert rows[0]["class"] == 1 and (rows[0]["dim_inn"], rows[0]["dim_der"],
                                      rows[0]["dim_lder_2"], rows[0]["min_order"]) == (0, 9, 9, 1)
    assert (rows[1]["class"], rows[1]["dim_inn"], rows[1]["dim_der"], rows[1]["dim_lder_2"],
            rows[1]["min_order"]) == (2, 2, 6, 9, 1)
    assert (rows[2]["class"], rows[2]["dim_inn"], rows[2]["dim_der"], rows[2]["dim_lder_2"],
            rows[2]["min_order"]) == (catalog.TABLE_NOT_NILPOTENT, 3, 3, 3, catalog.TABLE_NONE)
    for e in standard_catalog():
        assert expected_mismatches(e) == []


def test_table_deterministic():
    entries = standard_catalog()[:6]
    a = table_csv(invariant_table(entries, 3))
    b = table_csv(invariant_table(entries, 3))
    assert a == b and a.endswith("\r\n")
    lines = table_jsonl(invariant_table(entries, 2)).splitlines()
    assert [json.loads(x)["name"] for x in lines] == [e.algebra.name for e in entries]

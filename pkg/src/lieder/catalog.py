"""Built-in algebras, the JSON file format, and invariant tables.

File format (indices 1-based, only i < j listed, omitted pairs are zero)::

    {"name": "heisenberg_3", "dim": 3,
     "brackets": [{"i": 1, "j": 2, "c": {"3": "1"}}]}

A family file has the same shape with coefficients that are polynomials in
``t``, e.g. ``"3/2*t^2 - t"``.
"""

from __future__ import annotations

import csv
import io
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable

from . import linalg as la
from .degeneration import ParamLieAlgebra, parse_poly, poly_str, validate_family
from .errors import ParseError, UnknownName, ValidationFailed
from .leibniz import derivations, inner_derivations, leibniz_derivation_space
from .liealg import LieAlgebra, nilpotency_class, radical, validate
from .nilpotency import DEFAULT_SEED, DEFAULT_TRIALS, minimal_invertible_order


@dataclass(frozen=True)
class CatalogEntry:
    algebra: LieAlgebra
    tags: frozenset
    expected: dict = field(default_factory=dict)
    summands: dict | None = None


_SL2 = {(1, 2): {2: 2}, (1, 3): {3: -2}, (2, 3): {1: 1}}

NILPOTENT_TAGS = frozenset({"nilpotent", "solvable"})


def _shift(brackets: dict, by: int) -> dict:
    return {(i + by, j + by): {k + by: v for k, v in out.items()}
            for (i, j), out in brackets.items()}


def _abelian(n: int) -> CatalogEntry:
    if not 1 <= n <= 6:
        raise UnknownName(f"abelian_n needs 1 <= n <= 6, got {n}")
    return CatalogEntry(
        LieAlgebra.abelian(n),
        frozenset({"abelian", "nilpotent", "solvable", "reductive"}),
        {"class": 1, "inn": 0, "lder": {1: n * n, 2: n * n}},
        {"semisimple": (), "abelian": tuple(range(n))},
    )


def _sl2_plus_abelian(m: int) -> CatalogEntry:
    if not 1 <= m <= 5:
        raise UnknownName(f"sl2_plus_abelian_m needs 1 <= m <= 5, got {m}")
    expected = {"class": None, "radical": m}
    if m == 2:
        expected["lder"] = {2: 7}
    return CatalogEntry(
        LieAlgebra.from_brackets(3 + m, _SL2, f"sl2_plus_abelian_{m}"),
        frozenset({"reductive"}),
        expected,
        {"semisimple": (0, 1, 2), "abelian": tuple(range(3, 3 + m))},
    )


def _fixed() -> dict:
    return {
        "heisenberg_3": CatalogEntry(
            LieAlgebra.from_brackets(3, {(1, 2): {3: 1}}, "heisenberg_3"),
            NILPOTENT_TAGS,
            {"class": 2, "inn": 2, "lder": {1: 6, 2: 9}, "min_order": 1},
        ),
        "heisenberg_5": CatalogEntry(
            LieAlgebra.from_brackets(5, {(1, 3): {5: 1}, (2, 4): {5: 1}}, "heisenberg_5"),
            NILPOTENT_TAGS,
            {"class": 2},
        ),
        "filiform_n4": CatalogEntry(
            LieAlgebra.from_brackets(4, {(1, 2): {3: 1}, (1, 3): {4: 1}}, "filiform_n4"),
            NILPOTENT_TAGS,
            {"class": 3, "lder": {3: 16}},
        ),
        "sl2": CatalogEntry(
            LieAlgebra.from_brackets(3, _SL2, "sl2"),
            frozenset({"perfect", "semisimple", "reductive", "centerless"}),
            {"class": None, "inn": 3, "lder": {1: 3, 2: 3, 3: 3}, "radical": 0},
        ),
        # basis (h, e, f, z) with z the identity matrix
        "gl2": CatalogEntry(
            LieAlgebra.from_brackets(4, _SL2, "gl2"),
            frozenset({"reductive"}),
            {"class": None, "lder": {1: 4, 2: 4, 3: 4, 4: 4}, "radical": 1},
            {"semisimple": (0, 1, 2), "abelian": (3,)},
        ),
        "aff1": CatalogEntry(
            LieAlgebra.from_brackets(2, {(1, 2): {2: 1}}, "aff1"),
            frozenset({"solvable", "centerless"}),
            {"class": None, "radical": 2},
        ),
        "sl2_sl2": CatalogEntry(
            LieAlgebra.from_brackets(6, {**_SL2, **_shift(_SL2, 3)}, "sl2_sl2"),
            frozenset({"perfect", "semisimple", "reductive", "centerless"}),
            {"class": None, "inn": 6},
        ),
        # Dixmier-Lister: characteristically nilpotent, dimension 8
        "dixmier_lister_8": CatalogEntry(
            LieAlgebra.from_brackets(8, {
                (1, 2): {5: 1}, (1, 3): {6: 1}, (1, 4): {7: 1}, (1, 5): {8: -1},
                (2, 3): {8: 1}, (2, 4): {6: 1}, (2, 6): {7: -1}, (3, 4): {5: -1},
                (3, 5): {7: -1}, (4, 6): {8: -1},
            }, "dixmier_lister_8"),
            NILPOTENT_TAGS,
        ),
    }


def builtin_names() -> list[str]:
    return ([f"abelian_{n}" for n in range(1, 7)] + list(_fixed())
            + [f"sl2_plus_abelian_{m}" for m in range(1, 6)])


def standard_catalog() -> list[CatalogEntry]:
    """The corpus the test suites sweep: one representative per parametrized name."""
    names = ["abelian_3", "heisenberg_3", "heisenberg_5", "filiform_n4", "sl2", "gl2",
             "aff1", "sl2_plus_abelian_2", "sl2_sl2", "dixmier_lister_8"]
    return [builtin(n) for n in names]


def builtin(name: str) -> CatalogEntry:
    m = re.fullmatch(r"abelian_(\d+)", name)
    if m:
        return _abelian(int(m.group(1)))
    m = re.fullmatch(r"sl2_plus_abelian_(\d+)", name)
    if m:
        return _sl2_plus_abelian(int(m.group(1)))
    table = _fixed()
    if name not in table:
        raise UnknownName(f"no builtin algebra named {name!r}")
    entry = table[name]
    report = validate(entry.algebra)
    if not report.ok:
        raise ValidationFailed(f"builtin {name} fails validation", report.failing_triples)
    return entry


# ---------------------------------------------------------------------------
# JSON I/O
# ---------------------------------------------------------------------------

def algebra_to_json(g) -> dict:
    fmt = poly_str if isinstance(g, ParamLieAlgebra) else str
    brackets = [
        {"i": i, "j": j, "c": {str(k): fmt(v) for k, v in sorted(out.items())}}
        for (i, j), out in sorted(g.nonzero_brackets().items())
    ]
    return {"name": g.name, "dim": g.n, "brackets": brackets}


def _coeff_strings(doc) -> list[str]:
    return [v for b in doc.get("brackets", []) if isinstance(b, dict)
            for v in (b.get("c") or {}).values() if isinstance(v, str)]


def algebra_from_json(doc, *, where: str = "<json>"):
    """Parse an algebra or family document; families are detected by a 't'."""
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", where)
    for key in ("name", "dim", "brackets"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}", where)
    name, n = doc["name"], doc["dim"]
    if not isinstance(name, str):
        raise ParseError("field 'name' must be a string", where)
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("field 'dim' must be a positive integer", where)
    if not isinstance(doc["brackets"], list):
        raise ParseError("field 'brackets' must be a list", where)
    family = any("t" in v for v in _coeff_strings(doc))
    parse = parse_poly if family else _parse_rational
    brackets: dict = {}
    diagonal = []
    for pos, b in enumerate(doc["brackets"]):
        loc = f"{where}: brackets[{pos}]"
        if not isinstance(b, dict) or not {"i", "j", "c"} <= set(b):
            raise ParseError("bracket entries need fields 'i', 'j', 'c'", loc)
        i, j, coeffs = b["i"], b["j"], b["c"]
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i <= n and 1 <= j <= n):
            raise ParseError(f"indices must be integers in 1..{n}", loc)
        if not isinstance(coeffs, dict):
            raise ParseError("field 'c' must be an object", loc)
        parsed = {}
        for k, v in coeffs.items():
            try:
                kk = int(k)
            except ValueError:
                raise ParseError(f"output index {k!r} is not an integer", loc) from None
            if not 1 <= kk <= n:
                raise ParseError(f"output index {kk} outside 1..{n}", loc)
            if not isinstance(v, (str, int)) or isinstance(v, bool):
                raise ParseError(f"coefficient for e{kk} must be a string", loc)
            parsed[kk] = parse(str(v), loc)
        if i == j:
            if any(not _is_zero(v) for v in parsed.values()):
                diagonal.append((i - 1, j - 1))
            continue
        if i > j:
            raise ParseError(f"only i < j entries are allowed, got ({i}, {j})", loc)
        if (i, j) in brackets:
            raise ParseError(f"duplicate entry for ({i}, {j})", loc)
        brackets[(i, j)] = parsed
    if diagonal:
        raise ValidationFailed(
            f"{where}: antisymmetry violated, [e_i, e_i] != 0 for i = "
            + ", ".join(str(i + 1) for i, _ in diagonal))
    if family:
        f = ParamLieAlgebra.from_brackets(n, brackets, name)
        bad = validate_family(f)
        if bad:
            raise ValidationFailed(f"{where}: family fails Jacobi identically in t", bad)
        return f
    g = LieAlgebra.from_brackets(n, brackets, name)
    report = validate(g)
    if not report.ok:
        triples = ", ".join(
            "(" + ", ".join(f"e{x + 1}" for x in t) + ")" for t, _ in report.failing_triples)
        raise ValidationFailed(f"{where}: Jacobi identity fails on {triples}",
                               report.failing_triples)
    return g


_RATIONAL = re.compile(r"\s*[+-]?\d+(/\d+)?\s*")


def _parse_rational(text: str, where: str) -> Fraction:
    if not _RATIONAL.fullmatch(text):
        raise ParseError(f"coefficient {text!r} is not a rational 'p/q'", where)
    try:
        return la.to_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"coefficient {text!r} is not a rational 'p/q'", where) from None


def _is_zero(v) -> bool:
    return v == 0 if isinstance(v, Fraction) else v.is_zero()


def loads(text: str, *, where: str = "<string>"):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
                         where) from None
    return algebra_from_json(doc, where=where)


def load(path):
    """Load an algebra or family from a file path, or stdin when path is "-"."""
    if str(path) == "-":
        return loads(sys.stdin.read(), where="<stdin>")
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(p)) from None
    return loads(text, where=str(p))


def dumps(g) -> str:
    return json.dumps(algebra_to_json(g), indent=2) + "\n"


def save(path, g) -> None:
    if isinstance(g, CatalogEntry):
        g = g.algebra
    Path(path).write_text(dumps(g))


def shipped_path(name: str) -> Path:
    """Path of a data file shipped with the package (algebras/ or families/)."""
    return Path(str(resources.files("lieder") / "data" / name))


def shipped_families() -> list[ParamLieAlgebra]:
    folder = shipped_path("families")
    return [load(p) for p in sorted(folder.glob("*.json"))]


# ---------------------------------------------------------------------------
# invariant tables
# ---------------------------------------------------------------------------

TABLE_NOT_NILPOTENT = "NotNilpotent"
TABLE_NONE = "—"


def invariant_row(entry: CatalogEntry | LieAlgebra, k_max: int,
                  trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> dict:
    g = entry.algebra if isinstance(entry, CatalogEntry) else entry
    c = nilpotency_class(g)
    row = {
        "name": g.name,
        "n": g.n,
        "class": c if c is not None else TABLE_NOT_NILPOTENT,
        "dim_inn": inner_derivations(g).dim,
        "dim_der": derivations(g).dim,
    }
    for k in range(2, k_max + 1):
        row[f"dim_lder_{k}"] = leibniz_derivation_space(g, k).dim
    row["min_order"] = (minimal_invertible_order(g, trials, seed)[0]
                        if c is not None else TABLE_NONE)
    if isinstance(entry, CatalogEntry):
        mismatches = expected_mismatches(entry, row)
        if mismatches:
            raise AssertionError(f"{g.name}: recorded invariants disagree: {mismatches}")
    return row


def expected_mismatches(entry: CatalogEntry, row: dict | None = None) -> list[str]:
    """Compare recorded invariants with recomputation."""
    g = entry.algebra
    exp = entry.expected
    out = []
    if "class" in exp and exp["class"] != nilpotency_class(g):
        out.append(f"class {exp['class']} != {nilpotency_class(g)}")
    if "inn" in exp and exp["inn"] != inner_derivations(g).dim:
        out.append(f"dim Inn {exp['inn']} != {inner_derivations(g).dim}")
    for k, d in exp.get("lder", {}).items():
        got = leibniz_derivation_space(g, k).dim
        if got != d:
            out.append(f"dim LDer_{k} {d} != {got}")
    if "radical" in exp and exp["radical"] != radical(g).dim:
        out.append(f"dim rad {exp['radical']} != {radical(g).dim}")
    if "min_order" in exp and row is not None and row["min_order"] != exp["min_order"]:
        out.append(f"min order {exp['min_order']} != {row['min_order']}")
    return out


def invariant_table(entries: Iterable, k_max: int, trials: int = DEFAULT_TRIALS,
                    seed: int = DEFAULT_SEED) -> list[dict]:
    return [invariant_row(e, k_max, trials, seed) for e in entries]


def table_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\r\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def table_jsonl(rows: list[dict]) -> str:
    return "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in rows)

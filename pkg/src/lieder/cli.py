"""Command-line interface.

Exit codes: 0 ok, 1 a checked property failed, 2 input error, 3 tuple cap
exceeded.  Every subcommand accepts ``--json``; numbers are printed as exact
rationals.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys
from fractions import Fraction

from . import catalog, linalg as la
from .degeneration import DEFAULT_SAMPLES, ParamLieAlgebra, dimension_monotonicity_check
from .errors import CapExceeded, InputError, ParseError, PreconditionViolated
from .leibniz import (inner_derivations, leibniz_derivation_space,
                      radical_invariance_check, star_identity_space,
                      verify_bracket_closure, verify_chain)
from .liealg import (LieAlgebra, center, derived_series, lower_central_series,
                     nilpotency_class, radical, structural_predicates,
                     upper_central_series, validate)
from .nilpotency import (DEFAULT_SEED, DEFAULT_TRIALS, InvertibleLDer,
                         certificate_to_json, construct_semisimple_lder,
                         construct_strict_witness, find_invertible_element,
                         grading_check, nilpotency_by_main_theorem,
                         verify_certificate_json)

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class Result:
    def __init__(self, payload: dict, text: str, code: int = EXIT_OK):
        self.payload = payload
        self.text = text
        self.code = code


def _mat(m) -> list:
    return [[str(x) for x in row] for row in m]


def _vec(v) -> list:
    return [str(x) for x in v]


def _mat_text(m) -> str:
    cells = [[str(x) for x in row] for row in m]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join("  [" + " ".join(c.rjust(width) for c in row) + "]" for row in cells)


def _load_algebra(path: str) -> LieAlgebra:
    g = catalog.load(path)
    if isinstance(g, ParamLieAlgebra):
        raise ParseError("expected an algebra, got a family with parameter t", path)
    return g


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", path) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}: {exc.msg}", path) from None


def _seed(arg: str) -> tuple[int, bool]:
    if arg == "random":
        return secrets.randbits(32), True
    try:
        return int(arg), False
    except ValueError:
        raise PreconditionViolated(f"--seed must be an integer or 'random', got {arg!r}") from None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_check(args) -> Result:
    doc = _read_json(args.file)
    g = _raw_algebra(doc, args.file)
    rep = validate(g)
    payload = {
        "algebra": g.name,
        "antisymmetry_ok": rep.antisymmetry_ok,
        "jacobi_ok": rep.jacobi_ok,
        "failing_pairs": [[i + 1, j + 1] for i, j in rep.failing_pairs],
        "failing_triples": [{"triple": [x + 1 for x in t], "jacobiator": _vec(v)}
                            for t, v in rep.failing_triples],
    }
    lines = [f"{g.name}: antisymmetry {'ok' if rep.antisymmetry_ok else 'FAILED'}, "
             f"Jacobi {'ok' if rep.jacobi_ok else 'FAILED'}"]
    for i, j in rep.failing_pairs:
        lines.append(f"  [e{i + 1}, e{j + 1}] != -[e{j + 1}, e{i + 1}]")
    for t, v in rep.failing_triples:
        lines.append(f"  Jacobi fails on (e{t[0] + 1}, e{t[1] + 1}, e{t[2] + 1}): {_vec(v)}")
    return Result(payload, "\n".join(lines), EXIT_OK if rep.ok else EXIT_FAILED)


def _raw_algebra(doc, where: str) -> LieAlgebra:
    """Parse without validating, keeping any [e_i, e_i] entries for the report."""
    if not isinstance(doc, dict) or not {"name", "dim", "brackets"} <= set(doc):
        raise ParseError("need fields 'name', 'dim', 'brackets'", where)
    n = doc["dim"]
    if not isinstance(n, int) or n < 1:
        raise ParseError("field 'dim' must be a positive integer", where)
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for pos, b in enumerate(doc["brackets"]):
        loc = f"{where}: brackets[{pos}]"
        try:
            i, j = int(b["i"]) - 1, int(b["j"]) - 1
            items = [(int(k) - 1, la.to_fraction(str(v))) for k, v in b["c"].items()]
        except (KeyError, TypeError, ValueError, ZeroDivisionError, AttributeError):
            raise ParseError("malformed bracket entry", loc) from None
        if not (0 <= i < n and 0 <= j < n) or any(not 0 <= k < n for k, _ in items):
            raise ParseError("index out of range", loc)
        if i > j:
            raise ParseError(f"only i < j entries are allowed, got ({i + 1}, {j + 1})", loc)
        for k, v in items:
            c[i][j][k] += v
            if i != j:
                c[j][i][k] -= v
    return LieAlgebra.from_tensor(c, str(doc["name"]))


def cmd_info(args) -> Result:
    g = _load_algebra(args.file)
    preds = structural_predicates(g)
    lcs = lower_central_series(g)
    cls = nilpotency_class(g)
    payload = {
        "algebra": g.name,
        "dim": g.n,
        "predicates": {k: v for k, v in vars(preds).items()},
        "lower_central_dims": list(lcs.dims),
        "derived_dims": list(derived_series(g).dims),
        "upper_central_dims": list(upper_central_series(g).dims),
        "class": cls if cls is not None else "NotNilpotent",
        "center_dim": center(g).dim,
        "radical_dim": radical(g).dim,
        "inner_dim": inner_derivations(g).dim,
    }
    text = "\n".join(
        [f"{g.name} (dim {g.n})"]
        + [f"  {k}: {v}" for k, v in payload.items() if k not in ("algebra", "dim", "predicates")]
        + [f"  {k}: {v}" for k, v in payload["predicates"].items()])
    return Result(payload, text)


def lder_export(space) -> dict:
    return {
        "algebra": space.algebra.name,
        "order": space.order,
        "dim": space.dim,
        "basis": [_vec(v) for v in space.space.basis],
    }


def cmd_lder(args) -> Result:
    g = _load_algebra(args.file)
    sp = leibniz_derivation_space(g, args.order)
    text = f"dim LDer_{args.order}({g.name}) = {sp.dim}  (gl has dim {g.n * g.n})"
    if args.basis:
        for m in sp.matrices():
            text += "\n" + _mat_text(m) + "\n"
    return Result(lder_export(sp), text)


def cmd_chain(args) -> Result:
    g = _load_algebra(args.file)
    rep = verify_chain(g, args.max_order)
    closure = {1: verify_bracket_closure(leibniz_derivation_space(g, 1))}
    for k in range(2, args.max_order + 1):
        closure[k] = verify_bracket_closure(leibniz_derivation_space(g, k))
    labels = ["Inn", "Der"] + [f"LDer_{k}" for k in range(2, args.max_order + 1)]
    payload = {
        "algebra": g.name,
        "labels": labels,
        "dims": list(rep.dims),
        "gl_dim": g.n * g.n,
        "inclusions": rep.inclusions,
        "closed_under_commutator": {str(k): v for k, v in closure.items()},
    }
    ok = rep.ok and all(closure.values())
    text = "  ".join(f"{lab}={d}" for lab, d in zip(labels, rep.dims)) + f"  gl={g.n * g.n}"
    text += "\n" + "\n".join(f"  {k}: {v}" for k, v in rep.inclusions.items())
    text += "\n  closed under commutator: " + ("yes" if all(closure.values()) else "NO")
    return Result(payload, text, EXIT_OK if ok else EXIT_FAILED)


def cmd_invertible(args) -> Result:
    g = _load_algebra(args.file)
    seed, chosen = _seed(args.seed)
    found = find_invertible_element(leibniz_derivation_space(g, args.order), args.trials, seed)
    payload = {"algebra": g.name, "order": args.order, "seed": seed, "trials": args.trials,
               "found": isinstance(found, InvertibleLDer)}
    if isinstance(found, InvertibleLDer):
        payload.update(matrix=_mat(found.matrix), det=str(found.det))
        text = f"invertible Leibniz-derivation of order {args.order}, det = {found.det}\n"
        text += _mat_text(found.matrix)
    else:
        text = (f"no invertible element found in LDer_{args.order}({g.name}) "
                f"after {args.trials} trials (seed {seed})")
    if chosen:
        text += f"\nseed: {seed}"
    return Result(payload, text)


def cmd_nilpotent(args) -> Result:
    g = _load_algebra(args.file)
    seed, chosen = _seed(args.seed)
    cert = nilpotency_by_main_theorem(g, args.trials, seed)
    payload = certificate_to_json(cert)
    ev = cert.evidence
    if isinstance(ev, InvertibleLDer):
        text = (f"{g.name}: Nilpotent (invertible Leibniz-derivation of order {ev.order}, "
                f"det = {ev.det})\n" + _mat_text(ev.matrix))
    else:
        text = (f"{g.name}: NotNilpotent (no invertible element in LDer_1..LDer_{g.n}, "
                f"{args.trials} trials per order, seed {seed})")
    if chosen:
        text += f"\nseed: {seed}"
    return Result(payload, text)


def cmd_construct_p(args) -> Result:
    g = _load_algebra(args.file)
    q, p = construct_semisimple_lder(g)
    d = la.det(p)
    payload = {"algebra": g.name, "order": q, "matrix": _mat(p), "det": str(d)}
    return Result(payload, f"order {q}, det = {d}\n" + _mat_text(p))


def cmd_witness(args) -> Result:
    g = _load_algebra(args.file)
    w = construct_strict_witness(g, args.k, args.l)
    payload = {"algebra": g.name, "k": w.k, "l": w.l,
               "tuple": [i + 1 for i in w.indices], "u": _vec(w.u), "z": _vec(w.z),
               "matrix": _mat(w.matrix)}
    idx = ", ".join(f"e{i + 1}" for i in w.indices)
    text = (f"u = [{idx}] = {_vec(w.u)}, z = {_vec(w.z)}\n"
            f"in LDer_{w.k}, not in LDer_{w.l}\n" + _mat_text(w.matrix))
    return Result(payload, text)


def cmd_grading(args) -> Result:
    g = _load_algebra(args.file)
    doc = _read_json(args.op)
    rows = doc.get("matrix") if isinstance(doc, dict) else doc
    try:
        p = la.as_matrix(rows)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ParseError("operator must be a list of rows of rationals", args.op) from None
    if la.shape(p) != (g.n, g.n):
        raise ParseError(f"operator must be {g.n}x{g.n}", args.op)
    rep = grading_check(g, p, args.order)
    payload = {
        "algebra": g.name,
        "order": args.order,
        "passed": rep.passed,
        "parts": [{"eigenvalue": str(a), "dim": s.dim} for a, s in rep.decomposition.parts],
        "checks": [{"eigenvalues": _vec(al), "target": str(t), "ok": ok}
                   for al, t, ok in rep.checks],
    }
    text = "eigenspaces: " + ", ".join(f"{a}: dim {s.dim}" for a, s in rep.decomposition.parts)
    bad = [c for c in rep.checks if not c[2]]
    text += f"\n{len(rep.checks)} eigenvalue tuples checked, {len(bad)} failed"
    for al, t, _ in bad:
        text += f"\n  [{', '.join(map(str, al))}] not inside g_{t}"
    return Result(payload, text, EXIT_OK if rep.passed else EXIT_FAILED)


def cmd_star(args) -> Result:
    g = _load_algebra(args.file)
    try:
        m = la.to_fraction(args.m)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"-m must be a rational, got {args.m!r}") from None
    st = star_identity_space(g, m, args.k)
    payload = {"algebra": g.name, "m": str(st.m), "k": st.k, "dim": st.dim,
               "basis": [_vec(v) for v in st.space.basis]}
    return Result(payload, f"dim of solutions to (*_{{{st.m},{st.k}}}) on {g.name}: {st.dim}")


def cmd_radinv(args) -> Result:
    g = _load_algebra(args.file)
    ok = radical_invariance_check(g, args.order)
    payload = {"algebra": g.name, "order": args.order, "radical_dim": radical(g).dim,
               "invariant": ok}
    text = f"rad({g.name}) {'is' if ok else 'is NOT'} invariant under LDer_{args.order}"
    return Result(payload, text, EXIT_OK if ok else EXIT_FAILED)


def _parse_samples(text: str | None):
    if text is None:
        return DEFAULT_SAMPLES
    try:
        return tuple(la.to_fraction(s) for s in text.split(",") if s.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"--samples must be comma-separated rationals, got {text!r}") from None


def cmd_degenerate(args) -> Result:
    f = catalog.load(args.family)
    if isinstance(f, LieAlgebra):
        f = ParamLieAlgebra.from_brackets(f.n, f.nonzero_brackets(), f.name)
    rep = dimension_monotonicity_check(f, args.order, _parse_samples(args.samples))
    payload = {"family": f.name, "order": rep.order,
               "samples": [{"t": str(s), "dim": d} for s, d in rep.sample_dims],
               "generic_dim": rep.generic_dim, "limit_dim": rep.limit_dim,
               "monotone": rep.monotone, "strict": rep.strict}
    text = (f"dim LDer_{rep.order}: generic {rep.generic_dim}, limit {rep.limit_dim} "
            f"({'strict' if rep.strict else 'equal' if rep.monotone else 'NOT monotone'})")
    return Result(payload, text, EXIT_OK if rep.monotone else EXIT_FAILED)


def cmd_catalog(args) -> Result:
    if args.action == "list":
        names = catalog.builtin_names()
        return Result({"names": names}, "\n".join(names))
    if args.action == "show":
        if not args.name:
            raise PreconditionViolated("catalog show needs a NAME")
        entry = catalog.builtin(args.name)
        doc = catalog.algebra_to_json(entry.algebra)
        return Result(doc, json.dumps(doc, indent=2))
    if args.action == "table":
        rows = catalog.invariant_table(catalog.standard_catalog(), args.max_order,
                                       args.trials, int(args.seed))
        text = catalog.table_csv(rows) if args.format == "csv" else catalog.table_jsonl(rows)
        return Result({"rows": rows}, text.rstrip("\n"))
    raise PreconditionViolated(f"unknown catalog action {args.action!r}")


def cmd_verify(args) -> Result:
    doc = _read_json(args.certfile)
    if not isinstance(doc, dict):
        raise ParseError("certificate must be a JSON object", args.certfile)
    problems = verify_certificate_json(doc)
    payload = {"valid": not problems, "problems": problems,
               "verdict": doc.get("verdict"), "evidence_kind": doc.get("evidence_kind")}
    text = "certificate OK" if not problems else "certificate REJECTED\n" + "\n".join(
        f"  {p}" for p in problems)
    return Result(payload, text, EXIT_OK if not problems else EXIT_FAILED)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    sampling.add_argument("--seed", default=str(DEFAULT_SEED),
                          help="integer seed, or 'random' to draw one and print it")

    parser = argparse.ArgumentParser(
        prog="lieder", description="Leibniz-derivations of Lie algebras over Q")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, parents=()):
        p = sub.add_parser(name, help=help_, parents=[common, *parents])
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "validate antisymmetry and Jacobi")
    p.add_argument("file")
    p = add("info", cmd_info, "series, class, radical and structural predicates")
    p.add_argument("file")
    p = add("lder", cmd_lder, "Leibniz-derivations of a given order")
    p.add_argument("file")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--basis", action="store_true", help="print the basis matrices")
    p = add("chain", cmd_chain, "Inn <= Der <= LDer_k <= gl and commutator closure")
    p.add_argument("file")
    p.add_argument("--max-order", type=int, required=True)
    p = add("invertible", cmd_invertible, "search LDer_k for an invertible element",
            [sampling])
    p.add_argument("file")
    p.add_argument("--order", type=int, required=True)
    p = add("nilpotent", cmd_nilpotent, "decide nilpotency with a certificate", [sampling])
    p.add_argument("file")
    p = add("construct-p", cmd_construct_p, "invertible Leibniz-derivation of order ceil(c/2)")
    p.add_argument("file")
    p = add("witness", cmd_witness, "element of LDer_k outside LDer_l")
    p.add_argument("file")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-l", type=int, required=True)
    p = add("grading", cmd_grading, "generalized eigenspace grading check")
    p.add_argument("file")
    p.add_argument("--op", required=True, help="JSON file with the operator matrix")
    p.add_argument("--order", type=int, required=True)
    p = add("star", cmd_star, "solutions of the (*_{m,k}) identity")
    p.add_argument("file")
    p.add_argument("-m", required=True)
    p.add_argument("-k", type=int, required=True)
    p = add("radinv", cmd_radinv, "radical invariance under LDer_k")
    p.add_argument("file")
    p.add_argument("--order", type=int, required=True)
    p = add("degenerate", cmd_degenerate, "dimension monotonicity along a family")
    p.add_argument("family")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--samples", help="comma-separated nonzero rationals (default 1,2,1/3)")
    p = add("catalog", cmd_catalog, "built-in algebras and invariant tables", [sampling])
    p.add_argument("action", choices=["list", "show", "table"])
    p.add_argument("name", nargs="?")
    p.add_argument("--max-order", type=int, default=3)
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p = add("verify", cmd_verify, "re-check an exported nilpotency certificate")
    p.add_argument("certfile")
    return parser


def dispatch(argv) -> tuple[int, str]:
    """Run one command; returns (exit code, text written to stdout)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), ""
    try:
        res = args.func(args)
    except CapExceeded as exc:
        return EXIT_CAP, _error(args, exc, "CapExceeded")
    except InputError as exc:
        return EXIT_INPUT, _error(args, exc, type(exc).__name__)
    out = json.dumps(res.payload, ensure_ascii=False) if args.json else res.text
    return res.code, out


def _error(args, exc, kind: str) -> str:
    print(f"lieder {args.command}: {kind}: {exc}", file=sys.stderr)
    if args.json:
        return json.dumps({"error": kind, "message": str(exc)})
    return ""


def main(argv=None) -> int:
    code, out = dispatch(sys.argv[1:] if argv is None else argv)
    if out:
        print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())

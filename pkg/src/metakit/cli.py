"""metakit command line.

Every subcommand prints one JSON report on stdout.  Exit status: 0 when all
checks pass, 1 when a check fails, 2 on invalid input.  Randomized suites take
``--seed`` (default 0); identical input and seed give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from metakit.arith import PrecisionError, parse_laurent, prime_field
from metakit.catalog import catalog_entry, catalog_names
from metakit.cocycle import kubota_suite
from metakit.heckealg import (
    HeckeAlgebra,
    gk_coefficient,
    gk_coefficient_direct,
    renorm_cocycle_check,
    u_relations_check,
    verify_presentation,
)
from metakit.hilbert import hilbert_suite, hilbert_symbol
from metakit.metalattice import (
    MetaplecticDatum,
    brute_force_index,
    build_metaplectic_datum,
    heisenberg_dimensions,
)
from metakit.rootdata import RootDatumError, build_root_datum, check_invariance
from metakit.sl2_explicit import RankOneEngine

DEFAULT_SEED = 0


class InputError(ValueError):
    """Invalid input; ``violations`` lists every failed constraint."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


# --- input -----------------------------------------------------------------


def load_json(text: str, source: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError([f"{source}: JSON syntax error at line {e.lineno}, column {e.colno}: {e.msg}"]) from None
    if not isinstance(data, dict):
        raise InputError([f"{source}: top-level JSON value must be an object"])
    return data


def _int_matrix(x, rows, cols):
    return (
        isinstance(x, list)
        and len(x) == rows
        and all(isinstance(r, list) and len(r) == cols and all(isinstance(v, int) for v in r) for r in x)
    )


def validate_spec(data: dict) -> list:
    """All violations of the input schema and its cross-field constraints."""
    errs = []
    rank = data.get("rank")
    if not isinstance(rank, int) or rank < 1:
        return ["rank: must be a positive integer"]
    cor, ro, b = data.get("simple_coroots"), data.get("simple_roots"), data.get("B")
    if not isinstance(cor, list) or not all(isinstance(c, list) for c in cor):
        errs.append("simple_coroots: must be a list of integer vectors")
        cor = None
    elif not _int_matrix(cor, len(cor), rank):
        errs.append(f"simple_coroots: each vector must have {rank} integer entries")
    if not isinstance(ro, list) or (cor is not None and not _int_matrix(ro, len(cor), rank)):
        errs.append("simple_roots: must match simple_coroots in number and have integer entries")
    if not _int_matrix(b, rank, rank):
        errs.append(f"B: must be a {rank}x{rank} integer matrix")
    else:
        for i in range(rank):
            for j in range(i + 1, rank):
                if b[i][j] != b[j][i]:
                    errs.append(f"symmetry: B[{i}][{j}] = {b[i][j]} != B[{j}][{i}] = {b[j][i]}")
    n = data.get("n")
    if not isinstance(n, int) or n < 1:
        errs.append("n: must be a positive integer")
        n = None
    q = data.get("q")
    if q is not None:
        if not isinstance(q, int) or q < 2:
            errs.append("q: must be a prime integer")
        else:
            try:
                prime_field(q)
            except ValueError as e:
                errs.append(f"q: {e}")
            else:
                if n is not None and (q - 1) % (2 * n):
                    errs.append(f"2n | q-1: 2n = {2 * n} does not divide q - 1 = {q - 1}")
    if errs:
        return errs
    try:
        datum = build_root_datum(rank, cor, ro)
    except RootDatumError as e:
        return [f"root datum: {e}"]
    rep = check_invariance(datum, b)
    if not rep.ok:
        name = "Q-integrality" if "not an integer" in rep.failure else "W-invariance"
        errs.append(f"{name}: {rep.failure}")
    else:
        for c, qv in rep.Q.items():
            if qv == 0:
                errs.append(f"Q-integrality: Q vanishes on the coroot {list(c)}")
                break
    return errs


def load_spec(args) -> dict:
    if getattr(args, "catalog", None):
        try:
            data = catalog_entry(args.catalog)
        except KeyError as e:
            raise InputError([str(e.args[0])]) from None
    elif getattr(args, "input", None):
        if args.input == "-":
            text, source = sys.stdin.read(), "<stdin>"
        else:
            try:
                with open(args.input, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as e:
                raise InputError([f"{args.input}: {e.strerror}"]) from None
            source = args.input
        data = load_json(text, source)
    else:
        raise InputError(["one of --catalog or --input is required"])
    for key in ("n", "q"):
        if getattr(args, key, None) is not None:
            data[key] = getattr(args, key)
    errs = validate_spec(data)
    if errs:
        raise InputError(errs)
    return data


def metaplectic_from(data: dict) -> MetaplecticDatum:
    datum = build_root_datum(data["rank"], data["simple_coroots"], data["simple_roots"])
    return build_metaplectic_datum(datum, data["B"], data["n"])


def cover_params(args) -> tuple:
    """(q, n, Q) for the SL_2 engine, from flags or from an SL_2 datum."""
    if getattr(args, "catalog", None) or getattr(args, "input", None):
        data = load_spec(args)
        if data["rank"] != 1 or data["simple_coroots"] != [[1]] or data["simple_roots"] != [[2]]:
            raise InputError(["datum: this subcommand needs the SL_2 datum (coroot [1], root [2])"])
        if data.get("q") is None:
            raise InputError(["q: required for explicit computations"])
        q, n, Q = data["q"], data["n"], data["B"][0][0] // 2
    else:
        if args.q is None or args.n is None or args.Q is None:
            raise InputError(["give --catalog/--input or all of --q, --n, --Q"])
        q, n, Q = args.q, args.n, args.Q
    errs = []
    try:
        prime_field(q)
    except ValueError as e:
        errs.append(f"q: {e}")
    else:
        if n < 1 or (q - 1) % (2 * n):
            errs.append(f"2n | q-1: 2n = {2 * n} does not divide q - 1 = {q - 1}")
    if Q == 0:
        errs.append("Q-integrality: Q must be a nonzero integer")
    if errs:
        raise InputError(errs)
    return q, n, Q


# --- rendering ---------------------------------------------------------------


def jsonable(x):
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


def dumps(report: dict) -> str:
    return json.dumps(jsonable(report), indent=2, ensure_ascii=True)


# --- subcommands ----------------------------------------------------------


def cmd_dual(args) -> dict:
    md = metaplectic_from(load_spec(args))
    dd = md.dual
    checks = dd.verify()
    irr, whit = heisenberg_dimensions(md)
    report = {
        "datum": md.to_json(),
        "lambda_basis": md.lambda_basis,
        "index": md.index,
        "n_alpha": [{"coroot": list(c), "Q": md.Q(c), "n_alpha": md.n_of(c)} for c in sorted(md.n_table)],
        "dual_cartan": dd.cartan,
        "hecke_datum": dd.hecke_datum.to_json(),
        "dimensions": {"irreducible_torus_rep": irr, "whittaker": whit},
        "axioms": [{"name": c.name, "ok": c.ok, "witness": c.witness} for c in checks],
    }
    ok = all(c.ok for c in checks)
    if md.n == 1:
        classical = [list(r) for r in zip(*md.datum.cartan)]
        same = [list(r) for r in dd.cartan] == classical
        report["classical_dual_cartan"] = same
        ok = ok and same
    report["ok"] = ok
    return report


def cmd_lattice(args) -> dict:
    md = metaplectic_from(load_spec(args))
    oracle = brute_force_index(md.B, md.n)
    return {
        "lambda_basis": md.lambda_basis,
        "index": md.index,
        "oracle_index": oracle,
        "ok": oracle == md.index,
    }


def cmd_hilbert(args) -> dict:
    if args.q is None or args.n is None:
        raise InputError(["--q and --n are required"])
    try:
        fld = prime_field(args.q)
        fld.require_order(args.n)
    except ValueError as e:
        raise InputError([f"q, n: {e}"]) from None
    if args.s is None and args.t is None:
        res = hilbert_suite(args.q, args.n, args.trials, args.seed)
        return {"q": args.q, "n": args.n, "trials": args.trials, "seed": args.seed,
                "properties": res, "ok": all(v["ok"] for v in res.values())}
    if args.s is None or args.t is None:
        raise InputError(["--s and --t go together"])
    try:
        s, t = parse_laurent(args.s, fld), parse_laurent(args.t, fld)
        sym = hilbert_symbol(s, t, args.n)
    except (ValueError, PrecisionError) as e:
        raise InputError([f"Laurent input: {e}"]) from None
    return {
        "q": args.q,
        "n": args.n,
        "s": str(s),
        "t": str(t),
        "exponent": sym.exp,
        "generator": fld.zeta(args.n),
        "value": sym.value(fld),
        "ok": True,
    }


def cmd_cocycle(args) -> dict:
    q, n, Q = cover_params(args)
    res = kubota_suite(q, n, Q, args.trials, args.seed)
    return {"q": q, "n": n, "Q": Q, "trials": args.trials, "seed": args.seed,
            "identities": res, "ok": all(v["ok"] for v in res.values())}


def _label(H: HeckeAlgebra, x) -> str:
    lam, w = x
    y = list(H.md.from_lambda_coords(lam))
    word = H.md.datum.weyl.words[w]
    return f"t{y}" + ("" if not word else "*" + "".join(f"s{i}" for i in word))


def cmd_hecke(args) -> dict:
    md = metaplectic_from(load_spec(args))
    if md.datum.rank > 2 or md.datum.semisimple_rank != md.datum.rank:
        raise InputError(["datum: hecke-check needs a semisimple datum of rank <= 2"])
    results = verify_presentation(md, height=args.height, max_len=args.len, trials=args.trials, seed=args.seed)
    if md.datum.rank == 1:
        results += u_relations_check(md, args.height)
    H = HeckeAlgebra(md)
    elems = H.elements_up_to(args.len)
    order = {x: (H.length(x), _label(H, x)) for x in elems}
    pairs = sorted(
        ((x, y) for x in elems for y in elems if H.length(x) + H.length(y) <= args.len),
        key=lambda p: (order[p[0]][0] + order[p[1]][0], order[p[0]], order[p[1]]),
    )
    table = []
    for x, y in pairs:
        prod = H.to_U(H.multiply(H.U(x), H.U(y)))
        terms = sorted(prod.items(), key=lambda kv: (H.length(kv[0]), _label(H, kv[0])))
        table.append({"x": _label(H, x), "y": _label(H, y),
                      "U_x*U_y": {_label(H, z): str(c) for z, c in terms}})
    return {
        "datum": md.to_json(),
        "height": args.height,
        "len": args.len,
        "seed": args.seed,
        "relations": [{"relation": r.relation, "instance": r.instance, "ok": r.ok} for r in results],
        "u_table": table,
        "ok": all(r.ok for r in results),
    }


def cmd_satake(args) -> dict:
    q, n, Q = cover_params(args)
    rep = RankOneEngine(q, n, Q, seed=args.seed).satake_report(args.lmax)
    out = {"q": q, "n": n, "Q": Q, "lmax": args.lmax, "seed": args.seed}
    out.update(rep)
    out["ok"] = all(rep["checks"].values())
    return out


def cmd_iwahori(args) -> dict:
    q, n, Q = cover_params(args)
    eng = RankOneEngine(q, n, Q, seed=args.seed)
    ls = [args.l] if args.l is not None else [
        l for l in range(1, eng.n_alpha + 1) if eng.in_lambda(l) and 2 * l in (eng.n_alpha, 2 * eng.n_alpha)
    ]
    rows = []
    ok = True
    for l in ls:
        try:
            r = eng.iwahori_integrand(l)
        except ValueError as e:
            raise InputError([f"l: {e}"]) from None
        expected = eng.iwahori_expected(l)
        good = r["value"] == expected and not r["symbol_mismatches"]
        ok = ok and good
        rows.append({
            "l": l,
            "pairing": r["pairing"],
            "relation": f"({r['case']}')",
            "n_divides_lQ": r["n_divides_lQ"],
            "value": str(r["value"]),
            "expected": str(expected),
            "symbol_mismatches": len(r["symbol_mismatches"]),
            "ok": good,
        })
    return {"q": q, "n": n, "Q": Q, "n_alpha": eng.n_alpha, "seed": args.seed, "table": rows, "ok": ok}


def cmd_gk(args) -> dict:
    q, n, Q = cover_params(args)
    eng = RankOneEngine(q, n, Q, seed=args.seed)
    rank_one = eng.gk_rank_one()
    sl2 = build_root_datum(1, [[1]], [[2]])
    md = build_metaplectic_datum(sl2, [[2 * Q]], n)
    w0 = md.datum.weyl.longest()
    num, den = gk_coefficient(w0, md)
    dnum, dden = gk_coefficient_direct(w0, md)
    cancel = num * dden == dnum * den
    cocycle = renorm_cocycle_check(md)
    return {
        "q": q, "n": n, "Q": Q, "seed": args.seed,
        "rank_one": rank_one,
        "gk_coefficient_w0": num.to_json(),
        "cancellation": cancel,
        "renormalisation_cocycle": {"pairs": cocycle["pairs"], "failures": cocycle["failures"], "ok": cocycle["ok"]},
        "ok": bool(rank_one["holds"] and cancel and cocycle["ok"]),
    }


# --- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="metakit", description="Metaplectic structure checks.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def datum_opts(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--catalog", choices=catalog_names(), help="built-in datum")
        g.add_argument("--input", help="datum JSON file ('-' for stdin)")
        sp.add_argument("--n", type=int, help="override the cover degree")
        sp.add_argument("--q", type=int, help="override the residue field size")

    def cover_opts(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--catalog", choices=catalog_names())
        g.add_argument("--input")
        sp.add_argument("--q", type=int)
        sp.add_argument("--n", type=int)
        sp.add_argument("--Q", type=int)
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)

    sp = sub.add_parser("dual", help="Lambda, n_alpha and the dual root datum")
    datum_opts(sp)
    sp.set_defaults(func=cmd_dual)

    sp = sub.add_parser("lattice", help="Lambda against the brute-force index oracle")
    datum_opts(sp)
    sp.set_defaults(func=cmd_lattice)

    sp = sub.add_parser("hilbert", help="tame Hilbert symbol, or its property suite")
    sp.add_argument("--q", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--s")
    sp.add_argument("--t")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.set_defaults(func=cmd_hilbert)

    sp = sub.add_parser("cocycle-check", help="Kubota cocycle identities")
    cover_opts(sp)
    sp.add_argument("--trials", type=int, default=500)
    sp.set_defaults(func=cmd_cocycle)

    sp = sub.add_parser("hecke-check", help="Iwahori-Hecke presentation and U-basis table")
    datum_opts(sp)
    sp.add_argument("--height", type=int, default=8)
    sp.add_argument("--len", type=int, default=6)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.set_defaults(func=cmd_hecke)

    sp = sub.add_parser("satake-sl2", help="rank-one Satake matrix and product checks")
    cover_opts(sp)
    sp.add_argument("--lmax", type=int, default=6)
    sp.set_defaults(func=cmd_satake)

    sp = sub.add_parser("iwahori-sl2", help="rank-one Iwahori integrand table")
    cover_opts(sp)
    sp.add_argument("--l", type=int, help="single lambda = l alpha")
    sp.set_defaults(func=cmd_iwahori)

    sp = sub.add_parser("gk-check", help="Gindikin-Karpelevich identities")
    cover_opts(sp)
    sp.set_defaults(func=cmd_gk)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except InputError as e:
        print(dumps({"ok": False, "errors": e.violations}))
        return 2
    except (RootDatumError, ValueError) as e:
        print(dumps({"ok": False, "errors": [str(e)]}))
        return 2
    print(dumps(report))
    return 0 if report.get("ok") else 1


if __name__ == "__main__":
    sys.exit(main())

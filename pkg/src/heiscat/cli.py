"""Command-line entry point: ``heis COMMAND ...``.

Exit codes: 0 success, 1 usage or parse error, 2 type error, 3 failed
verification.
"""
from __future__ import annotations

import argparse
import re
import sys
from typing import List, Optional

from . import dsl, engine, ideals, oracle, weyl
from .diagrams import SliceError, basis, hom_dim_restricted, restricted_basis
from .render import SCHEMA, dumps, morphism_to_json, render
from .words import format_word, parse_word

EXIT_OK, EXIT_PARSE, EXIT_TYPE, EXIT_VERIFY = 0, 1, 2, 3


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(dumps({"schema": SCHEMA, **payload}))
    else:
        print(text)


def _sum_list(text: str) -> List[str]:
    """``"ud + 4*ud + 1"`` -> list of words (``+`` or ``,`` separated)."""
    out = []
    for item in re.split(r"[+,]", text):
        item = item.strip()
        if not item:
            continue
        m = re.fullmatch(r"(\d+)\s*[*x×]\s*(\S+)", item)
        count, word = (int(m.group(1)), m.group(2)) if m else (1, item)
        out.extend([parse_word(word)] * count)
    return out


def _simples_json(mult) -> list:
    return [{"ups": s.ups, "downs": s.downs, "mult": n} for s, n in sorted(mult.items())]


def _matrices_json(mats) -> list:
    rows = []
    for n, mat in sorted(mats.items()):
        coo = mat.tocoo()
        entries = sorted(zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()))
        rows.append({"n": n, "dims": list(mat.shape), "entries": [list(e) for e in entries]})
    return rows


# -- commands ----------------------------------------------------------------


def cmd_normalize(args, text: Optional[str] = None) -> int:
    e = dsl.parse(text if text is not None else args.expr)
    if args.mode == "oracle":
        mats = dsl.evaluate_oracle(e, args.level)
        body = "\n".join(f"n={n}: {m.shape[0]}x{m.shape[1]}, {m.nnz} nonzero entries" for n, m in sorted(mats.items()))
        _emit(args, {"expr": dsl.to_text(e), "type": str(e.type), "mode": "oracle", "levels": _matrices_json(mats)},
              f"{dsl.to_text(e)} : {e.type}\n{body}")
        return EXIT_OK
    m = dsl.evaluate(e)
    if args.format == "json":
        print(dumps({**morphism_to_json(m), "expr": dsl.to_text(e)}))
    else:
        print(render(m, "tikz" if args.format == "tikz" else "ascii"))
    return EXIT_OK


def cmd_compose(args) -> int:
    return cmd_normalize(args, f"({args.upper}) . ({args.lower})")


def cmd_render(args) -> int:
    fmt = args.format if args.format in ("ascii", "tikz", "json") else "ascii"
    e = dsl.parse(args.expr)
    print(render(dsl.evaluate(e), fmt))
    return EXIT_OK


def cmd_basis(args) -> int:
    x, y = parse_word(args.source), parse_word(args.target)
    if args.all:
        ds = basis(x, y, args.max_dots, args.max_bubble_label, args.max_bubbles)
    else:
        ds = restricted_basis(x, y)
    if args.format == "json":
        from .diagrams import diagram_to_json

        print(dumps({"schema": SCHEMA, "source": format_word(x), "target": format_word(y),
                     "basis": [diagram_to_json(d) for d in ds]}))
    elif args.format in ("ascii", "tikz"):
        print("\n\n".join(render(d, args.format) for d in ds) or f"(empty: {format_word(x)} -> {format_word(y)})")
    else:
        print("\n".join(str(d) for d in ds))
    return EXIT_OK


def cmd_homdim(args) -> int:
    x, y = parse_word(args.source), parse_word(args.target)
    n = hom_dim_restricted(x, y)
    _emit(args, {"source": format_word(x), "target": format_word(y), "dim": n}, str(n))
    return EXIT_OK


def cmd_decompose(args) -> int:
    w = parse_word(args.word)
    verify = len(w) <= args.verify_up_to
    mult, fwd, bwd = engine.decompose_object(w, with_matrices=verify)
    verified = None
    if verify:
        verified = (engine.matrix_compose(bwd, fwd) == engine.MorphismMatrix.identity(fwd.source)
                    and engine.matrix_compose(fwd, bwd) == engine.MorphismMatrix.identity(fwd.target))
    agrees = dict(mult) == weyl.multiplicities(w)
    text = " + ".join(f"{n}*{s}" if n > 1 else str(s) for s, n in sorted(mult.items()))
    _emit(args, {"word": format_word(w), "simples": _simples_json(mult), "inverse_verified": verified,
                 "agrees_with_k0": agrees}, f"{format_word(w)} = {text}")
    if verified is False or not agrees:
        return EXIT_VERIFY
    return EXIT_OK


def cmd_k0(args) -> int:
    e = weyl.k0(_sum_list(args.word))
    _emit(args, e.to_json(), str(e))
    return EXIT_OK


def cmd_normal_order(args) -> int:
    e = weyl.normal_order([weyl.WeylWord(w) for w in args.letters])
    _emit(args, e.to_json(), str(e))
    return EXIT_OK


def cmd_iso(args) -> int:
    a, b = _sum_list(args.a), _sum_list(args.b)
    ok = weyl.iso_objects(a, b)
    _emit(args, {"isomorphic": ok, "k0_a": weyl.k0(a).to_json(), "k0_b": weyl.k0(b).to_json()}, "true" if ok else "false")
    return EXIT_OK


def cmd_ideal(args) -> int:
    side = ideals.Side(args.side)
    if args.ideal_command == "gen":
        d = ideals.ideal_generated(side, [ideals.split(_sum_list(w)) for w in args.words])
        _emit(args, {"side": side.value, "ideal": str(d)}, str(d))
    elif args.ideal_command == "member":
        d = ideals.ideal_generated(side, [ideals.split(_sum_list(args.gen))])
        ok = ideals.ideal_member(side, d, ideals.split(_sum_list(args.word)))
        _emit(args, {"side": side.value, "ideal": str(d), "object": args.word, "member": ok}, "true" if ok else "false")
    else:
        chain = ideals.enumerate_ideals(side, args.L)
        _emit(args, {"side": side.value, "L": args.L, "ideals": [str(d) for d in chain]}, " > ".join(map(str, chain)))
    return EXIT_OK


def cmd_spc(args) -> int:
    rep = ideals.spc_report(args.sample)
    text = (f"primes: {', '.join(rep['primes'])}\ncompletely prime: {rep['completely_prime']}\n"
            f"tensor product property: {rep['tensor_product_property']} ({rep['pairs_checked']} pairs)")
    _emit(args, rep, text)
    ok = rep["completely_prime"] and rep["tensor_product_property"] and len(rep["primes"]) == 1
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_quasi_support(args) -> int:
    points, opens = ideals.quasi_support_points(args.L)
    payload = {"L": args.L, "points": [str(p) for p in points],
               "opens": [{"n": n, "support": [str(p) for p in v]} for n, v in sorted(opens.items())]}
    text = "points: " + ", ".join(payload["points"]) + "".join(
        f"\nsupp(u^{o['n']}) = {{{', '.join(o['support'])}}}" for o in payload["opens"])
    _emit(args, payload, text)
    return EXIT_OK


def cmd_selftest(args) -> int:
    if args.selftest_command == "relations":
        rep = oracle.relations_selftest(args.level)
        text = "\n".join(f"{'PASS' if r['pass'] else 'FAIL'}  {r['name']}" for r in rep["relations"])
        ok = rep["all_pass"]
    else:
        rep = oracle.closure_selftest(args.max_length, args.level, args.sample, args.seed)
        text = (f"{'PASS' if rep['pass'] else 'FAIL'}  {rep['pairs']} composable pairs, "
                f"{len(rep['failures'])} failures, {rep['non_closure']} non-closure")
        ok = rep["pass"]
    _emit(args, {k: v for k, v in rep.items() if k != "schema"}, text)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_oracle_equal(args) -> int:
    a, b = dsl.parse(args.expr1), dsl.parse(args.expr2)
    if a.type != b.type:
        raise dsl.HeisTypeError(f"{a.type} vs {b.type}")
    ma, mb = dsl.evaluate_oracle(a, args.level), dsl.evaluate_oracle(b, args.level)
    ok = all(oracle.matrices_equal(ma[n], mb[n]) for n in ma)
    _emit(args, {"equal": ok, "level": args.level}, "true" if ok else "false")
    return EXIT_OK if ok else EXIT_VERIFY


# -- argument parsing ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("restricted", "oracle"), default=argparse.SUPPRESS)
    common.add_argument("--level", type=int, default=argparse.SUPPRESS, help="oracle truncation N")
    common.add_argument("--format", choices=("text", "ascii", "tikz", "json"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="heis", description="Diagrammatic calculus for the Heisenberg category.")
    p.add_argument("--mode", choices=("restricted", "oracle"), default="restricted")
    p.add_argument("--level", type=int, default=4)
    p.add_argument("--format", choices=("text", "ascii", "tikz", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp_ = sub.add_parser(name, parents=[common], help=help_text)
        sp_.set_defaults(func=fn)
        return sp_

    add("normalize", cmd_normalize, "normal form of an expression").add_argument("expr")
    c = add("compose", cmd_compose, "vertical composite UPPER . LOWER")
    c.add_argument("upper")
    c.add_argument("lower")
    for name, fn, hlp in (("basis", cmd_basis, "restricted basis of Hom(X, Y)"),
                          ("homdim", cmd_homdim, "dimension of Hom(X, Y)")):
        b = add(name, fn, hlp)
        b.add_argument("source")
        b.add_argument("target")
    b = sub.choices["basis"]
    b.add_argument("--restricted", dest="all", action="store_false", default=False, help="restricted basis (default)")
    b.add_argument("--all", dest="all", action="store_true", help="bounded slice of the full basis")
    b.add_argument("--max-dots", type=int, default=0)
    b.add_argument("--max-bubble-label", type=int, default=0)
    b.add_argument("--max-bubbles", type=int, default=0)
    d = add("decompose", cmd_decompose, "split a word into simples")
    d.add_argument("word")
    d.add_argument("--verify-up-to", type=int, default=6, help="check inverse matrices for words this long")
    add("k0", cmd_k0, "class in the Weyl algebra").add_argument("word")
    add("normal-order", cmd_normal_order, "normal form of Weyl words in x, d").add_argument("letters", nargs="+")
    i = add("iso", cmd_iso, "decide A = B for sums of words")
    i.add_argument("a")
    i.add_argument("b")
    ideal = add("ideal", cmd_ideal, "thick tensor ideals")
    isub = ideal.add_subparsers(dest="ideal_command", required=True)
    for name in ("gen", "member", "lattice"):
        q = isub.add_parser(name, parents=[common])
        q.add_argument("--side", choices=[s.value for s in ideals.Side], default="right")
        if name == "gen":
            q.add_argument("words", nargs="+")
        elif name == "member":
            q.add_argument("gen")
            q.add_argument("word")
        else:
            q.add_argument("-L", type=int, default=4)
    add("spc", cmd_spc, "spectrum report").add_argument("--sample", type=int, default=3)
    add("quasi-support", cmd_quasi_support, "points and opens of the right-ideal frame").add_argument("-L", type=int, default=4)
    st = add("selftest", cmd_selftest, "verification suites")
    ssub = st.add_subparsers(dest="selftest_command", required=True)
    ssub.add_parser("relations", parents=[common])
    cl = ssub.add_parser("closure", parents=[common])
    cl.add_argument("--max-length", type=int, default=3)
    cl.add_argument("--sample", type=int, default=0, help="check a seeded random subset of pairs")
    o = add("oracle-equal", cmd_oracle_equal, "compare two expressions in the oracle")
    o.add_argument("expr1")
    o.add_argument("expr2")
    add("render", cmd_render, "draw the normal form").add_argument("expr")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (dsl.ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (dsl.HeisTypeError, engine.CompositionTypeError, dsl.NonRestrictedAtom,
            engine.NonRestrictedInput, SliceError) as exc:
        print(f"type error: {exc}", file=sys.stderr)
        return EXIT_TYPE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

"""g2: construct, evaluate and decompose G2 elements, and run the verification suites.

Exit codes: 0 success, 1 a verification failed, 2 bad input (parse or IO).
"""

from __future__ import annotations

import argparse
import json
import sys

from .chevalley import generator_matrix
from .group import GroupElement, GroupError, evaluate_word, parse_params, root_element
from .matrix import MatrixError
from .ring import RingError, parse_ring, parse_value
from .rootsys import NotARootError, parse_root, root_table

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _emit(obj, fmt: str, text: str | None = None):
    if fmt == "json":
        print(json.dumps(obj, indent=2, default=str, sort_keys=False))
    else:
        print(text if text is not None else obj)


def _matrix_text(M) -> str:
    return M.pretty()


def cmd_roots(args) -> int:
    rows = root_table()
    text = "\n".join(f"{r['index']:>3}  {r['name']:<4} {str(r['coords']):<9} |a|^2={r['length2']}  "
                     f"position {r['position']}" for r in rows)
    _emit([{**r, "coords": list(r["coords"]), "euclidean": [str(x) for x in r["euclidean"]]} for r in rows],
          args.format, text)
    return EXIT_OK


def cmd_show(args) -> int:
    r = parse_root(args.root)
    if args.lie:
        X = generator_matrix(r)
        _emit({"root": r.name, "generator": [[int(v) for v in row] for row in X.rows]}, args.format,
              _matrix_text(X))
        return EXIT_OK
    ring = parse_ring(args.ring)
    g = root_element(r, parse_value(ring, args.t), ring)
    _emit(g.to_json(), args.format, _matrix_text(g.matrix))
    return EXIT_OK


def cmd_eval(args) -> int:
    ring = parse_ring(args.ring)
    params = parse_params(args.param or [], ring)
    g = evaluate_word(args.word, ring, params)
    _emit(g.to_json(), args.format, _matrix_text(g.matrix))
    return EXIT_OK


def _read_element(path: str) -> GroupElement:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    return GroupElement.from_json(doc)


def cmd_decompose(args) -> int:
    from .replay.prod2 import NormalFormError, prod2_extract

    g = _read_element(args.input)
    try:
        p = prod2_extract(g.matrix, g.ring)
    except NormalFormError as exc:
        raise InputError(str(exc)) from None
    d = p.as_dict()
    _emit({"ring": g.ring.descriptor, "params": d}, args.format,
          "\n".join(f"{k} = {v}" for k, v in d.items()))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .replay.elimination import LedgerError
    from .replay.report import run_suite

    rings = [parse_ring(r) for r in args.ring] if args.ring else None
    if args.trunc_degree is not None and args.trunc_degree < 1:
        raise InputError("--trunc-degree must be positive")
    try:
        rep = run_suite(args.suite, rings=rings, seed=args.seed, ledger=args.ledger, trials=args.trials,
                        trunc_degree=args.trunc_degree)
    except (LedgerError, FileNotFoundError) as exc:
        raise InputError(str(exc)) from None
    if args.no_timing:
        for r in rep.results:
            r.seconds = 0.0
    if args.format == "json":
        print(rep.to_json())
    else:
        print(rep.to_text())
    return EXIT_OK if rep.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="g2", description="Adjoint Chevalley group G2 over local rings.")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp, default="text"):
        sp.add_argument("--format", choices=("json", "text"), default=default)

    sp = sub.add_parser("roots", help="list the 12 roots and their basis positions")
    fmt(sp)
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("show", help="print a generator")
    sp.add_argument("what", choices=("gen",))
    sp.add_argument("root", help="a1..a6 or -a1..-a6")
    sp.add_argument("--t", default="1", help="parameter of x_a(t) (default 1)")
    sp.add_argument("--ring", default="q")
    sp.add_argument("--lie", action="store_true", help="print the Lie algebra element X_a instead")
    fmt(sp)
    sp.set_defaults(func=cmd_show)

    sp = sub.add_parser("eval", help="evaluate a word such as 'x(a1,1) w(a2,1) h(a1,-1)'")
    sp.add_argument("--ring", default="q")
    sp.add_argument("--word", required=True)
    sp.add_argument("--param", action="append", metavar="NAME=VALUE")
    fmt(sp, "json")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("decompose", help="normal-form parameters of a matrix document")
    sp.add_argument("--in", dest="input", required=True, metavar="PATH")
    fmt(sp)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=("paper", "relations", "elimination", "normalizer", "genunits", "prod2"))
    sp.add_argument("--ring", action="append", help="ring selector (repeatable): q, zmod:p^k, trunc:m,d")
    sp.add_argument("--trunc-degree", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--ledger", metavar="PATH")
    sp.add_argument("--no-timing", action="store_true", help="report zero timings (byte-stable output)")
    fmt(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, RingError, GroupError, NotARootError, MatrixError, ZeroDivisionError, ValueError) as exc:
        print(f"g2: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

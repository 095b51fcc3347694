"""Command-line interface.

Subcommands: decompose (single block), expr (symbolic expression), table
(overview of small squares), basis (explicit Jordan chains).  Exit codes:
0 success, 1 usage or parse error, 2 verification mismatch, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import basis as basis_mod
from . import formulas, oracle
from .core import JordanType, MixedKindError, expr_kind, format_jordan_type
from .parser import ExprSyntaxError, parse_expr

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_CAP = 3


class _CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits with status 2 by default; usage errors must exit 1
    def error(self, message: str):
        raise _CliError(message)


def _build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(
        prog="char2squares",
        description="Jordan types of tensor, exterior and symmetric squares "
        "of Jordan blocks in characteristic two.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    dec = sub.add_parser("decompose", help="decompose a square of a single block")
    dec.add_argument("--functor", required=True, choices=oracle.FUNCTORS)
    dec.add_argument("--kind", required=True, choices=("unipotent", "nilpotent"))
    dec.add_argument("--n", required=True, type=int)
    dec.add_argument("--m", type=int, help="second block size (tensor only)")
    dec.add_argument("--method", default="formula", choices=("formula", "oracle", "both"))
    dec.add_argument("--format", default="text", choices=("text", "json"))

    tab = sub.add_parser("table", help="print squares of V_n and W_n for small n")
    tab.add_argument("--max", dest="max_n", default=9, type=int)

    bas = sub.add_parser("basis", help="build Jordan chains for the nilpotent action")
    bas.add_argument("--n", required=True, type=int)
    bas.add_argument("--functor", default="tensor", choices=("tensor", "sym2"))
    bas.add_argument("--verify", action="store_true")
    bas.add_argument("--dump", action="store_true")

    exp = sub.add_parser("expr", help="decompose a module expression")
    exp.add_argument("text")
    exp.add_argument("--method", default="formula", choices=("formula", "oracle", "both"))
    exp.add_argument("--format", default="text", choices=("text", "json"))
    return parser


def _emit(
    result: JordanType, method: str, input_desc: dict, fmt: str, out
) -> None:
    if fmt == "json":
        payload = {
            "input": input_desc,
            "method": method,
            "blocks": [{"size": s, "multiplicity": m} for s, m in result.parts],
            "total_dim": result.total_dim,
        }
        print(json.dumps(payload), file=out)
    else:
        print(format_jordan_type(result), file=out)


def _run_both(formula_fn, oracle_fn, method: str, err) -> tuple[list[tuple[str, JordanType]], int]:
    """Evaluate the requested methods; returns (label, result) pairs and a code."""
    results = []
    if method in ("formula", "both"):
        results.append(("formula", formula_fn()))
    if method in ("oracle", "both"):
        try:
            results.append(("oracle", oracle_fn()))
        except oracle.OracleCapExceeded as exc:
            if method == "oracle":
                raise _CliError(str(exc), EXIT_CAP) from exc
            print(f"warning: {exc}; falling back to formula only", file=err)
    if len(results) == 2 and results[0][1] != results[1][1]:
        return results, EXIT_MISMATCH
    return results, EXIT_OK


def _cmd_decompose(args, out, err) -> int:
    if args.n < 1 or (args.m is not None and args.m < 1):
        raise _CliError("block sizes must be positive")
    if args.m is not None and args.functor != "tensor":
        raise _CliError("--m is only valid with --functor tensor")
    cap = oracle.dim_cap()

    def formula_fn() -> JordanType:
        if args.functor == "tensor":
            return formulas.tensor_decompose(args.m if args.m is not None else args.n, args.n)
        if args.functor == "ext2":
            return formulas.ext2_block(args.n, args.kind)
        return formulas.sym2_block(args.n, args.kind)

    def oracle_fn() -> JordanType:
        return oracle.oracle_jordan_type(args.kind, args.functor, args.n, args.m, cap=cap)

    results, code = _run_both(formula_fn, oracle_fn, args.method, err)
    input_desc = {
        "functor": args.functor,
        "kind": args.kind,
        "n": args.n,
        **({"m": args.m} if args.m is not None else {}),
    }
    for label, result in results:
        method_label = label if args.method != "both" else "both"
        _emit(result, method_label, input_desc, args.format, out)
    if code == EXIT_MISMATCH:
        print("error: formula and oracle disagree", file=err)
    return code


def _cmd_expr(args, out, err) -> int:
    try:
        expr = parse_expr(args.text)
    except ExprSyntaxError as exc:
        raise _CliError(f"parse error: {exc}") from exc
    try:
        kind = expr_kind(expr)
    except MixedKindError as exc:
        raise _CliError(str(exc)) from exc
    cap = oracle.dim_cap()

    results, code = _run_both(
        lambda: formulas.decompose_expr(expr),
        lambda: oracle.oracle_expr_jordan_type(expr, kind, cap=cap),
        args.method,
        err,
    )
    for label, result in results:
        method_label = label if args.method != "both" else "both"
        _emit(result, method_label, {"expr": args.text}, args.format, out)
    if code == EXIT_MISMATCH:
        print("error: formula and oracle disagree", file=err)
    return code


def table_rows(max_n: int) -> list[tuple[int, str, str, str, str]]:
    rows = []
    for n in range(1, max_n + 1):
        rows.append(
            (
                n,
                format_jordan_type(formulas.ext2_unipotent(n)),
                format_jordan_type(formulas.sym2_unipotent(n)),
                format_jordan_type(formulas.ext2_nilpotent(n)),
                format_jordan_type(formulas.sym2_nilpotent(n)),
            )
        )
    return rows


def _cmd_table(args, out, err) -> int:
    if args.max_n < 1:
        raise _CliError("--max must be positive")
    rows = table_rows(args.max_n)
    headers = ("n", "ext2(V_n)", "sym2(V_n)", "ext2(W_n)", "sym2(W_n)")
    table = [tuple(str(c) for c in row) for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in table)) for i, h in enumerate(headers)]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)), file=out)
    for row in table:
        print("  ".join(c.ljust(w) for c, w in zip(row, widths)), file=out)
    return EXIT_OK


def _cmd_basis(args, out, err) -> int:
    if args.n < 1:
        raise _CliError("--n must be positive")
    cap = oracle.dim_cap()
    dim = oracle.functor_dim(args.functor, args.n)
    if args.functor == "tensor":
        chains = basis_mod.build_tensor_basis(args.n)
        terminals = [basis_mod.build_z(c.s, args.n) for c in chains]
    else:
        chains = basis_mod.build_sym_basis(args.n)
        terminals = None
    print(
        f"{args.functor} square of W_{args.n}: {len(chains)} chains, "
        f"type {basis_mod.chain_type(chains)}",
        file=out,
    )
    if args.dump:
        for chain in chains:
            print(f"s={chain.s}: {basis_mod.format_chain(chain)}", file=out)
    if args.verify:
        if dim > cap:
            raise _CliError(
                f"verification space has dimension {dim}, above the cap {cap}", EXIT_CAP
            )
        action = oracle.square_action("nilpotent", args.functor, args.n, cap=cap)
        report = basis_mod.verify_basis(chains, action, terminals)
        if report.ok:
            print(f"verification passed ({report.vector_count} vectors)", file=out)
        else:
            for failure in report.failures:
                print(f"verification failure: {failure}", file=err)
            return EXIT_MISMATCH
    return EXIT_OK


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "decompose":
            return _cmd_decompose(args, out, err)
        if args.command == "expr":
            return _cmd_expr(args, out, err)
        if args.command == "table":
            return _cmd_table(args, out, err)
        return _cmd_basis(args, out, err)
    except _CliError as exc:
        print(f"error: {exc}", file=err)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

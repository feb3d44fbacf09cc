"""The `uval` command line: scriptable access to the valuation algebra.

Subcommands: tasaki, pkf, kinematic, additive, cone, convert, sl2,
primitive, mc, selftest.  Output is deterministic (stable ordering
everywhere) and UTF-8; `--json` switches to the machine format.  Exit
codes: 0 success, 1 failed selftest or undecidable sign, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .checks import run_selftest
from .cones import first_variation, is_crofton_positive, is_monotone, is_positive
from .kinematic import (
    KinematicTensor,
    additive_kinematic,
    cpn_normalize,
    kinematic,
    principal_kinematic,
    tasaki_matrix_closed,
    tasaki_matrix_oracle,
)
from .scalar import Scalar, UndecidableSignError
from .sl2 import Sl2Operator, lefschetz_decompose, primitive_general
from .valspec import ValSpecError, parse_valspec
from .valuation import tau_coords, to_monomial

__all__ = ["main"]


def _print_json(payload) -> None:
    print(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def _format_combo(terms: list[tuple[Scalar, str]]) -> str:
    """Deterministic rendering of sum coeff * atom with unit elision."""
    parts = []
    for c, atom in terms:
        if c.is_zero:
            continue
        if c == Scalar.one():
            text = atom
        elif c == -Scalar.one():
            text = f"-{atom}"
        else:
            text = f"({c})*{atom}"
        parts.append(text)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def _tensor_cmd(args, tensor: KinematicTensor) -> int:
    if getattr(args, "cpn", False):
        tensor = cpn_normalize(tensor)
    if args.json:
        _print_json(tensor.to_json())
    else:
        print(tensor.pretty())
    return 0


def _cmd_tasaki(args) -> int:
    route = tasaki_matrix_oracle if args.oracle else tasaki_matrix_closed
    t = route(args.n, args.k)
    if args.json:
        _print_json(t.to_json())
    else:
        print(t.pretty())
    return 0


def _cmd_pkf(args) -> int:
    return _tensor_cmd(args, principal_kinematic(args.n))


def _cmd_kinematic(args) -> int:
    m = parse_valspec(args.val, args.n)
    return _tensor_cmd(args, kinematic(args.n, m))


def _cmd_additive(args) -> int:
    m = parse_valspec(args.val, args.n)
    return _tensor_cmd(args, additive_kinematic(args.n, m))


def _cmd_cone(args) -> int:
    v = parse_valspec(args.val, args.n)
    test = {
        "positive": is_positive,
        "monotone": is_monotone,
        "crofton": is_crofton_positive,
    }[args.test]
    verdict = test(v)
    if args.json:
        _print_json(verdict.to_json())
    else:
        if verdict.member:
            print("member")
        else:
            print(f"not a member; witness: {verdict.witness}")
    return 0


def _cmd_convert(args) -> int:
    v = parse_valspec(args.val, args.n)
    n = args.n
    if args.to == "mu":
        text = str(v)
        payload = v.to_json()
    elif args.to == "tau":
        terms: list[tuple[Scalar, str]] = []
        for k in v.degrees():
            coords = tau_coords(v, k)
            if k <= n:
                terms += [(c, f"tau[{k},{j}]") for j, c in enumerate(coords)]
            else:
                terms += [(c, f"F(tau[{2 * n - k},{j}])") for j, c in enumerate(coords)]
        text = _format_combo(terms)
        payload = {"n": n, "basis": "tau", "expr": text}
    elif args.to == "mono":
        p = to_monomial(v)
        text = str(p)
        payload = {"n": n, "basis": "mono", "poly": p.to_json()}
    else:  # prim
        parts = lefschetz_decompose(v)
        text = _format_combo([(c, f"pi[{k},{r}]") for k, r, c in parts])
        payload = {"n": n, "basis": "prim", "expr": text}
    if args.json:
        _print_json(payload)
    else:
        print(text)
    return 0


def _cmd_sl2(args) -> int:
    v = parse_valspec(args.val, args.n)
    out = Sl2Operator(args.op).apply(v)
    if args.json:
        _print_json(out.to_json())
    else:
        print(out)
    return 0


def _cmd_primitive(args) -> int:
    v = primitive_general(args.n, args.k, args.r)
    if args.json:
        _print_json(v.to_json())
    else:
        print(v)
    return 0


def _cmd_delta(args) -> int:
    v = parse_valspec(args.val, args.n)
    expr = first_variation(args.n, v)
    if args.json:
        _print_json(
            [
                {"symbol": sym, "k": k, "q": q, "coeff": c.to_json()}
                for (sym, k, q), c in expr.items()
            ]
        )
    else:
        print(expr)
    return 0


def _cmd_mc(args) -> int:
    from .grassmann import Frame, mc_crofton  # numpy import stays lazy

    def parse_angles(text: str) -> list[float]:
        text = text.strip()
        if not text:
            return []
        return [float(x) for x in text.split(",")]

    n, k = args.n, args.k
    e_frame = Frame.from_angles(n, k, parse_angles(args.angles))
    co = Frame.from_angles(n, k, parse_angles(args.co_angles))
    f_frame = co.complement()
    result = mc_crofton(
        n, k, e_frame, f_frame, args.samples, seed=args.seed, threads=args.threads
    )
    if args.json:
        _print_json(result.to_json())
    else:
        print(
            f"estimate {result.estimate:.6f}  stderr {result.stderr:.2e}  "
            f"prediction {result.prediction_exact} = {result.prediction_float:.6f}  "
            f"sigma {result.sigma:.2f}"
        )
    return 0


def _cmd_selftest(args) -> int:
    _, failed = run_selftest(args.level)
    return 1 if failed else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uval",
        description="Exact hermitian integral geometry: unitary-invariant "
        "valuations, Tasaki matrices, kinematic formulas, cones.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = add("tasaki", _cmd_tasaki, "print the Tasaki matrix T^n_k")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="use the Gram-inverse route")

    p = add("pkf", _cmd_pkf, "principal kinematic tensor k(chi)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cpn", action="store_true", help="CP^n probability normalization")

    p = add("kinematic", _cmd_kinematic, "kinematic tensor of a valuation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--val", required=True)
    p.add_argument("--cpn", action="store_true", help="CP^n probability normalization")

    p = add("additive", _cmd_additive, "additive kinematic tensor of a valuation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--val", required=True)

    p = add("cone", _cmd_cone, "cone membership tests")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--test", choices=("positive", "monotone", "crofton"), required=True)
    p.add_argument("--val", required=True)

    p = add("convert", _cmd_convert, "rewrite a valuation in another basis")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--val", required=True)
    p.add_argument("--to", choices=("mu", "tau", "mono", "prim"), required=True)

    p = add("sl2", _cmd_sl2, "apply an sl(2) operator")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--op", choices=("L", "Lambda", "H"), required=True)
    p.add_argument("--val", required=True)

    p = add("primitive", _cmd_primitive, "the primitive element pi_{k,r}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)

    p = add("delta", _cmd_delta, "first-variation curvature measure")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--val", required=True)

    p = add("mc", _cmd_mc, "Monte-Carlo Crofton check for flat discs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--angles", default="", help="Kaehler angles of E (radians, comma separated)")
    p.add_argument("--co-angles", dest="co_angles", default="", help="angles of the complement of F")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=int(os.environ.get("UVAL_SEED", "0")))
    p.add_argument("--threads", type=int, default=1)

    p = add("selftest", _cmd_selftest, "run the invariant suite")
    p.add_argument("--level", choices=("quick", "full"), default="full")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UndecidableSignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValSpecError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success or true, 1 predicate or property false, 2 input
error, 3 precision failure.  Output is JSON on stdout; integers that may not
fit in 64 bits are written as decimal strings.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .abgroups import AbGroup
from .classify import (
    ConstructionPlan,
    RealizabilityQuery,
    block_models,
    end_to_end_check,
    is_realizable,
    plan,
    plan_problems,
    rhs_bound,
)
from .errors import ModelError, NonUnitError, PrecisionError
from .exactlinalg.intmatrix import IntMatrix
from .exactlinalg.normalforms import cokernel_l_part, smith_form
from .models import (
    GaloisLatticeModel,
    abelian_pad_model,
    compute_phi,
    model_example51,
    model_example52,
    model_example53,
    model_example54,
    model_example55,
    model_unipotent_elliptic,
    trivial_model,
    unipotent_pad_model,
)
from .suites import DEFAULT_BUDGETS, SUITES, run_suite

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_PRECISION = 0, 1, 2, 3
_BIG = 2**63


class InputError(Exception):
    pass


def _num(n: int):
    return str(n) if abs(n) >= _BIG else n


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=False))


def _load(args, required: bool = True):
    """JSON from ``--json``, ``--file`` (``-`` for stdin), or ``None``."""
    if args.json is not None and args.file is not None:
        raise InputError("give either --json or --file, not both")
    try:
        if args.json is not None:
            return json.loads(args.json)
        if args.file is not None:
            if args.file == "-":
                return json.load(sys.stdin)
            with open(args.file, encoding="utf-8") as fh:
                return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    if required:
        raise InputError("this command needs input via --json or --file")
    return None


def _group(args) -> AbGroup:
    raw = args.group if getattr(args, "group", None) is not None else None
    data = json.loads(raw) if raw is not None else _load(args)
    return AbGroup.from_json(data)


def _query(args) -> RealizabilityQuery:
    for name in ("t", "a", "u"):
        if getattr(args, name) is None:
            raise InputError(f"--{name} is required")
    G = _group(args)
    d = args.t + args.a + args.u
    if args.d is not None and args.d != d:
        raise InputError(f"--d {args.d} differs from t + a + u = {d}")
    return RealizabilityQuery(G, d, args.t, args.a, args.u, args.p)


# subcommands


def cmd_delta(args) -> int:
    G = _group(args)
    _emit({"delta": _num(G.delta()), "delta_prime": _num(G.delta_prime())})
    return EXIT_OK


def cmd_realizable(args) -> int:
    q = _query(args)
    ok = is_realizable(q)
    bound = rhs_bound(q.G, q.t, q.p)
    _emit({"realizable": ok, "u": q.u, "required_u": str(bound), "query": q.to_json()})
    return EXIT_OK if ok else EXIT_FALSE


def cmd_plan(args) -> int:
    q = _query(args)
    if not is_realizable(q):
        _emit({"realizable": False, "required_u": str(rhs_bound(q.G, q.t, q.p)), "query": q.to_json()})
        return EXIT_FALSE
    _emit(plan(q).to_json())
    return EXIT_OK


def _plan_and_query(args):
    p = ConstructionPlan.from_json(_load(args))
    if args.t is not None or args.group is not None:
        q = _query(args)
    elif p.query is not None:
        q = p.query
    else:
        raise InputError("plan carries no query; pass --group, --t, --a, --u")
    return p, q


def cmd_verify_plan(args) -> int:
    p, q = _plan_and_query(args)
    problems = plan_problems(p, q)
    _emit({"ok": not problems, "problems": problems})
    return EXIT_OK if not problems else EXIT_FALSE


def cmd_end_to_end(args) -> int:
    p = ConstructionPlan.from_json(_load(args))
    details = []
    for b in p.blocks:
        for l, model in block_models(b).items():
            details.append(
                {
                    "kind": b.kind,
                    "params": b.params,
                    "l": l,
                    "predicted": list(b.predicted_phi.part(l)),
                    "computed": list(compute_phi(model).phi),
                }
            )
    ok = end_to_end_check(p)
    _emit({"ok": ok, "blocks": details})
    return EXIT_OK if ok else EXIT_FALSE


def cmd_phi(args) -> int:
    model = GaloisLatticeModel.from_json(_load(args))
    _emit(compute_phi(model).to_json())
    return EXIT_OK


def _matrix(args) -> IntMatrix:
    data = _load(args)
    if isinstance(data, list):
        return IntMatrix(data)
    return IntMatrix.from_json(data)


def cmd_smith(args) -> int:
    m = _matrix(args)
    _emit({"rows": m.rows, "cols": m.cols, "divisors": [str(d) for d in smith_form(m)]})
    return EXIT_OK


def cmd_coker(args) -> int:
    m = _matrix(args)
    divisors = smith_form(m)
    free = m.rows - sum(1 for d in divisors if d)
    out = {"invariant_factors": [str(d) for d in sorted((d for d in divisors if d > 1), reverse=True)], "free_rank": free}
    if args.l is not None:
        typ, corank = cokernel_l_part(m, args.l)
        out.update({"l": args.l, "type": list(typ), "corank": corank})
    _emit(out)
    return EXIT_OK


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise InputError(f"this example needs --{n}")
    return [getattr(args, n) for n in names]


def cmd_example(args) -> int:
    name = args.name
    if name in ("ex54", "ex55"):
        r, = _need(args, "r")
        s = args.s if name == "ex54" else 0
        if name == "ex54" and s is None:
            raise InputError("this example needs --s")
        precision = args.precision if args.precision is not None else 2 * r + s + 2
    l = args.l if args.l is not None else 2
    if name == "ex51":
        ns, = _need(args, "ns")
        model = model_example51([int(x) for x in ns.split(",") if x], l)
    elif name == "ex52":
        model = model_example52(l, *_need(args, "i"))
    elif name == "ex53":
        model = model_example53(l, *_need(args, "i"))
    elif name == "ex54":
        model = model_example54(l, r, s, precision)
    elif name == "ex55":
        model = model_example55(l, r, precision)
    elif name in ("klein", "cyclic2"):
        model = model_unipotent_elliptic(name, l)
    elif name == "abelian-pad":
        model = abelian_pad_model(*_need(args, "dim"), l)
    elif name == "unipotent-pad":
        model = unipotent_pad_model(*_need(args, "dim"), l)
    elif name == "trivial":
        model = trivial_model(l)
    else:  # argparse restricts the choices
        raise InputError(f"unknown example {name}")
    _emit(model.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)} or all")
    results = [run_suite(n, seed=args.seed, budget=args.budget) for n in names]
    for r in results:
        print(f"{r.name}: {'pass' if r.passed else 'FAIL'} ({r.checked} checks, {r.seconds:.1f}s)", file=sys.stderr)
    out = [r.to_json() for r in results]
    _emit(out[0] if len(out) == 1 else out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", help="inline JSON input")
    common.add_argument("--file", help="JSON input file, '-' for stdin")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--budget", type=int, default=None, help="suite size; defaults per suite")
    common.add_argument("--precision", type=int, default=None, help="l-adic precision N for twisted examples")

    parser = argparse.ArgumentParser(
        prog="neroncomp",
        description="Component groups of Neron models from Galois-lattice data.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(func=func)
        return p

    def query_flags(p):
        p.add_argument("--group", help="group as JSON, e.g. '{\"2\":[2,1]}'")
        for name in ("t", "a", "u", "d"):
            p.add_argument(f"--{name}", type=int)
        p.add_argument("--p", type=int, default=0, help="residue characteristic (0 or a prime)")

    p = add("delta", cmd_delta, "delta and delta' of a finite abelian group")
    p.add_argument("--group", help="group as JSON")
    query_flags(add("realizable", cmd_realizable, "decide whether a group occurs with the given ranks"))
    query_flags(add("plan", cmd_plan, "witness construction for a realizable query"))
    query_flags(add("verify-plan", cmd_verify_plan, "check a construction plan against its query"))
    add("end-to-end", cmd_end_to_end, "rebuild each block of a plan and recompute its component group")
    add("phi", cmd_phi, "component group and filtration of a model")
    add("smith", cmd_smith, "Smith normal form divisors of an integer matrix")
    p = add("coker", cmd_coker, "cokernel of an integer matrix")
    p.add_argument("--l", type=int, help="report the l-part type")
    p = add("example", cmd_example, "emit a stock model as JSON")
    p.add_argument(
        "name",
        choices=["ex51", "ex52", "ex53", "ex54", "ex55", "klein", "cyclic2", "abelian-pad", "unipotent-pad", "trivial"],
    )
    p.add_argument("--l", type=int)
    for name in ("i", "r", "s", "dim"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--ns", help="comma-separated Tate curve parameters")
    p = add("verify", cmd_verify, "run a verification suite")
    p.add_argument("suite", help=f"one of {', '.join(SUITES)} or all")
    parser.epilog = "suite default budgets: " + ", ".join(f"{k}={v}" for k, v in DEFAULT_BUDGETS.items())
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except PrecisionError as exc:
        print(f"precision failure: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (InputError, ModelError, NonUnitError, ValueError, KeyError, TypeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

"""
Command-line surface: count avoidance classes, run structural verification
suites, and analyze counting sequences.

    permav count --family A 5 --n 8 --out series.json
    permav count --patterns 123,132 --n 10 --format csv
    permav verify injection --k 4 --n 8
    permav verify rsk --n 6
    permav analyze --in series.json --max-order 3 --max-degree 6
    permav analyze --family A 5 5 --n 10 --ode src/permav/data/a55_ode.txt

Exit status: 0 on success / all checks passing, 1 when a verification or
equation check fails, 2 on usage errors.  Reports embed the configuration
that produced them, and runs with identical configurations write identical
bytes.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from importlib import resources
from typing import Optional

from . import counting, injection
from .asymptotics import differential_approximation
from .counting import IntegerSeries
from .guessing import guess_dfinite, guess_rational
from .ode import PolynomialODE, ode_to_recurrence, verify_ode
from .perms import (
    PatternSet,
    avoids_all,
    decode_rank_profile,
    family_a,
    family_aki,
    perm_to_string,
    rank_profile,
)
from .tableaux import descent_set, inverse_rsk, rsk

BUNDLED_ODES = {"a55": "data/a55_ode.txt"}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permav",
        description="exact enumeration and series analysis for pattern-avoiding permutations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_pattern_flags(p):
        p.add_argument("--patterns", help="comma-separated digit patterns, e.g. 123,132")
        p.add_argument(
            "--family",
            nargs="+",
            metavar=("NAME", "K"),
            help="built-in family: 'A k' or 'A k i'",
        )

    pc = sub.add_parser("count", help="count avoiders of a pattern set")
    add_pattern_flags(pc)
    pc.add_argument("--n", type=int, required=True, help="largest length to count")
    pc.add_argument("--out", help="output path (default: stdout)")
    pc.add_argument("--format", choices=("json", "csv"), default="json")
    pc.add_argument("--threads", type=int, default=1)
    pc.add_argument(
        "--warn-nodes",
        type=float,
        default=counting.DEFAULT_NODE_WARNING,
        help="projected enumeration-node count that triggers a warning",
    )

    pv = sub.add_parser("verify", help="run a structural verification suite")
    pv.add_argument(
        "suite",
        choices=("injection", "rsk", "rankwords", "eq1", "lowerbound"),
        help="which property suite to run",
    )
    pv.add_argument("--k", type=int, help="family parameter (injection/eq1/lowerbound)")
    pv.add_argument("--n", type=int, required=True, help="size to verify at")
    pv.add_argument("--out", help="write the JSON report here (default: stdout)")

    pa = sub.add_parser("analyze", help="guess generating functions and estimate growth")
    add_pattern_flags(pa)
    pa.add_argument("--in", dest="input", help="series file (JSON or CSV)")
    pa.add_argument("--n", type=int, help="when counting inline, largest length")
    pa.add_argument("--max-order", type=int, default=3)
    pa.add_argument("--max-degree", type=int, default=6)
    pa.add_argument("--holdout", type=int, default=5)
    pa.add_argument("--precision", type=int, default=12, help="digits for root isolation")
    pa.add_argument("--threads", type=int, default=1)
    pa.add_argument(
        "--ode",
        help="verify this equation file against the series (or a bundled name: "
        + ", ".join(sorted(BUNDLED_ODES)),
    )
    pa.add_argument("--out", help="output path (default: stdout)")
    return parser


def _patterns_from_args(parser, args) -> PatternSet:
    if bool(args.patterns) == bool(args.family):
        parser.error("give exactly one of --patterns or --family")
    if args.patterns:
        try:
            return PatternSet.from_string(args.patterns)
        except ValueError as exc:
            parser.error(str(exc))
    name, *params = args.family
    if name.upper() != "A" or len(params) not in (1, 2):
        parser.error("--family expects 'A k' or 'A k i'")
    try:
        nums = [int(tok) for tok in params]
        return family_a(nums[0]) if len(nums) == 1 else family_aki(nums[0], nums[1])
    except ValueError as exc:
        parser.error(str(exc))


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _config_dict(args, **extra) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k != "command" and v is not None}
    cfg.update(extra)
    return cfg


# ---------------------------------------------------------------------------
# count


def _pick_backend(ps: PatternSet) -> str:
    pats = ps.patterns
    if len(pats) == 1:
        q = pats[0]
        if q == tuple(range(1, len(q) + 1)) and len(q) >= 2:
            return "tableaux-dp"
    if pats:
        k = len(pats[0])
        if k >= 3 and len(pats) == k and pats == family_a(k).patterns:
            return "family-formula"
    return "pruned-dfs"


def cmd_count(parser, args) -> int:
    ps = _patterns_from_args(parser, args)
    if args.n < 0:
        parser.error("--n must be >= 0")
    backend = _pick_backend(ps)
    if backend == "family-formula" and args.n >= 1:
        series = counting.count_family_a(len(ps.patterns[0]), args.n)
    elif backend == "tableaux-dp":
        series = counting.count_monotone_avoiders(len(ps.patterns[0]), args.n)
    else:
        backend = "pruned-dfs"
        series = counting.count_avoiders(
            ps, args.n, threads=args.threads, node_warning=args.warn_nodes
        )
    print(f"[permav] backend: {backend} for {ps}", file=sys.stderr)
    if args.format == "csv":
        text = f"# config: {json.dumps(_config_dict(args, backend=backend), sort_keys=True)}\n"
        text += series.to_csv_text()
    else:
        payload = series.to_json_dict()
        payload["config"] = _config_dict(args, backend=backend)
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    _emit(text, args.out)
    return 0


# ---------------------------------------------------------------------------
# verify


def _verify_injection(k: int, n: int) -> dict:
    report = injection.verify(k, n)
    return report.to_json_dict()


def _verify_rsk(n: int) -> dict:
    checked = 0
    witness = None
    ok = True
    for p in itertools.permutations(range(1, n + 1)):
        P, Q = rsk(p)
        inv = tuple(sorted(range(1, n + 1), key=lambda v: p[v - 1]))
        good = (
            inverse_rsk(P, Q) == p
            and descent_set(p) == descent_set(Q)
            and ((P.rows == Q.rows) == (p == inv))
        )
        checked += 1
        if not good:
            ok = False
            witness = p
            break
    return {
        "suite": "rsk",
        "n": n,
        "checked": checked,
        "round_trip_involution_descents": ok,
        "all_pass": ok,
        "witness": list(witness) if witness else None,
    }


def _verify_rankwords(n: int) -> dict:
    images = set()
    checked = 0
    ok = True
    witness = None
    for p in itertools.permutations(range(1, n + 1)):
        rp = rank_profile(p)
        pair = (rp.by_position, rp.by_value)
        if pair in images or decode_rank_profile(*pair) != p:
            ok = False
            witness = p
            break
        images.add(pair)
        checked += 1
    return {
        "suite": "rankwords",
        "n": n,
        "checked": checked,
        "decode_round_trip_and_injectivity": ok,
        "all_pass": ok,
        "witness": list(witness) if witness else None,
    }


def _verify_eq1(k: int, n: int) -> dict:
    lhs = counting.count_avoiders(family_a(k), n).terms
    rhs = counting.count_family_a(k, n).terms
    ok = lhs == rhs
    return {
        "suite": "eq1",
        "k": k,
        "n": n,
        "dfs_counts": [str(t) for t in lhs],
        "formula_counts": [str(t) for t in rhs],
        "all_pass": ok,
        "witness": None if ok else next(i for i, (a, b) in enumerate(zip(lhs, rhs)) if a != b),
    }


def _verify_lowerbound(k: int, n: int) -> dict:
    results = []
    ok = True
    for m in range(k - 2, n + 1):
        lb = counting.lower_bound_akk(k, m)
        av = counting.count_avoiders(family_aki(k, k), m).terms[m]
        results.append({"n": m, "lower_bound": str(lb), "av": str(av)})
        ok = ok and lb <= av
    return {"suite": "lowerbound", "k": k, "n": n, "rows": results, "all_pass": ok}


def cmd_verify(parser, args) -> int:
    needs_k = args.suite in ("injection", "eq1", "lowerbound")
    if needs_k and args.k is None:
        parser.error(f"suite {args.suite!r} needs --k")
    if args.n < 1:
        parser.error("--n must be >= 1")
    if args.suite == "injection":
        report = _verify_injection(args.k, args.n)
    elif args.suite == "rsk":
        report = _verify_rsk(args.n)
    elif args.suite == "rankwords":
        report = _verify_rankwords(args.n)
    elif args.suite == "eq1":
        report = _verify_eq1(args.k, args.n)
    else:
        report = _verify_lowerbound(args.k, args.n)
    report["config"] = _config_dict(args)
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    return 0 if report.get("all_pass") else 1


# ---------------------------------------------------------------------------
# analyze


def _load_ode(spec: str) -> PolynomialODE:
    if spec in BUNDLED_ODES:
        text = resources.files("permav").joinpath(BUNDLED_ODES[spec]).read_text()
        return PolynomialODE.from_text(text)
    return PolynomialODE.load(spec)


def cmd_analyze(parser, args) -> int:
    if args.input:
        try:
            series = IntegerSeries.load(args.input)
        except (OSError, ValueError, KeyError) as exc:
            parser.error(f"cannot read series file {args.input!r}: {exc}")
    else:
        if not (args.patterns or args.family):
            parser.error("give --in FILE, or --patterns/--family with --n")
        if args.n is None:
            parser.error("inline counting needs --n")
        ps = _patterns_from_args(parser, args)
        series = counting.count_avoiders(ps, args.n, threads=args.threads)

    findings: dict = {
        "label": series.label,
        "n_terms": len(series),
        "config": _config_dict(args),
    }
    status = 0

    rational = guess_rational(series) if len(series) >= 8 else None
    findings["rational_fit"] = str(rational) if rational else None

    if len(series) >= 10:
        ode = guess_dfinite(
            series, max_order=args.max_order, max_degree=args.max_degree, holdout=args.holdout
        )
    else:
        ode = None
    if ode is not None:
        findings["dfinite_fit"] = {
            "order": ode.order,
            "degree": ode.max_degree,
            "text": ode.to_text(),
            "verified": bool(verify_ode(ode, series)),
        }
        rec = ode_to_recurrence(ode)
        findings["dfinite_fit"]["recurrence_window"] = rec.window
    else:
        findings["dfinite_fit"] = None

    estimate = differential_approximation(
        series, max_order=args.max_order, digits=args.precision
    )
    findings["growth"] = estimate.to_json_dict()

    if args.ode:
        try:
            shipped = _load_ode(args.ode)
        except (OSError, ValueError) as exc:
            parser.error(f"cannot read ODE {args.ode!r}: {exc}")
        check = verify_ode(shipped, series)
        findings["ode_check"] = {
            "source": args.ode,
            "ok": check.ok,
            "checked_orders": check.checked_orders,
            "first_bad_order": check.first_bad_order,
            "residual": str(check.residual) if check.residual is not None else None,
        }
        if not check.ok:
            status = 1

    _emit(json.dumps(findings, indent=2, sort_keys=True) + "\n", args.out)
    return status


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "count":
        return cmd_count(parser, args)
    if args.command == "verify":
        return cmd_verify(parser, args)
    return cmd_analyze(parser, args)


if __name__ == "__main__":
    sys.exit(main())

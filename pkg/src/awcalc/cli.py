"""Command line front end.

Three subcommands:

  verify-identities   seeded random trials of the operator identities and
                      the k-fold rule at a given v
  build-family        solve the operator equation up to degree nmax and
                      emit the family as JSON
  verify-chain        run the full equation chain for one or more k, on a
                      freshly built family or on a family file

Exit codes: 0 when every check passed, 1 when at least one verification
failed, 2 for malformed input or inadmissible parameters. All output is
byte-deterministic for fixed arguments.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .askey_wilson import (
    build_family,
    family_from_dict,
    family_to_dict,
    make_params,
)
from .errors import AWCalcError, DomainError, UsageError
from .proof_engine import (
    CheckRecord,
    ProofReport,
    record_sort_key,
    report_to_dict,
    run_chain_verification,
)
from .qoperators import IDENTITIES, verify_identity, verify_k_fold_rule
from .qpoly import random_poly
from .scalars import format_rational, make_qcontext, parse_rational

# identity trials draw polynomials up to this degree
MAX_TRIAL_DEGREE = 10
KFOLD_MAX = 5


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise UsageError(f"must be >= 0, got {value}")
    return value


def _parse_four(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError(f"expected 4 comma-separated rationals, got {text!r}")
    return tuple(parse_rational(p) for p in parts)


def _parse_klist(text: str) -> list[int]:
    try:
        ks = [int(p) for p in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad k list {text!r}") from exc
    return ks


def _params_from_args(args) -> object:
    if (args.params is None) == (args.sigmas is None):
        raise UsageError("give exactly one of --params or --sigmas")
    if args.params is not None:
        return make_params(roots=_parse_four(args.params))
    return make_params(sigmas=_parse_four(args.sigmas))


def _residual_witness(result) -> str:
    return "0" if result.passed else f"deg={result.residual.degree}"


def _run_identities(args) -> tuple[ProofReport, bool]:
    ctx = make_qcontext(parse_rational(args.qsqrt))
    rng = random.Random(args.seed)
    records: list[CheckRecord] = []
    if args.trials == 0:
        records.append(CheckRecord(
            name="warning", k=None, n=None, passed=True,
            witness="no trials requested",
        ))
    for t in range(args.trials):
        f = random_poly(rng, MAX_TRIAL_DEGREE)
        g = random_poly(rng, MAX_TRIAL_DEGREE)
        for which in IDENTITIES:
            res = verify_identity(ctx, which, f, g)
            records.append(CheckRecord(
                name=which, k=None, n=t, passed=res.passed,
                witness=_residual_witness(res),
            ))
        for k in range(1, KFOLD_MAX + 1):
            res = verify_k_fold_rule(ctx, f, k)
            records.append(CheckRecord(
                name=res.name, k=k, n=t, passed=res.passed,
                witness=_residual_witness(res),
            ))
    records.sort(key=record_sort_key)
    context = {
        "v": format_rational(ctx.v),
        "trials": args.trials,
        "seed": args.seed,
        "max_degree": MAX_TRIAL_DEGREE,
    }
    report = ProofReport(context=context, checks=tuple(records))
    return report, report.all_passed


def _run_build(args) -> tuple[dict, bool]:
    ctx = make_qcontext(parse_rational(args.qsqrt))
    params = _params_from_args(args)
    family = build_family(ctx, params, args.nmax)
    return family_to_dict(family), True


def _run_chain(args) -> tuple[ProofReport, bool]:
    ks = _parse_klist(args.k)
    if args.family is not None:
        if args.qsqrt or args.params or args.sigmas:
            raise UsageError(
                "--family already fixes v and the parameters; drop "
                "--qsqrt/--params/--sigmas"
            )
        try:
            data = json.loads(Path(args.family).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read family file: {exc}") from exc
        base = family_from_dict(data)
    else:
        if args.qsqrt is None:
            raise UsageError("--qsqrt is required unless --family is given")
        ctx = make_qcontext(parse_rational(args.qsqrt))
        params = _params_from_args(args)
        if not ks or any(k < 1 for k in ks):
            raise UsageError(f"k list must contain ints >= 1, got {ks}")
        base = build_family(ctx, params, args.nmax + max(ks) + 2)
    report = run_chain_verification(base, ks, args.nmax)
    return report, report.all_passed


def _render(payload, fmt: str) -> str:
    if isinstance(payload, dict):
        # a family; there is no text form, the JSON is the interface
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "json":
        return json.dumps(report_to_dict(payload), indent=2) + "\n"
    lines = [f"# {json.dumps(payload.context)}"]
    for rec in payload.checks:
        kpart = f" k={rec.k}" if rec.k is not None else ""
        npart = f" n={rec.n}" if rec.n is not None else ""
        status = "PASS" if rec.passed else "FAIL"
        lines.append(f"{rec.name}{kpart}{npart}: {status} [{rec.witness}]")
    good = sum(1 for rec in payload.checks if rec.passed)
    lines.append(f"{good}/{len(payload.checks)} checks passed")
    return "\n".join(lines) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="awcalc",
        description="exact operator calculus on the q-quadratic lattice",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("json", "text"), default="json",
                       help="output format (default json)")
        p.add_argument("--out", default=None, metavar="PATH",
                       help="write output to PATH instead of stdout")

    pi = sub.add_parser(
        "verify-identities",
        help="check the operator identities on seeded random polynomials",
    )
    pi.add_argument("--qsqrt", required=True, metavar="R",
                    help="rational v = q^(1/2), 0 < v < 1, e.g. 1/2")
    pi.add_argument("--trials", type=_nonneg_int, default=20,
                    help="number of random polynomial pairs (default 20)")
    pi.add_argument("--seed", type=_nonneg_int, default=0,
                    help="RNG seed (default 0)")
    add_common(pi)

    pb = sub.add_parser(
        "build-family",
        help="solve the operator equation up to degree nmax; emits JSON",
    )
    pb.add_argument("--qsqrt", required=True, metavar="R")
    pb.add_argument("--params", default=None, metavar="A,B,C,D",
                    help="four rational roots")
    pb.add_argument("--sigmas", default=None, metavar="S1,S2,S3,S4",
                    help="four elementary symmetric functions")
    pb.add_argument("--nmax", type=_nonneg_int, default=8,
                    help="largest degree to build (default 8)")
    add_common(pb)

    pc = sub.add_parser(
        "verify-chain",
        help="verify the equation chain for the derived families",
    )
    pc.add_argument("--qsqrt", default=None, metavar="R")
    pc.add_argument("--params", default=None, metavar="A,B,C,D")
    pc.add_argument("--sigmas", default=None, metavar="S1,S2,S3,S4")
    pc.add_argument("--family", default=None, metavar="PATH",
                    help="verify a stored family file instead of building one")
    pc.add_argument("--nmax", type=_nonneg_int, default=8,
                    help="largest degree to verify (default 8)")
    pc.add_argument("--k", default="1", metavar="LIST",
                    help="comma-separated derivation orders (default 1)")
    add_common(pc)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    runner = {
        "verify-identities": _run_identities,
        "build-family": _run_build,
        "verify-chain": _run_chain,
    }[args.command]
    try:
        payload, all_passed = runner(args)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AWCalcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = _render(payload, args.format)
    if args.out is not None:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if all_passed else 1

"""Command line interface.

Commands: ``generate``, ``analyze``, ``partition``, ``verify``, ``oracle``.
Each writes one JSON document (to ``--output`` or stdout). Exit codes:
0 success, 1 a check or fixed-threshold selection failed, 2 invalid input,
3 a size guard was hit.
"""
from __future__ import annotations

import argparse
import hashlib
import os
import sys
import tempfile
from decimal import Decimal, localcontext
from fractions import Fraction

from . import __version__
from .errors import SparseGreedyError, ValidationError
from .generators import KINDS, FamilySpec, family_meta, generate
from .greedy_log import max_atom_sum, normalize_witness, run_log
from .greedy_opt import Adaptive, Fixed, carleson_certificate, run_opt, witness_from_trace
from .jsonio import (
    collection_to_json,
    dumps,
    family_spec_from_json,
    loads,
    log_trace_to_json,
    opt_trace_to_json,
    oracle_to_json,
    parse_collection,
    partition_report_to_json,
    partition_to_json,
    witness_from_json,
    witness_to_json,
)
from .measure import as_fraction, fraction_str
from .oracle import MAX_SETS, carleson_exact, verify_sparse_witness, weak_carleson_exact
from .partition import bucket_witnesses, is_p1, split, verify_partition

SCHEMA = "v1"


def _decimal(x: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = 17
        return str(Decimal(x.numerator) / Decimal(x.denominator))


def _scalars(**values: Fraction) -> dict:
    """Exact values plus a decimal rendering that is for reading only."""
    return {
        "exact": {k: fraction_str(v) for k, v in values.items()},
        "decimal_non_authoritative": {k: _decimal(v) for k, v in values.items()},
    }


def _read(path: str | None) -> bytes:
    if path is None or path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as e:
        raise ValidationError(f"cannot read {path}: {e.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _frac_arg(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except ValidationError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _mode(args):
    if args.eta is None:
        raise ValidationError("--eta is required for this algorithm")
    if args.algorithm == "opt-fixed":
        if args.M is None:
            raise ValidationError("--M is required for opt-fixed")
        return Fixed(args.M, args.eta)
    return Adaptive(args.eta)


def cmd_generate(args, raw: bytes | None):
    if raw is not None:
        spec = family_spec_from_json(loads(raw, "family"))
    else:
        if args.kind is None:
            raise ValidationError("generate needs --input FAMILY.json or --kind")
        spec = FamilySpec(
            kind=args.kind,
            Lambda=args.Lambda if args.Lambda is not None else Fraction(2),
            count=args.count,
            dimension=args.dimension,
            depth=args.depth,
            seed=args.seed,
            atoms=args.atoms,
        )
    c = generate(spec)
    out = collection_to_json(c)
    out["meta"] = family_meta(spec)
    return out, 0


def cmd_analyze(args, raw: bytes):
    c = parse_collection(raw)
    if args.algorithm == "log":
        t = run_log(c)
        w = normalize_witness(t, c)
        eta = verify_sparse_witness(c, w)
        S = max_atom_sum(t)
        return {
            "algorithm": "log",
            "trace": log_trace_to_json(t),
            "witness": witness_to_json(w),
            # any eta-sparse witness bounds the Carleson constant by 1/eta
            "certificate_kind": "inverse_witness_eta",
            **_scalars(A=t.A, normalizer=S, achieved_eta=eta, certificate=1 / eta),
        }, 0
    mode = _mode(args)
    t = run_opt(c, mode)
    w = witness_from_trace(t, c)
    eta = verify_sparse_witness(c, w)
    return {
        "algorithm": args.algorithm,
        "trace": opt_trace_to_json(t),
        "witness": witness_to_json(w),
        "certificate_kind": "max_threshold_over_one_minus_eta",
        **_scalars(A=t.A, achieved_eta=eta, certificate=carleson_certificate(t)),
    }, 0


def cmd_partition(args, raw: bytes):
    c = parse_collection(raw)
    if args.gamma is None or args.eta is None or args.M is None:
        raise ValidationError("partition needs --gamma, --eta and --M")
    mode = Fixed(args.M, args.eta) if args.algorithm == "opt-fixed" else Adaptive(args.eta)
    t = run_opt(c, mode)
    if len(c) <= min(args.max_oracle_sets, MAX_SETS):
        car_upper, source = carleson_exact(c, jobs=args.jobs).value, "oracle"
    else:
        car_upper, source = carleson_certificate(t), "certificate"
    p = split(c, list(reversed(t.removal_order)), args.gamma, args.max_buckets)
    report = verify_partition(p, c, args.M, args.eta, car_upper)
    buckets = []
    for bucket, (sub, w) in zip(p.buckets, bucket_witnesses(p, c)):
        buckets.append(
            {
                "sets": list(bucket),
                "witness_eta": fraction_str(verify_sparse_witness(sub, w)),
                # insertion order matters for this check
                "p1": is_p1([c[sid] for sid in bucket]),
            }
        )
    result = {
        "partition": partition_to_json(p),
        "verification": partition_report_to_json(report),
        "buckets": buckets,
        "car_upper_source": source,
        "order_mode": opt_trace_to_json(t)["header"],
        **_scalars(car_upper=car_upper),
    }
    return result, 0 if report.passed else 1


def cmd_verify(args, raw: bytes):
    c = parse_collection(raw)
    if args.witness is None:
        raise ValidationError("verify needs --witness")
    w = witness_from_json(loads(_read(args.witness), "witness"))
    eta = verify_sparse_witness(c, w)
    claimed_ok = w.achieved_eta <= eta
    return {
        "claimed_ok": claimed_ok,
        **_scalars(achieved_eta=eta, claimed_eta=w.achieved_eta),
    }, 0 if claimed_ok else 1


def cmd_oracle(args, raw: bytes):
    c = parse_collection(raw)
    strong = carleson_exact(c, args.max_oracle_sets, args.jobs)
    weak = weak_carleson_exact(c, args.max_oracle_sets, args.jobs)
    return {
        "carleson": oracle_to_json(strong),
        "weak_carleson": oracle_to_json(weak),
        **_scalars(carleson=strong.value, weak_carleson=weak.value),
    }, 0


COMMANDS = {
    "generate": cmd_generate,
    "analyze": cmd_analyze,
    "partition": cmd_partition,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sparsegreedy", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input JSON file ('-' for stdin)")
    common.add_argument("--output", help="report file (default stdout); written atomically")
    common.add_argument("--eta", type=_frac_arg)
    common.add_argument("--gamma", type=_frac_arg)
    common.add_argument("--M", type=_frac_arg)
    common.add_argument("--algorithm", choices=("log", "opt-fixed", "opt-adaptive"), default="opt-adaptive")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-oracle-sets", type=int, default=MAX_SETS)
    common.add_argument("--jobs", type=int, default=1)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", parents=[common], help="emit a collection from a family spec")
    gen.add_argument("--kind", choices=KINDS)
    gen.add_argument("--Lambda", type=_frac_arg)
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--dimension", type=int, default=1)
    gen.add_argument("--depth", type=int, default=3)
    gen.add_argument("--atoms", type=int, default=8)

    sub.add_parser("analyze", parents=[common], help="run a greedy algorithm and emit its witness")
    part = sub.add_parser("partition", parents=[common], help="split into sparse buckets")
    part.add_argument("--max-buckets", type=int)
    ver = sub.add_parser("verify", parents=[common], help="check a sparse witness")
    ver.add_argument("--witness")
    sub.add_parser("oracle", parents=[common], help="exact Carleson and weak-Carleson constants")
    return parser


def _config(args) -> dict:
    cfg = {}
    for key, value in sorted(vars(args).items()):
        if key in ("input", "output", "witness"):
            continue
        cfg[key] = fraction_str(value) if isinstance(value, Fraction) else value
    return cfg


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report = {
        "schema": SCHEMA,
        "tool": {"name": "sparsegreedy", "version": __version__},
        "command": args.command,
        "config": _config(args),
    }
    try:
        if args.command == "generate" and args.input is None:
            raw = None
            digest_src = b""
        else:
            raw = _read(args.input)
            digest_src = raw
        if args.command == "verify" and args.witness is not None:
            digest_src += _read(args.witness)
        report["input_sha256"] = hashlib.sha256(digest_src).hexdigest()
        result, code = COMMANDS[args.command](args, raw)
    except SparseGreedyError as e:
        report["status"] = "error"
        report["error"] = {"type": type(e).__name__, "message": str(e)}
        _write(args.output, dumps(report))
        return e.exit_code
    if args.command == "generate":
        result["meta"].update(schema=SCHEMA, tool=report["tool"], input_sha256=report["input_sha256"])
        _write(args.output, dumps(result))
        return code
    report["status"] = "ok" if code == 0 else "check_failed"
    report["result"] = result
    _write(args.output, dumps(report))
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

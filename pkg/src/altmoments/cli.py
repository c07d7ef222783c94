"""Command-line front end exposing every capability of the package.

Exit codes are scriptable: 0 for success or a certified property, 1 when
a checked property is violated (a verdict, not an error), 2 for usage or
input errors.  Sampling subcommands echo their seed in the output so any
run can be replayed byte for byte.

Inputs are UTF-8 JSON, given as a file path, inline JSON text, or ``-``
for stdin.  The environment variable ALTMOMENTS_CAP overrides the
default exact-enumeration cap; a ``--cap`` flag wins over both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import compstruct, kconvex, momentrep, seqcalc, serialize, subord
from .errors import EnumerationCapError, InvalidInputError

SHARD_SIZE = 8192


# ------------------------------------------------------------------- helpers

def _emit(text: str):
    sys.stdout.write(text)


def _read_obj(source: str) -> tuple[object, str]:
    """JSON from a path, inline text (starts with '{' or '['), or stdin."""
    if source == "-":
        text = sys.stdin.read()
        return serialize.parse_json(text, origin="<stdin>"), text
    stripped = source.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        return serialize.parse_json(source, origin="<inline>"), source
    return serialize.load_json(source)


def _convert(fn, source: str, **kwargs):
    """Parse the source and convert it; a malformed rational is re-raised
    with the line/column where its token sits in the input text."""
    obj, text = _read_obj(source)
    try:
        return fn(obj, **kwargs)
    except InvalidInputError as exc:
        token = getattr(exc, "token", None)
        if token is not None:
            loc = serialize.locate_token(text, json.dumps(token))
            if loc is None:
                loc = serialize.locate_token(text, str(token))
            if loc is not None:
                raise InvalidInputError(
                    f"line {loc[0]}, column {loc[1]}: {exc}"
                ) from exc
        raise


def _resolve_cap(explicit: int | None) -> int:
    if explicit is not None:
        cap = explicit
    else:
        env = os.environ.get("ALTMOMENTS_CAP")
        if env is None:
            return compstruct.DEFAULT_CAP
        try:
            cap = int(env)
        except ValueError:
            raise InvalidInputError(
                f"ALTMOMENTS_CAP must be an integer, got {env!r}"
            ) from None
    if cap < 1:
        raise InvalidInputError(f"enumeration cap must be >= 1, got {cap}")
    return cap


def _seed_type(value: str) -> int:
    try:
        seed = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {value!r}")
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return seed


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return n


def _nonnegative(value: str) -> int:
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return n


def _load_data(args) -> subord.LaplaceExponentData:
    return _convert(serialize.data_from_obj, args.input, scale=args.scale)


def _sample_many(
    data: subord.LaplaceExponentData,
    n: int,
    count: int,
    method: str,
    seed: int,
    workers: int,
) -> list[tuple[int, ...]]:
    """Draw compositions in fixed-size shards with per-shard generators.

    Shard i uses the generator spawned from (seed, i), so the multiset of
    draws and the output order (shard index, then draw order) do not
    depend on the worker count.
    """
    draw = (
        compstruct.sample_composition_recursive
        if method == "recursive"
        else compstruct.sample_composition_paintbox
    )

    def block(spec: tuple[int, int]) -> list[tuple[int, ...]]:
        index, size = spec
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=seed, spawn_key=(index,))
        )
        return [draw(data, n, rng) for _ in range(size)]

    shards = []
    remaining = count
    while remaining > 0:
        size = min(SHARD_SIZE, remaining)
        shards.append((len(shards), size))
        remaining -= size
    if workers > 1 and len(shards) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(block, shards))
    else:
        blocks = [block(spec) for spec in shards]
    return [parts for blk in blocks for parts in blk]


# --------------------------------------------------------------- subcommands

def cmd_certify(args) -> int:
    seq = _convert(serialize.sequence_from_obj, args.input)
    extra = {"mode": args.mode}
    if args.mode == "cm":
        cert = seqcalc.certify_completely_monotone(seq)
    elif args.mode == "ca":
        cert = seqcalc.certify_completely_alternating(seq)
    elif args.mode == "df":
        cert = seqcalc.certify_convex_moments(seq)
    else:
        if args.k is None:
            raise InvalidInputError("--mode k-alt requires --k")
        cert = kconvex.certify_k_alternating(
            kconvex.KAssociated(k=args.k, seq=seq)
        )
        extra["k"] = args.k
    _emit(serialize.dump_json(serialize.certificate_to_obj(cert, **extra)))
    return 0 if cert.certified else 1


def cmd_moments(args) -> int:
    nu = _convert(serialize.measure_from_obj, args.input)
    if args.k == 1:
        seq = momentrep.moments_of_mixture(nu, args.n)
    else:
        seq = kconvex.k_convex_moments(nu, args.k, args.n)
    _emit(serialize.dump_json(serialize.sequence_to_obj(seq)))
    return 0


def cmd_phi(args) -> int:
    data = _load_data(args)
    if args.n is not None:
        seq = subord.laplace_exponent_sequence(data, args.n)
        _emit(serialize.dump_json(serialize.sequence_to_obj(seq)))
        return 0
    lam = args.lam
    if lam < 0:
        raise InvalidInputError(f"need lam >= 0, got {lam}")
    if args.interp:
        values = subord.laplace_exponent_sequence(data, args.nodes - 1)
        value = subord.newton_interpolate(values, lam)
        _emit(serialize.dump_json({"lam": lam, "nodes": args.nodes, "value": value}))
    elif float(lam).is_integer():
        exact = subord.laplace_exponent(data, int(lam))
        _emit(serialize.dump_json({"lam": lam, "value": serialize.fraction_str(exact)}))
    else:
        _emit(serialize.dump_json({"lam": lam, "value": subord.laplace_exponent_at(data, lam)}))
    return 0


def cmd_qmatrix(args) -> int:
    data = _load_data(args)
    rows = [compstruct.q_row_from_phi(data, i) for i in range(1, args.n + 1)]
    _emit(serialize.dump_json(serialize.qmatrix_to_obj(rows)))
    return 0


def cmd_pmf(args) -> int:
    data = _load_data(args)
    dist = compstruct.composition_pmf(data, args.n, cap=_resolve_cap(args.cap))
    _emit(serialize.dump_json(serialize.pmf_to_obj(dist)))
    return 0


def cmd_sample(args) -> int:
    data = _load_data(args)
    samples = _sample_many(
        data, args.n, args.count, args.method, args.seed, args.workers
    )
    if args.format == "csv":
        _emit(serialize.samples_to_csv(samples, args.seed, args.method))
        return 0
    obj = serialize.samples_to_obj(samples, args.seed, args.method, args.n)
    code = 0
    if args.chisquare:
        dist = compstruct.composition_pmf(data, args.n, cap=_resolve_cap(args.cap))
        rep = compstruct.goodness_of_fit(Counter(samples), dist)
        obj["chisquare"] = serialize.chisquare_to_obj(rep)
        if not rep.passes():
            code = 1
    _emit(serialize.dump_json(obj))
    return code


def cmd_consistency(args) -> int:
    data = _load_data(args)
    if args.n < 2:
        raise InvalidInputError(f"need n >= 2, got {args.n}")
    cap = _resolve_cap(args.cap)
    dist = compstruct.composition_pmf(data, args.n, cap=cap)
    projected = compstruct.deletion_projection(dist)
    expected = compstruct.composition_pmf(data, args.n - 1, cap=cap)
    mismatch = None
    for parts in sorted(set(projected.probs) | set(expected.probs)):
        if projected.prob(parts) != expected.prob(parts):
            mismatch = {
                "parts": list(parts),
                "projected": serialize.fraction_str(projected.prob(parts)),
                "expected": serialize.fraction_str(expected.prob(parts)),
            }
            break
    obj = {"n": args.n, "consistent": mismatch is None}
    if mismatch is not None:
        obj["mismatch"] = mismatch
    regen = compstruct.regeneration_check(data, args.n, cap=cap)
    obj["regeneration"] = serialize.regeneration_to_obj(regen)
    _emit(serialize.dump_json(obj))
    return 0 if mismatch is None else 1


def cmd_reconstruct(args) -> int:
    seq = _convert(serialize.sequence_from_obj, args.input)
    points = momentrep.hausdorff_reconstruct(seq, args.n)
    if args.format == "csv":
        _emit(serialize.points_to_csv(points))
    else:
        _emit(serialize.dump_json(serialize.points_to_obj(points)))
    return 0


def _breakpoints_from_obj(obj) -> list:
    if not isinstance(obj, list):
        raise InvalidInputError("breakpoints must be a JSON array of rationals")
    return [seqcalc.to_fraction(v) for v in obj]


def cmd_alloc(args) -> int:
    breaks = _convert(_breakpoints_from_obj, args.input)
    rng = np.random.default_rng(args.seed)
    counts, residual = compstruct.ball_allocation(breaks, args.n, rng)
    _emit(
        serialize.dump_json(
            {
                "seed": args.seed,
                "n": args.n,
                "counts": counts,
                "residual": residual,
            }
        )
    )
    return 0


def cmd_report(args) -> int:
    from . import report  # pulls in matplotlib, keep it off the fast paths

    data = _load_data(args)
    manifest = report.render_report(
        data,
        args.n,
        args.outdir,
        args.seed,
        count=args.count,
        cap=_resolve_cap(args.cap),
    )
    _emit(serialize.dump_json(manifest))
    return 0


# --------------------------------------------------------------------- wiring

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="altmoments",
        description="Moment sequences, Laplace exponents, and regenerative "
        "compositions, with exact rational arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add_input(p: argparse.ArgumentParser, what: str):
        p.add_argument("input", help=f"{what}: a path, inline JSON, or - for stdin")

    def add_scale(p: argparse.ArgumentParser):
        p.add_argument(
            "--scale",
            choices=["nu", "nutilde"],
            default="nutilde",
            help="which coordinate the jump atoms are given in (default nutilde)",
        )

    def add_cap(p: argparse.ArgumentParser):
        p.add_argument(
            "--cap",
            type=_positive,
            help="exact-enumeration cap (overrides ALTMOMENTS_CAP)",
        )

    p = sub.add_parser("certify", help="certify a sequence property")
    add_input(p, "sequence")
    p.add_argument(
        "--mode",
        choices=["cm", "ca", "df", "k-alt"],
        required=True,
        help="cm: completely monotone; ca: completely alternating; "
        "df: distribution-function rows; k-alt: k-alternating",
    )
    p.add_argument("--k", type=_positive, help="order for --mode k-alt")
    p.set_defaults(handler=cmd_certify)

    p = sub.add_parser("moments", help="moments of a discrete mixing measure")
    add_input(p, "measure")
    p.add_argument("--n", type=_nonnegative, required=True, help="last moment index")
    p.add_argument("--k", type=_positive, default=1, help="convexity order (default 1)")
    p.set_defaults(handler=cmd_moments)

    p = sub.add_parser("phi", help="evaluate the Laplace exponent")
    add_input(p, "exponent data")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--n", type=_nonnegative, help="emit phi(0..N)")
    which.add_argument("--lam", type=float, help="evaluate at one point")
    p.add_argument(
        "--interp",
        action="store_true",
        help="with --lam: interpolate from integer nodes instead of the formula",
    )
    p.add_argument(
        "--nodes",
        type=_positive,
        default=21,
        help="node count 2+ for --interp (default 21)",
    )
    add_scale(p)
    p.set_defaults(handler=cmd_phi)

    p = sub.add_parser("qmatrix", help="first-part probability rows q(1..N, .)")
    add_input(p, "exponent data")
    p.add_argument("--n", type=_positive, required=True)
    add_scale(p)
    p.set_defaults(handler=cmd_qmatrix)

    p = sub.add_parser("pmf", help="exact composition distribution")
    add_input(p, "exponent data")
    p.add_argument("--n", type=_positive, required=True)
    add_scale(p)
    add_cap(p)
    p.set_defaults(handler=cmd_pmf)

    p = sub.add_parser("sample", help="draw compositions")
    add_input(p, "exponent data")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--count", type=_nonnegative, required=True)
    p.add_argument("--method", choices=["recursive", "paintbox"], required=True)
    p.add_argument("--seed", type=_seed_type, required=True)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument(
        "--chisquare",
        action="store_true",
        help="test the draws against the exact pmf; exit 1 on failure",
    )
    add_scale(p)
    add_cap(p)
    p.set_defaults(handler=cmd_sample)

    p = sub.add_parser(
        "consistency", help="check deletion consistency and regeneration"
    )
    add_input(p, "exponent data")
    p.add_argument("--n", type=_positive, required=True)
    add_scale(p)
    add_cap(p)
    p.set_defaults(handler=cmd_consistency)

    p = sub.add_parser("reconstruct", help="step-CDF reconstruction from moments")
    add_input(p, "sequence")
    p.add_argument("--n", type=_positive, required=True, help="resolution")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(handler=cmd_reconstruct)

    p = sub.add_parser("alloc", help="drop balls into boxes cut at breakpoints")
    add_input(p, "breakpoints (JSON array of rationals)")
    p.add_argument("--n", type=_nonnegative, required=True, help="ball count")
    p.add_argument("--seed", type=_seed_type, required=True)
    p.set_defaults(handler=cmd_alloc)

    p = sub.add_parser("report", help="render figures plus matching CSVs")
    add_input(p, "exponent data")
    p.add_argument("--n", type=_positive, required=True, help="size for the views")
    p.add_argument("--seed", type=_seed_type, required=True)
    p.add_argument("--count", type=_nonnegative, default=20000, help="empirical draws")
    p.add_argument("--outdir", required=True)
    add_scale(p)
    add_cap(p)
    p.set_defaults(handler=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "phi" and args.interp:
        if args.lam is None:
            parser.error("--interp requires --lam")
        if args.nodes < 2:
            parser.error("--interp needs at least 2 nodes")
    try:
        return args.handler(args)
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError, KeyError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

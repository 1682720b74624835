"""Command-line surface: field / gauss / energy / verify / scan / extremal.

Exit codes: 0 success, 1 assertion violation, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys

from . import sweep
from .bounds import SLACK  # noqa: F401  (re-exported for scripts)
from .chars import gauss_sum, max_over_characters
from .energy import additive_energy, multiplicative_energy
from .errors import ConfigError, GaussLabError
from .field import build_field, subfield_degrees
from .groups import nth_power_subgroup
from .nt import divisors
from .sweep import SweepConfig


def _add_common(sp):
    sp.add_argument("--config", metavar="PATH", help="JSON config file")
    sp.add_argument("--seed", type=int, default=None, metavar="U64", help="master seed")
    sp.add_argument("--jobs", type=int, default=None, metavar="N")
    sp.add_argument("--format", dest="fmt", choices=["jsonl", "csv"], default=None)
    sp.add_argument("--q-max", dest="q_max", type=int, default=None, metavar="N")
    sp.add_argument("--q-min", dest="q_min", type=int, default=None, metavar="N")
    sp.add_argument("--m-min", dest="m_min", type=int, default=None, metavar="N")
    sp.add_argument("--trials", type=int, default=None, metavar="N")
    sp.add_argument("--out", default=None, metavar="PATH")


def _config(args) -> SweepConfig:
    cfg = SweepConfig.from_file(args.config) if args.config else SweepConfig()
    cfg = cfg.merged(
        master_seed=args.seed,
        jobs=args.jobs,
        fmt=args.fmt,
        q_max=args.q_max,
        q_min=args.q_min,
        m_min=args.m_min,
        trials=args.trials,
        out=args.out,
        bound_ids=getattr(args, "bounds", None),
    )
    cfg.validate()
    return cfg


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_field(args) -> int:
    ctx = build_field(args.p, args.m)
    mod = " + ".join(
        f"{c}*x^{i}" if i else str(c)
        for i, c in enumerate(ctx.modulus)
        if c
    )
    print(f"p = {ctx.p}")
    print(f"m = {ctx.m}")
    print(f"q = {ctx.q}")
    print(f"modulus = {mod}  (coefficients {list(ctx.modulus)})")
    print(f"generator = {ctx.generator}")
    subs = subfield_degrees(ctx)
    if subs:
        for nu in subs:
            print(f"subfield nu={nu}: size {ctx.p**nu}, elements {ctx.subfield_elements(nu)}")
    else:
        print("subfields: none proper")
    return 0


def cmd_gauss(args) -> int:
    ctx = build_field(args.p, args.m)
    if args.max:
        a_star, mag = max_over_characters(ctx, "gauss", n=args.n)
        print(f"max_a |S_{args.n}(a)| = {mag:.6f} at a = {a_star}")
    else:
        a = args.a if args.a is not None else 1
        s = gauss_sum(ctx, args.n, a)
        print(f"|S_{args.n}({a})| = {s.magnitude():.6f}")
    return 0


def cmd_energy(args) -> int:
    ctx = build_field(args.p, args.m)
    if args.subgroup is not None:
        A = nth_power_subgroup(ctx, args.subgroup).elements
        label = f"H (n={args.subgroup}, order {len(A)})"
    elif args.set:
        A = [int(s) for s in args.set.split(",")]
        label = f"set of size {len(set(A))}"
    else:
        print("energy: need --set or --subgroup", file=sys.stderr)
        return 2
    ea = additive_energy(ctx, A)
    em = multiplicative_energy(ctx, A)
    print(f"{label}: E_+ = {ea.value}, E_x = {em.value}")
    return 0


def cmd_verify(args) -> int:
    cfg = _config(args)
    code, records = sweep.run_verify(cfg)
    failures = [r for r in records if r["verdict"] == "fail"]
    _emit(sweep.render(failures if not args.all else records, cfg.fmt), cfg.out)
    n_pass = sum(1 for r in records if r["verdict"] == "pass")
    print(f"verify: {n_pass} passed, {len(failures)} failed", file=sys.stderr)
    return code


def cmd_scan(args) -> int:
    cfg = _config(args)
    records = sweep.run_scan(cfg)
    _emit(sweep.render(records, cfg.fmt), cfg.out)
    return 0


def cmd_extremal(args) -> int:
    cfg = _config(args)
    records = sweep.run_scan(cfg)
    store = sweep.load_store(args.store)
    sweep.merge_extremal(store, records)
    sweep.save_store(args.store, store)
    print(f"extremal: store {args.store} holds {len(store)} bound ids", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gausslab")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("field", help="build a field and print its summary")
    sp.add_argument("p", type=int)
    sp.add_argument("m", type=int)
    sp.set_defaults(fn=cmd_field)

    sp = sub.add_parser("gauss", help="evaluate a Gauss sum")
    sp.add_argument("p", type=int)
    sp.add_argument("m", type=int)
    sp.add_argument("n", type=int)
    sp.add_argument("--a", type=int, default=None, help="character index (label)")
    sp.add_argument("--max", action="store_true", help="maximize over a != 0")
    sp.set_defaults(fn=cmd_gauss)

    sp = sub.add_parser("energy", help="additive/multiplicative energy of a set")
    sp.add_argument("p", type=int)
    sp.add_argument("m", type=int)
    sp.add_argument("--set", help="comma-separated element labels")
    sp.add_argument("--subgroup", type=int, default=None, help="n for the n-th power group")
    sp.set_defaults(fn=cmd_energy)

    sp = sub.add_parser("verify", help="run all assert-mode checks")
    _add_common(sp)
    sp.add_argument("--all", action="store_true", help="emit passing records too")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("scan", help="run observe-mode sweeps")
    _add_common(sp)
    sp.add_argument("--bounds", type=lambda s: s.split(","), default=None,
                    help=f"comma-separated families from {sweep.SCAN_BOUND_IDS}")
    sp.set_defaults(fn=cmd_scan)

    sp = sub.add_parser("extremal", help="scan and merge maxima into a store")
    _add_common(sp)
    sp.add_argument("--bounds", type=lambda s: s.split(","), default=None)
    sp.add_argument("--store", required=True, metavar="PATH")
    sp.set_defaults(fn=cmd_extremal)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except GaussLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Parameter sweeps: configuration, deterministic per-task seeding, parallel
execution, JSONL/CSV emission, and the extremal-record store.

Output is byte-identical for a fixed (config, master_seed) regardless of the
parallelism degree: tasks are pure, results are sorted by a canonical key
before emission, and records carry no wall-clock data (runtime_ms is null)."""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import bounds, verify
from .bounds import BoundReport
from .errors import ConfigError
from .field import DEFAULT_Q_MAX, build_field, q_max_ceiling
from .groups import nth_power_subgroup
from .nt import divisors, prime_powers_up_to

_M64 = (1 << 64) - 1

SCAN_BOUND_IDS = ["thm1", "thm2", "thm3", "thm4", "thm5", "zhel", "lemma12"]


def splitmix64(x: int) -> int:
    """One step of the splitmix64 mixer (the published per-task seed hash)."""
    x = (x + 0x9E3779B97F4A7C15) & _M64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return (z ^ (z >> 31)) & _M64


def derive_seed(master_seed: int, bound_id: str, params: dict) -> int:
    """Task seed: fold the canonical (bound_id, params) string into the
    master seed byte by byte through splitmix64."""
    key = bound_id + "|" + json.dumps(params, sort_keys=True, separators=(",", ":"))
    h = splitmix64(master_seed & _M64)
    for b in key.encode():
        h = splitmix64(h ^ b)
    return h


@dataclass
class SweepConfig:
    q_min: int = 2
    q_max: int = 256
    m_min: int = 1
    m_max: int | None = None
    p_list: list[int] | None = None
    n_filter: list[int] | None = None  # keep only these divisors, if set
    bound_ids: list[str] | None = None  # scan families; None = all
    trials: int = 10
    master_seed: int = 0
    fmt: str = "jsonl"
    jobs: int = 1
    out: str | None = None
    table_q_max: int | None = None  # FieldCtx size ceiling

    @classmethod
    def from_file(cls, path: str) -> "SweepConfig":
        with open(path) as fh:
            data = json.load(fh)
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def merged(self, **overrides) -> "SweepConfig":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def validate(self):
        if self.fmt not in ("jsonl", "csv"):
            raise ConfigError(f"unknown format {self.fmt!r}")
        ceiling = q_max_ceiling(self.table_q_max)
        if self.q_max > ceiling:
            raise ConfigError(
                f"q_max {self.q_max} exceeds the table ceiling {ceiling}"
            )
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")

    def fields(self) -> list[tuple[int, int]]:
        pm = prime_powers_up_to(self.q_max, min_m=self.m_min)
        out = []
        for p, m in pm:
            q = p**m
            if q < self.q_min:
                continue
            if self.p_list and p not in self.p_list:
                continue
            if self.m_max is not None and m > self.m_max:
                continue
            out.append((p, m))
        return out

    def keep_n(self, n: int) -> bool:
        return self.n_filter is None or n in self.n_filter


# ---------------------------------------------------------------------------
# record serialization


def record_of(rep: BoundReport) -> dict:
    params = dict(rep.params)
    n = params.get("n")
    rec = {
        "bound_id": rep.bound_id,
        "p": rep.p,
        "m": rep.m,
        "q": rep.q,
        "n": n,
        "params": params,
        "lhs": rep.lhs,
        "rhs_shape": rep.rhs_shape,
        "ratio": rep.ratio,
        "mode": rep.mode,
        "verdict": rep.verdict,
        "seed": rep.seed,
        "runtime_ms": None,
    }
    if rep.notes:
        rec["notes"] = _jsonable(rep.notes)
    return rec


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, float) and math.isinf(obj):
        return "inf"
    return obj


def sort_key(rec: dict):
    return (
        rec["q"],
        rec["p"],
        rec["m"],
        rec["bound_id"],
        json.dumps(rec["params"], sort_keys=True),
        rec["seed"] if rec["seed"] is not None else -1,
    )


def to_jsonl(records) -> str:
    return "".join(
        json.dumps(_jsonable(r), sort_keys=True, separators=(",", ":")) + "\n"
        for r in records
    )


_CSV_COLS = ["bound_id", "p", "m", "q", "n", "params", "lhs", "rhs_shape",
             "ratio", "mode", "verdict", "seed", "runtime_ms"]


def to_csv(records) -> str:
    lines = [",".join(_CSV_COLS)]
    for r in records:
        row = []
        for c in _CSV_COLS:
            v = r.get(c)
            if c == "params":
                v = json.dumps(_jsonable(v), sort_keys=True, separators=(",", ":"))
                v = '"' + v.replace('"', '""') + '"'
            elif v is None:
                v = ""
            row.append(str(v))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def render(records, fmt: str) -> str:
    return to_jsonl(records) if fmt == "jsonl" else to_csv(records)


# ---------------------------------------------------------------------------
# scan (observe-mode) tasks


def _scan_field(args) -> list[dict]:
    p, m, cfg_dict = args
    cfg = SweepConfig(**cfg_dict)
    ctx = build_field(p, m, q_max_ceiling(cfg.table_q_max))
    wanted = set(cfg.bound_ids or SCAN_BOUND_IDS)
    reports: list[BoundReport] = []
    q1 = ctx.q - 1
    ns = [n for n in divisors(q1) if cfg.keep_n(n)]
    for n in ns:
        H = nth_power_subgroup(ctx, n)
        if "thm1" in wanted:
            reports.append(bounds.eval_thm1(ctx, H.elements, delta=bounds.DELTA_MAX))
        if "thm2" in wanted:
            reports.extend(bounds.eval_thm2(ctx, n, delta=bounds.DELTA_MAX))
        if "thm5" in wanted:
            reports.extend(bounds.eval_thm5(ctx, n))
        if "zhel" in wanted:
            reports.append(bounds.eval_zhel_energy(ctx, H))
        if "lemma12" in wanted:
            reports.extend(bounds.eval_lemma1_lemma2(ctx, H.elements))
        if "thm3" in wanted and q1 >= 1:
            g = H.generator
            t = H.order
            for K in sorted({(t + 1) // 2, t}):
                if K >= 1:
                    reports.extend(bounds.eval_thm3(ctx, g, K))
    if "thm4" in wanted:
        for i in range(cfg.trials):
            seed = derive_seed(cfg.master_seed, "thm4", {"p": p, "m": m, "trial": i})
            rng = np.random.default_rng(seed)
            hi = min(ctx.q, 24)
            sizes = sorted((int(rng.integers(2, hi + 1)) for _ in range(3)), reverse=True)
            sets = [np.sort(rng.choice(ctx.q, size=s, replace=False)) for s in sizes]
            style = i % 3
            ws = [verify._weights(rng, s, style) for s in sizes]
            for rep in bounds.eval_thm4(ctx, *sets, *ws, seed=seed):
                reports.append(rep)
    return [record_of(r) for r in reports]


def _run_parallel(task_fn, tasks, jobs: int) -> list[dict]:
    if jobs <= 1 or len(tasks) <= 1:
        results = [task_fn(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(task_fn, tasks, chunksize=1))
    records = [rec for chunk in results for rec in chunk]
    records.sort(key=sort_key)
    return records


def run_scan(cfg: SweepConfig) -> list[dict]:
    cfg.validate()
    tasks = [(p, m, cfg.__dict__.copy()) for p, m in cfg.fields()]
    return _run_parallel(_scan_field, tasks, cfg.jobs)


# ---------------------------------------------------------------------------
# verify (assert-mode) tasks


def _verify_field(args) -> list[dict]:
    p, m, cfg_dict = args
    cfg = SweepConfig(**cfg_dict)
    ctx = build_field(p, m, q_max_ceiling(cfg.table_q_max))
    reports: list[BoundReport] = []
    reports.extend(verify.check_identity_eq3(ctx))
    reports.extend(verify.check_weil_all(ctx))
    reports.extend(verify.check_lemma6_all(ctx))
    reports.extend(verify.check_subfield_energy(ctx))
    reports.extend(verify.check_subfield_intersection(ctx))
    reports.extend(verify.check_claim1(ctx))
    rng = np.random.default_rng(derive_seed(cfg.master_seed, "verify", {"p": p, "m": m}))
    reports.append(verify.check_degree_reduction(ctx, rng, trials=max(1, cfg.trials)))
    reports.extend(verify.check_fourth_moment(ctx, rng, subsets=max(1, cfg.trials)))
    reports.extend(verify.check_random_bounds(ctx, rng, trials=max(1, cfg.trials)))
    return [record_of(r) for r in reports]


def run_verify(cfg: SweepConfig) -> tuple[int, list[dict]]:
    """Returns (exit_code, records): 0 clean, 1 on any assertion failure."""
    cfg.validate()
    tasks = [(p, m, cfg.__dict__.copy()) for p, m in cfg.fields()]
    records = _run_parallel(_verify_field, tasks, cfg.jobs)
    rng = np.random.default_rng(derive_seed(cfg.master_seed, "lemma7", {}))
    records.extend(record_of(r) for r in verify.check_dyadic(rng, instances=1000))
    failures = sum(1 for r in records if r["verdict"] == "fail")
    return (1 if failures else 0), records


# ---------------------------------------------------------------------------
# extremal store


def load_store(path: str) -> dict:
    if os.path.exists(path):
        with open(path) as fh:
            return json.load(fh)
    return {}


def merge_extremal(store: dict, records) -> dict:
    """Keep, per bound_id, the maximum observed ratio with its witness.
    Idempotent; maxima never decrease."""
    for rec in records:
        if rec["verdict"] != "recorded":
            continue
        ratio = rec["ratio"]
        if not isinstance(ratio, (int, float)) or not math.isfinite(ratio):
            continue
        cur = store.get(rec["bound_id"])
        if cur is None or ratio > cur["ratio"]:
            store[rec["bound_id"]] = {"ratio": ratio, "witness": rec}
    return store


def save_store(path: str, store: dict):
    with open(path, "w") as fh:
        json.dump(_jsonable(store), fh, sort_keys=True, indent=2)
        fh.write("\n")

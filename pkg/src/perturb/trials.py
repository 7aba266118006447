"""Seeded Monte Carlo containment trials of h in g union G(n, p) over a
p-grid, with Wilson-interval summaries and deterministic CSV/JSON output.

Trial seeds are base_seed + trial_index, shared across grid points: each
trial index then sees nested random graphs as p grows, so success at a
lower p implies success at a higher one for the exact decision method.
"""

from __future__ import annotations

import json

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional

from . import __version__
from .families import (
    FAMILIES,
    build_from_spec,
    parse_generator_spec,
    sample_gnp,
    union_graph,
)
from .fileio import read_graph
from .graphs import Graph
from .reduction import StarSelection, run_reduction
from .spread import exact_spanning_embed, two_phase_embed
from .stats import wilson_interval

__all__ = [
    "TrialConfig",
    "ScanRow",
    "ScanResult",
    "containment_trial",
    "threshold_scan",
    "summarize",
    "resolve_graph",
    "parse_p_grid",
]

EXACT_N_LIMIT = 14  # auto method switches to the heuristic above this


@dataclass(frozen=True)
class TrialConfig:
    h_spec: str
    g_spec: str
    p_grid: tuple
    trials: int
    method: str = "auto"  # auto | exact | two-phase
    base_seed: int = 0
    orient_rule: str = "degeneracy"
    radius: int = 20
    gamma: str = "0.1"
    d: str = "2"
    eps: str = "0.1"
    exact_budget: float = 10.0
    heuristic_budget: float = 2.0
    restarts: int = 20

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("need at least one trial per grid point")
        for p in self.p_grid:
            if not 0 <= p <= 1:
                raise ValueError(f"grid point {p} outside [0, 1]")
        if self.method not in ("auto", "exact", "two-phase"):
            raise ValueError(f"unknown method {self.method!r}")


@dataclass(frozen=True)
class ScanRow:
    p: float
    trials: int
    successes: int
    phat: float
    ci_lo: float
    ci_hi: float
    method: str
    timeouts: int
    seed: int


@dataclass(frozen=True)
class ScanResult:
    config: TrialConfig
    rows: tuple
    version: str = __version__

    def to_csv_text(self) -> str:
        lines = ["p,trials,successes,phat,ci_lo,ci_hi,method,timeouts,seed"]
        for r in self.rows:
            lines.append(
                f"{r.p!r},{r.trials},{r.successes},{r.phat!r},{r.ci_lo!r},"
                f"{r.ci_hi!r},{r.method},{r.timeouts},{r.seed}"
            )
        return "\n".join(lines) + "\n"

    def to_json_text(self) -> str:
        payload = {
            "config": asdict(self.config) | {"p_grid": list(self.config.p_grid)},
            "rows": [asdict(r) for r in self.rows],
            "version": self.version,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def summarize(successes: int, trials: int) -> tuple:
    """(p_hat, Wilson 95% lo, hi)."""
    return wilson_interval(successes, trials, z=1.96)


def resolve_graph(spec: str) -> Graph:
    """Inline family spec (``family:key=val,...``) or an edge-list file path."""
    family = spec.split(":", 1)[0]
    if family in FAMILIES:
        return build_from_spec(parse_generator_spec(spec))
    if os.path.exists(spec):
        return read_graph(spec)
    raise ValueError(f"{spec!r} is neither a known generator spec nor a file")


def parse_p_grid(text: str) -> tuple:
    """Either ``lo:hi:log:k`` for k log-spaced points or a comma list."""
    if ":" in text:
        lo, hi, kind, k = text.split(":")
        lo, hi, k = float(lo), float(hi), int(k)
        if kind != "log":
            raise ValueError(f"unknown grid kind {kind!r}")
        if not 0 < lo <= hi:
            raise ValueError("log grid needs 0 < lo <= hi")
        if k == 1:
            return (lo,)
        ratio = (hi / lo) ** (1 / (k - 1))
        return tuple(lo * ratio**i for i in range(k))
    return tuple(float(x) for x in text.split(","))


def _effective_method(method: str, n: int) -> str:
    if method == "auto":
        return "exact" if n <= EXACT_N_LIMIT else "two-phase"
    return method


def containment_trial(
    h: Graph,
    g: Graph,
    p: float,
    seed: int,
    method: str,
    config: TrialConfig,
    stars: Optional[StarSelection] = None,
) -> str:
    """One trial: sample r = G(n, p), decide or attempt h in g union r.

    Returns "yes"/"no" from the exact decider, "yes"/"not-found" from the
    heuristic, or "timeout".  Deterministic in all arguments.
    """
    if h.n != g.n:
        raise ValueError("h and g must share a vertex count")
    method = _effective_method(method, h.n)
    r = sample_gnp(h.n, p, seed)
    if method == "exact":
        if h.n > 64 and config.method == "exact":
            raise ValueError(f"exact method requested for n={h.n} > 64")
        res = exact_spanning_embed(h, union_graph(g, r), time_budget=config.exact_budget)
        return {"found": "yes", "none": "no", "timeout": "timeout"}[res.status]
    if stars is None:
        raise ValueError("two-phase trials need a star selection")
    res = two_phase_embed(
        h, stars, g, r, config.eps, seed=[seed, 1], restarts=config.restarts
    )
    return {"found": "yes", "not-found": "not-found"}[res.status]


def _prepare_stars(h: Graph, config: TrialConfig) -> StarSelection:
    report = run_reduction(
        h, config.orient_rule, config.radius, config.gamma, config.d,
        seed=config.base_seed,
    )
    if report.error:
        raise RuntimeError(f"star preparation failed: {report.error}")
    return StarSelection(x=report.x, arcs=report.star_arcs)


def threshold_scan(config: TrialConfig) -> ScanResult:
    """Run the whole grid; output is independent of worker count.

    PERTURB_THREADS caps the worker pool (absent means all cores).  Each
    (grid point, trial index) pair is a pure function of the config, so
    results are aggregated by index and the CSV/JSON bytes are reproducible.
    """
    h = resolve_graph(config.h_spec)
    g = resolve_graph(config.g_spec)
    method = _effective_method(config.method, h.n)
    stars = _prepare_stars(h, config) if method == "two-phase" else None

    jobs = [
        (pi, p, i, config.base_seed + i)
        for pi, p in enumerate(config.p_grid)
        for i in range(config.trials)
    ]

    def run(job):
        _, p, _, seed = job
        return containment_trial(h, g, p, seed, method, config, stars)

    workers = os.environ.get("PERTURB_THREADS")
    workers = int(workers) if workers else (os.cpu_count() or 1)
    outcomes = {}
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for job, outcome in zip(jobs, pool.map(run, jobs)):
                outcomes[(job[0], job[2])] = outcome
    else:
        for job in jobs:
            outcomes[(job[0], job[2])] = run(job)

    rows = []
    for pi, p in enumerate(config.p_grid):
        per = [outcomes[(pi, i)] for i in range(config.trials)]
        successes = sum(1 for o in per if o == "yes")
        timeouts = sum(1 for o in per if o == "timeout")
        phat, lo, hi = summarize(successes, config.trials)
        rows.append(
            ScanRow(
                p=p,
                trials=config.trials,
                successes=successes,
                phat=phat,
                ci_lo=lo,
                ci_hi=hi,
                method=method,
                timeouts=timeouts,
                seed=config.base_seed,
            )
        )
    rows.sort(key=lambda r: r.p)
    return ScanResult(config=config, rows=tuple(rows))


def write_scan(result: ScanResult, csv_path, json_path=None) -> None:
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(result.to_csv_text())
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(result.to_json_text())

"""Command-line interface.

Subcommands: gen (graph families), m1 (exact 1-density), cond2 (small-
subgraph density condition), pipeline (star-deletion reduction), expand
(edge-expansion check), spread (vertex-spread estimate), embed (exact or
two-phase containment), scan (Monte Carlo threshold scan).
"""

from __future__ import annotations

import argparse
import json
import sys


from . import __version__, backend
from .density import check_small_density, m1_bruteforce, m1_exact
from .families import build_from_spec, parse_generator_spec
from .fileio import read_graph, write_graph
from .rationals import as_fraction, fraction_str
from .reduction import StarSelection, expansion_check, run_reduction
from .spread import (
    estimate_vertex_spread,
    exact_spanning_embed,
    sample_spread_embedding,
    two_phase_embed,
)
from .trials import TrialConfig, parse_p_grid, resolve_graph, threshold_scan, write_scan


def _emit(payload: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")


def _cmd_gen(args) -> int:
    spec_text = args.family
    parts = [f"n={args.n}"]
    if args.d is not None:
        parts.append(f"d={args.d}")
    if args.r is not None:
        parts.append(f"r={args.r}")
    if args.delta is not None:
        parts.append(f"delta={args.delta}")
    if args.eps is not None:
        parts.append(f"eps={args.eps}")
    if args.p is not None:
        parts.append(f"p={args.p}")
    if args.variant is not None:
        parts.append(f"variant={args.variant}")
    parts.append(f"seed={args.seed}")
    spec = parse_generator_spec(spec_text + ":" + ",".join(parts))
    g = build_from_spec(spec)
    write_graph(g, args.output)
    print(f"wrote {args.output}: n={g.n} m={g.m} family={spec.family}")
    return 0


def _cmd_m1(args) -> int:
    g = read_graph(args.graph)
    result = m1_exact(g)
    payload = {
        "n": g.n,
        "m": g.m,
        "numerator": result.numerator,
        "denominator": result.denominator,
        "value": fraction_str(result.value),
        "witness": list(result.witness),
        "backend": backend.BACKEND,
    }
    if g.n <= args.oracle_max_n:
        oracle = m1_bruteforce(g, max_n=args.oracle_max_n)
        payload["oracle_value"] = fraction_str(oracle.value)
        payload["oracle_agrees"] = oracle.value == result.value
    _emit(payload, args.json)
    return 0


def _cmd_cond2(args) -> int:
    g = read_graph(args.graph)
    report = check_small_density(g, args.d, args.K, budget=args.budget)
    payload = {
        "status": report.status,
        "d": fraction_str(report.d),
        "K": report.K,
        "max_order": report.max_order,
        "sets_checked": report.sets_checked,
    }
    if report.witness:
        vs, m, e = report.witness
        payload["witness"] = {"vertices": list(vs), "order": m, "edges": e}
    _emit(payload, args.json)
    return 0 if report.passed else 1


def _cmd_pipeline(args) -> int:
    g = read_graph(args.graph)
    radius = "auto" if args.K == "auto" else int(args.K)
    report = run_reduction(
        g, args.rule, radius, args.gamma, args.d,
        eps_prime=args.eps_prime, seed=args.seed,
    )
    if args.json:
        print(report.to_json())
    else:
        d = report.to_dict()
        d.pop("x")
        d.pop("star_arcs")
        _emit(d, False)
    return 0 if report.verdict.endswith("pass") else 1


def _cmd_expand(args) -> int:
    g = read_graph(args.graph)
    report = expansion_check(
        g, max_size=args.max_size, bound=args.bound,
        min_size=args.min_size, budget=args.budget,
    )
    payload = {
        "status": report.status,
        "bound": report.bound,
        "sizes": f"{report.min_size}..{report.max_size}",
        "min_boundary": report.min_boundary,
        "witness": list(report.witness) if report.witness else None,
        "sets_checked": report.sets_checked,
        "singleton_min_degree": report.singleton_min,
    }
    _emit(payload, args.json)
    return 0 if report.passed else 1


def _stars_for(h, args) -> StarSelection:
    report = run_reduction(h, args.rule, args.K, args.gamma, args.d, seed=args.seed)
    if report.error:
        raise SystemExit(f"pipeline failed while selecting stars: {report.error}")
    return StarSelection(x=report.x, arcs=report.star_arcs)


def _cmd_spread(args) -> int:
    h = read_graph(args.H)
    g = read_graph(args.G)
    stars = _stars_for(h, args)
    eps = as_fraction(args.eps)

    def sampler(rng):
        return sample_spread_embedding(h, stars, g, eps, rng).phi

    est = estimate_vertex_spread(
        sampler, h.n, g.n, samples=args.samples, seed=args.seed,
    )
    bound = 4 / float(eps * g.n)
    payload = {
        "samples": est.samples,
        "s1_max": est.s1_max,
        "s1_argpair": list(est.s1_argpair),
        "s1_wilson_upper": est.s1_upper,
        "s2_max": est.s2_max,
        "s2_wilson_upper": est.s2_upper,
        "quad_count": est.quad_count,
        "z": est.z,
        "target_q": bound,
        "s1_within_target": est.s1_max <= bound,
        "star_roots": len(stars.x),
        "star_arcs": len(stars.arcs),
    }
    _emit(payload, args.json)
    return 0 if est.s1_max <= bound else 1


def _cmd_embed(args) -> int:
    h = read_graph(args.H)
    host = read_graph(args.host)
    if args.two_phase:
        if not args.base:
            raise SystemExit("--two-phase needs --base (the dense graph)")
        g = read_graph(args.base)
        stars = _stars_for(h, args)
        res = two_phase_embed(
            h, stars, g, host, args.eps, seed=args.seed, restarts=args.restarts,
        )
    else:
        res = exact_spanning_embed(h, host, time_budget=args.budget)
    payload = {"status": res.status}
    if res.embedding:
        payload["phi"] = list(res.embedding.phi)
    if args.two_phase:
        payload["restarts_used"] = res.restarts_used
    _emit(payload, args.json)
    return 0 if res.status == "found" else 1


def _cmd_scan(args) -> int:
    config = TrialConfig(
        h_spec=args.H,
        g_spec=args.G,
        p_grid=parse_p_grid(args.p_grid),
        trials=args.trials,
        method=args.method,
        base_seed=args.seed,
        orient_rule=args.rule,
        radius=args.K,
        gamma=args.gamma,
        d=args.d,
        eps=args.eps,
    )
    result = threshold_scan(config)
    write_scan(result, args.out, args.json_out)
    for row in result.rows:
        print(
            f"p={row.p:.6g} phat={row.phat:.3f} "
            f"[{row.ci_lo:.3f}, {row.ci_hi:.3f}] "
            f"successes={row.successes}/{row.trials} timeouts={row.timeouts}"
        )
    print(f"wrote {args.out}" + (f" and {args.json_out}" if args.json_out else ""))
    return 0


def _add_pipeline_params(sub, with_eps_prime=False):
    sub.add_argument("--rule", choices=("degeneracy", "level"), default="level")
    sub.add_argument("--K", default="20", help="ball radius, or 'auto'")
    sub.add_argument("--gamma", default="0.1", help="hitting-set rate (rational)")
    sub.add_argument("--d", default="2", help="density target (rational)")
    if with_eps_prime:
        sub.add_argument("--eps-prime", default="0", help="density slack (rational)")
    sub.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perturb",
        description="Orientation, density, and containment experiments for "
        "randomly perturbed graphs",
    )
    parser.add_argument("--version", action="version", version=f"perturb {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen", help="generate a graph family to an edge-list file")
    gen.add_argument("family")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--d", type=int)
    gen.add_argument("--r", type=int)
    gen.add_argument("--delta", type=int)
    gen.add_argument("--eps")
    gen.add_argument("--p")
    gen.add_argument("--variant")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--output", required=True)
    gen.set_defaults(func=_cmd_gen)

    m1 = subs.add_parser("m1", help="exact 1-density with witness")
    m1.add_argument("graph")
    m1.add_argument("--oracle-max-n", type=int, default=16)
    m1.add_argument("--json", action="store_true")
    m1.set_defaults(func=_cmd_m1)

    cond2 = subs.add_parser("cond2", help="small-subgraph density condition")
    cond2.add_argument("graph")
    cond2.add_argument("--d", required=True, help="density bound (rational, e.g. 2 or 5/2)")
    cond2.add_argument("--K", type=int, required=True)
    cond2.add_argument("--budget", type=int, default=10**7)
    cond2.add_argument("--json", action="store_true")
    cond2.set_defaults(func=_cmd_cond2)

    pipe = subs.add_parser("pipeline", help="star-deletion reduction report")
    pipe.add_argument("graph")
    _add_pipeline_params(pipe, with_eps_prime=True)
    pipe.add_argument("--json", action="store_true")
    pipe.set_defaults(func=_cmd_pipeline)

    expand = subs.add_parser("expand", help="edge-expansion check over connected sets")
    expand.add_argument("graph")
    expand.add_argument("--max-size", type=int, required=True)
    expand.add_argument("--bound", type=int, required=True)
    expand.add_argument("--min-size", type=int, default=2)
    expand.add_argument("--budget", type=int, default=10**7)
    expand.add_argument("--json", action="store_true")
    expand.set_defaults(func=_cmd_expand)

    spread = subs.add_parser("spread", help="empirical vertex-spread estimate")
    spread.add_argument("--H", required=True, help="graph to embed (edge-list file)")
    spread.add_argument("--G", required=True, help="dense host (edge-list file)")
    spread.add_argument("--eps", required=True)
    spread.add_argument("--samples", type=int, default=10**5)
    _add_pipeline_params(spread)
    spread.add_argument("--json", action="store_true")
    spread.set_defaults(func=_cmd_spread)

    embed = subs.add_parser("embed", help="containment search")
    embed.add_argument("--H", required=True)
    embed.add_argument("--host", required=True)
    mode = embed.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--two-phase", dest="two_phase", action="store_true")
    embed.add_argument("--base", help="dense graph for the two-phase star placement")
    embed.add_argument("--eps", default="0.1")
    embed.add_argument("--budget", type=float, default=10.0)
    embed.add_argument("--restarts", type=int, default=20)
    _add_pipeline_params(embed)
    embed.set_defaults(func=_cmd_embed)
    embed.add_argument("--json", action="store_true")

    scan = subs.add_parser("scan", help="Monte Carlo threshold scan")
    scan.add_argument("--H", required=True, help="generator spec or edge-list file")
    scan.add_argument("--G", required=True, help="generator spec or edge-list file")
    scan.add_argument("--p-grid", required=True, help="lo:hi:log:k or comma list")
    scan.add_argument("--trials", type=int, required=True)
    scan.add_argument("--method", choices=("auto", "exact", "two-phase"), default="auto")
    scan.add_argument("--seed", type=int, default=0)
    scan.add_argument("--out", required=True)
    scan.add_argument("--json", dest="json_out")
    scan.add_argument("--rule", choices=("degeneracy", "level"), default="degeneracy")
    scan.add_argument("--K", type=int, default=20)
    scan.add_argument("--gamma", default="0.1")
    scan.add_argument("--d", default="2")
    scan.add_argument("--eps", default="0.1")
    scan.set_defaults(func=_cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

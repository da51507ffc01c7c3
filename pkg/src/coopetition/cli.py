"""Command-line front end.

Exit status: 0 on success, 1 when a certification or scenario claim fails,
2 on bad input.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence

from . import serialization as ser
from .analysis import feasibility, lp_opt, opt_benchmark, render_report, verify_mediator
from .errors import ClaimFailed, CoopetitionError, ParseError
from .game import Game, build_segments, segment_stats
from .mediators import (
    equilibrium_mediator,
    full_data_sharing,
    full_revelation,
    full_sharing,
    mediator_amazon,
    mediator_m1,
    mediator_m2,
    mediator_m3,
    mediator_no_amazon,
    mediator_nplayer,
    null_mediator,
    transfer_mediator,
)
from .scenarios import PROFILES, SCENARIOS, random_instance, run_scenario
from .strategies import BUDGET_ENV, enumerate_pure_bne, max_welfare_bne

VERBS = ("validate", "segments", "feasible", "mediate", "verify", "opt", "bne", "scenario", "sweep")

BUILDERS = {
    "no_amazon": lambda g, v: mediator_no_amazon(g, v),
    "amazon": lambda g, v: mediator_amazon(g, v),
    "m1": lambda g, v: mediator_m1(g, v),
    "m2": lambda g, v: mediator_m2(g, v),
    "m3": lambda g, v: mediator_m3(g, v),
    "transfer": lambda g, v: transfer_mediator(g, v),
    "nplayer": lambda g, v: mediator_nplayer(g, max_welfare_bne(g)[0]),
    "equilibrium": lambda g, v: equilibrium_mediator(g, max_welfare_bne(g)[0]),
    "full_sharing": lambda g, v: full_sharing(g),
    "full_data_sharing": lambda g, v: full_data_sharing(g),
    "full_revelation": lambda g, v: full_revelation(g),
    "null": lambda g, v: null_mediator(g),
}


class UnknownVerb(CoopetitionError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="coopetition", description="Exact data-sharing mediators for competing sellers.")
    p.add_argument("verb", help="one of: " + ", ".join(VERBS))
    p.add_argument("name", nargs="?", help="scenario name (scenario verb) or profile (sweep verb)")
    p.add_argument("--game", help="game file (JSON)")
    p.add_argument("--mediator", help="mediator label or mediator file (JSON)")
    p.add_argument("--v", help="base values, comma separated rationals, e.g. 31/120,37/120")
    p.add_argument("--eps", help="epsilon for the tightness examples")
    p.add_argument("--n", type=int, default=3, help="players for the nplayer scenario")
    p.add_argument("--amazon", action="store_true", help="intro scenario with an Amazon")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--failures-dir", help="write failing sweep games here")
    p.add_argument("--budget", type=int, help=f"pure-equilibrium enumeration budget (or set {BUDGET_ENV})")
    return p


def _need_game(args) -> Game:
    if not args.game:
        raise ParseError("--game is required")
    return ser.load_game(args.game)


def _values(args, game: Game):
    return ser.rational_list(args.v) if args.v else game.base_values


def _mediator(args, game: Game, v):
    label = args.mediator
    if not label:
        raise ParseError("--mediator is required")
    if label in BUILDERS:
        return BUILDERS[label](game, v)
    if os.path.exists(label):
        with open(label, encoding="utf-8") as fh:
            return ser.mediator_from_dict(ser.loads(fh.read()))
    raise ParseError(f"unknown mediator {label!r}; labels: {', '.join(BUILDERS)}")


def _emit(args, out, data: dict, text: str):
    out.write(ser.dumps(data) if args.format == "json" else text.rstrip("\n") + "\n")


def _cmd_validate(args, out) -> int:
    game = _need_game(args)
    segs = build_segments(game)
    data = {"valid": True, "game": ser.game_to_dict(game), "jointly_complete": segs.jointly_complete}
    text = (
        f"valid: {len(game.types)} types, {len(game.goods)} goods, {game.n} players, "
        f"amazon={str(game.amazon).lower()}, jointly_complete={str(segs.jointly_complete).lower()}"
    )
    _emit(args, out, data, text)
    return 0


def _cmd_segments(args, out) -> int:
    game = _need_game(args)
    stats = segment_stats(build_segments(game), game)
    rows = []
    for k, (seg, st) in enumerate(zip(stats.table.segments, stats.per_segment)):
        rows.append({
            "segment": k,
            "types": sorted(seg, key=list(game.types).index),
            "probability": str(st.probability),
            "top_good": st.top_good,
            "second_good": st.second_good,
            "top_weight": str(st.top_weight),
            "second_weight": str(st.second_weight),
            "class": 1 if st.in_first_class else 2,
        })
    data = {
        "jointly_complete": stats.table.jointly_complete,
        "segments": rows,
        "phi1": str(stats.phi1),
        "phi2": str(stats.phi2),
    }
    lines = [f"{'seg':>3}  {'prob':>8}  {'top':>6} {'w1':>8}  {'second':>6} {'w2':>8}  cls  types"]
    for r in rows:
        lines.append(
            f"{r['segment']:>3}  {r['probability']:>8}  {r['top_good']:>6} {r['top_weight']:>8}  "
            f"{str(r['second_good']):>6} {r['second_weight']:>8}  {r['class']:>3}  {','.join(r['types'])}"
        )
    lines.append(f"phi1 = {stats.phi1}   phi2 = {stats.phi2}   jointly_complete = {str(stats.table.jointly_complete).lower()}")
    _emit(args, out, data, "\n".join(lines))
    return 0


def _cmd_feasible(args, out) -> int:
    game = _need_game(args)
    v = _values(args, game)
    verdict = feasibility(game, v)
    data = {
        "feasible": verdict.feasible,
        "violated": list(verdict.violated),
        "leader": verdict.leader,
        "leader_bound": str(verdict.leader_bound),
    }
    text = f"feasible: {str(verdict.feasible).lower()}\nviolated: {', '.join(verdict.violated) or '-'}\nleader_bound: {verdict.leader_bound}"
    _emit(args, out, data, text)
    return 0 if verdict.feasible else 1


def _cmd_mediate(args, out) -> int:
    game = _need_game(args)
    v = _values(args, game)
    m = _mediator(args, game, v)
    data = ser.mediator_to_dict(m)
    lines = [f"mediator: {m.label}"]
    for key, dist in m.table.items():
        recs = "  ".join(f"({','.join(rec)}):{p}" for rec, p in dist.items())
        lines.append(f"{ser.cell_key(key):>6}  {recs}")
    if m.transfer is not None:
        lines.append(f"transfer: {m.transfer.amount} from {m.transfer.payer + 1} to {m.transfer.payee + 1}")
    _emit(args, out, data, "\n".join(lines))
    return 0


def _cmd_verify(args, out) -> int:
    game = _need_game(args)
    v = _values(args, game)
    m = _mediator(args, game, v)
    report = verify_mediator(game, m, v)
    _emit(args, out, ser.report_to_dict(report), render_report(report))
    return 0 if report.certified else 1


def _cmd_opt(args, out) -> int:
    game = _need_game(args)
    data = {"opt": str(opt_benchmark(game))}
    text = f"opt: {data['opt']}"
    if args.v:
        sol = lp_opt(ser.rational_list(args.v))
        data["lp"] = {"beta_1": str(sol.beta_1), "beta_2": str(sol.beta_2), "beta": str(sol.beta), "value": str(sol.value)}
        text += f"\nlp: beta_1={sol.beta_1} beta_2={sol.beta_2} beta={sol.beta} value={sol.value}"
    _emit(args, out, data, text)
    return 0


def _cmd_bne(args, out) -> int:
    game = _need_game(args)
    found = enumerate_pure_bne(game, args.budget)
    entries = []
    for profile, utils in found:
        entries.append({
            "strategies": [
                {str(c): next(iter(profile.dist(i, c, None))) for c in range(len(game.partitions[i]))}
                for i in range(game.n)
            ],
            "utilities": [str(u) for u in utils],
            "welfare": str(sum(utils)),
        })
    lines = [f"{len(found)} pure BNE"]
    for e in entries:
        acts = " | ".join(",".join(s.values()) for s in e["strategies"])
        lines.append(f"  [{acts}]  u=({', '.join(e['utilities'])})  W={e['welfare']}")
    _emit(args, out, {"count": len(found), "equilibria": entries}, "\n".join(lines))
    return 0


def _cmd_scenario(args, out) -> int:
    if not args.name:
        raise ParseError(f"scenario name required: {', '.join(SCENARIOS)}")
    if args.name not in SCENARIOS:
        raise ParseError(f"unknown scenario {args.name!r}; choose from {', '.join(SCENARIOS)}")
    eps = ser.rational(args.eps) if args.eps else None
    v = ser.rational_list(args.v) if args.v else None
    result = run_scenario(args.name, eps=eps, v=v, n=args.n, amazon=args.amazon)
    data = ser.scenario_to_dict(result)
    lines = [f"scenario: {result.name}"]
    for c in result.claims:
        obs = ", ".join(f"{k}={ser.plain(val)}" for k, val in c.observed.items())
        lines.append(f"  [{'pass' if c.passed else 'FAIL'}] {c.id}: {c.relation}  ({obs})")
    for name, r in result.reports.items():
        lines.append(f"  {name}: ic={str(r.ic.is_equilibrium).lower()} welfare={r.welfare} opt={r.opt} ratio={r.ratio}")
    _emit(args, out, data, "\n".join(lines))
    return 0 if result.passed else 1


def sweep_one(profile: str, seed: int) -> dict:
    """Build the matching mediator for one random instance and certify it."""
    inst = random_instance(seed, profile)
    game, v = inst.game, inst.v
    if profile == "jci_noA":
        m = mediator_no_amazon(game, v)
        ok_welfare = lambda r: r.welfare == 1
    elif profile == "jci_A":
        m = mediator_amazon(game, v)
        ok_welfare = lambda r: r.welfare == min(Fraction(2, 3), 1 - max(v))
    else:
        m = mediator_m3(game, v)
        ok_welfare = lambda r: r.ratio >= Fraction(3, 4)
    r = verify_mediator(game, m, v)
    return {
        "seed": seed,
        "passed": r.certified and ok_welfare(r),
        "welfare": str(r.welfare),
        "ratio": str(r.ratio),
        "game": ser.game_to_dict(game),
    }


def _cmd_sweep(args, out) -> int:
    profile = args.name or "jci_A"
    if profile not in PROFILES:
        raise ParseError(f"unknown profile {profile!r}; choose from {', '.join(PROFILES)}")
    seeds = list(range(args.seed, args.seed + args.count))
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(sweep_one, [profile] * len(seeds), seeds))
    else:
        results = [sweep_one(profile, s) for s in seeds]
    failures = [r for r in results if not r["passed"]]
    if failures and args.failures_dir:
        os.makedirs(args.failures_dir, exist_ok=True)
        for r in failures:
            path = os.path.join(args.failures_dir, f"{profile}-{r['seed']}.json")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(ser.dumps(r["game"]))
    data = {
        "profile": profile,
        "count": len(results),
        "passed": len(results) - len(failures),
        "failed_seeds": [r["seed"] for r in failures],
    }
    text = f"profile {profile}: {data['passed']}/{data['count']} passed" + (
        f"; failed seeds {data['failed_seeds']}" if failures else ""
    )
    _emit(args, out, data, text)
    return 0 if not failures else 1


COMMANDS = {
    "validate": _cmd_validate,
    "segments": _cmd_segments,
    "feasible": _cmd_feasible,
    "mediate": _cmd_mediate,
    "verify": _cmd_verify,
    "opt": _cmd_opt,
    "bne": _cmd_bne,
    "scenario": _cmd_scenario,
    "sweep": _cmd_sweep,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.verb not in COMMANDS:
            raise UnknownVerb(f"unknown verb {args.verb!r}; choose from {', '.join(VERBS)}")
        return COMMANDS[args.verb](args, out)
    except ClaimFailed as exc:
        err.write(f"claim failed: {exc}\n")
        return 1
    except (CoopetitionError, ValueError) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())

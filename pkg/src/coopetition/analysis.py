"""Certification of mediators: incentives, rationality, welfare and benchmarks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import InfeasibleBaseValues, NoPureBne, PreconditionViolated
from .feasibility import (  # noqa: F401  (re-exported)
    FeasibilityVerdict,
    LpSolution,
    feasibility,
    fractions,
    leader,
    lp_matrices,
    lp_opt,
    solve_exact,
    vertex_maximize,
)
from .game import (
    ONE,
    ZERO,
    Game,
    build_segments,
    conditional_weights,
    expected_utilities,
    outcome_events,
)
from .mediators import (
    MediatorSpec,
    full_data_sharing,
    full_revelation,
    induced_game,
    mediator_amazon,
    mediator_nplayer,
    segment_candidates,
    segment_payoffs,
)
from .strategies import BneVerdict, _argmax, check_bne, enumerate_pure_bne


def opt_benchmark(game: Game) -> Fraction:
    """Best total welfare of the regular players over all action profiles per segment.

    Welfare is linear in the per-cell recommendation distribution, so a
    deterministic choice per segment is enough.  Goods nobody in the segment
    wants are interchangeable; one representative is kept.
    """
    total = ZERO
    segs = build_segments(game)
    for seg in segs.segments:
        mass = game.prob(seg)
        if mass == 0:
            continue
        weights = conditional_weights(game, seg)
        best = max(
            sum(segment_payoffs(game, weights, actions))
            for actions in itertools.product(segment_candidates(game, weights), repeat=game.n)
        )
        total += mass * best
    return total


def fully_revealing_to(game: Game, mediator: MediatorSpec) -> tuple[int, ...]:
    """Players whose recommendation is the wanted good with probability one."""
    told = [True] * game.n
    for ev in outcome_events(game, mediator):
        right = game.desired[ev.type]
        for k in range(game.n):
            if ev.messages[k] != right:
                told[k] = False
    return tuple(k for k in range(game.n) if told[k])


@dataclass(frozen=True)
class VerificationReport:
    label: str
    ic: BneVerdict
    utilities: tuple[Fraction, ...]  # after transfers
    ir_slacks: tuple[Fraction, ...]
    welfare: Fraction
    opt: Fraction
    ratio: Fraction
    fully_revealing_to: tuple[int, ...]

    @property
    def individually_rational(self) -> bool:
        return all(s >= 0 for s in self.ir_slacks)

    @property
    def certified(self) -> bool:
        return self.ic.is_equilibrium and self.individually_rational


def verify_mediator(game: Game, mediator: MediatorSpec, v: Optional[Sequence] = None) -> VerificationReport:
    v = game.base_values if v is None else fractions(v)
    mediated = induced_game(game, mediator)
    ic = check_bne(game, mediated.obedient, mediator)
    raw = expected_utilities(game, mediated.obedient, mediator)
    utilities = tuple(u + mediator.transfer_to(k) for k, u in enumerate(raw))
    welfare = sum(utilities, ZERO)
    opt = opt_benchmark(game)
    ratio = welfare / opt if opt else ONE
    return VerificationReport(
        label=mediator.label,
        ic=ic,
        utilities=utilities,
        ir_slacks=tuple(u - x for u, x in zip(utilities, v)),
        welfare=welfare,
        opt=opt,
        ratio=ratio,
        fully_revealing_to=fully_revealing_to(game, mediator),
    )


# ---------------------------------------------------------------------------
# Strict benefit from mediation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StrictBenefit:
    beneficial: bool
    baseline: Fraction  # welfare of the benchmark equilibrium
    witness: Optional[MediatorSpec]
    report: Optional[VerificationReport]


def _candidates(game: Game, profile, v) -> list[Callable[[], MediatorSpec]]:
    out = []
    jci = build_segments(game).jointly_complete
    if jci and not game.amazon:
        out.append(lambda: mediator_nplayer(game, profile))
    if jci and game.amazon and game.n == 2:
        out.append(lambda: mediator_amazon(game, v))
    if jci:
        out.append(lambda: full_revelation(game))
    out.append(lambda: full_data_sharing(game))
    return out


def _best_witness(game: Game, profile, v):
    best = None
    for build in _candidates(game, profile, v):
        try:
            mediator = build()
        except (InfeasibleBaseValues, PreconditionViolated):
            continue
        report = verify_mediator(game, mediator, v)
        if report.certified and (best is None or report.welfare > best[1].welfare):
            best = (mediator, report)
    return best


def strict_benefit(game: Game, budget: Optional[int] = None) -> StrictBenefit:
    """Can some IR, IC mediator beat equilibrium play strictly?

    Without an Amazon the benchmark is the welfare-maximal pure equilibrium.
    With an Amazon every pure equilibrium must be beaten, each against its
    own utilities as base values; the witness reported is the one for the
    welfare-maximal equilibrium.
    """
    found = enumerate_pure_bne(game, budget)
    if not found:
        raise NoPureBne("the unmediated game has no pure-strategy BNE")
    benchmarks = found if game.amazon else found[:1]
    top_witness = None
    for k, (profile, utils) in enumerate(benchmarks):
        baseline = sum(utils, ZERO)
        best = _best_witness(game, profile, utils)
        if best is None or best[1].welfare <= baseline:
            return StrictBenefit(False, sum(found[0][1], ZERO), None, None)
        if k == 0:
            top_witness = best
    return StrictBenefit(True, sum(found[0][1], ZERO), top_witness[0], top_witness[1])


# ---------------------------------------------------------------------------
# The "informed opponent" hypothetical
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LemmaCheck:
    informed: int
    hypothetical: tuple[Fraction, Fraction]  # (informed, other) utilities
    obedient: tuple[Fraction, Fraction]
    other_worse_off: bool
    total_higher: bool

    @property
    def other_slack(self) -> Fraction:
        return self.obedient[1] - self.hypothetical[1]

    @property
    def total_slack(self) -> Fraction:
        return sum(self.hypothetical) - sum(self.obedient)


def _hypothetical(game: Game, mediator: MediatorSpec, informed: int):
    """Utilities when ``informed`` always offers the right good and the other
    best-responds to that using their cell and their own recommendation."""
    j = 1 - informed
    base = 2 if game.amazon else 1
    events = list(outcome_events(game, mediator))
    values: dict = {}
    for ev in events:
        info = (game.cell_of(j, ev.type), ev.messages[j])
        row = values.setdefault(info, {})
        g = game.desired[ev.type]
        row[g] = row.get(g, ZERO) + ev.probability / (base + 1)
    choice = {info: _argmax(game, row) for info, row in values.items()}
    u_i = u_j = ZERO
    for ev in events:
        right = choice[(game.cell_of(j, ev.type), ev.messages[j])] == game.desired[ev.type]
        u_i += ev.probability / (base + right)
        if right:
            u_j += ev.probability / (base + 1)
    return u_i, u_j


def lemma_checks(game: Game, mediator: MediatorSpec) -> tuple[LemmaCheck, ...]:
    """Compare obedient play with the informed-opponent hypothetical, for each
    choice of informed player."""
    if game.n != 2:
        raise PreconditionViolated("stated for two regular players")
    if not build_segments(game).jointly_complete:
        raise PreconditionViolated("needs jointly complete information")
    obedient = expected_utilities(game, induced_game(game, mediator).obedient, mediator)
    out = []
    for i in range(2):
        u_i, u_j = _hypothetical(game, mediator, i)
        ob = (obedient[i], obedient[1 - i])
        out.append(LemmaCheck(i, (u_i, u_j), ob, u_j <= ob[1], u_i + u_j >= sum(ob)))
    return tuple(out)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def render_report(report: VerificationReport) -> str:
    rows = [
        ("mediator", report.label or "-"),
        ("ic", str(report.ic.is_equilibrium).lower()),
        ("max_gain", str(report.ic.max_gain)),
        ("worst_deviator", "-" if report.ic.worst_deviator is None else str(report.ic.worst_deviator + 1)),
        ("utilities", ", ".join(map(str, report.utilities))),
        ("ir_slacks", ", ".join(map(str, report.ir_slacks))),
        ("ir", str(report.individually_rational).lower()),
        ("welfare", str(report.welfare)),
        ("opt", str(report.opt)),
        ("ratio", str(report.ratio)),
        ("fully_revealing_to", ", ".join(str(k + 1) for k in report.fully_revealing_to) or "-"),
    ]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {val}" for k, val in rows)

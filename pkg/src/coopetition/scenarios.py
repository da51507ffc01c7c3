"""Worked examples, constructed settings and seeded random instances."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .analysis import VerificationReport, opt_benchmark, verify_mediator
from .errors import RegimeViolated
from .feasibility import HALF, THIRD, feasibility, fractions
from .game import (
    ONE,
    ZERO,
    Game,
    StrategyProfile,
    build_segments,
    conditional_weights,
    expected_utilities,
    make_game,
    segment_stats,
)
from .mediators import (
    MediatorSpec,
    equilibrium_mediator,
    full_data_sharing,
    full_revelation,
    full_sharing,
    m3_conditions,
    mediator_amazon,
    mediator_m2,
    reveal_on_failure,
    segment_candidates,
    segment_payoffs,
)
from .strategies import Variant, check_bne, max_welfare_bne, naive_best_response

F = Fraction


@dataclass(frozen=True)
class Claim:
    id: str
    relation: str
    observed: Mapping[str, object]
    passed: bool


@dataclass(frozen=True)
class ScenarioResult:
    name: str
    games: Mapping[str, Game]
    mediators: Mapping[str, MediatorSpec]
    reports: Mapping[str, VerificationReport]
    claims: tuple[Claim, ...]

    @property
    def game(self) -> Game:
        return next(iter(self.games.values()))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def claim(self, claim_id: str) -> Claim:
        return next(c for c in self.claims if c.id == claim_id)


def _claim(claims: list, claim_id: str, relation: str, passed: bool, **observed):
    claims.append(Claim(claim_id, relation, observed, bool(passed)))


# ---------------------------------------------------------------------------
# Two bits, two goods
# ---------------------------------------------------------------------------


def intro_game(a, b, c, d, amazon: bool = False) -> Game:
    """Row player sees the first bit, column player the second; equal bits want g0."""
    prior = dict(zip(("00", "01", "10", "11"), fractions((a, b, c, d))))
    return make_game(
        types=("00", "01", "10", "11"),
        goods=("g0", "g1"),
        desired={"00": "g0", "01": "g1", "10": "g1", "11": "g0"},
        prior=prior,
        partitions=([{"00", "01"}, {"10", "11"}], [{"00", "10"}, {"01", "11"}]),
        amazon=amazon,
    )


def bit_profile(game: Game) -> StrategyProfile:
    """Offer g0 on a 0 bit and g1 on a 1 bit (dominant in the intro regime)."""
    return StrategyProfile.pure([{0: "g0", 1: "g1"}, {0: "g0", 1: "g1"}])


def intro_example(a, b, c, d, amazon: bool = False, enforce_regime: bool = True) -> ScenarioResult:
    a, b, c, d = fractions((a, b, c, d))
    if a + b + c + d != 1:
        raise RegimeViolated("the four type probabilities must sum to 1")
    if enforce_regime and not (a > 2 * b >= 2 * c > 4 * d):
        raise RegimeViolated("need a > 2b >= 2c > 4d for dominant bit strategies")
    game = intro_game(a, b, c, d, amazon)
    profile = bit_profile(game)
    v = expected_utilities(game, profile)
    game = game.with_base_values(v)
    k = 3 if amazon else 2
    claims: list[Claim] = []

    expected = (a / k + c / (k - 1), a / k + b / (k - 1))
    _claim(claims, "equilibrium_payoffs", "u == (a/k + c/(k-1), a/k + b/(k-1))", v == expected,
           utilities=v, formula=expected)
    _claim(claims, "bit_profile_is_bne", "max_gain == 0", check_bne(game, profile).is_equilibrium)

    mediators = {
        "reveal_on_failure": reveal_on_failure(game, profile),
        "full_sharing": full_sharing(game),
    }
    if amazon and feasibility(game, v).feasible:
        mediators["amazon"] = mediator_amazon(game, v)
    reports = {name: verify_mediator(game, m, v) for name, m in mediators.items()}

    gain = d / k
    rof = reports["reveal_on_failure"]
    _claim(claims, "reveal_gain", "u_i(reveal) - u_i(eq) == d/k for both",
           rof.ic.is_equilibrium and all(s == gain for s in rof.ir_slacks),
           slacks=rof.ir_slacks, expected=gain)

    fs = reports["full_sharing"]
    _claim(claims, "full_sharing_payoffs", "u == (1/k, 1/k)", fs.utilities == (ONE / k, ONE / k),
           utilities=fs.utilities)
    if not amazon:
        harmed = a / 2 + b > HALF
        _claim(claims, "full_sharing_column_ir", "column slack < 0 iff a/2 + b > 1/2",
               (fs.ir_slacks[1] < 0) == harmed, column_slack=fs.ir_slacks[1], a_half_plus_b=a / 2 + b)
    elif b == c:
        _claim(claims, "full_sharing_optimal", "ratio == 1 and IR when b == c",
               fs.ratio == 1 and fs.certified, ratio=fs.ratio, opt=fs.opt)
    if "amazon" in reports:
        r = reports["amazon"]
        _claim(claims, "amazon_mediator_certified", "ic and IR", r.certified, welfare=r.welfare)
    return ScenarioResult("intro_example", {"intro": game}, mediators, reports, tuple(claims))


# ---------------------------------------------------------------------------
# Tightness examples
# ---------------------------------------------------------------------------


def _segmented_game(segments, partitions, amazon=True, segment_probs=None) -> Game:
    """Game whose types are (segment, good) pairs.

    ``segments`` maps a segment name to ``{good: weight}``; ``partitions``
    lists, per player, groups of segment names.
    """
    names = list(segments)
    probs = segment_probs or {s: F(1, len(names)) for s in names}
    types, desired, prior, goods = [], {}, {}, []
    for s in names:
        total = sum(fractions(segments[s].values()), ZERO)
        for g, wgt in segments[s].items():
            t = f"{s}:{g}"
            types.append(t)
            desired[t] = g
            prior[t] = probs[s] * F(wgt) / total
            if g not in goods:
                goods.append(g)
    parts = [
        [{f"{s}:{g}" for s in group for g in segments[s]} for group in player]
        for player in partitions
    ]
    return make_game(types, goods, desired, prior, parts, amazon)


def _pair_tables(game: Game, goods: Sequence[str], segments: int):
    """All pure action pairs per segment, as mediator tables."""
    keys = build_segments(game).joint_cells
    pairs = list(itertools.product(goods, repeat=2))
    for choice in itertools.product(pairs, repeat=segments):
        yield MediatorSpec({k: {rec: ONE} for k, rec in zip(keys, choice)}, "pure_table")


def _capped_ir_welfare(game: Game, v1: Fraction) -> Fraction:
    """Best welfare over mediators giving player 1 at least ``v1`` when ``v1``
    is the largest utility player 1 can attain.

    Player 1 can then only be offered pairs that give them the per-segment
    maximum, so the search is segment by segment over those pairs.
    """
    segs = build_segments(game)
    cap = ZERO
    welfare = ZERO
    for seg in segs.segments:
        weights = conditional_weights(game, seg)
        goods = segment_candidates(game, weights)
        pay = {a: segment_payoffs(game, weights, a) for a in itertools.product(goods, repeat=2)}
        top = max(p[0] for p in pay.values())
        cap += game.prob(seg) * top
        welfare += game.prob(seg) * max(sum(p) for p in pay.values() if p[0] == top)
    if cap != v1:
        raise RegimeViolated("the cap argument needs v1 equal to player 1's best utility")
    return welfare


def example_ir(eps) -> ScenarioResult:
    eps = fractions((eps,))[0]
    if not 0 < eps < 1:
        raise RegimeViolated("eps must lie in (0, 1)")
    count = math.ceil(1 / eps) + 1
    segments = {f"S{k}": {f"top{k}": ONE, "common": eps} for k in range(count)}
    names = list(segments)
    game = _segmented_game(segments, [[[s] for s in names], [names]])
    stats = segment_stats(build_segments(game), game)
    v = (stats.phi1 / 2, ZERO)
    game = game.with_base_values(v)
    m2 = mediator_m2(game, v)
    report = verify_mediator(game, m2, v)
    opt = opt_benchmark(game)
    best_ir = _capped_ir_welfare(game, v[0])
    target = (1 + eps) * F(3, 4)
    claims: list[Claim] = []
    _claim(claims, "opt", "OPT == 2/3 * phi1", opt == F(2, 3) * stats.phi1, opt=opt, phi1=stats.phi1)
    _claim(claims, "best_ir_ratio", "best IR welfare / OPT == (1+eps) * 3/4", best_ir / opt == target,
           ratio=best_ir / opt, expected=target)
    _claim(claims, "m2_attains", "m2 certified and ratio == (1+eps) * 3/4",
           report.certified and report.ratio == target, ratio=report.ratio, welfare=report.welfare)
    return ScenarioResult("example_ir", {"example_ir": game}, {"m2": m2}, {"m2": report}, tuple(claims))


def example_ic(eps, segments: int = 2) -> ScenarioResult:
    eps = fractions((eps,))[0]
    if eps <= 0:
        raise RegimeViolated("eps must be positive")
    weights = {f"S{k}": {f"a{k}": F(3, 2) + eps, f"b{k}": ONE} for k in range(segments)}
    names = list(weights)
    game = _segmented_game(weights, [[[s] for s in names], [[s] for s in names]])
    opt = opt_benchmark(game)
    obey = _obey(game)
    best = None
    for m in _pair_tables(game, game.goods, segments):
        if not check_bne(game, obey, m).is_equilibrium:
            continue
        w = sum(expected_utilities(game, obey, m), ZERO)
        if best is None or w > best:
            best = w
    target = (2 + F(4, 3) * eps) / (F(5, 2) + eps)
    stats = segment_stats(build_segments(game), game)
    claims: list[Claim] = []
    _claim(claims, "opt_separates", "OPT == (phi1 + phi2)/2", opt == (stats.phi1 + stats.phi2) / 2, opt=opt)
    _claim(claims, "best_ic_ratio", "best IC welfare / OPT == (2 + 4eps/3)/(5/2 + eps)",
           best / opt == target, ratio=best / opt, expected=target)
    return ScenarioResult("example_ic", {"example_ic": game}, {}, {}, tuple(claims))


def _obey(game: Game) -> StrategyProfile:
    return StrategyProfile(
        tuple({(c, g): {g: ONE} for c in range(len(game.partitions[k])) for g in game.goods}
              for k in range(game.n))
    )


# ---------------------------------------------------------------------------
# Sharing with and without an Amazon
# ---------------------------------------------------------------------------

AMAZON_FAVOURS_LOW = F(1, 5)  # Pr[g1 | mixed segment]; needs Pr[g2] > 3 Pr[g1] > 0
PHI_MIDPOINTS = (F(119, 240), F(68, 240), F(53, 240))


def _mirror(segments, partitions):
    """Two disjoint copies with the players' information swapped in the copy."""
    copy = {s + "~": {g + "~": w for g, w in goods.items()} for s, goods in segments.items()}
    both = {**segments, **copy}
    p1, p2 = partitions
    flip = lambda player: [[s + "~" for s in group] for group in player]
    probs = {s: F(1, 2 * len(segments)) for s in both}
    return both, [p1 + flip(p2), p2 + flip(p1)], probs


def _more_sharing_with_amazon(low):
    if not (0 < 3 * low < 1 - low):
        raise RegimeViolated("need Pr[g2|S2] > 3 Pr[g1|S2] > 0")
    segments = {"S1": {"g1": ONE}, "S2": {"g1": low, "g2": 1 - low}}
    return segments, [[["S1"], ["S2"]], [["S1", "S2"]]]


def _more_sharing_without_amazon(phis):
    p1, p2, p3 = phis
    if not (F(3, 2) * p2 < p1 < 2 * p2 and p2 > p3 > p1 / 3 and p1 + p2 + p3 == 1):
        raise RegimeViolated(f"weights {phis} outside the required region")
    segments = {"S1": {"g1": ONE}, "S2": {"g3": ONE}, "S3": {"g1": p1, "g2": p2, "g3": p3}}
    return segments, [[["S1"], ["S2", "S3"]], [["S2"], ["S1", "S3"]]]


def _mirrored_roles(game: Game, mediator: MediatorSpec) -> MediatorSpec:
    """Swap the two players' recommendations on the mirrored copy's segments."""
    segs = build_segments(game)
    table = {}
    for key, seg in zip(segs.joint_cells, segs.segments):
        flip = all(t.endswith("~") for t in seg)
        table[key] = {(rec[::-1] if flip else rec): p for rec, p in mediator.table[key].items()}
    return MediatorSpec(table, mediator.label)


def best_pure_ic_welfare(game: Game) -> Fraction:
    """Largest welfare of a deterministic per-segment recommendation table that is IC."""
    obey = _obey(game)
    best = None
    count = len(build_segments(game).segments)
    for m in _pair_tables(game, game.goods, count):
        if check_bne(game, obey, m).is_equilibrium:
            w = sum(expected_utilities(game, obey, m), ZERO)
            best = w if best is None else max(best, w)
    return best


def _compare(game: Game, tag: str, mediators: dict, reports: dict, mirrored: bool):
    profile, utils = max_welfare_bne(game)
    none = equilibrium_mediator(game, profile, "no_sharing")
    full = full_data_sharing(game)
    if mirrored:
        full = _mirrored_roles(game, full)
    mediators[f"{tag}/none"], mediators[f"{tag}/full"] = none, full
    reports[f"{tag}/none"] = rn = verify_mediator(game, none, utils)
    reports[f"{tag}/full"] = rf = verify_mediator(game, full, utils)
    return rn, rf


def sharing_comparison(which: str = "with_amazon", parameter=None) -> ScenarioResult:
    """Settings where an outside competitor reverses which of no sharing and
    full sharing is better, with a mirrored copy to make sharing IR."""
    if which == "with_amazon":
        base, parts = _more_sharing_with_amazon(F(parameter) if parameter is not None else AMAZON_FAVOURS_LOW)
        better = {True: "full", False: "none"}
    elif which == "without_amazon":
        phis = tuple(fractions(parameter)) if parameter is not None else PHI_MIDPOINTS
        base, parts = _more_sharing_without_amazon(phis)
        better = {True: "none", False: "full"}
    else:
        raise ValueError(f"unknown comparison {which!r}")

    games, mediators, reports = {}, {}, {}
    claims: list[Claim] = []
    mirrored, mparts, mprobs = _mirror(base, parts)
    for variant, (segs, prt, probs) in (("base", (base, parts, None)), ("mirrored", (mirrored, mparts, mprobs))):
        for amazon in (True, False):
            tag = f"{variant}/{'amazon' if amazon else 'no_amazon'}"
            game = _segmented_game(segs, prt, amazon, probs)
            games[tag] = game
            rn, rf = _compare(game, tag, mediators, reports, variant == "mirrored")
            win, lose = (rf, rn) if better[amazon] == "full" else (rn, rf)
            # no sharing with an Amazon is only optimal among IC outcomes
            ic_only = which == "without_amazon" and amazon
            _claim(claims, f"{tag}/ordering", f"W({better[amazon]}) > W(other)",
                   win.welfare > lose.welfare,
                   winner=better[amazon], w_full=rf.welfare, w_none=rn.welfare)
            if not ic_only:
                _claim(claims, f"{tag}/optimal", f"W({better[amazon]}) == OPT", win.welfare == win.opt,
                       welfare=win.welfare, opt=win.opt)
            elif variant == "base":
                best_ic = best_pure_ic_welfare(game)
                _claim(claims, f"{tag}/ic_optimal", "W(none) == best IC pure table < OPT",
                       win.welfare == best_ic < win.opt, welfare=win.welfare, best_ic=best_ic, opt=win.opt)
            if variant == "mirrored":
                _claim(claims, f"{tag}/symmetric", "equal utilities under both",
                       rn.utilities[0] == rn.utilities[1] and rf.utilities[0] == rf.utilities[1],
                       none=rn.utilities, full=rf.utilities)
                if better[amazon] == "full":
                    _claim(claims, f"{tag}/full_ir", "full sharing certified against no-sharing payoffs",
                           rf.certified, slacks=rf.ir_slacks)
    if which == "without_amazon":
        p1, p2, p3 = phis
        _claim(claims, "formula/no_amazon", "W(full) == (2+p1+p2)/3, W(none) == (2+p1+p3)/3",
               reports["base/no_amazon/full"].welfare == (2 + p1 + p2) / 3
               and reports["base/no_amazon/none"].welfare == (2 + p1 + p3) / 3,
               w_full=reports["base/no_amazon/full"].welfare, w_none=reports["base/no_amazon/none"].welfare)
        _claim(claims, "formula/amazon", "S3 welfare: pooling 2p1/3 < (p1+p3)/2 under no sharing",
               reports["base/amazon/full"].welfare == F(4, 9) + F(2, 9) * p1
               and reports["base/amazon/none"].welfare == F(4, 9) + (p1 + p3) / 6,
               w_full=reports["base/amazon/full"].welfare, w_none=reports["base/amazon/none"].welfare)
    return ScenarioResult(f"sharing_comparison:{which}", games, mediators, reports, tuple(claims))


# ---------------------------------------------------------------------------
# Many players
# ---------------------------------------------------------------------------


def parity_game(n: int, amazon: bool = True) -> Game:
    """n players each see one bit; the wanted good is the parity of all bits."""
    types = ["".join(bits) for bits in itertools.product("01", repeat=n)]
    desired = {t: f"g{t.count('1') % 2}" for t in types}
    parts = [
        [{t for t in types if t[k] == b} for b in "01"] for k in range(n)
    ]
    return make_game(types, ("g0", "g1"), desired, {t: F(1, len(types)) for t in types}, parts, amazon)


def nplayer_claim(n: int = 3, v: Optional[Sequence] = None, game: Optional[Game] = None) -> ScenarioResult:
    game = game or parity_game(n)
    n = game.n
    share = F(1, n + 1)
    v = fractions(v) if v is not None else (share,) * n
    mediator = full_revelation(game)
    report = verify_mediator(game, mediator, v)
    claims: list[Claim] = []
    _claim(claims, "certified_iff", "certified == (max v <= 1/(n+1))",
           report.certified == (max(v) <= share), certified=report.certified, max_v=max(v), bound=share)
    _claim(claims, "optimal", "W == OPT == n/(n+1)", report.welfare == report.opt == F(n, n + 1),
           welfare=report.welfare, opt=report.opt)
    if n == 2 and max(v) <= THIRD and feasibility(game, v).feasible:
        same = mediator_amazon(game, v).table == mediator.table
        _claim(claims, "two_player_reduction", "table == amazon mediator's table", same)
    return ScenarioResult("nplayer_claim", {"nplayer": game}, {"full_revelation": mediator},
                          {"full_revelation": report}, tuple(claims))


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------

PROFILES = ("jci_noA", "jci_A", "nojci_S1", "nojci_S2", "nojci_mixed")


@dataclass(frozen=True)
class Instance:
    game: Game
    v: tuple[Fraction, ...]
    profile: str
    seed: int


def _weights(rng: random.Random, keys) -> dict:
    raw = {k: rng.randint(1, 9) for k in keys}
    total = sum(raw.values())
    return {k: F(x, total) for k, x in raw.items()}


def _grid_jci(rng: random.Random, amazon: bool) -> Game:
    rows, cols = rng.randint(2, 3), rng.randint(2, 3)
    goods = [f"g{k}" for k in range(rng.randint(2, 3))]
    types = [f"r{r}c{c}" for r in range(rows) for c in range(cols)]
    desired = {t: rng.choice(goods) for t in types}
    parts = (
        [{f"r{r}c{c}" for c in range(cols)} for r in range(rows)],
        [{f"r{r}c{c}" for r in range(rows)} for c in range(cols)],
    )
    return make_game(types, goods, desired, _weights(rng, types), parts, amazon)


def _segment_weights(rng: random.Random, first_class: bool) -> list[int]:
    if first_class:
        second = rng.randint(2, 8)
        top = rng.randint(second, 3 * second // 2)
    else:
        second = rng.randint(1, 4)
        top = rng.randint(3 * second // 2 + 1, 5 * second)
    out = [top, second]
    if rng.random() < 0.5:
        out.append(rng.randint(1, second))
    return out


def _grid_segmented(rng: random.Random, classes: str) -> Game:
    rows, cols = rng.randint(1, 3), rng.randint(1, 3)
    while rows * cols < 2 and classes == "mixed":
        rows, cols = rng.randint(1, 3), rng.randint(1, 3)
    goods = [f"g{k}" for k in range(4)]
    cells = [(r, c) for r in range(rows) for c in range(cols)]
    if classes == "mixed":
        kinds = [rng.random() < 0.5 for _ in cells]
        kinds[0], kinds[1] = True, False
        rng.shuffle(kinds)
    else:
        kinds = [classes == "S1"] * len(cells)
    mass = {cell: rng.randint(1, 5) for cell in cells}
    total = sum(mass.values())
    types, desired, prior = [], {}, {}
    for cell, first in zip(cells, kinds):
        ws = _segment_weights(rng, first)
        chosen = rng.sample(goods, len(ws))
        rng.shuffle(ws)
        for g, w in zip(chosen, ws):
            t = f"r{cell[0]}c{cell[1]}{g}"
            types.append(t)
            desired[t] = g
            prior[t] = F(mass[cell], total) * F(w, sum(ws))
    parts = (
        [{t for t in types if t.startswith(f"r{r}c")} for r in range(rows)],
        [{t for t in types if f"c{c}g" in t} for c in range(cols)],
    )
    return make_game(types, goods, desired, prior, parts, amazon=True)


def _fraction_of(rng: random.Random, x: Fraction) -> Fraction:
    return x * F(rng.randint(0, 24), 24)


def _jci_values(rng: random.Random, game: Game) -> tuple[Fraction, ...]:
    while True:
        i = rng.randrange(2)
        bound = naive_best_response(game, i, Variant.JCI).alpha_i
        vi = _fraction_of(rng, bound)
        cap = min(vi, 1 - 2 * vi) if game.amazon else min(vi, 1 - vi)
        if cap < 0:
            continue
        v = [ZERO, ZERO]
        v[i], v[1 - i] = vi, _fraction_of(rng, cap)
        if feasibility(game, v).feasible:
            return tuple(v)


def _segmented_values(rng: random.Random, game: Game) -> tuple[Fraction, ...]:
    stats = segment_stats(build_segments(game), game)
    while True:
        i = rng.randrange(2)
        bounds, caps = [], []
        if stats.class1:
            bounds.append(stats.phi(1, 1) / 2)
        if stats.class2:
            bounds.append(naive_best_response(game, i, Variant.NO_JCI_S2).alpha_i)
        vi = _fraction_of(rng, min(bounds))
        caps.append(vi)
        if stats.class1:
            caps.append((stats.phi(1, 1) + stats.phi(1, 2)) / 2 - vi)
        if stats.class2:
            caps.append(stats.phi(2, 1) / 2 - vi)
        if min(caps) < 0:
            continue
        v = [ZERO, ZERO]
        v[i], v[1 - i] = vi, _fraction_of(rng, min(caps))
        if not m3_conditions(game, v):
            return tuple(v)


def random_instance(seed: int, profile: str = "jci_A") -> Instance:
    """Deterministic random game in the requested regime plus feasible base values."""
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; choose from {PROFILES}")
    rng = random.Random(f"{profile}:{seed}")
    if profile.startswith("jci"):
        game = _grid_jci(rng, amazon=profile == "jci_A")
        v = _jci_values(rng, game)
    else:
        game = _grid_segmented(rng, profile.split("_")[1])
        v = _segmented_values(rng, game)
    return Instance(game.with_base_values(v), v, profile, seed)


def random_nplayer_instance(seed: int, n: int) -> Game:
    """JCI game without an Amazon: each player sees one bit of an n-bit type."""
    rng = random.Random(f"nplayer{n}:{seed}")
    universe = ["".join(b) for b in itertools.product("01", repeat=n)]
    types = sorted(rng.sample(universe, min(len(universe), 8)))
    goods = [f"g{k}" for k in range(rng.randint(2, 3))]
    desired = {t: rng.choice(goods) for t in types}
    parts = []
    for k in range(n):
        cells = [{t for t in types if t[k] == b} for b in "01"]
        parts.append([c for c in cells if c])
    return make_game(types, goods, desired, _weights(rng, types), parts, amazon=False)


def random_transfer_instance(seed: int) -> Instance:
    """JCI game with an Amazon and v1 + v2 <= 2/3, max(v) > 1/3."""
    rng = random.Random(f"transfer:{seed}")
    game = _grid_jci(rng, amazon=True)
    i = rng.randrange(2)
    v = [ZERO, ZERO]
    v[i] = THIRD + THIRD * F(rng.randint(1, 24), 24)
    v[1 - i] = (F(2, 3) - v[i]) * F(rng.randint(0, 24), 24)
    return Instance(game.with_base_values(v), tuple(v), "transfer", seed)


SCENARIOS = ("intro", "example_ir", "example_ic", "sharing_with_amazon", "sharing_without_amazon", "nplayer")


def run_scenario(name: str, eps=None, v=None, n: int = 3, amazon: bool = False) -> ScenarioResult:
    """Run a named scenario at default or given parameters."""
    if name == "intro":
        return intro_example(F(11, 20), F(5, 20), F(3, 20), F(1, 20), amazon)
    if name == "example_ir":
        return example_ir(eps if eps is not None else F(1, 4))
    if name == "example_ic":
        return example_ic(eps if eps is not None else F(1, 2))
    if name == "sharing_with_amazon":
        return sharing_comparison("with_amazon")
    if name == "sharing_without_amazon":
        return sharing_comparison("without_amazon")
    if name == "nplayer":
        return nplayer_claim(n, v)
    raise ValueError(f"unknown scenario {name!r}; choose from {SCENARIOS}")

"""Finite Bayesian games in which regular players compete to offer a consumer
the one good the consumer wants.

A consumer of type ``w`` buys only ``desired[w]``.  Every player offering that
good gets an equal share of a unit surplus; an optional complete-information
outside competitor (called the Amazon here) always offers the right good and
takes its share too.  Regular players only learn the cell of their own
partition that contains ``w``, plus, in a mediated game, a recommended good.

All probabilities and payoffs are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import (
    BaseValueOutOfRange,
    GameError,
    MissingCell,
    PartitionNotCovering,
    PriorNotNormalized,
    ProfileIncomplete,
    UnknownGood,
)

# A player's information set: (index of their partition cell, received message).
# Message ``None`` means "no mediator", or in a strategy table, "any message".
InfoSet = tuple[int, Optional[str]]
Dist = Mapping[str, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass an exact rational")
    return Fraction(value)


@dataclass(frozen=True)
class GameSpec:
    """Raw game data.  Use :func:`validate_game` to obtain a :class:`Game`."""

    types: tuple[str, ...]
    goods: tuple[str, ...]
    desired: Mapping[str, str]
    prior: Mapping[str, Fraction]
    partitions: tuple[tuple[frozenset, ...], ...]
    amazon: bool = False
    base_values: Optional[tuple[Fraction, ...]] = None

    @property
    def num_regular_players(self) -> int:
        return len(self.partitions)


@dataclass(frozen=True, eq=False)
class Game(GameSpec):
    """A validated game with cached lookup tables."""

    def __eq__(self, other):
        if not isinstance(other, GameSpec):
            return NotImplemented
        return _canonical(self) == _canonical(other)

    def __hash__(self):
        return hash(_canonical(self))

    @property
    def n(self) -> int:
        return len(self.partitions)

    @cached_property
    def good_index(self) -> dict[str, int]:
        return {g: k for k, g in enumerate(self.goods)}

    @cached_property
    def cell_index(self) -> tuple[dict[str, int], ...]:
        return tuple(
            {w: c for c, cell in enumerate(part) for w in cell}
            for part in self.partitions
        )

    def cell_of(self, player: int, w: str) -> int:
        return self.cell_index[player][w]

    def joint_cell(self, w: str) -> tuple[int, ...]:
        return tuple(idx[w] for idx in self.cell_index)

    def prob(self, event: Iterable[str]) -> Fraction:
        return sum((self.prior[w] for w in event), ZERO)

    @cached_property
    def prior_favourite(self) -> str:
        """Good with the largest unconditional probability of being wanted."""
        mass = {g: ZERO for g in self.goods}
        for w in self.types:
            mass[self.desired[w]] += self.prior[w]
        return max(self.goods, key=lambda g: (mass[g], -self.good_index[g]))

    def with_amazon(self, amazon: bool) -> "Game":
        return validate_game(dataclasses.replace(self, amazon=amazon))

    def with_base_values(self, values: Sequence) -> "Game":
        return validate_game(
            dataclasses.replace(self, base_values=tuple(values))
        )


def _canonical(spec: GameSpec):
    return (
        spec.types,
        spec.goods,
        tuple(sorted(spec.desired.items())),
        tuple(sorted(spec.prior.items())),
        tuple(
            tuple(tuple(sorted(cell)) for cell in part) for part in spec.partitions
        ),
        spec.amazon,
        spec.base_values,
    )


def validate_game(raw: GameSpec) -> Game:
    """Check every invariant of ``raw`` and return it as a :class:`Game`."""
    types = tuple(raw.types)
    goods = tuple(raw.goods)
    if not types or len(set(types)) != len(types):
        raise GameError("types must be a nonempty sequence of distinct ids")
    if not goods or len(set(goods)) != len(goods):
        raise GameError("goods must be a nonempty sequence of distinct ids")

    desired = dict(raw.desired)
    for w in types:
        if w not in desired:
            raise UnknownGood(f"type {w!r} has no desired good")
        if desired[w] not in goods:
            raise UnknownGood(f"type {w!r} wants unknown good {desired[w]!r}")
    if set(desired) - set(types):
        raise GameError(f"desired good given for unknown types {set(desired) - set(types)}")

    prior = {w: as_fraction(p) for w, p in raw.prior.items()}
    if set(prior) != set(types):
        raise PriorNotNormalized("prior must assign a probability to every type, and only to types")
    if any(p < 0 for p in prior.values()):
        raise PriorNotNormalized("prior has a negative entry")
    total = sum(prior.values(), ZERO)
    if total != 1:
        raise PriorNotNormalized(f"prior sums to {total}, not 1")

    partitions = tuple(
        tuple(frozenset(cell) for cell in part) for part in raw.partitions
    )
    if len(partitions) < 2:
        raise GameError("need at least two regular players")
    universe = set(types)
    for i, part in enumerate(partitions):
        seen: set = set()
        for cell in part:
            if not cell:
                raise PartitionNotCovering(f"player {i} has an empty cell")
            if cell - universe:
                raise PartitionNotCovering(f"player {i} cell mentions unknown types {set(cell - universe)}")
            if cell & seen:
                raise PartitionNotCovering(f"player {i} cells overlap on {set(cell & seen)}")
            seen |= cell
        if seen != universe:
            raise PartitionNotCovering(f"player {i} cells miss types {universe - seen}")

    if raw.base_values is None:
        base_values = tuple(ZERO for _ in partitions)
    else:
        base_values = tuple(as_fraction(v) for v in raw.base_values)
    if len(base_values) != len(partitions):
        raise BaseValueOutOfRange("need exactly one base value per regular player")
    for v in base_values:
        if not 0 <= v <= 1:
            raise BaseValueOutOfRange(f"base value {v} outside [0, 1]")

    return Game(
        types=types,
        goods=goods,
        desired=desired,
        prior=prior,
        partitions=partitions,
        amazon=bool(raw.amazon),
        base_values=base_values,
    )


def make_game(types, goods, desired, prior, partitions, amazon=False, base_values=None) -> Game:
    """Convenience constructor: build a :class:`GameSpec` and validate it."""
    return validate_game(
        GameSpec(
            types=tuple(types),
            goods=tuple(goods),
            desired=dict(desired),
            prior={w: as_fraction(p) for w, p in dict(prior).items()},
            partitions=tuple(tuple(frozenset(c) for c in part) for part in partitions),
            amazon=amazon,
            base_values=None if base_values is None else tuple(as_fraction(v) for v in base_values),
        )
    )


def profit_weighted_prior(game: Game, profits: Mapping[str, Fraction]) -> tuple[Game, Fraction]:
    """Fold per-type profits into the prior.

    Returns the game with prior ``p(w) * pi(w) / Z`` together with ``Z``, so
    that ``Z`` times any utility in the returned game equals the
    profit-weighted utility in ``game``.
    """
    weighted = {w: as_fraction(profits[w]) * game.prior[w] for w in game.types}
    norm = sum(weighted.values(), ZERO)
    if norm <= 0:
        raise GameError("profits must give positive total weight")
    prior = {w: x / norm for w, x in weighted.items()}
    return validate_game(dataclasses.replace(game, prior=prior)), norm


# ---------------------------------------------------------------------------
# Segments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SegmentTable:
    segments: tuple[frozenset, ...]
    membership: Mapping[str, int]
    joint_cells: tuple[tuple[int, ...], ...]

    @property
    def jointly_complete(self) -> bool:
        return all(len(s) == 1 for s in self.segments)


def build_segments(game: Game) -> SegmentTable:
    """Intersect all regular players' cells; segments ordered by first type."""
    by_key: dict[tuple[int, ...], int] = {}
    members: list[list[str]] = []
    membership: dict[str, int] = {}
    for w in game.types:
        key = game.joint_cell(w)
        if key not in by_key:
            by_key[key] = len(members)
            members.append([])
        members[by_key[key]].append(w)
        membership[w] = by_key[key]
    return SegmentTable(
        segments=tuple(frozenset(m) for m in members),
        membership=membership,
        joint_cells=tuple(by_key),
    )


@dataclass(frozen=True)
class SegmentStat:
    probability: Fraction
    top_good: str
    second_good: Optional[str]
    top_weight: Fraction
    second_weight: Fraction
    weights: Mapping[str, Fraction]

    @property
    def in_first_class(self) -> bool:
        """True when separating is an equilibrium (top <= 3/2 * second)."""
        return self.top_weight <= Fraction(3, 2) * self.second_weight


@dataclass(frozen=True)
class SegmentStats:
    table: SegmentTable
    per_segment: tuple[SegmentStat, ...]
    phi1: Fraction
    phi2: Fraction
    class1: tuple[int, ...]
    class2: tuple[int, ...]
    # (class l, rank k) -> weight of rank-k goods conditional on class l
    conditional: Mapping[tuple[int, int], Fraction]

    def phi(self, cls: int, rank: int) -> Fraction:
        return self.conditional[(cls, rank)]

    def class_probability(self, cls: int) -> Fraction:
        members = self.class1 if cls == 1 else self.class2
        return sum((self.per_segment[s].probability for s in members), ZERO)

    def stat_of(self, w: str) -> SegmentStat:
        return self.per_segment[self.table.membership[w]]

    def top_good_of(self, w: str) -> str:
        return self.stat_of(w).top_good


def conditional_weights(game: Game, segment: Iterable[str]) -> dict[str, Fraction]:
    """Pr[desired good = g | segment] for every good g.

    A zero-probability segment has no posterior; we fall back to the uniform
    distribution over its types so downstream tie-breaking stays defined.
    """
    segment = list(segment)
    mass = game.prob(segment)
    weights = {g: ZERO for g in game.goods}
    if mass > 0:
        for w in segment:
            weights[game.desired[w]] += game.prior[w] / mass
    else:
        for w in segment:
            weights[game.desired[w]] += Fraction(1, len(segment))
    return weights


def segment_stats(table: SegmentTable, game: Game) -> SegmentStats:
    stats = []
    for seg in table.segments:
        weights = conditional_weights(game, seg)
        ranked = sorted(game.goods, key=lambda g: (-weights[g], game.good_index[g]))
        second = ranked[1] if len(ranked) > 1 else None
        stats.append(
            SegmentStat(
                probability=game.prob(seg),
                top_good=ranked[0],
                second_good=second,
                top_weight=weights[ranked[0]],
                second_weight=weights[second] if second is not None else ZERO,
                weights=weights,
            )
        )
    phi1 = sum((s.top_weight * s.probability for s in stats), ZERO)
    phi2 = sum((s.second_weight * s.probability for s in stats), ZERO)
    class1 = tuple(k for k, s in enumerate(stats) if s.in_first_class)
    class2 = tuple(k for k, s in enumerate(stats) if not s.in_first_class)
    conditional = {}
    for cls, members in ((1, class1), (2, class2)):
        mass = sum((stats[k].probability for k in members), ZERO)
        for rank in (1, 2):
            if mass == 0:
                conditional[(cls, rank)] = ZERO
                continue
            attr = "top_weight" if rank == 1 else "second_weight"
            conditional[(cls, rank)] = sum(
                (getattr(stats[k], attr) * stats[k].probability for k in members), ZERO
            ) / mass
    return SegmentStats(
        table=table,
        per_segment=tuple(stats),
        phi1=phi1,
        phi2=phi2,
        class1=class1,
        class2=class2,
        conditional=conditional,
    )


# ---------------------------------------------------------------------------
# Strategies and utilities
# ---------------------------------------------------------------------------


def normalize_dist(dist: Mapping[str, object], goods: Sequence[str] | None = None) -> dict[str, Fraction]:
    out = {}
    for g, p in dist.items():
        p = as_fraction(p)
        if p < 0:
            raise ValueError(f"negative weight {p} on {g!r}")
        if goods is not None and g not in goods:
            raise UnknownGood(f"unknown good {g!r} in strategy")
        if p:
            out[g] = out.get(g, ZERO) + p
    if sum(out.values(), ZERO) != 1:
        raise ValueError(f"weights {dist} do not sum to 1")
    return out


@dataclass(frozen=True)
class StrategyProfile:
    """Behavioral strategies of the regular players.

    ``strategies[i]`` maps an information set ``(cell, message)`` to a
    distribution over goods.  A key with message ``None`` applies to every
    message received in that cell, so an unmediated strategy can be reused
    unchanged in any mediated game.
    """

    strategies: tuple[Mapping[InfoSet, Dist], ...]

    def dist(self, player: int, cell: int, message: Optional[str]) -> Dist:
        table = self.strategies[player]
        found = table.get((cell, message))
        if found is None and message is not None:
            found = table.get((cell, None))
        if found is None:
            raise ProfileIncomplete(
                f"player {player} has no action at cell {cell}, message {message!r}"
            )
        return found

    @classmethod
    def pure(cls, choices: Sequence[Mapping]) -> "StrategyProfile":
        """Build from per-player maps ``info set -> good``.

        A bare integer key is shorthand for ``(cell, None)``.
        """
        strategies = []
        for table in choices:
            strategies.append(
                {_key(k): {g: ONE} for k, g in table.items()}
            )
        return cls(tuple(strategies))

    @classmethod
    def mixed(cls, tables: Sequence[Mapping]) -> "StrategyProfile":
        return cls(
            tuple({_key(k): normalize_dist(d) for k, d in t.items()} for t in tables)
        )

    def replace(self, player: int, strategy: Mapping[InfoSet, Dist]) -> "StrategyProfile":
        strategies = list(self.strategies)
        strategies[player] = dict(strategy)
        return StrategyProfile(tuple(strategies))


def _key(k) -> InfoSet:
    return (k, None) if isinstance(k, int) else (k[0], k[1])


@dataclass(frozen=True)
class Event:
    """One (type, recommendation tuple) outcome with its probability."""

    type: str
    probability: Fraction
    messages: tuple[Optional[str], ...]


def outcome_events(game: Game, mediator=None, include_null: bool = False) -> Iterator[Event]:
    """Enumerate (type, messages) pairs of the (possibly mediated) game.

    Zero-probability types are skipped unless ``include_null`` is set, in
    which case their structurally possible messages are listed with
    probability zero.
    """
    blank = (None,) * game.n
    for w in game.types:
        p = game.prior[w]
        if p == 0 and not include_null:
            continue
        if mediator is None:
            yield Event(w, p, blank)
            continue
        dist = mediator.table.get(game.joint_cell(w))
        if dist is None:
            if p == 0:
                continue
            raise MissingCell(f"mediator has no entry for joint cell {game.joint_cell(w)}")
        for recs, q in dist.items():
            if q:
                yield Event(w, p * q, tuple(recs))


def share_of_surplus(others_correct: Sequence[Fraction], amazon: bool) -> Fraction:
    """E[1/k] for a correct offer, k counting every correct offer.

    ``others_correct`` holds the independent probabilities that each other
    regular player offers the right good.
    """
    counts = [ONE]
    for q in others_correct:
        if q == 0:
            continue
        nxt = [ZERO] * (len(counts) + 1)
        for k, pk in enumerate(counts):
            if pk:
                nxt[k] += pk * (1 - q)
                nxt[k + 1] += pk * q
        counts = nxt
    base = 2 if amazon else 1
    return sum((pk / (base + k) for k, pk in enumerate(counts) if pk), ZERO)


def correct_probabilities(game: Game, profile: StrategyProfile, event: Event) -> list[Fraction]:
    g = game.desired[event.type]
    return [
        profile.dist(k, game.cell_of(k, event.type), event.messages[k]).get(g, ZERO)
        for k in range(game.n)
    ]


def expected_utilities(game: Game, profile: StrategyProfile, mediator=None) -> tuple[Fraction, ...]:
    """Exact ex-ante utility of each regular player (transfers excluded)."""
    totals = [ZERO] * game.n
    for ev in outcome_events(game, mediator):
        qs = correct_probabilities(game, profile, ev)
        for i in range(game.n):
            if qs[i]:
                others = qs[:i] + qs[i + 1:]
                totals[i] += ev.probability * qs[i] * share_of_surplus(others, game.amazon)
    return tuple(totals)

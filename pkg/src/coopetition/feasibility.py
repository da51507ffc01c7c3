"""Base-value feasibility and the welfare LP for two players facing an Amazon."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import LpInfeasible, PreconditionViolated
from .game import ZERO, Game, as_fraction, build_segments
from .strategies import Variant, naive_best_response

THIRD = Fraction(1, 3)
HALF = Fraction(1, 2)


def leader(v: Sequence[Fraction]) -> int:
    """Index of the largest base value; ties go to the lowest index."""
    best = max(v)
    return next(k for k, x in enumerate(v) if x == best)


def fractions(v: Sequence) -> tuple[Fraction, ...]:
    return tuple(as_fraction(x) for x in v)


@dataclass(frozen=True)
class FeasibilityVerdict:
    """Outcome of the necessary conditions for an IR, IC mediator.

    ``feasible`` only says the necessary conditions pass; sufficiency comes
    from actually building a mediator and verifying it.
    """

    feasible: bool
    violated: tuple[str, ...]
    leader: int
    leader_bound: Fraction  # E[u_i(g_w, s'_j(w))] in the game's environment
    amazon: bool


def feasibility(game: Game, v: Sequence) -> FeasibilityVerdict:
    if game.n != 2:
        raise PreconditionViolated("feasibility conditions are stated for two players")
    if not build_segments(game).jointly_complete:
        raise PreconditionViolated("feasibility conditions need jointly complete information")
    v = fractions(v)
    i = leader(v)
    j = 1 - i
    bound = naive_best_response(game, i, Variant.JCI).alpha_i
    violated = []
    if game.amazon:
        if v[i] > bound:
            violated.append("v_i<=E[u_i(g_w,s'_j)]")
        if v[j] > 1 - 2 * v[i]:
            violated.append("v_j<=1-2v_i")
    else:
        if v[0] + v[1] > 1:
            violated.append("v1+v2<=1")
        if v[i] > bound:
            violated.append("v_i<=E[u_i(g_w,s'_j)]")
    return FeasibilityVerdict(not violated, tuple(violated), i, bound, game.amazon)


# ---------------------------------------------------------------------------
# LP(v1, v2)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LpSolution:
    beta_1: Fraction
    beta_2: Fraction
    beta: Fraction
    value: Fraction
    leader: int

    @property
    def beta_i(self) -> Fraction:
        return (self.beta_1, self.beta_2)[self.leader]

    @property
    def beta_j(self) -> Fraction:
        return (self.beta_1, self.beta_2)[1 - self.leader]


def lp_opt(v: Sequence) -> LpSolution:
    """Closed-form optimum of the two-player welfare LP against an Amazon.

    Variables: probability that only player 1, only player 2, or both are
    recommended the right good.  Objective (b1 + b2)/2 + 2b/3 subject to
    b_k/2 + b/3 >= v_k, nonnegativity and b1 + b2 + b <= 1.
    """
    v = fractions(v)
    i = leader(v)
    j = 1 - i
    if v[i] > HALF or (v[i] > THIRD and v[j] > 1 - 2 * v[i]):
        raise LpInfeasible(f"no feasible point for v={v}")
    betas = [ZERO, ZERO]
    if v[i] <= THIRD:
        beta, value = Fraction(1), Fraction(2, 3)
    else:
        beta = 3 - 6 * v[i]
        betas[i] = 6 * v[i] - 2
        value = 1 - v[i]
    return LpSolution(betas[0], betas[1], beta, value, i)


def lp_matrices(v: Sequence):
    """``(c, A, b)`` for LP(v1, v2) written as max c.x s.t. A x <= b."""
    v1, v2 = fractions(v)
    f = Fraction
    c = [f(1, 2), f(1, 2), f(2, 3)]
    A = [
        [f(-1, 2), f(0), f(-1, 3)],
        [f(0), f(-1, 2), f(-1, 3)],
        [f(-1), f(0), f(0)],
        [f(0), f(-1), f(0)],
        [f(0), f(0), f(-1)],
        [f(1), f(1), f(1)],
    ]
    b = [-v1, -v2, f(0), f(0), f(0), f(1)]
    return c, A, b


def solve_exact(M: list[list[Fraction]], rhs: list[Fraction]) -> Optional[list[Fraction]]:
    """Gauss-Jordan elimination over the rationals; None if singular."""
    n = len(M)
    aug = [list(row) + [r] for row, r in zip(M, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def vertex_maximize(c, A, b):
    """Maximize ``c.x`` over ``{x : A x <= b}`` by enumerating vertices.

    Intended for tiny bounded problems.  Returns ``(value, x)`` for the best
    feasible vertex, or ``None`` when no vertex is feasible.
    """
    d = len(c)
    best = None
    for rows in itertools.combinations(range(len(A)), d):
        x = solve_exact([A[r] for r in rows], [b[r] for r in rows])
        if x is None:
            continue
        if any(sum(a * xi for a, xi in zip(A[r], x)) > b[r] for r in range(len(A))):
            continue
        value = sum(ci * xi for ci, xi in zip(c, x))
        if best is None or value > best[0]:
            best = (value, x)
    return best

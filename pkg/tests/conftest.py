import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from coopetition.game import make_game  # noqa: E402
from coopetition.scenarios import intro_game  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

F = Fraction
INTRO = (F(11, 20), F(5, 20), F(3, 20), F(1, 20))


@pytest.fixture
def intro():
    return intro_game(*INTRO)


@pytest.fixture
def intro_amazon():
    return intro_game(*INTRO, amazon=True)


def informed_vs_blind(count, amazon):
    """Player 1 sees the type, player 2 sees nothing; uniform over ``count`` goods."""
    types = [f"t{k}" for k in range(count)]
    goods = [f"g{k}" for k in range(count)]
    return make_game(types, goods, dict(zip(types, goods)), {t: F(1, count) for t in types},
                     [[{t} for t in types], [set(types)]], amazon)


@st.composite
def jci_games(draw, amazon=None):
    """Two players, grid of types, player 1 sees the row and player 2 the column."""
    rows = draw(st.integers(1, 3))
    cols = draw(st.integers(1, 3))
    goods = [f"g{k}" for k in range(draw(st.integers(1, 3)))]
    types = [f"r{r}c{c}" for r in range(rows) for c in range(cols)]
    desired = {t: draw(st.sampled_from(goods)) for t in types}
    raw = {t: draw(st.integers(0, 6)) for t in types}
    if not any(raw.values()):
        raw[types[0]] = 1
    total = sum(raw.values())
    prior = {t: F(x, total) for t, x in raw.items()}
    parts = (
        [{f"r{r}c{c}" for c in range(cols)} for r in range(rows)],
        [{f"r{r}c{c}" for r in range(rows)} for c in range(cols)],
    )
    if amazon is None:
        amazon = draw(st.booleans())
    return make_game(types, goods, desired, prior, parts, amazon)


@st.composite
def coarse_games(draw, amazon=None):
    """Two players with arbitrary (possibly overlapping-information) partitions."""
    n_types = draw(st.integers(1, 5))
    goods = [f"g{k}" for k in range(draw(st.integers(1, 3)))]
    types = [f"t{k}" for k in range(n_types)]
    desired = {t: draw(st.sampled_from(goods)) for t in types}
    raw = {t: draw(st.integers(1, 6)) for t in types}
    total = sum(raw.values())
    prior = {t: F(x, total) for t, x in raw.items()}
    parts = []
    for _ in range(2):
        labels = [draw(st.integers(0, 2)) for _ in types]
        cells = {}
        for t, lab in zip(types, labels):
            cells.setdefault(lab, set()).add(t)
        parts.append(list(cells.values()))
    if amazon is None:
        amazon = draw(st.booleans())
    return make_game(types, goods, desired, prior, parts, amazon)


ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}")

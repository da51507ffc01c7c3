"""JSON dialect shared by games, mediators and reports.

Rationals travel as ``"p/q"`` strings (integers as ``"p"``), never floats.
Joint cells are keyed ``"i|j|..."`` by cell index.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import GameError, ParseError
from .game import Game, GameSpec, validate_game
from .mediators import MediatorSpec, Transfer


def rational(text: Any) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ParseError(f"expected a rational string like '1/3', got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}") from exc


def rational_list(text: str) -> tuple[Fraction, ...]:
    """Parse ``"1/3,1/4"`` as used on the command line."""
    return tuple(rational(x.strip()) for x in text.split(",") if x.strip())


def game_to_dict(game: GameSpec) -> dict:
    out = {
        "types": list(game.types),
        "goods": list(game.goods),
        "desired": {w: game.desired[w] for w in game.types},
        "prior": {w: str(game.prior[w]) for w in game.types},
        "partitions": [
            [sorted(cell, key=list(game.types).index) for cell in part]
            for part in game.partitions
        ],
        "amazon": bool(game.amazon),
    }
    if game.base_values is not None:
        out["base_values"] = [str(v) for v in game.base_values]
    return out


def game_from_dict(data: dict) -> Game:
    try:
        spec = GameSpec(
            types=tuple(data["types"]),
            goods=tuple(data["goods"]),
            desired=dict(data["desired"]),
            prior={w: rational(p) for w, p in data["prior"].items()},
            partitions=tuple(tuple(frozenset(c) for c in part) for part in data["partitions"]),
            amazon=bool(data.get("amazon", False)),
            base_values=(
                tuple(rational(v) for v in data["base_values"])
                if data.get("base_values") is not None
                else None
            ),
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"malformed game document: {exc}") from exc
    return validate_game(spec)


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def loads(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def load_game(path: str) -> Game:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return game_from_dict(loads(text))


def cell_key(key: tuple[int, ...]) -> str:
    return "|".join(str(c) for c in key)


def mediator_to_dict(m: MediatorSpec) -> dict:
    return {
        "label": m.label,
        "table": {
            cell_key(key): [
                {"recommendation": list(rec), "probability": str(p)} for rec, p in dist.items()
            ]
            for key, dist in m.table.items()
        },
        "transfer": None
        if m.transfer is None
        else {"payer": m.transfer.payer, "payee": m.transfer.payee, "amount": str(m.transfer.amount)},
    }


def mediator_from_dict(data: dict) -> MediatorSpec:
    try:
        table = {}
        for key, entries in data["table"].items():
            cell = tuple(int(c) for c in key.split("|"))
            table[cell] = {tuple(e["recommendation"]): rational(e["probability"]) for e in entries}
        t = data.get("transfer")
        transfer = None if t is None else Transfer(int(t["payer"]), int(t["payee"]), rational(t["amount"]))
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed mediator document: {exc}") from exc
    return MediatorSpec(table, data.get("label", ""), transfer)


def report_to_dict(report) -> dict:
    return {
        "label": report.label,
        "ic": report.ic.is_equilibrium,
        "max_gain": str(report.ic.max_gain),
        "worst_deviator": report.ic.worst_deviator,
        "utilities": [str(u) for u in report.utilities],
        "ir_slacks": [str(s) for s in report.ir_slacks],
        "ir": report.individually_rational,
        "welfare": str(report.welfare),
        "opt": str(report.opt),
        "ratio": str(report.ratio),
        "fully_revealing_to": list(report.fully_revealing_to),
    }


def report_from_dict(data: dict):
    from .analysis import VerificationReport
    from .strategies import BneVerdict

    return VerificationReport(
        label=data["label"],
        ic=BneVerdict(data["ic"], data["worst_deviator"], rational(data["max_gain"])),
        utilities=tuple(rational(u) for u in data["utilities"]),
        ir_slacks=tuple(rational(s) for s in data["ir_slacks"]),
        welfare=rational(data["welfare"]),
        opt=rational(data["opt"]),
        ratio=rational(data["ratio"]),
        fully_revealing_to=tuple(data["fully_revealing_to"]),
    )


def plain(value):
    """Recursively turn fractions and tuples into JSON-friendly values."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    return value


def scenario_to_dict(result) -> dict:
    return {
        "name": result.name,
        "passed": result.passed,
        "games": {k: game_to_dict(g) for k, g in result.games.items()},
        "reports": {k: report_to_dict(r) for k, r in result.reports.items()},
        "claims": [
            {"id": c.id, "relation": c.relation, "observed": plain(dict(c.observed)), "passed": c.passed}
            for c in result.claims
        ],
    }


__all__ = [
    "GameError",
    "dumps",
    "loads",
    "load_game",
    "game_to_dict",
    "game_from_dict",
    "mediator_to_dict",
    "mediator_from_dict",
    "report_to_dict",
    "report_from_dict",
    "scenario_to_dict",
    "rational",
    "rational_list",
]

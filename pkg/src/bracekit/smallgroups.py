"""Built-in operation tables for every group of order at most 16."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .groups import FiniteGroup, is_isomorphic, validate_group

MAX_ORDER = 16


@lru_cache(maxsize=None)
def _records() -> tuple:
    text = resources.files("bracekit").joinpath("data/small_groups.json").read_text()
    return tuple(json.loads(text)["groups"])


@lru_cache(maxsize=None)
def small_groups(order: int) -> tuple[FiniteGroup, ...]:
    """Groups of the given order, validated on load, in library order (index 1 first)."""
    if not 1 <= order <= MAX_ORDER:
        raise ValueError(f"no built-in groups of order {order}")
    out = []
    for rec in _records():
        if rec["order"] == order:
            g = validate_group(rec["table"], name=rec["name"])
            out.append(g)
    return tuple(out)


def small_group(order: int, index: int) -> FiniteGroup:
    return small_groups(order)[index - 1]


def by_name(name: str) -> FiniteGroup:
    for rec in _records():
        if rec["name"] == name:
            return small_group(rec["order"], rec["index"])
    raise KeyError(name)


def identify(g: FiniteGroup) -> tuple[int, int, str]:
    """(order, index, name) of the library group isomorphic to g."""
    if g.order > MAX_ORDER:
        raise ValueError(f"order {g.order} is beyond the built-in library")
    for i, h in enumerate(small_groups(g.order), start=1):
        if is_isomorphic(g, h):
            return g.order, i, h.name
    raise LookupError("group not found in library")  # unreachable for valid groups

"""Enumerate skew braces with a given additive group and keep a corpus of them.

Skew braces on an additive group A correspond to regular subgroups of
Hol(A) = A x| Aut(A): the subgroup {(a, lambda_a)} gives a*b = a + lambda_a(b).
"""

from __future__ import annotations

import datetime as _dt
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from . import groups as G
from .brace import SkewBrace, eq1_witness, from_lambda, validate_skew_brace
from .groups import FiniteGroup, OrderBoundExceeded
from .smallgroups import identify, small_groups

DEFAULT_MAX_ORDER = 12
HARD_MAX_ORDER = 16


class ValidationFailed(ValueError):
    def __init__(self, brace_id: str, reason: str):
        super().__init__(f"{brace_id}: {reason}")
        self.brace_id = brace_id


def max_order_bound(allow_16: bool = False) -> int:
    env = os.environ.get("BRACEKIT_MAX_ORDER")
    if env:
        return min(int(env), HARD_MAX_ORDER)
    return HARD_MAX_ORDER if allow_16 else DEFAULT_MAX_ORDER


@dataclass(frozen=True)
class HolomorphElement:
    translation: int
    automorphism: int


class _Holomorph:
    """Multiplication in A x| Aut(A) with automorphisms addressed by index."""

    def __init__(self, add: FiniteGroup, auts: G.AutGroup):
        self.add = add
        self.perms = auts.perms
        self.auts = auts
        self._comp: dict[tuple[int, int], int] = {}

    def compose(self, i: int, j: int) -> int:
        key = (i, j)
        r = self._comp.get(key)
        if r is None:
            f, g = self.perms[i], self.perms[j]
            r = self.auts.index(tuple(f[x] for x in g))
            self._comp[key] = r
        return r

    def mul(self, x: HolomorphElement, y: HolomorphElement) -> HolomorphElement:
        t = self.add.table[x.translation][self.perms[x.automorphism][y.translation]]
        return HolomorphElement(t, self.compose(x.automorphism, y.automorphism))


def _regular_closure(hol: _Holomorph, gens: list[tuple[int, int]], n: int):
    """Close pairs (translation, aut) under the holomorph product.

    Returns translation -> aut, or None as soon as two elements share a translation.
    """
    at = hol.add.table
    perms = hol.perms
    found = {0: 0}
    queue = [0]
    while queue:
        t = queue.pop()
        phi = found[t]
        row = at[t]
        p = perms[phi]
        for gt, gphi in gens:
            nt = row[p[gt]]
            nphi = hol.compose(phi, gphi)
            old = found.get(nt)
            if old is None:
                found[nt] = nphi
                queue.append(nt)
            elif old != nphi:
                return None
    return found


def regular_subgroups(add: FiniteGroup, auts: G.AutGroup | None = None) -> list[dict[int, int]]:
    """All regular subgroups of Hol(add), each as translation -> automorphism index."""
    auts = G.automorphism_group(add) if auts is None else auts
    hol = _Holomorph(add, auts)
    n = add.order
    out = []

    def search(gens, current):
        if len(current) == n:
            out.append(current)
            return
        # the first uncovered translation fixes one generator; its automorphism is the branch
        x = next(t for t in range(n) if t not in current)
        for phi in range(len(auts)):
            nxt = _regular_closure(hol, gens + [(x, phi)], n)
            if nxt is not None:
                search(gens + [(x, phi)], nxt)

    search([], {0: 0})
    return out


def enumerate_braces(add: FiniteGroup, bound: int | None = None) -> list[SkewBrace]:
    """Every skew brace whose additive table is exactly `add`, sorted by mul table."""
    bound = max_order_bound() if bound is None else bound
    if add.order > bound:
        raise OrderBoundExceeded(f"order {add.order} exceeds enumeration bound {bound}")
    auts = G.automorphism_group(add)
    braces = []
    for sub in regular_subgroups(add, auts):
        lambdas = [auts.perms[sub[a]] for a in range(add.order)]
        b = from_lambda(add, lambdas)
        w = eq1_witness(b.add, b.mul)
        if w is not None:  # pragma: no cover - regular subgroups always give braces
            raise AssertionError(f"enumeration produced an invalid brace, witness {w}")
        braces.append(b)
    braces.sort(key=lambda b: b.mul.table)
    return braces


def enumerate_braces_direct(add: FiniteGroup) -> list[tuple[tuple[int, ...], ...]]:
    """Independent oracle: search multiplication tables directly against the brace axiom.

    Cells are filled one at a time and the axiom, associativity and the Latin
    property are propagated to a fixpoint. Only meant for orders up to about 6.
    """
    n = add.order
    at, ainv = add.table, add.inv
    results = []
    start = [[-1] * n for _ in range(n)]
    for x in range(n):
        start[0][x] = x
        start[x][0] = x

    def propagate(m):
        changed = True
        while changed:
            changed = False
            for a in range(n):
                ma = m[a]
                if len(set(v for v in ma if v >= 0)) != sum(v >= 0 for v in ma):
                    return False
                for b in range(n):
                    if ma[b] < 0:
                        continue
                    pre = at[ma[b]][ainv[a]]
                    for c in range(n):
                        if ma[c] < 0:
                            continue
                        v = at[pre][ma[c]]
                        bc = at[b][c]
                        if ma[bc] < 0:
                            ma[bc] = v
                            changed = True
                        elif ma[bc] != v:
                            return False
                    mb = m[ma[b]]
                    for c in range(n):
                        bc = m[b][c]
                        if bc < 0:
                            continue
                        v = ma[bc]
                        if v < 0:
                            continue
                        if mb[c] < 0:
                            mb[c] = v
                            changed = True
                        elif mb[c] != v:
                            return False
            for c in range(n):
                col = [m[a][c] for a in range(n) if m[a][c] >= 0]
                if len(col) != len(set(col)):
                    return False
        return True

    def search(m):
        cell = next(((a, b) for a in range(n) for b in range(n) if m[a][b] < 0), None)
        if cell is None:
            results.append(tuple(tuple(r) for r in m))
            return
        a, b = cell
        for v in range(n):
            trial = [r[:] for r in m]
            trial[a][b] = v
            if propagate(trial):
                search(trial)

    if propagate(start):
        search(start)
    valid = []
    for table in results:
        try:
            mul = G.validate_group(table)
        except G.GroupError:
            continue
        if mul.table == table and eq1_witness(add, mul) is None:
            valid.append(table)
    return sorted(set(valid))


def brace_isomorphism(A: SkewBrace, B: SkewBrace) -> tuple[int, ...] | None:
    """A carrier bijection preserving both operations, or None."""
    if A.order != B.order:
        return None
    if G.isomorphism(A.add, B.add) is None:
        return None
    amt, bmt = A.mul.table, B.mul.table
    n = A.order
    for f in G.isomorphisms(A.add, B.add):
        if all(f[amt[a][b]] == bmt[f[a]][f[b]] for a in range(n) for b in range(n)):
            return f
    return None


def brace_isomorphic(A: SkewBrace, B: SkewBrace) -> bool:
    return brace_isomorphism(A, B) is not None


def _transport(table, perm) -> tuple[tuple[int, ...], ...]:
    """Image of a table under the relabeling x -> perm[x]."""
    n = len(table)
    inv = [0] * n
    for x, y in enumerate(perm):
        inv[y] = x
    return tuple(tuple(perm[table[inv[i]][inv[j]]] for j in range(n)) for i in range(n))


def isomorphism_classes(add: FiniteGroup, braces: Sequence[SkewBrace],
                        auts: G.AutGroup | None = None) -> list[SkewBrace]:
    """One representative per isomorphism class: the least mul table in its Aut(add)-orbit.

    Braces sharing an additive table are isomorphic exactly when an automorphism
    of that table carries one multiplication onto the other.
    """
    auts = G.automorphism_group(add) if auts is None else auts
    seen: set = set()
    reps = []
    for b in braces:
        if b.mul.table in seen:
            continue
        orbit = {_transport(b.mul.table, p) for p in auts.perms}
        seen |= orbit
        reps.append(SkewBrace(add, G._trusted(min(orbit))))
    reps.sort(key=lambda b: b.mul.table)
    return reps


@dataclass
class CorpusEntry:
    id: str
    brace: SkewBrace
    add_iso_class: str
    mul_iso_class: str

    def to_json(self) -> dict:
        return {"id": self.id, "add_class": self.add_iso_class,
                "mul_class": self.mul_iso_class, **self.brace.to_json()}


@dataclass
class BraceCorpus:
    entries: list[CorpusEntry]
    metadata: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def get(self, brace_id: str) -> CorpusEntry:
        for e in self.entries:
            if e.id == brace_id:
                return e
        raise KeyError(brace_id)

    def to_json(self) -> dict:
        return {"metadata": self.metadata, "braces": [e.to_json() for e in self.entries]}


def _class_name(g: FiniteGroup) -> str:
    order, idx, name = identify(g)
    return f"{name} [{order},{idx}]"


def _braces_for_group(args) -> list[tuple[str, SkewBrace, str, str]]:
    order, gi, bound = args
    add = small_groups(order)[gi - 1]
    reps = isomorphism_classes(add, enumerate_braces(add, bound))
    add_name = _class_name(add)
    return [(f"o{order}-g{gi}-b{bi}", b, add_name, _class_name(b.mul))
            for bi, b in enumerate(reps, start=1)]


def build_corpus(orders: Iterable[int], jobs: int = 1, bound: int | None = None,
                 timestamp: str | None = None) -> BraceCorpus:
    """Isomorphism classes of skew braces for every additive group of the given orders."""
    bound = max_order_bound() if bound is None else bound
    orders = sorted(set(orders))
    for o in orders:
        if not 1 <= o <= bound:
            raise OrderBoundExceeded(f"order {o} outside 1..{bound}")
    tasks = [(o, gi, bound) for o in orders for gi in range(1, len(small_groups(o)) + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(_braces_for_group, tasks))
    else:
        chunks = [_braces_for_group(t) for t in tasks]
    entries = [CorpusEntry(*row) for chunk in chunks for row in chunk]
    if timestamp is None:
        epoch = os.environ.get("SOURCE_DATE_EPOCH")
        when = (_dt.datetime.fromtimestamp(int(epoch), _dt.timezone.utc) if epoch
                else _dt.datetime.now(_dt.timezone.utc))
        timestamp = when.replace(microsecond=0).isoformat()
    meta = {"generator": f"bracekit {__version__}", "orders": orders, "timestamp": timestamp}
    return BraceCorpus(entries, meta)


def corpus_dumps(corpus: BraceCorpus) -> str:
    return json.dumps(corpus.to_json(), sort_keys=True, separators=(",", ":")) + "\n"


def save_corpus(corpus: BraceCorpus, path: str | Path) -> None:
    Path(path).write_text(corpus_dumps(corpus))


def corpus_from_json(data: dict) -> BraceCorpus:
    entries = []
    ids = set()
    for rec in data["braces"]:
        bid = rec["id"]
        if bid in ids:
            raise ValidationFailed(bid, "duplicate id")
        ids.add(bid)
        try:
            b = validate_skew_brace(rec["add"], rec["mul"], labels=rec.get("labels"))
        except ValueError as exc:
            raise ValidationFailed(bid, str(exc)) from exc
        if b.add.table != tuple(map(tuple, rec["add"])) or b.mul.table != tuple(map(tuple, rec["mul"])):
            raise ValidationFailed(bid, "identity is not at index 0")
        entries.append(CorpusEntry(bid, b, rec.get("add_class", ""), rec.get("mul_class", "")))
    return BraceCorpus(entries, data.get("metadata", {}))


def load_corpus(path: str | Path) -> BraceCorpus:
    return corpus_from_json(json.loads(Path(path).read_text()))

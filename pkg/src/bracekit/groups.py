"""Finite groups as explicit operation tables.

Every group has its identity at index 0. Elements are plain ints, subgroups are
sorted tuples of ints bound to their parent by order only.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

DEFAULT_ORDER_BOUND = 64


class GroupError(ValueError):
    """Raised when a table does not define a group."""


class NotAssociative(GroupError):
    def __init__(self, a: int, b: int, c: int):
        super().__init__(f"not associative at ({a}, {b}, {c})")
        self.witness = (a, b, c)


class NoIdentity(GroupError):
    pass


class NoInverse(GroupError):
    def __init__(self, a: int):
        super().__init__(f"element {a} has no inverse")
        self.witness = (a,)


class NotLatin(GroupError):
    def __init__(self, kind: str, index: int):
        super().__init__(f"{kind} {index} is not a permutation")
        self.witness = (kind, index)


class NotSubgroup(GroupError):
    pass


class NotNormal(GroupError):
    def __init__(self, a: int, n: int):
        super().__init__(f"conjugate of {n} by {a} leaves the subgroup")
        self.witness = (a, n)


class NotCoprime(ValueError):
    pass


class OrderBoundExceeded(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    order: int
    table: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    labels: tuple[str, ...] | None = None
    name: str = ""

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}{', name=' + repr(self.name) if self.name else ''})"

    def to_json(self) -> dict:
        out: dict = {"n": self.order, "table": [list(r) for r in self.table]}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        g = validate_group(data["table"], labels=data.get("labels"))
        if g.order != data.get("n", g.order):
            raise GroupError(f"declared n={data['n']} but table has order {g.order}")
        return g


@dataclass(frozen=True)
class Subgroup:
    elements: tuple[int, ...]
    parent_order: int

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._members

    def __iter__(self):
        return iter(self.elements)

    def __le__(self, other: "Subgroup") -> bool:
        return self._members <= other._members

    @property
    def _members(self) -> frozenset:
        # cached on first use; frozen dataclass so go through object.__setattr__
        try:
            return self.__dict__["_set"]
        except KeyError:
            s = frozenset(self.elements)
            object.__setattr__(self, "_set", s)
            return s

    @property
    def is_trivial(self) -> bool:
        return len(self.elements) == 1


@dataclass(frozen=True)
class GroupHom:
    domain_order: int
    codomain_order: int
    image: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.image[a]


@dataclass(frozen=True, eq=False)
class AutGroup:
    """Automorphisms of a group as permutation tuples, identity first."""

    base_order: int
    perms: tuple[tuple[int, ...], ...]
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._index.update({p: i for i, p in enumerate(self.perms)})

    def __len__(self) -> int:
        return len(self.perms)

    def index(self, perm: Sequence[int]) -> int:
        return self._index[tuple(perm)]

    def __contains__(self, perm) -> bool:
        return tuple(perm) in self._index

    def as_group(self, bound: int = 2048) -> FiniteGroup:
        """The composition table of the automorphisms, (f*g)(x) = f(g(x))."""
        k = len(self.perms)
        if k > bound:
            raise OrderBoundExceeded(f"automorphism group of order {k} exceeds {bound}")
        idx = self._index
        table = tuple(
            tuple(idx[tuple(f[x] for x in g)] for g in self.perms) for f in self.perms
        )
        inv = tuple(row.index(0) for row in table)
        return FiniteGroup(k, table, inv, name=f"Aut(order {self.base_order})")


# ---------------------------------------------------------------- construction


def validate_group(table: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                   name: str = "") -> FiniteGroup:
    """Check the group axioms on a square table and relabel so the identity is 0."""
    n = len(table)
    if n == 0:
        raise GroupError("empty table")
    rows = [list(r) for r in table]
    for r in rows:
        if len(r) != n:
            raise GroupError("table is not square")
        for v in r:
            if not isinstance(v, int) or not 0 <= v < n:
                raise GroupError(f"entry {v!r} out of range")
    full = set(range(n))
    for i, r in enumerate(rows):
        if set(r) != full:
            raise NotLatin("row", i)
    for j in range(n):
        if {rows[i][j] for i in range(n)} != full:
            raise NotLatin("column", j)
    e = next((i for i in range(n) if rows[i] == list(range(n))
              and all(rows[j][i] == j for j in range(n))), None)
    if e is None:
        raise NoIdentity("no two-sided identity")
    if e != 0:
        perm = list(range(n))
        perm[0], perm[e] = e, 0
        rows = _relabel_rows(rows, perm)
        if labels is not None:
            labels = list(labels)
            labels[0], labels[e] = labels[e], labels[0]
    inv = []
    for a in range(n):
        b = rows[a].index(0)
        if rows[b][a] != 0:
            raise NoInverse(a)
        inv.append(b)
    for a in range(n):
        ra = rows[a]
        for b in range(n):
            rab = rows[ra[b]]
            rb = rows[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    raise NotAssociative(a, b, c)
    if labels is not None and len(labels) != n:
        raise GroupError("labels length does not match order")
    return FiniteGroup(n, tuple(tuple(r) for r in rows), tuple(inv),
                       tuple(labels) if labels is not None else None, name)


def _relabel_rows(rows, perm):
    """perm[new] = old."""
    n = len(rows)
    pos = [0] * n
    for new, old in enumerate(perm):
        pos[old] = new
    return [[pos[rows[perm[i]][perm[j]]] for j in range(n)] for i in range(n)]


def _trusted(table, name: str = "", labels=None) -> FiniteGroup:
    table = tuple(tuple(r) for r in table)
    inv = tuple(r.index(0) for r in table)
    return FiniteGroup(len(table), table, inv, tuple(labels) if labels else None, name)


def relabel(g: FiniteGroup, perm: Sequence[int]) -> FiniteGroup:
    """Return the group with new index i standing for old element perm[i]; perm[0] must be 0."""
    if perm[0] != 0:
        raise ValueError("relabeling must fix the identity")
    labels = [g.labels[p] for p in perm] if g.labels else None
    return _trusted(_relabel_rows(g.table, list(perm)), g.name, labels)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be positive")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return _trusted(table, f"C{n}", [str(a) for a in range(n)])


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    m = h.order
    n = g.order * m
    table = [[g.table[a // m][b // m] * m + h.table[a % m][b % m] for b in range(n)]
             for a in range(n)]
    name = f"{g.name}x{h.name}" if g.name and h.name else ""
    return _trusted(table, name)


def group_from_generators(gens: Sequence, mul, identity, name: str = "",
                          limit: int = 100_000) -> FiniteGroup:
    """Close a set of hashable elements under `mul`; indices follow BFS order."""
    elems = [identity]
    index = {identity: 0}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = mul(x, s)
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
                queue.append(y)
                if len(elems) > limit:
                    raise OrderBoundExceeded(f"closure exceeds {limit} elements")
    table = [[index[mul(x, y)] for y in elems] for x in elems]
    return _trusted(table, name)


def permutation_group(gens: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """Group generated by permutations; product p*q applies q first."""
    gens = [tuple(p) for p in gens]
    degree = len(gens[0])
    return group_from_generators(
        gens, lambda p, q: tuple(p[i] for i in q), tuple(range(degree)), name)


def symmetric_group(k: int) -> FiniteGroup:
    if k < 2:
        return cyclic_group(1)
    gens = [tuple([1, 0] + list(range(2, k))), tuple(list(range(1, k)) + [0])]
    return permutation_group(gens, f"S{k}")


def alternating_group(k: int) -> FiniteGroup:
    if k < 3:
        return cyclic_group(1)
    gens = [_cycle3(k, i, i + 1, i + 2) for i in range(k - 2)]
    return permutation_group(gens, f"A{k}")


def _cycle3(k, a, b, c):
    p = list(range(k))
    p[a], p[b], p[c] = b, c, a
    return tuple(p)


def semidirect_product(n: FiniteGroup, h: FiniteGroup,
                       action: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """N x| H where action[y] is the automorphism of N induced by y in H.

    Pair (x, y) has index x*|H| + y and (x1,y1)(x2,y2) = (x1 * action[y1](x2), y1*y2).
    """
    m = h.order
    size = n.order * m
    table = []
    for a in range(size):
        x1, y1 = divmod(a, m)
        act = action[y1]
        row = n.table[x1]
        hrow = h.table[y1]
        table.append([row[act[b // m]] * m + hrow[b % m] for b in range(size)])
    g = _trusted(table, name)
    return g


def semidirect_cyclic(m: int, k: int, r: int, name: str = "") -> FiniteGroup:
    """C_m x| C_k with the generator of C_k acting as x -> r*x."""
    if pow(r, k, m) != 1 % m:
        raise ValueError("r^k must be 1 mod m")
    action = [[(pow(r, y, m) * x) % m for x in range(m)] for y in range(k)]
    return semidirect_product(cyclic_group(m), cyclic_group(k), action, name)


def dicyclic_group(m: int, name: str = "") -> FiniteGroup:
    """Dic_m of order 4m: <x, y | x^(2m), y^2 = x^m, y x y^-1 = x^-1>."""
    mod = 2 * m

    def mul(p, q):
        a, e = p
        b, f = q
        if e == 0:
            return (a + b) % mod, f
        if f == 0:
            return (a - b) % mod, 1
        return (a - b + m) % mod, 0

    return group_from_generators([(1, 0), (0, 1)], mul, (0, 0), name or f"Dic{m}")


# ---------------------------------------------------------------- basic queries


def is_abelian(g: FiniteGroup) -> bool:
    t = g.table
    return all(t[a][b] == t[b][a] for a in range(g.order) for b in range(a + 1, g.order))


def power(g: FiniteGroup, a: int, k: int) -> int:
    if k < 0:
        a, k = g.inv[a], -k
    out = 0
    row = g.table
    while k:
        if k & 1:
            out = row[out][a]
        a = row[a][a]
        k >>= 1
    return out


def element_order(g: FiniteGroup, a: int) -> int:
    k, x = 1, a
    while x != 0:
        x = g.table[x][a]
        k += 1
    return k


def element_orders(g: FiniteGroup) -> list[int]:
    return [element_order(g, a) for a in range(g.order)]


def commutator(g: FiniteGroup, a: int, b: int) -> int:
    t, inv = g.table, g.inv
    return t[t[t[inv[a]][inv[b]]][a]][b]


def closure(g: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Subgroup generated by `gens`."""
    gens = sorted(set(gens) - {0})
    seen = {0}
    queue = [0]
    t = g.table
    while queue:
        x = queue.pop()
        row = t[x]
        for s in gens:
            y = row[s]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return Subgroup(tuple(sorted(seen)), g.order)


def whole(g: FiniteGroup) -> Subgroup:
    return Subgroup(tuple(range(g.order)), g.order)


def trivial(g: FiniteGroup) -> Subgroup:
    return Subgroup((0,), g.order)


def subgroup(g: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    """Validate that `elements` form a subgroup and wrap them."""
    s = set(elements)
    if 0 not in s:
        raise NotSubgroup("missing identity")
    for a in s:
        if g.inv[a] not in s:
            raise NotSubgroup(f"not closed under inverse at {a}")
        row = g.table[a]
        for b in s:
            if row[b] not in s:
                raise NotSubgroup(f"not closed at ({a}, {b})")
    if g.order % len(s):
        raise NotSubgroup("order does not divide the group order")
    return Subgroup(tuple(sorted(s)), g.order)


def is_normal(g: FiniteGroup, n: Subgroup) -> bool:
    return _normality_witness(g, n) is None


def _normality_witness(g, n):
    t, inv = g.table, g.inv
    for a in range(g.order):
        for x in n.elements:
            if t[t[inv[a]][x]][a] not in n:
                return a, x
    return None


def commutator_subgroup(g: FiniteGroup, a: Subgroup, b: Subgroup) -> Subgroup:
    gens = {commutator(g, x, y) for x in a.elements for y in b.elements}
    return closure(g, gens)


def derived_subgroup(g: FiniteGroup, h: Subgroup | None = None) -> Subgroup:
    h = whole(g) if h is None else h
    return commutator_subgroup(g, h, h)


def derived_series(g: FiniteGroup, h: Subgroup | None = None) -> list[Subgroup]:
    """[G, G', G'', ...] ending with the first repeated term (included once)."""
    series = [whole(g) if h is None else h]
    while True:
        nxt = derived_subgroup(g, series[-1])
        if len(nxt) == len(series[-1]):
            return series
        series.append(nxt)


def derived_term(g: FiniteGroup, k: int, h: Subgroup | None = None) -> Subgroup:
    """The k-th derived term with G^(1) = G."""
    if k < 1:
        raise ValueError("derived terms are indexed from 1")
    series = derived_series(g, h)
    return series[min(k, len(series)) - 1]


def derived_length(g: FiniteGroup, h: Subgroup | None = None) -> int | None:
    """Smallest k with G^(k+1) = 1, or None if the group is not solvable."""
    series = derived_series(g, h)
    if not series[-1].is_trivial:
        return None
    return len(series) - 1


def is_solvable(g: FiniteGroup, h: Subgroup | None = None) -> bool:
    return derived_length(g, h) is not None


def lower_central_series(g: FiniteGroup, h: Subgroup | None = None) -> list[Subgroup]:
    top = whole(g) if h is None else h
    series = [top]
    while True:
        nxt = commutator_subgroup(g, series[-1], top)
        if len(nxt) == len(series[-1]):
            return series
        series.append(nxt)


def is_nilpotent(g: FiniteGroup, h: Subgroup | None = None) -> bool:
    return lower_central_series(g, h)[-1].is_trivial


def centralizer(g: FiniteGroup, h: Subgroup, within: Subgroup | None = None) -> Subgroup:
    t = g.table
    pool = range(g.order) if within is None else within.elements
    return Subgroup(tuple(a for a in pool if all(t[a][x] == t[x][a] for x in h.elements)),
                    g.order)


def center(g: FiniteGroup, h: Subgroup | None = None) -> Subgroup:
    h = whole(g) if h is None else h
    return centralizer(g, h, within=h)


def is_cyclic(g: FiniteGroup, h: Subgroup | None = None) -> bool:
    return cyclic_generator(g, h) is not None


def cyclic_generator(g: FiniteGroup, h: Subgroup | None = None) -> int | None:
    """Least element generating `h` (default: all of g), or None."""
    elems = range(g.order) if h is None else h.elements
    size = g.order if h is None else len(h)
    for a in elems:
        if element_order(g, a) == size:
            return a
    return None


def restrict(g: FiniteGroup, h: Subgroup) -> FiniteGroup:
    """The subgroup `h` as a group in its own right, relabeled in increasing order."""
    pos = {x: i for i, x in enumerate(h.elements)}
    table = [[pos[g.table[a][b]] for b in h.elements] for a in h.elements]
    labels = [g.labels[a] for a in h.elements] if g.labels else None
    return _trusted(table, labels=labels)


def quotient(g: FiniteGroup, n: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """g/n on minimal coset representatives, with the projection."""
    w = _normality_witness(g, n)
    if w is not None:
        raise NotNormal(*w)
    coset_of = [-1] * g.order
    reps = []
    for a in range(g.order):
        if coset_of[a] < 0:
            k = len(reps)
            reps.append(a)
            for x in n.elements:
                coset_of[g.table[a][x]] = k
    table = [[coset_of[g.table[r][s]] for s in reps] for r in reps]
    q = _trusted(table)
    return q, GroupHom(g.order, q.order, tuple(coset_of))


def is_hom(g: FiniteGroup, h: FiniteGroup, image: Sequence[int]) -> bool:
    if image[0] != 0:
        return False
    gt, ht = g.table, h.table
    return all(image[gt[a][b]] == ht[image[a]][image[b]]
               for a in range(g.order) for b in range(g.order))


def kernel(g: FiniteGroup, hom: GroupHom) -> Subgroup:
    return Subgroup(tuple(a for a in range(g.order) if hom.image[a] == 0), g.order)


# ---------------------------------------------------------------- subgroups lattice


def cyclic_subgroups(g: FiniteGroup) -> list[Subgroup]:
    seen = {}
    for a in range(g.order):
        s = closure(g, [a])
        seen.setdefault(s.elements, s)
    return sorted(seen.values(), key=lambda s: (len(s), s.elements))


def all_subgroups(g: FiniteGroup, bound: int = DEFAULT_ORDER_BOUND) -> list[Subgroup]:
    """Every subgroup, as joins of cyclic subgroups, sorted by size then elements."""
    if g.order > bound:
        raise OrderBoundExceeded(f"order {g.order} exceeds {bound}")
    cyc = cyclic_subgroups(g)
    found = {s.elements: s for s in cyc}
    layer = list(cyc)
    while layer:
        new = []
        for s in layer:
            for c in cyc:
                if c <= s:
                    continue
                j = closure(g, s.elements + c.elements)
                if j.elements not in found:
                    found[j.elements] = j
                    new.append(j)
        layer = new
    return sorted(found.values(), key=lambda s: (len(s), s.elements))


def generating_sequence(g: FiniteGroup) -> list[int]:
    """A short generating sequence: repeatedly take an element of largest order outside."""
    orders = element_orders(g)
    by_order = sorted(range(g.order), key=lambda a: (-orders[a], a))
    gens: list[int] = []
    current = {0}
    while len(current) < g.order:
        a = next(x for x in by_order if x not in current)
        gens.append(a)
        current = set(closure(g, gens).elements)
    return gens


# ---------------------------------------------------------------- homomorphism search


def _iso_search(g: FiniteGroup, h: FiniteGroup, *, first_only: bool):
    """Injective homomorphisms g -> h (bijective when orders agree), by generator images."""
    gens = generating_sequence(g)
    gord = element_orders(g)
    hord = element_orders(h)
    gt, ht = g.table, h.table

    # layers[k]: elements newly reached once generator k is added, with (parent, gen)
    layers = []
    reached = {0}
    order_list = [0]
    for k in range(len(gens)):
        new = []
        frontier = deque(order_list)
        local = set(reached)
        while frontier:
            x = frontier.popleft()
            for j in range(k + 1):
                y = gt[x][gens[j]]
                if y not in local:
                    local.add(y)
                    new.append((y, x, j))
                    frontier.append(y)
        layers.append(new)
        reached = local
        order_list = order_list + [y for y, _, _ in new]

    results = []
    image = [-1] * g.order
    image[0] = 0
    used = {0}
    imgs = [0] * len(gens)

    def extend(k):
        if k == len(gens):
            results.append(tuple(image))
            return first_only
        target = gord[gens[k]]
        for cand in range(h.order):
            if hord[cand] != target or cand in used:
                continue
            imgs[k] = cand
            assigned = []
            ok = True
            for y, x, j in layers[k]:
                v = ht[image[x]][imgs[j]]
                if v in used:
                    ok = False
                    break
                image[y] = v
                used.add(v)
                assigned.append(y)
            if ok:
                # every edge x*g_j inside the subgroup generated so far must be consistent
                members = [0] + [y for lay in layers[:k + 1] for y, _, _ in lay]
                for x in members:
                    ix = image[x]
                    row = gt[x]
                    for j in range(k + 1):
                        if image[row[gens[j]]] != ht[ix][imgs[j]]:
                            ok = False
                            break
                    if not ok:
                        break
            if ok and extend(k + 1):
                return True
            for y in assigned:
                used.discard(image[y])
                image[y] = -1
        return False

    extend(0)
    return results


def isomorphism(g: FiniteGroup, h: FiniteGroup) -> tuple[int, ...] | None:
    """An isomorphism g -> h as an image array, or None."""
    if g.order != h.order or sorted(element_orders(g)) != sorted(element_orders(h)):
        return None
    found = _iso_search(g, h, first_only=True)
    return found[0] if found else None


def is_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    return isomorphism(g, h) is not None


def isomorphisms(g: FiniteGroup, h: FiniteGroup) -> list[tuple[int, ...]]:
    if g.order != h.order:
        return []
    return _iso_search(g, h, first_only=False)


def automorphism_group(g: FiniteGroup, bound: int = DEFAULT_ORDER_BOUND) -> AutGroup:
    if g.order > bound:
        raise OrderBoundExceeded(f"order {g.order} exceeds {bound}")
    perms = sorted(_iso_search(g, g, first_only=False))
    ident = tuple(range(g.order))
    perms.remove(ident)
    return AutGroup(g.order, tuple([ident] + perms))


def automorphisms_exhaustive(g: FiniteGroup) -> list[tuple[int, ...]]:
    """All automorphisms by scanning every bijection fixing 0; only for tiny groups."""
    if g.order > 8:
        raise OrderBoundExceeded("exhaustive search is limited to order 8")
    out = []
    for rest in itertools.permutations(range(1, g.order)):
        p = (0,) + rest
        if is_hom(g, g, p):
            out.append(p)
    return out


def is_characteristic(g: FiniteGroup, h: Subgroup, auts: AutGroup | None = None) -> bool:
    auts = automorphism_group(g) if auts is None else auts
    members = set(h.elements)
    return all(all(p[x] in members for x in h.elements) for p in auts.perms)


def characteristic_subgroups(g: FiniteGroup, auts: AutGroup | None = None,
                             bound: int = DEFAULT_ORDER_BOUND) -> list[Subgroup]:
    auts = automorphism_group(g, bound) if auts is None else auts
    return [s for s in all_subgroups(g, bound) if is_characteristic(g, s, auts)]


def multiplicative_order(n: int, k: int) -> int:
    """Least t >= 1 with k**t == 1 (mod n)."""
    if n < 2:
        raise ValueError("modulus must be at least 2")
    if math.gcd(k, n) != 1:
        raise NotCoprime(f"gcd({k}, {n}) != 1")
    t, x = 1, k % n
    while x != 1:
        x = x * k % n
        t += 1
    return t


# ---------------------------------------------------------------- permutation groups


def _compose(f, g):
    return tuple(f[x] for x in g)


def _perm_inverse(f):
    out = [0] * len(f)
    for i, y in enumerate(f):
        out[y] = i
    return tuple(out)


def perm_closure(gens: Iterable[Sequence[int]], degree: int) -> set:
    ident = tuple(range(degree))
    gens = [tuple(g) for g in gens]
    seen = {ident}
    queue = [ident]
    while queue:
        x = queue.pop()
        for s in gens:
            y = _compose(x, s)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def perm_generators(elements: Iterable[Sequence[int]], degree: int) -> list:
    """Greedy generating set: keep an element whenever it lies outside the current closure."""
    gens: list = []
    current = {tuple(range(degree))}
    for p in sorted(tuple(e) for e in elements):
        if p not in current:
            gens.append(p)
            current = perm_closure(gens, degree)
    return gens


def perm_derived_subgroup(gens: Sequence[Sequence[int]], degree: int) -> set:
    """Normal closure of the generator commutators, which is the derived subgroup."""
    gens = [tuple(g) for g in gens]
    invs = [_perm_inverse(g) for g in gens]
    ident = tuple(range(degree))
    normal_gens = sorted({_compose(_compose(_compose(invs[i], invs[j]), gens[i]), gens[j])
                          for i in range(len(gens)) for j in range(len(gens))} - {ident})
    members = perm_closure(normal_gens, degree)
    i = 0
    # N is normal once every generator of N conjugated by every generator of H stays in N
    while i < len(normal_gens):
        c = normal_gens[i]
        for g, gi in zip(gens, invs):
            conj = _compose(_compose(gi, c), g)
            if conj not in members:
                normal_gens.append(conj)
                members = perm_closure(normal_gens, degree)
        i += 1
    return members


def perm_derived_length(elements: Iterable[Sequence[int]], degree: int) -> int | None:
    """Derived length of a permutation group given by its elements; None if not solvable."""
    current = {tuple(e) for e in elements}
    length = 0
    while len(current) > 1:
        nxt = perm_derived_subgroup(perm_generators(current, degree), degree)
        if len(nxt) == len(current):
            return None
        current = nxt
        length += 1
    return length


def aut_derived_length(auts: AutGroup, table_bound: int = 1024) -> int | None:
    """Derived length of an automorphism group; uses its table when small enough."""
    if len(auts) <= table_bound:
        return derived_length(auts.as_group())
    return perm_derived_length(auts.perms, auts.base_order)

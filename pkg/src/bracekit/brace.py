"""Skew braces: validation, lambda maps and the maps built from them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from . import groups as G
from .groups import AutGroup, FiniteGroup, GroupHom, Subgroup


class BraceError(ValueError):
    pass


class AxiomFails(BraceError):
    def __init__(self, a: int, b: int, c: int):
        super().__init__(f"brace axiom fails at (a, b, c) = ({a}, {b}, {c})")
        self.witness = (a, b, c)


class NotCharacteristic(BraceError):
    pass


class ClosureFails(BraceError):
    def __init__(self, witness):
        super().__init__(f"subset not closed under the multiplication: {witness}")
        self.witness = witness


class Check(NamedTuple):
    ok: bool
    witness: tuple | None = None


@dataclass(frozen=True, eq=False)
class SkewBrace:
    add: FiniteGroup
    mul: FiniteGroup
    name: str = ""

    @property
    def order(self) -> int:
        return self.add.order

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SkewBrace):
            return NotImplemented
        return self.add.table == other.add.table and self.mul.table == other.mul.table

    def __hash__(self) -> int:
        return hash((self.add.table, self.mul.table))

    def __repr__(self) -> str:
        return f"SkewBrace(order={self.order}{', name=' + repr(self.name) if self.name else ''})"

    def to_json(self) -> dict:
        out = {"n": self.order, "add": [list(r) for r in self.add.table],
               "mul": [list(r) for r in self.mul.table]}
        if self.add.labels is not None:
            out["labels"] = list(self.add.labels)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SkewBrace":
        b = validate_skew_brace(data["add"], data["mul"], labels=data.get("labels"))
        if "n" in data and data["n"] != b.order:
            raise BraceError(f"declared n={data['n']} but tables have order {b.order}")
        return b


@dataclass(frozen=True)
class LambdaMap:
    actor: int
    perm: tuple[int, ...]


def eq1_witness(add: FiniteGroup, mul: FiniteGroup) -> tuple[int, int, int] | None:
    """Least (a, b, c) with a*(b+c) != (a*b) - a + (a*c), or None."""
    at, mt, ainv = add.table, mul.table, add.inv
    n = add.order
    for a in range(n):
        ma = mt[a]
        na = ainv[a]
        for b in range(n):
            left_part = at[ma[b]][na]
            ab = at[b]
            for c in range(n):
                if ma[ab[c]] != at[left_part][ma[c]]:
                    return a, b, c
    return None


def validate_skew_brace(add_table: Sequence[Sequence[int]], mul_table: Sequence[Sequence[int]],
                        labels: Sequence[str] | None = None, name: str = "") -> SkewBrace:
    """Validate both group tables and the brace axiom; the shared identity becomes index 0."""
    add = G.validate_group(add_table, labels=labels)
    mul = G.validate_group(mul_table)
    if mul.order != add.order:
        raise BraceError("tables have different orders")
    # validate_group swaps each identity into index 0; equal identities mean equal swaps
    if _raw_identity(add_table) != _raw_identity(mul_table):
        raise AxiomFails(*eq1_witness(_raw(add_table), _raw(mul_table)))
    w = eq1_witness(add, mul)
    if w is not None:
        raise AxiomFails(*w)
    return SkewBrace(add, mul, name)


def _raw_identity(table) -> int:
    n = len(table)
    return next(i for i in range(n) if list(table[i]) == list(range(n)))


def _raw(table) -> FiniteGroup:
    # table already known to be a group; keep its labeling as is
    t = tuple(tuple(r) for r in table)
    e = _raw_identity(t)
    return FiniteGroup(len(t), t, tuple(r.index(e) for r in t))


def trivial_brace(g: FiniteGroup) -> SkewBrace:
    return SkewBrace(g, g, f"trivial({g.name})" if g.name else "")


def from_lambda(add: FiniteGroup, lambdas: Sequence[Sequence[int]]) -> SkewBrace:
    """Brace with a*b = a + lambda_a(b); lambdas must already satisfy the brace conditions."""
    at = add.table
    n = add.order
    table = [[at[a][lambdas[a][b]] for b in range(n)] for a in range(n)]
    return SkewBrace(add, G._trusted(table))


def lambda_map(A: SkewBrace, a: int) -> LambdaMap:
    at, mt, ainv = A.add.table, A.mul.table, A.add.inv
    row = at[ainv[a]]
    perm = tuple(row[mt[a][x]] for x in range(A.order))
    assert G.is_hom(A.add, A.add, perm), f"lambda_{a} is not an automorphism"
    return LambdaMap(a, perm)


def lambda_perms(A: SkewBrace) -> list[tuple[int, ...]]:
    at, mt, ainv = A.add.table, A.mul.table, A.add.inv
    n = A.order
    return [tuple(at[ainv[a]][mt[a][x]] for x in range(n)) for a in range(n)]


def check_lambda_hom(A: SkewBrace) -> Check:
    """lambda_(a*b) == lambda_a o lambda_b; witness (a, b, x) on failure."""
    lam = lambda_perms(A)
    mt = A.mul.table
    n = A.order
    for a in range(n):
        la = lam[a]
        for b in range(n):
            lab = lam[mt[a][b]]
            lb = lam[b]
            for x in range(n):
                if lab[x] != la[lb[x]]:
                    return Check(False, (a, b, x))
    return Check(True)


def check_lambda_automorphisms(A: SkewBrace) -> Check:
    for a, p in enumerate(lambda_perms(A)):
        if not G.is_hom(A.add, A.add, p) or len(set(p)) != A.order:
            return Check(False, (a,))
    return Check(True)


def check_eq2_eq3(A: SkewBrace) -> Check:
    """a*b == a + lambda_a(b) and a^-1 == -lambda_(a^-1)(a) for all a, b."""
    lam = lambda_perms(A)
    at, mt = A.add.table, A.mul.table
    n = A.order
    for a in range(n):
        for b in range(n):
            if mt[a][b] != at[a][lam[a][b]]:
                return Check(False, ("eq2", a, b))
    for a in range(n):
        ai = A.mul.inv[a]
        if ai != A.add.inv[lam[ai][a]]:
            return Check(False, ("eq3", a))
    return Check(True)


def add_commutator(A: SkewBrace, a: int, b: int) -> int:
    return G.commutator(A.add, a, b)


def mul_commutator(A: SkewBrace, a: int, b: int) -> int:
    return G.commutator(A.mul, a, b)


def substructure_witness(A: SkewBrace, elements: Sequence[int]):
    """First failure of closure under multiplication or multiplicative inverse, or None."""
    members = set(elements)
    for a in elements:
        if A.mul.inv[a] not in members:
            return ("inverse", a)
        for b in elements:
            if A.mul.table[a][b] not in members:
                return ("product", a, b)
    return None


def subbrace_from_characteristic(A: SkewBrace, B: Subgroup,
                                 auts: AutGroup | None = None) -> SkewBrace:
    """Restrict A to a characteristic subgroup of its additive group."""
    auts = G.automorphism_group(A.add) if auts is None else auts
    if not G.is_characteristic(A.add, B, auts):
        raise NotCharacteristic("subgroup is not characteristic in the additive group")
    w = substructure_witness(A, B.elements)
    if w is not None:
        raise ClosureFails(w)
    add = G.restrict(A.add, B)
    mul = G.restrict(A.mul, B)
    sub = SkewBrace(add, mul)
    w = eq1_witness(add, mul)
    if w is not None:  # pragma: no cover - restriction of a valid brace
        raise AxiomFails(*w)
    return sub


@dataclass(frozen=True)
class PsiHom:
    """The map A_mul -> Aut(A_add / B), a -> (t + B -> lambda_a(t) + B)."""

    quotient: FiniteGroup
    projection: GroupHom
    auts: AutGroup
    image: tuple[int, ...]  # index into auts.perms, one per element of A
    kernel: Subgroup


def psi_hom(A: SkewBrace, B: Subgroup, add_auts: AutGroup | None = None) -> PsiHom:
    add_auts = G.automorphism_group(A.add) if add_auts is None else add_auts
    if not G.is_characteristic(A.add, B, add_auts):
        raise NotCharacteristic("subgroup is not characteristic in the additive group")
    q, proj = G.quotient(A.add, B)
    qauts = G.automorphism_group(q)
    reps = [proj.image.index(k) for k in range(q.order)]
    image = []
    for lam in lambda_perms(A):
        perm = tuple(proj.image[lam[r]] for r in reps)
        image.append(qauts.index(perm))
    ker = Subgroup(tuple(a for a in range(A.order) if image[a] == 0), A.order)
    return PsiHom(q, proj, qauts, tuple(image), ker)

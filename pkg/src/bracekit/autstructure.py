"""Closed forms for Aut(Z_n) and Aut(Z_2 x Z_2^n), plus abelian invariants of tables."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from . import groups as G
from .groups import FiniteGroup


class NotAbelian(ValueError):
    pass


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors d1 | d2 | ... | dk, each at least 2."""

    factors: tuple[int, ...] = ()

    def __post_init__(self):
        f = self.factors
        if any(d < 2 for d in f) or any(f[i + 1] % f[i] for i in range(len(f) - 1)):
            raise ValueError(f"not an invariant-factor chain: {f}")

    @property
    def order(self) -> int:
        out = 1
        for d in self.factors:
            out *= d
        return out

    @property
    def is_cyclic(self) -> bool:
        return len(self.factors) <= 1

    def __str__(self) -> str:
        return " x ".join(f"Z{d}" for d in self.factors) or "1"


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariants_from_cyclic_factors(orders) -> AbelianInvariants:
    """Invariant factors of a direct product of cyclic groups of the given orders."""
    by_prime: dict[int, list[int]] = defaultdict(list)
    for m in orders:
        for p, e in factorize(m).items():
            by_prime[p].append(p ** e)
    k = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * k
    for powers in by_prime.values():
        powers.sort(reverse=True)
        for i, q in enumerate(powers):
            factors[i] *= q
    return AbelianInvariants(tuple(sorted(factors)))


def aut_prime_power_cyclic_factors(p: int, e: int) -> list[int]:
    """Orders of cyclic factors of Aut(Z_(p^e))."""
    if p == 2:
        if e == 1:
            return []
        if e == 2:
            return [2]
        return [2, 2 ** (e - 2)]
    return [p ** (e - 1) * (p - 1)]


def aut_cyclic_invariants(n: int) -> AbelianInvariants:
    """Invariant factors of Aut(Z_n), prime power by prime power."""
    if n < 1:
        raise ValueError("n must be positive")
    cyc = []
    for p, e in factorize(n).items():
        cyc.extend(aut_prime_power_cyclic_factors(p, e))
    return invariants_from_cyclic_factors(cyc)


def abelian_invariants_of(g: FiniteGroup) -> AbelianInvariants:
    """Split off a cyclic factor of largest order, pass to the quotient, repeat."""
    if not G.is_abelian(g):
        raise NotAbelian("group is not abelian")
    factors = []
    while g.order > 1:
        orders = G.element_orders(g)
        top = max(orders)
        x = orders.index(top)
        factors.append(top)
        g, _ = G.quotient(g, G.closure(g, [x]))
    return AbelianInvariants(tuple(reversed(factors)))


def aut_order_Z2xZ2n(n: int) -> int:
    """|Aut(Z_2 x Z_(2^n))|."""
    if n < 1:
        raise ValueError("n must be positive")
    return 6 if n == 1 else 2 ** (n + 1)


def brute_force_aut_invariants(n: int) -> AbelianInvariants:
    """Invariants of the automorphism group of Z_n computed from its composition table."""
    return abelian_invariants_of(G.automorphism_group(G.cyclic_group(n)).as_group())

"""Mechanical checks of the coincidence results for skew braces.

Each check recomputes both sides from the tables and returns a VerifierReport.
A report with ``hypotheses_hold = False`` is vacuous: its conclusion is still
reported but carries no weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import groups as G
from .autstructure import factorize
from .brace import (BraceError, NotCharacteristic, SkewBrace, lambda_perms,
                    subbrace_from_characteristic, substructure_witness)
from .groups import FiniteGroup, Subgroup
from .words import (ArityTooLarge, GroupWord, derived_word, derived_word_set, verbal_subgroup)

STATEMENTS = ("Lemma21", "Prop31", "Cor32", "Prop44", "Cor45", "Thm51", "Thm52")
PROP31_MAX_K = 4


class NotCyclic(ValueError):
    pass


@dataclass
class VerifierReport:
    statement_id: str
    hypotheses_hold: bool
    conclusion_holds: bool
    parameters: dict = field(default_factory=dict)
    witness: list | None = None
    empirical_bounds: dict | None = None
    flags: list[str] = field(default_factory=list)
    brace_id: str = ""

    def __post_init__(self):
        if self.statement_id not in STATEMENTS:
            raise ValueError(f"unknown statement {self.statement_id!r}")
        if (self.witness is None) != self.conclusion_holds:
            raise ValueError("a witness must accompany exactly the failed conclusions")

    @property
    def vacuous(self) -> bool:
        return not self.hypotheses_hold

    @property
    def failed(self) -> bool:
        return self.hypotheses_hold and not self.conclusion_holds

    def to_json(self) -> dict:
        return {
            "brace_id": self.brace_id,
            "statement_id": self.statement_id,
            "hypotheses_hold": self.hypotheses_hold,
            "conclusion_holds": self.conclusion_holds,
            "vacuous": self.vacuous,
            "parameters": self.parameters,
            "witness": self.witness,
            "empirical_bounds": self.empirical_bounds,
            "flags": self.flags,
        }


# W(Aut(Q)) depends only on the quotient table; shared across braces in one process
_AUT_VERBAL_CACHE: dict = {}


class BraceContext:
    """Per-brace caches shared by all checks on one brace."""

    def __init__(self, A: SkewBrace, brace_id: str = ""):
        self.A = A
        self.brace_id = brace_id
        self._add_auts = None
        self._char = None
        self._lam = None
        self._quot: dict = {}
        self._mul_verbal: dict = {}
        self.mul_series = G.derived_series(A.mul)
        self.add_series = G.derived_series(A.add)

    @property
    def add_auts(self) -> G.AutGroup:
        if self._add_auts is None:
            self._add_auts = G.automorphism_group(self.A.add)
        return self._add_auts

    @property
    def lambdas(self):
        if self._lam is None:
            self._lam = lambda_perms(self.A)
        return self._lam

    def characteristic_subgroups(self) -> list[Subgroup]:
        if self._char is None:
            self._char = G.characteristic_subgroups(self.A.add, self.add_auts)
        return self._char

    def is_characteristic(self, B: Subgroup) -> bool:
        if self._char is not None:
            return any(B.elements == c.elements for c in self._char)
        return G.is_characteristic(self.A.add, B, self.add_auts)

    def quotient_data(self, B: Subgroup):
        """(quotient, projection, Aut(quotient)) for a normal subgroup of the additive group."""
        key = B.elements
        if key not in self._quot:
            q, proj = G.quotient(self.A.add, B)
            self._quot[key] = (q, proj, G.automorphism_group(q))
        return self._quot[key]

    def mul_term(self, k: int) -> Subgroup:
        return self.mul_series[min(k, len(self.mul_series)) - 1]

    def add_term(self, k: int) -> Subgroup:
        return self.add_series[min(k, len(self.add_series)) - 1]

    def mul_verbal(self, words: Sequence[GroupWord]) -> Subgroup:
        key = tuple(words)
        if key not in self._mul_verbal:
            self._mul_verbal[key] = verbal(self.A.mul, words)
        return self._mul_verbal[key]

    def aut_verbal_trivial(self, B: Subgroup, words: Sequence[GroupWord]) -> tuple[bool, int]:
        """Whether W(Aut(A/B)) = 1, and the order of W(Aut(A/B)) when computed by table."""
        q, _, auts = self.quotient_data(B)
        key = (q.table, tuple(words))
        if key not in _AUT_VERBAL_CACHE:
            _AUT_VERBAL_CACHE[key] = aut_verbal_trivial(auts, words)
        return _AUT_VERBAL_CACHE[key]


def _derived_index(words: Sequence[GroupWord]) -> int | None:
    """k when the word set is exactly {delta_k}, else None."""
    if len(words) != 1:
        return None
    for k in range(1, 8):
        if derived_word(k) == words[0]:
            return k
    return None


def verbal(g: FiniteGroup, words: Sequence[GroupWord]) -> Subgroup:
    """W(g) by word evaluation; delta_k sets beyond the scan budget use G^(k) directly."""
    try:
        return verbal_subgroup(g, words)
    except ArityTooLarge:
        k = _derived_index(words)
        if k is None:
            raise
        return G.derived_term(g, k)


def aut_verbal_trivial(auts: G.AutGroup, words: Sequence[GroupWord]) -> tuple[bool, int]:
    if len(auts) <= 1024:
        w = verbal(auts.as_group(), words)
        return w.is_trivial, len(w)
    k = _derived_index(words)
    if k is None:
        raise G.OrderBoundExceeded(f"automorphism group of order {len(auts)} is too large")
    dl = G.perm_derived_length(auts.perms, auts.base_order)
    trivial = dl is not None and dl < k
    return trivial, 1 if trivial else None


def _coincidence_witness(A: SkewBrace, proj: Sequence[int], elements: Sequence[int]):
    """First (a, b) or (a,) where a*b and a+b, or a^-1 and -a, differ modulo the kernel of proj."""
    at, mt = A.add.table, A.mul.table
    ainv, minv = A.add.inv, A.mul.inv
    for a in elements:
        if proj[minv[a]] != proj[ainv[a]]:
            return ["inverse", a]
        for b in elements:
            if proj[mt[a][b]] != proj[at[a][b]]:
                return ["product", a, b]
    return None


def _subset(h: Subgroup, b: Subgroup) -> bool:
    return set(h.elements) <= set(b.elements)


def _ctx(A, ctx) -> BraceContext:
    return BraceContext(A) if ctx is None else ctx


def _report(statement, ctx, hyp, witness, **kw) -> VerifierReport:
    return VerifierReport(statement, hyp, witness is None, witness=witness,
                          brace_id=ctx.brace_id, **kw)


# ---------------------------------------------------------------- statements


def verify_lemma21(A: SkewBrace, B: Subgroup, ctx: BraceContext | None = None) -> VerifierReport:
    """A characteristic subgroup of the additive group is closed under * and inverses."""
    ctx = _ctx(A, ctx)
    hyp = ctx.is_characteristic(B)
    witness = None
    if hyp:
        try:
            subbrace_from_characteristic(A, B, ctx.add_auts)
        except BraceError as exc:
            witness = list(getattr(exc, "witness", [str(exc)]))
    else:
        w = substructure_witness(A, B.elements)
        witness = list(w) if w else None
    return _report("Lemma21", ctx, hyp, witness, parameters={"order_B": len(B)})


def verify_prop31(A: SkewBrace, B: Subgroup, W: Sequence[GroupWord],
                  ctx: BraceContext | None = None) -> VerifierReport:
    ctx = _ctx(A, ctx)
    if not ctx.is_characteristic(B):
        raise NotCharacteristic("B is not characteristic in the additive group")
    q, proj, qauts = ctx.quotient_data(B)
    hyp, w_aut_order = ctx.aut_verbal_trivial(B, W)
    WA = ctx.mul_verbal(W)
    witness = _coincidence_witness(A, proj.image, WA.elements)
    # the proof puts W(A_mul) inside the kernel of psi
    lam = ctx.lambdas
    reps = [proj.image.index(k) for k in range(q.order)]
    in_kernel = all(all(proj.image[lam[a][r]] == proj.image[r] for r in reps) for a in WA.elements)
    flags = []
    if hyp and not in_kernel:
        flags.append("W(A_mul) not inside ker(psi)")
        if witness is None:
            witness = ["kernel"]
    params = {"order_B": len(B), "order_quotient": q.order, "order_aut_quotient": len(qauts),
              "order_W_aut": w_aut_order, "order_W_mul": len(WA),
              "words": [str(w) for w in W]}
    k = _derived_index(W)
    if k is not None:
        params["k"] = k
    return _report("Prop31", ctx, hyp, witness, parameters=params, flags=flags)


def verify_cor32(A: SkewBrace, B: Subgroup, ctx: BraceContext | None = None) -> VerifierReport:
    ctx = _ctx(A, ctx)
    if not ctx.is_characteristic(B):
        raise NotCharacteristic("B is not characteristic in the additive group")
    q, proj, qauts = ctx.quotient_data(B)
    n = next((i for i, h in enumerate(ctx.add_series, 1) if _subset(h, B)), None)
    m = G.aut_derived_length(qauts)
    j = next((i for i, h in enumerate(ctx.mul_series, 1) if _subset(h, B)), None)
    params = {"order_B": len(B), "n": n, "m": m, "order_aut_quotient": len(qauts)}
    bounds = {"min_j": j}
    flags = []
    if n is None:
        flags.append("no derived term of the additive group lies in B")
    if m is None:
        flags.append("Aut(A/B) is not solvable")
    if n is None or m is None:
        return _report("Cor32", ctx, False, None, parameters=params, empirical_bounds=bounds,
                       flags=flags + ["conclusion not evaluated"])
    witness = None
    target = ctx.mul_term(m + n)
    if not _subset(target, B):
        witness = ["inclusion", m + n, [x for x in target.elements if x not in B][0]]
    else:
        # induction step of the proof: image of A_mul^(m+k) inside image of A_add^(k)
        img = proj.image
        for k in range(1, n + 1):
            lhs = {img[x] for x in ctx.mul_term(m + k).elements}
            rhs = {img[x] for x in ctx.add_term(k).elements}
            if not lhs <= rhs:
                witness = ["induction", k]
                break
    if j is not None and j > m + n:  # pragma: no cover - implied by the inclusion
        flags.append("empirical index exceeds m+n")
    return _report("Cor32", ctx, True, witness, parameters=params, empirical_bounds=bounds,
                   flags=flags)


def _prime_parts(order: int, include_trivial_two: bool) -> list[tuple[int, int]]:
    parts = sorted(factorize(order).items())
    if include_trivial_two and 2 not in dict(parts):
        parts = [(2, 0)] + parts
    return parts


def _conjugation_image(g: FiniteGroup, a: int, d: Subgroup) -> tuple[int, ...]:
    t, inv = g.table, g.inv
    return tuple(t[t[inv[a]][y]][a] for y in d.elements)


def prop44_data(ctx: BraceContext, D: Subgroup, include_trivial_two: bool = False) -> dict:
    """The prime decomposition of D and, per prime, D_i, B_i = C(D_i) and m_i."""
    A = ctx.A
    x = G.cyclic_generator(A.add, D)
    if x is None:
        raise NotCyclic("D is not cyclic")
    if not ctx.is_characteristic(D):
        raise NotCharacteristic("D is not characteristic in the additive group")
    n = len(D)
    parts = []
    for p, alpha in _prime_parts(n, include_trivial_two):
        gen = G.power(A.add, x, n // p ** alpha)
        Di = G.closure(A.add, [gen])
        Bi = G.centralizer(A.add, Di)
        _, proj, qauts = ctx.quotient_data(Bi)
        mi = G.aut_derived_length(qauts)
        # conjugation A_add -> Aut(D_i) has kernel B_i and embeds A/B_i
        images = {}
        injective = True
        for a in range(A.order):
            img = _conjugation_image(A.add, a, Di)
            coset = proj.image[a]
            if images.setdefault(coset, img) != img:
                injective = False
        kernel_ok = all((images[proj.image[a]] == Di.elements) == (a in Bi)
                        for a in range(A.order))
        distinct = len(set(images.values())) == len(images)
        phi = (p - 1) * p ** (alpha - 1) if alpha else 1
        parts.append({"p": p, "alpha": alpha, "D_i": Di, "B_i": Bi, "m_i": mi,
                      "B_i_characteristic": ctx.is_characteristic(Bi),
                      "embeds": injective and kernel_ok and distinct and phi % len(images) == 0})
    B = G.centralizer(A.add, D)
    inter = set(range(A.order))
    for part in parts:
        inter &= set(part["B_i"].elements)
    return {"generator": x, "order": n, "parts": parts, "B": B,
            "intersection_ok": inter == set(B.elements)}


def _prop44_m(parts) -> int | None:
    ms = [part["m_i"] for part in parts]
    if any(mi is None for mi in ms):
        return None
    return max([1] + ms)


def verify_prop44(A: SkewBrace, D: Subgroup, ctx: BraceContext | None = None) -> VerifierReport:
    ctx = _ctx(A, ctx)
    data = prop44_data(ctx, D)
    if len(data["parts"]) and 2 not in [p["p"] for p in data["parts"]]:
        # the decomposition with a trivial 2-part must give the same intersection
        alt = prop44_data(ctx, D, include_trivial_two=True)
        if alt["intersection_ok"] != data["intersection_ok"]:  # pragma: no cover
            raise AssertionError("intersection changes with a trivial 2-part")
    parts = data["parts"]
    m = _prop44_m(parts)
    B = data["B"]
    _, proj, _ = ctx.quotient_data(B)
    params = {"order_D": data["order"], "order_B": len(B), "m": m,
              "primes": [p["p"] for p in parts], "alphas": [p["alpha"] for p in parts],
              "m_i": [p["m_i"] for p in parts]}
    flags = []
    if not all(p["embeds"] for p in parts):
        flags.append("A/B_i does not embed in Aut(D_i)")
    if not all(p["B_i_characteristic"] for p in parts):
        flags.append("B_i not characteristic")
    empirical = next((j for j in range(1, len(ctx.mul_series) + 1)
                      if _coincidence_witness(A, proj.image, ctx.mul_term(j).elements) is None),
                     None)
    bounds = {"min_m": empirical}
    if m is None:
        flags.append("some Aut(A/B_i) is not solvable")
        return _report("Prop44", ctx, False, None, parameters=params, empirical_bounds=bounds,
                       flags=flags + ["conclusion not evaluated"])
    witness = _coincidence_witness(A, proj.image, ctx.mul_term(m).elements)
    if witness is None and not data["intersection_ok"]:
        witness = ["intersection"]
    if witness is None and "A/B_i does not embed in Aut(D_i)" in flags:
        witness = ["embedding"]
    return _report("Prop44", ctx, True, witness, parameters=params, empirical_bounds=bounds,
                   flags=flags)


def verify_cor45(A: SkewBrace, D: Subgroup, ctx: BraceContext | None = None) -> VerifierReport:
    ctx = _ctx(A, ctx)
    data = prop44_data(ctx, D)
    m = _prop44_m(data["parts"])
    C = data["B"]
    dset = set(D.elements)
    n = next((i for i, h in enumerate(ctx.add_series, 1)
              if dset <= set(G.center(A.add, h).elements)), None)
    j = next((i for i, h in enumerate(ctx.mul_series, 1) if _subset(h, C)), None)
    params = {"order_D": len(D), "order_C": len(C), "m": m, "n": n}
    bounds = {"min_exponent": j}
    flags = []
    if n is None:
        flags.append("D is not central in any derived term of the additive group")
    if m is None:
        flags.append("some Aut(A/B_i) is not solvable")
    if n is None or m is None:
        return _report("Cor45", ctx, False, None, parameters=params, empirical_bounds=bounds,
                       flags=flags + ["conclusion not evaluated"])
    witness = None
    if not _subset(ctx.add_term(n), C):
        witness = ["additive term not in centralizer", n]
    target = ctx.mul_term(m + n)
    if witness is None and not _subset(target, C):
        witness = ["inclusion", m + n, [x for x in target.elements if x not in C][0]]
    return _report("Cor45", ctx, True, witness, parameters=params, empirical_bounds=bounds,
                   flags=flags)


def verify_thm51(A: SkewBrace, ctx: BraceContext | None = None) -> VerifierReport:
    ctx = _ctx(A, ctx)
    hyp = G.is_nilpotent(A.add)
    dl = G.derived_length(A.mul)
    witness = None if dl is not None else ["mul not solvable"]
    return _report("Thm51", ctx, hyp, witness,
                   parameters={"derived_length_mul": dl,
                               "derived_length_add": G.derived_length(A.add)})


def verify_thm52(A: SkewBrace, ctx: BraceContext | None = None) -> VerifierReport:
    ctx = _ctx(A, ctx)
    add = A.add
    D = ctx.add_term(2)
    hyp = G.is_cyclic(add, D)
    dl = G.derived_length(A.mul)
    params = {"order_derived_add": len(D), "derived_length_mul": dl}
    flags: list[str] = []
    if not hyp:
        witness = None if dl is not None else ["mul not solvable"]
        return _report("Thm52", ctx, False, witness, parameters=params,
                       flags=["proof chain not evaluated"])
    witness = None if dl is not None else ["mul not solvable"]
    C = G.centralizer(add, D)
    params["order_C"] = len(C)
    chain = {}
    # [[a,b],c] = 0 on the centralizer of the derived subgroup
    cls2 = next(([a, b, c] for a in C.elements for b in C.elements for c in C.elements
                 if G.commutator(add, G.commutator(add, a, b), c) != 0), None)
    chain["class_two"] = cls2 is None
    if cls2 is not None:
        flags.append(f"open question: [[a,b],c] != 0 at {cls2}")
    chain["C_nilpotent"] = G.is_nilpotent(add, C)
    try:
        sub = subbrace_from_characteristic(A, C, ctx.add_auts)
        chain["C_subbrace"] = True
        chain["C_mul_solvable"] = G.is_solvable(sub.mul)
    except BraceError:
        chain["C_subbrace"] = False
        chain["C_mul_solvable"] = False
    m = _prop44_m(prop44_data(ctx, D)["parts"])
    params["m"] = m
    chain["inclusion"] = m is not None and _subset(ctx.mul_term(m + 2), C)
    params["chain"] = chain
    if witness is None:
        for key in ("C_nilpotent", "C_subbrace", "C_mul_solvable", "inclusion"):
            if not chain[key]:
                witness = ["proof chain", key]
                break
    return _report("Thm52", ctx, True, witness, parameters=params, flags=flags)


# ---------------------------------------------------------------- sweeps


def cyclic_characteristic_subgroups(ctx: BraceContext) -> list[Subgroup]:
    return [s for s in ctx.characteristic_subgroups() if G.is_cyclic(ctx.A.add, s)]


def verify_brace(A: SkewBrace, brace_id: str = "",
                 statements: Iterable[str] = STATEMENTS) -> list[VerifierReport]:
    """Every applicable check on one brace, in a fixed order."""
    ctx = BraceContext(A, brace_id)
    wanted = set(statements)
    out: list[VerifierReport] = []
    char = ctx.characteristic_subgroups()
    cyc = cyclic_characteristic_subgroups(ctx)
    if "Lemma21" in wanted:
        out += [verify_lemma21(A, B, ctx) for B in char]
    if "Prop31" in wanted:
        for B in char:
            for k in range(1, PROP31_MAX_K + 1):
                out.append(verify_prop31(A, B, derived_word_set(k), ctx))
    if "Cor32" in wanted:
        out += [verify_cor32(A, B, ctx) for B in char]
    if "Prop44" in wanted:
        out += [verify_prop44(A, D, ctx) for D in cyc]
    if "Cor45" in wanted:
        out += [verify_cor45(A, D, ctx) for D in cyc]
    if "Thm51" in wanted:
        out.append(verify_thm51(A, ctx))
    if "Thm52" in wanted:
        out.append(verify_thm52(A, ctx))
    return out


@dataclass
class Summary:
    checked: int = 0
    passed: int = 0
    vacuous: int = 0
    failed: int = 0

    def add(self, r: VerifierReport) -> None:
        self.checked += 1
        if r.vacuous:
            self.vacuous += 1
        elif r.conclusion_holds:
            self.passed += 1
        else:
            self.failed += 1

    def line(self) -> str:
        return f"checked/passed/vacuous/failed = {self.checked}/{self.passed}/{self.vacuous}/{self.failed}"


def summarize(reports: Iterable[VerifierReport]) -> Summary:
    s = Summary()
    for r in reports:
        s.add(r)
    return s

import itertools
import json
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bracekit import groups as G
from bracekit.autstructure import aut_cyclic_invariants
from bracekit.smallgroups import MAX_ORDER, by_name, identify, small_group, small_groups
from bracekit.words import derived_word_set, verbal_subgroup


def s3_left_to_right():
    """S3 on {0,1,2} with p*q meaning "apply p, then q"; returns (group, perms)."""
    perms = sorted(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(q[p[x]] for x in range(3))] for q in perms] for p in perms]
    return G.validate_group(table), perms


def check_group_invariants(g):
    n, t, inv = g.order, g.table, g.inv
    assert all(t[0][a] == a and t[a][0] == a for a in range(n))
    assert all(t[a][inv[a]] == 0 and t[inv[a]][a] == 0 for a in range(n))
    for a, b, c in itertools.product(range(n), repeat=3):
        assert t[t[a][b]][c] == t[a][t[b][c]]
    full = list(range(n))
    assert all(sorted(r) == full for r in t)
    assert all(sorted(t[i][j] for i in range(n)) == full for j in range(n))


def all_library_groups():
    return [g for k in range(1, MAX_ORDER + 1) for g in small_groups(k)]


# ---------------------------------------------------------------- validation


def test_validate_trivial():
    g = G.validate_group([[0]])
    assert g.order == 1 and g.inv == (0,)


def test_validate_z4():
    table = [[(a + b) % 4 for b in range(4)] for a in range(4)]
    g = G.validate_group(table)
    assert g.order == 4
    assert g.inv == (0, 3, 2, 1)


def test_validate_rejects_mutated_z4():
    table = [[(a + b) % 4 for b in range(4)] for a in range(4)]
    table[1][1] = 1
    with pytest.raises((G.NotLatin, G.NotAssociative)):
        G.validate_group(table)


def test_validate_latin_but_not_associative():
    # a loop of order 5 that is not a group
    table = [[0, 1, 2, 3, 4],
             [1, 0, 3, 4, 2],
             [2, 4, 0, 1, 3],
             [3, 2, 4, 0, 1],
             [4, 3, 1, 2, 0]]
    with pytest.raises(G.NotAssociative) as exc:
        G.validate_group(table)
    a, b, c = exc.value.witness
    assert table[table[a][b]][c] != table[a][table[b][c]]


def test_validate_no_identity():
    with pytest.raises(G.NoIdentity):
        G.validate_group([[(-a - b) % 3 for b in range(3)] for a in range(3)])


def test_validate_moves_identity_to_zero():
    # Z3 with the identity stored at index 2
    table = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    g = G.validate_group(table, labels=["a", "b", "e"])
    check_group_invariants(g)
    assert g.labels[0] == "e"


def test_validate_rejects_bad_shape():
    with pytest.raises(G.GroupError):
        G.validate_group([[0, 1], [1]])
    with pytest.raises(G.GroupError):
        G.validate_group([[0, 5], [5, 0]])
    with pytest.raises(G.GroupError):
        G.validate_group([])


def test_group_json_round_trip():
    g = G.direct_product(G.cyclic_group(2), G.cyclic_group(3))
    data = json.loads(json.dumps(g.to_json()))
    assert G.FiniteGroup.from_json(data) == g


def test_library_groups_satisfy_invariants():
    for g in all_library_groups():
        if g.order <= 12:
            check_group_invariants(g)


def test_library_identification():
    counts = [len(small_groups(k)) for k in range(1, 17)]
    assert counts == [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14]
    assert identify(G.symmetric_group(3))[:2] == (6, 1)
    assert identify(G.dicyclic_group(2))[2] == "Q8"
    assert identify(G.alternating_group(4))[2] == "A4"
    assert by_name("C2xC2xC2xC2") == small_group(16, 14)


# ---------------------------------------------------------------- constructions


def test_cyclic_examples():
    assert G.cyclic_group(1).order == 1
    assert G.element_order(G.cyclic_group(8), 1) == 8
    assert G.cyclic_group(9).inv[4] == 5


def test_direct_product_examples():
    z5 = G.direct_product(G.cyclic_group(1), G.cyclic_group(5))
    assert G.is_isomorphic(z5, G.cyclic_group(5))
    klein = G.direct_product(G.cyclic_group(2), G.cyclic_group(2))
    assert G.element_orders(klein) == [1, 2, 2, 2]
    z2z4 = G.direct_product(G.cyclic_group(2), G.cyclic_group(4))
    assert Counter(G.element_orders(z2z4)) == Counter([1, 2, 2, 2, 4, 4, 4, 4])
    # pair (x, y) sits at x*|h| + y
    assert z2z4.table[1 * 4 + 3][1 * 4 + 2] == 0 * 4 + 1


def test_constructed_groups_are_groups():
    for g in (G.symmetric_group(4), G.alternating_group(4), G.dicyclic_group(3),
              G.semidirect_cyclic(7, 3, 2)):
        check_group_invariants(g)


# ---------------------------------------------------------------- commutators and series


def test_commutator_examples():
    z6 = G.cyclic_group(6)
    assert all(G.commutator(z6, a, b) == 0 for a in range(6) for b in range(6))
    s3, perms = s3_left_to_right()
    assert all(G.commutator(s3, a, a) == 0 for a in range(6))
    a, b = perms.index((1, 0, 2)), perms.index((2, 1, 0))  # (12), (13)
    c = G.commutator(s3, a, b)
    # (132) sends 1->3, 3->2, 2->1; zero-based 0->2, 2->1, 1->0
    assert perms[c] == (2, 0, 1)


def test_commutator_subgroup_examples(s3, q8):
    z6 = G.cyclic_group(6)
    assert G.derived_subgroup(z6).is_trivial
    assert len(G.derived_subgroup(s3)) == 3
    d = G.derived_subgroup(q8)
    assert len(d) == 2
    assert d == G.center(q8)


def test_derived_series_examples(s3, s4):
    assert [len(h) for h in G.derived_series(G.cyclic_group(6))] == [6, 1]
    assert [len(h) for h in G.derived_series(s3)] == [6, 3, 1]
    assert [len(h) for h in G.derived_series(s4)] == [24, 12, 4, 1]
    a5 = G.alternating_group(5)
    series = G.derived_series(a5)
    assert [len(h) for h in series] == [60]
    last = series[-1]
    assert G.derived_subgroup(a5, last) == last


def test_derived_length_examples(s3):
    assert G.derived_length(G.cyclic_group(1)) == 0
    assert G.derived_length(s3) == 2
    assert G.derived_length(G.alternating_group(5)) is None
    assert not G.is_solvable(G.alternating_group(5))


def test_nilpotent_examples(s3, q8):
    assert G.is_nilpotent(G.cyclic_group(10))
    assert not G.is_nilpotent(s3)
    assert [len(h) for h in G.lower_central_series(s3)] == [6, 3]
    assert G.is_nilpotent(q8)
    assert [len(h) for h in G.lower_central_series(q8)] == [8, 2, 1]


def test_center_centralizer_examples(s3):
    z6 = G.cyclic_group(6)
    assert G.center(z6) == G.whole(z6)
    assert G.centralizer(s3, G.trivial(s3)) == G.whole(s3)
    assert G.center(s3).is_trivial
    c3 = G.derived_subgroup(s3)
    assert G.centralizer(s3, c3) == c3


def test_quotient_examples(s3):
    g = G.dicyclic_group(3)
    q, proj = G.quotient(g, G.trivial(g))
    assert G.is_isomorphic(q, g)
    q, proj = G.quotient(g, G.whole(g))
    assert q.order == 1
    q, proj = G.quotient(s3, G.derived_subgroup(s3))
    assert q == G.cyclic_group(2)
    assert G.is_hom(s3, q, proj.image)


def test_quotient_representatives_are_minimal(s4):
    n = G.derived_subgroup(s4)
    q, proj = G.quotient(s4, n)
    reps = [proj.image.index(k) for k in range(q.order)]
    assert reps == sorted(reps) and reps[0] == 0
    for a in range(s4.order):
        assert reps[proj.image[a]] <= a


def test_quotient_not_normal(s3):
    h = G.closure(s3, [next(a for a in range(6) if G.element_order(s3, a) == 2)])
    with pytest.raises(G.NotNormal) as exc:
        G.quotient(s3, h)
    a, n = exc.value.witness
    assert n in h
    assert s3.table[s3.table[s3.inv[a]][n]][a] not in h


def test_subgroup_validation(s3):
    with pytest.raises(G.NotSubgroup):
        G.subgroup(s3, [0, 1, 2])
    assert len(G.subgroup(s3, G.derived_subgroup(s3).elements)) == 3


# ---------------------------------------------------------------- automorphisms


def test_automorphism_group_examples(klein):
    assert len(G.automorphism_group(G.cyclic_group(1))) == 1
    assert len(G.automorphism_group(G.cyclic_group(2))) == 1
    auts = G.automorphism_group(klein)
    assert len(auts) == 6
    assert G.is_isomorphic(auts.as_group(), G.symmetric_group(3))


def test_automorphism_bound():
    with pytest.raises(G.OrderBoundExceeded):
        G.automorphism_group(G.cyclic_group(65))
    assert len(G.automorphism_group(G.cyclic_group(65), bound=65)) == 48


def test_automorphisms_match_exhaustive_search():
    for k in range(1, 9):
        for g in small_groups(k):
            assert sorted(G.automorphism_group(g).perms) == sorted(G.automorphisms_exhaustive(g))


def test_aut_group_is_a_group():
    for g in small_groups(8) + small_groups(12):
        auts = G.automorphism_group(g)
        perms = set(auts.perms)
        assert len(perms) == len(auts.perms)
        assert auts.perms[0] == tuple(range(g.order))
        for p in auts.perms:
            assert p[0] == 0 and G.is_hom(g, g, p)
        for p, q in itertools.product(auts.perms, repeat=2):
            assert tuple(p[q[x]] for x in range(g.order)) in perms
        check_group_invariants(auts.as_group())


def test_abelian_aut_orders_match_closed_form():
    for n in range(1, 41):
        assert len(G.automorphism_group(G.cyclic_group(n))) == aut_cyclic_invariants(n).order


def test_is_characteristic_examples(klein, s4):
    auts = G.automorphism_group(klein)
    assert G.is_characteristic(klein, G.trivial(klein), auts)
    assert G.is_characteristic(klein, G.whole(klein), auts)
    assert not G.is_characteristic(klein, G.closure(klein, [1]), auts)
    for g in (s4, G.dicyclic_group(3), small_group(16, 3)):
        assert G.is_characteristic(g, G.derived_subgroup(g))


def test_characteristic_subgroups_examples(klein):
    assert G.characteristic_subgroups(G.cyclic_group(1)) == [G.trivial(G.cyclic_group(1))]
    for p in (2, 3, 5, 7, 11, 13):
        zp = G.cyclic_group(p)
        assert G.characteristic_subgroups(zp) == [G.trivial(zp), G.whole(zp)]
    assert G.characteristic_subgroups(klein) == [G.trivial(klein), G.whole(klein)]


def test_subgroup_counts():
    # known subgroup counts
    assert len(G.all_subgroups(G.symmetric_group(4))) == 30
    assert len(G.all_subgroups(G.dicyclic_group(2))) == 6
    assert len(G.all_subgroups(small_group(16, 14))) == 67


def test_multiplicative_order_examples():
    assert G.multiplicative_order(10, 1) == 1
    assert G.multiplicative_order(8, 3) == 2
    assert G.multiplicative_order(32, 3) == 8
    with pytest.raises(G.NotCoprime):
        G.multiplicative_order(12, 9)


def test_perm_derived_length_agrees_with_tables():
    for g in small_groups(8) + small_groups(12) + small_groups(16)[:4]:
        auts = G.automorphism_group(g)
        assert G.perm_derived_length(auts.perms, g.order) == G.derived_length(auts.as_group())


def test_aut_derived_length_large_group():
    # Aut(C2^4) = GL(4,2) has order 20160 and is not solvable
    g = small_group(16, 14)
    auts = G.automorphism_group(g)
    assert len(auts) == 20160
    assert G.aut_derived_length(auts) is None


# ---------------------------------------------------------------- properties


def test_series_stabilize_and_solvable_below_60():
    for g in all_library_groups():
        series = G.derived_series(g)
        assert G.derived_subgroup(g, series[-1]) == series[-1]
        assert G.derived_length(g) is not None


def test_quotient_properties():
    for g in small_groups(8) + small_groups(12):
        for n in G.all_subgroups(g):
            if not G.is_normal(g, n):
                continue
            q, proj = G.quotient(g, n)
            assert q.order * len(n) == g.order
            assert proj.image[0] == 0
            assert G.is_hom(g, q, proj.image)
            assert G.kernel(g, proj) == n


def test_verbal_subgroups_are_characteristic():
    for g in small_groups(8) + small_groups(12):
        auts = G.automorphism_group(g)
        for k in (1, 2, 3):
            assert G.is_characteristic(g, verbal_subgroup(g, derived_word_set(k)), auts)


group_indices = st.integers(1, MAX_ORDER).flatmap(
    lambda k: st.tuples(st.just(k), st.integers(1, len(small_groups(k)))))


@settings(max_examples=40, deadline=None)
@given(group_indices, st.data())
def test_relabeling_preserves_structure(ki, data):
    g = small_group(*ki)
    rest = data.draw(st.permutations(list(range(1, g.order))))
    h = G.relabel(g, [0] + list(rest))
    assert G.is_isomorphic(g, h)
    assert G.derived_length(g) == G.derived_length(h)
    assert G.is_nilpotent(g) == G.is_nilpotent(h)
    assert len(G.center(g)) == len(G.center(h))
    assert Counter(G.element_orders(g)) == Counter(G.element_orders(h))


@settings(max_examples=60, deadline=None)
@given(group_indices, st.data())
def test_closure_is_a_subgroup(ki, data):
    g = small_group(*ki)
    gens = data.draw(st.lists(st.integers(0, g.order - 1), max_size=3))
    h = G.closure(g, gens)
    assert 0 in h and g.order % len(h) == 0
    assert all(g.table[a][b] in h for a in h for b in h)
    assert all(g.inv[a] in h for a in h)
    assert all(x in h for x in gens)
    c = G.centralizer(g, h)
    assert all(g.table[a][x] == g.table[x][a] for a in c for x in h)

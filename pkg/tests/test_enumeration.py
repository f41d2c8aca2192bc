import json
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bracekit import groups as G
from bracekit.brace import (SkewBrace, check_eq2_eq3, check_lambda_hom, trivial_brace,
                            validate_skew_brace)
from bracekit.enumeration import (HolomorphElement, ValidationFailed, _Holomorph,
                                  brace_isomorphic, brace_isomorphism, build_corpus,
                                  corpus_dumps, corpus_from_json, enumerate_braces,
                                  enumerate_braces_direct, isomorphism_classes, load_corpus,
                                  max_order_bound, regular_subgroups, save_corpus)
from bracekit.smallgroups import by_name, small_groups

# isomorphism classes of skew braces of order 1..12, frozen from the direct-search
# oracle (orders <= 8) and the holomorph enumeration; they agree with published tables
EXPECTED_COUNTS = {1: 1, 2: 1, 3: 1, 4: 4, 5: 1, 6: 6, 7: 1, 8: 47, 9: 4, 10: 6, 11: 1, 12: 38}

EPOCH = "1970-01-01T00:00:00+00:00"


def relabeled(A, perm):
    return SkewBrace(G.relabel(A.add, perm), G.relabel(A.mul, perm))


def pairwise_classes(braces):
    reps = []
    for b in braces:
        if not any(brace_isomorphic(b, r) for r in reps):
            reps.append(b)
    return reps


def test_trivial_group_has_one_brace():
    braces = enumerate_braces(G.cyclic_group(1))
    assert len(braces) == 1
    assert enumerate_braces_direct(G.cyclic_group(1)) == [((0,),)]


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_prime_order(p):
    zp = G.cyclic_group(p)
    braces = enumerate_braces(zp)
    for A in braces:
        assert check_lambda_hom(A).ok
    assert {b.mul.table for b in braces} == set(enumerate_braces_direct(zp))
    assert len(braces) == 1 and braces[0] == trivial_brace(zp)


def test_order_four_matches_oracle():
    for name in ("C4", "C2xC2"):
        add = by_name(name)
        assert {b.mul.table for b in enumerate_braces(add)} == set(enumerate_braces_direct(add))


def test_oracle_agrees_through_order_8():
    for k in (7, 8):
        for add in small_groups(k):
            assert {b.mul.table for b in enumerate_braces(add)} == set(enumerate_braces_direct(add))


def test_enumeration_output_sorted_and_valid():
    for k in range(1, 9):
        for add in small_groups(k):
            braces = enumerate_braces(add)
            tables = [b.mul.table for b in braces]
            assert tables == sorted(set(tables))
            for A in braces:
                assert A.add is add or A.add == add
                assert validate_skew_brace(A.add.table, A.mul.table) == A
                assert check_lambda_hom(A).ok and check_eq2_eq3(A).ok


def test_holomorph_composition_rule():
    add = by_name("C4xC2")
    auts = G.automorphism_group(add)
    hol = _Holomorph(add, auts)
    elems = [HolomorphElement(t, i) for t in range(8) for i in range(len(auts))]
    e = HolomorphElement(0, 0)
    sample = elems[::5]
    for x in sample:
        assert hol.mul(x, e) == x == hol.mul(e, x)
        for y in sample:
            for z in sample[::3]:
                assert hol.mul(hol.mul(x, y), z) == hol.mul(x, hol.mul(y, z))


def test_regular_subgroups_are_regular():
    add = by_name("D8")
    for sub in regular_subgroups(add):
        assert sorted(sub) == list(range(8))


def test_bound():
    assert max_order_bound() == 12
    assert max_order_bound(allow_16=True) == 16
    with pytest.raises(G.OrderBoundExceeded):
        enumerate_braces(G.cyclic_group(13))
    with pytest.raises(G.OrderBoundExceeded):
        build_corpus([13])
    assert len(isomorphism_classes(G.cyclic_group(16), enumerate_braces(G.cyclic_group(16), 16))) > 1


def test_bound_env(monkeypatch):
    monkeypatch.setenv("BRACEKIT_MAX_ORDER", "14")
    assert max_order_bound() == 14
    assert len(enumerate_braces(G.cyclic_group(13))) == 1
    monkeypatch.setenv("BRACEKIT_MAX_ORDER", "99")
    assert max_order_bound() == 16


def test_brace_isomorphic_examples():
    z4, klein = G.cyclic_group(4), by_name("C2xC2")
    A = enumerate_braces(klein)[-1]
    assert brace_isomorphic(A, A)
    assert not brace_isomorphic(trivial_brace(z4), trivial_brace(klein))
    assert not brace_isomorphic(trivial_brace(z4), trivial_brace(G.cyclic_group(5)))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(range(1, 13)), st.data())
def test_relabeled_brace_is_isomorphic(order, data):
    braces = [b for g in small_groups(order) for b in enumerate_braces(g)]
    A = data.draw(st.sampled_from(braces))
    perm = [0] + data.draw(st.permutations(list(range(1, order))))
    B = relabeled(A, perm)
    f = brace_isomorphism(A, B)
    assert f is not None
    n = A.order
    assert all(f[A.add.table[a][b]] == B.add.table[f[a]][f[b]] and
               f[A.mul.table[a][b]] == B.mul.table[f[a]][f[b]]
               for a in range(n) for b in range(n))


def test_isomorphism_is_an_equivalence_on_samples():
    braces = [b for g in small_groups(8) for b in enumerate_braces(g)][::9]
    for A in braces:
        assert brace_isomorphic(A, A)
    for A in braces:
        for B in braces:
            if brace_isomorphic(A, B):
                assert brace_isomorphic(B, A)
                for C in braces:
                    if brace_isomorphic(B, C):
                        assert brace_isomorphic(A, C)


def test_canonical_classes_match_pairwise_dedup():
    for k in range(1, 9):
        for add in small_groups(k):
            braces = enumerate_braces(add)
            if len(braces) > 100:
                continue
            reps = isomorphism_classes(add, braces)
            assert len(reps) == len(pairwise_classes(braces)), add.name
            for i, r in enumerate(reps):
                assert not any(brace_isomorphic(r, s) for s in reps[i + 1:])


def test_corpus_counts(corpus12):
    per_order = Counter(int(e.id.split("-")[0][1:]) for e in corpus12)
    assert dict(per_order) == EXPECTED_COUNTS
    assert len({e.id for e in corpus12}) == len(corpus12) == 111


def test_corpus_oracle_counts_for_primes():
    corpus = build_corpus([2, 3, 5, 7], timestamp=EPOCH)
    assert [e.id for e in corpus] == ["o2-g1-b1", "o3-g1-b1", "o5-g1-b1", "o7-g1-b1"]
    for e in corpus:
        assert len(pairwise_classes([SkewBrace(e.brace.add, G.validate_group(t))
                                     for t in enumerate_braces_direct(e.brace.add)])) == 1


def test_corpus_single_entry():
    corpus = build_corpus([1], timestamp=EPOCH)
    assert len(corpus) == 1 and corpus.entries[0].id == "o1-g1-b1"


def test_corpus_ids_and_classes(corpus12):
    e = corpus12.get("o8-g3-b1")
    assert e.add_iso_class.startswith("D8")
    assert e.brace.add == small_groups(8)[2]
    tables = [x.brace.mul.table for x in corpus12 if x.id.startswith("o12-g3-")]
    assert tables == sorted(tables)
    with pytest.raises(KeyError):
        corpus12.get("o99-g1-b1")


def test_corpus_round_trip(tmp_path, order8_corpus):
    path = tmp_path / "c.json"
    save_corpus(order8_corpus, path)
    loaded = load_corpus(path)
    assert corpus_dumps(loaded) == corpus_dumps(order8_corpus) == path.read_text()


def test_corpus_independent_of_jobs(order8_corpus):
    parallel = build_corpus([8], jobs=2, timestamp=EPOCH)
    assert corpus_dumps(parallel) == corpus_dumps(order8_corpus)


def test_corpus_timestamp_from_source_date_epoch(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    assert build_corpus([1]).metadata["timestamp"] == EPOCH


def test_corpus_load_rejects_bad_entries(order8_corpus):
    data = json.loads(corpus_dumps(order8_corpus))
    dup = json.loads(json.dumps(data))
    dup["braces"][1]["id"] = dup["braces"][0]["id"]
    with pytest.raises(ValidationFailed):
        corpus_from_json(dup)
    bad = json.loads(json.dumps(data))
    row = bad["braces"][3]["mul"][1]
    row[1], row[2] = row[2], row[1]
    with pytest.raises(ValidationFailed) as exc:
        corpus_from_json(bad)
    assert exc.value.brace_id == bad["braces"][3]["id"]

import random

import pytest

from termserver.model import UnknownConcept, build_store
from termserver.query import EmptyQuery, neighborhood, search

from conftest import random_bundle


def test_neighborhood_fixture_chronic_disease(tiny_store):
    n = neighborhood(tiny_store, 1000041)
    assert n.preferred_term == "Chronic disease"
    assert n.fsn == "Chronic disease"
    assert n.active is True
    assert [(e.type_term, e.other_id, e.other_term) for e in n.outbound] == [
        ("Is a", 1000031, "Disease")
    ]
    assert [(e.other_id, e.other_term, e.type_term) for e in n.inbound] == [
        (1000091, "Chronic lung disease", "Is a")
    ]
    assert all(e.is_hierarchy for e in n.outbound + n.inbound)


def test_neighborhood_root(tiny_store):
    n = neighborhood(tiny_store, 1000011)
    assert n.outbound == []
    assert [e.other_id for e in n.inbound] == [1000021]


def test_neighborhood_unknown(tiny_store):
    with pytest.raises(UnknownConcept):
        neighborhood(tiny_store, 4242)


def test_neighborhood_include_inactive(tiny_store):
    n = neighborhood(tiny_store, 1000051, include_inactive=True)
    assert len(n.outbound) == 3
    inactive = [e for e in n.outbound if not e.active]
    assert len(inactive) == 1 and inactive[0].other_id == 1000041


def test_search_exact(tiny_store):
    hits = search(tiny_store, "chronic disease", 10)
    assert hits[0].concept_id == 1000041
    assert hits[0].rank == 0
    assert hits[0].matched_term == "Chronic disease"


def test_search_prefix_ordering(tiny_store):
    hits = search(tiny_store, "chronic", 10)
    assert [(h.concept_id, h.matched_term, h.rank) for h in hits] == [
        (1000041, "Chronic disease", 1),
        (1000091, "Chronic lung disease", 1),
    ]


def test_search_no_hits(tiny_store):
    assert search(tiny_store, "zzz", 10) == []


def test_search_empty_query(tiny_store):
    with pytest.raises(EmptyQuery):
        search(tiny_store, "   ", 10)


def test_search_excludes_inactive(tiny_store):
    # "Retired disorder" exists only as an inactive description
    assert search(tiny_store, "retired", 10) == []


def test_search_limit(tiny_store):
    assert len(search(tiny_store, "a", 2)) == 2


def test_center_uniqueness_and_reverse_symmetry():
    for seed in range(15):
        rng = random.Random(seed)
        concepts, descriptions, relationships, isa = random_bundle(
            rng, rng.randint(1, 30), rng.randint(0, 150)
        )
        store = build_store(concepts, descriptions, relationships, isa)
        hoods = {c: neighborhood(store, c, include_inactive=True) for c in store.concepts}
        for cid, n in hoods.items():
            for e in n.outbound + n.inbound:
                assert e.other_id != cid
                assert e.is_hierarchy == (e.type_id == store.isa_type_id)
            for e in n.outbound:
                mirror = hoods[e.other_id]
                assert any(
                    m.relationship_id == e.relationship_id and m.other_id == cid
                    for m in mirror.inbound
                )
            for e in n.inbound:
                mirror = hoods[e.other_id]
                assert any(
                    m.relationship_id == e.relationship_id and m.other_id == cid
                    for m in mirror.outbound
                )


def test_search_matches_naive_oracle():
    from oracles import search_oracle

    queries = ["alpha", "beta gamma", "chronic", "a", "lung", "delta", "acu"]
    for seed in range(10):
        rng = random.Random(seed)
        concepts, descriptions, relationships, isa = random_bundle(
            rng, rng.randint(1, 50), rng.randint(0, 60), n_descriptions=rng.randint(1, 120)
        )
        store = build_store(concepts, descriptions, relationships, isa)
        for q in queries:
            hits = search(store, q, 25)
            expected = search_oracle(store, q, 25)
            assert [(h.concept_id, h.matched_term.lower(), h.rank) for h in hits] == expected

import pytest

from termserver.ingest import (
    ReleaseBundle,
    parse_concepts,
    parse_descriptions,
    parse_relationships,
    serialize_concepts,
    serialize_descriptions,
    serialize_relationships,
    validate_bundle,
)
from termserver.model import build_store
from termserver.synth import generate_release


def test_single_concept():
    release = generate_release(1, seed=5)
    assert len(release.concepts) == 1
    assert release.relationships == []
    assert len(release.descriptions) == 2


def test_rejects_zero():
    with pytest.raises(ValueError):
        generate_release(0, seed=1)


def test_determinism_same_seed():
    a = generate_release(1000, seed=42)
    b = generate_release(1000, seed=42)
    assert serialize_concepts(a.concepts) == serialize_concepts(b.concepts)
    assert serialize_descriptions(a.descriptions) == serialize_descriptions(b.descriptions)
    assert serialize_relationships(a.relationships) == serialize_relationships(b.relationships)
    c = generate_release(1000, seed=43)
    assert serialize_relationships(a.relationships) != serialize_relationships(c.relationships)


def test_shape_and_counts():
    n = 2000
    release = generate_release(n, seed=7)
    assert len(release.concepts) == n
    assert len(release.descriptions) == 2 * n
    isa_edges = [r for r in release.relationships if r.type_id == release.isa_type_id]
    attr_edges = [r for r in release.relationships if r.type_id != release.isa_type_id]
    assert len(isa_edges) == n - 1  # rooted tree: one parent per non-root
    assert 0.35 * n < len(attr_edges) < 0.65 * n
    # every non-root has a parent with a smaller id (tree over earlier concepts)
    for r in isa_edges:
        assert r.destination_id < r.source_id


def test_generated_bundles_validate_cleanly():
    for seed in (0, 1, 99):
        release = generate_release(500, seed=seed)
        bundle = ReleaseBundle(release.concepts, release.descriptions, release.relationships)
        assert validate_bundle(bundle) == []
        store = build_store(
            release.concepts, release.descriptions, release.relationships, release.isa_type_id
        )
        assert len(store.concepts) == 500


def test_serialized_output_reingests_cleanly():
    release = generate_release(300, seed=11)
    c, ci = parse_concepts(serialize_concepts(release.concepts))
    d, di = parse_descriptions(serialize_descriptions(release.descriptions))
    r, ri = parse_relationships(serialize_relationships(release.relationships))
    assert ci == di == ri == []
    assert (c, d, r) == (release.concepts, release.descriptions, release.relationships)

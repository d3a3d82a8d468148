import random
from pathlib import Path

import pytest

from termserver.ingest import parse_bundle
from termserver.model import Concept, Description, Relationship, build_store

FIXTURE_DIR = Path(__file__).parent / "fixtures" / "tiny-ct"
GOLDEN_DIR = Path(__file__).parent / "golden"

TINY_ISA = 1000081


def load_tiny_bundle():
    return parse_bundle(
        (FIXTURE_DIR / "concepts.tsv").read_bytes(),
        (FIXTURE_DIR / "descriptions.tsv").read_bytes(),
        (FIXTURE_DIR / "relationships.tsv").read_bytes(),
    )


@pytest.fixture(scope="session")
def tiny_bundle():
    return load_tiny_bundle()


@pytest.fixture(scope="session")
def tiny_store(tiny_bundle):
    return build_store(
        tiny_bundle.concepts, tiny_bundle.descriptions, tiny_bundle.relationships, TINY_ISA
    )


def random_bundle(rng: random.Random, n_concepts: int, n_relationships: int,
                  n_descriptions: int | None = None):
    """Random well-formed bundle: unique ids, resolvable references."""
    concept_ids = rng.sample(range(100000, 10_000_000), n_concepts)
    concepts = [Concept(cid, rng.random() < 0.9) for cid in concept_ids]
    isa = rng.choice(concept_ids)
    if n_descriptions is None:
        n_descriptions = n_concepts
    desc_ids = rng.sample(range(10_000_000, 20_000_000), n_descriptions)
    descriptions = [
        Description(
            did,
            rng.choice(concept_ids),
            " ".join(
                rng.choice(["alpha", "beta", "gamma", "delta", "chronic", "acute", "lung"])
                for _ in range(rng.randint(1, 3))
            ),
            rng.choice(["FSN", "SYN"]),
            rng.random() < 0.9,
        )
        for did in desc_ids
    ]
    rel_ids = rng.sample(range(20_000_000, 30_000_000), n_relationships)
    relationships = []
    for rid in rel_ids:
        src = rng.choice(concept_ids)
        dst = rng.choice(concept_ids)
        active = rng.random() < 0.9
        if src == dst:
            if n_concepts == 1:
                continue
            active = False  # self-loops may only exist inactive
        relationships.append(
            Relationship(rid, src, rng.choice(concept_ids), dst, rng.randint(0, 3), active)
        )
    return concepts, descriptions, relationships, isa

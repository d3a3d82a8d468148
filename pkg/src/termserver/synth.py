"""Deterministic synthetic release generator for stress runs.

Shape: a rooted is-a tree over N concepts (every non-root picks a parent
among earlier concepts), one FSN and one SYN per concept with
pronounceable pseudo-terms, plus roughly 0.5*N attribute relationships
drawn from a small pool of attribute-type concepts.  Same seed, same
bytes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .model import Concept, Description, Relationship

_CONSONANTS = "bcdfglmnprstvz"
_VOWELS = "aeiou"

ATTRIBUTE_POOL_SIZE = 5


@dataclass
class SyntheticRelease:
    concepts: list[Concept]
    descriptions: list[Description]
    relationships: list[Relationship]
    isa_type_id: int


def _concept_id(i: int) -> int:
    return 1000001 + 10 * i


def _description_id(j: int) -> int:
    return 20000001 + 10 * j


def _relationship_id(k: int) -> int:
    return 30000001 + 10 * k


def _pseudo_word(rng: random.Random) -> str:
    syllables = rng.randint(2, 4)
    return "".join(rng.choice(_CONSONANTS) + rng.choice(_VOWELS) for _ in range(syllables))


def _pseudo_term(rng: random.Random) -> str:
    words = [_pseudo_word(rng) for _ in range(rng.randint(1, 2))]
    return " ".join(words).capitalize()


def generate_release(n_concepts: int, seed: int) -> SyntheticRelease:
    if n_concepts < 1:
        raise ValueError("need at least one concept")
    rng = random.Random(seed)

    concepts: list[Concept] = []
    descriptions: list[Description] = []
    relationships: list[Relationship] = []

    # fixed skeleton: root, then the is-a type, then the attribute pool
    isa_index = 1 if n_concepts >= 2 else 0
    attr_pool = [2 + k for k in range(min(ATTRIBUTE_POOL_SIZE, max(0, n_concepts - 2)))]
    isa_type_id = _concept_id(isa_index)

    desc_count = 0
    rel_count = 0
    for i in range(n_concepts):
        cid = _concept_id(i)
        concepts.append(Concept(cid, True))

        if i == 0:
            base = "Root"
        elif i == isa_index:
            base = "Is a"
        elif i in attr_pool:
            base = f"Attribute {_pseudo_word(rng)}"
        else:
            base = _pseudo_term(rng)
        descriptions.append(Description(_description_id(desc_count), cid, f"{base} (synthetic)", "FSN", True))
        desc_count += 1
        descriptions.append(Description(_description_id(desc_count), cid, base, "SYN", True))
        desc_count += 1

        if i > 0:
            parent = _concept_id(rng.randrange(i))
            relationships.append(Relationship(_relationship_id(rel_count), cid, isa_type_id, parent, 0, True))
            rel_count += 1
            if attr_pool and rng.random() < 0.5:
                target = _concept_id(rng.randrange(i))
                if target != cid:
                    attr_type = _concept_id(rng.choice(attr_pool))
                    relationships.append(
                        Relationship(_relationship_id(rel_count), cid, attr_type, target, 0, True)
                    )
                    rel_count += 1

    return SyntheticRelease(concepts, descriptions, relationships, isa_type_id)

"""Core domain types and the immutable in-memory concept graph store.

Concepts, descriptions and relationships mirror the three tables of a
release bundle.  ``TerminologyStore`` keeps the tables columnar with
forward and reverse adjacency indexes, so neighborhood queries never scan
the relationship table and a persisted store can be reloaded without
re-sorting; row objects are materialized on demand.
"""

from __future__ import annotations

from array import array
from bisect import bisect_left
from typing import Iterable, NamedTuple, Optional

MIN_ID_DIGITS = 6
MAX_ID_DIGITS = 18


class ModelError(Exception):
    """Base class for store construction and lookup failures."""


class DuplicateConcept(ModelError):
    def __init__(self, concept_id: int):
        self.concept_id = concept_id
        super().__init__(f"duplicate concept id {concept_id}")


class DanglingReference(ModelError):
    def __init__(self, row_id: int, missing_id: int):
        self.row_id = row_id
        self.missing_id = missing_id
        super().__init__(f"row {row_id} references missing concept {missing_id}")


class UnknownIsaType(ModelError):
    def __init__(self, isa_type_id: int):
        self.isa_type_id = isa_type_id
        super().__init__(f"hierarchy type id {isa_type_id} is not a known concept")


class UnknownConcept(ModelError):
    def __init__(self, concept_id: int):
        self.concept_id = concept_id
        super().__init__(f"unknown concept {concept_id}")


def is_valid_concept_id(value: int) -> bool:
    """SCTID-style key: positive, 6-18 decimal digits, no leading zeros."""
    if value <= 0:
        return False
    return MIN_ID_DIGITS <= len(str(value)) <= MAX_ID_DIGITS


class Concept(NamedTuple):
    id: int
    active: bool


class Description(NamedTuple):
    id: int
    concept_id: int
    term: str
    kind: str  # "FSN" or "SYN"
    active: bool


class Relationship(NamedTuple):
    id: int
    source_id: int
    type_id: int
    destination_id: int
    group: int
    active: bool


class PositionIndex:
    """Sorted-key CSR map: concept id -> positions into a row table.

    Flat arrays instead of a dict of lists keeps the persisted form cheap
    to decode; lookups bisect the key array.
    """

    __slots__ = ("keys", "offsets", "flat")

    def __init__(self, keys: array, offsets: array, flat: array):
        self.keys = keys
        self.offsets = offsets
        self.flat = flat

    @classmethod
    def from_groups(cls, groups: dict[int, list[int]]) -> "PositionIndex":
        keys = array("q", sorted(groups))
        offsets = array("q", [0])
        flat = array("q")
        for k in keys:
            flat.extend(groups[k])
            offsets.append(len(flat))
        return cls(keys, offsets, flat)

    def get(self, key: int) -> array:
        i = bisect_left(self.keys, key)
        if i == len(self.keys) or self.keys[i] != key:
            return array("q")
        return self.flat[self.offsets[i]:self.offsets[i + 1]]

    def as_tuple(self):
        return (self.keys, self.offsets, self.flat)


class TerminologyStore:
    """Immutable post-ingest graph with forward/reverse adjacency.

    Adjacency lists hold positions into the relationship table; the
    outbound index is ordered by (type, destination, id) and the inbound
    index by (source, type, id), so query ordering is a pure function of
    row content regardless of input order.
    """

    def __init__(
        self,
        concepts: dict[int, Concept],
        descriptions: list[Description],
        relationships: list[Relationship],
        isa_type_id: int,
    ):
        active_by_id = {cid: c.active for cid, c in concepts.items()}
        desc_cols = tuple(map(list, zip(*descriptions))) if descriptions else ([],) * 5
        rel_cols = tuple(map(list, zip(*relationships))) if relationships else ([],) * 6

        desc_groups: dict[int, list[int]] = {}
        for i, d in enumerate(descriptions):
            desc_groups.setdefault(d.concept_id, []).append(i)

        rid, src, typ, dst = rel_cols[0], rel_cols[1], rel_cols[2], rel_cols[3]
        out_order = sorted(
            range(len(rid)), key=lambda i: (src[i], typ[i], dst[i], rid[i])
        )
        in_order = sorted(
            range(len(rid)), key=lambda i: (dst[i], src[i], typ[i], rid[i])
        )
        out_groups: dict[int, list[int]] = {}
        for i in out_order:
            out_groups.setdefault(src[i], []).append(i)
        in_groups: dict[int, list[int]] = {}
        for i in in_order:
            in_groups.setdefault(dst[i], []).append(i)

        self._init_columns(
            active_by_id,
            desc_cols,
            PositionIndex.from_groups(desc_groups),
            rel_cols,
            PositionIndex.from_groups(out_groups),
            PositionIndex.from_groups(in_groups),
            isa_type_id,
        )

    def _init_columns(
        self, active_by_id, desc_cols, desc_index, rel_cols, out_index, in_index, isa_type_id
    ):
        self._active_by_id = active_by_id
        self._desc_cols = desc_cols
        self._desc_index = desc_index
        self._rel_cols = rel_cols
        self._out_index = out_index
        self._in_index = in_index
        self.isa_type_id = isa_type_id
        self._concepts_cache: Optional[dict[int, Concept]] = None
        self._descriptions_cache: Optional[list[Description]] = None
        self._relationships_cache: Optional[list[Relationship]] = None
        # populated lazily by the search layer; carries no query semantics
        self._term_index = None

    @classmethod
    def _from_columns(
        cls, active_by_id, desc_cols, desc_index, rel_cols, out_index, in_index, isa_type_id
    ) -> "TerminologyStore":
        """Fast path for the index-file loader: indexes are prebuilt."""
        store = cls.__new__(cls)
        store._init_columns(
            active_by_id, desc_cols, desc_index, rel_cols, out_index, in_index, isa_type_id
        )
        return store

    # -- row materialization ---------------------------------------------

    def _description_at(self, i: int) -> Description:
        c = self._desc_cols
        return Description(c[0][i], c[1][i], c[2][i], c[3][i], c[4][i])

    def _relationship_at(self, i: int) -> Relationship:
        c = self._rel_cols
        return Relationship(c[0][i], c[1][i], c[2][i], c[3][i], c[4][i], c[5][i])

    # -- basic accessors -------------------------------------------------

    @property
    def concepts(self) -> dict[int, Concept]:
        if self._concepts_cache is None:
            self._concepts_cache = {
                cid: Concept(cid, active) for cid, active in self._active_by_id.items()
            }
        return self._concepts_cache

    @property
    def descriptions(self) -> list[Description]:
        if self._descriptions_cache is None:
            self._descriptions_cache = list(map(Description._make, zip(*self._desc_cols)))
        return self._descriptions_cache

    @property
    def relationships(self) -> list[Relationship]:
        if self._relationships_cache is None:
            self._relationships_cache = list(map(Relationship._make, zip(*self._rel_cols)))
        return self._relationships_cache

    def concept(self, concept_id: int) -> Optional[Concept]:
        active = self._active_by_id.get(concept_id)
        if active is None:
            return None
        return Concept(concept_id, active)

    def descriptions_of(self, concept_id: int) -> list[Description]:
        return [self._description_at(i) for i in self._desc_index.get(concept_id)]

    # -- adjacency -------------------------------------------------------

    def outbound(self, concept_id: int, include_inactive: bool = False) -> list[Relationship]:
        indices = self._out_index.get(concept_id)
        active = self._rel_cols[5]
        return [
            self._relationship_at(i)
            for i in indices
            if include_inactive or active[i]
        ]

    def inbound(self, concept_id: int, include_inactive: bool = False) -> list[Relationship]:
        indices = self._in_index.get(concept_id)
        active = self._rel_cols[5]
        return [
            self._relationship_at(i)
            for i in indices
            if include_inactive or active[i]
        ]

    # -- terms -----------------------------------------------------------

    def preferred_term(self, concept_id: int) -> str:
        """First active synonym in file order, else the active FSN, else the id."""
        if concept_id not in self._active_by_id:
            raise UnknownConcept(concept_id)
        rows = self.descriptions_of(concept_id)
        for d in rows:
            if d.active and d.kind == "SYN":
                return d.term
        for d in rows:
            if d.active and d.kind == "FSN":
                return d.term
        return str(concept_id)

    def fsn(self, concept_id: int) -> Optional[str]:
        for d in self.descriptions_of(concept_id):
            if d.active and d.kind == "FSN":
                return d.term
        return None

    # -- hierarchy -------------------------------------------------------

    def parents(self, concept_id: int) -> list[int]:
        """Active is-a targets between active concepts, ascending by id."""
        ids = {
            r.destination_id
            for r in self.outbound(concept_id)
            if r.type_id == self.isa_type_id and self._both_active(r)
        }
        return sorted(ids)

    def children(self, concept_id: int) -> list[int]:
        ids = {
            r.source_id
            for r in self.inbound(concept_id)
            if r.type_id == self.isa_type_id and self._both_active(r)
        }
        return sorted(ids)

    def _both_active(self, r: Relationship) -> bool:
        return bool(
            self._active_by_id.get(r.source_id) and self._active_by_id.get(r.destination_id)
        )


def build_store(
    concepts: Iterable[Concept],
    descriptions: Iterable[Description],
    relationships: Iterable[Relationship],
    isa_type_id: int,
) -> TerminologyStore:
    """Validate referential integrity and build both adjacency indexes.

    Raises DuplicateConcept, DanglingReference or UnknownIsaType; rows are
    assumed individually well-formed (the parser's job).
    """
    concept_map: dict[int, Concept] = {}
    for c in concepts:
        if c.id in concept_map:
            raise DuplicateConcept(c.id)
        concept_map[c.id] = c
    if isa_type_id not in concept_map:
        raise UnknownIsaType(isa_type_id)

    description_rows = list(descriptions)
    for d in description_rows:
        if d.concept_id not in concept_map:
            raise DanglingReference(d.id, d.concept_id)

    relationship_rows = list(relationships)
    for r in relationship_rows:
        for endpoint in (r.source_id, r.type_id, r.destination_id):
            if endpoint not in concept_map:
                raise DanglingReference(r.id, endpoint)

    return TerminologyStore(concept_map, description_rows, relationship_rows, isa_type_id)

"""Browsing semantics: concept neighborhoods and term search.

A neighborhood is the unit of navigation: the current concept plus its
term-resolved inbound (referring) and outbound (referred) edges.  Search
resolves human-entered text to concepts with a deterministic three-tier
ranking: exact match, prefix, substring.
"""

from __future__ import annotations

from bisect import bisect_right
from typing import NamedTuple

from .model import TerminologyStore, UnknownConcept


class EmptyQuery(Exception):
    pass


class NeighborhoodEdge(NamedTuple):
    relationship_id: int
    type_id: int
    type_term: str
    other_id: int
    other_term: str
    group: int
    is_hierarchy: bool
    active: bool


class Neighborhood(NamedTuple):
    concept_id: int
    preferred_term: str
    fsn: str
    active: bool
    inbound: list[NeighborhoodEdge]
    outbound: list[NeighborhoodEdge]


class SearchHit(NamedTuple):
    concept_id: int
    matched_term: str
    preferred_term: str
    rank: int


def neighborhood(
    store: TerminologyStore, concept_id: int, include_inactive: bool = False
) -> Neighborhood:
    concept = store.concept(concept_id)
    if concept is None:
        raise UnknownConcept(concept_id)

    def edge(rel, other_id):
        return NeighborhoodEdge(
            relationship_id=rel.id,
            type_id=rel.type_id,
            type_term=store.preferred_term(rel.type_id),
            other_id=other_id,
            other_term=store.preferred_term(other_id),
            group=rel.group,
            is_hierarchy=rel.type_id == store.isa_type_id,
            active=rel.active,
        )

    # Self-loops (possible only as inactive legacy rows) are dropped so the
    # current concept never appears among its own neighbors.
    outbound = [
        edge(r, r.destination_id)
        for r in store.outbound(concept_id, include_inactive)
        if r.destination_id != concept_id
    ]
    inbound = [
        edge(r, r.source_id)
        for r in store.inbound(concept_id, include_inactive)
        if r.source_id != concept_id
    ]
    return Neighborhood(
        concept_id=concept_id,
        preferred_term=store.preferred_term(concept_id),
        fsn=store.fsn(concept_id) or str(concept_id),
        active=concept.active,
        inbound=inbound,
        outbound=outbound,
    )


RANK_EXACT = 0
RANK_PREFIX = 1
RANK_SUBSTRING = 2


class _TermIndex:
    """Concatenated-blob accelerator for case-insensitive substring scans.

    All searchable terms (active descriptions of active concepts) are
    lowercased and joined with a separator; C-level ``str.find`` locates
    candidate positions which map back to description rows via bisect.
    Pure accelerator: results are defined by the naive scan.
    """

    SEP = "\n"

    def __init__(self, store: TerminologyStore):
        terms: list[str] = []
        concept_ids: list[int] = []
        _ids, cids, raw_terms, _kinds, actives = store._desc_cols
        concept_active = store._active_by_id
        for cid, term, active in zip(cids, raw_terms, actives):
            if not active or not concept_active.get(cid):
                continue
            terms.append(term.lower())
            concept_ids.append(cid)
        self.terms = terms
        self.concept_ids = concept_ids
        self.blob = self.SEP + self.SEP.join(terms) + self.SEP
        starts = []
        pos = 1
        for t in terms:
            starts.append(pos)
            pos += len(t) + 1
        self.starts = starts

    def candidates(self, needle: str):
        """Indexes of terms containing ``needle`` (lowercased), deduplicated."""
        found: set[int] = set()
        pos = self.blob.find(needle)
        while pos != -1:
            found.add(bisect_right(self.starts, pos) - 1)
            pos = self.blob.find(needle, pos + 1)
        return found


def _term_index(store: TerminologyStore) -> _TermIndex:
    index = getattr(store, "_term_index", None)
    if index is None:
        index = _TermIndex(store)
        store._term_index = index
    return index


def search(store: TerminologyStore, query: str, limit: int) -> list[SearchHit]:
    """Ranked case-insensitive substring search over active descriptions.

    Rank tiers: exact 0, prefix 1, substring 2; ties break on term length
    then concept id.  At most one hit per concept (its best term).
    """
    needle = query.strip().lower()
    if not needle:
        raise EmptyQuery("query is empty")
    index = _term_index(store)

    best: dict[int, tuple[int, int, int, str]] = {}
    for i in index.candidates(needle):
        term = index.terms[i]
        cid = index.concept_ids[i]
        if term == needle:
            rank = RANK_EXACT
        elif term.startswith(needle):
            rank = RANK_PREFIX
        else:
            rank = RANK_SUBSTRING
        key = (rank, len(term), cid, term)
        if cid not in best or key < best[cid]:
            best[cid] = key

    ordered = sorted(best.items(), key=lambda kv: kv[1])
    hits = []
    for cid, (rank, _length, _cid, term) in ordered[:limit]:
        hits.append(
            SearchHit(
                concept_id=cid,
                matched_term=_original_term(store, cid, term),
                preferred_term=store.preferred_term(cid),
                rank=rank,
            )
        )
    return hits


def _original_term(store: TerminologyStore, concept_id: int, lowered: str) -> str:
    for d in store.descriptions_of(concept_id):
        if d.active and d.term.lower() == lowered:
            return d.term
    return lowered

"""SCT-TSV release-file parsing and validation.

Three UTF-8 tab-separated files make up a release bundle: concepts,
descriptions and relationships.  The first line of each file must be the
exact header for its kind; every data line either yields a row or a
``ParseIssue`` — malformed input never raises past the header check.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .model import (
    Concept,
    Description,
    Relationship,
    is_valid_concept_id,
)

CONCEPTS_HEADER = "id\tactive"
DESCRIPTIONS_HEADER = "id\tconceptId\tterm\tkind\tactive"
RELATIONSHIPS_HEADER = "id\tsourceId\ttypeId\tdestinationId\tgroup\tactive"


class IngestError(Exception):
    pass


class BadHeader(IngestError):
    def __init__(self, expected: str, got: str):
        self.expected = expected
        self.got = got
        super().__init__(f"bad header: expected {expected!r}, got {got!r}")


class MalformedId(IngestError):
    pass


class FileKind(enum.Enum):
    CONCEPTS = "concepts"
    DESCRIPTIONS = "descriptions"
    RELATIONSHIPS = "relationships"


class IssueKind(enum.Enum):
    BAD_COLUMN_COUNT = "BAD_COLUMN_COUNT"
    BAD_ID = "BAD_ID"
    BAD_FLAG = "BAD_FLAG"
    BAD_KIND = "BAD_KIND"
    EMPTY_TERM = "EMPTY_TERM"
    DUPLICATE_ID = "DUPLICATE_ID"
    DANGLING = "DANGLING"
    CHECKSUM_FAIL = "CHECKSUM_FAIL"


@dataclass(frozen=True)
class ParseIssue:
    file: FileKind
    line: int  # 1-based; line 1 is always the header, so issues start at 2
    kind: IssueKind
    detail: str

    def __str__(self) -> str:
        return f"{self.file.value}:{self.line}:{self.kind.value}:{self.detail}"


@dataclass
class ReleaseBundle:
    concepts: list[Concept] = field(default_factory=list)
    descriptions: list[Description] = field(default_factory=list)
    relationships: list[Relationship] = field(default_factory=list)
    issues: list[ParseIssue] = field(default_factory=list)


def _decode_lines(data: bytes) -> list[str]:
    text = data.decode("utf-8", errors="replace")
    # accept LF and CRLF; a trailing newline does not create a phantom line
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [ln[:-1] if ln.endswith("\r") else ln for ln in lines]


def _parse_id(token: str) -> int:
    """Decimal concept-id-style token; rejects signs, leading zeros, junk."""
    if not token.isdigit() or (len(token) > 1 and token[0] == "0"):
        raise ValueError(token)
    value = int(token)
    if not is_valid_concept_id(value):
        raise ValueError(token)
    return value


def _parse_flag(token: str) -> bool:
    if token == "1":
        return True
    if token == "0":
        return False
    raise ValueError(token)


def parse_concepts(data: bytes) -> tuple[list[Concept], list[ParseIssue]]:
    lines = _decode_lines(data)
    if not lines or lines[0] != CONCEPTS_HEADER:
        raise BadHeader(CONCEPTS_HEADER, lines[0] if lines else "")
    rows: list[Concept] = []
    issues: list[ParseIssue] = []

    def issue(line_no, kind, detail):
        issues.append(ParseIssue(FileKind.CONCEPTS, line_no, kind, detail))

    for line_no, line in enumerate(lines[1:], start=2):
        cols = line.split("\t")
        if len(cols) != 2:
            issue(line_no, IssueKind.BAD_COLUMN_COUNT, f"expected 2 columns, got {len(cols)}")
            continue
        try:
            cid = _parse_id(cols[0])
        except ValueError:
            issue(line_no, IssueKind.BAD_ID, f"bad id {cols[0]!r}")
            continue
        try:
            active = _parse_flag(cols[1])
        except ValueError:
            issue(line_no, IssueKind.BAD_FLAG, f"bad active flag {cols[1]!r}")
            continue
        rows.append(Concept(cid, active))
    return rows, issues


def parse_descriptions(data: bytes) -> tuple[list[Description], list[ParseIssue]]:
    lines = _decode_lines(data)
    if not lines or lines[0] != DESCRIPTIONS_HEADER:
        raise BadHeader(DESCRIPTIONS_HEADER, lines[0] if lines else "")
    rows: list[Description] = []
    issues: list[ParseIssue] = []

    def issue(line_no, kind, detail):
        issues.append(ParseIssue(FileKind.DESCRIPTIONS, line_no, kind, detail))

    for line_no, line in enumerate(lines[1:], start=2):
        cols = line.split("\t")
        if len(cols) != 5:
            issue(line_no, IssueKind.BAD_COLUMN_COUNT, f"expected 5 columns, got {len(cols)}")
            continue
        try:
            did = _parse_id(cols[0])
            cid = _parse_id(cols[1])
        except ValueError as e:
            issue(line_no, IssueKind.BAD_ID, f"bad id {e.args[0]!r}")
            continue
        term = cols[2]
        if not term.strip():
            issue(line_no, IssueKind.EMPTY_TERM, "empty term")
            continue
        kind = cols[3]
        if kind not in ("FSN", "SYN"):
            issue(line_no, IssueKind.BAD_KIND, f"bad kind {kind!r}")
            continue
        try:
            active = _parse_flag(cols[4])
        except ValueError:
            issue(line_no, IssueKind.BAD_FLAG, f"bad active flag {cols[4]!r}")
            continue
        rows.append(Description(did, cid, term, kind, active))
    return rows, issues


def parse_relationships(data: bytes) -> tuple[list[Relationship], list[ParseIssue]]:
    lines = _decode_lines(data)
    if not lines or lines[0] != RELATIONSHIPS_HEADER:
        raise BadHeader(RELATIONSHIPS_HEADER, lines[0] if lines else "")
    rows: list[Relationship] = []
    issues: list[ParseIssue] = []

    def issue(line_no, kind, detail):
        issues.append(ParseIssue(FileKind.RELATIONSHIPS, line_no, kind, detail))

    for line_no, line in enumerate(lines[1:], start=2):
        cols = line.split("\t")
        if len(cols) != 6:
            issue(line_no, IssueKind.BAD_COLUMN_COUNT, f"expected 6 columns, got {len(cols)}")
            continue
        try:
            rid = _parse_id(cols[0])
            src = _parse_id(cols[1])
            typ = _parse_id(cols[2])
            dst = _parse_id(cols[3])
        except ValueError as e:
            issue(line_no, IssueKind.BAD_ID, f"bad id {e.args[0]!r}")
            continue
        if not cols[4].isdigit():
            issue(line_no, IssueKind.BAD_FLAG, f"bad group {cols[4]!r}")
            continue
        group = int(cols[4])
        try:
            active = _parse_flag(cols[5])
        except ValueError:
            issue(line_no, IssueKind.BAD_FLAG, f"bad active flag {cols[5]!r}")
            continue
        if active and src == dst:
            issue(line_no, IssueKind.BAD_ID, f"active self-loop on {src}")
            continue
        rows.append(Relationship(rid, src, typ, dst, group, active))
    return rows, issues


def parse_bundle(
    concepts_data: bytes, descriptions_data: bytes, relationships_data: bytes
) -> ReleaseBundle:
    concepts, ci = parse_concepts(concepts_data)
    descriptions, di = parse_descriptions(descriptions_data)
    relationships, ri = parse_relationships(relationships_data)
    return ReleaseBundle(concepts, descriptions, relationships, ci + di + ri)


# --- Verhoeff check digit ----------------------------------------------

# Multiplication table of the dihedral group D5 (rotations 0-4,
# reflections 5-9), the permutation applied per digit position, and the
# inverse table used when generating a check digit.
_D5_MUL = (
    (0, 1, 2, 3, 4, 5, 6, 7, 8, 9),
    (1, 2, 3, 4, 0, 6, 7, 8, 9, 5),
    (2, 3, 4, 0, 1, 7, 8, 9, 5, 6),
    (3, 4, 0, 1, 2, 8, 9, 5, 6, 7),
    (4, 0, 1, 2, 3, 9, 5, 6, 7, 8),
    (5, 9, 8, 7, 6, 0, 4, 3, 2, 1),
    (6, 5, 9, 8, 7, 1, 0, 4, 3, 2),
    (7, 6, 5, 9, 8, 2, 1, 0, 4, 3),
    (8, 7, 6, 5, 9, 3, 2, 1, 0, 4),
    (9, 8, 7, 6, 5, 4, 3, 2, 1, 0),
)
_PERM = (
    (0, 1, 2, 3, 4, 5, 6, 7, 8, 9),
    (1, 5, 7, 6, 2, 8, 3, 0, 9, 4),
    (5, 8, 0, 3, 7, 9, 6, 1, 4, 2),
    (8, 9, 1, 6, 0, 4, 3, 5, 2, 7),
    (9, 4, 5, 3, 1, 2, 6, 8, 7, 0),
    (4, 2, 8, 6, 5, 7, 3, 9, 0, 1),
    (2, 7, 9, 3, 8, 0, 6, 4, 1, 5),
    (7, 0, 4, 6, 9, 1, 3, 2, 5, 8),
)
_INV = (0, 4, 3, 2, 1, 5, 6, 7, 8, 9)


def verhoeff_valid(id_string: str) -> bool:
    """True iff the trailing digit is a correct Verhoeff check digit."""
    if not id_string.isdigit() or len(id_string) < 2:
        raise MalformedId(f"not a checkable decimal id: {id_string!r}")
    c = 0
    for i, ch in enumerate(reversed(id_string)):
        c = _D5_MUL[c][_PERM[i % 8][int(ch)]]
    return c == 0


def verhoeff_check_digit(digits: str) -> str:
    """Check digit that makes ``digits + d`` Verhoeff-valid."""
    if not digits.isdigit():
        raise MalformedId(f"not a decimal string: {digits!r}")
    c = 0
    for i, ch in enumerate(reversed(digits)):
        c = _D5_MUL[c][_PERM[(i + 1) % 8][int(ch)]]
    return str(_INV[c])


# --- cross-file validation ---------------------------------------------


def validate_bundle(bundle: ReleaseBundle, check_digits: bool = False) -> list[ParseIssue]:
    """Referential and duplicate-id checks across the three tables.

    Issues are data, not failures; callers decide severity.  Line numbers
    refer to data-row positions (header is line 1).
    """
    issues: list[ParseIssue] = []
    concept_ids = {c.id for c in bundle.concepts}

    seen: set[int] = set()
    for line, c in enumerate(bundle.concepts, start=2):
        if c.id in seen:
            issues.append(
                ParseIssue(FileKind.CONCEPTS, line, IssueKind.DUPLICATE_ID, f"duplicate id {c.id}")
            )
        seen.add(c.id)

    seen = set()
    for line, d in enumerate(bundle.descriptions, start=2):
        if d.id in seen:
            issues.append(
                ParseIssue(FileKind.DESCRIPTIONS, line, IssueKind.DUPLICATE_ID, f"duplicate id {d.id}")
            )
        seen.add(d.id)
        if d.concept_id not in concept_ids:
            issues.append(
                ParseIssue(
                    FileKind.DESCRIPTIONS, line, IssueKind.DANGLING,
                    f"conceptId {d.concept_id} not in concepts",
                )
            )

    seen = set()
    for line, r in enumerate(bundle.relationships, start=2):
        if r.id in seen:
            issues.append(
                ParseIssue(FileKind.RELATIONSHIPS, line, IssueKind.DUPLICATE_ID, f"duplicate id {r.id}")
            )
        seen.add(r.id)
        for label, ref in (("sourceId", r.source_id), ("typeId", r.type_id),
                           ("destinationId", r.destination_id)):
            if ref not in concept_ids:
                issues.append(
                    ParseIssue(
                        FileKind.RELATIONSHIPS, line, IssueKind.DANGLING,
                        f"{label} {ref} not in concepts",
                    )
                )

    if check_digits:
        for file, rows in (
            (FileKind.CONCEPTS, bundle.concepts),
            (FileKind.DESCRIPTIONS, bundle.descriptions),
            (FileKind.RELATIONSHIPS, bundle.relationships),
        ):
            for line, row in enumerate(rows, start=2):
                if not verhoeff_valid(str(row.id)):
                    issues.append(
                        ParseIssue(file, line, IssueKind.CHECKSUM_FAIL,
                                   f"id {row.id} fails Verhoeff check")
                    )
    return issues


# --- serialization (round-trip and synthetic output) -------------------


def serialize_concepts(rows: list[Concept]) -> bytes:
    out = [CONCEPTS_HEADER]
    out.extend(f"{c.id}\t{int(c.active)}" for c in rows)
    return ("\n".join(out) + "\n").encode("utf-8")


def serialize_descriptions(rows: list[Description]) -> bytes:
    out = [DESCRIPTIONS_HEADER]
    out.extend(
        f"{d.id}\t{d.concept_id}\t{d.term}\t{d.kind}\t{int(d.active)}" for d in rows
    )
    return ("\n".join(out) + "\n").encode("utf-8")


def serialize_relationships(rows: list[Relationship]) -> bytes:
    out = [RELATIONSHIPS_HEADER]
    out.extend(
        f"{r.id}\t{r.source_id}\t{r.type_id}\t{r.destination_id}\t{r.group}\t{int(r.active)}"
        for r in rows
    )
    return ("\n".join(out) + "\n").encode("utf-8")

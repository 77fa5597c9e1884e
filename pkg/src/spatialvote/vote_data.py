"""Roll-call ingestion: parse case-level votes, slice by court, build agreement matrices.

Input is a justice-centered CSV in the layout of the Supreme Court Database,
one row per (case, justice) with a ``majority`` code: 2 for voting with the
majority, 1 for dissenting.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, TextIO

import numpy as np

from .errors import (
    DuplicateVoteError,
    EmptySliceError,
    RowError,
    SchemaError,
    UnknownCaseError,
)
from .geometry import MAX_VOTERS, CoalitionMask, match_label

SCHEMA_VERSION = 1


class Vote(enum.Enum):
    MAJORITY = "Majority"
    DISSENT = "Dissent"


@dataclass(frozen=True)
class VoteRecord:
    case_id: str
    term: int | None
    justice_id: str
    justice_name: str
    vote: Vote
    natural_court: str | None = None


@dataclass(frozen=True)
class VoteSchema:
    """Column names and vote coding of the input file.

    ``case_id``, ``justice_name`` and ``vote`` are required; the others are
    used when present.  Vote cells whose stripped text is in ``absent_codes``
    mark a justice who did not participate and produce no record.
    """

    case_id: str = "caseId"
    justice_name: str = "justiceName"
    justice_id: str = "justice"
    vote: str = "majority"
    natural_court: str = "naturalCourt"
    term: str = "term"
    codes: Mapping[str, Vote] = field(
        default_factory=lambda: {"2": Vote.MAJORITY, "1": Vote.DISSENT}
    )
    absent_codes: frozenset = frozenset({""})


def parse_votes(stream: TextIO | str, schema: VoteSchema | None = None) -> list[VoteRecord]:
    schema = schema or VoteSchema()
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.DictReader(stream)
    header = reader.fieldnames or []
    for col in (schema.case_id, schema.justice_name, schema.vote):
        if col not in header:
            raise SchemaError(f"missing required column {col!r} (have {header})")
    has_id = schema.justice_id in header
    has_term = schema.term in header
    has_court = schema.natural_court in header

    records = []
    seen = set()
    for row in reader:
        line = reader.line_num
        code = (row.get(schema.vote) or "").strip()
        if code in schema.absent_codes:
            continue
        if code not in schema.codes:
            raise RowError(f"unmappable vote code {code!r} in column {schema.vote!r}", line)
        case_id = (row[schema.case_id] or "").strip()
        name = (row[schema.justice_name] or "").strip()
        if not case_id or not name:
            raise RowError("empty case id or justice name", line)
        jid = (row.get(schema.justice_id) or "").strip() if has_id else ""
        jid = jid or name
        term = None
        if has_term and (row.get(schema.term) or "").strip():
            try:
                term = int(row[schema.term])
            except ValueError:
                raise RowError(f"bad term {row[schema.term]!r}", line) from None
        court = (row.get(schema.natural_court) or "").strip() or None if has_court else None
        if (case_id, jid) in seen:
            raise DuplicateVoteError(f"line {line}: duplicate vote for case {case_id!r}, justice {jid!r}")
        seen.add((case_id, jid))
        records.append(VoteRecord(case_id, term, jid, name, schema.codes[code], court))
    return records


@dataclass(frozen=True)
class CourtSlice:
    court_id: str
    justices: tuple[tuple[str, str], ...]
    cases: tuple[str, ...]
    votes: Mapping[tuple[str, int], Vote]

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(name for _, name in self.justices)

    def __len__(self):
        return len(self.justices)


def _justice_lookup(records: Sequence[VoteRecord]) -> dict[str, str]:
    names = {}
    for r in records:
        names.setdefault(r.justice_id, r.justice_name)
    return names


def slice_by_natural_court(
    records: Sequence[VoteRecord], court_spec: str | Iterable[str]
) -> CourtSlice:
    """Restrict to one court: a natural-court id, or an explicit list of justices.

    Justices in a list may be given by id or name (case-insensitive).  Only
    cases in which every listed justice voted are kept.
    """
    if not records:
        raise EmptySliceError("no vote records")
    names = _justice_lookup(records)
    if isinstance(court_spec, str):
        court_id = court_spec
        pool = [r for r in records if r.natural_court == court_id]
        ids = list(dict.fromkeys(r.justice_id for r in pool))
        if not ids:
            raise EmptySliceError(f"no records for natural court {court_id!r}")
    else:
        pool = records
        wanted = list(court_spec)
        ids = []
        all_ids = list(names)
        all_names = [names[i] for i in all_ids]
        for w in wanted:
            if w in names:
                ids.append(w)
                continue
            try:
                ids.append(all_ids[match_label(all_names, w)])
            except KeyError:
                raise EmptySliceError(f"justice {w!r} appears in no records") from None
        court_id = ",".join(names[i] for i in ids)
    if len(ids) > MAX_VOTERS:
        raise EmptySliceError(f"{len(ids)} justices exceeds the limit of {MAX_VOTERS}")

    pos = {jid: i for i, jid in enumerate(ids)}
    by_case: dict[str, dict[int, Vote]] = {}
    for r in pool:
        if r.justice_id in pos:
            by_case.setdefault(r.case_id, {})[pos[r.justice_id]] = r.vote
    cases = [c for c, v in by_case.items() if len(v) == len(ids)]
    if not cases:
        raise EmptySliceError(f"no case in which all of {court_id} voted")
    votes = {(c, i): by_case[c][i] for c in cases for i in range(len(ids))}
    return CourtSlice(court_id, tuple((i, names[i]) for i in ids), tuple(cases), votes)


@dataclass(frozen=True)
class AgreementMatrix:
    labels: tuple[str, ...]
    matrix: np.ndarray

    @property
    def n(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class DissimilarityMatrix:
    labels: tuple[str, ...]
    matrix: np.ndarray

    @property
    def n(self) -> int:
        return len(self.labels)


def agreement_matrix(court: CourtSlice) -> AgreementMatrix:
    """Fraction of cases in which each pair voted the same way on disposition."""
    n = len(court)
    if not court.cases:
        raise EmptySliceError("slice has no cases", "agreement_matrix")
    V = np.array(
        [[court.votes[(c, i)] is Vote.MAJORITY for i in range(n)] for c in court.cases]
    )
    same = (V[:, :, None] == V[:, None, :]).sum(axis=0)
    A = same / len(court.cases)
    np.fill_diagonal(A, 1.0)
    return AgreementMatrix(court.labels, A)


def dissimilarity(A: AgreementMatrix) -> DissimilarityMatrix:
    D = 1.0 - A.matrix
    np.fill_diagonal(D, 0.0)
    return DissimilarityMatrix(A.labels, D)


def case_coalition(court: CourtSlice, case_id: str) -> tuple[CoalitionMask, CoalitionMask]:
    """(majority, minority) voter masks for one case."""
    n = len(court)
    if (case_id, 0) not in court.votes:
        raise UnknownCaseError(f"case {case_id!r} not in slice {court.court_id!r}")
    majority = CoalitionMask.from_indices(
        n, (i for i in range(n) if court.votes[(case_id, i)] is Vote.MAJORITY)
    )
    return majority, majority.complement()


def matrix_to_csv(M: AgreementMatrix | DissimilarityMatrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["", *M.labels])
    for label, row in zip(M.labels, M.matrix):
        writer.writerow([label, *(repr(float(v)) for v in row)])
    return buf.getvalue()


def matrix_to_json(M: AgreementMatrix | DissimilarityMatrix) -> str:
    return json.dumps(
        {
            "schema_version": SCHEMA_VERSION,
            "justices": list(M.labels),
            "matrix": M.matrix.tolist(),
        },
        indent=2,
    )

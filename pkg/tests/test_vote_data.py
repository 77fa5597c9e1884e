import json

import numpy as np
import pytest

from conftest import COURT_1965, GINZBURG_MINORITY, synthetic_votes_csv
from spatialvote.errors import (
    DuplicateVoteError,
    EmptySliceError,
    RowError,
    SchemaError,
    UnknownCaseError,
)
from spatialvote.vote_data import (
    Vote,
    VoteSchema,
    agreement_matrix,
    case_coalition,
    dissimilarity,
    matrix_to_csv,
    matrix_to_json,
    parse_votes,
    slice_by_natural_court,
)

HEADER = "caseId,justiceName,majority\n"


def one_case(codes, names=None):
    names = names or [f"J{i}" for i in range(len(codes))]
    return HEADER + "".join(f"c1,{n},{c}\n" for n, c in zip(names, codes))


def test_parse_single_dissent():
    (rec,) = parse_votes(HEADER + "1965-001,Douglas,1\n")
    assert (rec.case_id, rec.justice_name, rec.vote) == ("1965-001", "Douglas", Vote.DISSENT)
    assert rec.justice_id == "Douglas"


def test_parse_bad_code_reports_line():
    with pytest.raises(RowError) as info:
        parse_votes(HEADER + "a,X,2\na,Y,3\n")
    assert info.value.line == 3
    assert "line 3" in str(info.value)


def test_parse_nine_votes():
    recs = parse_votes(one_case([2, 2, 2, 2, 2, 1, 1, 1, 1]))
    assert len(recs) == 9
    assert sum(r.vote is Vote.MAJORITY for r in recs) == 5


def test_missing_column_named():
    with pytest.raises(SchemaError, match="majority"):
        parse_votes("caseId,justiceName\na,b\n")


def test_duplicate_vote():
    with pytest.raises(DuplicateVoteError):
        parse_votes(HEADER + "a,X,2\na,X,1\n")


def test_blank_code_is_non_participation():
    recs = parse_votes(HEADER + "a,X,2\na,Y,\n")
    assert [r.justice_name for r in recs] == ["X"]


def test_custom_schema():
    schema = VoteSchema(case_id="docket", justice_name="who", vote="v", codes={"M": Vote.MAJORITY, "D": Vote.DISSENT})
    recs = parse_votes("docket,who,v\n7,A,D\n", schema)
    assert recs[0].vote is Vote.DISSENT


def test_completeness_filter():
    recs = parse_votes(synthetic_votes_csv(absent=(0, "HLBlack")))
    court = slice_by_natural_court(recs, "1503")
    assert "1965-000" not in court.cases
    assert len(court.cases) == 12


def test_two_case_completeness():
    text = HEADER + "".join(f"A,J{i},2\n" for i in range(9)) + "".join(f"B,J{i},2\n" for i in range(8))
    court = slice_by_natural_court(parse_votes(text), [f"J{i}" for i in range(9)])
    assert court.cases == ("A",)


def test_absent_justice_is_empty_slice():
    with pytest.raises(EmptySliceError):
        slice_by_natural_court(parse_votes(one_case([2, 1])), ["J0", "Marshall"])


def test_court_slice_names():
    court = slice_by_natural_court(parse_votes(synthetic_votes_csv()), "1503")
    assert court.labels == tuple(COURT_1965)
    for name in ("Douglas", "Harlan2", "Stewart", "Black"):
        assert any(lab.endswith(name) for lab in court.labels)


def test_agreement_single_case():
    court = slice_by_natural_court(parse_votes(one_case([2, 2, 1])), ["J0", "J1", "J2"])
    A = agreement_matrix(court).matrix
    assert A[0, 1] == 1 and A[0, 2] == 0 and A[1, 2] == 0


def test_agreement_half():
    text = HEADER + "a,X,2\na,Y,2\nb,X,2\nb,Y,1\n"
    A = agreement_matrix(slice_by_natural_court(parse_votes(text), ["X", "Y"]))
    assert A.matrix[0, 1] == 0.5
    assert np.allclose(A.matrix, A.matrix.T)


def test_identical_voters_have_zero_dissimilarity():
    text = HEADER + "a,X,2\na,Y,2\na,Z,1\nb,X,1\nb,Y,1\nb,Z,2\n"
    A = agreement_matrix(slice_by_natural_court(parse_votes(text), ["X", "Y", "Z"]))
    D = dissimilarity(A)
    assert A.matrix[0, 1] == 1 and D.matrix[0, 1] == 0
    assert np.all(np.diag(D.matrix) == 0)


def test_dissimilarity_values():
    from spatialvote.vote_data import AgreementMatrix

    A = AgreementMatrix(("a", "b"), np.array([[1.0, 0.25], [0.25, 1.0]]))
    assert dissimilarity(A).matrix[0, 1] == 0.75
    ident = dissimilarity(AgreementMatrix(("a", "b", "c"), np.eye(3))).matrix
    assert np.array_equal(ident, 1 - np.eye(3))


def test_case_coalition_split_and_unanimous():
    text = one_case([2, 2, 2, 2, 2, 1, 1, 1, 1]) + "".join(f"c2,J{i},2\n" for i in range(9))
    court = slice_by_natural_court(parse_votes(text), [f"J{i}" for i in range(9)])
    maj, mino = case_coalition(court, "c1")
    assert maj.indices() == (0, 1, 2, 3, 4) and mino.indices() == (5, 6, 7, 8)
    maj, mino = case_coalition(court, "c2")
    assert len(maj) == 9 and len(mino) == 0
    with pytest.raises(UnknownCaseError):
        case_coalition(court, "nope")


def test_ginzburg_minority():
    court = slice_by_natural_court(parse_votes(synthetic_votes_csv()), "1503")
    _, minority = case_coalition(court, "1965-GINZ")
    assert set(minority.labels(court.labels)) == set(GINZBURG_MINORITY)


def test_pipeline_deterministic():
    text = synthetic_votes_csv()
    a = agreement_matrix(slice_by_natural_court(parse_votes(text), "1503"))
    b = agreement_matrix(slice_by_natural_court(parse_votes(text), "1503"))
    assert matrix_to_csv(a) == matrix_to_csv(b)
    data = json.loads(matrix_to_json(a))
    assert data["schema_version"] == 1
    assert np.array_equal(np.array(data["matrix"]), a.matrix)

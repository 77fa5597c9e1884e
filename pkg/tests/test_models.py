import numpy as np
import pytest

from conftest import CENTER, mask
from oracles import random_general_position
from spatialvote.coalitions import edp_allowed
from spatialvote.embedding import IdealPointConfig, perturb_to_general_position
from spatialvote.errors import (
    AmbiguityError,
    DegenerateOutcomeError,
    IndifferenceError,
    WitnessError,
)
from spatialvote.geometry import Line2, pairline_ksets
from spatialvote.models import (
    OutcomeSpec,
    edp_vote,
    nearest_outcome_partition,
    soi_vote,
    soi_witness_from_line,
    tioli_vote,
)

PAIR = IdealPointConfig(2, [(0, 0), (10, 0)])


def test_edp_pair():
    out = edp_vote(PAIR, (1, 0), (9, 0))
    assert out.p_voters == mask(2, 0) and out.q_voters == mask(2, 1)


def test_edp_all_one_side():
    out = edp_vote(PAIR, (-5, 0), (30, 0))
    assert len(out.p_voters) == 2 and len(out.q_voters) == 0


def test_edp_equidistant_center(square):
    with pytest.raises(DegenerateOutcomeError, match="v5"):
        edp_vote(square, (1, -5), (1, 7))


def test_edp_coincident_outcomes():
    with pytest.raises(DegenerateOutcomeError):
        edp_vote(PAIR, (3, 3), (3, 3))


def test_soi_basic_and_overlap():
    out = soi_vote(PAIR, OutcomeSpec((0, 0), (10, 0), 1, 1))
    assert out.p_voters == mask(2, 0)
    # discs overlap around x = 5 but no voter sits in the lens
    out = soi_vote(PAIR, OutcomeSpec((2, 0), (8, 0), 4, 4))
    assert out.p_voters == mask(2, 0)


def test_soi_ambiguity_and_indifference():
    cfg = IdealPointConfig(2, [(0, 0), (5, 0), (10, 0)], ("a", "mid", "b"))
    with pytest.raises(AmbiguityError, match="mid"):
        soi_vote(cfg, OutcomeSpec((0, 0), (10, 0), 6, 6))
    with pytest.raises(IndifferenceError, match="mid"):
        soi_vote(cfg, OutcomeSpec((0, 0), (10, 0), 1, 1))


def test_tioli_examples(square):
    assert len(tioli_vote(square, (1, 1), 0).p_voters) == 0
    assert len(tioli_vote(square, (1, 1), 100).p_voters) == 5
    assert tioli_vote(square, (1, 1), 1).p_voters == mask(5, CENTER)
    with pytest.raises(DegenerateOutcomeError):
        tioli_vote(square, (0, 1), 1)


def test_nearest_partition_matches_edp():
    rng = np.random.default_rng(0)
    pts = rng.uniform(0, 1, (9, 2))
    p, q = (0.2, 0.3), (0.7, 0.6)
    part = nearest_outcome_partition(pts, [p, q])
    assert part[0] == edp_vote(pts, p, q).p_voters


def test_nearest_partition_identity():
    tri = np.array([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])
    part = nearest_outcome_partition(tri, tri)
    assert [part[k].indices() for k in range(3)] == [(0,), (1,), (2,)]
    with pytest.raises(DegenerateOutcomeError):
        nearest_outcome_partition(tri, [(0, 0), (0, 0)])


def test_witness_for_pair():
    line = Line2.from_real(1.0, 0.0, 5.0)
    spec = soi_witness_from_line(PAIR, mask(2, 0), line)
    assert spec.p[0] < 5 < spec.q[0]
    # tangent to x = 5 from each side
    assert spec.p[0] + spec.s_p == pytest.approx(5.0)
    assert spec.q[0] - spec.s_q == pytest.approx(5.0)
    assert soi_vote(PAIR, spec).p_voters == mask(2, 0)


def test_witness_rejects_non_separating_line():
    with pytest.raises(WitnessError):
        soi_witness_from_line(PAIR, mask(2, 0), Line2.from_real(1.0, 0.0, 20.0))


def test_witness_every_separable_mask_on_square(square):
    pts = perturb_to_general_position(IdealPointConfig(2, square), 1e-6).points
    count = 0
    for k in range(1, 5):
        for m in pairline_ksets(pts, k):
            ok, line = edp_allowed(pts, m)
            assert ok
            spec = soi_witness_from_line(pts, m, line)
            assert soi_vote(pts, spec).p_voters == m
            count += 1
    assert count > 0


def test_witness_collinear_prefix():
    cfg = IdealPointConfig(2, np.column_stack([np.arange(1.0, 10.0), np.zeros(9)]))
    pts = perturb_to_general_position(cfg, 1e-6).points
    line = Line2.from_real(1.0, 0.0, 4.5)
    m = mask(9, 0, 1, 2, 3)
    assert soi_vote(pts, soi_witness_from_line(pts, m, line)).p_voters == m


def test_witness_random_configs():
    rng = np.random.default_rng(17)
    for _ in range(5):
        pts = random_general_position(rng, 7)
        for m in pairline_ksets(pts, 3):
            _, line = edp_allowed(pts, m)
            assert soi_vote(pts, soi_witness_from_line(pts, m, line)).p_voters == m


def test_outcome_spec_validation_and_round_trip():
    with pytest.raises(ValueError):
        OutcomeSpec((0, 0), (1, 1), -1.0)
    spec = OutcomeSpec((0, 0), (1, 1), 0.5, 2.0)
    assert OutcomeSpec.from_dict(spec.to_dict()) == spec

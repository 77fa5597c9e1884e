"""Spatial voting models (EDP, SOI, TIOLI) and exact coalition geometry."""

__version__ = "0.1.0"

from .coalitions import (
    ClassificationReport,
    ModelKind,
    classify_case,
    edp_allowed,
    edp_allowed_1d,
    enumerate_allowed,
    soi_allowed,
    tioli_allowed,
    tioli_allowed_1d,
)
from .embedding import (
    IdealPointConfig,
    OrientationSpec,
    classical_mds,
    orient,
    perturb_to_general_position,
    stress,
)
from .geometry import (
    CoalitionMask,
    Grid,
    Line2,
    grid_coalition_labels,
    grid_scan,
    linearly_separable,
    nearest_k_region_feasible,
    orientation,
    pairline_ksets,
)
from .models import (
    OutcomeSpec,
    VoteOutcome,
    edp_vote,
    nearest_outcome_partition,
    soi_vote,
    soi_witness_from_line,
    tioli_vote,
)
from .regions import (
    RegionPolygon,
    RegionSample,
    refine_until_stable,
    region_polygon,
    soi_outcome_regions,
    tioli_outcome_region,
)
from .render import PlotSpec, render_svg
from .vote_data import (
    agreement_matrix,
    case_coalition,
    dissimilarity,
    parse_votes,
    slice_by_natural_court,
)

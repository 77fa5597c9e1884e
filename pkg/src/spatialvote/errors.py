"""Exception hierarchy.

Every error carries the name of the operation that raised it so the CLI can
report a diagnostic naming the failing step.
"""


class SpatialVoteError(Exception):
    operation = "spatialvote"

    def __init__(self, message, operation=None):
        super().__init__(message)
        if operation is not None:
            self.operation = operation


# vote_data
class SchemaError(SpatialVoteError, KeyError):
    operation = "parse_votes"

    def __str__(self):
        return self.args[0]


class RowError(SpatialVoteError, ValueError):
    operation = "parse_votes"

    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DuplicateVoteError(SpatialVoteError, ValueError):
    operation = "parse_votes"


class EmptySliceError(SpatialVoteError, ValueError):
    operation = "slice_by_natural_court"


class UnknownCaseError(SpatialVoteError, LookupError):
    operation = "case_coalition"


# embedding
class InputError(SpatialVoteError, ValueError):
    operation = "classical_mds"


class AnchorError(SpatialVoteError, LookupError):
    operation = "orient"


class PerturbationError(SpatialVoteError, RuntimeError):
    operation = "perturb_to_general_position"


# geometry
class GeneralPositionError(SpatialVoteError, ValueError):
    operation = "general_position"


class GridError(SpatialVoteError, ValueError):
    operation = "grid_scan"


# models
class DegenerateOutcomeError(SpatialVoteError, ValueError):
    operation = "vote"


class AmbiguityError(SpatialVoteError, ValueError):
    operation = "soi_vote"


class IndifferenceError(SpatialVoteError, ValueError):
    operation = "soi_vote"


class WitnessError(SpatialVoteError, ValueError):
    operation = "soi_witness_from_line"


# render
class RenderError(SpatialVoteError, ValueError):
    operation = "render_svg"

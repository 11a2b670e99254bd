"""Exception hierarchy.

Every error carries a short machine-readable ``code`` which the CLI forwards
in its JSON error reports.
"""


class ConeTileError(ValueError):
    code = "error"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details


class DimensionMismatch(ConeTileError):
    code = "dimension_mismatch"


class ZeroGenerator(ConeTileError):
    code = "zero_generator"


class HalfSpaceViolation(ConeTileError):
    code = "half_space_violation"


class NotATwoFace(ConeTileError):
    code = "not_a_two_face"


class NotAFacet(ConeTileError):
    code = "not_a_facet"


class PointNotInterior(ConeTileError):
    code = "point_not_interior"


class RayStaysInside(ConeTileError):
    code = "ray_stays_inside"


class ConePreconditionFailed(ConeTileError):
    code = "cone_precondition_failed"


class BoxExceedsTruncation(ConeTileError):
    code = "box_exceeds_truncation"


class OriginMissingFromTile(ConeTileError):
    code = "origin_missing_from_tile"


class NotGridAlignedAfterRescale(ConeTileError):
    """The rescaled input is not an integer cube tiling.

    ``details`` holds the certificate: the scaling used and the offending
    translation or the measure mismatch of the tile.
    """

    code = "not_grid_aligned_after_rescale"


class MissingAxisTranslation(ConeTileError):
    code = "missing_axis_translation"


class SearchBudgetExceeded(ConeTileError):
    code = "search_budget_exceeded"


class DeterminantDigitMismatch(ConeTileError):
    code = "determinant_digit_mismatch"


class NotExpanding(ConeTileError):
    code = "not_expanding"


class NotInteger(ConeTileError):
    code = "not_integer"


class VertexOutsideBox(ConeTileError):
    code = "vertex_outside_box"


class CostGuardExceeded(ConeTileError):
    code = "cost_guard_exceeded"


class ParseError(ConeTileError):
    code = "parse_error"

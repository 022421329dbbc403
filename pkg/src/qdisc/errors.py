"""Exception types.

Every error carries a stable ``code`` string so that reports and the
command line can name the failure without parsing messages.
"""


class QDiscError(ValueError):
    code = "QDISC_ERROR"


class NormalizationViolation(QDiscError):
    code = "NORMALIZATION_VIOLATION"


class NonfiniteCoefficient(QDiscError):
    code = "NONFINITE_COEFFICIENT"


class PointOutsideDisc(QDiscError):
    code = "POINT_OUTSIDE_DISC"


class RadiusOutOfRange(QDiscError):
    code = "RADIUS_OUT_OF_RANGE"


class NotNormalized(QDiscError):
    code = "NOT_NORMALIZED"


class ParameterOutOfRange(QDiscError):
    code = "PARAMETER_OUT_OF_RANGE"


class EmptyGrid(QDiscError):
    code = "EMPTY_GRID"


class AllPointsSingular(QDiscError):
    code = "ALL_POINTS_SINGULAR"


class DenominatorSingular(QDiscError):
    code = "DENOMINATOR_SINGULAR"


class UnknownEntry(QDiscError):
    code = "UNKNOWN_ENTRY"


class NotConvexInput(QDiscError):
    code = "NOT_CONVEX_INPUT"


class MembershipMismatch(QDiscError):
    code = "MEMBERSHIP_MISMATCH"


class AngleOutOfRange(QDiscError):
    code = "ANGLE_OUT_OF_RANGE"


class ZetaEqualsOne(QDiscError):
    code = "ZETA_EQUALS_ONE"


class ZetaOnBoundary(QDiscError):
    code = "ZETA_ON_BOUNDARY"


class ConfigInvalid(QDiscError):
    code = "CONFIG_INVALID"

"""Exception hierarchy shared by every module of the package."""


class RatDistError(Exception):
    """Base class; the CLI maps any subclass to exit code 2 unless noted."""


class FactorizationLimitExceeded(RatDistError):
    pass


class MixedFieldError(RatDistError):
    pass


class NoSolution(RatDistError):
    pass


class SearchExhausted(RatDistError):
    pass


class DegenerateConic(RatDistError):
    pass


class CoincidentPoints(RatDistError):
    pass


class Collinear(RatDistError):
    pass


class NotCollinear(RatDistError):
    pass


class NotRationalGram(RatDistError):
    pass


class SingularMatrix(RatDistError):
    pass


class NotAdmissible(RatDistError):
    pass


class DegenerateParameter(RatDistError):
    pass


class LineThroughOrigin(RatDistError):
    pass


class LineOnCurve(RatDistError):
    """The chord lies on the cubic: the fiber is reducible."""


class SingularPoint(RatDistError):
    pass


class EtaEqualsP(RatDistError):
    pass


class PointAtInfinity(RatDistError):
    pass


class ExcludedDenominator(RatDistError):
    pass


class BZero(RatDistError):
    pass


class KZero(RatDistError):
    pass


class DegeneratePair(RatDistError):
    pass


class BZeroDegenerate(RatDistError):
    pass


class PerfectSquareDelta(RatDistError):
    pass


class AutomorphNotFound(RatDistError):
    pass

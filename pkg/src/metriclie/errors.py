"""Exception hierarchy shared by every module of the package."""


class MetricLieError(Exception):
    """Base class for all errors raised by metriclie."""


class ShapeError(MetricLieError, ValueError):
    """Matrix or vector dimensions do not fit the operation."""


class SchemaError(MetricLieError, ValueError):
    """Input data does not match the interchange format."""


class JacobiError(MetricLieError, ValueError):
    """Structure constants violate the Jacobi identity."""


class NonSolvable(MetricLieError):
    pass


class NotAnIdeal(MetricLieError):
    pass


class NotCentral(MetricLieError):
    pass


class NotIsotropic(MetricLieError):
    pass


class DegenerateForm(MetricLieError):
    pass


class Abelian(MetricLieError):
    """No isotropic central line exists because the algebra is abelian."""


class AnisotropicOverQ(MetricLieError):
    """The form has no rational isotropic vector in the searched subspace."""


class NotSkew(MetricLieError):
    pass


class NotDerivation(MetricLieError):
    pass


class NotNilInvariant(MetricLieError):
    pass


class InvalidPairing(MetricLieError):
    pass


class InvalidParams(MetricLieError, ValueError):
    pass

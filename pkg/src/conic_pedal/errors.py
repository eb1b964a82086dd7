"""Exception hierarchy.

Domain errors (reducible conic, silhouette point, inversion at the origin, ...)
derive from :class:`DomainError`; the CLI maps them to exit code 1.
"""


class ConicPedalError(Exception):
    pass


class DomainError(ConicPedalError, ValueError):
    pass


class EmptyCurveError(DomainError):
    def __init__(self, msg="empty curve"):
        super().__init__(msg)


class ReducibleConicError(DomainError):
    def __init__(self, msg="reducible conic"):
        super().__init__(msg)


class NotParametrizableError(DomainError):
    def __init__(self, msg="not parametrizable"):
        super().__init__(msg)


class SingularPointError(DomainError):
    pass


class SilhouettePointError(DomainError):
    def __init__(self, msg="silhouette point"):
        super().__init__(msg)


class OriginInversionError(DomainError):
    def __init__(self, msg="inversion undefined at origin"):
        super().__init__(msg)


class TheoremViolation(ConicPedalError, AssertionError):
    def __init__(self, msg="theorem violation"):
        super().__init__(msg)


class InputError(ConicPedalError, ValueError):
    """Malformed JSON or values that do not parse (CLI exit code 2)."""

"""Exception hierarchy shared by every radlab module."""


class RadlabError(Exception):
    """Base class for all radlab errors."""


class DomainError(RadlabError, ValueError):
    """An argument lies outside the domain of an analytic function."""


class SingularityError(DomainError):
    """Evaluation hit a pole, branch point or vanishing factor."""


class RangeError(RadlabError, ValueError):
    """A real parameter lies outside its admissible interval."""


class UnsupportedTargetError(RadlabError, ValueError):
    """The operation is not defined for the requested target class."""


class NoRootError(RadlabError, ArithmeticError):
    """A bracketing root search was given a bracket without a sign change."""


class NonFiniteError(RadlabError, OverflowError):
    """A computation produced NaN or infinity."""

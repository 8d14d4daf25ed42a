"""Sharp radii of starlikeness for the product classes T1, T2, T3."""

from .errors import (
    DomainError,
    NoRootError,
    NonFiniteError,
    RadlabError,
    RangeError,
    SingularityError,
    UnsupportedTargetError,
)
from .families import Family, MemberInstance, SchwarzSpec
from .radii import RadiusResult, compute_radius, radius_for_target, radius_order_alpha
from .regions import NAMED_TARGETS, TargetClass, TargetKind

__version__ = "0.1.0"

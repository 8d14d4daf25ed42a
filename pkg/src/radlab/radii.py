"""Sharp radii of starlikeness for T1, T2, T3.

Every radius comes from one equation: the small-radius derivative bound
``B(r)`` equals the target's inradius at 1, ``delta``. The closed forms
below solve that equation exactly; :func:`solve_radius_numeric` solves it
again by bisection as an independent check. Sharpness is certified by the
extremal function, whose ``z f'/f`` at ``z = -rho`` lands on the region's
boundary point ``1 - delta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NoRootError, RangeError, UnsupportedTargetError
from .families import SPLIT_RADIUS, Family, extremal_log_derivative, first_branch_bound
from .kernel import principal_log
from .regions import TargetClass, TargetKind, implicit_defect, inradius_at_one

__all__ = [
    "RadiusResult",
    "radius_order_alpha",
    "radius_for_delta",
    "radius_for_target",
    "solve_radius_numeric",
    "verify_sharpness",
    "radius_univalence",
    "compute_radius",
]


def radius_order_alpha(family: Family, alpha: float) -> float:
    """Radius of starlikeness of order ``alpha`` (equivalently of the class
    ``|z f'/f - 1| < 1 - alpha``)."""
    if not 0.0 <= alpha < 1.0:
        raise RangeError(f"alpha must lie in [0, 1), got {alpha}")
    a = alpha
    if family is Family.T1:
        return (7 - 2 * a - math.sqrt(17 + 4 * a + 4 * a * a)) / 8
    if family is Family.T2:
        return (3 - a - math.sqrt(5 - 2 * a + a * a)) / 2
    return (1 - a) / math.sqrt(8 + 2 * a - a * a)


def radius_for_delta(family: Family, delta: float) -> float:
    """Root of ``B(r) = delta`` on the small-radius branch, in closed form."""
    if not 0.0 < delta <= 1.0:
        raise RangeError(f"delta must lie in (0, 1], got {delta}")
    d = delta
    if family is Family.T1:
        b = 5 + 2 * d
        return (b - math.sqrt(b * b - 32 * d)) / 8
    if family is Family.T2:
        return ((2 + d) - math.sqrt(4 + d * d)) / 2
    return d / math.sqrt(9 - d * d)


def radius_for_target(family: Family, target: TargetClass) -> float:
    """Sharp radius for ``target``: the disk ``|w - 1| < delta`` is the
    largest one about 1 inside the region and it touches the boundary at
    the extremal's value, so the order-``1 - delta`` radius is sharp."""
    if target.kind in (TargetKind.ORDER_ALPHA, TargetKind.DISK_ALPHA):
        return radius_order_alpha(family, target.alpha)
    return radius_for_delta(family, inradius_at_one(target))


def solve_radius_numeric(family: Family, delta: float, tol: float = 1e-14) -> float:
    """Solve ``B(r) = delta`` by bisection on ``[0, sqrt(2) - 1]``.

    Raises:
        NoRootError: if ``delta`` is not attained on the bracket.
    """
    lo, hi = 0.0, SPLIT_RADIUS
    f_hi = first_branch_bound(family, hi) - delta
    if not delta > 0 or f_hi < 0:
        raise NoRootError(f"B(r) = {delta} has no root in [0, {hi}] for {family}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if first_branch_bound(family, mid) < delta:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# implicit-defect value at w = 1; divides the polynomial defects so the
# sharpness residual is relative to the interior scale
_IMPLICIT_SCALE = {
    TargetKind.CARDIOID: 48.0,
    TargetKind.NEPHROID: (4 / 9) ** 3,
}


def _boundary_residual(target: TargetClass, w: complex) -> float:
    kind = target.kind
    if kind is TargetKind.PARABOLIC:
        return abs(w.real - abs(w - 1))
    if kind is TargetKind.EXPONENTIAL:
        return abs(abs(principal_log(w)) - 1)
    if kind is TargetKind.SIGMOID:
        return abs(abs(principal_log(w / (2 - w))) - 1)
    if kind in _IMPLICIT_SCALE:
        return abs(implicit_defect(target, w)) / _IMPLICIT_SCALE[kind]
    return 0.0


def verify_sharpness(family: Family, target: TargetClass) -> float:
    """Residual of the extremal's boundary contact at ``z = -rho``.

    Returns the larger of ``|w - (1 - delta)|`` and the target's own
    boundary equation evaluated at ``w = z f'/f``.
    """
    rho = radius_for_target(family, target)
    w = extremal_log_derivative(family, -rho)
    contact = abs(w - (1 - inradius_at_one(target)))
    return max(contact, _boundary_residual(target, w))


def radius_univalence(family: Family) -> float:
    """Radius of univalence, which coincides with the radius of starlikeness."""
    return radius_order_alpha(family, 0.0)


@dataclass(frozen=True)
class RadiusResult:
    family: Family
    target: TargetClass
    closed_form: float
    numeric: float
    sharpness_point: complex
    sharpness_defect: float

    @property
    def closed_numeric_gap(self) -> float:
        return abs(self.closed_form - self.numeric)

    def holds(self, tol_closed_numeric: float = 1e-12, tol_sharpness: float = 1e-9) -> bool:
        return self.closed_numeric_gap < tol_closed_numeric and self.sharpness_defect < tol_sharpness

    def to_dict(self) -> dict:
        out = {"family": self.family.value, "target": self.target.name}
        if self.target.alpha is not None:
            out["alpha"] = self.target.alpha
        out["closed_form"] = self.closed_form
        out["numeric"] = self.numeric
        out["sharpness_defect"] = self.sharpness_defect
        return out


def compute_radius(family: Family, target: TargetClass) -> RadiusResult:
    """Closed form, bisection cross-check and sharpness residual for one pair."""
    closed = radius_for_target(family, target)
    if not 0.0 < closed < 1.0:
        raise UnsupportedTargetError(f"radius for {target.label} is degenerate")
    numeric = solve_radius_numeric(family, inradius_at_one(target))
    return RadiusResult(
        family=family,
        target=target,
        closed_form=closed,
        numeric=numeric,
        sharpness_point=complex(-closed, 0.0),
        sharpness_defect=verify_sharpness(family, target),
    )

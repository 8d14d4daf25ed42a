"""Target regions of the starlike subclasses.

Each subclass is described by a univalent map ``phi`` of the unit disk with
``phi(0) = 1``; a function is in the subclass when ``z f'(z) / f(z)`` takes
values in ``phi(D)``. This module evaluates ``phi``, decides membership in
``phi(D)``, and checks the disk-inclusion lemmas (a disk centred at a real
point ``a`` lies inside ``phi(D)``) by dense boundary sampling.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import mpmath
import numpy as np

from .errors import DomainError, RangeError, UnsupportedTargetError
from .kernel import Disk, principal_arcsin, principal_log, principal_sqrt, sqrt_upper

__all__ = [
    "TargetKind",
    "TargetClass",
    "InclusionReport",
    "NAMED_TARGETS",
    "RATIONAL_K",
    "superordinate",
    "contains",
    "implicit_defect",
    "preimage_defect",
    "inradius_at_one",
    "admissible_interval",
    "lemma_radius",
    "verify_disk_inclusion",
    "boundary_polyline",
]

RATIONAL_K = math.sqrt(2.0) + 1.0
_E = math.e


class TargetKind(enum.Enum):
    ORDER_ALPHA = "order"
    DISK_ALPHA = "disk"
    PARABOLIC = "parabolic"
    EXPONENTIAL = "exp"
    CARDIOID = "cardioid"
    SINE = "sine"
    RATIONAL = "rational"
    NEPHROID = "nephroid"
    SIGMOID = "sigmoid"


_ALPHA_KINDS = (TargetKind.ORDER_ALPHA, TargetKind.DISK_ALPHA)


@dataclass(frozen=True)
class TargetClass:
    """One starlike subclass; ``alpha`` is set only for the two order classes."""

    kind: TargetKind
    alpha: Optional[float] = None

    def __post_init__(self):
        if self.kind in _ALPHA_KINDS:
            if self.alpha is None:
                raise RangeError(f"{self.kind.value} target needs an alpha")
            if not 0.0 <= self.alpha < 1.0:
                raise RangeError(f"alpha must lie in [0, 1), got {self.alpha}")
            object.__setattr__(self, "alpha", float(self.alpha))
        elif self.alpha is not None:
            raise RangeError(f"{self.kind.value} target takes no alpha")

    @classmethod
    def order(cls, alpha: float) -> "TargetClass":
        return cls(TargetKind.ORDER_ALPHA, alpha)

    @classmethod
    def disk(cls, alpha: float) -> "TargetClass":
        return cls(TargetKind.DISK_ALPHA, alpha)

    @classmethod
    def from_name(cls, name: str, alpha: Optional[float] = None) -> "TargetClass":
        try:
            kind = TargetKind(name.strip().lower())
        except ValueError:
            names = ", ".join(k.value for k in TargetKind)
            raise UnsupportedTargetError(f"unknown target {name!r}; expected one of {names}") from None
        if kind in _ALPHA_KINDS:
            return cls(kind, 0.0 if alpha is None else alpha)
        return cls(kind, alpha)

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def label(self) -> str:
        if self.alpha is None:
            return self.name
        return f"{self.name}({self.alpha:g})"

    def __str__(self):
        return self.label


PARABOLIC = TargetClass(TargetKind.PARABOLIC)
EXPONENTIAL = TargetClass(TargetKind.EXPONENTIAL)
CARDIOID = TargetClass(TargetKind.CARDIOID)
SINE = TargetClass(TargetKind.SINE)
RATIONAL = TargetClass(TargetKind.RATIONAL)
NEPHROID = TargetClass(TargetKind.NEPHROID)
SIGMOID = TargetClass(TargetKind.SIGMOID)

# Row order used by every table: the order the results are stated in.
NAMED_TARGETS = (PARABOLIC, EXPONENTIAL, CARDIOID, SINE, RATIONAL, NEPHROID, SIGMOID)


def _wrap(z):
    arr = np.asarray(z, dtype=np.complex128)
    return arr, arr.ndim == 0


def _out(values, scalar):
    return values.item() if scalar else values


def superordinate(target: TargetClass, z):
    """Evaluate the target's map ``phi`` at ``z`` (scalar or array).

    Raises:
        DomainError: for the parabolic map at ``z = 1``, or for
            ``|z| > 1``.
    """
    z, scalar = _wrap(z)
    if np.any(np.abs(z) > 1.0 + 1e-12):
        raise DomainError("superordinate maps are defined on the closed unit disk only")
    kind = target.kind
    with np.errstate(all="ignore"):
        if kind is TargetKind.ORDER_ALPHA:
            if np.any(z == 1):
                raise DomainError("order-alpha map has a pole at z = 1")
            w = (1 + (1 - 2 * target.alpha) * z) / (1 - z)
        elif kind is TargetKind.DISK_ALPHA:
            w = 1 + (1 - target.alpha) * z
        elif kind is TargetKind.PARABOLIC:
            if np.any(z == 1):
                raise DomainError("parabolic map has a logarithmic singularity at z = 1")
            s = sqrt_upper(z)
            w = 1 + (2 / math.pi**2) * principal_log((1 + s) / (1 - s)) ** 2
        elif kind is TargetKind.EXPONENTIAL:
            w = np.exp(z)
        elif kind is TargetKind.CARDIOID:
            w = 1 + (4 / 3) * z + (2 / 3) * z * z
        elif kind is TargetKind.SINE:
            w = 1 + np.sin(z)
        elif kind is TargetKind.RATIONAL:
            k = RATIONAL_K
            w = 1 + (k * z + z * z) / (k * k - k * z)
        elif kind is TargetKind.NEPHROID:
            w = 1 + z - z**3 / 3
        elif kind is TargetKind.SIGMOID:
            w = 2 / (1 + np.exp(-z))
        else:  # pragma: no cover
            raise UnsupportedTargetError(kind)
    return _out(np.asarray(w, dtype=np.complex128), scalar)


def _cardioid_preimages(w):
    # phi = 1/3 + (2/3)(1 + z)^2
    s = principal_sqrt((3 * w - 1) / 2)
    return -1 + s, -1 - s


def _rational_preimages(w):
    # 1 + (kz + z^2)/(k^2 - kz) = w  <=>  z^2 + k w z - k^2 (w - 1) = 0
    k = RATIONAL_K
    disc = principal_sqrt(k * k * w * w + 4 * k * k * (w - 1))
    return (-k * w + disc) / 2, (-k * w - disc) / 2


def _nephroid_preimages(w):
    # z^3 - 3z + 3(w - 1) = 0; trigonometric form with p = -3 gives
    # z_j = 2 cos(arccos(3(1 - w)/2)/3 - 2 pi j / 3), valid for complex w.
    theta = (np.pi / 2 - principal_arcsin(1.5 * (1 - w))) / 3
    return tuple(2 * np.cos(theta - 2 * np.pi * j / 3) for j in range(3))


def _parabolic_preimage(w):
    # Inverse of 1 + (2/pi^2) L^2 with L = log((1+s)/(1-s)) = 2 artanh s:
    # z = s^2 = tanh^2(L/2), even in L so either root of L^2 works.
    half_l = (np.pi / 2) * principal_sqrt((w - 1) / 2)
    return np.tanh(half_l) ** 2


def _min_preimage_modulus(target: TargetClass, w):
    kind = target.kind
    with np.errstate(all="ignore"):
        if kind is TargetKind.CARDIOID:
            roots = _cardioid_preimages(w)
        elif kind is TargetKind.RATIONAL:
            roots = _rational_preimages(w)
        elif kind is TargetKind.NEPHROID:
            roots = _nephroid_preimages(w)
        elif kind is TargetKind.SINE:
            roots = (principal_arcsin(w - 1),)
        elif kind is TargetKind.EXPONENTIAL:
            roots = (principal_log(w),)
        elif kind is TargetKind.SIGMOID:
            roots = (principal_log(w / (2 - w)),)
        elif kind is TargetKind.PARABOLIC:
            roots = (_parabolic_preimage(w),)
        elif kind is TargetKind.ORDER_ALPHA:
            roots = ((w - 1) / (w + 1 - 2 * target.alpha),)
        elif kind is TargetKind.DISK_ALPHA:
            roots = ((w - 1) / (1 - target.alpha),)
        else:  # pragma: no cover
            raise UnsupportedTargetError(kind)
    return np.min(np.abs(np.stack(roots)), axis=0)


def contains(target: TargetClass, w):
    """True where ``w`` lies in the open region ``phi(D)``.

    Boundary points are outside. Works elementwise on arrays.
    """
    w, scalar = _wrap(w)
    kind = target.kind
    with np.errstate(all="ignore"):
        if kind is TargetKind.ORDER_ALPHA:
            inside = w.real > target.alpha
        elif kind is TargetKind.DISK_ALPHA:
            inside = np.abs(w - 1) < 1 - target.alpha
        elif kind is TargetKind.PARABOLIC:
            inside = w.real > np.abs(w - 1)
        elif kind is TargetKind.EXPONENTIAL:
            nz = w != 0
            inside = nz & (np.abs(np.log(np.where(nz, w, 1) + 0j)) < 1)
        elif kind is TargetKind.SIGMOID:
            ok = (w != 0) & (w != 2)
            ratio = np.where(ok, w, 1) / (2 - np.where(ok, w, 1))
            inside = ok & (np.abs(np.log(ratio + 0j)) < 1)
        else:
            inside = _min_preimage_modulus(target, w) < 1
    return bool(inside) if scalar else inside


_IMPLICIT_KINDS = (
    TargetKind.PARABOLIC,
    TargetKind.EXPONENTIAL,
    TargetKind.CARDIOID,
    TargetKind.NEPHROID,
    TargetKind.SIGMOID,
)


def implicit_defect(target: TargetClass, w):
    """Signed implicit-curve value: negative inside, zero on the boundary.

    Cardioid and nephroid use their polynomial boundary equations; the
    parabola uses ``|w - 1| - Re w``; exponential and sigmoid use
    ``|log w| - 1`` and ``|log(w / (2 - w))| - 1``.

    Raises:
        UnsupportedTargetError: for targets without an implicit form.
        DomainError: at the logarithmic singularities (w = 0, and w = 2
            for the sigmoid).
    """
    if target.kind not in _IMPLICIT_KINDS:
        raise UnsupportedTargetError(f"no implicit boundary equation for {target.label}")
    w, scalar = _wrap(w)
    u, v = w.real, w.imag
    kind = target.kind
    if kind is TargetKind.PARABOLIC:
        d = np.abs(w - 1) - u
    elif kind is TargetKind.CARDIOID:
        q = 9 * u * u + 9 * v * v
        d = (q - 18 * u + 5) ** 2 - 16 * (q - 6 * u + 1)
    elif kind is TargetKind.NEPHROID:
        d = ((u - 1) ** 2 + v * v - 4 / 9) ** 3 - 4 * v * v / 3
    elif kind is TargetKind.EXPONENTIAL:
        d = np.abs(principal_log(w)) - 1
    else:
        if np.any(w == 2):
            raise DomainError("sigmoid defect undefined at w = 2")
        d = np.abs(principal_log(w / (2 - w))) - 1
    d = np.asarray(d, dtype=float)
    return float(d) if scalar else d


def preimage_defect(target: TargetClass, w):
    """``|phi^{-1}(w)| - 1``: negative exactly when ``w`` is inside.

    Used as the signed defect in inclusion reports because it is defined
    for every target.
    """
    w, scalar = _wrap(w)
    d = _min_preimage_modulus(target, w) - 1.0
    return float(d) if scalar else d


_INRADIUS = {
    TargetKind.PARABOLIC: 0.5,
    TargetKind.EXPONENTIAL: 1 - 1 / _E,
    TargetKind.CARDIOID: 2 / 3,
    TargetKind.SINE: math.sin(1.0),
    TargetKind.RATIONAL: 3 - 2 * math.sqrt(2.0),
    TargetKind.NEPHROID: 2 / 3,
    TargetKind.SIGMOID: (_E - 1) / (_E + 1),
}


def inradius_at_one(target: TargetClass) -> float:
    """Radius of the largest disk centred at 1 known to lie in the region.

    For every target ``1 - inradius_at_one`` is ``phi(-1)``, the region's
    boundary point on the real axis to the left of 1.
    """
    if target.kind in _ALPHA_KINDS:
        return 1.0 - target.alpha
    return _INRADIUS[target.kind]


# (lower, lower_closed, upper, upper_closed) admissible centres per lemma
_INTERVALS = {
    TargetKind.PARABOLIC: (0.5, False, 1.5, False),
    TargetKind.EXPONENTIAL: (1 / _E, True, (_E + 1 / _E) / 2, True),
    TargetKind.CARDIOID: (1 / 3, False, 5 / 3, True),
    TargetKind.SINE: (1 - math.sin(1.0), True, 1 + math.sin(1.0), True),
    TargetKind.RATIONAL: (2 * (math.sqrt(2.0) - 1), False, math.sqrt(2.0), True),
    TargetKind.NEPHROID: (1 / 3, False, 1.0, True),
    TargetKind.SIGMOID: (2 / (_E + 1), False, 2 * _E / (1 + _E), False),
}


def admissible_interval(target: TargetClass):
    """``(lower, lower_closed, upper, upper_closed)`` for the lemma centre ``a``."""
    try:
        return _INTERVALS[target.kind]
    except KeyError:
        raise UnsupportedTargetError(f"no disk-inclusion lemma for {target.label}") from None


def lemma_radius(target: TargetClass, a: float) -> float:
    """Radius of the lemma's disk centred at real ``a``.

    Raises:
        RangeError: if ``a`` is outside the admissible interval.
    """
    lo, lo_closed, hi, hi_closed = admissible_interval(target)
    above = a >= lo if lo_closed else a > lo
    below = a <= hi if hi_closed else a < hi
    if not (above and below):
        raise RangeError(f"centre a={a!r} outside the admissible interval for {target.label}")
    kind = target.kind
    if kind is TargetKind.PARABOLIC:
        return a - 0.5
    if kind is TargetKind.EXPONENTIAL:
        return a - 1 / _E
    if kind is TargetKind.CARDIOID:
        return (3 * a - 1) / 3
    if kind is TargetKind.SINE:
        return math.sin(1.0) - abs(a - 1)
    if kind is TargetKind.RATIONAL:
        return a - 2 * (math.sqrt(2.0) - 1)
    if kind is TargetKind.NEPHROID:
        return a - 1 / 3
    return (_E - 1) / (_E + 1) - abs(a - 1)


@dataclass(frozen=True)
class InclusionReport:
    target: TargetClass
    disk: Disk
    samples: int
    violations: int
    max_defect: float

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {
            "target": self.target.name,
            "center": self.disk.center.real,
            "radius": self.disk.radius,
            "samples": self.samples,
            "violations": self.violations,
            "max_defect": self.max_defect,
        }


# Sample points whose float defect is this close to zero are re-decided in
# extended precision; endpoint disks sit ~1e-18 inside the region.
_REFINE_BAND = 1e-12
_REFINE_DPS = 40


def _preimage_modulus_mp(target: TargetClass, w) -> "mpmath.mpf":
    mp = mpmath.mp
    kind = target.kind
    if kind is TargetKind.CARDIOID:
        s = mp.sqrt((3 * w - 1) / 2)
        roots = (-1 + s, -1 - s)
    elif kind is TargetKind.RATIONAL:
        k = mp.sqrt(2) + 1
        disc = mp.sqrt(k * k * w * w + 4 * k * k * (w - 1))
        roots = ((-k * w + disc) / 2, (-k * w - disc) / 2)
    elif kind is TargetKind.NEPHROID:
        theta = mp.acos(mp.mpf(3) / 2 * (1 - w)) / 3
        roots = tuple(2 * mp.cos(theta - 2 * mp.pi * j / 3) for j in range(3))
    elif kind is TargetKind.SINE:
        roots = (mp.asin(w - 1),)
    elif kind is TargetKind.EXPONENTIAL:
        roots = (mp.log(w),)
    elif kind is TargetKind.SIGMOID:
        roots = (mp.log(w / (2 - w)),)
    elif kind is TargetKind.PARABOLIC:
        roots = (mp.tanh(mp.pi / 2 * mp.sqrt((w - 1) / 2)) ** 2,)
    else:
        raise UnsupportedTargetError(f"no extended-precision predicate for {target.label}")
    return min(abs(r) for r in roots)


def _refined_defect(target: TargetClass, a: float, shrink: float, k: int, n: int) -> float:
    """Preimage defect of sample ``k`` recomputed from the exact inputs."""
    mp = mpmath.mp
    with mpmath.workdps(_REFINE_DPS):
        a_mp = mp.mpf(a)
        if target.kind is TargetKind.SINE:
            delta = mp.sin(1) - abs(a_mp - 1)
        elif target.kind is TargetKind.SIGMOID:
            delta = (mp.e - 1) / (mp.e + 1) - abs(a_mp - 1)
        elif target.kind is TargetKind.PARABOLIC:
            delta = a_mp - mp.mpf(1) / 2
        elif target.kind is TargetKind.EXPONENTIAL:
            delta = a_mp - 1 / mp.e
        elif target.kind is TargetKind.RATIONAL:
            delta = a_mp - 2 * (mp.sqrt(2) - 1)
        else:
            delta = a_mp - mp.mpf(1) / 3
        w = a_mp + mp.mpf(shrink) * delta * mp.expjpi(mp.mpf(2 * k) / n)
        if target.kind is TargetKind.PARABOLIC:
            return float(abs(w - 1) - mp.re(w))
        return float(_preimage_modulus_mp(target, w) - 1)


def verify_disk_inclusion(target: TargetClass, a: float, n: int, shrink: float) -> InclusionReport:
    """Sample the circle ``|w - a| = shrink * r(a)`` and count points outside.

    ``r(a)`` is the lemma's disk radius. Points whose float verdict is within
    ``1e-12`` of the boundary are re-decided at 40 significant digits, so
    disks that hug the boundary (admissible endpoints) are still judged
    correctly.
    """
    if n < 1:
        raise RangeError(f"need at least one sample, got n={n}")
    if not 0.0 < shrink < 1.0:
        raise RangeError(f"shrink must lie in (0, 1), got {shrink}")
    radius = shrink * lemma_radius(target, a)
    disk = Disk(complex(a, 0.0), radius)
    points = disk.boundary(n)
    inside = contains(target, points)
    defect = preimage_defect(target, points)
    if target.kind is TargetKind.PARABOLIC:
        # the direct inequality is better conditioned at the vertex
        defect = implicit_defect(target, points)
    for k in np.flatnonzero((np.abs(defect) < _REFINE_BAND) | ~inside):
        defect[k] = _refined_defect(target, a, shrink, int(k), n)
        inside[k] = defect[k] < 0
    return InclusionReport(
        target=target,
        disk=disk,
        samples=n,
        violations=int(np.count_nonzero(~inside)),
        max_defect=float(np.max(defect)),
    )


def boundary_polyline(target: TargetClass, n: int) -> np.ndarray:
    """``phi(exp(i theta_k))`` on the half-step grid ``theta_k = 2 pi (k + 1/2) / n``.

    The half-step keeps every node away from ``theta = 0``, where the
    parabolic and order-alpha maps blow up.
    """
    if n < 3:
        raise RangeError(f"a boundary polyline needs n >= 3, got {n}")
    theta = 2 * np.pi * (np.arange(n) + 0.5) / n
    w = superordinate(target, np.exp(1j * theta))
    if not np.all(np.isfinite(w)):
        raise DomainError(f"boundary of {target.label} produced non-finite points")
    return w

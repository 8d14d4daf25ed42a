"""The three product classes T1, T2, T3.

A member is ``f(z) = z p(z) p1(z) p2(z)`` where each factor is a fixed map
composed with a Schwarz function:

====  ==================  ==================  ==================
      p                   p1 = f/g            p2 = g/(z p)
====  ==================  ==================  ==================
T1    sqrt(1 + w)         exp(w)              exp(w)
T2    exp(w)              sqrt(1 + w)         sqrt(1 + w)
T3    w + sqrt(1 + w^2)   w + sqrt(1 + w^2)   w + sqrt(1 + w^2)
====  ==================  ==================  ==================

Schwarz functions are finite Blaschke products, which keeps ``|w| < 1`` on
the disk exactly and gives closed-form derivatives.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import RangeError, SingularityError
from .kernel import as_complex, principal_sqrt

__all__ = [
    "Family",
    "SchwarzSpec",
    "MemberInstance",
    "SPLIT_RADIUS",
    "derivative_bound",
    "first_branch_bound",
    "extremal_value",
    "extremal_derivative",
    "extremal_log_derivative",
    "univalence_critical_point",
    "make_member",
    "member_value",
    "member_log_derivative",
    "sample_members",
]

SPLIT_RADIUS = math.sqrt(2.0) - 1.0
ZERO_MODULUS_CAP = 0.95


class Family(enum.Enum):
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"

    @classmethod
    def from_name(cls, name: str) -> "Family":
        try:
            return cls(name.strip().upper())
        except ValueError:
            raise RangeError(f"unknown family {name!r}; expected T1, T2 or T3") from None

    def __str__(self):
        return self.value


class FactorMap(enum.Enum):
    EXP = "exp"
    SQRT = "sqrt"
    LUNE = "lune"


FACTOR_MAPS = {
    Family.T1: (FactorMap.SQRT, FactorMap.EXP, FactorMap.EXP),
    Family.T2: (FactorMap.EXP, FactorMap.SQRT, FactorMap.SQRT),
    Family.T3: (FactorMap.LUNE, FactorMap.LUNE, FactorMap.LUNE),
}


def _check_radius(r: float):
    if not 0.0 <= r < 1.0:
        raise RangeError(f"radius must lie in [0, 1), got {r}")


def first_branch_bound(family: Family, r):
    """Small-radius branch of the bound on ``|z f'/f - 1|`` over ``|z| <= r``.

    This is the branch every radius computation uses; it is valid for
    ``r <= sqrt(2) - 1``.
    """
    if family is Family.T1:
        return r * (5 - 4 * r) / (2 * (1 - r))
    if family is Family.T2:
        return r * (2 - r) / (1 - r)
    return 3 * r / np.sqrt(1 + r * r)


def derivative_bound(family: Family, r: float) -> float:
    """Bound ``B(r)`` on ``|z f'(z)/f(z) - 1|`` for ``|z| <= r``, as stated.

    The T1 and T2 bounds switch formula at ``r = sqrt(2) - 1``. The T1
    large-radius branch is reproduced as printed even though it does not
    meet the small-radius branch at the split point.
    """
    _check_radius(r)
    r = float(r)
    if family is Family.T3 or r <= SPLIT_RADIUS:
        return float(first_branch_bound(family, r))
    r2 = r * r
    if family is Family.T1:
        return (3 + r + 7 * r2 + 3 * r2 * r2) / (2 * (1 - r2))
    return (1 + 4 * r + 6 * r2 + r2 * r2) / (4 * (1 - r2))


def _wrap(z):
    arr = np.asarray(z, dtype=np.complex128)
    return arr, arr.ndim == 0


def _out(values, scalar):
    values = np.asarray(values, dtype=np.complex128)
    return complex(values) if scalar else values


def _check_pole(z, family: Family):
    if family is not Family.T3 and np.any(z == -1):
        raise SingularityError(f"{family} extremal is singular at z = -1")


def extremal_value(family: Family, z):
    """Extremal function of the class at ``z``.

    T1: ``z e^{2z} sqrt(1+z)``; T2: ``z (1+z) e^z``; T3: ``z (z + sqrt(1+z^2))^3``.
    """
    z, scalar = _wrap(z)
    if family is Family.T1:
        f = z * np.exp(2 * z) * principal_sqrt(1 + z)
    elif family is Family.T2:
        f = z * (1 + z) * np.exp(z)
    else:
        f = z * (z + principal_sqrt(1 + z * z)) ** 3
    return _out(f, scalar)


def extremal_derivative(family: Family, z):
    """Closed-form ``f'(z)`` of the extremal function."""
    z, scalar = _wrap(z)
    _check_pole(z, family)
    if family is Family.T1:
        d = np.exp(2 * z) * (4 * z * z + 7 * z + 2) / (2 * principal_sqrt(1 + z))
    elif family is Family.T2:
        d = np.exp(z) * (1 + 3 * z + z * z)
    else:
        q = principal_sqrt(1 + z * z)
        d = (z + q) ** 3 * (3 * z + q) / q
    return _out(d, scalar)


def extremal_log_derivative(family: Family, z):
    """``z f'(z) / f(z)`` of the extremal function, in closed form.

    Raises:
        SingularityError: at ``z = -1`` for T1 and T2.
    """
    z, scalar = _wrap(z)
    _check_pole(z, family)
    if family is Family.T1:
        w = 1 + 2 * z + z / (2 * (1 + z))
    elif family is Family.T2:
        w = 1 + z + z / (1 + z)
    else:
        w = 1 + 3 * z / principal_sqrt(1 + z * z)
    return _out(w, scalar)


def univalence_critical_point(family: Family) -> float:
    """Modulus of the zero of the extremal's derivative closest to 0."""
    if family is Family.T1:
        return (7 - math.sqrt(17.0)) / 8
    if family is Family.T2:
        return (3 - math.sqrt(5.0)) / 2
    return 1 / math.sqrt(8.0)


@dataclass(frozen=True)
class SchwarzSpec:
    """Blaschke-type Schwarz function ``w(z) = c z prod (z - a_k)/(1 - conj(a_k) z)``.

    ``rotation`` is the unimodular constant ``c``. A zero rotation is
    accepted as the trivial Schwarz function ``w = 0``.
    """

    rotation: complex = 1 + 0j
    zeros: tuple = field(default_factory=tuple)

    def __post_init__(self):
        c = as_complex(self.rotation)
        if c != 0 and abs(abs(c) - 1) > 1e-12:
            raise RangeError(f"rotation must be unimodular, got |c|={abs(c)}")
        zeros = tuple(as_complex(a) for a in self.zeros)
        for a in zeros:
            if not abs(a) < 1:
                raise RangeError(f"Blaschke zero {a} is not inside the unit disk")
        object.__setattr__(self, "rotation", c)
        object.__setattr__(self, "zeros", zeros)

    @classmethod
    def identity(cls) -> "SchwarzSpec":
        return cls(1 + 0j, ())

    @classmethod
    def trivial(cls) -> "SchwarzSpec":
        return cls(0j, ())

    @property
    def degree(self) -> int:
        return 0 if self.rotation == 0 else 1 + len(self.zeros)

    def evaluate(self, z):
        """Return ``(w(z), z w'(z))`` elementwise."""
        z = np.asarray(z, dtype=np.complex128)
        prod = np.ones_like(z)
        dprod = np.zeros_like(z)
        for a in self.zeros:
            den = 1 - np.conj(a) * z
            b = (z - a) / den
            db = (1 - abs(a) ** 2) / (den * den)
            dprod = dprod * b + prod * db
            prod = prod * b
        c = self.rotation
        return c * z * prod, c * z * (prod + z * dprod)

    def to_dict(self) -> dict:
        return {
            "rotation": [self.rotation.real, self.rotation.imag],
            "zeros": [[a.real, a.imag] for a in self.zeros],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SchwarzSpec":
        re, im = data["rotation"]
        return cls(complex(re, im), tuple(complex(x, y) for x, y in data.get("zeros", [])))


@dataclass(frozen=True)
class MemberInstance:
    """A concrete member of a family, driven by three Schwarz functions."""

    family: Family
    omega_p: SchwarzSpec
    omega_1: SchwarzSpec
    omega_2: SchwarzSpec

    @property
    def specs(self):
        return (self.omega_p, self.omega_1, self.omega_2)

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "omega_p": self.omega_p.to_dict(),
            "omega_1": self.omega_1.to_dict(),
            "omega_2": self.omega_2.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "MemberInstance":
        return cls(
            Family.from_name(data["family"]),
            SchwarzSpec.from_dict(data["omega_p"]),
            SchwarzSpec.from_dict(data["omega_1"]),
            SchwarzSpec.from_dict(data["omega_2"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "MemberInstance":
        return cls.from_dict(json.loads(text))


def make_member(family: Family, omega_p: SchwarzSpec, omega_1: SchwarzSpec, omega_2: SchwarzSpec) -> MemberInstance:
    return MemberInstance(family, omega_p, omega_1, omega_2)


def _factor(kind: FactorMap, w):
    if kind is FactorMap.EXP:
        return np.exp(w)
    if kind is FactorMap.SQRT:
        return principal_sqrt(1 + w)
    return w + principal_sqrt(1 + w * w)


def _factor_log_derivative(kind: FactorMap, w, zdw):
    # z p'/p for p = F(w(z)); the vanishing-denominator cases are
    # unreachable for |w| < 1 but can occur at boundary points
    if kind is FactorMap.EXP:
        return zdw
    if kind is FactorMap.SQRT:
        den = 1 + w
        if np.any(den == 0):
            raise SingularityError("sqrt(1 + w) factor vanishes")
        return zdw / (2 * den)
    q = principal_sqrt(1 + w * w)
    if np.any(q == 0):
        raise SingularityError("w + sqrt(1 + w^2) factor is at a branch point")
    return zdw / q


def member_value(member: MemberInstance, z):
    """``f(z) = z p(z) p1(z) p2(z)``."""
    z, scalar = _wrap(z)
    f = z.copy()
    for kind, spec in zip(FACTOR_MAPS[member.family], member.specs):
        w, _ = spec.evaluate(z)
        f = f * _factor(kind, w)
    return _out(f, scalar)


def member_log_derivative(member: MemberInstance, z):
    """``z f'(z) / f(z) = 1 + sum_j z p_j'(z) / p_j(z)``, analytically."""
    z, scalar = _wrap(z)
    total = np.ones_like(z)
    for kind, spec in zip(FACTOR_MAPS[member.family], member.specs):
        w, zdw = spec.evaluate(z)
        total = total + _factor_log_derivative(kind, w, zdw)
    return _out(total, scalar)


def _draw_spec(rng: np.random.Generator, max_degree: int) -> SchwarzSpec:
    n_zeros = int(rng.integers(0, max_degree + 1))
    rotation = np.exp(1j * rng.uniform(0.0, 2 * np.pi))
    moduli = ZERO_MODULUS_CAP * np.sqrt(rng.random(n_zeros))
    angles = rng.uniform(0.0, 2 * np.pi, n_zeros)
    zeros = tuple(complex(m * np.cos(t), m * np.sin(t)) for m, t in zip(moduli, angles))
    return SchwarzSpec(complex(rotation), zeros)


def sample_members(family: Family, count: int, seed: int, max_degree: int) -> Sequence[MemberInstance]:
    """Draw ``count`` random members from a seeded generator.

    Each Schwarz function gets up to ``max_degree`` Blaschke zeros,
    uniform in the disk of radius 0.95, and a uniform rotation.
    """
    if count < 1:
        raise RangeError(f"count must be >= 1, got {count}")
    if max_degree < 0:
        raise RangeError(f"max_degree must be >= 0, got {max_degree}")
    rng = np.random.default_rng(seed)
    return [
        MemberInstance(family, *(_draw_spec(rng, max_degree) for _ in range(3)))
        for _ in range(count)
    ]

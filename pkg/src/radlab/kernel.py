"""Complex scalar primitives with fixed branch conventions.

Every function accepts a Python number or a numpy array. Scalars come back
as ``complex``; arrays come back as ``complex128`` arrays of the same shape.

Branch conventions:

* ``principal_sqrt``: Re >= 0, the negative real axis maps to the positive
  imaginary axis.
* ``sqrt_upper``: Im >= 0, nonnegative reals map to nonnegative reals.
* ``principal_log``: Arg in (-pi, pi].
* ``principal_arcsin``: Re in [-pi/2, pi/2].

A negative zero imaginary part is folded to +0 before branching so that
points on a cut always land on the side the conventions above name.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonFiniteError, RangeError

__all__ = [
    "Disk",
    "as_complex",
    "principal_sqrt",
    "sqrt_upper",
    "principal_log",
    "principal_arcsin",
    "sample_circle",
]


def _prepare(z):
    arr = np.asarray(z, dtype=np.complex128)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"non-finite complex argument: {z!r}")
    # -0.0 + 0.0 == +0.0, so this folds signed zeros onto the upper side of cuts
    return arr + 0j, arr.ndim == 0


def _finish(w, scalar):
    if not np.all(np.isfinite(w)):
        raise NonFiniteError("complex result overflowed")
    if scalar:
        return complex(w)
    return w


def as_complex(z) -> complex:
    """Coerce a number to a finite Python complex."""
    w = complex(z)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise NonFiniteError(f"non-finite complex value: {z!r}")
    return w


def principal_sqrt(z):
    """Square root with nonnegative real part (cut along the negative reals)."""
    arr, scalar = _prepare(z)
    with np.errstate(all="ignore"):
        w = np.sqrt(arr)
    return _finish(w, scalar)


def sqrt_upper(z):
    """Square root with nonnegative imaginary part.

    Nonnegative reals keep their nonnegative real root.
    """
    arr, scalar = _prepare(z)
    with np.errstate(all="ignore"):
        w = np.sqrt(arr)
    w = np.where(w.imag < 0, -w, w) + 0j
    return _finish(w, scalar)


def principal_log(z):
    """Principal logarithm ``log|z| + i Arg z`` with Arg in (-pi, pi].

    Raises:
        DomainError: if any element of ``z`` is zero.
    """
    arr, scalar = _prepare(z)
    if np.any(arr == 0):
        raise DomainError("logarithm undefined at 0")
    w = np.log(arr)
    return _finish(w, scalar)


def _log1p(u):
    # Kahan: log(1+u) * u / ((1+u) - 1) keeps relative accuracy for small u;
    # below 1e-8 the two-term series is exact to double precision
    w = 1 + u
    d = w - 1
    tiny = np.abs(u) < 1e-8
    safe = np.where(tiny, 1, d)
    return np.where(tiny, u - u * u / 2, np.log(w) * (u / safe))


def _asin_formula(z):
    # -i log(iz + sqrt(1 - z^2)), written as log1p of
    # iz + sqrt(1 - z^2) - 1 = iz - z^2 / (1 + sqrt(1 - z^2))
    root = np.sqrt(1 - z * z + 0j)
    return -1j * _log1p(1j * z - z * z / (1 + root))


def principal_arcsin(z):
    """Principal inverse sine, real part in [-pi/2, pi/2].

    Evaluated from the logarithmic formula. In the upper half plane the
    formula loses digits to cancellation, so there it is applied to ``-z``
    and the sign flipped (arcsin is odd off the cuts).
    """
    arr, scalar = _prepare(z)
    with np.errstate(all="ignore"):
        upper = arr.imag > 0
        w = np.where(upper, -_asin_formula(-arr), _asin_formula(arr))
    return _finish(w, scalar)


def sample_circle(center, radius: float, n: int) -> np.ndarray:
    """Return ``n`` points ``center + radius * exp(2 pi i k / n)``, k = 0..n-1."""
    if n < 1:
        raise RangeError(f"need at least one sample point, got n={n}")
    if radius < 0:
        raise RangeError(f"radius must be nonnegative, got {radius}")
    theta = 2.0 * np.pi * np.arange(n) / n
    return as_complex(center) + radius * np.exp(1j * theta)


@dataclass(frozen=True)
class Disk:
    """Open disk ``{w : |w - center| < radius}``."""

    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_complex(self.center))
        if not math.isfinite(self.radius) or self.radius < 0:
            raise RangeError(f"disk radius must be finite and >= 0, got {self.radius}")

    def contains(self, w) -> bool:
        return abs(as_complex(w) - self.center) < self.radius

    def boundary(self, n: int) -> np.ndarray:
        return sample_circle(self.center, self.radius, n)

"""Property suites behind ``radlab verify`` and the acceptance tests."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List

import numpy as np

from .families import (
    SPLIT_RADIUS,
    Family,
    MemberInstance,
    SchwarzSpec,
    derivative_bound,
    make_member,
    member_log_derivative,
    sample_members,
)
from .radii import compute_radius, radius_for_target
from .regions import NAMED_TARGETS, TargetClass, admissible_interval, verify_disk_inclusion

ENDPOINT_SHIFT = 1e-9
INCLUSION_SHRINK = 1 - 1e-9
BOUND_RADII = tuple(0.05 * k for k in range(1, 8))
BOUND_ANGLES = 256
BOUND_SLACK = 1e-9
STARLIKE_FRACTION = 0.99
MAX_REPORTED = 3


@dataclass
class Check:
    name: str
    samples: int
    violations: int
    max_defect: float
    details: List[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "samples": self.samples,
            "violations": self.violations,
            "max_defect": self.max_defect,
            "passed": self.passed,
        }
        if self.details:
            out["details"] = self.details
        return out


def lemma_centres(target: TargetClass):
    """``a = 1`` and both admissible endpoints moved inward by 1e-9."""
    lo, _, hi, _ = admissible_interval(target)
    return (lo + ENDPOINT_SHIFT, 1.0, hi - ENDPOINT_SHIFT)


def inclusion_checks(samples: int = 100_000) -> List[Check]:
    checks = []
    for target in NAMED_TARGETS:
        for a in lemma_centres(target):
            rep = verify_disk_inclusion(target, a, samples, INCLUSION_SHRINK)
            checks.append(Check(f"inclusion {target.name} a={a!r}", samples, rep.violations, rep.max_defect))
    return checks


def sharpness_checks(tol: float = 1e-9, families=tuple(Family), targets=NAMED_TARGETS) -> List[Check]:
    checks = []
    for family in families:
        for target in targets:
            res = compute_radius(family, target)
            bad = int(not res.sharpness_defect < tol)
            checks.append(Check(f"sharpness {family} {target.label}", 1, bad, res.sharpness_defect))
    return checks


def _bound_grid():
    theta = 2 * np.pi * np.arange(BOUND_ANGLES) / BOUND_ANGLES
    radii = np.array(BOUND_RADII)
    z = radii[:, None] * np.exp(1j * theta)[None, :]
    return z, radii


def bound_excess(member: MemberInstance) -> np.ndarray:
    """``|z f'/f - 1| - B(r)`` on the fixed ``r x angle`` grid."""
    z, radii = _bound_grid()
    bound = np.array([derivative_bound(member.family, r) for r in radii])[:, None]
    return np.abs(member_log_derivative(member, z) - 1) - bound


def starlike_margin(member: MemberInstance, rho: float) -> np.ndarray:
    """``Re z f'/f`` on the circle of radius ``0.99 rho``."""
    theta = 2 * np.pi * np.arange(BOUND_ANGLES) / BOUND_ANGLES
    z = STARLIKE_FRACTION * rho * np.exp(1j * theta)
    return member_log_derivative(member, z).real


def _worst_point(excess: np.ndarray) -> dict:
    i, j = np.unravel_index(int(np.argmax(excess)), excess.shape)
    z, _ = _bound_grid()
    return {"z": [float(z[i, j].real), float(z[i, j].imag)], "excess": float(excess[i, j])}


def bound_checks() -> List[Check]:
    """Extremal (identity Schwarz functions) against the bound, plus
    monotonicity of the small-radius bound on ``[0, sqrt(2) - 1]``."""
    checks = []
    ident = SchwarzSpec.identity()
    grid = np.linspace(0.0, SPLIT_RADIUS, 10_000)
    for family in Family:
        member = make_member(family, ident, ident, ident)
        excess = bound_excess(member)
        bad = int(np.count_nonzero(excess > BOUND_SLACK))
        details = [_worst_point(excess)] if bad else []
        checks.append(Check(f"bound {family} extremal", excess.size, bad, float(excess.max()), details))
        values = np.array([derivative_bound(family, r) for r in grid])
        steps = np.diff(values)
        checks.append(
            Check(f"bound {family} increasing", steps.size, int(np.count_nonzero(steps <= 0)), float(-steps.min()))
        )
    return checks


def member_checks(count: int, seed: int, max_degree: int = 3, families=tuple(Family)) -> List[Check]:
    """Monte-Carlo bound and starlikeness checks over sampled members."""
    checks = []
    for family in families:
        members = sample_members(family, count, seed, max_degree)
        rho = radius_for_target(family, TargetClass.order(0.0))
        bound_bad = star_bad = 0
        worst_excess = -np.inf
        worst_margin = np.inf
        bound_offenders: List[dict] = []
        star_offenders: List[dict] = []
        for m in members:
            excess = bound_excess(m)
            nb = int(np.count_nonzero(excess > BOUND_SLACK))
            worst_excess = max(worst_excess, float(excess.max()))
            if nb:
                bound_bad += nb
                if len(bound_offenders) < MAX_REPORTED:
                    bound_offenders.append({"member": m.to_dict(), **_worst_point(excess)})
            margin = starlike_margin(m, rho)
            ns = int(np.count_nonzero(margin <= 0))
            worst_margin = min(worst_margin, float(margin.min()))
            if ns:
                star_bad += ns
                if len(star_offenders) < MAX_REPORTED:
                    star_offenders.append({"member": m.to_dict(), "min_real_part": float(margin.min())})
        grid_size = len(BOUND_RADII) * BOUND_ANGLES
        checks.append(
            Check(f"members {family} bound", count * grid_size, bound_bad, worst_excess, bound_offenders)
        )
        checks.append(
            Check(f"members {family} starlike", count * BOUND_ANGLES, star_bad, -worst_margin, star_offenders)
        )
    return checks


SUITES = ("inclusion", "sharpness", "bounds", "members")


def run_suite(name: str, samples: int, seed: int, tol_sharpness: float = 1e-9,
              max_degree: int = 3) -> List[Check]:
    if name == "inclusion":
        return inclusion_checks(samples)
    if name == "sharpness":
        return sharpness_checks(tol_sharpness)
    if name == "bounds":
        return bound_checks()
    if name == "members":
        return member_checks(samples, seed, max_degree)
    raise ValueError(f"unknown suite {name!r}")

"""Command-line front end.

Usage:
    radlab radius --family T1 --target parabolic
    radlab radius --family T3 --target order --alpha 0
    radlab table --format csv
    radlab table --targets order --alphas 0,0.25,0.5
    radlab table --boundary cardioid --n 512 --format csv
    radlab verify members --samples 1000 --seed 42

Exit codes: 0 success, 1 a verified property failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .errors import RadlabError
from .families import Family
from .radii import RadiusResult, compute_radius
from .regions import NAMED_TARGETS, TargetClass, boundary_polyline
from .verification import SUITES, Check, run_suite

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

SEED_ENV = "RADLAB_SEED"
DEFAULT_SEED = 42
FORMATS = ("json", "csv", "text")
TABLE_COLUMNS = ("family", "target", "alpha", "closed_form", "numeric", "sharpness_defect")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    samples: int = 100_000
    seed: int = DEFAULT_SEED
    tol_closed_numeric: float = 1e-12
    tol_sharpness: float = 1e-9
    output_format: str = "text"

    def __post_init__(self):
        if self.samples < 1:
            raise UsageError(f"--samples must be >= 1, got {self.samples}")
        if not (self.tol_closed_numeric > 0 and self.tol_sharpness > 0):
            raise UsageError("tolerances must be positive")
        if self.output_format not in FORMATS:
            raise UsageError(f"unknown format {self.output_format!r}")


def _sig7(x: float) -> str:
    return f"{x:.7g}"


def _csv_text(header: Sequence[str], rows: List[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _split_list(text: Optional[str]) -> Optional[List[str]]:
    if text is None:
        return None
    items = [item.strip() for item in text.split(",")]
    if not any(items) or not all(items):
        raise UsageError(f"empty entry in list {text!r}")
    return items


def _parse_alphas(text: Optional[str]) -> List[float]:
    items = _split_list(text)
    if items is None:
        return [0.0]
    try:
        return [float(x) for x in items]
    except ValueError:
        raise UsageError(f"bad --alphas value {text!r}") from None


def resolve_seed(explicit: Optional[int]) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get(SEED_ENV)
    if env is None or env.strip() == "":
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={env!r} is not an integer") from None


def _config(args) -> RunConfig:
    return RunConfig(
        samples=args.samples,
        seed=resolve_seed(args.seed),
        tol_closed_numeric=args.tol_closed,
        tol_sharpness=args.tol_sharpness,
        output_format=args.format,
    )


def _row(res: RadiusResult) -> list:
    alpha = "" if res.target.alpha is None else repr(res.target.alpha)
    return [res.family.value, res.target.name, alpha, repr(res.closed_form), repr(res.numeric),
            repr(res.sharpness_defect)]


def format_results(results: List[RadiusResult], fmt: str) -> str:
    if fmt == "json":
        payload = [r.to_dict() for r in results]
        return _json_text(payload[0] if len(payload) == 1 else payload)
    if fmt == "csv":
        return _csv_text(TABLE_COLUMNS, [_row(r) for r in results])
    lines = [f"{'family':<6} {'target':<16} {'closed_form':>12} {'numeric':>12} {'defect':>10}"]
    for r in results:
        lines.append(
            f"{r.family.value:<6} {r.target.label:<16} {_sig7(r.closed_form):>12} "
            f"{_sig7(r.numeric):>12} {r.sharpness_defect:>10.1e}"
        )
    return "\n".join(lines) + "\n"


def format_checks(suite: str, checks: List[Check], fmt: str) -> str:
    passed = all(c.passed for c in checks)
    if fmt == "json":
        return _json_text({"suite": suite, "passed": passed, "checks": [c.to_dict() for c in checks]})
    if fmt == "csv":
        rows = [[c.name, c.samples, c.violations, repr(c.max_defect), str(c.passed).lower()] for c in checks]
        return _csv_text(("name", "samples", "violations", "max_defect", "passed"), rows)
    lines = []
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        lines.append(f"{status} {c.name}: violations={c.violations}/{c.samples} max_defect={c.max_defect:.3e}")
        for d in c.details:
            lines.append("    offender: " + json.dumps(d, sort_keys=True))
    lines.append(f"suite {suite}: {'PASS' if passed else 'FAIL'}")
    return "\n".join(lines) + "\n"


def format_polyline(points, fmt: str) -> str:
    pairs = [[float(w.real), float(w.imag)] for w in points]
    if fmt == "json":
        return json.dumps(pairs) + "\n"
    return _csv_text(("re", "im"), [[repr(x), repr(y)] for x, y in pairs])


def _family(name: str) -> Family:
    try:
        return Family.from_name(name)
    except RadlabError as exc:
        raise UsageError(str(exc)) from None


def _target(name: str, alpha: Optional[float]) -> TargetClass:
    try:
        return TargetClass.from_name(name, alpha)
    except RadlabError as exc:
        raise UsageError(str(exc)) from None


def _results_ok(results: List[RadiusResult], config: RunConfig) -> bool:
    return all(r.holds(config.tol_closed_numeric, config.tol_sharpness) for r in results)


def cmd_radius(args, config: RunConfig):
    if args.family is None or args.target is None:
        raise UsageError("radius needs --family and --target")
    family = _family(args.family)
    target = _target(args.target, args.alpha)
    result = compute_radius(family, target)
    ok = _results_ok([result], config)
    return (EXIT_OK if ok else EXIT_FAILED), format_results([result], config.output_format)


def cmd_table(args, config: RunConfig):
    if args.boundary is not None:
        target = _target(args.boundary, args.alpha)
        if args.n is None or args.n < 3:
            raise UsageError("--boundary needs --n >= 3")
        return EXIT_OK, format_polyline(boundary_polyline(target, args.n), config.output_format)
    family_names = _split_list(args.family) or [f.value for f in Family]
    target_names = _split_list(args.target) or [t.name for t in NAMED_TARGETS]
    families = [_family(name) for name in family_names]
    alphas = _parse_alphas(args.alphas)
    targets: List[TargetClass] = []
    for name in target_names:
        probe = _target(name, 0.0 if name.strip().lower() in ("order", "disk") else None)
        if probe.alpha is None:
            targets.append(probe)
        else:
            targets.extend(_target(name, a) for a in alphas)
    results = [compute_radius(f, t) for f in families for t in targets]
    ok = _results_ok(results, config)
    return (EXIT_OK if ok else EXIT_FAILED), format_results(results, config.output_format)


def cmd_verify(args, config: RunConfig):
    checks = run_suite(args.suite, config.samples, config.seed, config.tol_sharpness)
    ok = all(c.passed for c in checks)
    return (EXIT_OK if ok else EXIT_FAILED), format_checks(args.suite, checks, config.output_format)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--samples", type=int, default=100_000, help="sample count (default 100000)")
    common.add_argument("--seed", type=int, default=None,
                        help=f"random seed (default ${SEED_ENV} or {DEFAULT_SEED})")
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")
    common.add_argument("--tol-closed", type=float, default=1e-12, dest="tol_closed")
    common.add_argument("--tol-sharpness", type=float, default=1e-9, dest="tol_sharpness")

    parser = argparse.ArgumentParser(prog="radlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("radius", parents=[common], help="radius for one (family, target) pair")
    p.add_argument("--family")
    p.add_argument("--target")
    p.add_argument("--alpha", type=float, default=None)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("table", parents=[common], help="radius table or boundary polyline")
    p.add_argument("--family", "--families", dest="family", default=None,
                   help="comma-separated families (default all)")
    p.add_argument("--target", "--targets", dest="target", default=None,
                   help="comma-separated targets (default the seven named regions)")
    p.add_argument("--alpha", type=float, default=None, help="alpha for --boundary order/disk")
    p.add_argument("--alphas", default=None, help="comma-separated alpha grid for order/disk")
    p.add_argument("--boundary", default=None, help="emit the boundary polyline of this target")
    p.add_argument("--n", type=int, default=None, help="polyline points")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="run a property suite")
    p.add_argument("suite", choices=SUITES)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        config = _config(args)
        status, text = args.func(args, config)
    except (UsageError, RadlabError) as exc:
        print(f"radlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command-line entry point: run verification suites, emit JSON-line reports.

Suites are selected either as a subcommand (``verify lemma31 --g 1``) or via
``--suite``; environment variables prefixed TORSIONLAB_ override defaults.
Exit status: 0 if every report passes or is skipped, 1 if any fails, 2 on a
configuration error.  Reports are emitted one JSON object per line, sorted by
claim id; stripping the wall_time field makes two equal runs byte-identical.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from fractions import Fraction
from typing import Callable, Sequence

from .errors import CapacityError, StructuralError, TorsionLabError
from .reports import RunConfig, VerificationReport, skipped, summarize

ENV_PREFIX = "TORSIONLAB_"

SUITE_NAMES = (
    "lemma31",
    "lemma32",
    "commutator-formula",
    "prop22",
    "prop33",
    "prop34",
    "thm23",
    "thm23-parity",
    "thm1",
    "remark13",
    "curve-iso",
    "elliptic-4tors",
    "all",
)

# suites that need the genus-2 enumeration of 2^20 elements
_HEAVY_CLAIM = 1 << 20


def _run_lemma31(config: RunConfig) -> list[VerificationReport]:
    from .quotients import lemma31_suite

    genera = [config.genus] if config.genus else [1, 2]
    reports: list[VerificationReport] = []
    for g in genera:
        try:
            reports.extend(lemma31_suite(g, cap_elements=config.cap_elements))
        except CapacityError as exc:
            reports.append(skipped(f"lemma31.g{g}", "lemma31", f"capacity: {exc}"))
    return reports


def _run_lemma32(config: RunConfig) -> list[VerificationReport]:
    from .quotients import lemma32_suite

    if config.cap_elements < _HEAVY_CLAIM:
        return [skipped("lemma32.g2", "lemma32", "capacity: genus-2 enumeration capped")]
    return lemma32_suite()


def _run_commutator_formula(config: RunConfig) -> list[VerificationReport]:
    from .quotients import verify_commutator_formula, verify_mod32_congruences

    return verify_commutator_formula(config.max_commutator_exponent) + verify_mod32_congruences()


def _run_prop22(config: RunConfig) -> list[VerificationReport]:
    from .braid import prop22_suite

    degrees = [config.degree] if config.degree else [3, 4, 5, 6]
    out = []
    for d in degrees:
        out.extend(prop22_suite(d))
    return out


def _run_prop33(config: RunConfig) -> list[VerificationReport]:
    from .symrep import prop33_suite

    degrees = [config.degree] if config.degree else [5, 6, 7]
    out = []
    for d in degrees:
        out.extend(prop33_suite(d))
    return out


def _run_prop34(config: RunConfig) -> list[VerificationReport]:
    from .symrep import verify_prop34

    return verify_prop34()


def _run_thm23(config: RunConfig) -> list[VerificationReport]:
    from .curves import thm23_suite

    genera = [config.genus] if config.genus else [1, 2]
    out = []
    for g in genera:
        out.extend(thm23_suite(g))
    return out


def _run_thm23_parity(config: RunConfig) -> list[VerificationReport]:
    from .symrep import thm23_parity_suite

    genera = [config.genus] if config.genus else [1, 2]
    out = []
    for g in genera:
        out.extend(thm23_parity_suite(g))
    return out


def _run_thm1(config: RunConfig) -> list[VerificationReport]:
    from .thm1 import thm1_suite

    if config.roots:
        g = (len(config.roots) - 1) // 2
        return thm1_suite(g, roots=config.roots, precision=config.precision_bits)
    genera = [config.genus] if config.genus else [1, 2]
    out = []
    for g in genera:
        out.extend(thm1_suite(g, precision=config.precision_bits))
    return out


def _run_remark13(config: RunConfig) -> list[VerificationReport]:
    from .curves import CurveSpec
    from .thm1 import verify_remark13_identities

    spec = CurveSpec(config.roots) if config.roots else None
    return verify_remark13_identities(spec)


def _run_curve_iso(config: RunConfig) -> list[VerificationReport]:
    from .curves import DEFAULT_FIXTURES, CurveSpec, verify_curve_isomorphism

    degrees = [config.degree] if config.degree else [4, 6]
    out = []
    for d in degrees:
        spec = CurveSpec(config.roots) if config.roots else CurveSpec(DEFAULT_FIXTURES[d])
        out.extend(verify_curve_isomorphism(spec))
    return out


def _run_elliptic(config: RunConfig) -> list[VerificationReport]:
    from .curves import CurveSpec, verify_elliptic_4torsion

    spec = CurveSpec(config.roots) if config.roots else None
    return verify_elliptic_4torsion(spec)


SUITES: dict[str, Callable[[RunConfig], list[VerificationReport]]] = {
    "lemma31": _run_lemma31,
    "lemma32": _run_lemma32,
    "commutator-formula": _run_commutator_formula,
    "prop22": _run_prop22,
    "prop33": _run_prop33,
    "prop34": _run_prop34,
    "thm23": _run_thm23,
    "thm23-parity": _run_thm23_parity,
    "thm1": _run_thm1,
    "remark13": _run_remark13,
    "curve-iso": _run_curve_iso,
    "elliptic-4tors": _run_elliptic,
}

ALL_SUITES = (
    "lemma31",
    "lemma32",
    "commutator-formula",
    "prop22",
    "prop33",
    "prop34",
    "thm23",
    "thm1",
    "remark13",
    "elliptic-4tors",
)


def run(config: RunConfig) -> list[VerificationReport]:
    """Execute the selected suites; deterministic for a fixed config."""
    reports: list[VerificationReport] = []
    names = list(config.suites)
    if "all" in names:
        names = list(ALL_SUITES)
    for name in names:
        if name not in SUITES:
            raise StructuralError(f"unknown suite {name!r}")
        start = time.perf_counter()
        try:
            batch = SUITES[name](config)
        except CapacityError as exc:
            batch = [skipped(name, name, f"capacity: {exc}")]
        elapsed = time.perf_counter() - start
        for r in batch:
            if r.wall_time == 0.0:
                r.wall_time = elapsed / max(1, len(batch))
        reports.extend(batch)
    reports.sort(key=lambda r: r.claim)
    merged: list[VerificationReport] = []
    seen: dict[str, str] = {}
    for r in reports:
        body = r.to_json(strip_time=True)
        if seen.get(r.claim) == body:
            continue
        seen[r.claim] = body
        merged.append(r)
    return merged


def _parse_roots(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(part.strip()) for part in text.split(",") if part.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad root list {text!r}: {exc}")


def _env(name: str) -> str | None:
    return os.environ.get(ENV_PREFIX + name)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verify",
        description="Run exact verification suites and emit JSON-line reports.",
    )
    parser.add_argument(
        "suite_positional",
        nargs="?",
        metavar="suite",
        choices=SUITE_NAMES,
        help="suite to run (equivalent to --suite)",
    )
    parser.add_argument("--suite", choices=SUITE_NAMES, default=None)
    parser.add_argument("--g", type=int, default=None, help="genus (1 or 2)")
    parser.add_argument("--d", type=int, default=None, help="degree / strand count")
    parser.add_argument("--max", type=int, default=None, help="max commutator exponent")
    parser.add_argument(
        "--roots", type=_parse_roots, default=None, help='root fixtures, e.g. "0,1,3" or "0,1/2,3"'
    )
    parser.add_argument("--cap-elements", type=int, default=None)
    parser.add_argument("--precision-bits", type=int, default=None, help="starting enclosure precision")
    parser.add_argument("--out", default=None, help="also write the JSON lines to this path")
    parser.add_argument("--quick", action="store_true", help="skip heavy enumerations")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    suite = args.suite_positional or args.suite or _env("SUITE")
    if args.suite_positional and args.suite and args.suite_positional != args.suite:
        raise ValueError("conflicting suite selections")
    genus = args.g if args.g is not None else (int(_env("G")) if _env("G") else None)
    degree = args.d if args.d is not None else (int(_env("D")) if _env("D") else None)
    roots = args.roots
    if roots is None and _env("ROOTS"):
        roots = _parse_roots(_env("ROOTS"))
    cap = args.cap_elements
    if cap is None:
        cap = int(_env("CAP_ELEMENTS")) if _env("CAP_ELEMENTS") else 1 << 21
    precision = args.precision_bits
    if precision is None:
        precision = int(_env("PRECISION_BITS")) if _env("PRECISION_BITS") else 64
    quick = args.quick or _env("QUICK") == "1"
    if quick:
        cap = min(cap, 1 << 16)
    if genus is not None and genus not in (1, 2):
        raise ValueError("genus must be 1 or 2")
    return RunConfig(
        suites=(suite,) if suite else (),
        genus=genus,
        degree=degree,
        roots=roots,
        cap_elements=cap,
        max_commutator_exponent=args.max if args.max is not None else 6,
        precision_bits=precision,
        quick=quick,
        out_path=args.out or _env("OUT"),
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        reports = run(config)
    except (TorsionLabError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    lines = [r.to_json() for r in reports]
    for line in lines:
        print(line)
    if config.out_path:
        with open(config.out_path, "w") as fh:
            fh.write("\n".join(lines) + ("\n" if lines else ""))
    counts = summarize(reports)
    print(
        f"# {counts['pass']} pass, {counts['fail']} fail, {counts['skipped']} skipped",
        file=sys.stderr,
    )
    return 0 if all(r.ok for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""
SLOCC Lab - Command Line Interface
Invariant evaluation, property checks, maximally entangled states,
Ising-Hubbard sweeps and Omega cross-validation
"""

import argparse
import logging
import math
import sys
from typing import Dict, List, Optional, Sequence, TextIO

import numpy as np

from core.config import get_config
from core.errors import DomainError, ParseError, SloccLabError
from core.fock import BasisLabel, StateVector, state_from_labels
from core.tuning import load_tuning
from components.hubbard.hamiltonian import HamiltonianParams
from components.hubbard.logic import level_sweep, sweep, sweep_frame, write_sweep_csv
from components.invariants.logic import FAMILIES, evaluate_family
from components.maxent.logic import EXAMPLE_KINDS, EXTRA_KINDS, named_state
from components.omega.logic import cross_validation_table, degree16_probe
from components.property_checks import SUITES, PropertyCheckSystem

logger = logging.getLogger(__name__)


def configure_logging():
    """Root logger to stderr, plus the log file when one is configured"""
    settings = get_config()
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if settings.LOG_FILE:
        handlers.append(logging.FileHandler(settings.LOG_FILE))
    logging.basicConfig(
        level=getattr(logging, str(settings.LOG_LEVEL).upper(), logging.WARNING),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
    )


def _number(x: float) -> str:
    """12 significant digits, shortest round-trip text, no negative zero"""
    return repr(float(f"{x:.12g}") + 0.0)


def parse_state_file(text: str, raw: bool = False) -> StateVector:
    """Parse `LABEL RE IM` lines; '#' lines and blank lines are skipped"""
    entries: Dict[str, complex] = {}
    first: Optional[BasisLabel] = None
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        if len(fields) != 3:
            raise ParseError(f"expected 'LABEL RE IM', got {len(fields)} fields", number)
        try:
            label = BasisLabel.parse(fields[0])
        except DomainError as e:
            raise ParseError(str(e), number)
        try:
            re_part, im_part = float(fields[1]), float(fields[2])
        except ValueError:
            raise ParseError(f"non-numeric amplitude {fields[1]!r} {fields[2]!r}", number)
        if not (math.isfinite(re_part) and math.isfinite(im_part)):
            raise ParseError("amplitudes must be finite", number)
        if first is None:
            first = label
        elif label.n_modes != first.n_modes:
            raise ParseError(f"label {label} has {label.n_modes} modes, expected {first.n_modes}", number)
        elif label.particle_count != first.particle_count:
            raise ParseError(f"label {label} has {label.particle_count} fermions, expected {first.particle_count}", number)
        if str(label) in entries:
            raise ParseError(f"duplicate label {label}", number)
        entries[str(label)] = complex(re_part, im_part)
    if not entries:
        raise ParseError("state file contains no amplitudes")
    return state_from_labels(entries, normalize=not raw)


def format_state_file(state: StateVector) -> str:
    """Nonzero amplitudes in basis order"""
    lines = [f"# sector {state.sector.describe()}"]
    for label, amp in state.items():
        if amp != 0:
            lines.append(f"{label} {repr(float(amp.real) + 0.0)} {repr(float(amp.imag) + 0.0)}")
    return "\n".join(lines) + "\n"


def _write(text: str, out: Optional[str], stdout: TextIO):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    else:
        stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slocc_lab", description="SLOCC invariants of delocalized fermions")
    subparsers = parser.add_subparsers(dest="command", required=True)

    invariants = subparsers.add_parser("invariants", help="Evaluate the invariants of a state file")
    invariants.add_argument("--state", required=True, help="State file with 'LABEL RE IM' lines")
    invariants.add_argument("--set", dest="family", choices=FAMILIES, default="auto", help="Invariant family")
    invariants.add_argument("--raw", action="store_true", help="Do not normalize the amplitudes")

    reference = HamiltonianParams.reference()
    grid = load_tuning("hubbard").get("grid", {})
    sweep_parser = subparsers.add_parser("sweep", help="Groundstate measures of the Ising-Hubbard ring versus B")
    sweep_parser.add_argument("--J", type=float, default=reference.J, help="Ising coupling")
    sweep_parser.add_argument("--K", type=float, default=reference.K, help="On-site attraction")
    sweep_parser.add_argument("--f", type=float, default=reference.f, help="Spin-flip amplitude")
    sweep_parser.add_argument("--p", type=float, default=reference.p_down, help="Hopping amplitude (p_up = -p)")
    sweep_parser.add_argument("--b-min", type=float, default=grid.get("b_min", 0.0), help="First field value")
    sweep_parser.add_argument("--b-max", type=float, default=grid.get("b_max", 3e-5), help="Last field value")
    sweep_parser.add_argument("--points", type=int, default=grid.get("points", 601), help="Number of field values")
    sweep_parser.add_argument("--levels", type=int, default=0, help="Append the lowest N levels relative to E0(B=0)")
    sweep_parser.add_argument("--out", help="CSV file (default: stdout)")

    check = subparsers.add_parser("check", help="Run property suites")
    check.add_argument("--suite", choices=SUITES, default="all", help="Suite to run")
    check.add_argument("--samples", type=int, default=None, help="Random samples per property")
    check.add_argument("--seed", type=int, default=0, help="Random seed")

    maxent = subparsers.add_parser("maxent", help="Write a maximally entangled state")
    maxent.add_argument("--kind", required=True, choices=EXAMPLE_KINDS + EXTRA_KINDS, help="State to emit")
    maxent.add_argument("--out", help="State file (default: stdout)")

    omega = subparsers.add_parser("omega", help="Cross-validate the transvection recipes")
    omega.add_argument("--degree16-probe", action="store_true", help="Also run the degree-16 search")
    omega.add_argument("--samples", type=int, default=None, help="Random samples per comparison")
    omega.add_argument("--seed", type=int, default=0, help="Random seed")
    return parser


def cmd_invariants(args, stdout: TextIO) -> int:
    try:
        with open(args.state, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as e:
        raise SloccLabError(f"cannot read {args.state}: {e.strerror}")
    state = parse_state_file(text, raw=args.raw)
    for inv in evaluate_family(state, args.family):
        value = complex(inv.value)
        stdout.write(f"{inv.name} {_number(value.real)} {_number(value.imag)} {inv.degree} {_number(inv.monotone)}\n")
    return 0


def cmd_sweep(args, stdout: TextIO) -> int:
    if args.points < 1:
        raise DomainError(f"--points must be positive, got {args.points}")
    params = HamiltonianParams(J=args.J, K=args.K, f=args.f, p_down=args.p, p_up=-args.p)
    B_values = np.linspace(args.b_min, args.b_max, args.points)
    rows = sweep(params, B_values)
    levels = level_sweep(params, B_values, args.levels) if args.levels else None
    frame = sweep_frame(rows, levels)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            write_sweep_csv(frame, handle)
    else:
        write_sweep_csv(frame, stdout)
    return 0


def cmd_check(args, stdout: TextIO) -> int:
    results = PropertyCheckSystem(samples=args.samples, seed=args.seed).run(args.suite)
    for result in results:
        stdout.write(result.line() + "\n")
    failed = sum(1 for r in results if not r.passed)
    stdout.write(f"{len(results) - failed}/{len(results)} properties passed\n")
    return 1 if failed else 0


def cmd_maxent(args, stdout: TextIO) -> int:
    _write(format_state_file(named_state(args.kind)), args.out, stdout)
    return 0


def cmd_omega(args, stdout: TextIO) -> int:
    for row in cross_validation_table(args.samples, args.seed):
        stdout.write(f"{row.name} {row.monomials} {row.degree} "
                     f"{_number(row.constant.real)} {_number(row.constant.imag)}\n")
    if args.degree16_probe:
        report = degree16_probe(seed=args.seed)
        status = "PASS" if report.passed else "FAIL"
        stdout.write(f"degree16_probe {status} products={report.n_products} probes={report.n_probes} "
                     f"rank={report.product_rank}->{report.combined_rank}\n")
        return 0 if report.passed else 1
    return 0


COMMANDS = {
    "invariants": cmd_invariants,
    "sweep": cmd_sweep,
    "check": cmd_check,
    "maxent": cmd_maxent,
    "omega": cmd_omega,
}


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None,
        stderr: Optional[TextIO] = None) -> int:
    """Parse arguments, dispatch, and map errors to exit codes"""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2

    try:
        return COMMANDS[args.command](args, stdout)
    except ParseError as e:
        logger.debug(f"Error parsing input: {str(e)}")
        stderr.write(f"error: {e}\n")
        return 2
    except SloccLabError as e:
        logger.debug(f"Error in {args.command}: {str(e)}")
        stderr.write(f"error: {e}\n")
        return 1


def main():
    configure_logging()
    sys.exit(run())


if __name__ == "__main__":
    main()

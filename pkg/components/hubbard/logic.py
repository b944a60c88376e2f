#!/usr/bin/env python3
"""
Ising-Hubbard Logic Module
Exact diagonalization, field sweeps of the groundstate entanglement
measures, golden-section peak search and CSV export
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Iterable, List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np
import pandas as pd
import scipy.linalg as la

from core.errors import DomainError
from core.fock import StateVector, enumerate_sector, inner_product
from core.tuning import load_tuning
from components.hubbard.hamiltonian import N_SITES, HamiltonianParams, build_hamiltonian
from components.invariants.density import mode_entropy
from components.invariants.logic import i12_measure, i_deg4, tau_measure
from components.maxent.logic import psi_p_state

logger = logging.getLogger(__name__)

QUANTITIES = ("i12", "tau", "entropy")
CSV_COLUMNS = ["B", "measure_i12", "measure_tau", "entropy", "gap", "ground_energy"]

_INV_PHI = (math.sqrt(5) - 1) / 2


def _settings(section: str) -> dict:
    return load_tuning("hubbard").get(section, {})


def _fix_phase(vector: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude amplitude real positive"""
    pivot = vector[np.argmax(np.abs(vector))]
    return vector * (abs(pivot) / pivot)


def spectrum(h: np.ndarray, k: int = 1) -> List[Tuple[float, StateVector]]:
    """Lowest k eigenpairs of a Hermitian matrix over the (3, 3) basis, energies ascending"""
    size = h.shape[0]
    if not 1 <= k <= size:
        raise DomainError(f"k must lie in [1, {size}], got {k}")
    sector = enumerate_sector(N_SITES, 3)
    if size != sector.size:
        raise DomainError(f"Expected a {sector.size}x{sector.size} matrix, got {h.shape}")
    energies, vectors = la.eigh(h)
    return [(float(energies[i]), StateVector(sector, _fix_phase(vectors[:, i]))) for i in range(k)]


@dataclass
class SweepRow:
    """Groundstate measures at one field value"""
    B: float
    measure_i12: float
    measure_tau: float
    entropy: float
    gap: float
    ground_energy: float

    def quantity(self, name: str) -> float:
        if name == "i12":
            return self.measure_i12
        if name == "tau":
            return self.measure_tau
        if name == "entropy":
            return self.entropy
        raise DomainError(f"Unknown quantity {name!r}, expected one of {QUANTITIES}")


def ground_state(params: HamiltonianParams) -> Tuple[float, float, StateVector]:
    """(ground energy, gap to the first excited level, ground state)"""
    (e0, state), (e1, _) = spectrum(build_hamiltonian(params), 2)
    return e0, e1 - e0, state


def evaluate_point(params: HamiltonianParams) -> SweepRow:
    energy, gap, state = ground_state(params)
    tol = _settings("diagnostics").get("degeneracy_tolerance", 1e-9)
    if gap < tol:
        logger.warning(f"Ground level is degenerate at B={params.B:.6g} (gap {gap:.3g}); measures depend on the eigensolver")
    return SweepRow(
        B=float(params.B),
        measure_i12=i12_measure(state),
        measure_tau=tau_measure(state),
        entropy=mode_entropy(state, 0),
        gap=gap,
        ground_energy=energy,
    )


def sweep(params_base: HamiltonianParams, B_values: Iterable[float]) -> List[SweepRow]:
    """One row per field value, in input order"""
    B_values = list(B_values)
    if not B_values:
        raise DomainError("Sweep needs at least one field value")
    rows = [evaluate_point(params_base.with_field(B)) for B in B_values]
    logger.info(f"Swept {len(rows)} field values on [{min(B_values):.6g}, {max(B_values):.6g}]")
    return rows


def default_grid() -> np.ndarray:
    grid = _settings("grid")
    return np.linspace(grid.get("b_min", 0.0), grid.get("b_max", 3e-5), grid.get("points", 601))


def i12_symmetry_defect(state: StateVector) -> float:
    """|I1 + I2| / max(|I1|, |I2|)"""
    first, second = i_deg4(state, 1).value, i_deg4(state, 2).value
    return abs(first + second) / max(abs(first), abs(second), 1e-300)


@dataclass
class PeakResult:
    B_star: float
    value: float
    interior: bool = True


def find_peak(params_base: HamiltonianParams, interval: Optional[Tuple[float, float]] = None,
              quantity: str = "i12", tol: Optional[float] = None) -> PeakResult:
    """Golden-section maximization of a groundstate measure over B"""
    if quantity not in QUANTITIES:
        raise DomainError(f"Unknown quantity {quantity!r}, expected one of {QUANTITIES}")
    settings = _settings("peak")
    low, high = interval if interval is not None else settings.get("interval", (1.6e-5, 1.8e-5))
    tol = settings.get("tolerance", 1e-11) if tol is None else tol
    if not high > low:
        raise DomainError(f"Peak interval must be nondegenerate, got [{low}, {high}]")

    def measure(B: float) -> float:
        return evaluate_point(params_base.with_field(B)).quantity(quantity)

    a, b = float(low), float(high)
    c, d = b - _INV_PHI * (b - a), a + _INV_PHI * (b - a)
    fc, fd = measure(c), measure(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = measure(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = measure(d)

    B_star = (a + b) / 2
    best = measure(B_star)
    endpoints = [(measure(low), low), (measure(high), high)]
    edge_value, edge = max(endpoints)
    if edge_value >= best:
        logger.warning(f"No interior maximum of {quantity} on [{low:.6g}, {high:.6g}]; returning endpoint {edge:.6g}")
        return PeakResult(edge, edge_value, interior=False)
    logger.info(f"Peak of {quantity} at B={B_star:.6g}: {best:.6g}")
    return PeakResult(B_star, best)


def psi_p_overlap(ground: StateVector) -> float:
    """|<psi_P|ground>| with the normalized paired-regime state"""
    return abs(inner_product(psi_p_state(), ground))


def level_sweep(params_base: HamiltonianParams, B_values: Sequence[float], n_levels: int = 5) -> np.ndarray:
    """Lowest levels at every B, measured from the ground energy at B = 0"""
    size = enumerate_sector(N_SITES, 3).size
    if not 1 <= n_levels <= size:
        raise DomainError(f"n_levels must lie in [1, {size}], got {n_levels}")
    reference = la.eigh(build_hamiltonian(params_base.with_field(0.0)), eigvals_only=True)[0]
    levels = np.array([
        la.eigh(build_hamiltonian(params_base.with_field(B)), eigvals_only=True)[:n_levels]
        for B in B_values
    ])
    return levels - reference


def sweep_frame(rows: Sequence[SweepRow], levels: Optional[np.ndarray] = None) -> pd.DataFrame:
    frame = pd.DataFrame([asdict(row) for row in rows], columns=CSV_COLUMNS)
    if levels is not None:
        for i in range(levels.shape[1]):
            frame[f"level_{i + 1}"] = levels[:, i]
    return frame


def write_sweep_csv(frame: pd.DataFrame, destination: Union[str, TextIO]) -> None:
    """12 significant digits, '.' decimal separator, LF line endings"""
    frame.to_csv(destination, index=False, float_format="%.12g", lineterminator="\n")

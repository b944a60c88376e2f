#!/usr/bin/env python3
"""
Maximally Entangled States Logic Module
Printed example states, the cyclic construction for any half-odd spin
and the maximal-mixedness verifier
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from core.errors import DomainError, ResourceError
from core.fock import BasisLabel, ModeOccupation, StateVector, enumerate_sector, permute_modes, state_from_labels
from core.tuning import load_tuning
from components.invariants.density import reduced_density_matrix

logger = logging.getLogger(__name__)

SWAP_BC = (0, 2, 1)
SWAP_AC = (2, 1, 0)

EXAMPLE_KINDS = ("I2_only", "I1_only", "IAB_only", "IAC_only", "IBC_only", "IABC1_only", "IABC2_only")
EXTRA_KINDS = ("two_fermion", "odd_attractive", "psi_p")


def two_fermion_max() -> StateVector:
    """(|uu> + |dd> + |0D> + |D0>) / 2"""
    return state_from_labels({"uu": 0.5, "dd": 0.5, "0D": 0.5, "D0": 0.5})


def _i2_only() -> StateVector:
    return state_from_labels({"uD0": 0.5, "0uD": 0.5, "D0u": 0.5, "ddd": 0.5})


def _iab_only() -> StateVector:
    weight = 1 / math.sqrt(8)
    labels = ("uD0", "0uD", "D0u", "0Du", "d0D", "Dd0", "dud", "udd")
    return state_from_labels({label: weight for label in labels})


def _iabc1_only() -> StateVector:
    weight = 1 / math.sqrt(12)
    entries = {label: math.sqrt(2) * weight for label in ("u0D", "0Du", "Du0")}
    entries.update({label: weight for label in ("D0d", "0dD", "dD0", "dud", "udd", "ddu")})
    return state_from_labels(entries)


def example_state(kind: str) -> StateVector:
    """Maximally entangled (3, 3) state on which a single generator is nonzero"""
    if kind == "I2_only":
        return _i2_only()
    if kind == "I1_only":
        return permute_modes(_i2_only(), SWAP_BC)
    if kind == "IAB_only":
        return _iab_only()
    if kind == "IAC_only":
        return permute_modes(_iab_only(), SWAP_BC)
    if kind == "IBC_only":
        return permute_modes(_iab_only(), SWAP_AC)
    if kind == "IABC1_only":
        return _iabc1_only()
    if kind == "IABC2_only":
        return permute_modes(_iabc1_only(), SWAP_BC)
    raise DomainError(f"Unknown example kind {kind!r}, expected one of {EXAMPLE_KINDS}")


def odd_attractive_state() -> StateVector:
    """Six-term state of the odd attractive case; its single-mode RDMs are not maximally mixed"""
    weight = 1 / math.sqrt(6)
    labels = ("uD0", "d0D", "0uD", "Dd0", "D0u", "0Dd")
    return state_from_labels({label: weight for label in labels})


def psi_p_state() -> StateVector:
    """Paired-regime groundstate of the Ising-Hubbard ring at small field"""
    weight = 1 / math.sqrt(12)
    entries: Dict[str, float] = {}
    for sign, labels in (
        (-1, ("Du0", "u0D", "0Du")),
        (+1, ("uD0", "0uD", "D0u")),
        (-1, ("D0d", "dD0", "0dD")),
        (+1, ("Dd0", "0Dd", "d0D")),
    ):
        entries.update({label: sign * weight for label in labels})
    return state_from_labels(entries)


def named_state(kind: str) -> StateVector:
    """Any state the CLI can emit"""
    if kind == "two_fermion":
        return two_fermion_max()
    if kind == "odd_attractive":
        return odd_attractive_state()
    if kind == "psi_p":
        return psi_p_state()
    return example_state(kind)


@dataclass(frozen=True)
class CyclicSpec:
    """Spin p/2 fermions, base sequence concatenated r times"""
    p: int = 1
    r: int = 1

    def __post_init__(self):
        if self.p < 1 or self.p % 2 == 0:
            raise DomainError(f"p must be an odd positive integer (fermions), got {self.p}")
        if self.r < 1:
            raise DomainError(f"r must be a positive integer, got {self.r}")

    @property
    def local_dimension(self) -> int:
        return 2 ** (self.p + 1)

    @property
    def n_modes(self) -> int:
        return self.r * self.local_dimension

    @property
    def n_particles(self) -> int:
        return self.r * 2 ** self.p * (self.p + 1)

    @property
    def n_labels(self) -> int:
        """Size of the sector, counted over (p + 1) orbitals per mode"""
        return math.comb((self.p + 1) * self.n_modes, self.n_particles)


def _local_state(value: int) -> ModeOccupation:
    """0 empty, 1 up, 2 down, 3 double: bit 0 is the up orbital, bit 1 the down orbital"""
    return ModeOccupation.from_bits(value & 1, (value >> 1) & 1)


def cyclic_max_state(spec: Optional[CyclicSpec] = None, max_labels: Optional[int] = None) -> StateVector:
    """Equal-weight sum over all cyclic shifts of the concatenated base sequence"""
    settings = load_tuning("maxent").get("cyclic", {})
    spec = spec or CyclicSpec(settings.get("default_p", 1), settings.get("default_r", 1))
    max_labels = settings.get("max_labels", 2 ** 20) if max_labels is None else max_labels
    if spec.n_labels > max_labels:
        raise ResourceError(f"Cyclic state for p={spec.p}, r={spec.r} needs {spec.n_labels} labels, limit {max_labels}")
    if spec.p != 1:
        raise DomainError(f"Only spin-1/2 modes are represented, got p={spec.p}")

    dimension = spec.local_dimension
    base = [value for _ in range(spec.r) for value in range(dimension)]
    sector = enumerate_sector(spec.n_modes, spec.n_particles)
    amplitudes = np.zeros(sector.size, dtype=complex)
    weight = dimension ** -0.5
    for shift in range(dimension):
        label = BasisLabel(tuple(_local_state((value + shift) % dimension) for value in base))
        amplitudes[sector.position(label)] = weight
    logger.info(f"Built cyclic state on {spec.n_modes} modes, {spec.n_particles} fermions, {dimension} terms")
    return StateVector(sector, amplitudes)


def is_maximally_entangled(state: StateVector, tol: Optional[float] = None) -> bool:
    """Every single-mode RDM equals identity / 4 entrywise within tol"""
    tol = load_tuning("maxent").get("verification", {}).get("tolerance", 1e-12) if tol is None else tol
    target = np.eye(4) / 4
    for mode in range(state.sector.n_modes):
        rdm = reduced_density_matrix(state, mode)
        if np.max(np.abs(rdm.matrix - target)) > tol:
            logger.debug(f"Mode {mode} RDM deviates from identity/4 by {np.max(np.abs(rdm.matrix - target)):.3g}")
            return False
    return True

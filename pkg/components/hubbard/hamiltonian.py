#!/usr/bin/env python3
"""
Ising-Hubbard Hamiltonian Module
Cyclic three-site chain with Ising coupling, field, on-site attraction,
spin flips and spin-dependent hopping on the (3, 3) sector
"""

import logging
import math
from dataclasses import dataclass, fields, replace
from typing import Dict, Optional

import numpy as np

from core.errors import DomainError
from core.fock import BasisLabel, ModeOccupation, Sector, Spin, annihilate, apply_ladder, create, enumerate_sector, hop
from core.tuning import load_tuning

logger = logging.getLogger(__name__)

N_SITES = 3
BONDS = ((0, 1), (1, 2), (2, 0))


@dataclass(frozen=True)
class HamiltonianParams:
    """Couplings of the ring; p_up = -p_down in the reference experiment"""
    J: float = 0.0
    B: float = 0.0
    K: float = 0.0
    f: float = 0.0
    p_down: float = 0.0
    p_up: float = 0.0

    def __post_init__(self):
        for item in fields(self):
            value = getattr(self, item.name)
            if not math.isfinite(value):
                raise DomainError(f"Hamiltonian parameter {item.name} must be finite, got {value}")

    @classmethod
    def reference(cls, B: float = 0.0, **overrides) -> "HamiltonianParams":
        """Tuned experiment parameters with the given field"""
        settings = load_tuning("hubbard").get("hamiltonian", {})
        p = overrides.pop("p", settings.get("p", 5e-6))
        values = dict(J=settings.get("J", 1.0), K=settings.get("K", 2.99507), f=settings.get("f", 5e-3),
                      p_down=p, p_up=-p)
        values.update(overrides)
        return cls(B=B, **values)

    def with_field(self, B: float) -> "HamiltonianParams":
        return replace(self, B=B)


def sigma_z_values() -> Dict[ModeOccupation, int]:
    """sigma_z eigenvalue per local state; empty and doubly occupied sites give 0"""
    settings = load_tuning("hubbard").get("hamiltonian", {}).get("sigma_z", {})
    return {
        ModeOccupation.UP: settings.get("up", -1),
        ModeOccupation.DOWN: settings.get("down", 1),
        ModeOccupation.EMPTY: 0,
        ModeOccupation.DOUBLE: 0,
    }


def _diagonal(label: BasisLabel, params: HamiltonianParams, sigma_z: Dict[ModeOccupation, int]) -> float:
    z = [sigma_z[occ] for occ in label.occupations]
    ising = -params.J * sum(z[a] * z[b] for a, b in BONDS)
    field = -params.B * sum(z)
    # each doubly occupied site counted once
    onsite = -params.K * sum(1 for occ in label.occupations if occ is ModeOccupation.DOUBLE)
    return ising + field + onsite


def _off_diagonal_terms(params: HamiltonianParams):
    """(coefficient, ladder term) pairs of the spin-flip and hopping parts"""
    terms = []
    if params.f:
        for site in range(N_SITES):
            terms.append((params.f, create(site, Spin.UP) @ annihilate(site, Spin.DOWN)))
            terms.append((params.f, create(site, Spin.DOWN) @ annihilate(site, Spin.UP)))
    for spin, amplitude in ((Spin.DOWN, params.p_down), (Spin.UP, params.p_up)):
        if not amplitude:
            continue
        for a, b in BONDS:
            terms.append((amplitude, hop(a, b, spin)))
            terms.append((amplitude, hop(b, a, spin)))
    return terms


def build_hamiltonian(params: HamiltonianParams, sector: Optional[Sector] = None) -> np.ndarray:
    """Dense Hermitian matrix over the (3, 3) basis"""
    sector = sector or enumerate_sector(N_SITES, 3)
    if sector.n_modes != N_SITES:
        raise DomainError(f"The ring has {N_SITES} sites, sector has {sector.n_modes} modes")
    sigma_z = sigma_z_values()
    matrix = np.zeros((sector.size, sector.size), dtype=complex)
    off_diagonal = _off_diagonal_terms(params)

    for column, label in enumerate(sector.basis):
        matrix[column, column] += _diagonal(label, params, sigma_z)
        for coefficient, term in off_diagonal:
            result = apply_ladder(term, label)
            if result is None:
                continue
            target, sign = result
            matrix[sector.position(target), column] += coefficient * sign

    tol = load_tuning("hubbard").get("diagnostics", {}).get("hermiticity_tolerance", 1e-12)
    if not np.allclose(matrix, matrix.conj().T, atol=tol):
        raise DomainError("Assembled Hamiltonian is not Hermitian")
    logger.debug(f"Built Hamiltonian for {params}")
    return matrix


def matrix_element(params: HamiltonianParams, bra: str, ket: str) -> complex:
    """<bra|H|ket> for two labels of the (3, 3) sector"""
    sector = enumerate_sector(N_SITES, 3)
    matrix = build_hamiltonian(params, sector)
    return complex(matrix[sector.position(bra), sector.position(ket)])

#!/usr/bin/env python3
"""
Reduced Density Matrices
Single-mode partial traces and subsystem entropy
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.special import entr

from core.config import get_config
from core.errors import DomainError
from core.fock import LOCAL_DIMENSION, StateVector
from core.slocc import BLOCK_MASK
from core.tuning import load_tuning

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReducedDensityMatrix:
    """4x4 single-mode density matrix in the (up, down, 0, double) basis"""
    matrix: np.ndarray

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def is_valid(self) -> bool:
        settings = load_tuning("invariants").get("density", {})
        hermitian = np.allclose(self.matrix, self.matrix.conj().T, atol=settings.get("hermiticity_tolerance", 1e-12))
        positive = self.eigenvalues().min() >= -settings.get("positivity_tolerance", 1e-10)
        block_diagonal = not np.any(self.matrix[~BLOCK_MASK])
        return bool(hermitian and positive and block_diagonal)


def reduced_density_matrix(state: StateVector, mode: int) -> ReducedDensityMatrix:
    """Trace out every mode except `mode`; entries between different particle numbers are exact zeros"""
    n_modes = state.sector.n_modes
    if not 0 <= mode < n_modes:
        raise DomainError(f"Mode {mode} out of range for {n_modes} modes")
    tensor = np.moveaxis(state.to_tensor(), mode, 0).reshape(LOCAL_DIMENSION, -1)
    rho = tensor @ tensor.conj().T
    rho[~BLOCK_MASK] = 0.0
    return ReducedDensityMatrix(rho)


def subsystem_entropy(rdm: ReducedDensityMatrix) -> float:
    """-Tr rho ln rho with eigenvalues below the cutoff treated as zero"""
    cutoff = load_tuning("invariants").get("density", {}).get("entropy_cutoff", get_config().ENTROPY_CUTOFF)
    eigenvalues = rdm.eigenvalues()
    eigenvalues = np.where(eigenvalues < cutoff, 0.0, eigenvalues)
    return float(np.sum(entr(eigenvalues)))


def mode_entropy(state: StateVector, mode: int = 0) -> float:
    return subsystem_entropy(reduced_density_matrix(state, mode))

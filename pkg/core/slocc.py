#!/usr/bin/env python3
"""
SLOCC Group Module
Block-diagonal determinant-one local operators, their generators,
sampling and action on Fock states
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg as la

from core.config import get_config
from core.errors import DomainError
from core.fock import LOCAL_DIMENSION, StateVector

logger = logging.getLogger(__name__)

GENERATOR_KINDS = (1, 2, 3, 8, 15)

# Entries allowed to be nonzero: the {up, down} block plus the two diagonal slots
BLOCK_MASK = np.array([
    [1, 1, 0, 0],
    [1, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
], dtype=bool)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def generator(kind: int) -> np.ndarray:
    """Hermitian traceless generator lambda_kind in the (up, down, 0, double) basis"""
    matrix = np.zeros((LOCAL_DIMENSION, LOCAL_DIMENSION), dtype=complex)
    if kind == 1:
        matrix[:2, :2] = PAULI_X
    elif kind == 2:
        matrix[:2, :2] = PAULI_Y
    elif kind == 3:
        matrix[:2, :2] = PAULI_Z
    elif kind == 8:
        matrix[:] = np.diag([1, 1, -2, 0])
    elif kind == 15:
        matrix[:] = np.diag([1, 1, 1, -3])
    else:
        raise DomainError(f"Unknown generator kind {kind}, expected one of {GENERATOR_KINDS}")
    return matrix


@dataclass(frozen=True)
class LocalOperator:
    """4x4 block-diagonal operator on one mode"""
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.shape != (LOCAL_DIMENSION, LOCAL_DIMENSION):
            raise DomainError(f"Local operators are 4x4, got {matrix.shape}")
        if np.any(np.abs(matrix[~BLOCK_MASK]) > 0.0):
            raise DomainError("Local operator couples different particle-number blocks")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def spin_block(self) -> np.ndarray:
        return self.matrix[:2, :2]

    def determinant(self) -> complex:
        return complex(np.linalg.det(self.spin_block) * self.matrix[2, 2] * self.matrix[3, 3])

    def is_special(self, tol: Optional[float] = None) -> bool:
        tol = get_config().DETERMINANT_TOLERANCE if tol is None else tol
        return abs(self.determinant() - 1.0) <= tol

    def __matmul__(self, other: "LocalOperator") -> "LocalOperator":
        return LocalOperator(self.matrix @ other.matrix)

    @classmethod
    def identity(cls) -> "LocalOperator":
        return cls(np.eye(LOCAL_DIMENSION))


@dataclass(frozen=True)
class GeneratorCoefficients:
    """Coefficients of lambda_1, lambda_2, lambda_3, lambda_8, lambda_15"""
    c1: complex = 0.0
    c2: complex = 0.0
    c3: complex = 0.0
    c8: complex = 0.0
    c15: complex = 0.0

    @classmethod
    def from_sequence(cls, values: Sequence[complex]) -> "GeneratorCoefficients":
        if len(values) != 5:
            raise DomainError(f"Expected 5 generator coefficients, got {len(values)}")
        return cls(*(complex(v) for v in values))

    def as_tuple(self) -> Tuple[complex, ...]:
        return (self.c1, self.c2, self.c3, self.c8, self.c15)

    def algebra_element(self) -> np.ndarray:
        """sum_k c_k lambda_k"""
        return sum(c * generator(kind) for c, kind in zip(self.as_tuple(), GENERATOR_KINDS))


def exponentiate(coeffs) -> LocalOperator:
    """exp(sum_k c_k lambda_k), assembled block by block"""
    if not isinstance(coeffs, GeneratorCoefficients):
        coeffs = GeneratorCoefficients.from_sequence(list(coeffs))
    c1, c2, c3, c8, c15 = (complex(c) for c in coeffs.as_tuple())
    if not np.all(np.isfinite([c1, c2, c3, c8, c15])):
        raise DomainError("Generator coefficients must be finite")

    matrix = np.zeros((LOCAL_DIMENSION, LOCAL_DIMENSION), dtype=complex)
    matrix[:2, :2] = la.expm(c1 * PAULI_X + c2 * PAULI_Y + c3 * PAULI_Z + (c8 + c15) * np.eye(2))
    matrix[2, 2] = np.exp(-2 * c8 + c15)
    matrix[3, 3] = np.exp(-3 * c15)
    return LocalOperator(matrix)


@dataclass(frozen=True)
class GroupElement:
    """One local operator per mode"""
    locals: Tuple[LocalOperator, ...]

    @property
    def n_modes(self) -> int:
        return len(self.locals)

    def compose(self, first: "GroupElement") -> "GroupElement":
        """self after first"""
        return compose(self, first)

    @classmethod
    def identity(cls, n_modes: int) -> "GroupElement":
        return cls(tuple(LocalOperator.identity() for _ in range(n_modes)))

    @classmethod
    def from_locals(cls, operators: Iterable[LocalOperator]) -> "GroupElement":
        return cls(tuple(operators))


def compose(second: GroupElement, first: GroupElement) -> GroupElement:
    """Per-mode product second @ first"""
    if second.n_modes != first.n_modes:
        raise DomainError(f"Cannot compose elements on {second.n_modes} and {first.n_modes} modes")
    return GroupElement(tuple(b @ a for b, a in zip(second.locals, first.locals)))


def apply(element: GroupElement, state: StateVector) -> StateVector:
    """Act mode by mode on the dense tensor of the state; no global matrix is built"""
    n_modes = state.sector.n_modes
    if element.n_modes != n_modes:
        raise DomainError(f"Group element acts on {element.n_modes} modes, state has {n_modes}")
    tensor = state.to_tensor()
    for mode, local in enumerate(element.locals):
        tensor = np.moveaxis(np.tensordot(local.matrix, tensor, axes=([1], [mode])), 0, mode)
    return StateVector.from_tensor(state.sector, tensor)


def embed_local(local: LocalOperator, mode: int, n_modes: int) -> GroupElement:
    """Local operator on one mode, identity elsewhere"""
    if not 0 <= mode < n_modes:
        raise DomainError(f"Mode {mode} out of range for {n_modes} modes")
    operators = [LocalOperator.identity() for _ in range(n_modes)]
    operators[mode] = local
    return GroupElement(tuple(operators))


def _uniform_coefficients(rng: np.random.Generator, scale: float) -> np.ndarray:
    return rng.uniform(-scale, scale, 5) + 1j * rng.uniform(-scale, scale, 5)


def random_element(n_modes: int, scale: Optional[float] = None, seed: Optional[int] = None) -> GroupElement:
    """Random element with coefficient real/imaginary parts uniform in [-scale, scale]"""
    settings = get_config()
    scale = settings.SAMPLING_SCALE if scale is None else scale
    seed = settings.DEFAULT_SEED if seed is None else seed
    if scale <= 0:
        raise DomainError(f"Sampling scale must be positive, got {scale}")
    rng = np.random.default_rng(seed)
    return GroupElement(tuple(exponentiate(_uniform_coefficients(rng, scale)) for _ in range(n_modes)))


RESTRICTIONS = ("full", "spin", "repulsive", "attractive", "balanced")


def random_restricted_element(n_modes: int, scale: Optional[float] = None, seed: Optional[int] = None,
                              restriction: str = "full",
                              modes: Optional[Sequence[int]] = None) -> GroupElement:
    """Random element of a subgroup fixing one of the constrained invariant families.

    spin       -- lambda_8 and lambda_15 coefficients 0 on every mode
    repulsive  -- lambda_15 coefficient 0 on every mode (det 1 on the {up, down, 0} block)
    attractive -- lambda_8 coefficient = -lambda_15 coefficient on every mode
    balanced   -- same as attractive, but only on `modes`; the rest are unrestricted
    """
    if restriction not in RESTRICTIONS:
        raise DomainError(f"Unknown restriction {restriction!r}, expected one of {RESTRICTIONS}")
    settings = get_config()
    scale = settings.SAMPLING_SCALE if scale is None else scale
    seed = settings.DEFAULT_SEED if seed is None else seed
    if scale <= 0:
        raise DomainError(f"Sampling scale must be positive, got {scale}")
    rng = np.random.default_rng(seed)
    balanced = set(range(n_modes)) if restriction == "attractive" else set(modes or ())

    operators = []
    for mode in range(n_modes):
        coeffs = _uniform_coefficients(rng, scale)
        if restriction == "spin":
            coeffs[3:] = 0.0
        elif restriction == "repulsive":
            coeffs[4] = 0.0
        elif mode in balanced:
            coeffs[3] = -coeffs[4]
        operators.append(exponentiate(coeffs))
    return GroupElement(tuple(operators))


def scaling_element(n_modes: int, r: float, phi: float = 0.0) -> GroupElement:
    """diag(1, 1, r e^{i phi}, e^{-i phi} / r) on every mode"""
    if r <= 0:
        raise DomainError(f"Scaling radius must be positive, got {r}")
    local = LocalOperator(np.diag([1.0, 1.0, r * np.exp(1j * phi), np.exp(-1j * phi) / r]))
    return GroupElement(tuple(local for _ in range(n_modes)))


def bell_local_annihilator(alpha: complex) -> LocalOperator:
    """exp(-6 alpha lambda_3 + 2 alpha lambda_8 + alpha lambda_15)"""
    return exponentiate(GeneratorCoefficients(0.0, 0.0, -6 * alpha, 2 * alpha, alpha))


def spin_block_scaling(alpha: complex) -> LocalOperator:
    """diag(e^{-alpha}, e^{alpha}, 1, 1)"""
    return exponentiate(GeneratorCoefficients(0.0, 0.0, -alpha, 0.0, 0.0))

#!/usr/bin/env python3
"""
Fock Space Module
Fixed-particle-number sectors of spin-1/2 fermionic modes with the
a_up, a_down, b_up, b_down, ... operator ordering
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from core.config import get_config
from core.errors import DomainError, ResourceError

logger = logging.getLogger(__name__)


class ModeOccupation(Enum):
    """Local state of one spatial mode, listed in basis order"""
    UP = "u"
    DOWN = "d"
    EMPTY = "0"
    DOUBLE = "D"

    @property
    def particle_count(self) -> int:
        return _PARTICLE_COUNT[self]

    @property
    def index(self) -> int:
        """Row/column of this state in a 4x4 local operator"""
        return LOCAL_ORDER.index(self)

    @property
    def bits(self) -> Tuple[int, int]:
        """(up, down) orbital occupation"""
        return _BITS[self]

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]

    @classmethod
    def from_char(cls, char: str) -> "ModeOccupation":
        try:
            return cls(char)
        except ValueError:
            raise DomainError(f"Unknown occupation character {char!r}, expected one of u, d, 0, D")

    @classmethod
    def from_bits(cls, up: int, down: int) -> "ModeOccupation":
        return _FROM_BITS[(up, down)]


LOCAL_ORDER = (ModeOccupation.UP, ModeOccupation.DOWN, ModeOccupation.EMPTY, ModeOccupation.DOUBLE)
LOCAL_DIMENSION = len(LOCAL_ORDER)

_PARTICLE_COUNT = {ModeOccupation.UP: 1, ModeOccupation.DOWN: 1, ModeOccupation.EMPTY: 0, ModeOccupation.DOUBLE: 2}
_BITS = {ModeOccupation.UP: (1, 0), ModeOccupation.DOWN: (0, 1), ModeOccupation.EMPTY: (0, 0), ModeOccupation.DOUBLE: (1, 1)}
_FROM_BITS = {bits: occ for occ, bits in _BITS.items()}
_SYMBOLS = {ModeOccupation.UP: "↑", ModeOccupation.DOWN: "↓", ModeOccupation.EMPTY: "0", ModeOccupation.DOUBLE: "◇"}


class Spin(Enum):
    UP = 0
    DOWN = 1


class LadderKind(Enum):
    CREATE = "create"
    ANNIHILATE = "annihilate"


@dataclass(frozen=True)
class BasisLabel:
    """Occupation string of an n-mode Fock basis vector"""
    occupations: Tuple[ModeOccupation, ...]

    @classmethod
    def parse(cls, text: str) -> "BasisLabel":
        """Build a label from the u/d/0/D alphabet, e.g. 'u0D'"""
        if not text:
            raise DomainError("Empty basis label")
        return cls(tuple(ModeOccupation.from_char(char) for char in text))

    @property
    def n_modes(self) -> int:
        return len(self.occupations)

    @property
    def particle_count(self) -> int:
        return sum(occ.particle_count for occ in self.occupations)

    def orbitals(self) -> List[int]:
        """Occupied orbitals in canonical order, orbital = 2*mode + spin"""
        occupied = []
        for mode, occ in enumerate(self.occupations):
            up, down = occ.bits
            if up:
                occupied.append(2 * mode)
            if down:
                occupied.append(2 * mode + 1)
        return occupied

    def pretty(self) -> str:
        return "|" + "".join(occ.symbol for occ in self.occupations) + "⟩"

    def __str__(self) -> str:
        return "".join(occ.value for occ in self.occupations)

    def __getitem__(self, mode: int) -> ModeOccupation:
        return self.occupations[mode]


LabelLike = Union[BasisLabel, str]


def as_label(label: LabelLike) -> BasisLabel:
    if isinstance(label, BasisLabel):
        return label
    return BasisLabel.parse(label)


@dataclass(frozen=True)
class Sector:
    """All basis labels with a fixed mode count and total particle count"""
    n_modes: int
    n_particles: int
    basis: Tuple[BasisLabel, ...]
    _positions: Dict[BasisLabel, int] = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_positions", {label: i for i, label in enumerate(self.basis)})

    @property
    def size(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def __contains__(self, label: LabelLike) -> bool:
        try:
            return as_label(label) in self._positions
        except DomainError:
            return False

    def position(self, label: LabelLike) -> int:
        label = as_label(label)
        try:
            return self._positions[label]
        except KeyError:
            raise DomainError(f"Label {label} is not in sector ({self.n_modes}, {self.n_particles})")

    @property
    def flat_indices(self) -> np.ndarray:
        """Index of every basis label in the dense 4^n tensor"""
        return _flat_indices(self)

    def describe(self) -> str:
        return f"({self.n_modes}, {self.n_particles})"


@lru_cache(maxsize=None)
def _flat_indices(sector: Sector) -> np.ndarray:
    weights = LOCAL_DIMENSION ** np.arange(sector.n_modes - 1, -1, -1)
    rows = np.array([[occ.index for occ in label.occupations] for label in sector.basis], dtype=np.int64)
    indices = rows @ weights
    indices.setflags(write=False)
    return indices


def sector_size(n_modes: int, n_particles: int) -> int:
    """Number of labels: choose n_particles of the 2*n_modes orbitals"""
    return math.comb(2 * n_modes, n_particles)


@lru_cache(maxsize=None)
def enumerate_sector(n_modes: int, n_particles: int) -> Sector:
    """Enumerate a sector in lexicographic (u < d < 0 < D) order, mode 0 most significant"""
    if n_modes < 1:
        raise DomainError(f"n_modes must be at least 1, got {n_modes}")
    if not 0 <= n_particles <= 2 * n_modes:
        raise DomainError(f"n_particles must lie in [0, {2 * n_modes}], got {n_particles}")
    limit = get_config().MAX_SECTOR_LABELS
    size = sector_size(n_modes, n_particles)
    if size > limit:
        raise ResourceError(f"Sector ({n_modes}, {n_particles}) has {size} labels, above the limit {limit}")

    basis = tuple(
        BasisLabel(occupations)
        for occupations in itertools.product(LOCAL_ORDER, repeat=n_modes)
        if sum(occ.particle_count for occ in occupations) == n_particles
    )
    logger.debug(f"Enumerated sector ({n_modes}, {n_particles}) with {len(basis)} labels")
    return Sector(n_modes, n_particles, basis)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitudes over the basis of one sector"""
    sector: Sector
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex)
        if amplitudes.shape != (self.sector.size,):
            raise DomainError(f"Expected {self.sector.size} amplitudes, got shape {amplitudes.shape}")
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    def amplitude(self, label: LabelLike) -> complex:
        """Amplitude of a label; labels of other sectors are rejected"""
        return self.amplitudes[self.sector.position(label)]

    def __getitem__(self, label: LabelLike) -> complex:
        return self.amplitude(label)

    def items(self) -> Iterator[Tuple[BasisLabel, complex]]:
        return zip(self.sector.basis, self.amplitudes)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: Optional[float] = None) -> bool:
        tol = get_config().NORMALIZATION_TOLERANCE if tol is None else tol
        return abs(float(np.vdot(self.amplitudes, self.amplitudes).real) - 1.0) <= tol

    def normalized(self) -> "StateVector":
        norm = self.norm()
        if norm == 0.0:
            raise DomainError("Cannot normalize the zero vector")
        return StateVector(self.sector, self.amplitudes / norm)

    def scaled(self, factor: complex) -> "StateVector":
        return StateVector(self.sector, self.amplitudes * factor)

    def support(self, tol: float = 0.0) -> List[BasisLabel]:
        return [label for label, amp in self.items() if abs(amp) > tol]

    def to_tensor(self) -> np.ndarray:
        """Dense tensor of shape (4,)*n, zero outside the sector"""
        dense = np.zeros(LOCAL_DIMENSION ** self.sector.n_modes, dtype=complex)
        dense[self.sector.flat_indices] = self.amplitudes
        return dense.reshape((LOCAL_DIMENSION,) * self.sector.n_modes)

    @classmethod
    def from_tensor(cls, sector: Sector, tensor: np.ndarray) -> "StateVector":
        return cls(sector, np.asarray(tensor).reshape(-1)[sector.flat_indices])

    def __add__(self, other: "StateVector") -> "StateVector":
        _check_same_sector(self, other)
        return StateVector(self.sector, self.amplitudes + other.amplitudes)

    def __sub__(self, other: "StateVector") -> "StateVector":
        _check_same_sector(self, other)
        return StateVector(self.sector, self.amplitudes - other.amplitudes)

    def __mul__(self, factor: complex) -> "StateVector":
        return self.scaled(factor)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.sector == other.sector and np.array_equal(self.amplitudes, other.amplitudes)


def _check_same_sector(a: StateVector, b: StateVector):
    if a.sector != b.sector:
        raise DomainError(f"Sector mismatch: {a.sector.describe()} vs {b.sector.describe()}")


def state_from_amplitudes(sector: Sector, entries: Mapping[LabelLike, complex], normalize: bool = False) -> StateVector:
    """Build a state from label -> amplitude entries; missing labels are zero"""
    amplitudes = np.zeros(sector.size, dtype=complex)
    for label, value in entries.items():
        amplitudes[sector.position(label)] = value
    state = StateVector(sector, amplitudes)
    if normalize:
        return state.normalized()
    return state


def state_from_labels(entries: Mapping[str, complex], normalize: bool = False) -> StateVector:
    """Infer the sector from the labels and build the state"""
    if not entries:
        raise DomainError("Cannot infer a sector from no labels")
    labels = [as_label(label) for label in entries]
    n_modes = {label.n_modes for label in labels}
    n_particles = {label.particle_count for label in labels}
    if len(n_modes) != 1 or len(n_particles) != 1:
        raise DomainError("Labels do not share one mode count and particle count")
    sector = enumerate_sector(n_modes.pop(), n_particles.pop())
    return state_from_amplitudes(sector, entries, normalize=normalize)


def basis_state(label: LabelLike) -> StateVector:
    return state_from_labels({str(as_label(label)): 1.0})


def random_state(sector: Sector, rng: np.random.Generator, normalize: bool = True) -> StateVector:
    """Complex Gaussian state on a sector"""
    amplitudes = rng.standard_normal(sector.size) + 1j * rng.standard_normal(sector.size)
    state = StateVector(sector, amplitudes)
    return state.normalized() if normalize else state


def random_state_on(labels: Sequence[LabelLike], rng: np.random.Generator, normalize: bool = True) -> StateVector:
    """Complex Gaussian state supported on the given labels only"""
    values = rng.standard_normal(len(labels)) + 1j * rng.standard_normal(len(labels))
    return state_from_labels(dict(zip((str(as_label(l)) for l in labels), values)), normalize=normalize)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>"""
    _check_same_sector(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


@dataclass(frozen=True)
class LadderFactor:
    mode: int
    spin: Spin
    kind: LadderKind

    @property
    def orbital(self) -> int:
        return 2 * self.mode + self.spin.value


@dataclass(frozen=True)
class LadderTerm:
    """Product of ladder operators, applied right to left"""
    factors: Tuple[LadderFactor, ...]

    def __matmul__(self, other: "LadderTerm") -> "LadderTerm":
        return LadderTerm(self.factors + other.factors)

    def adjoint(self) -> "LadderTerm":
        flipped = {LadderKind.CREATE: LadderKind.ANNIHILATE, LadderKind.ANNIHILATE: LadderKind.CREATE}
        return LadderTerm(tuple(LadderFactor(f.mode, f.spin, flipped[f.kind]) for f in reversed(self.factors)))


def create(mode: int, spin: Spin) -> LadderTerm:
    return LadderTerm((LadderFactor(mode, spin, LadderKind.CREATE),))


def annihilate(mode: int, spin: Spin) -> LadderTerm:
    return LadderTerm((LadderFactor(mode, spin, LadderKind.ANNIHILATE),))


def hop(to_mode: int, from_mode: int, spin: Spin) -> LadderTerm:
    """c^dagger_{to, s} c_{from, s}"""
    return create(to_mode, spin) @ annihilate(from_mode, spin)


def apply_ladder(term: LadderTerm, label: LabelLike) -> Optional[Tuple[BasisLabel, int]]:
    """Act with a ladder product on a basis label.

    Each operator on orbital o picks up (-1)^(number of occupied orbitals
    below o) when anticommuted into the canonical creation word. Returns
    None when the product annihilates the vector.
    """
    label = as_label(label)
    occupied = [0] * (2 * label.n_modes)
    for orbital in label.orbitals():
        occupied[orbital] = 1

    sign = 1
    for factor in reversed(term.factors):
        if not 0 <= factor.mode < label.n_modes:
            raise DomainError(f"Mode {factor.mode} out of range for {label.n_modes} modes")
        orbital = factor.orbital
        if factor.kind is LadderKind.CREATE:
            if occupied[orbital]:
                return None
            occupied[orbital] = 1
        else:
            if not occupied[orbital]:
                return None
            occupied[orbital] = 0
        if sum(occupied[:orbital]) % 2:
            sign = -sign

    occupations = tuple(
        ModeOccupation.from_bits(occupied[2 * mode], occupied[2 * mode + 1]) for mode in range(label.n_modes)
    )
    return BasisLabel(occupations), sign


def _validate_permutation(permutation: Sequence[int], n_modes: int) -> Tuple[int, ...]:
    permutation = tuple(int(p) for p in permutation)
    if sorted(permutation) != list(range(n_modes)):
        raise DomainError(f"{permutation} is not a permutation of {n_modes} modes")
    return permutation


def permute_modes(state: StateVector, permutation: Sequence[int]) -> StateVector:
    """Relabel modes: new mode k holds what old mode permutation[k] held. No fermionic sign."""
    permutation = _validate_permutation(permutation, state.sector.n_modes)
    tensor = state.to_tensor()
    return StateVector.from_tensor(state.sector, np.transpose(tensor, permutation))


def fermionic_permute_modes(state: StateVector, permutation: Sequence[int]) -> StateVector:
    """Mode relabeling as a fermionic unitary, including the reordering sign of the creation word"""
    permutation = _validate_permutation(permutation, state.sector.n_modes)
    target_of = {old: new for new, old in enumerate(permutation)}
    amplitudes = np.zeros(state.sector.size, dtype=complex)
    for label, amp in state.items():
        if amp == 0:
            continue
        moved = [2 * target_of[orbital // 2] + orbital % 2 for orbital in label.orbitals()]
        new_label = BasisLabel(tuple(label.occupations[old] for old in permutation))
        amplitudes[state.sector.position(new_label)] = _permutation_sign(moved) * amp
    return StateVector(state.sector, amplitudes)


def _permutation_sign(sequence: Sequence[int]) -> int:
    inversions = sum(1 for i, j in itertools.combinations(range(len(sequence)), 2) if sequence[i] > sequence[j])
    return -1 if inversions % 2 else 1


def product_state(local: ModeOccupation, rest: StateVector, position: int = 0) -> StateVector:
    """Embed |local> at `position` next to the modes of `rest` (plain tensor embedding)"""
    n_modes = rest.sector.n_modes + 1
    if not 0 <= position < n_modes:
        raise DomainError(f"Position {position} out of range for {n_modes} modes")
    sector = enumerate_sector(n_modes, rest.sector.n_particles + local.particle_count)
    amplitudes = np.zeros(sector.size, dtype=complex)
    for label, amp in rest.items():
        occupations = label.occupations[:position] + (local,) + label.occupations[position:]
        amplitudes[sector.position(BasisLabel(occupations))] = amp
    return StateVector(sector, amplitudes)


def superpose(terms: Iterable[Tuple[complex, StateVector]]) -> StateVector:
    """Linear combination of states from one sector"""
    terms = list(terms)
    if not terms:
        raise DomainError("Nothing to superpose")
    total = terms[0][1].scaled(terms[0][0])
    for coefficient, state in terms[1:]:
        total = total + state.scaled(coefficient)
    return total

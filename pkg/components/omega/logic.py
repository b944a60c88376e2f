#!/usr/bin/env python3
"""
Omega Logic Module
Evaluation of generated polynomials, proportionality and rank tests,
index-balance checks and the cross-validation against the hand-coded forms
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from core.config import get_config
from core.errors import DomainError, IndeterminateError, MismatchError
from core.fock import ModeOccupation, StateVector, as_label, enumerate_sector, random_state_on
from core.tuning import load_tuning
from components.invariants.logic import (
    GENERATOR_DEGREES, generator_values, i_abc, i_deg4, i_pair, localized_invariant,
)
from components.omega.recipes import (
    GENERATOR_RECIPES, NAMED_RECIPES, TransvectionRecipe, cross_link, evaluate_recipe, evaluate_recipe_numeric,
)
from components.omega.polynomial import SparsePolynomial, Symbol

logger = logging.getLogger(__name__)

Evaluator = Union[SparsePolynomial, TransvectionRecipe, Callable[[StateVector], object]]

SINGLE = (ModeOccupation.UP, ModeOccupation.DOWN)
PAIRED = (ModeOccupation.EMPTY, ModeOccupation.DOUBLE)

# Supports the sample states are drawn from
SUPPORTS = {
    "full": lambda label: True,
    "localizedA": lambda label: label[0] in SINGLE,
    "localizedAL": lambda label: label[0] in SINGLE and label[1] in PAIRED and label[2] in PAIRED,
}


def _settings() -> Dict:
    return load_tuning("omega")


def _tolerance(key: str, default: float) -> float:
    return _settings().get("tolerances", {}).get(key, default)


def evaluate_at(poly: SparsePolynomial, state: StateVector) -> complex:
    """Substitute the amplitudes of a (3, 3) state"""
    sector = state.sector
    if (sector.n_modes, sector.n_particles) != (3, 3):
        raise DomainError(f"Generated polynomials live on sector (3, 3), got {sector.describe()}")
    if poly.has_auxiliary():
        raise DomainError("Polynomial still carries auxiliary form variables")
    values = {Symbol.amplitude(str(label)): complex(amp) for label, amp in state.items()}
    return poly.evaluate(values)


def evaluate(evaluator: Evaluator, state: StateVector) -> complex:
    """Value of a polynomial, recipe or invariant callable at a state"""
    if isinstance(evaluator, SparsePolynomial):
        return evaluate_at(evaluator, state)
    if isinstance(evaluator, TransvectionRecipe):
        return evaluate_recipe_numeric(evaluator, state)
    value = evaluator(state)
    return complex(getattr(value, "value", value))


def sample_states(n_samples: int, seed: int, support: str = "full") -> List[StateVector]:
    """Complex Gaussian (3, 3) states on one of the supports"""
    if support not in SUPPORTS:
        raise DomainError(f"Unknown sample support {support!r}, expected one of {sorted(SUPPORTS)}")
    labels = [label for label in enumerate_sector(3, 3).basis if SUPPORTS[support](label)]
    rng = np.random.default_rng(seed)
    return [random_state_on(labels, rng) for _ in range(n_samples)]


def proportionality_constant(poly: Evaluator, reference: Evaluator, n_samples: Optional[int] = None,
                             seed: Optional[int] = None, support: str = "full") -> complex:
    """Constant c with poly = c * reference on every sample"""
    sampling = _settings().get("sampling", {})
    n_samples = sampling.get("proportionality_samples", 20) if n_samples is None else n_samples
    seed = sampling.get("seed", 0) if seed is None else seed
    if n_samples < 3:
        raise DomainError(f"Proportionality needs at least 3 samples, got {n_samples}")
    zero = _tolerance("zero_threshold", 1e-12)
    tol = _tolerance("ratio", get_config().RATIO_TOLERANCE)

    ratios = []
    for state in sample_states(n_samples, seed, support):
        p, r = evaluate(poly, state), evaluate(reference, state)
        if abs(r) <= zero:
            if abs(p) > zero:
                raise MismatchError(f"Reference vanishes where the polynomial is {p:.3g}")
            continue
        ratios.append(p / r)
    if not ratios:
        raise IndeterminateError(f"Reference vanished on all {n_samples} samples")

    constant = ratios[0]
    spread = max(abs(ratio - constant) for ratio in ratios)
    if spread > tol * max(abs(constant), zero):
        raise MismatchError(f"Sample ratios spread by {spread:.3g} around {constant:.6g}")
    logger.debug(f"Proportionality constant {constant:.12g} from {len(ratios)} samples")
    return complex(np.mean(ratios))


def evaluation_matrix(polys: Sequence[Evaluator], states: Sequence[StateVector]) -> np.ndarray:
    return np.array([[evaluate(poly, state) for state in states] for poly in polys], dtype=complex)


def numerical_rank(matrix: np.ndarray, tol: Optional[float] = None) -> int:
    """Rank after normalizing columns and rows; zero rows do not count"""
    tol = _tolerance("rank", get_config().RANK_TOLERANCE) if tol is None else tol
    matrix = np.array(matrix, dtype=complex)
    if matrix.size == 0:
        return 0
    column_norms = np.linalg.norm(matrix, axis=0)
    matrix = matrix[:, column_norms > 0] / column_norms[column_norms > 0]
    row_norms = np.linalg.norm(matrix, axis=1)
    matrix = matrix[row_norms > 0] / row_norms[row_norms > 0, None]
    if matrix.size == 0:
        return 0
    singular = np.linalg.svd(matrix, compute_uv=False)
    return int(np.sum(singular > tol * singular.max()))


def rank_of_set(polys: Sequence[Evaluator], n_samples: Optional[int] = None, seed: Optional[int] = None,
                support: str = "full") -> int:
    """Numerical rank of the polynomials evaluated on random states"""
    sampling = _settings().get("sampling", {})
    n_samples = max(sampling.get("rank_samples", 40), len(polys)) if n_samples is None else n_samples
    seed = sampling.get("seed", 0) if seed is None else seed
    if n_samples < len(polys):
        raise DomainError(f"Need at least {len(polys)} samples for {len(polys)} polynomials, got {n_samples}")
    return numerical_rank(evaluation_matrix(polys, sample_states(n_samples, seed, support)))


def is_admissible(poly: SparsePolynomial, localized_modes: Sequence[int] = ()) -> bool:
    """Every monomial carries equal up/down/0/double counts per mode.

    On localized modes only up = down and 0 = double are required.
    """
    if poly.has_auxiliary():
        raise DomainError("Admissibility is defined for polynomials in amplitudes only")
    for monomial, _ in poly.items():
        counts = np.zeros((3, 4), dtype=int)
        for symbol, exponent in monomial:
            for mode, occ in enumerate(as_label(symbol.name).occupations):
                counts[mode, occ.index] += exponent
        for mode in range(3):
            up, down, empty, double = counts[mode]
            if mode in localized_modes:
                if up != down or empty != double:
                    return False
            elif not up == down == empty == double:
                return False
    return True


def _generator_products(degree: int) -> List[Tuple[str, ...]]:
    names = sorted(GENERATOR_DEGREES)
    products = []
    for size in range(1, degree // 4 + 1):
        for combo in itertools.combinations_with_replacement(names, size):
            if sum(GENERATOR_DEGREES[name] for name in combo) == degree:
                products.append(combo)
    return products


def product_evaluator(names: Sequence[str]) -> Callable[[StateVector], complex]:
    def evaluator(state: StateVector) -> complex:
        values = generator_values(state)
        return complex(np.prod([values[name].value for name in names]))
    return evaluator


def degree12_set() -> List[Callable[[StateVector], complex]]:
    """I_ABC1, I_ABC2 and the ten products of lower generators at degree 12"""
    combos = [
        ("I_ABC1",), ("I_ABC2",),
        ("I2", "I_AB"), ("I2", "I_BC"), ("I2", "I_AC"),
        ("I1", "I_AB"), ("I1", "I_BC"), ("I1", "I_AC"),
        ("I1", "I1", "I1"), ("I2", "I2", "I2"), ("I1", "I1", "I2"), ("I2", "I2", "I1"),
    ]
    return [product_evaluator(combo) for combo in combos]


def degree8_set() -> List[Callable[[StateVector], complex]]:
    combos = [("I_AB",), ("I_BC",), ("I_AC",), ("I1", "I1"), ("I2", "I2"), ("I1", "I2")]
    return [product_evaluator(combo) for combo in combos]


@dataclass
class ProbeReport:
    """Outcome of the degree-16 search"""
    n_products: int
    n_probes: int
    product_rank: int
    combined_rank: int

    @property
    def passed(self) -> bool:
        return self.combined_rank == self.product_rank


def degree16_probes(max_probes: Optional[int] = None) -> List[TransvectionRecipe]:
    """Cross-linked pairs of generator recipes whose degrees add up to 16"""
    max_probes = _settings().get("probe", {}).get("max_probes", 24) if max_probes is None else max_probes
    probes = []
    for left_name, right_name in itertools.combinations_with_replacement(GENERATOR_RECIPES, 2):
        left, right = NAMED_RECIPES[left_name], NAMED_RECIPES[right_name]
        if left.degree + right.degree != 16:
            continue
        for lp in left.contractions():
            for rp in right.contractions():
                if lp.family == rp.family:
                    probes.append(cross_link(left, right, lp.index, rp.index))
    if len(probes) > max_probes:
        # even spread over all pairs instead of the first few
        picks = np.linspace(0, len(probes) - 1, max_probes).round().astype(int)
        probes = [probes[i] for i in sorted(set(picks))]
    return probes


def degree16_probe(n_samples: Optional[int] = None, seed: Optional[int] = None,
                   max_probes: Optional[int] = None) -> ProbeReport:
    """Check that cross-linked degree-16 contractions stay in the span of generator products"""
    settings = _settings()
    n_samples = settings.get("probe", {}).get("samples", 64) if n_samples is None else n_samples
    seed = settings.get("sampling", {}).get("seed", 0) if seed is None else seed
    products = [product_evaluator(combo) for combo in _generator_products(16)]
    probes = degree16_probes(max_probes)
    if n_samples < len(products) + len(probes):
        raise DomainError(f"Need at least {len(products) + len(probes)} samples, got {n_samples}")

    states = sample_states(n_samples, seed)
    product_matrix = evaluation_matrix(products, states)
    probe_matrix = evaluation_matrix(probes, states)
    report = ProbeReport(
        n_products=len(products),
        n_probes=len(probes),
        product_rank=numerical_rank(product_matrix),
        combined_rank=numerical_rank(np.vstack([product_matrix, probe_matrix])),
    )
    logger.info(f"Degree-16 probe: {report.n_probes} probes, rank {report.product_rank} -> {report.combined_rank}")
    return report


# Hand-coded counterpart, sample support and localized modes for every named recipe
REFERENCES: Dict[str, Tuple[Callable[[StateVector], object], str, Tuple[int, ...]]] = {
    "I1": (lambda s: i_deg4(s, 1), "full", ()),
    "I2": (lambda s: i_deg4(s, 2), "full", ()),
    "I_BC": (lambda s: i_pair(s, "BC"), "full", ()),
    "I_AC": (lambda s: i_pair(s, "AC"), "full", ()),
    "I_AB": (lambda s: i_pair(s, "AB"), "full", ()),
    "I_ABC1": (lambda s: i_abc(s, 1), "full", ()),
    "I_ABC2": (lambda s: i_abc(s, 2), "full", ()),
    "I_A1": (lambda s: localized_invariant(s, "A1"), "localizedA", (0,)),
    "I_A2": (lambda s: localized_invariant(s, "A2"), "localizedA", (0,)),
    "I_A2_alt": (lambda s: localized_invariant(s, "A2"), "localizedA", (0,)),
    "I_AL": (lambda s: localized_invariant(s, "AL"), "localizedAL", (0, 1, 2)),
}


@dataclass
class CrossValidationRow:
    name: str
    recipe: str
    monomials: int
    degree: int
    constant: complex
    admissible: bool


def cross_validation_table(n_samples: Optional[int] = None, seed: Optional[int] = None) -> List[CrossValidationRow]:
    """Expand every named recipe and compare it with its hand-coded counterpart"""
    rows = []
    for name, recipe in NAMED_RECIPES.items():
        reference, support, localized = REFERENCES[name]
        poly = evaluate_recipe(recipe)
        constant = proportionality_constant(poly, reference, n_samples, seed, support)
        rows.append(CrossValidationRow(
            name=name,
            recipe=str(recipe),
            monomials=len(poly),
            degree=poly.degree(),
            constant=constant,
            admissible=is_admissible(poly, localized),
        ))
        logger.info(f"Recipe {name}: {len(poly)} monomials, constant {constant.real:+.6g}{constant.imag:+.6g}j")
    return rows

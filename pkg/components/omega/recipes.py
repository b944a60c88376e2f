#!/usr/bin/env python3
"""
Transvection Recipes Module
Shortform contraction recipes, their symbolic expansion through the Omega
operator and an einsum evaluator for the same contraction
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from core.errors import DomainError
from core.fock import StateVector
from components.omega.forms import FORM_FAMILY_OF, LINEAR_TEMPLATES, SPIN_CHARS, FormCollection, build_forms, omega_operator
from components.omega.polynomial import SparsePolynomial

logger = logging.getLogger(__name__)

# Omega contraction between the first and second occurrence of an index
EPSILON = np.array([[0.0, 1.0], [-1.0, 0.0]])

_TOKEN = re.compile(r"^(M|m[123][123])_([a-z]+)$")


@dataclass(frozen=True)
class RecipeFactor:
    """One form with its contraction indices, one per auxiliary family"""
    form: str
    indices: Tuple[str, ...]

    @property
    def families(self) -> Tuple[str, ...]:
        return FORM_FAMILY_OF[self.form]

    def __str__(self) -> str:
        joined = "".join(self.indices) if all(len(i) == 1 for i in self.indices) else ",".join(self.indices)
        return f"{self.form}_{joined}"


@dataclass(frozen=True)
class IndexPair:
    index: str
    family: str
    first: int
    second: int


@dataclass(frozen=True)
class TransvectionRecipe:
    """Product of forms in which every index is Omega-contracted between exactly two factors"""
    factors: Tuple[RecipeFactor, ...]
    coefficient: Fraction = Fraction(1)
    name: str = ""

    def __post_init__(self):
        self.contractions()

    @property
    def degree(self) -> int:
        return len(self.factors)

    def contractions(self) -> List[IndexPair]:
        """Index pairs in order of their second occurrence"""
        seen: Dict[str, List[Tuple[int, str]]] = {}
        for position, factor in enumerate(self.factors):
            if factor.form not in FORM_FAMILY_OF:
                raise DomainError(f"Unknown form {factor.form!r} in recipe {self.name or self}")
            if len(factor.indices) != len(factor.families):
                raise DomainError(f"{factor.form} takes {len(factor.families)} indices, got {len(factor.indices)}")
            for index, family in zip(factor.indices, factor.families):
                seen.setdefault(index, []).append((position, family))

        pairs = []
        for index, occurrences in seen.items():
            if len(occurrences) == 1:
                raise DomainError(f"Dangling contraction index {index!r} in recipe {self.name or self}")
            if len(occurrences) > 2:
                raise DomainError(f"Index {index!r} appears on {len(occurrences)} factors in recipe {self.name or self}")
            (first, family_a), (second, family_b) = occurrences
            if family_a != family_b:
                raise DomainError(f"Index {index!r} joins families {family_a} and {family_b}")
            if first == second:
                raise DomainError(f"Index {index!r} contracts a form with itself")
            pairs.append(IndexPair(index, family_a, first, second))
        return sorted(pairs, key=lambda p: (p.second, p.first))

    def __str__(self) -> str:
        body = " ".join(str(f) for f in self.factors)
        return body if self.coefficient == 1 else f"{self.coefficient} {body}"


def parse_recipe(text: str, name: str = "", coefficient=1) -> TransvectionRecipe:
    """Parse the shortform, e.g. 'M_ijk m31_i m12_j m23_k'"""
    factors = []
    for token in text.split():
        match = _TOKEN.match(token)
        if not match or match.group(1) not in FORM_FAMILY_OF:
            raise DomainError(f"Cannot parse recipe factor {token!r}")
        factors.append(RecipeFactor(match.group(1), tuple(match.group(2))))
    if not factors:
        raise DomainError("Empty recipe")
    return TransvectionRecipe(tuple(factors), Fraction(coefficient), name)


NAMED_RECIPES: Dict[str, TransvectionRecipe] = {
    recipe.name: recipe
    for recipe in (
        parse_recipe("M_ijk m31_i m12_j m23_k", "I1"),
        parse_recipe("M_ijk m21_i m32_j m13_k", "I2"),
        parse_recipe("m21_i M_ijk M_ljk m31_l m12_n m32_n m13_p m23_p", "I_BC"),
        parse_recipe("m32_j M_ijk M_ilk m12_l m21_n m31_n m13_p m23_p", "I_AC"),
        parse_recipe("m23_k M_ijk M_ijl m13_l m12_n m32_n m21_p m31_p", "I_AB"),
        parse_recipe("m23_k M_ijk M_ijl M_npl m31_n m12_p m31_q m21_q m32_r m12_r m23_s m13_s", "I_ABC1"),
        parse_recipe("m13_k M_ijk M_ijl M_npl m21_n m32_p m31_q m21_q m32_r m12_r m23_s m13_s", "I_ABC2"),
        parse_recipe("m21_i M_ijk M_ljk m31_l", "I_A1"),
        parse_recipe("m21_i M_ijk M_ljk M_lnp M_qnp m31_q m21_r m31_r", "I_A2"),
        parse_recipe("M_ijk M_ljk M_lnp M_inp m21_q m31_q m21_r m31_r", "I_A2_alt", Fraction(1, 2)),
        parse_recipe("m21_r m31_r", "I_AL"),
    )
}

GENERATOR_RECIPES = ("I1", "I2", "I_BC", "I_AC", "I_AB", "I_ABC1", "I_ABC2")


def get_recipe(name: str) -> TransvectionRecipe:
    try:
        return NAMED_RECIPES[name]
    except KeyError:
        raise DomainError(f"Unknown recipe {name!r}, expected one of {sorted(NAMED_RECIPES)}")


def evaluate_recipe(recipe: TransvectionRecipe, forms: Optional[FormCollection] = None) -> SparsePolynomial:
    """Expand a recipe into a polynomial in amplitude symbols.

    Factor p gets copy tag p + 1 for its auxiliary variables; each index is
    contracted as soon as its second factor has been multiplied in.
    """
    forms = forms or build_forms()
    pairs = recipe.contractions()
    product = SparsePolynomial.constant(recipe.coefficient)
    for position, factor in enumerate(recipe.factors):
        poly = forms.get(factor.form)
        for family in factor.families:
            poly = poly.recopy(family, position + 1, source=0)
        product = product * poly
        for pair in pairs:
            if pair.second == position:
                product = omega_operator(product, pair.family, pair.first + 1, pair.second + 1)
        if product.is_zero():
            break
    if product.has_auxiliary():
        raise DomainError(f"Recipe {recipe.name or recipe} left auxiliary variables uncontracted")
    logger.debug(f"Expanded recipe {recipe.name or recipe}: {len(product)} monomials")
    return product


def form_tensors(state: StateVector) -> Dict[str, np.ndarray]:
    """Coefficient arrays of every form at a (3, 3) state, index 0 = up, 1 = down"""
    sector = state.sector
    if (sector.n_modes, sector.n_particles) != (3, 3):
        raise DomainError(f"Forms are defined on sector (3, 3), got {sector.describe()}")
    tensors = {"M": np.zeros((2, 2, 2), dtype=complex)}
    for i, a in enumerate(SPIN_CHARS):
        for j, b in enumerate(SPIN_CHARS):
            for k, c in enumerate(SPIN_CHARS):
                tensors["M"][i, j, k] = state.amplitude(a + b + c)
    for name, template in LINEAR_TEMPLATES.items():
        tensors[name] = np.array([state.amplitude(template.format(char)) for char in SPIN_CHARS])
    return tensors


def evaluate_recipe_numeric(recipe: TransvectionRecipe, state: StateVector) -> complex:
    """Same contraction as evaluate_recipe, done with einsum on the form arrays"""
    tensors = form_tensors(state)
    pairs = recipe.contractions()
    slots = {}
    for n, pair in enumerate(pairs):
        slots[(pair.index, pair.first)] = 2 * n
        slots[(pair.index, pair.second)] = 2 * n + 1

    operands = []
    for position, factor in enumerate(recipe.factors):
        operands.extend([tensors[factor.form], [slots[(index, position)] for index in factor.indices]])
    for n, _ in enumerate(pairs):
        operands.extend([EPSILON, [2 * n, 2 * n + 1]])
    value = np.einsum(*operands, [], optimize="greedy")
    return complex(recipe.coefficient) * complex(value)


def _renamed(recipe: TransvectionRecipe, suffix: str) -> Tuple[RecipeFactor, ...]:
    return tuple(RecipeFactor(f.form, tuple(i + suffix for i in f.indices)) for f in recipe.factors)


def cross_link(left: TransvectionRecipe, right: TransvectionRecipe, left_index: str, right_index: str) -> TransvectionRecipe:
    """Join two recipes by exchanging the partners of one same-family index from each"""
    factors = list(_renamed(left, "1") + _renamed(right, "2"))
    a, b = left_index + "1", right_index + "2"
    offset = len(left.factors)
    left_pair = next((p for p in left.contractions() if p.index == left_index), None)
    right_pair = next((p for p in right.contractions() if p.index == right_index), None)
    if left_pair is None or right_pair is None:
        raise DomainError(f"Unknown indices {left_index!r}/{right_index!r} for cross-linking")
    if left_pair.family != right_pair.family:
        raise DomainError(f"Cannot cross-link families {left_pair.family} and {right_pair.family}")

    # left first occurrence keeps a, right second occurrence takes a; the other two share b
    second = factors[offset + right_pair.second]
    factors[offset + right_pair.second] = RecipeFactor(second.form, tuple(a if i == b else i for i in second.indices))
    moved = factors[left_pair.second]
    factors[left_pair.second] = RecipeFactor(moved.form, tuple(b if i == a else i for i in moved.indices))
    coefficient = left.coefficient * right.coefficient
    name = f"{left.name}x{right.name}[{left_index},{right_index}]"
    return TransvectionRecipe(tuple(factors), coefficient, name)

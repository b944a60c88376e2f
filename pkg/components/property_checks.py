#!/usr/bin/env python3
"""
Property Check System
Randomized invariance, cross-validation and construction checks run by
the `check` command
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from core.config import get_config
from core.errors import SloccLabError
from core.fock import ModeOccupation, enumerate_sector, random_state, random_state_on
from core.slocc import apply, random_element, random_restricted_element, scaling_element
from components.invariants.logic import (
    attractive_invariants, generator_values, i0, localized_invariant, repulsive_invariant, three_tangle,
)
from components.maxent.logic import (
    EXAMPLE_KINDS, CyclicSpec, cyclic_max_state, example_state, is_maximally_entangled, odd_attractive_state,
    two_fermion_max,
)
from components.omega.forms import build_forms, transvect
from components.omega.logic import (
    cross_validation_table, degree8_set, degree12_set, degree16_probe, rank_of_set, sample_states,
)
from components.omega.recipes import GENERATOR_RECIPES, NAMED_RECIPES, evaluate_recipe_numeric

logger = logging.getLogger(__name__)

SUITES = ("slocc", "omega", "maxent", "all")

PAIRED = (ModeOccupation.EMPTY, ModeOccupation.DOUBLE)
SINGLE = (ModeOccupation.UP, ModeOccupation.DOWN)


@dataclass
class CheckResult:
    """Outcome of one property"""
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite}.{self.name}" + (f" ({self.detail})" if self.detail else "")


def _close(a: complex, b: complex, tol: float) -> bool:
    return abs(a - b) <= tol * max(abs(a), abs(b), 1e-14)


class PropertyCheckSystem:
    """Runs the property suites with a fixed sample count and seed"""

    def __init__(self, samples: Optional[int] = None, seed: Optional[int] = None):
        settings = get_config()
        self.samples = settings.CHECK_SAMPLES if samples is None else samples
        self.seed = settings.DEFAULT_SEED if seed is None else seed
        self.tolerance = settings.INVARIANCE_TOLERANCE
        self.suites: Dict[str, List[Tuple[str, Callable[[], Tuple[bool, str]]]]] = {
            "slocc": [
                ("generators_invariant", self.check_generators_invariant),
                ("tangle_invariant", self.check_tangle_invariant),
                ("two_mode_invariant", self.check_two_mode_invariant),
                ("repulsive_invariant", self.check_repulsive_invariant),
                ("attractive_invariant", self.check_attractive_invariant),
                ("localized_invariant", self.check_localized_invariant),
                ("scaling_invariant", self.check_scaling_invariant),
            ],
            "omega": [
                ("transvect_antisymmetric", self.check_transvect_antisymmetric),
                ("recipes_proportional", self.check_recipes_proportional),
                ("recipes_invariant", self.check_recipes_invariant),
                ("generator_rank", self.check_generator_rank),
                ("degree16_probe", self.check_degree16_probe),
            ],
            "maxent": [
                ("examples_maximal", self.check_examples_maximal),
                ("examples_single_invariant", self.check_examples_single_invariant),
                ("cyclic_maximal", self.check_cyclic_maximal),
                ("odd_attractive_not_maximal", self.check_odd_attractive),
            ],
        }

    def run(self, suite: str = "all") -> List[CheckResult]:
        """Run one suite (or all of them) and collect results"""
        if suite not in SUITES:
            raise SloccLabError(f"Unknown suite {suite!r}, expected one of {SUITES}")
        names = [s for s in self.suites] if suite == "all" else [suite]
        results = []
        for name in names:
            for check_name, check in self.suites[name]:
                try:
                    passed, detail = check()
                except SloccLabError as e:
                    logger.error(f"Error in check {name}.{check_name}: {str(e)}")
                    passed, detail = False, str(e)
                if not passed:
                    logger.error(f"Check {name}.{check_name} failed: {detail}")
                results.append(CheckResult(name, check_name, passed, detail))
        return results

    def _rng(self, offset: int = 0) -> np.random.Generator:
        return np.random.default_rng(self.seed + offset)

    def _invariance(self, sector, labels, restriction, modes, evaluators) -> Tuple[bool, str]:
        rng = self._rng()
        worst = 0.0
        for sample in range(self.samples):
            state = random_state(sector, rng) if labels is None else random_state_on(labels, rng)
            element = random_restricted_element(sector.n_modes, seed=self.seed + sample,
                                                restriction=restriction, modes=modes)
            moved = apply(element, state)
            for evaluate in evaluators:
                before, after = evaluate(state).value, evaluate(moved).value
                if not _close(before, after, self.tolerance):
                    return False, f"sample {sample}: {before:.6g} -> {after:.6g}"
                worst = max(worst, abs(before - after))
        return True, f"{self.samples} samples, max deviation {worst:.2e}"

    # slocc

    def check_generators_invariant(self) -> Tuple[bool, str]:
        evaluators = [lambda s, n=name: generator_values(s)[n] for name in GENERATOR_RECIPES]
        return self._invariance(enumerate_sector(3, 3), None, "full", None, evaluators)

    def check_tangle_invariant(self) -> Tuple[bool, str]:
        # lambda_8 and lambda_15 rescale tau by exp(4 (c8 + c15)) per mode
        return self._invariance(enumerate_sector(3, 3), None, "spin", None, [three_tangle])

    def check_two_mode_invariant(self) -> Tuple[bool, str]:
        return self._invariance(enumerate_sector(2, 2), None, "full", None, [i0])

    def check_repulsive_invariant(self) -> Tuple[bool, str]:
        labels = [l for l in enumerate_sector(3, 2).basis if ModeOccupation.DOUBLE not in l.occupations]
        evaluators = [lambda s: repulsive_invariant(s, 1), lambda s: repulsive_invariant(s, 2)]
        return self._invariance(enumerate_sector(3, 2), labels, "repulsive", None, evaluators)

    def check_attractive_invariant(self) -> Tuple[bool, str]:
        labels = [l for l in enumerate_sector(4, 4).basis if all(o in PAIRED for o in l.occupations)]
        evaluators = [lambda s, k=kind: attractive_invariants(s, k) for kind in ("AB|CD", "AD|BC", "AC|BD")]
        return self._invariance(enumerate_sector(4, 4), labels, "attractive", None, evaluators)

    def check_localized_invariant(self) -> Tuple[bool, str]:
        sector = enumerate_sector(3, 3)
        labels = [l for l in sector.basis if l[0] in SINGLE]
        passed, detail = self._invariance(sector, labels, "balanced", (0,),
                                          [lambda s: localized_invariant(s, "A1"),
                                           lambda s: localized_invariant(s, "A2")])
        if not passed:
            return passed, detail
        paired = [l for l in labels if l[1] in PAIRED and l[2] in PAIRED]
        return self._invariance(sector, paired, "balanced", (0, 1, 2), [lambda s: localized_invariant(s, "AL")])

    def check_scaling_invariant(self) -> Tuple[bool, str]:
        rng = self._rng(1)
        sector = enumerate_sector(3, 3)
        for sample in range(self.samples):
            state = random_state(sector, rng)
            element = scaling_element(3, float(rng.uniform(0.5, 2.0)), float(rng.uniform(0, 2 * np.pi)))
            before, after = generator_values(state), generator_values(apply(element, state))
            for name in before:
                if not _close(before[name].value, after[name].value, self.tolerance):
                    return False, f"{name} changed under scaling on sample {sample}"
        return True, f"{self.samples} samples"

    # omega

    def check_transvect_antisymmetric(self) -> Tuple[bool, str]:
        forms = build_forms()
        pairs = [("M", "m31", "x"), ("m21", "m31", "x"), ("M", "m12", "y"), ("m13", "M", "z")]
        for left, right, family in pairs:
            a, b = forms.get(left), forms.get(right)
            if transvect(a, b, family) != -transvect(b, a, family):
                return False, f"({left}, {right}) in family {family}"
        return True, f"{len(pairs)} pairs"

    def check_recipes_proportional(self) -> Tuple[bool, str]:
        rows = cross_validation_table(max(self.samples, 3), self.seed)
        for row in rows:
            if not row.admissible:
                return False, f"{row.name} has an unbalanced monomial"
            if row.name in GENERATOR_RECIPES and row.degree % 4:
                return False, f"{row.name} has degree {row.degree}"
        return True, ", ".join(f"{row.name}:{row.constant.real:+.6g}" for row in rows)

    def check_recipes_invariant(self) -> Tuple[bool, str]:
        states = sample_states(self.samples, self.seed)
        for sample, state in enumerate(states):
            moved = apply(random_element(3, seed=self.seed + sample), state)
            for name in GENERATOR_RECIPES:
                recipe = NAMED_RECIPES[name]
                before, after = evaluate_recipe_numeric(recipe, state), evaluate_recipe_numeric(recipe, moved)
                if not _close(before, after, self.tolerance):
                    return False, f"{name} changed on sample {sample}"
        return True, f"{self.samples} samples"

    def check_generator_rank(self) -> Tuple[bool, str]:
        rank12 = rank_of_set(degree12_set(), seed=self.seed)
        rank8 = rank_of_set(degree8_set(), seed=self.seed)
        return rank12 == 12 and rank8 == 6, f"degree 12 rank {rank12}/12, degree 8 rank {rank8}/6"

    def check_degree16_probe(self) -> Tuple[bool, str]:
        report = degree16_probe(seed=self.seed)
        return report.passed, f"{report.n_probes} probes, rank {report.product_rank} -> {report.combined_rank}"

    # maxent

    def check_examples_maximal(self) -> Tuple[bool, str]:
        states = {kind: example_state(kind) for kind in EXAMPLE_KINDS}
        states["two_fermion"] = two_fermion_max()
        failing = [kind for kind, state in states.items() if not is_maximally_entangled(state)]
        return not failing, f"not maximal: {failing}" if failing else f"{len(states)} states"

    def check_examples_single_invariant(self) -> Tuple[bool, str]:
        expected = {
            "I2_only": "I2", "I1_only": "I1", "IAB_only": "I_AB", "IAC_only": "I_AC",
            "IBC_only": "I_BC", "IABC1_only": "I_ABC1", "IABC2_only": "I_ABC2",
        }
        for kind, nonzero in expected.items():
            values = generator_values(example_state(kind))
            if abs(values[nonzero].value) <= 1e-12:
                return False, f"{kind}: {nonzero} vanishes"
            others = [name for name, v in values.items() if name != nonzero and abs(v.value) > 1e-12]
            if others:
                return False, f"{kind}: also nonzero {others}"
        return True, f"{len(expected)} states"

    def check_cyclic_maximal(self) -> Tuple[bool, str]:
        state = cyclic_max_state(CyclicSpec(1, 1))
        return is_maximally_entangled(state), f"{len(state.support())} terms"

    def check_odd_attractive(self) -> Tuple[bool, str]:
        return not is_maximally_entangled(odd_attractive_state()), "six-term state"

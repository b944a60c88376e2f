#!/usr/bin/env python3
"""
SLOCC Invariants Logic Module
Literal signed monomial sums for every invariant family, plus the
entanglement measures built from them
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List

from core.config import get_config
from core.errors import DomainError
from core.fock import BasisLabel, ModeOccupation, StateVector, permute_modes
from core.tuning import load_tuning

logger = logging.getLogger(__name__)

SINGLE = (ModeOccupation.UP, ModeOccupation.DOWN)
PAIRED = (ModeOccupation.EMPTY, ModeOccupation.DOUBLE)

# Seven generators of the unconstrained three-mode, three-fermion case, with degrees
GENERATOR_DEGREES = {
    "I1": 4,
    "I2": 4,
    "I_BC": 8,
    "I_AC": 8,
    "I_AB": 8,
    "I_ABC1": 12,
    "I_ABC2": 12,
}


@dataclass(frozen=True)
class InvariantValue:
    """Value of a homogeneous invariant together with its degree"""
    value: complex
    degree: int
    name: str = ""

    @property
    def monotone(self) -> float:
        return monotone(self)


def monotone(inv: InvariantValue) -> float:
    """|I|^(2/k) for an invariant of degree k"""
    if inv.degree < 1:
        raise DomainError(f"Invariant degree must be at least 1, got {inv.degree}")
    return float(abs(inv.value) ** (2.0 / inv.degree))


def _support_tolerance() -> float:
    return load_tuning("invariants").get("support", {}).get("tolerance", get_config().SUPPORT_TOLERANCE)


def _require_sector(state: StateVector, n_modes: int, n_particles: int, name: str):
    sector = state.sector
    if (sector.n_modes, sector.n_particles) != (n_modes, n_particles):
        raise DomainError(f"{name} is defined on sector ({n_modes}, {n_particles}), got {sector.describe()}")


def _require_support(state: StateVector, allowed: Callable[[BasisLabel], bool], name: str, what: str):
    tol = _support_tolerance()
    for label, amp in state.items():
        if abs(amp) > tol and not allowed(label):
            raise DomainError(f"{name} requires {what}; label {label} has amplitude {amp:.3g}")


def _amplitudes(state: StateVector) -> Dict[str, complex]:
    return {str(label): complex(amp) for label, amp in state.items()}


def i0(state: StateVector) -> InvariantValue:
    """Degree-4 generator of two modes sharing two fermions"""
    _require_sector(state, 2, 2, "I0")
    m = _amplitudes(state)
    value = (m["uu"] * m["dd"] - m["ud"] * m["du"]) * m["0D"] * m["D0"]
    return InvariantValue(value, 4, "I0")


def fermionic_concurrence(state: StateVector) -> float:
    _require_sector(state, 2, 2, "Fermionic concurrence")
    m = _amplitudes(state)
    return float(abs(m["0D"] * m["D0"] - m["uu"] * m["dd"] + m["ud"] * m["du"]))


def i_deg4(state: StateVector, variant: int) -> InvariantValue:
    _require_sector(state, 3, 3, f"I{variant}")
    m = _amplitudes(state)
    if variant == 1:
        value = (
            m["u0D"] * m["0Du"] * (m["Du0"] * m["ddd"] - m["Dd0"] * m["dud"])
            + m["u0D"] * m["0Dd"] * (m["Dd0"] * m["duu"] - m["Du0"] * m["ddu"])
            + m["d0D"] * m["0Du"] * (m["Dd0"] * m["uud"] - m["Du0"] * m["udd"])
            + m["d0D"] * m["0Dd"] * (m["Du0"] * m["udu"] - m["Dd0"] * m["uuu"])
        )
    elif variant == 2:
        value = (
            m["uD0"] * m["D0u"] * (m["0uD"] * m["ddd"] - m["0dD"] * m["dud"])
            + m["uD0"] * m["D0d"] * (m["0dD"] * m["duu"] - m["0uD"] * m["ddu"])
            + m["dD0"] * m["D0u"] * (m["0dD"] * m["uud"] - m["0uD"] * m["udd"])
            + m["dD0"] * m["D0d"] * (m["0uD"] * m["udu"] - m["0dD"] * m["uuu"])
        )
    else:
        raise DomainError(f"Degree-4 variant must be 1 or 2, got {variant}")
    return InvariantValue(value, 4, f"I{variant}")


def _prefactors(m: Dict[str, complex]):
    p1 = m["0Du"] * m["D0d"] - m["0Dd"] * m["D0u"]
    p2 = m["0uD"] * m["Dd0"] - m["0dD"] * m["Du0"]
    p3 = m["u0D"] * m["dD0"] - m["d0D"] * m["uD0"]
    return p1, p2, p3


def _bc_bracket(m: Dict[str, complex]) -> complex:
    return (
        2 * m["u0D"] * m["uD0"] * (m["ddu"] * m["dud"] - m["ddd"] * m["duu"])
        + 2 * m["d0D"] * m["dD0"] * (m["udu"] * m["uud"] - m["udd"] * m["uuu"])
        + (m["u0D"] * m["dD0"] + m["d0D"] * m["uD0"])
        * (m["ddd"] * m["uuu"] - m["dud"] * m["udu"] - m["ddu"] * m["uud"] + m["duu"] * m["udd"])
    )


def i_pair(state: StateVector, pair: str) -> InvariantValue:
    _require_sector(state, 3, 3, f"I_{pair}")
    m = _amplitudes(state)
    p1, p2, p3 = _prefactors(m)
    if pair == "BC":
        value = p1 * p2 * _bc_bracket(m)
    elif pair == "AC":
        value = p1 * p3 * (
            2 * m["0uD"] * m["Du0"] * (m["ddu"] * m["udd"] - m["ddd"] * m["udu"])
            + 2 * m["0dD"] * m["Dd0"] * (m["duu"] * m["uud"] - m["dud"] * m["uuu"])
            + (m["0uD"] * m["Dd0"] + m["0dD"] * m["Du0"])
            * (m["ddd"] * m["uuu"] - m["duu"] * m["udd"] + m["dud"] * m["udu"] - m["ddu"] * m["uud"])
        )
    elif pair == "AB":
        value = p2 * p3 * (
            2 * m["0Du"] * m["D0u"] * (m["dud"] * m["udd"] - m["ddd"] * m["uud"])
            + 2 * m["0Dd"] * m["D0d"] * (m["duu"] * m["udu"] - m["ddu"] * m["uuu"])
            + (m["0Du"] * m["D0d"] + m["0Dd"] * m["D0u"])
            * (m["ddd"] * m["uuu"] - m["duu"] * m["udd"] - m["dud"] * m["udu"] + m["ddu"] * m["uud"])
        )
    else:
        raise DomainError(f"Pair must be one of BC, AC, AB, got {pair!r}")
    return InvariantValue(value, 8, f"I_{pair}")


def _abc_bracket(m: Dict[str, complex], a_up: str, a_down: str, b_up: str, b_down: str,
                 c_down: str, c_up: str) -> complex:
    """Bracket shared by both degree-12 invariants.

    a_* carry the spin on mode A, b_* on mode C and c_* on mode B.
    """
    au, ad, bu, bd, cd, cu = (m[k] for k in (a_up, a_down, b_up, b_down, c_down, c_up))
    plus = m["ddu"] * m["uud"] + m["ddd"] * m["uuu"] - m["duu"] * m["udd"] - m["dud"] * m["udu"]
    return (
        2 * au * bu * (cd * m["duu"] - cu * m["ddu"]) * (m["dud"] * m["udd"] - m["ddd"] * m["uud"])
        + 2 * au * bd * (cd * m["dud"] - cu * m["ddd"]) * (m["duu"] * m["udu"] - m["ddu"] * m["uuu"])
        + 2 * ad * bu * (cd * m["uuu"] - cu * m["udu"]) * (m["ddd"] * m["uud"] - m["dud"] * m["udd"])
        + 2 * ad * bd * (cd * m["uud"] - cu * m["udd"]) * (m["ddu"] * m["uuu"] - m["duu"] * m["udu"])
        + au * bd * (cd * m["duu"] - cu * m["ddu"]) * plus
        + au * bu * (cd * m["dud"] - cu * m["ddd"]) * plus
        - ad * bd * (cd * m["uuu"] - cu * m["udu"]) * plus
        - ad * bu * (cd * m["uud"] - cu * m["udd"]) * plus
    )


def i_abc(state: StateVector, variant: int) -> InvariantValue:
    _require_sector(state, 3, 3, f"I_ABC{variant}")
    m = _amplitudes(state)
    p1, p2, p3 = _prefactors(m)
    if variant == 1:
        bracket = _abc_bracket(m, "u0D", "d0D", "0Du", "0Dd", "Dd0", "Du0")
    elif variant == 2:
        bracket = _abc_bracket(m, "uD0", "dD0", "D0u", "D0d", "0dD", "0uD")
    else:
        raise DomainError(f"Degree-12 variant must be 1 or 2, got {variant}")
    return InvariantValue(p1 * p2 * p3 * bracket, 12, f"I_ABC{variant}")


def hyperdeterminant(m: Dict[str, complex]) -> complex:
    """Degree-4 hyperdeterminant of the eight singly-occupied amplitudes"""
    ddd, ddu, dud, duu = m["ddd"], m["ddu"], m["dud"], m["duu"]
    udd, udu, uud, uuu = m["udd"], m["udu"], m["uud"], m["uuu"]
    return (
        ddd ** 2 * uuu ** 2 + udd ** 2 * duu ** 2 + dud ** 2 * udu ** 2 + ddu ** 2 * uud ** 2
        - 2 * ddd * ddu * uud * uuu
        - 2 * ddd * dud * udu * uuu
        - 2 * ddd * duu * udd * uuu
        - 2 * ddu * dud * udu * uud
        - 2 * ddu * uud * duu * udd
        - 2 * dud * duu * udu * udd
        + 4 * ddd * duu * udu * uud
        + 4 * uuu * udd * dud * ddu
    )


def three_tangle(state: StateVector) -> InvariantValue:
    _require_sector(state, 3, 3, "Three-tangle")
    return InvariantValue(hyperdeterminant(_amplitudes(state)), 4, "tau")


def repulsive_invariant(state: StateVector, which: int) -> InvariantValue:
    """Hardcore (no double occupancy) generators on three modes sharing two fermions"""
    _require_sector(state, 3, 2, f"Repulsive I{which}")
    _require_support(state, lambda label: ModeOccupation.DOUBLE not in label.occupations,
                     f"Repulsive I{which}", "no doubly occupied mode")
    m = _amplitudes(state)
    if which == 1:
        value = (
            (m["uu0"] * m["dd0"] - m["ud0"] * m["du0"])
            * (m["0uu"] * m["0dd"] - m["0ud"] * m["0du"])
            * (m["u0u"] * m["d0d"] - m["u0d"] * m["d0u"])
        )
        return InvariantValue(value, 6, "R1")
    if which == 2:
        value = (
            m["uu0"] * (m["0dd"] * m["d0u"] - m["0du"] * m["d0d"])
            + m["ud0"] * (m["0uu"] * m["d0d"] - m["0ud"] * m["d0u"])
            + m["du0"] * (m["0du"] * m["u0d"] - m["0dd"] * m["u0u"])
            + m["dd0"] * (m["0ud"] * m["u0u"] - m["0uu"] * m["u0d"])
        )
        return InvariantValue(value, 3, "R2")
    raise DomainError(f"Repulsive invariant must be 1 or 2, got {which}")


ATTRACTIVE_KINDS = ("pair", "AB|CD", "AD|BC", "AC|BD")


def attractive_invariants(state: StateVector, which: str) -> InvariantValue:
    """Invariants when every mode is empty or doubly occupied"""
    if which not in ATTRACTIVE_KINDS:
        raise DomainError(f"Attractive invariant must be one of {ATTRACTIVE_KINDS}, got {which!r}")
    if which == "pair":
        _require_sector(state, 2, 2, "Pair monomial")
    else:
        _require_sector(state, 4, 4, f"I_{which}")
    _require_support(state, lambda label: all(occ in PAIRED for occ in label.occupations),
                     f"Attractive {which}", "every mode empty or doubly occupied")
    m = _amplitudes(state)
    if which == "pair":
        return InvariantValue(m["0D"] * m["D0"], 2, "pair")
    ab_cd = m["0DD0"] * m["D00D"]
    ac_bd = m["0D0D"] * m["D0D0"]
    ad_bc = m["00DD"] * m["DD00"]
    values = {
        "AB|CD": ab_cd - ac_bd,
        "AD|BC": ad_bc - ac_bd,
        "AC|BD": ab_cd - ad_bc,
    }
    return InvariantValue(values[which], 2, f"I_{which}")


LOCALIZED_KINDS = ("A1", "A2", "AL")
_MODE_INDEX = {"A": 0, "B": 1, "C": 2}


def localized_invariant(state: StateVector, which: str, mode: str = "A") -> InvariantValue:
    """Invariants with one fermion localized on `mode`; B and C reuse the A formulas after relabeling"""
    if which not in LOCALIZED_KINDS:
        raise DomainError(f"Localized invariant must be one of {LOCALIZED_KINDS}, got {which!r}")
    if mode not in _MODE_INDEX:
        raise DomainError(f"Localized mode must be A, B or C, got {mode!r}")
    _require_sector(state, 3, 3, f"I_{which}")
    site = _MODE_INDEX[mode]
    if site != 0:
        order = [site] + [k for k in range(3) if k != site]
        state = permute_modes(state, order)

    name = f"I_{which}" if mode == "A" else f"I_{which}[{mode}]"
    _require_support(state, lambda label: label[0] in SINGLE, name, f"a single fermion on mode {mode}")
    m = _amplitudes(state)
    p3 = m["u0D"] * m["dD0"] - m["d0D"] * m["uD0"]
    if which == "A1":
        return InvariantValue(_bc_bracket(m), 4, name)
    if which == "A2":
        return InvariantValue(p3 ** 2 * hyperdeterminant(m), 8, name)
    _require_support(state, lambda label: label[1] in PAIRED and label[2] in PAIRED, name,
                     "the other two modes empty or doubly occupied")
    return InvariantValue(p3, 2, name)


def generator_values(state: StateVector) -> Dict[str, InvariantValue]:
    """All seven generators of the three-mode, three-fermion case"""
    return {
        "I1": i_deg4(state, 1),
        "I2": i_deg4(state, 2),
        "I_BC": i_pair(state, "BC"),
        "I_AC": i_pair(state, "AC"),
        "I_AB": i_pair(state, "AB"),
        "I_ABC1": i_abc(state, 1),
        "I_ABC2": i_abc(state, 2),
    }


def i12_measure(state: StateVector) -> float:
    """4 |I1 - I2|^(1/2)"""
    scale = load_tuning("invariants").get("measures", {}).get("i12_normalization", 4.0)
    return float(scale * abs(i_deg4(state, 1).value - i_deg4(state, 2).value) ** 0.5)


def tau_measure(state: StateVector) -> float:
    """2 |tau|^(1/2)"""
    scale = load_tuning("invariants").get("measures", {}).get("tau_normalization", 2.0)
    return float(scale * abs(three_tangle(state).value) ** 0.5)


def symmetric_measures(state: StateVector) -> Dict[str, float]:
    """Mode-permutation invariant measures |I1+I2|^(1/2) and |I_AB+I_AC+I_BC|^(1/4)"""
    values = generator_values(state)
    deg4 = values["I1"].value + values["I2"].value
    deg8 = values["I_AB"].value + values["I_AC"].value + values["I_BC"].value
    return {
        "deg4": float(abs(deg4) ** 0.5),
        "deg8": float(abs(deg8) ** 0.25),
    }


FAMILIES = ("auto", "two", "full3", "repulsive", "attractive", "localizedA")


def _only(state: StateVector, allowed) -> bool:
    tol = _support_tolerance()
    return all(allowed(label) for label, amp in state.items() if abs(amp) > tol)


def detect_family(state: StateVector) -> str:
    """Pick the invariant family from the sector and support of a state"""
    n_modes, n_particles = state.sector.n_modes, state.sector.n_particles
    if (n_modes, n_particles) == (2, 2):
        return "two"
    if (n_modes, n_particles) == (3, 2) and _only(state, lambda label: ModeOccupation.DOUBLE not in label.occupations):
        return "repulsive"
    if (n_modes, n_particles) == (4, 4) and _only(state, lambda label: all(o in PAIRED for o in label.occupations)):
        return "attractive"
    if (n_modes, n_particles) == (3, 3):
        if _only(state, lambda label: label[0] in SINGLE):
            return "localizedA"
        return "full3"
    raise DomainError(f"No invariant family is defined for sector {state.sector.describe()}")


def evaluate_family(state: StateVector, family: str = "auto") -> List[InvariantValue]:
    """Every applicable invariant of a family, in a fixed order"""
    if family not in FAMILIES:
        raise DomainError(f"Unknown invariant set {family!r}, expected one of {FAMILIES}")
    if family == "auto":
        family = detect_family(state)
    logger.debug(f"Evaluating invariant set {family} on sector {state.sector.describe()}")

    if family == "two":
        results = [i0(state)]
        if _only(state, lambda label: all(o in PAIRED for o in label.occupations)):
            results.append(attractive_invariants(state, "pair"))
        return results
    if family == "full3":
        return list(generator_values(state).values()) + [three_tangle(state)]
    if family == "repulsive":
        return [repulsive_invariant(state, 1), repulsive_invariant(state, 2)]
    if family == "attractive":
        return [attractive_invariants(state, kind) for kind in ATTRACTIVE_KINDS[1:]]
    results = [localized_invariant(state, "A1"), localized_invariant(state, "A2")]
    if _only(state, lambda label: label[1] in PAIRED and label[2] in PAIRED):
        results.append(localized_invariant(state, "AL"))
    return results

#!/usr/bin/env python3
"""
Multilinear Forms Module
Arranges the (3 modes, 3 fermions) amplitudes into one trilinear and six
linear forms and contracts them with the Cayley Omega operator
"""

import logging
from dataclasses import dataclass, fields
from typing import Dict, Tuple

from core.errors import DomainError
from components.omega.polynomial import FORM_FAMILIES, SparsePolynomial, Symbol

logger = logging.getLogger(__name__)

SPIN_CHARS = ("u", "d")

# Auxiliary family of every form; M carries one variable of each family
FORM_FAMILY_OF: Dict[str, Tuple[str, ...]] = {
    "M": ("x", "y", "z"),
    "m21": ("x",),
    "m31": ("x",),
    "m12": ("y",),
    "m32": ("y",),
    "m13": ("z",),
    "m23": ("z",),
}

# Label template of each linear form; "{}" is the running spin
LINEAR_TEMPLATES = {
    "m21": "{}D0",
    "m31": "{}0D",
    "m12": "D{}0",
    "m32": "0{}D",
    "m13": "D0{}",
    "m23": "0D{}",
}


@dataclass(frozen=True)
class FormCollection:
    """The trilinear form M and the six linear forms m_ab"""
    M: SparsePolynomial
    m12: SparsePolynomial
    m13: SparsePolynomial
    m21: SparsePolynomial
    m23: SparsePolynomial
    m31: SparsePolynomial
    m32: SparsePolynomial

    def get(self, name: str) -> SparsePolynomial:
        if name not in FORM_FAMILY_OF:
            raise DomainError(f"Unknown form {name!r}, expected one of {sorted(FORM_FAMILY_OF)}")
        return getattr(self, name)

    def names(self) -> Tuple[str, ...]:
        return tuple(f.name for f in fields(self))

    def amplitude_symbols(self) -> set:
        symbols = set()
        for name in self.names():
            symbols |= {s for s in self.get(name).symbols() if s.is_amplitude}
        return symbols


def _aux(family: str, spin: int, copy: int = 0) -> SparsePolynomial:
    return SparsePolynomial.variable(Symbol.auxiliary(family, spin, copy))


def _amp(label: str) -> SparsePolynomial:
    return SparsePolynomial.variable(Symbol.amplitude(label))


def build_forms() -> FormCollection:
    """Forms with formal amplitude symbols and auxiliary variables at copy tag 0"""
    trilinear = SparsePolynomial.zero()
    for i, a in enumerate(SPIN_CHARS):
        for j, b in enumerate(SPIN_CHARS):
            for k, c in enumerate(SPIN_CHARS):
                trilinear = trilinear + _amp(a + b + c) * _aux("x", i) * _aux("y", j) * _aux("z", k)

    linear = {}
    for name, template in LINEAR_TEMPLATES.items():
        family = FORM_FAMILY_OF[name][0]
        linear[name] = sum(
            (_amp(template.format(char)) * _aux(family, spin) for spin, char in enumerate(SPIN_CHARS)),
            SparsePolynomial.zero(),
        )
    return FormCollection(M=trilinear, **linear)


def omega_operator(poly: SparsePolynomial, family: str, first: int, second: int) -> SparsePolynomial:
    """d^2/dw'_up dw''_down - d^2/dw''_up dw'_down between two copies of one family"""
    if family not in FORM_FAMILIES:
        raise DomainError(f"Family must be one of {FORM_FAMILIES}, got {family!r}")
    up_a, down_a = Symbol.auxiliary(family, 0, first), Symbol.auxiliary(family, 1, first)
    up_b, down_b = Symbol.auxiliary(family, 0, second), Symbol.auxiliary(family, 1, second)
    return poly.diff(up_a).diff(down_b) - poly.diff(up_b).diff(down_a)


def _family_present(poly: SparsePolynomial, family: str) -> bool:
    return any(not s.is_amplitude and s.name == family for s in poly.symbols())


def transvect(a: SparsePolynomial, b: SparsePolynomial, family: str) -> SparsePolynomial:
    """Omega-contract a and b in one family, then return remaining primed variables to copy 0"""
    if family not in FORM_FAMILIES:
        raise DomainError(f"Family must be one of {FORM_FAMILIES}, got {family!r}")
    if not _family_present(a, family) and not _family_present(b, family):
        logger.debug(f"Neither form carries family {family}; transvectant is zero")
        return SparsePolynomial.zero()

    copies = [s.copy for p in (a, b) for s in p.symbols() if not s.is_amplitude]
    first = max(copies, default=0) + 1
    second = first + 1
    product = a.recopy(family, first, source=0) * b.recopy(family, second, source=0)
    result = omega_operator(product, family, first, second)
    return result.recopy(family, 0, source=first).recopy(family, 0, source=second)

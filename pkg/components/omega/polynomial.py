#!/usr/bin/env python3
"""
Sparse Polynomial Module
Polynomials over amplitude symbols and auxiliary form variables,
stored as sorted (symbol, exponent) tuples mapped to coefficients
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

from core.errors import DomainError

logger = logging.getLogger(__name__)

AMPLITUDE = "amplitude"
AUXILIARY = "auxiliary"
FORM_FAMILIES = ("x", "y", "z")


@dataclass(frozen=True, order=True)
class Symbol:
    """Amplitude m_label, or auxiliary variable family_spin with a copy tag"""
    kind: str
    name: str
    spin: int = -1
    copy: int = 0

    @classmethod
    def amplitude(cls, label: str) -> "Symbol":
        return cls(AMPLITUDE, str(label))

    @classmethod
    def auxiliary(cls, family: str, spin: int, copy: int = 0) -> "Symbol":
        if family not in FORM_FAMILIES:
            raise DomainError(f"Auxiliary family must be one of {FORM_FAMILIES}, got {family!r}")
        if spin not in (0, 1):
            raise DomainError(f"Auxiliary spin must be 0 (up) or 1 (down), got {spin}")
        return cls(AUXILIARY, family, spin, copy)

    @property
    def is_amplitude(self) -> bool:
        return self.kind == AMPLITUDE

    def with_copy(self, copy: int) -> "Symbol":
        return Symbol(self.kind, self.name, self.spin, copy)

    def __str__(self) -> str:
        if self.is_amplitude:
            return f"m[{self.name}]"
        tag = "'" * self.copy
        return f"{self.name}{'ud'[self.spin]}{tag}"


Monomial = Tuple[Tuple[Symbol, int], ...]
Scalar = Union[int, float, complex]


def _merge(left: Monomial, right: Monomial) -> Monomial:
    powers: Dict[Symbol, int] = dict(left)
    for symbol, exponent in right:
        powers[symbol] = powers.get(symbol, 0) + exponent
    return tuple(sorted(powers.items()))


class SparsePolynomial:
    """Immutable polynomial; zero coefficients are never stored"""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None):
        cleaned = {}
        for monomial, coefficient in (terms or {}).items():
            if coefficient == 0:
                continue
            key = tuple(sorted((s, e) for s, e in monomial if e != 0))
            cleaned[key] = cleaned.get(key, 0) + coefficient
        self._terms = {k: v for k, v in cleaned.items() if v != 0}

    @classmethod
    def constant(cls, value: Scalar) -> "SparsePolynomial":
        return cls({(): value})

    @classmethod
    def variable(cls, symbol: Symbol) -> "SparsePolynomial":
        return cls({((symbol, 1),): 1})

    @classmethod
    def zero(cls) -> "SparsePolynomial":
        return cls()

    @property
    def terms(self) -> Dict[Monomial, Scalar]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Scalar]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1"""
        if not self._terms:
            return -1
        return max(sum(e for _, e in monomial) for monomial in self._terms)

    def degrees(self) -> set:
        return {sum(e for _, e in monomial) for monomial in self._terms}

    def symbols(self) -> set:
        return {symbol for monomial in self._terms for symbol, _ in monomial}

    def has_auxiliary(self) -> bool:
        return any(not symbol.is_amplitude for symbol in self.symbols())

    @staticmethod
    def _promote(other) -> "SparsePolynomial":
        if isinstance(other, SparsePolynomial):
            return other
        return SparsePolynomial.constant(other)

    def __add__(self, other) -> "SparsePolynomial":
        other = self._promote(other)
        terms = dict(self._terms)
        for monomial, coefficient in other._terms.items():
            terms[monomial] = terms.get(monomial, 0) + coefficient
        return SparsePolynomial(terms)

    __radd__ = __add__

    def __neg__(self) -> "SparsePolynomial":
        return SparsePolynomial({k: -v for k, v in self._terms.items()})

    def __sub__(self, other) -> "SparsePolynomial":
        return self + (-self._promote(other))

    def __rsub__(self, other) -> "SparsePolynomial":
        return self._promote(other) - self

    def __mul__(self, other) -> "SparsePolynomial":
        if not isinstance(other, SparsePolynomial):
            return SparsePolynomial({k: v * other for k, v in self._terms.items()})
        terms: Dict[Monomial, Scalar] = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                key = _merge(k1, k2)
                terms[key] = terms.get(key, 0) + v1 * v2
        return SparsePolynomial(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SparsePolynomial":
        if n < 0:
            raise DomainError(f"Negative powers are not polynomials, got {n}")
        result = SparsePolynomial.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, float, complex)):
            other = SparsePolynomial.constant(other)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._terms.items(), key=lambda kv: kv[0])))

    def diff(self, symbol: Symbol) -> "SparsePolynomial":
        """Formal partial derivative"""
        terms: Dict[Monomial, Scalar] = {}
        for monomial, coefficient in self._terms.items():
            powers = dict(monomial)
            exponent = powers.get(symbol, 0)
            if exponent == 0:
                continue
            powers[symbol] = exponent - 1
            key = tuple(sorted((s, e) for s, e in powers.items() if e))
            terms[key] = terms.get(key, 0) + coefficient * exponent
        return SparsePolynomial(terms)

    def rename(self, mapping: Mapping[Symbol, Symbol]) -> "SparsePolynomial":
        """Substitute symbols for symbols"""
        terms: Dict[Monomial, Scalar] = {}
        for monomial, coefficient in self._terms.items():
            powers: Dict[Symbol, int] = {}
            for symbol, exponent in monomial:
                target = mapping.get(symbol, symbol)
                powers[target] = powers.get(target, 0) + exponent
            key = tuple(sorted(powers.items()))
            terms[key] = terms.get(key, 0) + coefficient
        return SparsePolynomial(terms)

    def recopy(self, family: str, copy: int, source: Optional[int] = None) -> "SparsePolynomial":
        """Move the auxiliary variables of one family to another copy tag"""
        mapping = {
            symbol: symbol.with_copy(copy)
            for symbol in self.symbols()
            if not symbol.is_amplitude and symbol.name == family and (source is None or symbol.copy == source)
        }
        return self.rename(mapping)

    def evaluate(self, values: Mapping[Symbol, complex]) -> complex:
        """Substitute numbers for every symbol"""
        total = 0j
        for monomial, coefficient in self._terms.items():
            term = complex(coefficient)
            for symbol, exponent in monomial:
                try:
                    term *= values[symbol] ** exponent
                except KeyError:
                    raise DomainError(f"No value supplied for symbol {symbol}")
            total += term
        return total

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for monomial, coefficient in self.items():
            factors = "*".join(str(s) if e == 1 else f"{s}^{e}" for s, e in monomial)
            parts.append(f"({coefficient})" + (f"*{factors}" if factors else ""))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"SparsePolynomial({len(self)} terms, degree {self.degree()})"

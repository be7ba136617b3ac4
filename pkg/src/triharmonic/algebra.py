"""Exact sparse multivariate polynomials over derived function symbols.

A :class:`Poly` is an immutable map from :class:`Monomial` to
:class:`fractions.Fraction`.  Its variables are :class:`DerivedSymbol`
values: one of the scalar fields ``k1, k2, f1, f2, sigma, c`` tagged with a
word of frame derivations.  Arithmetic is exact and every value is kept in
canonical form, so two polynomials are equal iff their term maps are.

>>> k1, f2 = Poly.symbol("k1"), Poly.symbol("f2")
>>> (k1 + f2) * (k1 - f2)
Poly('k1^2 - f2^2')
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

BASES = ("k1", "k2", "f1", "f2", "sigma", "c")
CONSTANTS = frozenset({"c"})

_BASE_RANK = {name: i for i, name in enumerate(BASES)}

Number = Union[int, Fraction]


class AlgebraError(Exception):
    """Base class for errors raised by the polynomial engine."""


class NotDivisible(AlgebraError):
    """A term of the dividend lacks the requested monomial factor."""


class UnboundSymbol(AlgebraError):
    """Evaluation hit a symbol without an assigned value."""


@dataclass(frozen=True)
class DerivedSymbol:
    """A base field with a word of frame derivations applied to it.

    ``word`` lists frame indices innermost first, so ``(1, 3)`` is
    ``e3(e1(base))``.  Normalizing the word is the job of the derivation
    engine; this class only stores it.
    """

    base: str
    word: tuple[int, ...] = ()

    def __post_init__(self):
        if self.base not in _BASE_RANK:
            raise ValueError(f"unknown base symbol {self.base!r}")
        if any(i not in (1, 2, 3) for i in self.word):
            raise ValueError(f"frame indices must be 1, 2 or 3: {self.word!r}")
        if self.base in CONSTANTS and self.word:
            raise ValueError(f"{self.base} is a constant and cannot carry derivatives")

    @property
    def is_base(self) -> bool:
        return not self.word

    def sort_key(self) -> tuple:
        return (len(self.word) > 0, _BASE_RANK[self.base], len(self.word), self.word)

    def __lt__(self, other: DerivedSymbol) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        text = self.base
        for i in self.word:
            text = f"e{i}({text})"
        return text


class Monomial:
    """A power product of derived symbols; the empty product is the unit."""

    __slots__ = ("_powers", "_hash")

    def __init__(self, powers: Mapping[DerivedSymbol, int] | Iterable[tuple[DerivedSymbol, int]] = ()):
        items = powers.items() if isinstance(powers, Mapping) else powers
        merged: dict[DerivedSymbol, int] = {}
        for sym, exp in items:
            if exp < 0:
                raise ValueError("negative exponent")
            if exp:
                merged[sym] = merged.get(sym, 0) + exp
        self._powers = tuple(sorted(merged.items(), key=lambda kv: kv[0].sort_key()))
        self._hash = hash(self._powers)

    @classmethod
    def one(cls) -> Monomial:
        return cls()

    @property
    def powers(self) -> tuple[tuple[DerivedSymbol, int], ...]:
        return self._powers

    def degree(self, sym: DerivedSymbol | None = None) -> int:
        if sym is None:
            return sum(e for _, e in self._powers)
        for s, e in self._powers:
            if s == sym:
                return e
        return 0

    def symbols(self) -> tuple[DerivedSymbol, ...]:
        return tuple(s for s, _ in self._powers)

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(self._powers + other._powers)

    def without(self, sym: DerivedSymbol, count: int | None = None) -> Monomial:
        """Drop ``count`` factors of ``sym`` (all of them when ``count`` is None)."""
        out = []
        for s, e in self._powers:
            if s == sym:
                e = 0 if count is None else e - count
                if e < 0:
                    raise NotDivisible(f"{self} is not divisible by {sym}^{count}")
            out.append((s, e))
        return Monomial(out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self._powers == other._powers

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._powers)

    def __str__(self) -> str:
        if not self._powers:
            return "1"
        return "*".join(str(s) if e == 1 else f"{s}^{e}" for s, e in self._powers)

    def __repr__(self) -> str:
        return f"Monomial({str(self)!r})"


def _grlex_key(mono: Monomial, order: list[DerivedSymbol]) -> tuple:
    return (mono.degree(), tuple(mono.degree(s) for s in order))


def _coerce_coeff(value: Number) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"coefficients must be exact rationals, got {type(value).__name__}")


class Poly:
    """Immutable polynomial with exact rational coefficients.

    Zero coefficients are never stored, so the empty map is the zero
    polynomial and equality is equality of term maps.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            coeff = _coerce_coeff(coeff)
            if coeff:
                clean[mono] = coeff
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> Poly:
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, value: Number) -> Poly:
        return cls({Monomial.one(): value})

    @classmethod
    def symbol(cls, base: str | DerivedSymbol, word: Iterable[int] = ()) -> Poly:
        sym = base if isinstance(base, DerivedSymbol) else DerivedSymbol(base, tuple(word))
        return cls._raw({Monomial({sym: 1}): Fraction(1)})

    @classmethod
    def zero(cls) -> Poly:
        return cls._raw({})

    @classmethod
    def one(cls) -> Poly:
        return cls.const(1)

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get(Monomial.one(), Fraction(0))

    def symbols(self) -> frozenset[DerivedSymbol]:
        return frozenset(s for m in self._terms for s in m.symbols())

    def coeff(self, mono: Monomial) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def degree(self, sym: DerivedSymbol | None = None) -> int:
        return max((m.degree(sym) for m in self._terms), default=0)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _lift(other: Poly | Number) -> Poly:
        if isinstance(other, Poly):
            return other
        return Poly.const(other)

    def __add__(self, other: Poly | Number) -> Poly:
        other = self._lift(other)
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            total = out.get(mono, 0) + coeff
            if total:
                out[mono] = total
            else:
                out.pop(mono, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self) -> Poly:
        return self

    def __sub__(self, other: Poly | Number) -> Poly:
        return self + (-self._lift(other))

    def __rsub__(self, other: Number) -> Poly:
        return self._lift(other) - self

    def __mul__(self, other: Poly | Number) -> Poly:
        if not isinstance(other, Poly):
            k = _coerce_coeff(other)
            if not k:
                return Poly.zero()
            return Poly._raw({m: c * k for m, c in self._terms.items()})
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = m1 * m2
                total = out.get(mono, 0) + c1 * c2
                if total:
                    out[mono] = total
                else:
                    out.pop(mono, None)
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        return poly_pow(self, n)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- presentation -------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending graded-lex order (the print order)."""
        order = sorted(self.symbols(), key=DerivedSymbol.sort_key)
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0], order), reverse=True)

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.sorted_terms()[0]

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Poly({render(self)!r})"


def render(p: Poly) -> str:
    """Canonical text: descending grlex, ``^`` for powers, explicit ``*``."""
    if p.is_zero():
        return "0"
    parts = []
    for i, (mono, coeff) in enumerate(p.sorted_terms()):
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        if not mono:
            body = _render_number(mag)
        elif mag == 1:
            body = str(mono)
        else:
            body = f"{_render_number(mag)}*{mono}"
        if i == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def _render_number(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def poly_arith(lhs: Poly, rhs: Poly, op: str) -> Poly:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown operation {op!r}")


def poly_pow(base: Poly, n: int) -> Poly:
    """``base**n`` by repeated squaring; ``poly_pow(p, 0)`` is 1, even for p = 0."""
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    result = Poly.one()
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def substitute(p: Poly, target: DerivedSymbol | str, replacement: Poly | Number) -> Poly:
    """Replace every occurrence of ``target`` in ``p`` by ``replacement``."""
    if isinstance(target, str):
        target = DerivedSymbol(target)
    replacement = Poly._lift(replacement)
    powers: dict[int, Poly] = {}
    out = Poly.zero()
    for mono, coeff in p.items():
        e = mono.degree(target)
        if not e:
            out = out + Poly._raw({mono: coeff})
            continue
        if e not in powers:
            powers[e] = poly_pow(replacement, e)
        out = out + Poly._raw({mono.without(target): coeff}) * powers[e]
    return out


def substitute_many(p: Poly, mapping: Mapping[DerivedSymbol | str, Poly | Number]) -> Poly:
    for target, replacement in mapping.items():
        p = substitute(p, target, replacement)
    return p


def factor_out_power(p: Poly, s: DerivedSymbol | str, m: int) -> Poly:
    """Return q with ``p == s**m * q``; raise NotDivisible otherwise."""
    if isinstance(s, str):
        s = DerivedSymbol(s)
    if m < 1:
        raise ValueError("power must be positive")
    out = {}
    for mono, coeff in p.items():
        if mono.degree(s) < m:
            raise NotDivisible(f"term {coeff}*{mono} is not divisible by {s}^{m}")
        out[mono.without(s, m)] = coeff
    return Poly._raw(out)


def evaluate_base(p: Poly, values: Mapping[str, Number]) -> Fraction:
    """Evaluate a polynomial whose symbols are all base symbols."""
    total = Fraction(0)
    for mono, coeff in p.items():
        term = coeff
        for sym, e in mono.powers:
            if not sym.is_base or sym.base not in values:
                raise UnboundSymbol(f"no value for {sym}")
            term *= _coerce_coeff(values[sym.base]) ** e
        total += term
    return total


def coefficient_vector(p: Poly, basis: Iterable[Poly]) -> list[Fraction]:
    """Coefficients of ``p`` on a list of monomials; raise if ``p`` leaves the span."""
    monos = []
    for b in basis:
        if len(b) != 1:
            raise ValueError(f"basis element {b} is not a monomial")
        ((mono, _),) = b.items()
        monos.append(mono)
    extra = set(m for m, _ in p.items()) - set(monos)
    if extra:
        raise ValueError(f"{p} has terms outside the basis: {sorted(map(str, extra))}")
    return [p.coeff(m) for m in monos]

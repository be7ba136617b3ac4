"""Frame derivations e1, e2, e3 acting on polynomials in derived symbols.

The adapted frame satisfies

    [e1, e3] = k1 e3,   [e2, e3] = k2 e3,   [e1, e2] = f1 e1 + f2 e2 - 2 sigma e3.

An iterated derivative ``e_j(e_i(x))`` with ``i > j`` is rewritten as
``e_i(e_j(x)) + [e_j, e_i](x)``, so every derived symbol carries a word whose
indices are non-decreasing from the inside out.  Each rewrite removes one
inversion or shortens the word, so normalization terminates.

Two rewrite systems are provided.  The generic one knows nothing beyond the
brackets: unresolved derivatives stay as fresh symbols.  The Omega system
holds on the open set of a space form where k1 does not vanish, for a frame
chosen with k2 = 0; there f1 = 0, e2 and e3 kill every field, and e1 acts on
``k1, f2, sigma`` by closed formulas.  Omega rules divide by k1 somewhere in
their derivation, so they must never leak into generic computations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable, Mapping

from .algebra import CONSTANTS, DerivedSymbol, Monomial, Poly, substitute, substitute_many

FRAME = (1, 2, 3)

k1, k2, f1, f2, sigma, c = (Poly.symbol(n) for n in ("k1", "k2", "f1", "f2", "sigma", "c"))

# BRACKETS[(i, j)][k] is the coefficient of e_k in [e_i, e_j], for i < j.
BRACKETS: dict[tuple[int, int], dict[int, Poly]] = {
    (1, 2): {1: f1, 2: f2, 3: -2 * sigma},
    (1, 3): {3: k1},
    (2, 3): {3: k2},
}


class Mode(Enum):
    GENERIC = "generic"
    OMEGA = "omega"


def _freeze_brackets(brackets: Mapping[tuple[int, int], Mapping[int, Poly]]):
    return tuple(sorted((ij, tuple(sorted(coeffs.items()))) for ij, coeffs in brackets.items()))


@dataclass(frozen=True)
class RewriteSystem:
    """How derivatives of base fields resolve.

    ``rules`` maps ``(base, i)`` to the polynomial ``e_i(base)``.  ``zeros``
    lists base fields that are identically zero; they are substituted
    eagerly, before and after every derivation.
    """

    mode: Mode
    rules: tuple[tuple[tuple[str, int], Poly], ...] = ()
    zeros: frozenset[str] = frozenset()
    brackets: tuple = field(default_factory=lambda: _freeze_brackets(BRACKETS))

    def rule(self, base: str, i: int) -> Poly | None:
        return self._rule_map().get((base, i))

    def _rule_map(self) -> dict[tuple[str, int], Poly]:
        cached = self.__dict__.get("_rule_cache")
        if cached is None:
            cached = dict(self.rules)
            object.__setattr__(self, "_rule_cache", cached)
        return cached

    def bracket(self, i: int, j: int) -> dict[int, Poly]:
        """Coefficients of [e_i, e_j] on the frame."""
        if i == j:
            return {}
        for ij, coeffs in self.brackets:
            if ij == (i, j):
                return dict(coeffs)
            if ij == (j, i):
                return {k: -v for k, v in coeffs}
        return {}

    def lookup(self, base: str, i: int) -> Poly:
        """``e_i(base)`` under this system (a fresh symbol when unresolved)."""
        return derive(Poly.symbol(base), i, self)

    def with_zeros(self, names: Iterable[str]) -> RewriteSystem:
        """The same system with additional fields set to zero.

        Rules are re-reduced so that their right-hand sides live in the
        smaller ring.
        """
        zeros = self.zeros | frozenset(names)
        sub = {z: 0 for z in zeros}
        rules = tuple(
            ((b, i), substitute_many(rhs, sub)) for (b, i), rhs in self.rules if b not in zeros
        )
        return RewriteSystem(self.mode, rules, zeros, self.brackets)

    def reduce(self, p: Poly) -> Poly:
        """Normal form of ``p``: zeros substituted, derived symbols resolved by the rules."""
        out = Poly.zero()
        for mono, coeff in p.items():
            term = Poly.const(coeff)
            for sym, e in mono.powers:
                term = term * _resolve_symbol(sym, self) ** e
            out = out + term
        return out

    def describe(self) -> str:
        if self.mode is Mode.GENERIC and not self.rules and not self.zeros:
            return "generic"
        parts = [self.mode.value]
        if self.zeros:
            parts.append("zeros=" + ",".join(sorted(self.zeros)))
        return " ".join(parts)


GENERIC = RewriteSystem(Mode.GENERIC)


def build_omega_rules() -> RewriteSystem:
    """The constrained system valid where k1 is nonvanishing, with k2 = 0.

    Only k1, f2, sigma and the constant c survive; f1 = 0 and k2 = 0 are
    substitutions.
    """
    rules: dict[tuple[str, int], Poly] = {
        ("sigma", 1): 2 * k1 * sigma,
        ("k1", 1): k1**2 - k1 * f2,
        ("f2", 1): f2**2 - k1 * f2 + 4 * sigma**2,
    }
    for base in ("k1", "f2", "sigma"):
        for i in (2, 3):
            rules[(base, i)] = Poly.zero()
    for i in FRAME:
        rules[("c", i)] = Poly.zero()
    return RewriteSystem(Mode.OMEGA, tuple(sorted(rules.items())), frozenset({"k2", "f1"}))


OMEGA = build_omega_rules()


def derive(p: Poly, i: int, rules: RewriteSystem = GENERIC) -> Poly:
    """Apply ``e_i`` to ``p`` by the Leibniz rule."""
    if i not in FRAME:
        raise ValueError(f"frame index must be 1, 2 or 3, got {i!r}")
    if rules.zeros:
        p = substitute_many(p, {z: 0 for z in rules.zeros})
    result = Poly.zero()
    for mono, coeff in p.items():
        powers = mono.powers
        for idx, (sym, e) in enumerate(powers):
            d = _derive_symbol(sym, i, rules)
            if d.is_zero():
                continue
            rest = Monomial(powers[:idx] + ((sym, e - 1),) + powers[idx + 1 :])
            result = result + d * Poly({rest: coeff * e})
    return result


@lru_cache(maxsize=None)
def _derive_symbol(sym: DerivedSymbol, i: int, rules: RewriteSystem) -> Poly:
    if sym.base in CONSTANTS or sym.base in rules.zeros:
        return Poly.zero()
    if sym.is_base:
        rhs = rules.rule(sym.base, i)
        if rhs is not None:
            return rhs
        if rules.mode is Mode.OMEGA:
            raise KeyError(f"Omega system has no rule for e{i}({sym.base})")
        return Poly.symbol(sym.base, (i,))
    if rules.mode is Mode.OMEGA:
        return derive(_resolve_symbol(sym, rules), i, rules)
    j = sym.word[-1]
    if j <= i:
        return Poly.symbol(sym.base, sym.word + (i,))
    # e_i e_j g = e_j e_i g + [e_i, e_j] g
    inner = Poly.symbol(sym.base, sym.word[:-1])
    out = derive(derive(inner, i, rules), j, rules)
    for k, coeff in rules.bracket(i, j).items():
        out = out + coeff * derive(inner, k, rules)
    return out


@lru_cache(maxsize=None)
def _resolve_symbol(sym: DerivedSymbol, rules: RewriteSystem) -> Poly:
    if sym.base in rules.zeros:
        return Poly.zero()
    out = Poly.symbol(sym.base)
    for i in sym.word:
        out = derive(out, i, rules)
    return out


def apply_word(p: Poly, word: Iterable[int], rules: RewriteSystem = GENERIC) -> Poly:
    """Apply ``e_{w[0]}`` first, then ``e_{w[1]}``, and so on."""
    for i in word:
        p = derive(p, i, rules)
    return p


def normalize_word(base: str, word: Iterable[int], rules: RewriteSystem = GENERIC) -> Poly:
    """The iterated derivative of ``base`` along ``word`` in normal-form symbols."""
    return apply_word(Poly.symbol(base), word, rules)


def normalize_word_leftmost(base: str, word: Iterable[int], rules: RewriteSystem = GENERIC) -> Poly:
    """Second normalization strategy, used to check confluence.

    Derivations are first applied without reordering.  Then, repeatedly, the
    innermost inversion of some unsorted word is swapped and the bracket
    term added, until every word is sorted.  Only the brackets of ``rules``
    are used; rules for base fields are ignored.
    """
    p = Poly.symbol(DerivedSymbol(base, tuple(word)))
    while True:
        target = next(
            (s for s in sorted(p.symbols()) if any(a > b for a, b in zip(s.word, s.word[1:]))),
            None,
        )
        if target is None:
            return p
        p = substitute(p, target, _swap_innermost(target, rules))


def _swap_innermost(sym: DerivedSymbol, rules: RewriteSystem) -> Poly:
    w = sym.word
    pos = next(n for n in range(len(w) - 1) if w[n] > w[n + 1])
    a, b = w[pos], w[pos + 1]
    head, tail = w[:pos], w[pos + 2 :]
    # e_b e_a X = e_a e_b X + [e_b, e_a] X, with X = head applied to base
    swapped = Poly.symbol(sym.base, head + (b, a))
    for k, coeff in rules.bracket(b, a).items():
        swapped = swapped + coeff * Poly.symbol(sym.base, head + (k,))
    for i in tail:
        swapped = _raw_derive(swapped, i)
    return swapped


def _raw_derive(p: Poly, i: int) -> Poly:
    # Leibniz rule that appends to words without reordering them.
    result = Poly.zero()
    for mono, coeff in p.items():
        powers = mono.powers
        for idx, (sym, e) in enumerate(powers):
            if sym.base in CONSTANTS:
                continue
            d = Poly.symbol(sym.base, sym.word + (i,))
            rest = Monomial(powers[:idx] + ((sym, e - 1),) + powers[idx + 1 :])
            result = result + d * Poly({rest: coeff * e})
    return result


def laplacian(p: Poly, rules: RewriteSystem = GENERIC) -> Poly:
    """Laplace-Beltrami operator of the 3-manifold on a scalar polynomial.

    Sum of e_i e_i(p) minus the derivative along the trace of the connection,
    which for the adapted frame is ``f1 e2 - f2 e1 - k1 e1 - k2 e2``.
    """
    d1, d2, d3 = (derive(p, i, rules) for i in FRAME)
    out = derive(d1, 1, rules) + derive(d2, 2, rules) + derive(d3, 3, rules)
    out = out + f1 * d2 - f2 * d1 - k1 * d1 - k2 * d2
    if rules.zeros:
        out = rules.reduce(out)
    return out

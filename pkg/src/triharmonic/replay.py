"""Replayable elimination proofs.

A :class:`ProofScript` is a list of :class:`ProofStep` values.  Each step
reads earlier results by index, performs one algebraic move on the Omega
set, and may carry the identifier of a reference equation that its result
should reproduce up to a nonzero rational factor.  Replaying a script gives
a :class:`Report` with one :class:`StepOutcome` per step and a verdict.

Once a ``CONCLUDE_VANISHES`` step establishes that a field is zero, every
later step works in the smaller ring where that field is substituted by 0.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from . import geometry
from .algebra import (
    AlgebraError,
    DerivedSymbol,
    Poly,
    UnboundSymbol,
    factor_out_power,
    render,
    substitute,
)
from .derivation import OMEGA, Mode, RewriteSystem, c, derive, f2, k1, laplacian, sigma
from .equations import EQUATIONS, Equation

REPORT_SCHEMA = "triharmonic.report/1"


class InvalidRef(ValueError):
    """A step refers to a step that does not precede it."""


class StepKind(str, Enum):
    COMPUTE = "Compute"
    APPLY_E1 = "ApplyE1"
    LINEAR_COMBINE = "LinearCombine"
    DIVIDE_BY_POWER = "DivideByPower"
    SUBSTITUTE_C = "SubstituteC"
    LAPLACIAN = "Laplacian"
    ASSERT_EQUALS_PAPER = "AssertEqualsPaper"
    CONCLUDE_VANISHES = "ConcludeVanishes"


class Comparison(str, Enum):
    EXACT = "ExactMatch"
    SCALAR = "ScalarMatch"
    NONE = "NoExpectation"
    MISMATCH = "Mismatch"


@dataclass(frozen=True)
class ProofStep:
    kind: StepKind
    refs: tuple[int, ...] = ()
    coeffs: tuple[Fraction, ...] = ()
    symbol: str | None = None
    power: int = 0
    divisor: Fraction = Fraction(1)
    source: str | None = None
    expect: str | None = None

    def describe(self) -> str:
        k = self.kind
        if k is StepKind.COMPUTE:
            return f"compute {self.source}"
        if k is StepKind.LINEAR_COMBINE:
            return " + ".join(f"({_num(a)})*[{r}]" for a, r in zip(self.coeffs, self.refs))
        if k is StepKind.DIVIDE_BY_POWER:
            parts = []
            if self.divisor != 1:
                parts.append(_num(self.divisor))
            if self.symbol:
                parts.append(self.symbol if self.power == 1 else f"{self.symbol}^{self.power}")
            return f"[{self.refs[0]}] / {'*'.join(parts) or '1'}"
        if k is StepKind.CONCLUDE_VANISHES:
            return f"{self.symbol} = 0 from [{self.refs[0]}]"
        if k is StepKind.ASSERT_EQUALS_PAPER:
            return f"[{self.refs[0]}] vs ({self.expect})"
        return f"{k.value} [{self.refs[0]}]"


def _num(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def compute(source: str, expect: str | None = None) -> ProofStep:
    return ProofStep(StepKind.COMPUTE, source=source, expect=expect)


def apply_e1(ref: int, expect: str | None = None) -> ProofStep:
    return ProofStep(StepKind.APPLY_E1, (ref,), expect=expect)


def linear_combine(a, ref_a: int, b=None, ref_b: int | None = None, expect: str | None = None) -> ProofStep:
    if ref_b is None:
        return ProofStep(StepKind.LINEAR_COMBINE, (ref_a,), (Fraction(a),), expect=expect)
    return ProofStep(StepKind.LINEAR_COMBINE, (ref_a, ref_b), (Fraction(a), Fraction(b)), expect=expect)


def divide_by_power(ref: int, symbol: str | None = None, power: int = 1, divisor=1, expect: str | None = None) -> ProofStep:
    return ProofStep(
        StepKind.DIVIDE_BY_POWER, (ref,), symbol=symbol, power=power if symbol else 0,
        divisor=Fraction(divisor), expect=expect,
    )


def substitute_c(ref: int, expect: str | None = None) -> ProofStep:
    return ProofStep(StepKind.SUBSTITUTE_C, (ref,), expect=expect)


def apply_laplacian(ref: int, expect: str | None = None) -> ProofStep:
    return ProofStep(StepKind.LAPLACIAN, (ref,), expect=expect)


def assert_equals_paper(ref: int, eq_id: str) -> ProofStep:
    return ProofStep(StepKind.ASSERT_EQUALS_PAPER, (ref,), expect=eq_id)


def conclude_vanishes(ref: int, symbol: str) -> ProofStep:
    return ProofStep(StepKind.CONCLUDE_VANISHES, (ref,), symbol=symbol)


@dataclass(frozen=True)
class ProofScript:
    script_id: str
    steps: tuple[ProofStep, ...]
    title: str = ""

    def __post_init__(self):
        for n, step in enumerate(self.steps):
            for r in step.refs:
                if not 0 <= r < n:
                    raise InvalidRef(f"step {n} refers to step {r}")


@dataclass(frozen=True)
class StepOutcome:
    result: Poly
    comparison: Comparison = Comparison.NONE
    scalar: Fraction | None = None
    diff: Poly | None = None
    paper_eq: str | None = None
    note: str | None = None
    rule: str | None = None
    conclusions: tuple[str, ...] = ()
    vanished: str | None = None
    failed: bool = False
    message: str | None = None

    @property
    def ok(self) -> bool:
        return not self.failed and self.comparison is not Comparison.MISMATCH


@dataclass(frozen=True)
class Report:
    script_id: str
    steps: tuple[ProofStep, ...]
    outcomes: tuple[StepOutcome, ...]
    verdict: str
    failed_step: int | None = None
    conclusions: tuple[str, ...] = ()

    @property
    def complete(self) -> bool:
        return self.verdict == "ProofComplete"

    def to_dict(self) -> dict:
        steps = []
        for n, (step, out) in enumerate(zip(self.steps, self.outcomes)):
            steps.append({
                "index": n,
                "kind": step.kind.value,
                "action": step.describe(),
                "paper_eq": out.paper_eq,
                "polynomial": render(out.result),
                "comparison": out.comparison.value,
                "scalar": None if out.scalar is None else _num(out.scalar),
                "diff": None if out.diff is None else render(out.diff),
                "rule": out.rule,
                "note": out.note,
            })
        return {
            "schema": REPORT_SCHEMA,
            "script_id": self.script_id,
            "steps": steps,
            "verdict": self.verdict,
            "failed_step": self.failed_step,
            "conclusions": list(self.conclusions),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


# -- comparisons ------------------------------------------------------------


def compare_up_to_scalar(got: Poly, expected: Poly) -> tuple[Comparison, Fraction | None, Poly | None]:
    """Match ``got`` against ``expected`` up to a nonzero rational factor.

    Returns ``(EXACT, 1, None)``, ``(SCALAR, lam, None)`` with
    ``got == lam * expected``, or ``(MISMATCH, None, diff)`` where ``diff``
    is ``got`` minus the best rescaling of ``expected``.
    """
    if got == expected:
        return Comparison.EXACT, Fraction(1), None
    if expected.is_zero() or got.is_zero():
        return Comparison.MISMATCH, None, got - expected
    mono, coeff = expected.leading_term()
    lam = got.coeff(mono) / coeff
    if lam and got == expected * lam:
        return Comparison.SCALAR, lam, None
    return Comparison.MISMATCH, None, got - expected * (lam or 1)


def _relation_free(p: Poly) -> Poly:
    """Eliminate c through c = sigma^2 - k1 f2."""
    return substitute(p, "c", sigma**2 - k1 * f2)


def _check_expectation(got: Poly, eq: Equation, rules: RewriteSystem) -> tuple[Comparison, Fraction | None, Poly | None]:
    expected = eq.poly
    if rules.zeros:
        expected = rules.reduce(expected)
    if eq.modulo_c:
        got, expected = _relation_free(got), _relation_free(expected)
        if rules.zeros:
            got, expected = rules.reduce(got), rules.reduce(expected)
    return compare_up_to_scalar(got, expected)


# -- substitution of the curvature relation --------------------------------

_K1 = DerivedSymbol("k1")
_F2 = DerivedSymbol("f2")


def substitute_curvature_relation(p: Poly) -> Poly:
    """Replace each factor ``k1*f2`` by ``sigma^2 - c``.

    This is the move ``k1 f2 = sigma^2 - c``; substituting ``c`` back
    recovers ``p`` exactly.
    """
    repl = sigma**2 - c
    out = Poly.zero()
    for mono, coeff in p.items():
        m = min(mono.degree(_K1), mono.degree(_F2))
        rest = Poly({mono.without(_K1, m).without(_F2, m): coeff}) if m else Poly({mono: coeff})
        out = out + rest * repl**m
    return out


# -- vanishing arguments ----------------------------------------------------


def vanishing_rule(p: Poly, target: str) -> str | None:
    """Name the argument by which ``p = 0`` on Omega forces ``target = 0``.

    ``invertible-factor``: ``p`` is a single term ``a * target^m * k1^n``
    with m >= 1 and k1 nonvanishing.  ``one-sign-squares``: every term is a
    product of even powers, all coefficients share a sign, and one term is
    ``target^m`` times a power of k1.  ``None`` when neither applies.
    """
    sym = DerivedSymbol(target)
    if p.is_zero():
        return None
    if len(p) == 1:
        ((mono, _),) = p.items()
        if mono.degree(sym) and all(s in (sym, _K1) for s in mono.symbols()):
            return "invertible-factor"
        return None
    coeffs = [q for _, q in p.items()]
    if not (all(q > 0 for q in coeffs) or all(q < 0 for q in coeffs)):
        return None
    if any(e % 2 for mono, _ in p.items() for _, e in mono.powers):
        return None
    for mono, _ in p.items():
        if mono.degree(sym) and all(s in (sym, _K1) for s in mono.symbols()):
            return "one-sign-squares"
    return None


# -- named computations -----------------------------------------------------


@lru_cache(maxsize=None)
def _k2_zero_tritension() -> tuple[Poly, Poly]:
    return geometry.specialize_k2_zero(geometry.tritension_components())


@lru_cache(maxsize=None)
def _k2_zero_bitension() -> tuple[Poly, Poly]:
    return geometry.bitension_components()


@lru_cache(maxsize=None)
def _k2_zero_rough_laplacian() -> tuple[Poly, Poly]:
    return geometry.specialize_k2_zero(geometry.rough_laplacian(geometry.tension_field()).components())


SOURCES: dict[str, Callable[[RewriteSystem], Poly]] = {
    "tritension": lambda r: r.reduce(_k2_zero_tritension()[0]),
    "tritension.2": lambda r: r.reduce(_k2_zero_tritension()[1]),
    "bitension": lambda r: r.reduce(_k2_zero_bitension()[0]),
    "bitension.2": lambda r: r.reduce(_k2_zero_bitension()[1]),
    "A_prime": lambda r: r.reduce(_k2_zero_rough_laplacian()[0]),
    "B_prime": lambda r: r.reduce(_k2_zero_rough_laplacian()[1]),
    "constraint7": lambda r: r.reduce(geometry.space_form_constraints()[6]),
    "e1(k1)": lambda r: derive(k1, 1, r),
    "minus_laplacian_k1": lambda r: -laplacian(k1, r),
}


# -- replay -----------------------------------------------------------------


def _working_rules(base: RewriteSystem, state: Sequence[StepOutcome]) -> RewriteSystem:
    zeros = [out.vanished for out in state if out.vanished]
    return base.with_zeros(zeros) if zeros else base


def apply_step(state: Sequence[StepOutcome], step: ProofStep, rules: RewriteSystem = OMEGA) -> StepOutcome:
    """Carry out one step against the outcomes of the steps before it."""
    for r in step.refs:
        if not 0 <= r < len(state):
            raise InvalidRef(f"reference to step {r} with {len(state)} earlier steps")
    rules = _working_rules(rules, state)
    args = [rules.reduce(state[r].result) if rules.zeros else state[r].result for r in step.refs]
    kind = step.kind
    rule = None
    conclusions: tuple[str, ...] = ()
    vanished = None

    if kind is StepKind.COMPUTE:
        if step.source not in SOURCES:
            raise KeyError(f"unknown computation {step.source!r}")
        result = SOURCES[step.source](rules)
    elif kind is StepKind.APPLY_E1:
        result = derive(args[0], 1, rules)
    elif kind is StepKind.LINEAR_COMBINE:
        result = Poly.zero()
        for a, p in zip(step.coeffs, args):
            result = result + p * a
    elif kind is StepKind.DIVIDE_BY_POWER:
        if step.divisor == 0:
            raise ZeroDivisionError("divisor must be nonzero")
        result = args[0]
        if step.symbol:
            result = factor_out_power(result, step.symbol, step.power)
        result = result * (1 / step.divisor)
    elif kind is StepKind.SUBSTITUTE_C:
        result = substitute_curvature_relation(args[0])
        rule = "k1*f2 -> sigma^2 - c"
    elif kind is StepKind.LAPLACIAN:
        result = laplacian(args[0], rules)
    elif kind is StepKind.ASSERT_EQUALS_PAPER:
        result = args[0]
    elif kind is StepKind.CONCLUDE_VANISHES:
        result = args[0]
        rule = vanishing_rule(result, step.symbol)
        if rule is None:
            return StepOutcome(
                result, rule=None, failed=True,
                message=f"{render(result)} = 0 does not force {step.symbol} = 0",
            )
        if step.symbol == "k1":
            lead = str(result.leading_term()[0])
            conclusions = (f"{lead} = 0 on Omega", "contradiction: k1 vanishes on Omega")
        else:
            conclusions = (f"{step.symbol} = 0 on Omega",)
            vanished = step.symbol
    else:  # pragma: no cover
        raise ValueError(f"unknown step kind {kind!r}")

    if step.expect is None:
        return StepOutcome(result, rule=rule, conclusions=conclusions, vanished=vanished)
    eq = EQUATIONS[step.expect]
    comparison, scalar, diff = _check_expectation(result, eq, rules)
    return StepOutcome(
        result, comparison, scalar, diff, paper_eq=step.expect, note=eq.note, rule=rule,
        conclusions=conclusions, vanished=vanished,
    )


def replay_script(script: ProofScript, rules: RewriteSystem = OMEGA) -> Report:
    outcomes: list[StepOutcome] = []
    for n, step in enumerate(script.steps):
        try:
            out = apply_step(outcomes, step, rules)
        except AlgebraError as exc:
            out = StepOutcome(Poly.zero(), failed=True, message=str(exc))
        outcomes.append(out)
        if not out.ok:
            return Report(script.script_id, script.steps[: n + 1], tuple(outcomes), "Failed", n, ())
    conclusions = tuple(c for out in outcomes for c in out.conclusions)
    return Report(script.script_id, script.steps, tuple(outcomes), "ProofComplete", None, conclusions)


# -- numeric oracle ---------------------------------------------------------


@dataclass(frozen=True)
class CrossCheck:
    passed: bool
    samples: int
    witness: Mapping[str, Fraction] | None = None
    value: Fraction | None = None


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-30, 30), rng.randint(1, 12))


def sample_point(rng: random.Random | None, symbols, rules: RewriteSystem) -> dict[DerivedSymbol, Fraction]:
    """A point with k1 != 0; on Omega, c is placed on the curvature relation.

    ``rng=None`` gives the point where every symbol is 1 (c is still tied
    to the relation on Omega).
    """
    point: dict[DerivedSymbol, Fraction] = {}
    for sym in sorted(set(symbols) | {_K1}):
        if rng is None:
            value = Fraction(1)
        else:
            value = _random_rational(rng)
            while sym == _K1 and value == 0:
                value = _random_rational(rng)
        point[sym] = value
    if rules.mode is Mode.OMEGA:
        get = lambda name: point.get(DerivedSymbol(name), Fraction(0))
        kf = Fraction(0) if "f2" in rules.zeros else get("k1") * get("f2")
        point[DerivedSymbol("c")] = get("sigma") ** 2 - kf
    return point


def evaluate_at(p: Poly, point: Mapping[DerivedSymbol, Fraction]) -> Fraction:
    total = Fraction(0)
    for mono, coeff in p.items():
        term = coeff
        for sym, e in mono.powers:
            if sym not in point:
                raise UnboundSymbol(f"no value for {sym}")
            term *= point[sym] ** e
        total += term
    return total


def evaluate(p: Poly, at: Mapping[str, Fraction | int], rules: RewriteSystem | None = None) -> Fraction:
    """Exact value of ``p`` at a point given on the base symbols.

    With ``rules``, derived symbols are first eliminated through the
    rewrite system; whatever remains must be a covered base symbol.
    """
    if rules is not None:
        p = rules.reduce(p)
    point = {DerivedSymbol(name): Fraction(v) for name, v in at.items()}
    for sym in p.symbols():
        if not sym.is_base:
            raise UnboundSymbol(f"{sym} has no value; evaluate in a mode that resolves it")
    return evaluate_at(p, point)


def numeric_cross_check(p: Poly, rules: RewriteSystem = OMEGA, samples: int = 100, seed: int = 0) -> CrossCheck:
    """Evaluate the normal form of ``p`` at ``samples`` rational points.

    The first point sets every symbol to 1; the rest are random with
    k1 != 0.  Passes iff every value is exactly zero.
    """
    normal = rules.reduce(p)
    symbols = {DerivedSymbol(b) for b in ("k1", "f2", "sigma", "c") if b not in rules.zeros}
    symbols |= normal.symbols()
    rng = random.Random(seed)
    for n in range(samples):
        point = sample_point(None if n == 0 else rng, symbols, rules)
        value = evaluate_at(normal, point)
        if value != 0:
            witness = {str(s): v for s, v in sorted(point.items()) if s in normal.symbols()}
            return CrossCheck(False, n + 1, witness, value)
    return CrossCheck(True, samples)

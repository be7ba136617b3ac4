import json
from fractions import Fraction

import pytest

from triharmonic.algebra import Poly, UnboundSymbol, coefficient_vector, substitute
from triharmonic.derivation import OMEGA, c, derive, f2, k1, sigma
from triharmonic.equations import (
    EQUATIONS,
    FIRST_E1_STEP,
    FIRST_ELIMINATION,
    REDUCED_BASIS,
    REDUCED_COEFFS,
    REDUCED_CONDITION,
    REDUCED_OVER_K1,
    SECOND_E1_STEP,
    SECOND_ELIMINATION,
)
from triharmonic.replay import (
    REPORT_SCHEMA,
    Comparison,
    InvalidRef,
    ProofScript,
    StepOutcome,
    apply_e1,
    apply_step,
    compare_up_to_scalar,
    compute,
    conclude_vanishes,
    divide_by_power,
    evaluate,
    linear_combine,
    numeric_cross_check,
    replay_script,
    substitute_curvature_relation,
    vanishing_rule,
)
from triharmonic.scripts import builtin_biharmonic_script, builtin_triharmonic_script


@pytest.fixture(scope="module")
def tri():
    return replay_script(builtin_triharmonic_script())


@pytest.fixture(scope="module")
def bi():
    return replay_script(builtin_biharmonic_script())


def given(*polys):
    return [StepOutcome(p) for p in polys]


def test_apply_e1_examples():
    out = apply_step(given(REDUCED_OVER_K1), apply_e1(0))
    # the literal derivative carries the factor 2 k1
    assert out.result == 2 * k1 * FIRST_E1_STEP
    combined = apply_step(given(FIRST_ELIMINATION, SECOND_E1_STEP), linear_combine(1, 1, -1, 0))
    halved = apply_step(given(FIRST_ELIMINATION, SECOND_E1_STEP, combined.result), divide_by_power(2, divisor=-2))
    assert halved.result == SECOND_ELIMINATION


def test_linear_combine_to_zero():
    out = apply_step(given(REDUCED_CONDITION), linear_combine(1, 0, -1, 0))
    assert out.result.is_zero() and out.comparison is Comparison.NONE


def test_compare_up_to_scalar():
    p = k1**2 - k1 * f2
    assert compare_up_to_scalar(2 * p, p) == (Comparison.SCALAR, Fraction(2), None)
    assert compare_up_to_scalar(p, p)[0] is Comparison.EXACT
    kind, _, diff = compare_up_to_scalar(p, p + k1)
    assert kind is Comparison.MISMATCH and not diff.is_zero()
    assert compare_up_to_scalar(Poly.zero(), p)[0] is Comparison.MISMATCH


def test_tri_script_reduced_condition(tri):
    reduced = tri.outcomes[1].result
    assert coefficient_vector(reduced, REDUCED_BASIS) == list(REDUCED_COEFFS)


def test_tri_script_all_expectations_match(tri):
    for step, out in zip(tri.steps, tri.outcomes):
        if step.expect:
            assert out.comparison in (Comparison.EXACT, Comparison.SCALAR), step.expect


def test_tri_script_typo_flags(tri):
    flagged = {out.paper_eq for out in tri.outcomes if out.note}
    assert flagged == {"3.11", "3.13", "3.14"}


def test_tri_sigma_c_step(tri):
    step = next(o for o in tri.outcomes if o.paper_eq == "3.17")
    assert step.result == -353 * sigma**4 - c**2


def test_tri_verdict(tri):
    assert tri.verdict == "ProofComplete"
    assert tri.conclusions == (
        "sigma = 0 on Omega", "f2 = 0 on Omega", "c = 0 on Omega",
        "k1^5 = 0 on Omega", "contradiction: k1 vanishes on Omega",
    )


def test_bi_script(bi):
    assert bi.verdict == "ProofComplete"
    by_eq = {o.paper_eq: o for o in bi.outcomes if o.paper_eq}
    assert by_eq["4.5"].result == 3 * sigma**2 - k1**2 - 3 * c
    assert by_eq["4.6"].comparison is Comparison.SCALAR
    assert compare_up_to_scalar(by_eq["4.6"].result, k1**2 - 7 * sigma**2 + c)[0] is Comparison.SCALAR
    assert by_eq["4.4"].result == k1 * (3 * sigma**2 - k1**2 - 3 * c)
    assert "contradiction: k1 vanishes on Omega" in bi.conclusions
    assert {"sigma = 0 on Omega", "c = 0 on Omega"} <= set(bi.conclusions)


def test_biharmonic_reduction_numerically():
    relation = sigma**2 - k1 * f2
    report = replay_script(builtin_biharmonic_script())
    reduced = report.outcomes[2].result
    assert numeric_cross_check(substitute(reduced, "c", relation) - report.outcomes[1].result, OMEGA, 20).passed


def test_empty_script():
    report = replay_script(ProofScript("empty", ()))
    assert report.verdict == "ProofComplete" and report.conclusions == ()
    assert report.to_dict()["steps"] == []


def test_wrong_expectation_fails_with_diff():
    script = ProofScript("bad", (compute("e1(k1)", expect="3.12"), apply_e1(0)))
    report = replay_script(script)
    assert report.verdict == "Failed" and report.failed_step == 0
    assert report.outcomes[0].diff is not None and not report.outcomes[0].diff.is_zero()
    assert len(report.steps) == 1


def test_invalid_reference():
    with pytest.raises(InvalidRef):
        ProofScript("bad", (apply_e1(0),))
    with pytest.raises(InvalidRef):
        apply_step([], apply_e1(3))


def test_conclusion_needs_a_valid_argument():
    report = replay_script(ProofScript("bad", (compute("e1(k1)"), conclude_vanishes(0, "sigma"))))
    assert report.verdict == "Failed" and report.failed_step == 1


def test_divide_failure_is_reported():
    report = replay_script(ProofScript("bad", (compute("constraint7"), divide_by_power(0, "k1"))))
    assert report.verdict == "Failed" and report.failed_step == 1


def test_vanishing_rules():
    assert vanishing_rule(-2824 * k1 * sigma**4, "sigma") == "invertible-factor"
    assert vanishing_rule(k1**2 * f2**2 + sigma**4, "f2") == "one-sign-squares"
    assert vanishing_rule(k1**2 * f2**2 - sigma**4, "f2") is None
    assert vanishing_rule(k1 * f2 * sigma, "f2") is None


def test_substitution_moves_are_sound():
    relation = sigma**2 - k1 * f2
    for p in (REDUCED_CONDITION, FIRST_ELIMINATION, k1**3 * f2**2 * c):
        assert substitute(substitute_curvature_relation(p), "c", relation) == substitute(p, "c", relation)
    for p in (REDUCED_OVER_K1, SECOND_ELIMINATION):
        # derivation commutes with the substitution on Omega
        lhs = substitute(derive(substitute_curvature_relation(p), 1, OMEGA), "c", relation)
        assert lhs == derive(p, 1, OMEGA)


def test_numeric_cross_check():
    assert numeric_cross_check(k1 * REDUCED_OVER_K1 - REDUCED_CONDITION).passed
    assert numeric_cross_check(Poly.zero()).passed
    failed = numeric_cross_check(k1)
    assert not failed.passed and failed.witness == {"k1": 1}
    assert numeric_cross_check(derive(sigma**2 - k1 * f2, 1, OMEGA), samples=100).passed


def test_evaluate():
    assert evaluate(Poly.symbol("sigma", (1,)) - 2 * k1 * sigma, {"k1": 3, "sigma": Fraction(1, 2)}, OMEGA) == 0
    with pytest.raises(UnboundSymbol):
        evaluate(Poly.symbol("sigma", (1,)), {"sigma": 1})


def test_report_schema(tri):
    doc = json.loads(tri.to_json())
    assert doc["schema"] == REPORT_SCHEMA
    assert list(doc) == ["schema", "script_id", "steps", "verdict", "failed_step", "conclusions"]
    assert list(doc["steps"][0]) == [
        "index", "kind", "action", "paper_eq", "polynomial", "comparison", "scalar", "diff", "rule", "note",
    ]
    assert doc["verdict"] == "ProofComplete"


def test_replay_is_deterministic():
    a = replay_script(builtin_triharmonic_script()).to_json()
    b = replay_script(builtin_triharmonic_script()).to_json()
    assert a == b


def test_every_expectation_id_is_registered():
    for script in (builtin_triharmonic_script(), builtin_biharmonic_script()):
        for step in script.steps:
            assert step.expect is None or step.expect in EQUATIONS

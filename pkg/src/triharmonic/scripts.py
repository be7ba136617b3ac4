"""The two built-in elimination proofs.

Both work on the set where k1 does not vanish and end by forcing k1 = 0
there.  Where the reference chain says "applying e1" the literal
derivative carries an extra factor of k1 (and a small integer), which the
scripts cancel explicitly with ``divide_by_power``.
"""

from __future__ import annotations

from fractions import Fraction

from .replay import (
    ProofScript,
    apply_e1,
    apply_laplacian,
    assert_equals_paper,
    compute,
    conclude_vanishes,
    divide_by_power,
    linear_combine,
    substitute_c,
)


def builtin_triharmonic_script() -> ProofScript:
    steps = (
        compute("tritension", expect="3.10"),                   # 0
        assert_equals_paper(0, "3.11"),                         # 1
        divide_by_power(1, "k1", 1, expect="3.12"),             # 2
        apply_e1(2),                                            # 3
        divide_by_power(3, "k1", 1, divisor=2, expect="3.13"),  # 4
        linear_combine(2, 2, -1, 4, expect="3.14"),             # 5
        apply_e1(5),                                            # 6
        divide_by_power(6, "k1", 1, divisor=2, expect="3.15"),  # 7
        linear_combine(1, 7, -1, 5),                            # 8
        divide_by_power(8, divisor=-2, expect="3.16"),          # 9
        # the step elided in print: differentiate once more and clear
        apply_e1(9),                                            # 10
        divide_by_power(10, "k1", 1, divisor=6),                # 11
        linear_combine(1, 11, -1, 9, expect="pre-3.17"),        # 12
        substitute_c(12, expect="3.17"),                        # 13
        apply_e1(13, expect="sigma^4*k1"),                      # 14
        conclude_vanishes(14, "sigma"),                         # 15
        conclude_vanishes(9, "f2"),                             # 16
        compute("constraint7"),                                 # 17
        conclude_vanishes(17, "c"),                             # 18
        compute("e1(k1)", expect="e1(k1)=k1^2"),                # 19
        compute("A_prime"),                                     # 20
        linear_combine(-1, 20, expect="3.18"),                  # 21
        apply_laplacian(21, expect="k1^5"),                     # 22
        conclude_vanishes(22, "k1"),                            # 23
    )
    return ProofScript("tri", steps, "triharmonic submersions from a 3-dimensional space form are harmonic")


def builtin_biharmonic_script() -> ProofScript:
    half = Fraction(-1, 2)
    steps = (
        compute("minus_laplacian_k1", expect="dk-a"),           # 0
        compute("bitension"),                                   # 1
        substitute_c(1, expect="4.4"),                          # 2
        divide_by_power(2, "k1", 1, expect="4.5"),              # 3
        apply_e1(3),                                            # 4
        divide_by_power(4, "k1", 1),                            # 5
        substitute_c(5, expect="4.6"),                          # 6
        linear_combine(1, 3, half, 6),                          # 7
        apply_e1(7),                                            # 8
        conclude_vanishes(8, "sigma"),                          # 9
        conclude_vanishes(7, "c"),                              # 10
        conclude_vanishes(3, "k1"),                             # 11
    )
    return ProofScript("bi", steps, "biharmonic submersions from a 3-dimensional space form are harmonic")


BUILTIN_SCRIPTS = {
    "tri": builtin_triharmonic_script,
    "bi": builtin_biharmonic_script,
}

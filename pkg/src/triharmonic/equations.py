"""Registry of reference equations the proof scripts are compared against.

Each entry holds the left-hand side minus the right-hand side as a
polynomial on the Omega set, the formula as typeset, and an optional note.
The three entries with a note carry a dropped subscript in print; their
polynomials read the bare ``k`` as ``k1``, which the recomputation confirms.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import displays
from .algebra import Poly
from .derivation import c, f2, k1, sigma


@dataclass(frozen=True)
class Equation:
    eq_id: str
    poly: Poly
    latex: str
    note: str | None = None
    # compare after eliminating c through c = sigma^2 - k1 f2
    modulo_c: bool = False


def _eq(eq_id, poly, latex, note=None, modulo_c=False):
    return eq_id, Equation(eq_id, poly, latex, note, modulo_c)


REDUCED_CONDITION = (
    -9 * k1**5 + 19 * f2 * k1**4 + (164 * sigma**2 - 9 * f2**2) * k1**3
    - 120 * sigma**2 * f2 * k1**2 - 32 * sigma**4 * k1
)
REDUCED_OVER_K1 = (
    -9 * k1**4 + 19 * f2 * k1**3 + (164 * sigma**2 - 9 * f2**2) * k1**2
    - 120 * sigma**2 * f2 * k1 - 32 * sigma**4
)
FIRST_E1_STEP = (
    -18 * k1**4 + 37 * f2 * k1**3 + (-19 * f2**2 + 530 * sigma**2) * k1**2
    - 440 * sigma**2 * f2 * k1 - 368 * sigma**4
)
FIRST_ELIMINATION = f2 * k1**3 + (-202 * sigma**2 + f2**2) * k1**2 + 200 * sigma**2 * f2 * k1 + 304 * sigma**4
SECOND_E1_STEP = f2 * k1**3 + (-(f2**2) - 604 * sigma**2) * k1**2 + 606 * sigma**2 * f2 * k1 + 1616 * sigma**4
SECOND_ELIMINATION = (201 * sigma**2 + f2**2) * k1**2 - 203 * sigma**2 * f2 * k1 - 656 * sigma**4
THIRD_ELIMINATION = -(f2**2) * k1**2 + 2 * sigma**2 * f2 * k1 - 354 * sigma**4
SIGMA_C_RELATION = -353 * sigma**4 - c**2
BIHARMONIC_REDUCED = k1 * (3 * sigma**2 - k1**2 - 3 * c)
BIHARMONIC_REDUCED_AS_PRINTED = k1**2 * (3 * sigma**2 - k1**2 - 3 * c)
BIHARMONIC_OVER_K1 = 3 * sigma**2 - k1**2 - 3 * c
BIHARMONIC_E1_STEP = k1**2 - 7 * sigma**2 + c

# Monomial basis on which the reduced triharmonic condition is reported.
REDUCED_BASIS = (k1**5, f2 * k1**4, sigma**2 * k1**3, f2**2 * k1**3, sigma**2 * f2 * k1**2, sigma**4 * k1)
REDUCED_COEFFS = (-9, 19, 164, -9, -120, -32)


EQUATIONS: dict[str, Equation] = dict([
    _eq("3.6", Poly.symbol("sigma", (1,)) - 2 * k1 * sigma, r"e_1(\sigma)=2k_1\sigma"),
    _eq("3.7", Poly.symbol("k1", (1,)) - (k1**2 - k1 * f2), r"e_1(k_1)=k^2_1-k_1f_2"),
    _eq("3.8", Poly.symbol("f2", (1,)) - (f2**2 - k1 * f2 + 4 * sigma**2), r"e_1(f_2)= f^2_2-k_1f_2+4\sigma^2"),
    _eq("3.9", displays.A_PRIME_OMEGA, r"A'=-k^3_1+2f_2k^2_1+4\sigma^2k_1"),
    _eq("3.10", displays.reduced_triharmonic_condition(),
        r"\triangle^MA'-A'(e_1(f_2))-(e_1(f_2)-f^2_2)(f_2k^2_1)=0"),
    _eq("3.11", REDUCED_CONDITION, r"-9k^5_1+19f_2k^4_1+(164\sigma^2-9f^2_2)k^3_1-120\sigma^2f_2k^2_1-32\sigma^4k=0",
        note="documented typo: trailing '-32\\sigma^4k' read as -32 sigma^4 k1"),
    _eq("3.12", REDUCED_OVER_K1, r"-9k^4_1+19f_2k^3_1+(164\sigma^2-9f^2_2)k^2_1-120\sigma^2f_2k_1-32\sigma^4=0"),
    _eq("3.13", FIRST_E1_STEP, r"-18k^4+37f_2k^3_1+(-19f^2_2+530\sigma^2)k^2_1-440\sigma^2f_2k_1-368\sigma^4=0",
        note="documented typo: leading '-18k^4' read as -18 k1^4"),
    _eq("3.14", FIRST_ELIMINATION, r"f_2k^3+(-202\sigma^2+f^2_2)k^2_1+200{\sigma}^2f_2k_1+304\sigma^4=0",
        note="documented typo: leading 'f_2k^3' read as f2 k1^3"),
    _eq("3.15", SECOND_E1_STEP, r"f_2k^3_1+(-f^2_2-604\sigma^2)k^2_1+606\sigma^2f_2k_1+1616\sigma^4=0"),
    _eq("3.16", SECOND_ELIMINATION, r"(201\sigma^2+f^2_2)k^2_1-203\sigma^2f_2k_1-656\sigma^4=0"),
    _eq("pre-3.17", THIRD_ELIMINATION, r"-f^2_2k^2_1+2\sigma^2f_2k_1-354\sigma^4=0"),
    _eq("3.17", SIGMA_C_RELATION, r"-353\sigma^4=c^2"),
    _eq("sigma^4*k1", sigma**4 * k1, r"\sigma^4k_1=0"),
    _eq("e1(k1)=k1^2", k1**2, r"e_1(k_1)=k^2_1"),
    _eq("3.18", k1**3, r"{\triangle}^Mk^3_1=0"),
    _eq("k1^5", k1**5, r"k^5_1=0"),
    _eq("dk-a", displays.MINUS_LAP_K1,
        r"-\Delta^Mk_1=5k_1\sigma^2-k_1^3-k_1c+f_2(k_1^2-\sigma^2+c)", modulo_c=True),
    _eq("4.4", BIHARMONIC_REDUCED, r"k_1^2(3\sigma^2-k_1^2-3c)=0",
        note="documented deviation: displayed with factor k_1^2, recomputation gives k_1^1; "
             "both reduce to the same equation where k1 != 0"),
    _eq("4.5", BIHARMONIC_OVER_K1, r"3\sigma^2-k_1^2-3c=0"),
    _eq("4.6", BIHARMONIC_E1_STEP, r"k_1^2=7\sigma^2-c"),
])

import random
from fractions import Fraction

from hypothesis import strategies as st

from triharmonic.algebra import DerivedSymbol, Monomial, Poly

# A pool of symbols in normal form: base fields plus a few derived ones.
GENERIC_POOL = [
    DerivedSymbol("k1"), DerivedSymbol("k2"), DerivedSymbol("f1"), DerivedSymbol("f2"),
    DerivedSymbol("sigma"), DerivedSymbol("c"),
    DerivedSymbol("k1", (1,)), DerivedSymbol("f2", (2,)), DerivedSymbol("sigma", (3,)),
    DerivedSymbol("k2", (1, 2)), DerivedSymbol("f1", (1, 3)),
]
OMEGA_POOL = [DerivedSymbol(b) for b in ("k1", "f2", "sigma", "c")]


def polys(pool=GENERIC_POOL, max_terms=4, max_exp=3):
    coeff = st.fractions(min_value=-20, max_value=20, max_denominator=6)
    mono = st.dictionaries(st.sampled_from(pool), st.integers(1, max_exp), max_size=3).map(Monomial)
    return st.dictionaries(mono, coeff, max_size=max_terms).map(Poly)


def random_poly(rng: random.Random, pool=GENERIC_POOL, max_terms=4, max_exp=3) -> Poly:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        powers = {rng.choice(pool): rng.randint(1, max_exp) for _ in range(rng.randint(0, 3))}
        terms[Monomial(powers)] = Fraction(rng.randint(-20, 20), rng.randint(1, 6))
    return Poly(terms)

"""Transcriptions of the displayed formulas the engine is checked against.

These are typed in by hand from the reference formulas and are never used
to compute anything; they are the expectations.  Derivatives are written
with ``d(i, p)`` and the Laplacian with the displayed closed form
``lap(p)``, both over the generic rewrite system unless stated.
"""

from __future__ import annotations

from .algebra import Poly
from .derivation import GENERIC, OMEGA, RewriteSystem, c, derive, f1, f2, k1, k2, sigma


def d(i: int, p: Poly, rules: RewriteSystem = GENERIC) -> Poly:
    return derive(p, i, rules)


def sym(base: str, *word: int) -> Poly:
    return Poly.symbol(base, word)


def lap(p: Poly, rules: RewriteSystem = GENERIC) -> Poly:
    """The displayed Laplacian: sum e_i e_i + f1 e2 - f2 e1 - k1 e1 - k2 e2."""
    out = sum((d(i, d(i, p, rules), rules) for i in (1, 2, 3)), Poly.zero())
    out = out + f1 * d(2, p, rules) - f2 * d(1, p, rules) - k1 * d(1, p, rules) - k2 * d(2, p, rules)
    return rules.reduce(out) if rules.zeros else out


# -- connection table: nabla_{e_i} e_j as {k: coefficient} -------------------

CONNECTION = {
    (1, 1): {2: -f1},
    (1, 2): {1: f1, 3: -sigma},
    (1, 3): {2: sigma},
    (2, 1): {2: -f2, 3: sigma},
    (2, 2): {1: f2},
    (2, 3): {1: -sigma},
    (3, 1): {3: -k1, 2: sigma},
    (3, 2): {1: -sigma, 3: -k2},
    (3, 3): {1: k1, 2: k2},
}

CONNECTION_TEXT = {
    (1, 1): "-f_1e_2",
    (1, 2): "f_1e_1-{\\sigma}e_3",
    (1, 3): "{\\sigma}e_2",
    (2, 1): "-f_2e_2+ {\\sigma}e_3",
    (2, 2): "f_2e_1",
    (2, 3): "-{\\sigma}e_1",
    (3, 1): "-k_1e_3+ {\\sigma}e_2",
    (3, 2): "-{\\sigma}e_1-k_2e_3",
    (3, 3): "k_1e_1+k_2e_2",
}

# nabla^phi_{e_i} eps_a as (eps1, eps2) components
PULLBACK = {
    (1, 1): (Poly.zero(), -f1),
    (1, 2): (f1, Poly.zero()),
    (2, 1): (Poly.zero(), -f2),
    (2, 2): (f2, Poly.zero()),
    (3, 1): (Poly.zero(), Poly.zero()),
    (3, 2): (Poly.zero(), Poly.zero()),
}

# -- curvature of the space form, left-hand sides in display order ---------

CURVATURE_LHS = [
    d(1, sigma) - 2 * k1 * sigma,
    -(-d(1, k1) - sigma**2 + k1**2),
    k1 * f1,
    -(d(2, f1) - d(1, f2) + f1**2 + f2**2 + 3 * sigma**2),
    d(2, sigma),
    d(2, k1),
    -(-(sigma**2) + k1 * f2),
]
CURVATURE_RHS = [0, "c", 0, "c", 0, 0, "c"]
CURVATURE_LABELS = ["R_1312", "R_1313", "R_1323", "R_1212", "R_1223", "R_2313", "R_2323"]


def gaussian_curvature() -> Poly:
    return d(1, f2) - d(2, f1) - f1**2 - f2**2


def tension() -> tuple[Poly, Poly]:
    return (-k1, -k2)


def A() -> Poly:
    return (
        -lap(k1) - f1 * d(1, k2) - d(1, k2 * f1) - f2 * d(2, k2) - d(2, k2 * f2)
        + k1 * k2 * f1 + f2 * k2**2 + k1 * f1**2 + k1 * f2**2
    )


def B() -> Poly:
    return (
        -lap(k2) + f1 * d(1, k1) + d(1, k1 * f1) + f2 * d(2, k1) + d(2, k1 * f2)
        - k1 * k2 * f2 - f1 * k1**2 + k2 * f1**2 + k2 * f2**2
    )


def jacobi_of_rough_laplacian() -> tuple[Poly, Poly]:
    a, b, kn = A(), B(), gaussian_curvature()
    first = (
        lap(a) + f1 * d(1, b) + d(1, b * f1) + f2 * d(2, b) + d(2, b * f2)
        - f1 * k1 * b - k2 * f2 * b - a * (f1**2 + f2**2) - a * kn
    )
    second = (
        lap(b) - f1 * d(1, a) - d(1, a * f1) - f2 * d(2, a) - d(2, a * f2)
        + f1 * k1 * a + f2 * k2 * a - b * (f1**2 + f2**2) - b * kn
    )
    return first, second


def curvature_correction() -> tuple[Poly, Poly]:
    kn = gaussian_curvature()
    first = kn * (-d(2, k1) * k2 + d(2, k2) * k1 - k1**2 * f2 - k2**2 * f2)
    second = kn * (d(1, k1) * k2 - d(1, k2) * k1 + k1**2 * f1 + k2**2 * f1)
    return first, second


def tritension_system() -> tuple[Poly, Poly]:
    """The two left-hand sides whose vanishing characterises triharmonicity."""
    a, b, kn = A(), B(), gaussian_curvature()
    first = (
        lap(a) + f1 * d(1, b) + d(1, b * f1) + f2 * d(2, b) + d(2, b * f2) - f1 * k1 * b - k2 * f2 * b
        - a * (kn + f1**2 + f2**2)
        + kn * (-d(2, k1) * k2 + d(2, k2) * k1 - k1**2 * f2 - k2**2 * f2)
    )
    second = (
        lap(b) - f1 * d(1, a) - d(1, a * f1) - f2 * d(2, a) - d(2, a * f2) + f1 * k1 * a + f2 * k2 * a
        - b * (kn + f1**2 + f2**2)
        + kn * (d(1, k1) * k2 - d(1, k2) * k1 + f1 * k2**2 + f1 * k1**2)
    )
    return first, second


# -- the k2 = 0 specialisation ---------------------------------------------


def A_prime() -> Poly:
    return -lap(k1) + k1 * f1**2 + k1 * f2**2


def B_prime() -> Poly:
    return f1 * d(1, k1) + d(1, k1 * f1) + f2 * d(2, k1) + d(2, k1 * f2) - f1 * k1**2


def tritension_system_k2_zero() -> tuple[Poly, Poly]:
    a, b, kn = A_prime(), B_prime(), gaussian_curvature()
    first = (
        lap(a) + f1 * d(1, b) + d(1, b * f1) + f2 * d(2, b) + d(2, b * f2) - f1 * k1 * b
        - a * (kn + f1**2 + f2**2) - kn * (k1**2 * f2)
    )
    second = (
        lap(b) - f1 * d(1, a) - d(1, a * f1) - f2 * d(2, a) - d(2, a * f2) + f1 * k1 * a
        - b * (kn + f1**2 + f2**2) + kn * (k1**2 * f1)
    )
    return first, second


def bitension_system_k2_zero() -> tuple[Poly, Poly]:
    kn = gaussian_curvature()
    first = -lap(k1) + k1 * (-kn + f1**2 + f2**2)
    second = f1 * d(1, k1) + d(1, k1 * f1) + f2 * d(2, k1) + d(2, k1 * f2) - k1**2 * f1
    return first, second


# -- Omega-set facts -------------------------------------------------------

E1_SIGMA = 2 * k1 * sigma
E1_K1 = k1**2 - k1 * f2
E1_F2 = f2**2 - k1 * f2 + 4 * sigma**2
A_PRIME_OMEGA = -(k1**3) + 2 * f2 * k1**2 + 4 * sigma**2 * k1
E1_A_PRIME = -3 * k1**4 + 5 * f2 * k1**3 + (-2 * f2**2 + 28 * sigma**2) * k1**2 - 4 * sigma**2 * f2 * k1
E1E1_A_PRIME = (
    -12 * k1**5 + 22 * f2 * k1**4 + (-10 * f2**2 + 188 * sigma**2) * k1**3
    - 88 * sigma**2 * f2 * k1**2 - 16 * sigma**4 * k1
)
# -Delta k1 on Omega, written with c kept explicit
MINUS_LAP_K1 = 5 * k1 * sigma**2 - k1**3 - k1 * c + f2 * (k1**2 - sigma**2 + c)


def reduced_triharmonic_condition() -> Poly:
    """Delta A' - A' e1(f2) - (e1(f2) - f2^2) f2 k1^2 on Omega."""
    a = A_PRIME_OMEGA
    return lap(a, OMEGA) - a * E1_F2 - (E1_F2 - f2**2) * (f2 * k1**2)

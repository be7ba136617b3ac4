"""Geometry of a Riemannian submersion from a 3-manifold onto a surface.

Everything is computed in the adapted orthonormal frame ``e1, e2, e3``
(``e3`` vertical) and the orthonormal frame ``eps1, eps2`` of the target
surface.  Connections come from the Koszul formula, curvatures from the
definition ``R(X, Y) = [nabla_X, nabla_Y] - nabla_[X, Y]``, and the tension,
bitension and tritension fields from their definitions as sections along
the map.  Nothing here is transcribed from a closed formula; the displayed
formulas live in :mod:`triharmonic.displays` and are compared against.

Curvature index convention: ``R_{ijkl} = <R(e_i, e_j) e_l, e_k>``.  With it
the sectional curvature of the plane ``e_i, e_j`` is ``R_{ijij}``, which is
the placement that makes the computed ``R_{1313}`` agree with
``-[-e1(k1) - sigma^2 + k1^2]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .algebra import Poly, render, substitute_many
from .derivation import BRACKETS, GENERIC, Mode, RewriteSystem, c, derive, f1, f2

ConnectionTable = dict[tuple[int, int], dict[int, Poly]]


@dataclass(frozen=True)
class FrameAlgebra:
    """Structure coefficients ``c[(i, j)][k]`` of ``[e_i, e_j] = sum_k c_ij^k e_k``."""

    dim: int
    coeffs: Mapping[tuple[int, int], Mapping[int, Poly]]

    @classmethod
    def from_upper(cls, dim: int, upper: Mapping[tuple[int, int], Mapping[int, Poly]]) -> FrameAlgebra:
        """Build from the brackets with ``i < j``; the rest follow by antisymmetry."""
        coeffs: dict[tuple[int, int], dict[int, Poly]] = {}
        for i, j in itertools.product(range(1, dim + 1), repeat=2):
            coeffs[(i, j)] = {}
        for (i, j), row in upper.items():
            if i >= j:
                raise ValueError("pass brackets with i < j only")
            for k, v in row.items():
                if not v.is_zero():
                    coeffs[(i, j)][k] = v
                    coeffs[(j, i)][k] = -v
        return cls(dim, coeffs)

    @classmethod
    def adapted(cls) -> FrameAlgebra:
        """The bracket relations of the adapted frame."""
        return cls.from_upper(3, BRACKETS)

    @property
    def indices(self) -> range:
        return range(1, self.dim + 1)

    def c(self, i: int, j: int, k: int) -> Poly:
        return self.coeffs[(i, j)].get(k, Poly.zero())

    def is_antisymmetric(self) -> bool:
        return all(
            self.c(i, j, k) == -self.c(j, i, k)
            for i, j, k in itertools.product(self.indices, repeat=3)
        )


def koszul_connection(fa: FrameAlgebra) -> ConnectionTable:
    """Levi-Civita connection of an orthonormal frame.

    ``table[(i, j)][k]`` is the coefficient of ``e_k`` in ``nabla_{e_i} e_j``;
    for an orthonormal frame the Koszul formula leaves only bracket terms:
    ``(c_ij^k - c_ik^j - c_jk^i) / 2``.
    """
    if not fa.is_antisymmetric():
        raise ValueError("structure coefficients must be antisymmetric in i, j")
    table: ConnectionTable = {}
    for i, j in itertools.product(fa.indices, repeat=2):
        row = {}
        for k in fa.indices:
            val = (fa.c(i, j, k) - fa.c(i, k, j) - fa.c(j, k, i)) * Fraction(1, 2)
            if not val.is_zero():
                row[k] = val
        table[(i, j)] = row
    return table


def gamma(conn: ConnectionTable, i: int, j: int, k: int) -> Poly:
    return conn[(i, j)].get(k, Poly.zero())


# -- vector fields on M as coefficient maps --------------------------------

def _covariant(conn: ConnectionTable, i: int, field: Mapping[int, Poly], dim: int, rules: RewriteSystem) -> dict[int, Poly]:
    """``nabla_{e_i}`` of the vector field ``sum_j field[j] e_j``."""
    out = {k: Poly.zero() for k in range(1, dim + 1)}
    for j, a in field.items():
        out[j] = out[j] + derive(a, i, rules)
        for k, g in conn[(i, j)].items():
            out[k] = out[k] + a * g
    return out


def _covariant_along(conn: ConnectionTable, direction: Mapping[int, Poly], field: Mapping[int, Poly], dim: int, rules: RewriteSystem) -> dict[int, Poly]:
    out = {k: Poly.zero() for k in range(1, dim + 1)}
    for i, w in direction.items():
        for k, v in _covariant(conn, i, field, dim, rules).items():
            out[k] = out[k] + w * v
    return out


def curvature_operator(conn: ConnectionTable, fa: FrameAlgebra, i: int, j: int, k: int, rules: RewriteSystem = GENERIC) -> dict[int, Poly]:
    """Components of ``R(e_i, e_j) e_k``."""
    dim = fa.dim
    ek = {k: Poly.one()}
    left = _covariant(conn, i, _covariant(conn, j, ek, dim, rules), dim, rules)
    right = _covariant(conn, j, _covariant(conn, i, ek, dim, rules), dim, rules)
    bracket = {m: fa.c(i, j, m) for m in fa.indices}
    corr = _covariant_along(conn, bracket, ek, dim, rules)
    return {m: left[m] - right[m] - corr[m] for m in fa.indices}


def curvature_component(conn: ConnectionTable, fa: FrameAlgebra, i: int, j: int, k: int, l: int, rules: RewriteSystem = GENERIC) -> Poly:
    """``R_{ijkl} = <R(e_i, e_j) e_l, e_k>``."""
    return curvature_operator(conn, fa, i, j, l, rules)[k]


def curvature_components(conn: ConnectionTable, fa: FrameAlgebra, rules: RewriteSystem = GENERIC) -> dict[tuple[int, int, int, int], Poly]:
    out = {}
    for i, j, l in itertools.product(fa.indices, repeat=3):
        vec = curvature_operator(conn, fa, i, j, l, rules)
        for k in fa.indices:
            out[(i, j, k, l)] = vec[k]
    return out


def frame_jacobi(fa: FrameAlgebra, rules: RewriteSystem = GENERIC) -> list[Poly]:
    """Nonzero components of the cyclic sums ``[[e_i, e_j], e_k] + ...``.

    A frame of vector fields has all of these vanish.  When the structure
    functions are free symbols they are the integrability conditions the
    curvature identities hold modulo.
    """
    out = []
    for i, j, k in itertools.combinations(fa.indices, 3):
        total = {m: Poly.zero() for m in fa.indices}
        for a, b, e in ((i, j, k), (j, k, i), (k, i, j)):
            # [sum_m c_ab^m e_m, e_e] = sum_m c_ab^m [e_m, e_e] - e_e(c_ab^m) e_m
            for m, g in fa.coeffs[(a, b)].items():
                for n in fa.indices:
                    total[n] = total[n] + g * fa.c(m, e, n)
                total[m] = total[m] - derive(g, e, rules)
        out.extend(p for p in total.values() if not p.is_zero())
    return out


# The seven components pinned down by constant curvature, in display order.
SPACE_FORM_INDICES = (
    (1, 3, 1, 2),
    (1, 3, 1, 3),
    (1, 3, 2, 3),
    (1, 2, 1, 2),
    (1, 2, 2, 3),
    (2, 3, 1, 3),
    (2, 3, 2, 3),
)
# Constant curvature c means R_ijkl = c for the sectional entries, 0 otherwise.
SPACE_FORM_VALUES = (0, "c", 0, "c", 0, 0, "c")


def adapted_rules() -> RewriteSystem:
    """Generic derivations restricted by the space-form facts that hold on all of M.

    e3 kills every field and the frame is chosen with k2 = 0.  Nothing
    depending on k1 being invertible is used.
    """
    rules = {(b, 3): Poly.zero() for b in ("k1", "f1", "f2", "sigma")}
    return RewriteSystem(Mode.GENERIC, tuple(sorted(rules.items())), frozenset({"k2"}))


ADAPTED = adapted_rules()


def space_form_curvature() -> list[Poly]:
    """The seven curvature components of the adapted frame, with e3 killing fields and k2 = 0."""
    fa = FrameAlgebra.adapted()
    conn = koszul_connection(fa)
    return [ADAPTED.reduce(curvature_component(conn, fa, *idx)) for idx in SPACE_FORM_INDICES]


def space_form_constraints() -> list[Poly]:
    """Polynomials whose simultaneous vanishing says M has constant curvature c."""
    out = []
    for comp, val in zip(space_form_curvature(), SPACE_FORM_VALUES):
        out.append(comp - c if val == "c" else comp)
    return out


# -- sections along the submersion -----------------------------------------


@dataclass(frozen=True)
class Section:
    """A vector field ``comp1 * eps1 + comp2 * eps2`` along the map."""

    comp1: Poly
    comp2: Poly

    @classmethod
    def zero(cls) -> Section:
        return cls(Poly.zero(), Poly.zero())

    def components(self) -> tuple[Poly, Poly]:
        return (self.comp1, self.comp2)

    def __getitem__(self, a: int) -> Poly:
        return (self.comp1, self.comp2)[a - 1]

    def __add__(self, other: Section) -> Section:
        return Section(self.comp1 + other.comp1, self.comp2 + other.comp2)

    def __sub__(self, other: Section) -> Section:
        return Section(self.comp1 - other.comp1, self.comp2 - other.comp2)

    def __neg__(self) -> Section:
        return Section(-self.comp1, -self.comp2)

    def scale(self, p: Poly) -> Section:
        return Section(p * self.comp1, p * self.comp2)

    def map(self, fn) -> Section:
        return Section(fn(self.comp1), fn(self.comp2))

    def is_zero(self) -> bool:
        return self.comp1.is_zero() and self.comp2.is_zero()

    def dot(self, other: Section) -> Poly:
        return self.comp1 * other.comp1 + self.comp2 * other.comp2

    def render(self) -> str:
        parts = []
        for name, comp in (("eps1", self.comp1), ("eps2", self.comp2)):
            if comp.is_zero():
                continue
            if len(comp) == 1:
                text = render(comp)
                if text in ("1", "-1"):
                    text = text[:-1] + name
                else:
                    text = f"{text}*{name}"
            else:
                text = f"({render(comp)})*{name}"
            parts.append(text)
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def target_frame_algebra() -> FrameAlgebra:
    """``[eps1, eps2] = F1 eps1 + F2 eps2`` pulled back to ``f1, f2``."""
    return FrameAlgebra.from_upper(2, {(1, 2): {1: f1, 2: f2}})


def pullback_connection() -> dict[tuple[int, int], Section]:
    """``nabla^phi_{e_i} eps_a`` for i in 1..3, a in 1..2.

    The horizontal frame vectors map to ``eps1, eps2``; ``e3`` maps to zero,
    so ``nabla^phi_{e3}`` vanishes on the frame.
    """
    target = koszul_connection(target_frame_algebra())
    out = {}
    for i in (1, 2, 3):
        for a in (1, 2):
            if i == 3:
                out[(i, a)] = Section.zero()
            else:
                row = target[(i, a)]
                out[(i, a)] = Section(row.get(1, Poly.zero()), row.get(2, Poly.zero()))
    return out


_PULLBACK = None


def _pullback() -> dict[tuple[int, int], Section]:
    global _PULLBACK
    if _PULLBACK is None:
        _PULLBACK = pullback_connection()
    return _PULLBACK


def covariant_section(i: int, s: Section, rules: RewriteSystem = GENERIC) -> Section:
    """``nabla^phi_{e_i} s``."""
    pb = _pullback()
    out = Section(derive(s.comp1, i, rules), derive(s.comp2, i, rules))
    return out + pb[(i, 1)].scale(s.comp1) + pb[(i, 2)].scale(s.comp2)


def rough_laplacian(s: Section, rules: RewriteSystem = GENERIC) -> Section:
    """``sum_i nabla_{e_i} nabla_{e_i} s - nabla_{nabla_{e_i} e_i} s``."""
    conn = koszul_connection(FrameAlgebra.adapted())
    out = Section.zero()
    for i in (1, 2, 3):
        out = out + covariant_section(i, covariant_section(i, s, rules), rules)
        for k, g in conn[(i, i)].items():
            out = out - covariant_section(k, s, rules).scale(g)
    return _reduce_section(out, rules)


def _reduce_section(s: Section, rules: RewriteSystem) -> Section:
    if rules.zeros or rules.rules:
        return s.map(rules.reduce)
    return s


def dphi(i: int) -> Section:
    """Image of ``e_i`` under the differential of the submersion."""
    return {1: Section(Poly.one(), Poly.zero()), 2: Section(Poly.zero(), Poly.one())}.get(i, Section.zero())


def gaussian_curvature(rules: RewriteSystem = GENERIC) -> Poly:
    """Curvature of the target surface pulled back: ``<R(eps1, eps2) eps2, eps1>``.

    Computed from the pullback connection along ``e1, e2``, whose bracket
    projects to ``[eps1, eps2]``.
    """
    eps2 = Section(Poly.zero(), Poly.one())
    a = covariant_section(1, covariant_section(2, eps2, rules), rules)
    b = covariant_section(2, covariant_section(1, eps2, rules), rules)
    corr = Section.zero()
    for m, w in BRACKETS[(1, 2)].items():
        corr = corr + covariant_section(m, eps2, rules).scale(w)
    out = (a - b - corr).comp1
    return rules.reduce(out) if (rules.zeros or rules.rules) else out


def target_curvature(x: Section, y: Section, z: Section, kn: Poly) -> Section:
    """``R^N(X, Y) Z = K (<Y, Z> X - <X, Z> Y)`` on a surface."""
    return x.scale(kn * y.dot(z)) - y.scale(kn * x.dot(z))


def tension_field() -> Section:
    """Trace of the second fundamental form, ``sum_i nabla^phi_{e_i} dphi(e_i) - dphi(nabla_{e_i} e_i)``."""
    conn = koszul_connection(FrameAlgebra.adapted())
    out = Section.zero()
    for i in (1, 2, 3):
        out = out + covariant_section(i, dphi(i))
        for k, g in conn[(i, i)].items():
            out = out - dphi(k).scale(g)
    return out


def jacobi(v: Section, rules: RewriteSystem = GENERIC) -> Section:
    """``J(V) = rough_laplacian(V) - sum_i R^N(V, dphi e_i) dphi e_i``."""
    kn = gaussian_curvature(rules)
    out = rough_laplacian(v, rules)
    for i in (1, 2, 3):
        out = out - target_curvature(v, dphi(i), dphi(i), kn)
    return _reduce_section(out, rules)


def curvature_correction(tau: Section, rules: RewriteSystem = GENERIC) -> Section:
    """``- sum_i R^N(nabla_{e_i} tau, tau) dphi e_i``."""
    kn = gaussian_curvature(rules)
    out = Section.zero()
    for i in (1, 2, 3):
        out = out - target_curvature(covariant_section(i, tau, rules), tau, dphi(i), kn)
    return _reduce_section(out, rules)


def bitension_field(rules: RewriteSystem = GENERIC) -> Section:
    """``rough_laplacian(tau) - sum_i R^N(dphi e_i, tau) dphi e_i``.

    This is the usual bitension field.  Its curvature trace has the opposite
    sign to the one in :func:`jacobi`, which follows the convention used to
    build the tritension field.
    """
    tau = _reduce_section(tension_field(), rules)
    kn = gaussian_curvature(rules)
    out = rough_laplacian(tau, rules)
    for i in (1, 2, 3):
        out = out - target_curvature(dphi(i), tau, dphi(i), kn)
    return _reduce_section(out, rules)


def tritension_field(rules: RewriteSystem = GENERIC) -> Section:
    """``J(rough_laplacian(tau)) - sum_i R^N(nabla_{e_i} tau, tau) dphi e_i``."""
    tau = _reduce_section(tension_field(), rules)
    return jacobi(rough_laplacian(tau, rules), rules) + curvature_correction(tau, rules)


def tritension_components(rules: RewriteSystem = GENERIC) -> tuple[Poly, Poly]:
    return tritension_field(rules).components()


def bitension_components(rules: RewriteSystem = GENERIC) -> tuple[Poly, Poly]:
    """Components of the bitension field for a frame with k2 = 0."""
    return specialize_k2_zero(bitension_field(rules).components())


def specialize_k2_zero(system):
    """Set k2 and all of its derivatives to zero."""
    out = tuple(_kill_base(p, "k2") for p in system)
    return out


def _kill_base(p: Poly, base: str) -> Poly:
    mapping = {s: 0 for s in p.symbols() if s.base == base}
    return substitute_many(p, mapping)

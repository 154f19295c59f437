"""Number-theoretic facts for quadratic fields and their Q(i)-extensions.

Covers: discriminants and integral bases of Q(sqrt(m)); relative
discriminants of K = Q(i)(sqrt(m)) over Q(i) together with the tower
identity d_{L/F} = N_{K/F}(d_{L/K}) d_{K/F}^n used to cross-check them;
class-number-one lookup tables; the Dirichlet unit rank r + s - 1; and
integrality tests against the known integral bases (these are lookup and
case-split results, not general algorithms).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .fields import FieldElem, TowerSpec, is_square_free, tower

# class-number-one tables for Q(sqrt(-m)) and Q(i)(sqrt(m)), m > 0 square-free
IMAG_QUAD_H1 = frozenset({1, 2, 3, 7, 11, 19, 43, 67, 163})
QI_EXT_H1 = frozenset({2, 3, 5, 7, 11, 13, 19, 37, 43, 67, 163})


@dataclass(frozen=True)
class QuadFieldInfo:
    m: int
    disc: int
    basis_desc: str
    basis: tuple            # FieldElems over tower(None, m)
    h_is_one: Optional[bool]


def quad_field_info(m: int) -> QuadFieldInfo:
    """Discriminant and integral basis of Q(sqrt(m)) for square-free m.

    disc = m and basis {1, (1+sqrt(m))/2} when m = 1 mod 4, else disc = 4m
    and basis {1, sqrt(m)}.
    """
    if not isinstance(m, int) or not is_square_free(m) or m == 1:
        raise ValueError(f"m={m} must be a square-free integer other than 0, 1")
    tw = tower(None, m)
    one = tw.one()
    if m % 4 == 1:
        disc = m
        omega = tw.elem((Fraction(1, 2), Fraction(1, 2)))
        desc = "{1, (1+sqrt(m))/2}"
    else:
        disc = 4 * m
        omega = tw.ext_gen()
        desc = "{1, sqrt(m)}"
    h1 = (-m in IMAG_QUAD_H1) if m < 0 else None
    return QuadFieldInfo(m, disc, desc, (one, omega), h1)


def abs_disc_over_Qi(m: int) -> int:
    """|d_K| for K = Q(i)(sqrt(m)): 16 m^2 when m = 1,3 mod 4, 64 m^2 when m = 2 mod 4."""
    if not is_square_free(m):
        raise ValueError(f"m={m} must be square-free and nonzero")
    if m % 4 in (1, 3):
        return 16 * m * m
    return 64 * m * m


def rel_disc_over_Qi(m: int) -> int:
    """|d_{K/Q(i)}| for K = Q(i)(sqrt(m)): |m| when m = 1,3 mod 4, 2|m| when m = 2 mod 4.

    Cross-checked against the tower identity: with n = [Q(i):Q] = 2 and
    d_{Q(i)} = -4, |d_K| = |N(d_{K/Q(i)})| * 16 and the relative
    discriminant is a rational integer here, so |d_K| = rel^2 * 16.
    """
    if not is_square_free(m):
        raise ValueError(f"m={m} must be square-free and nonzero")
    rel = abs(m) if m % 4 in (1, 3) else 2 * abs(m)
    assert rel * rel * 16 == abs_disc_over_Qi(m), "tower discriminant identity failed"
    return rel


def class_number_is_one(kind: str, m: int) -> bool:
    """Table lookup: kind 'imag_quad' answers for Q(sqrt(-m)), kind 'qi_ext'
    for Q(i)(sqrt(m)); m must be positive and square-free in both cases."""
    if not isinstance(m, int) or m <= 0 or not is_square_free(m):
        raise ValueError(f"m={m} outside the tabulated domain (positive square-free)")
    if kind == "imag_quad":
        return m in IMAG_QUAD_H1
    if kind == "qi_ext":
        return m in QI_EXT_H1
    raise ValueError(f"unknown field kind {kind!r}")


def unit_rank(r: int, s: int) -> int:
    """Rank of the unit group modulo roots of unity: r + s - 1."""
    if r < 0 or s < 0 or (r == 0 and s == 0):
        raise ValueError("need r + 2s >= 1 with nonnegative r, s")
    return r + s - 1


# -- integrality against known integral bases ----------------------------------


@dataclass(frozen=True)
class IntegralityBasis:
    """Basis {1, omega} of the ring of integers, over Z (quadratic case)
    or over Z[i] (relative case for Q(i)(sqrt(m)) with tabulated m)."""

    tower: TowerSpec
    omega: FieldElem
    over_gaussian: bool

    def coefficients(self, x: FieldElem):
        """Solve x = g0 + g1*omega; returns (g0, g1) as rational or Gaussian pairs."""
        if x.tower != self.tower:
            raise ValueError("tower mismatch")
        tw = self.tower
        if not self.over_gaussian:
            w1 = self.omega.coords[1]
            g1 = x.coords[1] / w1
            g0 = x.coords[0] - g1 * self.omega.coords[0]
            return g0, g1
        # relative case: split coords into Gaussian pairs (base, ext)
        xb, xe = (x.coords[0], x.coords[1]), (x.coords[2], x.coords[3])
        wb, we = (self.omega.coords[0], self.omega.coords[1]), (self.omega.coords[2], self.omega.coords[3])
        g1 = _gauss_div(xe, we)
        g0 = _gauss_sub(xb, _gauss_mul(g1, wb))
        return g0, g1

    def is_integral(self, x: FieldElem) -> bool:
        g0, g1 = self.coefficients(x)
        if not self.over_gaussian:
            return g0.denominator == 1 and g1.denominator == 1
        return all(c.denominator == 1 for c in (*g0, *g1))


def _gauss_mul(z, w):
    return (z[0] * w[0] - z[1] * w[1], z[0] * w[1] + z[1] * w[0])


def _gauss_sub(z, w):
    return (z[0] - w[0], z[1] - w[1])


def _gauss_div(z, w):
    n = w[0] * w[0] + w[1] * w[1]
    if n == 0:
        raise ZeroDivisionError("division by zero Gaussian number")
    conj = (w[0], -w[1])
    p = _gauss_mul(z, conj)
    return (p[0] / n, p[1] / n)


# relative integral bases over Z[i], keyed by the extension parameter a:
# omega = (1+sqrt(5))/2, zeta_8 = (1+i)/sqrt(2), zeta_3 = (-1+i sqrt(3))/2
_REL_OMEGA_COORDS = {
    (Fraction(5), Fraction(0)): (Fraction(1, 2), 0, Fraction(1, 2), 0),
    (Fraction(2), Fraction(0)): (0, 0, Fraction(1, 2), Fraction(1, 2)),
    (Fraction(3), Fraction(0)): (Fraction(-1, 2), 0, 0, Fraction(1, 2)),
    (Fraction(0), Fraction(1)): (0, 0, 1, 0),  # a = i: O = Z[zeta_8], omega = sqrt(a)
}


def integrality_basis(tw: TowerSpec) -> Optional[IntegralityBasis]:
    """The known integral basis for this tower, or None when not tabulated."""
    if tw.dim == 2:
        if tw.m is not None:
            g = tw.m
        else:
            a = tw.a[0]
            if a.denominator != 1:
                return None
            g = int(a)
        if not is_square_free(g) or g == 1:
            return None
        if g % 4 == 1:
            omega = tw.elem((Fraction(1, 2), Fraction(1, 2)))
        else:
            omega = tw.elem((0, 1))
        return IntegralityBasis(tw, omega, over_gaussian=False)
    if tw.dim == 4 and tw.m == -1:
        coords = _REL_OMEGA_COORDS.get(tw.a)
        if coords is not None:
            return IntegralityBasis(tw, tw.elem(coords), over_gaussian=True)
    return None


def is_integral(x: FieldElem) -> Optional[bool]:
    """True/False against a known integral basis; None when undecidable here.

    Integer coordinates over the power basis are always sufficient, so the
    fallback can still certify integrality without a tabulated basis.
    """
    if x.tower.dim == 1:
        return x.coords[0].denominator == 1
    basis = integrality_basis(x.tower)
    if basis is not None:
        return basis.is_integral(x)
    if all(c.denominator == 1 for c in x.coords):
        return True
    return None

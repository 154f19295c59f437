"""The Cayley-Dickson double Cay(K, b) of a quadratic extension K/F.

K x K becomes a unital F-algebra under

    (u, v) (u', v') = (u u' + b v' sigma(v),  sigma(u) v' + u' v)

with unit (1, 0) and j = (0, 1), j^2 = b.  For b in F this is the classical
(associative) quaternion algebra (a, b)_F; for b in K \\ F the multiplication
is no longer associative (not even third-power associative) but the algebra
is always a division algebra with nucleus K.  This module implements the
multiplication, involution and norm form, exact associator and nucleus
computations, and division checks for both cases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .fields import DEFAULT_TOL, FieldElem, TowerSpec


@dataclass(frozen=True, slots=True)
class AlgebraSpec:
    """Doubling data: the tower giving K/F and the scalar b in K, b != 0."""

    tower: TowerSpec
    b: FieldElem

    def __post_init__(self):
        if not self.tower.has_extension:
            raise ValueError("the doubled field K must be a quadratic extension of F")
        if self.b.tower != self.tower:
            raise ValueError("scalar b must live in the tower's top field")
        if not self.b:
            raise ValueError("scalar b must be nonzero")

    @property
    def nonassociative(self) -> bool:
        return not self.b.is_in_base()

    def one(self) -> "AlgElem":
        return AlgElem(self.tower.one(), self.tower.zero())

    def zero(self) -> "AlgElem":
        return AlgElem(self.tower.zero(), self.tower.zero())

    def j(self) -> "AlgElem":
        return AlgElem(self.tower.zero(), self.tower.one())

    def basis(self) -> list:
        """The F-basis {1, i, j, ji} with i = sqrt(a), i^2 = a, j^2 = b."""
        one, zero = self.tower.one(), self.tower.zero()
        i = self.tower.ext_gen()
        return [AlgElem(one, zero), AlgElem(i, zero), AlgElem(zero, one), AlgElem(zero, i)]


@dataclass(frozen=True, slots=True)
class AlgElem:
    """Pair (u, v) in K x K, representing u + j*v."""

    u: FieldElem
    v: FieldElem

    def __add__(self, other: "AlgElem") -> "AlgElem":
        return AlgElem(self.u + other.u, self.v + other.v)

    def __sub__(self, other: "AlgElem") -> "AlgElem":
        return AlgElem(self.u - other.u, self.v - other.v)

    def __neg__(self) -> "AlgElem":
        return AlgElem(-self.u, -self.v)

    def __bool__(self) -> bool:
        return bool(self.u) or bool(self.v)

    def scale(self, c) -> "AlgElem":
        """Multiplication by a scalar from K (acting on the left)."""
        return AlgElem(self.u * c, self.v * c)

    def __str__(self):
        return f"({self.u}, {self.v})"


def from_quat_coords(spec: AlgebraSpec, q0, q1, q2, q3) -> AlgElem:
    """Element q0 + i q1 + j q2 + ji q3 with q_l in F."""
    tw = spec.tower
    i = tw.ext_gen()
    u = tw.from_base_coords(_as_base(tw, q0)) + i * tw.from_base_coords(_as_base(tw, q1))
    v = tw.from_base_coords(_as_base(tw, q2)) + i * tw.from_base_coords(_as_base(tw, q3))
    return AlgElem(u, v)


def _as_base(tw: TowerSpec, q):
    if isinstance(q, FieldElem):
        return q.base_coords()
    if tw.base_dim == 1:
        return (Fraction(q),)
    return (Fraction(q), Fraction(0))


def multiply(spec: AlgebraSpec, x: AlgElem, y: AlgElem) -> AlgElem:
    """The doubling product (u,v)(u',v') = (uu' + b v' sigma(v), sigma(u) v' + u' v)."""
    u, v = x.u, x.v
    up, vp = y.u, y.v
    return AlgElem(
        u * up + spec.b * vp * v.galois_conj(),
        u.galois_conj() * vp + up * v,
    )


def conjugate(spec: AlgebraSpec, x: AlgElem) -> AlgElem:
    """The involution (u, v) -> (sigma(u), -v)."""
    return AlgElem(x.u.galois_conj(), -x.v)


def algebra_norm(spec: AlgebraSpec, x: AlgElem) -> FieldElem:
    """Norm form N(u + jv) = N_{K/F}(u) - b N_{K/F}(v); lands in F iff b does."""
    return x.u.rel_norm() - spec.b * x.v.rel_norm()


def associator(spec: AlgebraSpec, x: AlgElem, y: AlgElem, z: AlgElem) -> AlgElem:
    """[x, y, z] = (xy)z - x(yz)."""
    return multiply(spec, multiply(spec, x, y), z) - multiply(spec, x, multiply(spec, y, z))


def in_left_nucleus(spec: AlgebraSpec, x: AlgElem) -> bool:
    basis = spec.basis()
    return all(not associator(spec, x, e, f) for e in basis for f in basis)


def in_middle_nucleus(spec: AlgebraSpec, x: AlgElem) -> bool:
    basis = spec.basis()
    return all(not associator(spec, e, x, f) for e in basis for f in basis)


def in_right_nucleus(spec: AlgebraSpec, x: AlgElem) -> bool:
    basis = spec.basis()
    return all(not associator(spec, e, f, x) for e in basis for f in basis)


def in_nucleus(spec: AlgebraSpec, x: AlgElem) -> bool:
    """Exact nucleus membership.

    The associator is trilinear, so vanishing on the basis {1, i, j, ji} in
    the two free slots decides membership for all of A.
    """
    return in_left_nucleus(spec, x) and in_middle_nucleus(spec, x) and in_right_nucleus(spec, x)


def is_division(spec: AlgebraSpec, num_bound: int = 12, den_bound: int = 4,
                cap: int = 2_000_000):
    """Tri-state division check: returns ("yes" | "no" | "unknown", witness).

    Nonassociative doubles (b outside F) are always division algebras.  For
    b in F the algebra is division iff b is not a relative norm from K; we
    run a bounded search for x in K with N_{K/F}(x) = b over coordinates
    c/q with |c| <= num_bound and 1 <= q <= den_bound (at most `cap`
    candidates).  A found witness proves "no"; exhaustion yields "unknown",
    except for the scalar i over Q(i)(sqrt(5)), whose double is the known
    quaternion division algebra behind the Golden code.
    """
    if spec.nonassociative:
        return "yes", None
    tw = spec.tower
    if tw.m == -1 and tw.a == (Fraction(5), Fraction(0)) and spec.b == tw.base_gen():
        return "yes", None
    target = spec.b
    n_coords = tw.dim
    count = 0
    rng = range(-num_bound, num_bound + 1)
    for q in range(1, den_bound + 1):
        for coords in itertools.product(rng, repeat=n_coords):
            count += 1
            if count > cap:
                return "unknown", None
            if all(c == 0 for c in coords):
                continue
            x = tw.elem([Fraction(c, q) for c in coords])
            if x.rel_norm() == target:
                return "no", x
    return "unknown", None


def iso_check_real(b: complex, b_prime: complex, tol: float = DEFAULT_TOL) -> bool:
    """Isomorphism of real doubles Cay(C, b) and Cay(C, b'): b' must be a
    positive real multiple of b or of conj(b).  Inputs must be nonreal."""
    if abs(b.imag) <= tol or abs(b_prime.imag) <= tol:
        raise ValueError("scalars must be nonreal complex numbers")
    for ref in (b, b.conjugate()):
        t = b_prime / ref
        if abs(t.imag) <= tol and t.real > tol:
            return True
    return False


def rescale(spec: AlgebraSpec, d: FieldElem) -> AlgebraSpec:
    """Square-class rescaling Cay(K, b) -> Cay(K, b d^2) for d in F, associative case only."""
    if spec.nonassociative:
        raise ValueError("square-class rescaling is only valid for associative doubles")
    if not d.is_in_base() or not d:
        raise ValueError("rescaling scalar must be a nonzero element of F")
    return AlgebraSpec(spec.tower, spec.b * d * d)

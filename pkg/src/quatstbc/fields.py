"""Exact arithmetic in quadratic number-field towers of depth at most two.

A tower is Q, F = Q(sqrt(m)), or K = F(sqrt(a)) with m a square-free
integer and a a non-square element of F.  Elements are stored as exact
rational coordinate vectors over the fixed Q-basis

    {1},   {1, sqrt(m)} or {1, sqrt(a)},   {1, sqrt(m), sqrt(a), sqrt(m)*sqrt(a)},

so equality, hashing and all ring operations are exact.  The module also
fixes one complex embedding (principal square roots) used for every float
comparison, exposes the top-level Galois conjugation sqrt(a) -> -sqrt(a)
and the base-level conjugation sqrt(m) -> -sqrt(m) separately, and knows
how to apply complex conjugation exactly whenever it stabilises the tower.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

DEFAULT_TOL = 1e-10

RationalLike = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def rational_sqrt(q: Fraction) -> Optional[Fraction]:
    """Exact square root of a rational, or None if q is not a square."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def is_square_free(m: int) -> bool:
    if m == 0:
        return False
    m = abs(m)
    k = 2
    while k * k <= m:
        if m % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True, slots=True)
class TowerSpec:
    """Tower description: base F (m=None means F=Q) and extension K=F(sqrt(a)).

    `a` is stored as coordinates over F's rational basis (length 1 when
    F = Q, length 2 when F = Q(sqrt(m))); a=None means no extension.
    """

    m: Optional[int]
    a: Optional[tuple]

    def __post_init__(self):
        if self.m is not None:
            if not isinstance(self.m, int) or not is_square_free(self.m) or self.m == 1:
                raise ValueError(f"base parameter m={self.m} must be a square-free integer != 0, 1")
        if self.a is not None:
            a = tuple(_frac(c) for c in self.a)
            object.__setattr__(self, "a", a)
            if len(a) != self.base_dim:
                raise ValueError("extension parameter has wrong coordinate count for the base field")
            if all(c == 0 for c in a):
                raise ValueError("extension parameter a must be nonzero")
            if _square_root_in_base(self.m, a) is not None:
                raise ValueError(f"a={a} is a square in the base field; K would not be an extension")

    @property
    def base_dim(self) -> int:
        return 1 if self.m is None else 2

    @property
    def dim(self) -> int:
        return self.base_dim * (2 if self.a is not None else 1)

    @property
    def has_extension(self) -> bool:
        return self.a is not None

    # -- element constructors ------------------------------------------------

    def elem(self, coords) -> "FieldElem":
        coords = tuple(_frac(c) for c in coords)
        if len(coords) != self.dim:
            raise ValueError(f"need {self.dim} coordinates, got {len(coords)}")
        return FieldElem(self, coords)

    def zero(self) -> "FieldElem":
        return self.elem((0,) * self.dim)

    def one(self) -> "FieldElem":
        return self.rat(1)

    def rat(self, q: RationalLike) -> "FieldElem":
        coords = [_frac(q)] + [Fraction(0)] * (self.dim - 1)
        return self.elem(coords)

    def base_gen(self) -> "FieldElem":
        """The generator sqrt(m) of F over Q."""
        if self.m is None:
            raise ValueError("tower has rational base field, no base generator")
        coords = [Fraction(0)] * self.dim
        coords[1] = Fraction(1)
        return self.elem(coords)

    def ext_gen(self) -> "FieldElem":
        """The generator sqrt(a) of K over F."""
        if self.a is None:
            raise ValueError("tower has no extension level")
        coords = [Fraction(0)] * self.dim
        coords[self.base_dim] = Fraction(1)
        return self.elem(coords)

    def from_base_coords(self, coords) -> "FieldElem":
        """Lift an element of F, given by its F-coordinates, into this tower."""
        coords = tuple(_frac(c) for c in coords)
        if len(coords) != self.base_dim:
            raise ValueError(f"need {self.base_dim} base coordinates")
        full = list(coords) + [Fraction(0)] * (self.dim - self.base_dim)
        return self.elem(full)

    def a_elem(self) -> "FieldElem":
        if self.a is None:
            raise ValueError("tower has no extension level")
        return self.from_base_coords(self.a)

    def basis_elems(self) -> list:
        out = []
        for k in range(self.dim):
            coords = [Fraction(0)] * self.dim
            coords[k] = Fraction(1)
            out.append(self.elem(coords))
        return out


def tower(m: Optional[int] = None, a=None) -> TowerSpec:
    """Convenience constructor; `a` may be an int, Fraction, or F-coordinate tuple."""
    if a is None:
        return TowerSpec(m, None)
    if isinstance(a, (int, Fraction)):
        coords = (_frac(a),) if m is None else (_frac(a), Fraction(0))
    else:
        coords = tuple(_frac(c) for c in a)
    return TowerSpec(m, coords)


def _square_root_in_base(m: Optional[int], a: tuple) -> Optional[tuple]:
    """Solve x^2 = a in F; return x's F-coordinates or None.

    For F = Q(sqrt(m)) and x = u + v*sqrt(m): u^2 + m v^2 = a0 and 2uv = a1,
    which reduces to rational square tests on (a0 +- sqrt(a0^2 - m a1^2))/2.
    """
    if m is None:
        r = rational_sqrt(a[0])
        return None if r is None else (r,)
    a0, a1 = a
    if a1 == 0:
        r = rational_sqrt(a0)
        if r is not None:
            return (r, Fraction(0))
        r = rational_sqrt(a0 / m)
        if r is not None:
            return (Fraction(0), r)
        return None
    t = rational_sqrt(a0 * a0 - m * a1 * a1)
    if t is None:
        return None
    for s in (t, -t):
        u = rational_sqrt((a0 + s) / 2)
        if u is not None and u != 0:
            return (u, a1 / (2 * u))
    return None


def sqrt_in_base(tw: TowerSpec, x: "FieldElem") -> Optional["FieldElem"]:
    """Square root of a base-field element inside F, or None."""
    if not x.is_in_base():
        raise ValueError("argument must lie in the base field")
    root = _square_root_in_base(tw.m, x.base_coords())
    return None if root is None else tw.from_base_coords(root)


# -- multiplication tables, cached per tower ---------------------------------

_MUL_TABLES: dict = {}


def _mul_table(tw: TowerSpec):
    """table[k][l] = coordinates of e_k * e_l over the tower basis."""
    tab = _MUL_TABLES.get(tw)
    if tab is not None:
        return tab
    n = tw.dim
    zero = [Fraction(0)] * n

    def vec(**kw):
        v = list(zero)
        for idx, val in kw.items():
            v[int(idx[1:])] = _frac(val)
        return tuple(v)

    if n == 1:
        tab = [[vec(c0=1)]]
    elif n == 2:
        g2 = Fraction(tw.m) if tw.m is not None else tw.a[0]
        tab = [
            [vec(c0=1), vec(c1=1)],
            [vec(c1=1), vec(c0=g2)],
        ]
    else:
        m = Fraction(tw.m)
        a0, a1 = tw.a
        tab = [
            [vec(c0=1), vec(c1=1), vec(c2=1), vec(c3=1)],
            [vec(c1=1), vec(c0=m), vec(c3=1), vec(c2=m)],
            [vec(c2=1), vec(c3=1), vec(c0=a0, c1=a1), vec(c0=a1 * m, c1=a0)],
            [vec(c3=1), vec(c2=m), vec(c0=a1 * m, c1=a0), vec(c0=a0 * m, c1=a1 * m)],
        ]
    # sparse form: [(target index, factor), ...] per basis pair
    sparse = [
        [[(i, f) for i, f in enumerate(cell) if f != 0] for cell in row]
        for row in tab
    ]
    _MUL_TABLES[tw] = sparse
    return sparse


_EMBED_BASIS: dict = {}


def _embed_basis(tw: TowerSpec):
    basis = _EMBED_BASIS.get(tw)
    if basis is not None:
        return basis
    vals = [complex(1.0)]
    if tw.m is not None:
        w = complex(math.sqrt(tw.m)) if tw.m > 0 else complex(0.0, math.sqrt(-tw.m))
        vals.append(w)
    if tw.a is not None:
        a_val = sum(complex(float(c)) * b for c, b in zip(tw.a, vals))
        s = cmath.sqrt(a_val)
        ext = [s] if tw.m is None else [s, vals[1] * s]
        vals.extend(ext)
    _EMBED_BASIS[tw] = vals
    return vals


_CC_IMAGES: dict = {}


def _cc_images(tw: TowerSpec):
    """Images of the basis monomials under complex conjugation, when the
    embedded tower is stable under it.  Raises otherwise."""
    imgs = _CC_IMAGES.get(tw)
    if imgs is not None:
        return imgs
    imgs = [tw.one()]
    if tw.m is not None:
        w = tw.base_gen()
        imgs.append(w if tw.m > 0 else -w)
    if tw.a is not None:
        a = tw.a_elem()
        cc_a = _apply_base_images(a, imgs)
        ratio = cc_a / a
        # conj(sqrt(a)) = c * sqrt(a) requires c^2 = conj(a)/a to be solvable in F
        c = sqrt_in_base(tw, ratio)
        if c is None:
            raise NotImplementedError(
                "complex conjugation does not stabilise this tower; exact |.|^2 unavailable")
        s = tw.ext_gen()
        target = _embed_basis(tw)[tw.base_dim].conjugate()
        cand = c * s
        if abs(cand.embed() - target) > abs((-cand).embed() - target):
            cand = -cand
        if abs(cand.embed() - target) > 1e-9:
            raise AssertionError("conjugation image does not match the fixed embedding")
        imgs.append(cand)
        if tw.m is not None:
            imgs.append(imgs[1] * cand)
    _CC_IMAGES[tw] = imgs
    return imgs


def _apply_base_images(x: "FieldElem", imgs) -> "FieldElem":
    out = x.tower.zero()
    for c, img in zip(x.base_coords(), imgs):
        out = out + img * c
    return out


@dataclass(frozen=True, slots=True)
class FieldElem:
    """Element of a tower, as exact rational coordinates over its Q-basis."""

    tower: TowerSpec
    coords: tuple

    # -- ring structure -------------------------------------------------------

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.tower != self.tower:
                raise ValueError("tower mismatch")
            return other
        return self.tower.rat(_frac(other))

    def __add__(self, other) -> "FieldElem":
        o = self._coerce(other)
        return FieldElem(self.tower, tuple(x + y for x, y in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __sub__(self, other) -> "FieldElem":
        o = self._coerce(other)
        return FieldElem(self.tower, tuple(x - y for x, y in zip(self.coords, o.coords)))

    def __rsub__(self, other) -> "FieldElem":
        return self._coerce(other) - self

    def __neg__(self) -> "FieldElem":
        return FieldElem(self.tower, tuple(-x for x in self.coords))

    def __mul__(self, other) -> "FieldElem":
        o = self._coerce(other)
        tab = _mul_table(self.tower)
        out = [Fraction(0)] * self.tower.dim
        for k, ck in enumerate(self.coords):
            if ck == 0:
                continue
            ol = o.coords
            for l, cl in enumerate(ol):
                if cl == 0:
                    continue
                f = ck * cl
                for idx, factor in tab[k][l]:
                    out[idx] += f * factor
        return FieldElem(self.tower, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "FieldElem":
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other) -> "FieldElem":
        return self._coerce(other) * self.inv()

    def __pow__(self, n: int) -> "FieldElem":
        if n < 0:
            return self.inv() ** (-n)
        result = self.tower.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return any(c != 0 for c in self.coords)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.tower.rat(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.tower == other.tower and self.coords == other.coords

    def __hash__(self):
        return hash((self.tower, self.coords))

    def inv(self) -> "FieldElem":
        """Multiplicative inverse via conjugate/norm, one tower level at a time."""
        if not self:
            raise ZeroDivisionError("field element is zero")
        tw = self.tower
        if tw.dim == 1:
            return tw.rat(1 / self.coords[0])
        if tw.dim == 2:
            conj = FieldElem(tw, (self.coords[0], -self.coords[1]))
            n = (self * conj).coords[0]
            return FieldElem(tw, tuple(c / n for c in conj.coords))
        s = self.galois_conj()
        n = self * s                      # lies in F
        nc = n.base_conj()
        r = (n * nc).coords[0]            # rational
        return FieldElem(tw, tuple(c / r for c in (s * nc).coords))

    # -- tower structure ------------------------------------------------------

    def galois_conj(self) -> "FieldElem":
        """Top-level Galois conjugation sqrt(a) -> -sqrt(a); fixes F pointwise."""
        tw = self.tower
        if not tw.has_extension:
            raise ValueError("tower has no extension level; no top-level conjugation")
        bd = tw.base_dim
        coords = tuple(c if k < bd else -c for k, c in enumerate(self.coords))
        return FieldElem(tw, coords)

    def base_conj(self) -> "FieldElem":
        """Base-level conjugation sqrt(m) -> -sqrt(m) of F over Q, extended to K."""
        tw = self.tower
        if tw.m is None:
            return self
        coords = tuple(-c if k % 2 == 1 else c for k, c in enumerate(self.coords))
        return FieldElem(tw, coords)

    def rel_norm(self) -> "FieldElem":
        """Relative norm x * galois_conj(x); lands in F (extension coords vanish)."""
        n = self * self.galois_conj()
        bd = self.tower.base_dim
        assert all(c == 0 for c in n.coords[bd:]), "relative norm left the base field"
        return n

    def rel_trace(self) -> "FieldElem":
        return self + self.galois_conj()

    def is_in_base(self) -> bool:
        bd = self.tower.base_dim
        return all(c == 0 for c in self.coords[bd:])

    def base_coords(self) -> tuple:
        if not self.is_in_base():
            raise ValueError("element does not lie in the base field")
        return self.coords[: self.tower.base_dim]

    def as_rational(self) -> Fraction:
        if any(c != 0 for c in self.coords[1:]):
            raise ValueError("element is not rational")
        return self.coords[0]

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    # -- fixed complex embedding ----------------------------------------------

    def embed(self) -> complex:
        """The fixed complex embedding (principal square roots)."""
        basis = _embed_basis(self.tower)
        return sum((float(c) * b for c, b in zip(self.coords, basis)), complex(0.0))

    def cc(self) -> "FieldElem":
        """Complex conjugation applied exactly (when it stabilises the tower)."""
        imgs = _cc_images(self.tower)
        out = self.tower.zero()
        for c, img in zip(self.coords, imgs):
            if c != 0:
                out = out + img * c
        return out

    def abs_sq(self) -> "FieldElem":
        """Exact squared modulus x * cc(x); a real-embedded element."""
        return self * self.cc()

    def is_real(self) -> bool:
        return self.cc() == self

    def sign_real(self) -> int:
        """Exact sign of a real-embedded element (-1, 0, +1)."""
        return _sign_real(self)

    def compare(self, other) -> int:
        return _sign_real(self - self._coerce(other))

    # -- misc -----------------------------------------------------------------

    def __repr__(self):
        return f"FieldElem({self.tower.m}, {self.tower.a}, {self.coords})"

    def __str__(self):
        tw = self.tower
        names = ["1"]
        if tw.m is not None:
            names.append("i" if tw.m == -1 else f"sqrt({tw.m})")
        if tw.a is not None:
            s = "i" if tw.a == (Fraction(-1),) else "s"
            names.extend([s] if tw.m is None else [s, names[1] + "*" + s])
        terms = [f"{c}*{n}" if n != "1" else f"{c}" for c, n in zip(self.coords, names) if c != 0]
        return " + ".join(terms) if terms else "0"


# -- exact sign of real-embedded elements -------------------------------------


def _sign_quadratic(c0: Fraction, c1: Fraction, r: Fraction) -> int:
    """Sign of c0 + c1*sqrt(r) for rational r > 0 with sqrt(r) irrational."""
    if c1 == 0:
        return (c0 > 0) - (c0 < 0)
    if c0 == 0:
        return 1 if c1 > 0 else -1
    if c0 > 0 and c1 > 0:
        return 1
    if c0 < 0 and c1 < 0:
        return -1
    d = c0 * c0 - c1 * c1 * r
    assert d != 0, "sqrt(r) was rational after all"
    return (1 if d > 0 else -1) * (1 if c0 > 0 else -1)


_REAL_SUBFIELD: dict = {}


def _real_subfield_data(tw: TowerSpec):
    """For a dim-4 tower with an order-2 complex conjugation: a generator g of
    the real (conjugation-fixed) subfield with g^2 = alpha + beta*g, plus the
    branch sign of g relative to (beta +- sqrt(beta^2 + 4 alpha))/2."""
    data = _REAL_SUBFIELD.get(tw)
    if data is not None:
        return data
    imgs = _cc_images(tw)
    n = tw.dim
    # fixed vectors of the conjugation matrix, beyond the rational line
    cols = [imgs[k].coords for k in range(n)]
    # solve (M - I) x = 0 by scanning the 3-dim complement basis e1..e3 fixed parts
    fixed = []
    for k in range(1, n):
        v = [Fraction(0)] * n
        v[k] = Fraction(1)
        img = list(cols[k])
        if tuple(img) == tuple(v):
            fixed.append(tuple(v))
        else:
            # e_k + cc(e_k) is always fixed
            w = [a + b for a, b in zip(v, img)]
            if any(c != 0 for c in w[1:]):
                fixed.append(tuple(w))
    # pick one fixed vector independent of e0 (all have zero e0-coordinate or not;
    # normalise away the rational part)
    g = None
    for v in fixed:
        if any(c != 0 for c in v[1:]):
            g = tw.elem((Fraction(0),) + tuple(v[1:]))
            if g:
                break
    if g is None or not g:
        raise NotImplementedError("could not isolate a real quadratic generator")
    g2 = g * g
    # g^2 = alpha + beta*g must hold within span{1, g}
    pivot = next(k for k in range(1, n) if g.coords[k] != 0)
    beta = g2.coords[pivot] / g.coords[pivot]
    rem = g2 - g * beta
    alpha = rem.as_rational()
    disc = beta * beta + 4 * alpha
    assert disc > 0 and rational_sqrt(disc) is None
    branch = 1 if g.embed().real > float(beta) / 2 else -1
    data = (g, alpha, beta, disc, branch)
    _REAL_SUBFIELD[tw] = data
    return data


def _sign_real(x: FieldElem) -> int:
    tw = x.tower
    if not x:
        return 0
    if not x.is_real():
        raise ValueError("element is not real under the fixed embedding")
    if x.is_rational():
        return 1 if x.coords[0] > 0 else -1
    if tw.dim == 2:
        g2 = Fraction(tw.m) if tw.m is not None else tw.a[0]
        # real and non-rational forces a real generator
        assert g2 > 0
        return _sign_quadratic(x.coords[0], x.coords[1], g2)
    # dim 4: reduce to the real quadratic subfield
    imgs = _cc_images(tw)
    if all(imgs[k] == tw.basis_elems()[k] for k in range(tw.dim)):
        # totally real tower; handle the two quadratic-subfield coordinate patterns
        if x.coords[2] == 0 and x.coords[3] == 0:
            return _sign_quadratic(x.coords[0], x.coords[1], Fraction(tw.m))
        raise NotImplementedError("exact sign in a totally real quartic field")
    g, alpha, beta, disc, branch = _real_subfield_data(tw)
    pivot = next(k for k in range(1, tw.dim) if g.coords[k] != 0)
    c1 = x.coords[pivot] / g.coords[pivot]
    rem = x - g * c1
    c0 = rem.as_rational()
    # x = c0 + c1*g with g = (beta + branch*sqrt(disc))/2
    return _sign_quadratic(c0 + c1 * beta / 2, c1 * branch / Fraction(2), disc)


# -- serialisation helpers -----------------------------------------------------


def rational_to_json(q: Fraction) -> dict:
    out = {"num": q.numerator}
    if q.denominator != 1:
        out["den"] = q.denominator
    return out


def rational_from_json(obj) -> Fraction:
    if isinstance(obj, bool) or isinstance(obj, float):
        raise ValueError("floats are not allowed in exact data")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, dict):
        num = obj["num"]
        den = obj.get("den", 1)
        if isinstance(num, float) or isinstance(den, float):
            raise ValueError("floats are not allowed in exact data")
        return Fraction(num, den)
    raise ValueError(f"cannot parse exact rational from {obj!r}")


def tower_to_json(tw: TowerSpec) -> dict:
    out: dict = {"m": tw.m}
    if tw.a is not None:
        if len(tw.a) == 1 or tw.a[1] == 0:
            out["a"] = rational_to_json(tw.a[0])
        else:
            out["a"] = [rational_to_json(c) for c in tw.a]
    else:
        out["a"] = None
    return out


def tower_from_json(obj) -> TowerSpec:
    m = obj.get("m")
    if m is not None and not isinstance(m, int):
        raise ValueError("tower parameter m must be an integer or null")
    a = obj.get("a")
    if a is None:
        return TowerSpec(m, None)
    if isinstance(a, list):
        coords = tuple(rational_from_json(c) for c in a)
    else:
        q = rational_from_json(a)
        coords = (q,) if m is None else (q, Fraction(0))
    return TowerSpec(m, coords)


def elem_to_json(x: FieldElem) -> list:
    return [rational_to_json(c) for c in x.coords]


def elem_from_json(tw: TowerSpec, obj) -> FieldElem:
    return tw.elem([rational_from_json(c) for c in obj])

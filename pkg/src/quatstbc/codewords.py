"""Codeword matrices from the left regular representation of a double Cay(K, b).

Three layouts are produced, all with exact entries:

- 2x2 over K:  x = x0 + j x1  ->  [[x0, b sigma(x1)], [x1, sigma(x0)]],
  with closed-form determinant N_{K/F}(x0) - b N_{K/F}(x1);
- 2x4 over K:  the two-block form [X | sigma(X)] spanning two fading blocks;
- 4x4 over F:  left multiplication on the basis {1, i, j, -ij} for
  b = p + q sqrt(a), with the closed-form determinant
  [(x0^2 - a x1^2) - p (x2^2 - a x3^2)]^2 - a q^2 (x2^2 - a x3^2)^2.

A scale factor 1/sqrt(n) is carried symbolically on the codeword so that
determinant bookkeeping stays exact: det of a scaled k x k codeword is
n^(-k/2) times the exact determinant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .algebras import AlgebraSpec
from .fields import FieldElem, elem_to_json


@dataclass(frozen=True)
class Codeword:
    """Exact matrix with a symbolic 1/sqrt(n) scale and a float embedding."""

    shape: str                      # "2x2", "4x4", "2x4"
    entries: tuple                  # tuple of row tuples of FieldElem
    shaping_n: Optional[int] = None  # matrix is scaled by 1/sqrt(shaping_n)

    def __post_init__(self):
        rows = {"2x2": 2, "4x4": 4, "2x4": 2}[self.shape]
        cols = {"2x2": 2, "4x4": 4, "2x4": 4}[self.shape]
        if len(self.entries) != rows or any(len(r) != cols for r in self.entries):
            raise ValueError(f"entry grid does not match shape {self.shape}")

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0])

    def scale_factor(self) -> float:
        return 1.0 if self.shaping_n is None else 1.0 / float(np.sqrt(self.shaping_n))

    def det_abs_sq_scale(self) -> Fraction:
        """Exact factor relating |det|^2 of the scaled and unscaled matrix."""
        if self.shaping_n is None:
            return Fraction(1)
        return Fraction(1, self.shaping_n ** self.nrows)

    def embed(self) -> np.ndarray:
        """Complex float matrix under the fixed embedding, scale included."""
        arr = np.array([[e.embed() for e in row] for row in self.entries], dtype=complex)
        return arr * self.scale_factor()

    def det_exact(self) -> FieldElem:
        """Cofactor-expansion determinant of the exact entries (scale excluded)."""
        if self.nrows != self.ncols:
            raise ValueError("determinant requires a square codeword")
        return _det_laplace(self.entries)

    def to_json(self, include_float: bool = False) -> dict:
        out = {
            "shape": self.shape,
            "shaping_inv_sqrt": self.shaping_n,
            "entries": [[elem_to_json(e) for e in row] for row in self.entries],
        }
        if include_float:
            emb = self.embed()
            out["float"] = [[[z.real, z.imag] for z in row] for row in emb.tolist()]
        return out


def _det_laplace(rows) -> FieldElem:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    tower = rows[0][0].tower
    total = tower.zero()
    sign = 1
    for k in range(n):
        minor = tuple(tuple(r[j] for j in range(n) if j != k) for r in rows[1:])
        term = rows[0][k] * _det_laplace(minor)
        total = total + term if sign > 0 else total - term
        sign = -sign
    return total


def lambda2(spec: AlgebraSpec, x0: FieldElem, x1: FieldElem,
            transpose: bool = False, shaping_n: Optional[int] = None) -> Codeword:
    """Left-multiplication matrix of x0 + j x1 on the right-K-basis {1, j}.

    The transpose flag reproduces the Golden-style layout (rows and columns
    swapped); it does not change the determinant or the code's behaviour.
    """
    rows = (
        (x0, spec.b * x1.galois_conj()),
        (x1, x0.galois_conj()),
    )
    if transpose:
        rows = tuple(zip(*rows))
    return Codeword("2x2", rows, shaping_n)


def det2(spec: AlgebraSpec, x0: FieldElem, x1: FieldElem) -> FieldElem:
    """Closed-form determinant N_{K/F}(x0) - b N_{K/F}(x1) of the 2x2 layout."""
    return x0.rel_norm() - spec.b * x1.rel_norm()


def multiblock(spec: AlgebraSpec, x0: FieldElem, x1: FieldElem,
               shaping_n: Optional[int] = None) -> Codeword:
    """Two-block codeword [X | sigma(X)] with sigma applied entrywise."""
    x = lambda2(spec, x0, x1)
    sx = tuple(tuple(e.galois_conj() for e in row) for row in x.entries)
    rows = tuple(row + srow for row, srow in zip(x.entries, sx))
    return Codeword("2x4", rows, shaping_n)


def split_b(spec: AlgebraSpec):
    """Write b = p + q sqrt(a) with p, q in F (returned as top-field elements)."""
    tw = spec.tower
    bd = tw.base_dim
    p = tw.from_base_coords(spec.b.coords[:bd])
    q = tw.from_base_coords(spec.b.coords[bd:])
    return p, q


def lambda4(spec: AlgebraSpec, x0, x1, x2, x3,
            shaping_n: Optional[int] = None) -> Codeword:
    """Left-multiplication matrix over F on the basis {1, i, j, -ij}.

    Information symbols x0..x3 lie in F; entries stay in F.
    """
    tw = spec.tower
    xs = [x if isinstance(x, FieldElem) else tw.rat(x) for x in (x0, x1, x2, x3)]
    if any(not x.is_in_base() for x in xs):
        raise ValueError("4x4 symbols must lie in the base field F")
    x0, x1, x2, x3 = xs
    a = tw.a_elem()
    p, q = split_b(spec)
    rows = (
        (x0, a * x1, p * x2 - a * q * x3, a * q * x2 - a * p * x3),
        (x1, x0, q * x2 - p * x3, p * x2 - a * q * x3),
        (x2, a * x3, x0, -(a * x1)),
        (x3, x2, -x1, x0),
    )
    return Codeword("4x4", rows, shaping_n)


def det4(spec: AlgebraSpec, x0, x1, x2, x3) -> FieldElem:
    """Closed-form determinant of the 4x4 layout:
    [(x0^2 - a x1^2) - p w]^2 - a q^2 w^2 with w = x2^2 - a x3^2."""
    tw = spec.tower
    xs = [x if isinstance(x, FieldElem) else tw.rat(x) for x in (x0, x1, x2, x3)]
    x0, x1, x2, x3 = xs
    a = tw.a_elem()
    p, q = split_b(spec)
    v = x0 * x0 - a * x1 * x1
    w = x2 * x2 - a * x3 * x3
    t = v - p * w
    return t * t - a * q * q * w * w


# -- Golden-code family --------------------------------------------------------

GOLDEN_TOWER_PARAMS = (-1, (Fraction(5), Fraction(0)))


def golden_theta(tw) -> FieldElem:
    """theta = (1 + sqrt(5))/2, the golden number, inside K = Q(i)(sqrt(5))."""
    return tw.elem((Fraction(1, 2), 0, Fraction(1, 2), 0))


def golden_alpha(tw) -> FieldElem:
    """alpha = 1 + i - i*theta, generator of the norm-5 shaping ideal."""
    i = tw.base_gen()
    return tw.one() + i - i * golden_theta(tw)


def golden_codeword(spec: AlgebraSpec, c, d, e, f, with_ideal: bool = True) -> Codeword:
    """Golden-layout codeword over K = Q(i)(sqrt(5)) with 1/sqrt(5) scaling.

    Symbols c, d, e, f are Gaussian numbers; x0 = c + d theta, x1 = e + f theta,
    both multiplied by alpha when the ideal restriction is on.  b = i gives the
    classical Golden code; b outside Q(i) gives its nonassociative variants.
    """
    tw = spec.tower
    if (tw.m, tw.a) != GOLDEN_TOWER_PARAMS:
        raise ValueError("Golden codewords require the tower Q(i)(sqrt(5))")
    theta = golden_theta(tw)
    cs = [s if isinstance(s, FieldElem) else tw.from_base_coords((Fraction(s), Fraction(0)))
          for s in (c, d, e, f)]
    c, d, e, f = cs
    x0 = c + d * theta
    x1 = e + f * theta
    if with_ideal:
        alpha = golden_alpha(tw)
        x0 = alpha * x0
        x1 = alpha * x1
    return lambda2(spec, x0, x1, transpose=True, shaping_n=5)

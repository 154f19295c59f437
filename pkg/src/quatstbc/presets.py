"""Declarative code descriptions and the named preset constructions.

A CodeSpec pins down everything needed to build codewords: the tower, the
doubling scalar b, the block shape, the symbolic 1/sqrt(n) scale, the
K-basis {1, u1} used to encode information symbols, and an optional ideal
generator alpha multiplying the codeword entries.  Specs round-trip through
a JSON format in which every exact quantity is a {"num", "den"} rational;
floats are rejected on parse.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebras import AlgebraSpec
from .codewords import Codeword, det2, det4, lambda2, lambda4, multiblock
from .fields import (FieldElem, TowerSpec, rational_from_json,
                     tower_from_json, tower_to_json)

SHAPES = ("2x2", "4x4", "2x4")


@dataclass(frozen=True)
class Constellation:
    """Finite symbol set: an integer box [-L, L] (per coordinate) or q-QAM."""

    kind: str = "box"        # "box" | "qam"
    size: int = 2            # L for box, q for qam
    include_zero: bool = True

    def __post_init__(self):
        if self.kind not in ("box", "qam"):
            raise ValueError(f"unknown constellation kind {self.kind!r}")
        if self.size < 0 or (self.kind == "qam" and self.size < 2):
            raise ValueError("constellation size out of range")

    def values(self, gaussian: bool) -> list:
        """Symbol values as (re, im) integer pairs, sorted lexicographically."""
        if self.kind == "box":
            rng = range(-self.size, self.size + 1)
            if gaussian:
                vals = [(a, b) for a in rng for b in rng]
            else:
                vals = [(a, 0) for a in rng]
            if not self.include_zero:
                vals = [v for v in vals if v != (0, 0)]
            return vals
        r = int(round(self.size ** 0.5))
        if r * r != self.size:
            raise ValueError("qam order must be a perfect square")
        odd = list(range(-(r - 1), r, 2))
        if gaussian:
            return sorted((a, b) for a in odd for b in odd)
        return [(a, 0) for a in odd]


@dataclass(frozen=True)
class CodeSpec:
    """Everything needed to build and check one space-time code."""

    name: str
    tower: TowerSpec
    b_coords: tuple
    shape: str
    shaping_n: Optional[int] = None
    basis_u1: Optional[tuple] = None      # second K-basis element (2x2 / 2x4)
    ideal_alpha: Optional[tuple] = None
    transpose: bool = False
    nvd_fraction: Optional[tuple] = None  # (b_n coords, b_d coords), as published
    constellation: Constellation = Constellation()

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"unknown shape {self.shape!r}")
        if self.shape in ("2x2", "2x4") and self.basis_u1 is None:
            raise ValueError("2x2 and 2x4 codes need the symbol basis element u1")

        def norm(coords):
            return None if coords is None else tuple(Fraction(c) for c in coords)

        object.__setattr__(self, "b_coords", norm(self.b_coords))
        object.__setattr__(self, "basis_u1", norm(self.basis_u1))
        object.__setattr__(self, "ideal_alpha", norm(self.ideal_alpha))
        if self.nvd_fraction is not None:
            bn, bd = self.nvd_fraction
            object.__setattr__(self, "nvd_fraction", (norm(bn), norm(bd)))
        if len(self.b_coords) != self.tower.dim:
            raise ValueError("b has the wrong coordinate count for the tower")
        if self.basis_u1 is not None and self.u1.is_in_base():
            raise ValueError("u1 must lie outside F so that {1, u1} is a K-basis")
        if self.ideal_alpha is not None and not self.alpha:
            raise ValueError("ideal generator alpha must be nonzero")

    # -- derived objects ------------------------------------------------------

    @property
    def b(self) -> FieldElem:
        return self.tower.elem(self.b_coords)

    def algebra(self) -> AlgebraSpec:
        return AlgebraSpec(self.tower, self.b)

    @property
    def gaussian_symbols(self) -> bool:
        """Symbols are Gaussian integers when the base field F is Q(i)."""
        return self.tower.m == -1

    @property
    def u1(self) -> Optional[FieldElem]:
        return None if self.basis_u1 is None else self.tower.elem(self.basis_u1)

    @property
    def alpha(self) -> Optional[FieldElem]:
        return None if self.ideal_alpha is None else self.tower.elem(self.ideal_alpha)

    def nvd_pair(self):
        if self.nvd_fraction is None:
            return None
        bn, bd = self.nvd_fraction
        return self.tower.elem(bn), self.tower.elem(bd)

    # -- symbols --------------------------------------------------------------

    def symbol_elem(self, s) -> FieldElem:
        """Coerce a symbol (int, Fraction, (re, im) pair, or FieldElem) into F < K."""
        tw = self.tower
        if isinstance(s, FieldElem):
            if s.tower != tw or not s.is_in_base():
                raise ValueError("symbol must lie in the base field of the code's tower")
            return s
        if isinstance(s, tuple):
            re, im = s
        else:
            re, im = s, 0
        if tw.base_dim == 1:
            if im != 0:
                raise ValueError("this code transmits rational symbols; imaginary part must be 0")
            return tw.from_base_coords((Fraction(re),))
        return tw.from_base_coords((Fraction(re), Fraction(im)))

    def x_pair(self, symbols):
        """(x0, x1) = (c + d u1, e + f u1), times alpha under the ideal restriction."""
        c, d, e, f = (self.symbol_elem(s) for s in symbols)
        u1 = self.u1
        x0 = c + d * u1
        x1 = e + f * u1
        alpha = self.alpha
        if alpha is not None:
            x0 = alpha * x0
            x1 = alpha * x1
        return x0, x1

    def codeword(self, symbols) -> Codeword:
        if len(symbols) != 4:
            raise ValueError("codes in this family carry four information symbols")
        alg = self.algebra()
        if self.shape == "2x2":
            x0, x1 = self.x_pair(symbols)
            return lambda2(alg, x0, x1, transpose=self.transpose, shaping_n=self.shaping_n)
        if self.shape == "2x4":
            x0, x1 = self.x_pair(symbols)
            return multiblock(alg, x0, x1, shaping_n=self.shaping_n)
        xs = [self.symbol_elem(s) for s in symbols]
        return lambda4(alg, *xs, shaping_n=self.shaping_n)

    def det_exact(self, symbols) -> FieldElem:
        """Closed-form determinant of the (unscaled) codeword; for the 2x4
        shape this is the determinant of the left 2x2 block."""
        alg = self.algebra()
        if self.shape in ("2x2", "2x4"):
            x0, x1 = self.x_pair(symbols)
            return det2(alg, x0, x1)
        xs = [self.symbol_elem(s) for s in symbols]
        return det4(alg, *xs)

    # -- serialisation ---------------------------------------------------------

    def to_json(self) -> dict:
        def opt(coords):
            return None if coords is None else [_rat_json(c) for c in coords]

        out = {
            "name": self.name,
            "tower": tower_to_json(self.tower),
            "b": [_rat_json(c) for c in self.b_coords],
            "shape": self.shape,
            "shaping_inv_sqrt": self.shaping_n,
            "basis_u1": opt(self.basis_u1),
            "ideal_alpha": opt(self.ideal_alpha),
            "transpose": self.transpose,
            "constellation": {
                "kind": self.constellation.kind,
                "size": self.constellation.size,
                "include_zero": self.constellation.include_zero,
            },
        }
        if self.nvd_fraction is not None:
            bn, bd = self.nvd_fraction
            out["nvd_fraction"] = [opt(bn), opt(bd)]
        return out

    @classmethod
    def from_json(cls, obj) -> "CodeSpec":
        _reject_floats(obj)
        try:
            tw = tower_from_json(obj["tower"])
            coords = tuple(rational_from_json(c) for c in obj["b"])
            shaping = obj.get("shaping_inv_sqrt")
            if shaping is not None and (not isinstance(shaping, int) or shaping <= 0):
                raise ValueError("shaping_inv_sqrt must be a positive integer or null")
            cons = obj.get("constellation") or {}
            nvd = obj.get("nvd_fraction")
            nvd_t = None
            if nvd is not None:
                nvd_t = (tuple(rational_from_json(c) for c in nvd[0]),
                         tuple(rational_from_json(c) for c in nvd[1]))
            return cls(
                name=obj.get("name", "unnamed"),
                tower=tw,
                b_coords=coords,
                shape=obj["shape"],
                shaping_n=shaping,
                basis_u1=_opt_coords(obj.get("basis_u1")),
                ideal_alpha=_opt_coords(obj.get("ideal_alpha")),
                transpose=bool(obj.get("transpose", False)),
                nvd_fraction=nvd_t,
                constellation=Constellation(
                    kind=cons.get("kind", "box"),
                    size=cons.get("size", 2),
                    include_zero=cons.get("include_zero", True),
                ),
            )
        except KeyError as exc:
            raise ValueError(f"code spec is missing required field {exc}") from exc

    @classmethod
    def loads(cls, text: str) -> "CodeSpec":
        return cls.from_json(json.loads(text, parse_float=_no_floats))

    @classmethod
    def load(cls, path) -> "CodeSpec":
        with open(path) as fh:
            return cls.from_json(json.load(fh, parse_float=_no_floats))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _no_floats(s):
    raise ValueError(f"float literal {s!r} is not allowed in exact code-spec data")


def _reject_floats(obj):
    if isinstance(obj, float):
        raise ValueError("floats are not allowed in exact code-spec data")
    if isinstance(obj, dict):
        for v in obj.values():
            _reject_floats(v)
    elif isinstance(obj, list):
        for v in obj:
            _reject_floats(v)


def _opt_coords(obj):
    return None if obj is None else tuple(rational_from_json(c) for c in obj)


def _rat_json(c):
    from .fields import rational_to_json
    return rational_to_json(Fraction(c))


# -- named presets ---------------------------------------------------------------

F = Fraction
_GOLDEN_TOWER = TowerSpec(-1, (F(5), F(0)))
_ZETA8_TOWER = TowerSpec(-1, (F(2), F(0)))
_ZETA3_TOWER = TowerSpec(-1, (F(3), F(0)))
_QI_TOWER = TowerSpec(None, (F(-1),))
_Z8_ABS_TOWER = TowerSpec(-1, (F(0), F(1)))   # K = Q(i)(sqrt(i)) = Q(zeta_8)

_THETA = (F(1, 2), 0, F(1, 2), 0)             # (1+sqrt(5))/2
_ALPHA = (1, F(1, 2), 0, F(-1, 2))            # 1 + i - i*theta
_ZETA8 = (0, 0, F(1, 2), F(1, 2))             # (1+i)/sqrt(2)
_ZETA3 = (F(-1, 2), 0, 0, F(1, 2))            # (-1 + i sqrt(3))/2
_B_NA1 = (F(-2, 3), 0, 0, F(-1, 3))           # (i+sqrt(5))/(i-sqrt(5))
_B_NA2 = (0, F(2, 3), F(1, 3), 0)             # (2i+sqrt(5))/3

_NVD_NA1 = ((0, 1, 1, 0), (0, 1, -1, 0))      # b = (i+sqrt(5)) / (i-sqrt(5))
_NVD_NA2 = ((0, 2, 1, 0), (3, 0, 0, 0))       # b = (2i+sqrt(5)) / 3


def _mk(name, **kw) -> CodeSpec:
    return CodeSpec(name=name, **kw)


PRESETS = {
    # 2x2 Alamouti-like code from Cay(Q(i), i) over Q, entries in Z[i], scaled 1/sqrt(2)
    "alamouti-na": _mk("alamouti-na", tower=_QI_TOWER, b_coords=(0, 1), shape="2x2",
                       shaping_n=2, basis_u1=(0, 1), nvd_fraction=((0, 1), (1, 0))),
    # the classical (associative) Golden code: b = i, ideal (alpha), 1/sqrt(5)
    "golden": _mk("golden", tower=_GOLDEN_TOWER, b_coords=(0, 1, 0, 0), shape="2x2",
                  shaping_n=5, basis_u1=_THETA, ideal_alpha=_ALPHA, transpose=True,
                  nvd_fraction=((0, 1, 0, 0), (1, 0, 0, 0))),
    # nonassociative Golden variants: |b|^2 = 1 scalars outside Q(i)
    "golden-na-1": _mk("golden-na-1", tower=_GOLDEN_TOWER, b_coords=_B_NA1, shape="2x2",
                       shaping_n=5, basis_u1=_THETA, ideal_alpha=_ALPHA, transpose=True,
                       nvd_fraction=_NVD_NA1),
    "golden-na-2": _mk("golden-na-2", tower=_GOLDEN_TOWER, b_coords=_B_NA2, shape="2x2",
                       shaping_n=5, basis_u1=_THETA, ideal_alpha=_ALPHA, transpose=True,
                       nvd_fraction=_NVD_NA2),
    # K = Q(i)(zeta_8), b = zeta_8, good shaping via the unitary G/sqrt(2)
    "zeta8": _mk("zeta8", tower=_ZETA8_TOWER, b_coords=_ZETA8, shape="2x2",
                 shaping_n=2, basis_u1=_ZETA8,
                 nvd_fraction=(_ZETA8, (1, 0, 0, 0))),
    # K = Q(i)(zeta_3): fully diverse but G not unitary and no NVD guarantee
    "zeta3": _mk("zeta3", tower=_ZETA3_TOWER, b_coords=_ZETA3, shape="2x2",
                 basis_u1=_ZETA3, nvd_fraction=(_ZETA3, (1, 0, 0, 0))),
    # 2x4 multiblock versions [X | sigma(X)]
    "mb-8.4": _mk("mb-8.4", tower=_GOLDEN_TOWER, b_coords=_B_NA1, shape="2x4",
                  shaping_n=5, basis_u1=_THETA, ideal_alpha=_ALPHA, nvd_fraction=_NVD_NA1),
    "mb-8.5": _mk("mb-8.5", tower=_GOLDEN_TOWER, b_coords=_B_NA2, shape="2x4",
                  shaping_n=5, basis_u1=_THETA, ideal_alpha=_ALPHA, nvd_fraction=_NVD_NA2),
    "mb-8.6": _mk("mb-8.6", tower=_ZETA8_TOWER, b_coords=_ZETA8, shape="2x4",
                  shaping_n=2, basis_u1=_ZETA8, nvd_fraction=(_ZETA8, (1, 0, 0, 0))),
    # 4x4 left regular representations over the base field
    "four-9.2": _mk("four-9.2", tower=_QI_TOWER, b_coords=(0, 1), shape="4x4",
                    nvd_fraction=((0, 1), (1, 0)), constellation=Constellation("box", 3)),
    "four-9.2bis": _mk("four-9.2bis", tower=_QI_TOWER, b_coords=(0, -1), shape="4x4",
                       nvd_fraction=((0, -1), (1, 0)), constellation=Constellation("box", 3)),
    "four-9.3": _mk("four-9.3", tower=_Z8_ABS_TOWER, b_coords=(0, 0, 1, 0), shape="4x4",
                    nvd_fraction=((0, 0, 1, 0), (1, 0, 0, 0))),
}


def preset(name: str) -> CodeSpec:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}") from None


def nonassociative_presets() -> list:
    return [p for p in PRESETS.values() if p.algebra().nonassociative]

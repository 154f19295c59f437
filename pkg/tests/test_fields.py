"""Exact tower arithmetic: pinned values and algebraic laws."""

import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from quatstbc.fields import (DEFAULT_TOL, TowerSpec, elem_from_json, elem_to_json,
                             rational_from_json, rational_sqrt, tower,
                             tower_from_json, tower_to_json)

QI = tower(None, -1)          # K = Q(i) over Q
Q5 = tower(None, 5)           # K = Q(sqrt(5)) over Q
GOLD = tower(-1, 5)           # K = Q(i)(sqrt(5)) over F = Q(i)
Z8 = tower(-1, 2)             # K = Q(i)(sqrt(2))
Z8A = tower(-1, (0, 1))       # K = Q(i)(sqrt(i)) = Q(zeta_8)

ALL_TOWERS = [QI, Q5, GOLD, Z8, Z8A]


def test_add_cancellation():
    s5 = Q5.ext_gen()
    assert (Q5.one() + s5) + (Q5.rat(2) - s5) == Q5.rat(3)


def test_add_identity():
    x = GOLD.elem((F(1, 3), 2, F(-5, 7), 0))
    assert x + GOLD.zero() == x


def test_add_conjugate_pair():
    i = QI.ext_gen()
    assert (QI.one() + i) + (QI.one() - i) == QI.rat(2)


def test_mul_defining_relations():
    assert Q5.ext_gen() * Q5.ext_gen() == Q5.rat(5)
    assert QI.ext_gen() * QI.ext_gen() == QI.rat(-1)


def test_mul_hand_expansion():
    s5 = Q5.ext_gen()
    # (1+sqrt5)(1-sqrt5) = 1 - 5
    assert (Q5.one() + s5) * (Q5.one() - s5) == Q5.rat(1 - 5)


def test_inv_pinned_values():
    assert QI.rat(2).inv() == QI.rat(F(1, 2))
    assert QI.ext_gen().inv() == -QI.ext_gen()
    x = Q5.one() + Q5.ext_gen()
    assert x.inv() == Q5.elem((F(-1, 4), F(1, 4)))
    assert x * x.inv() == Q5.one()


def test_inv_zero_raises():
    with pytest.raises(ZeroDivisionError):
        GOLD.zero().inv()


def test_galois_conj_top_level():
    assert GOLD.ext_gen().galois_conj() == -GOLD.ext_gen()
    assert GOLD.base_gen().galois_conj() == GOLD.base_gen()   # sigma fixes i
    x = GOLD.elem((1, F(2, 3), -4, F(5, 2)))
    assert x.galois_conj().galois_conj() == x


def test_galois_conj_requires_extension():
    with pytest.raises(ValueError):
        tower(5, None).one().galois_conj()


def test_rel_norm_closed_form():
    # N(c + d sqrt(a)) = c^2 - a d^2 with c, d in F
    c, d = F(3, 2), F(-1, 3)
    for tw in (GOLD, Z8, Z8A):
        a = tw.a_elem()
        cf = tw.from_base_coords((c, 0) if tw.base_dim == 2 else (c,))
        df = tw.from_base_coords((d, 0) if tw.base_dim == 2 else (d,))
        x = cf + df * tw.ext_gen()
        assert x.rel_norm() == cf * cf - a * df * df


def test_rel_norm_pinned():
    assert GOLD.one().rel_norm() == GOLD.one()
    x = GOLD.base_gen() + GOLD.ext_gen()          # i + sqrt(5)
    assert x.rel_norm() == GOLD.rat(-6)


def test_embed_pinned():
    assert QI.ext_gen().embed() == 1j
    i, s5 = GOLD.base_gen(), GOLD.ext_gen()
    b = (i + s5) / (i - s5)
    assert abs(abs(b.embed()) ** 2 - 1) < 1e-12
    b2 = (2 * i + s5) / 3
    assert abs(abs(b2.embed()) ** 2 - 1) < 1e-12


def test_embed_principal_roots():
    assert abs(Q5.ext_gen().embed() - math.sqrt(5)) < 1e-15
    assert abs(QI.ext_gen().embed() - 1j) < 1e-15
    # sqrt(i) embeds to the principal root e^{i pi/4}
    z = Z8A.ext_gen().embed()
    assert abs(z - complex(math.sqrt(0.5), math.sqrt(0.5))) < 1e-15


def test_is_in_base():
    assert GOLD.base_gen().is_in_base()
    assert not GOLD.ext_gen().is_in_base()
    assert (GOLD.base_gen() + 0 * GOLD.ext_gen()).is_in_base()


def test_tower_validation():
    with pytest.raises(ValueError):
        tower(12, None)            # not square-free
    with pytest.raises(ValueError):
        tower(None, 9)             # a is a square
    with pytest.raises(ValueError):
        tower(None, F(4, 9))       # square rational
    with pytest.raises(ValueError):
        tower(-1, 0)
    # (1+i)^2 = 2i, so a = 2i must be rejected over Q(i)
    with pytest.raises(ValueError):
        TowerSpec(-1, (F(0), F(2)))
    # 6 + 2i is not a square in Q(i); accepted
    assert TowerSpec(-1, (F(6), F(2))).dim == 4


def test_tower_mismatch_raises():
    with pytest.raises(ValueError):
        QI.one() + Q5.one()


def test_rational_sqrt():
    assert rational_sqrt(F(49, 4)) == F(7, 2)
    assert rational_sqrt(F(2)) is None
    assert rational_sqrt(F(-1)) is None


# -- hypothesis strategies ------------------------------------------------------

small_fracs = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def elems(tw):
    return st.tuples(*[small_fracs] * tw.dim).map(tw.elem)


@st.composite
def tower_and_elems(draw, n):
    tw = draw(st.sampled_from(ALL_TOWERS))
    return tw, [draw(elems(tw)) for _ in range(n)]


@given(tower_and_elems(3))
@settings(max_examples=150, deadline=None)
def test_field_axioms(te):
    tw, (x, y, z) = te
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if x:
        assert x * x.inv() == tw.one()


@given(tower_and_elems(2))
@settings(max_examples=150, deadline=None)
def test_galois_is_ring_involution(te):
    tw, (x, y) = te
    assert (x * y).galois_conj() == x.galois_conj() * y.galois_conj()
    assert (x + y).galois_conj() == x.galois_conj() + y.galois_conj()
    assert x.galois_conj().galois_conj() == x
    assert (x.galois_conj() == x) == x.is_in_base()


@given(tower_and_elems(2))
@settings(max_examples=150, deadline=None)
def test_rel_norm_multiplicative(te):
    tw, (x, y) = te
    assert (x * y).rel_norm() == x.rel_norm() * y.rel_norm()
    assert bool(x.rel_norm()) == bool(x)


@given(tower_and_elems(2))
@settings(max_examples=150, deadline=None)
def test_embed_is_ring_hom(te):
    tw, (x, y) = te
    assert abs((x * y).embed() - x.embed() * y.embed()) < DEFAULT_TOL
    assert abs((x + y).embed() - (x.embed() + y.embed())) < DEFAULT_TOL


@given(elems(QI))
@settings(max_examples=100, deadline=None)
def test_modulus_matches_norm_quadratic_imaginary(x):
    # for K = Q(i) over Q, sigma embeds as complex conjugation
    n = x.rel_norm().embed()
    assert abs(abs(x.embed()) ** 2 - n) < DEFAULT_TOL


@given(tower_and_elems(1))
@settings(max_examples=150, deadline=None)
def test_cc_matches_embedding(te):
    tw, (x,) = te
    assert abs(x.cc().embed() - x.embed().conjugate()) < DEFAULT_TOL
    absq = x.abs_sq()
    assert absq.is_real()
    assert abs(absq.embed().real - abs(x.embed()) ** 2) < DEFAULT_TOL
    assert absq.sign_real() == (1 if x else 0)


@given(tower_and_elems(2))
@settings(max_examples=150, deadline=None)
def test_exact_real_compare_matches_floats(te):
    tw, (x, y) = te
    u, v = x.abs_sq(), y.abs_sq()
    c = u.compare(v)
    fu, fv = u.embed().real, v.embed().real
    if abs(fu - fv) > 1e-9:
        assert c == (1 if fu > fv else -1)
    if c == 0:
        assert u == v


def test_base_conj():
    x = GOLD.elem((1, 2, 3, 4))
    assert x.base_conj() == GOLD.elem((1, -2, 3, -4))
    assert Q5.elem((1, 2)).base_conj() == Q5.elem((1, 2))   # no base level below Q


def test_serialisation_round_trip():
    for tw in ALL_TOWERS:
        assert tower_from_json(tower_to_json(tw)) == tw
    x = GOLD.elem((F(1, 2), -3, 0, F(7, 5)))
    assert elem_from_json(GOLD, elem_to_json(x)) == x


def test_serialisation_rejects_floats():
    with pytest.raises(ValueError):
        rational_from_json(0.5)
    with pytest.raises(ValueError):
        rational_from_json({"num": 1.0})

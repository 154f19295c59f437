"""Discriminants, class-number tables, unit rank, integrality."""

from fractions import Fraction as F

import pytest

from quatstbc.fields import is_square_free, tower
from quatstbc.numtheory import (IMAG_QUAD_H1, QI_EXT_H1, abs_disc_over_Qi,
                                class_number_is_one, integrality_basis,
                                is_integral, quad_field_info, rel_disc_over_Qi,
                                unit_rank)


def test_quad_field_info_pinned():
    info = quad_field_info(-1)
    assert info.disc == -4 and info.basis_desc == "{1, sqrt(m)}"
    assert info.basis[1] == tower(None, -1).ext_gen()
    assert info.h_is_one is True

    info = quad_field_info(5)
    assert info.disc == 5
    assert info.basis[1] == tower(None, 5).elem((F(1, 2), F(1, 2)))
    assert info.h_is_one is None

    assert quad_field_info(2).disc == 8
    assert quad_field_info(-5).h_is_one is False


def test_quad_field_info_rejects_non_square_free():
    for m in (0, 1, 4, 12, -8):
        with pytest.raises(ValueError):
            quad_field_info(m)


def test_rel_disc_pinned():
    assert rel_disc_over_Qi(5) == 5
    assert rel_disc_over_Qi(2) == 4
    assert rel_disc_over_Qi(3) == 3


def test_rel_disc_never_two():
    for m in range(-200, 201):
        if m == 0 or not is_square_free(m):
            continue
        assert rel_disc_over_Qi(m) != 2


def test_tower_discriminant_identity():
    # |N_{Q(i)/Q}(d_{K/Q(i)})| * |d_{Q(i)}|^2 = |d_K| with d_{Q(i)} = -4
    for m in range(-50, 51):
        if m == 0 or not is_square_free(m):
            continue
        rel = rel_disc_over_Qi(m)
        assert rel * rel * 16 == abs_disc_over_Qi(m)


def test_class_number_tables_verbatim():
    assert IMAG_QUAD_H1 == {1, 2, 3, 7, 11, 19, 43, 67, 163}
    assert QI_EXT_H1 == {2, 3, 5, 7, 11, 13, 19, 37, 43, 67, 163}
    assert class_number_is_one("imag_quad", 1)
    assert class_number_is_one("qi_ext", 5)
    assert not class_number_is_one("qi_ext", 6)
    assert not class_number_is_one("imag_quad", 5)


def test_class_number_domain_errors():
    with pytest.raises(ValueError):
        class_number_is_one("imag_quad", -3)
    with pytest.raises(ValueError):
        class_number_is_one("qi_ext", 12)
    with pytest.raises(ValueError):
        class_number_is_one("real_quad", 5)


def test_unit_rank():
    assert unit_rank(0, 1) == 0     # Q(i)
    assert unit_rank(2, 0) == 1     # Q(sqrt 5)
    assert unit_rank(0, 2) == 1     # Q(i)(sqrt 5), totally imaginary quartic
    with pytest.raises(ValueError):
        unit_rank(0, 0)


def test_integral_basis_elements_are_algebraic_integers():
    # rational integer relative norm and trace over Q
    for m in (-1, -3, 2, 5, 13, -7):
        info = quad_field_info(m)
        for e in info.basis:
            tw = e.tower
            conj = tw.elem((e.coords[0], -e.coords[1]))
            assert (e * conj).coords[0].denominator == 1
            assert (e + conj).coords[0].denominator == 1


def test_is_integral_quadratic():
    tw = tower(None, 5)
    theta = tw.elem((F(1, 2), F(1, 2)))
    assert is_integral(theta) is True
    assert is_integral(theta / 2) is False
    assert is_integral(tw.ext_gen()) is True
    qi = tower(None, -1)
    assert is_integral(qi.ext_gen() / 2) is False


def test_is_integral_relative():
    gold = tower(-1, 5)
    theta = gold.elem((F(1, 2), 0, F(1, 2), 0))
    assert is_integral(theta) is True
    assert is_integral(gold.base_gen() - gold.ext_gen()) is True    # i - sqrt(5)
    assert is_integral(theta / 3) is False
    z8t = tower(-1, 2)
    zeta8 = z8t.elem((0, 0, F(1, 2), F(1, 2)))
    assert is_integral(zeta8) is True
    assert is_integral(z8t.ext_gen() / 2) is False                  # sqrt(2)/2
    z3t = tower(-1, 3)
    zeta3 = z3t.elem((F(-1, 2), 0, 0, F(1, 2)))
    assert is_integral(zeta3) is True
    # a = i: power basis is integral
    z8a = tower(-1, (0, 1))
    assert is_integral(z8a.ext_gen()) is True
    assert is_integral(z8a.ext_gen() / 2) is False


def test_is_integral_unknown_tower():
    tw = tower(-1, 7)     # no tabulated relative basis
    assert integrality_basis(tw) is None
    assert is_integral(tw.one()) is True          # integer coordinates suffice
    assert is_integral(tw.ext_gen() / 2) is None  # undecided here

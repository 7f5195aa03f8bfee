from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from exczero.characters import (
    AdditiveCharacterPsi, Quasicharacter, all_primitive_characters,
    euler_factor, gauss_sum, legendre_character, local_L,
    mellin_closed_form, trivial_character,
)
from exczero.cyclotomic import CValue, zeta


def test_psi_trivial_on_Zp():
    psi = AdditiveCharacterPsi(5)
    assert psi(3) == CValue.exact(1)
    assert psi(Fraction(7, 3)) == CValue.exact(1)
    assert not (psi(Fraction(1, 5)) == CValue.exact(1))


@given(st.sampled_from([3, 5, 7]),
       st.fractions(min_value=-50, max_value=50),
       st.fractions(min_value=-50, max_value=50))
@settings(max_examples=60)
def test_psi_is_additive(p, x, y):
    psi = AdditiveCharacterPsi(p)
    assert psi(x + y) == psi(x) * psi(y)


def test_gauss_sum_trivial_is_one():
    assert gauss_sum(trivial_character(7)) == CValue.exact(1)


def test_gauss_sum_legendre_5():
    chi = legendre_character(5)
    tau = gauss_sum(chi)
    assert tau * tau == CValue.exact(5)  # p = 1 mod 4: tau = sqrt(5)
    assert abs(tau.abs2() - 5) < 1e-9


def test_gauss_sum_order4_mod5():
    chi = next(c for c in all_primitive_characters(5, 1)
               if not (c.value_at_unit(2) ** 2 == CValue.exact(1)))
    tau = gauss_sum(chi)
    taubar = gauss_sum(chi.inverse())
    assert abs((tau * taubar).to_complex() - (tau.to_complex() * taubar.to_complex())) < 1e-12
    assert abs(tau.abs2() - 5) < 1e-9


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_tau_times_tau_inverse_exact(p):
    for chi in all_primitive_characters(p, 1):
        lhs = gauss_sum(chi) * gauss_sum(chi.inverse())
        assert lhs == chi.at_minus_one() * p
        assert abs(gauss_sum(chi).abs2() - p) < 1e-9


@pytest.mark.parametrize("p,f", [(3, 2), (5, 2)])
def test_tau_identity_higher_conductor(p, f):
    q = p ** f
    for chi in all_primitive_characters(p, f)[:6]:
        assert chi.f == f
        lhs = gauss_sum(chi) * gauss_sum(chi.inverse())
        assert lhs == chi.at_minus_one() * q


def test_imprimitive_input_is_renormalized():
    # a mod-25 table that only depends on u mod 5 must come out with f = 1
    leg = legendre_character(5)
    table = {u: leg.value_at_unit(u % 5) for u in range(1, 25) if u % 5}
    chi = Quasicharacter(5, 1, 2, table)
    assert chi.f == 1
    assert chi.value_at_unit(2) == leg.value_at_unit(2)
    # fully trivial table collapses to the unramified character
    triv = Quasicharacter(5, 1, 2, {u: CValue.exact(1) for u in range(1, 25) if u % 5})
    assert triv.f == 0


def test_mellin_closed_form_cases():
    assert mellin_closed_form(trivial_character(5, 1)) == CValue.exact(0)
    assert mellin_closed_form(trivial_character(5, Fraction(2))) == CValue.exact(Fraction(5, 6))
    chi = legendre_character(5)
    assert mellin_closed_form(chi) == gauss_sum(chi)
    with pytest.raises(ValueError):
        mellin_closed_form(trivial_character(5, Fraction(5)))
    with pytest.raises(ValueError):
        mellin_closed_form(trivial_character(5, Fraction(7)))


def test_euler_factor_table():
    assert euler_factor(1, trivial_character(5)) == CValue.exact(0)
    assert euler_factor(-1, trivial_character(5)) == CValue.exact(2)
    chi2 = all_primitive_characters(5, 2)[0]
    assert euler_factor(Fraction(3), chi2) == CValue.exact(Fraction(1, 9))
    # spherical alpha = 2, trivial chi: (1 - 1/2)(1 - 1/2) = 1/4
    assert euler_factor(Fraction(2), trivial_character(5)) == CValue.exact(Fraction(1, 4))


def test_local_L_cases():
    assert local_L(Fraction(1, 2), 1, legendre_character(5)) == CValue.exact(1)
    assert local_L(Fraction(1, 2), 1, trivial_character(5)) == CValue.exact(Fraction(5, 4))
    assert local_L(Fraction(1, 2), Fraction(2), trivial_character(5)) == CValue.exact(Fraction(10, 3))


def test_character_multiplicativity():
    for chi in all_primitive_characters(7, 1):
        for u in range(1, 7):
            for v in range(1, 7):
                assert chi.value_at_unit(u * v) == chi.value_at_unit(u) * chi.value_at_unit(v)


def test_quasicharacter_value_includes_uniformizer():
    chi = legendre_character(5, t=Fraction(3))
    assert chi(Fraction(50)) == CValue.exact(9) * chi.value_at_unit(2)
    assert chi(Fraction(1, 5)) == CValue.exact(Fraction(1, 3))

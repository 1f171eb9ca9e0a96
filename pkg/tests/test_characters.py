import math

import pytest

from padic_euler.characters import make_character, parse_character
from padic_euler.errors import DomainError
from padic_euler.padic import make


def test_trivial_mod_one():
    chi = make_character("trivial", 1, 5, 4)
    assert chi.values == (make(5, 4, 1),)
    assert chi(17) == make(5, 4, 1)


def test_quadratic_mod_3():
    chi = make_character("quadratic", 3, 7, 4)
    assert [v.to_fraction() for v in chi.values] == [0, 1, 7**4 - 1]
    assert chi(2) == make(7, 4, -1)


def test_quadratic_mod_5():
    chi = make_character("quad", 5, 3, 4)
    squares = {a * a % 5 for a in range(1, 5)}
    expected = [0] + [1 if a in squares else -1 for a in range(1, 5)]
    assert chi.values == tuple(make(3, 4, e) for e in expected)
    assert expected == [0, 1, -1, -1, 1]


@pytest.mark.parametrize(
    "kind,F,p,power",
    [
        ("trivial", 15, 7, 0),
        ("quadratic", 7, 5, 1),
        ("quadratic", 11, 3, 1),
        ("teichmuller_power", 7, 13, 1),
        ("teichmuller_power", 7, 13, 2),
        ("teichmuller_power", 9, 7, 1),
        ("teichmuller_power", 35, 13, 1),
        ("teichmuller_power", 3, 11, 1),
    ],
)
def test_character_axioms(kind, F, p, power):
    prec = 5
    chi = make_character(kind, F, p, prec, power)
    assert chi(1) == make(p, prec, 1)
    for a in range(F):
        assert chi(a).is_zero == (math.gcd(a, F) > 1)
        assert chi(a + 3 * F) == chi(a)
        for b in range(F):
            assert chi(a * b) == (chi(a) * chi(b)).with_prec(prec)


def test_teichmuller_power_with_order_two_is_quadratic():
    # (Z/3)^* has order 2, so the only nontrivial Z_7-valued character is the Legendre symbol
    assert make_character("teich", 3, 7, 6).values == make_character("quad", 3, 7, 6).values


def test_teichmuller_power_order():
    chi = make_character("teichmuller_power", 7, 13, 6)
    # gcd(6, 12) = 6: values are sixth roots of unity, one of them primitive
    orders = set()
    for a in range(1, 7):
        v = chi(a)
        k = next(k for k in range(1, 7) if (v**k) == make(13, 6, 1))
        orders.add(k)
    assert max(orders) == 6


@pytest.mark.parametrize("F", [2, 6, 0, -3])
def test_rejects_even_or_bad_modulus(F):
    with pytest.raises(DomainError):
        make_character("trivial", F, 5, 4)


def test_rejects_modulus_divisible_by_p():
    with pytest.raises(DomainError):
        make_character("quadratic", 5, 5, 4)


def test_quadratic_needs_prime():
    with pytest.raises(DomainError):
        make_character("quadratic", 9, 5, 4)


def test_parse_character():
    assert parse_character("quad:3", 7, 4).kind == "quadratic"
    chi = parse_character("teich2:7", 13, 4)
    assert (chi.kind, chi.power, chi.modulus) == ("teichmuller_power", 2, 7)
    with pytest.raises(DomainError):
        parse_character("quad3", 7, 4)
    with pytest.raises(DomainError):
        parse_character("cubic:7", 13, 4)

import random
from fractions import Fraction

import pytest

from padic_euler.characters import make_character
from padic_euler.dsl import parse_function
from padic_euler.errors import DomainError, ParseError
from padic_euler.padic import make
from padic_euler.ud import (
    Char,
    Scale,
    Shift,
    Twist,
    X,
    check_uniformly_differentiable,
    evaluate,
    random_function,
    shift,
    twist,
)


def test_shift_of_square_at_zero():
    assert evaluate(shift(X**2, 1), 0, 5, 4) == make(5, 4, 1)


def test_shift_zero_is_identity():
    f = X**3 + 2
    assert shift(f, 0) is f


def test_shift_twist_normalizes_to_scalar():
    lam = make(5, 6, 6)
    assert shift(twist(lam), 3) == Scale(lam**3, Twist(lam))


def test_shift_composes():
    rng = random.Random(11)
    f = random_function(rng, 5, 6)
    a, b = 3, 4
    g, h = shift(shift(f, a), b), shift(f, a + b)
    for _ in range(20):
        x = rng.randrange(10**6)
        assert evaluate(g, x, 5, 6) == evaluate(h, x, 5, 6)


def test_shift_of_character_keeps_node():
    chi = make_character("quad", 3, 5, 4)
    assert shift(Char(chi), 2) == Shift(Char(chi), 2)
    assert evaluate(shift(Char(chi), 2), 0, 5, 4) == chi(2)


def brute(f_py, x, p, prec):
    return make(p, prec, f_py(x))


@pytest.mark.parametrize("x", [0, 1, 2, 7, 124, 5**7 + 3])
def test_evaluate_against_python(x):
    p, prec = 5, 6
    chi = make_character("quad", 3, p, prec)
    f = 3 * X**4 * twist(make(p, prec, 6)) + shift(Char(chi) * X, 1) - Fraction(1, 2)
    leg = {0: 0, 1: 1, 2: -1}

    def f_py(t):
        return 3 * t**4 * Fraction(6) ** t + leg[(t + 1) % 3] * (t + 1) - Fraction(1, 2)

    assert evaluate(f, x, p, prec) == brute(f_py, x, p, prec)


def test_evaluate_large_modulus_object_path():
    # p^prec beyond int64-safe products
    p, prec = 7, 30
    f = X**5 * twist(make(p, prec, 8)) + 1
    for x in (0, 3, 1000):
        assert evaluate(f, x, p, prec) == make(p, prec, x**5 * 8**x + 1)


def test_ud_check():
    check_uniformly_differentiable(twist(make(3, 5, 4)) * X, 3)
    check_uniformly_differentiable(twist(Fraction(7, 2)), 5)
    with pytest.raises(DomainError):
        check_uniformly_differentiable(twist(make(5, 5, 2)), 5)
    with pytest.raises(DomainError):
        check_uniformly_differentiable(twist(2), 5)


def test_random_functions_are_ud():
    rng = random.Random(3)
    for _ in range(50):
        f = random_function(rng, 7, 5)
        check_uniformly_differentiable(f, 7)
        assert sum(isinstance(n, Twist) for n in _nodes(f)) <= 2


def _nodes(f):
    from padic_euler.ud import walk

    return list(walk(f))


@pytest.mark.parametrize(
    "text,x,expected",
    [
        ("x", 4, 4),
        ("1", 9, 1),
        ("x^3 + 2*x - 1", 3, 32),
        ("(x + 1)^2", 2, 9),
        ("shift(x^2, 1)", 0, 1),
        ("-(1/2) * x", 4, -2),
        ("x * twist(6)", 2, 72),
        ("x^2 * twist(lambda)", 2, 144),
        ("2 * 3 * x", 1, 6),
    ],
)
def test_parse_and_evaluate(text, x, expected):
    f = parse_function(text, 5, 6, {"lambda": make(5, 6, 6)})
    assert evaluate(f, x, 5, 6) == make(5, 6, expected)


def test_parse_character_term():
    f = parse_function("chi(quad,3) * x^2", 5, 6)
    assert evaluate(f, 2, 5, 6) == make(5, 6, -4)


@pytest.mark.parametrize(
    "text,pos",
    [("x +", 3), ("twist(x)", 6), ("y * x", 0), ("x^a", 2), ("chi(3)", 4), ("x )", 2), ("1/0", 0)],
)
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse_function(text, 5, 6)
    assert err.value.position == pos

import cmath

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sedf.cyclotomic import (
    CycInt,
    IntPolynomial,
    absolute_square,
    conjugate,
    cyclotomic_polynomial,
    divisors,
    factorize,
    multiply,
    nt_is_primitive_root,
    nt_is_self_conjugate,
    nt_order,
    nt_valuation,
    totient,
)

import oracles


def test_small_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1).coeffs == (-1, 1)
    assert cyclotomic_polynomial(3).coeffs == (1, 1, 1)
    assert cyclotomic_polynomial(4).coeffs == (1, 0, 1)
    assert cyclotomic_polynomial(12).coeffs == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("n", [1, 2, 6, 30, 105, 210, 243])
def test_cyclotomic_matches_sympy(n):
    assert list(cyclotomic_polynomial(n).coeffs) == oracles.sympy_cyclotomic(n)


def test_phi_105_has_a_coefficient_minus_two():
    assert -2 in cyclotomic_polynomial(105).coeffs


def test_polynomial_division_round_trip():
    a = IntPolynomial((3, 0, -2, 5))
    b = IntPolynomial((1, 1))
    q, r = (a * b).divmod_monic(b)
    assert q == a and r.coeffs == ()


def test_multiply_examples():
    z3 = CycInt.root(3)
    assert multiply(1 + z3, 1 + z3 * z3) == 1
    z4 = CycInt.root(4)
    assert multiply(z4, z4) == -1
    x = CycInt(7, (1, 2, 3))
    assert multiply(x, CycInt.from_int(7, 1)) == x


def test_mismatched_orders_rejected():
    with pytest.raises(ValueError):
        CycInt.root(3) + CycInt.root(5)


def test_conjugate_examples():
    z3 = CycInt.root(3)
    assert conjugate(z3) == CycInt(3, (-1, -1))
    assert conjugate(CycInt.from_int(9, 5)) == 5


def test_absolute_square_examples():
    assert absolute_square(CycInt.from_int(3, -1)) == 1
    x = 1 + CycInt.root(5)
    sq = absolute_square(x)
    assert not sq.is_rational()
    assert sq == 2 + CycInt.root(5) + CycInt.root(5, 4)
    assert absolute_square(CycInt.from_int(8, 0)).is_zero()


def test_root_powers_wrap():
    assert CycInt.root(6, 6) == 1
    assert CycInt.root(6, 3) == -1
    assert CycInt.root(10, 5) == -1


def test_number_theory_examples():
    assert nt_is_primitive_root(2, 11)
    assert not nt_is_primitive_root(2, 7)
    assert nt_is_self_conjugate(2, 81)
    assert nt_valuation(5, 425) == 2
    assert nt_order(10, 7) == 6
    assert totient(243) == 162
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert factorize(5832) == ((2, 3), (3, 6))


def test_number_theory_errors():
    with pytest.raises(ValueError):
        nt_valuation(3, 0)
    with pytest.raises(ValueError):
        nt_order(3, 9)


def test_primitive_roots_agree_with_sympy():
    for n in range(2, 200):
        for q in (2, 3, 5, 7, 11, 13):
            assert nt_is_primitive_root(q, n) == oracles.sympy_primitive_root(q, n), (q, n)


def test_self_conjugacy_agrees_with_search():
    for n in range(1, 400):
        for q in (2, 3, 5, 7):
            assert nt_is_self_conjugate(q, n) == oracles.self_conjugate_by_search(q, n), (q, n)


def test_primitive_root_implies_self_conjugate():
    for n in range(3, 500):
        for q in (2, 3, 5, 7, 11):
            if nt_is_primitive_root(q, n):
                assert nt_is_self_conjugate(q, n)


def _value(x: CycInt) -> complex:
    z = cmath.exp(2j * cmath.pi / x.n)
    return sum(c * z**i for i, c in enumerate(x.coeffs))


cyc = st.integers(min_value=1, max_value=60).flatmap(
    lambda n: st.lists(st.integers(-5, 5), min_size=n, max_size=n).map(lambda cs: CycInt.from_exponent_counts(n, cs))
)


@settings(max_examples=80, deadline=None)
@given(cyc)
def test_conjugate_is_an_involution(x):
    assert conjugate(conjugate(x)) == x
    assert absolute_square(x) == absolute_square(conjugate(x))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 100), st.data())
def test_reduction_agrees_with_floating_evaluation(n, data):
    counts = data.draw(st.lists(st.integers(-4, 4), min_size=n, max_size=n))
    x = CycInt.from_exponent_counts(n, counts)
    z = cmath.exp(2j * cmath.pi / n)
    direct = sum(c * z**t for t, c in enumerate(counts))
    assert abs(_value(x) - direct) < 1e-6


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 40), st.data())
def test_ring_laws(n, data):
    draw = lambda: CycInt.from_exponent_counts(n, data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n)))
    x, y, w = draw(), draw(), draw()
    assert x * (y + w) == x * y + x * w
    assert (x * y) * w == x * (y * w)
    assert x * y == y * x
    assert conjugate(x * y) == conjugate(x) * conjugate(y)

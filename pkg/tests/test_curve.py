import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bachet.exceptions import (
    CurveMismatchError,
    DuplicationUndefinedError,
    EnumerationBoundError,
    PointNotOnCurveError,
    SingularCurveError,
)
from bachet.services.curve import (
    BachetCurve,
    Point,
    RationalSolution,
    add,
    bachet_duplicate,
    enumerate_points,
    negate,
    point_order,
    random_point,
    scalar_mul,
)
from bachet.services.counting import count_by_character_sum
from bachet.utils.field import FieldElement, Prime, primes_in_class, smallest_nonresidue
from bachet.utils.helpers import factorize

E71 = BachetCurve.of(7, 1)
E73 = BachetCurve.of(7, 3)

curves = st.sampled_from([(p, a) for p in (5, 7, 11, 13, 19, 31, 37, 43) for a in (1, 2, 3)])


def P(curve, x, y):
    return Point.affine(curve, x, y)


def test_curve_coefficients():
    assert E71.B.value == 1
    assert E73.B.value == 6
    assert str(E71) == "y^2 = x^3 + 1^3 (mod 7)"
    assert BachetCurve.of(7, 8) == E71


def test_singular_curve():
    with pytest.raises(SingularCurveError):
        BachetCurve.of(7, 0)
    with pytest.raises(SingularCurveError):
        BachetCurve.of(7, 14)


def test_coefficient_from_other_field():
    with pytest.raises(CurveMismatchError):
        BachetCurve(Prime(7), FieldElement(1, 11))


def test_point_must_be_on_curve():
    with pytest.raises(PointNotOnCurveError):
        P(E71, 0, 2)


def test_points_from_different_curves():
    with pytest.raises(CurveMismatchError):
        add(P(E71, 0, 1), P(E73, 1, 0))


def test_tangent_doubling():
    assert add(P(E71, 0, 1), P(E71, 0, 1)) == P(E71, 0, 6)


def test_chord_through_two_torsion():
    assert add(P(E71, 3, 0), P(E71, 5, 0)) == P(E71, 6, 0)


def test_inverse_and_two_torsion():
    assert add(P(E71, 0, 1), P(E71, 0, 6)).is_infinity
    assert add(P(E71, 3, 0), P(E71, 3, 0)).is_infinity


def test_identity():
    o = Point.infinity(E71)
    assert add(o, P(E71, 0, 1)) == P(E71, 0, 1)
    assert str(o) == "o"
    assert str(P(E71, 0, 1)) == "(0,1)"


def test_enumerate_p7_a3():
    points = enumerate_points(E73)
    assert [str(pt) for pt in points] == ["o", "(1,0)", "(2,0)", "(4,0)"]


def test_enumerate_sorted():
    points = enumerate_points(E71)
    assert len(points) == 12
    assert [pt.sort_key for pt in points] == sorted(pt.sort_key for pt in points)


def test_enumeration_bound():
    with pytest.raises(EnumerationBoundError):
        enumerate_points(E71, bound=5)


def test_point_order():
    factors = factorize(12)
    assert point_order(Point.infinity(E71), factors) == 1
    assert point_order(P(E71, 0, 1), factors) == 3
    assert point_order(P(E71, 3, 0), factors) == 2
    assert all(point_order(pt, factorize(4)) in (1, 2) for pt in enumerate_points(E73))


def test_scalar_mul():
    pt = P(E71, 0, 1)
    assert scalar_mul(0, pt).is_infinity
    assert scalar_mul(-1, pt) == negate(pt)
    assert scalar_mul(4, pt) == pt


def test_random_point_seeded():
    first = random_point(E71, random.Random(5))
    second = random_point(E71, random.Random(5))
    assert first == second
    assert E71.contains(first.x.value, first.y.value)


def test_duplication():
    doubled = bachet_duplicate(RationalSolution(3, 5, -2))
    assert doubled.x == Fraction(129, 100)
    assert doubled.y == Fraction(383, 1000)


def test_duplication_chain_stays_on_curve():
    s = RationalSolution(3, 5, -2)
    for _ in range(3):
        s = bachet_duplicate(s)
        assert s.y * s.y - s.x ** 3 == -2


def test_duplication_undefined():
    with pytest.raises(DuplicationUndefinedError):
        bachet_duplicate(RationalSolution(2, 0, -8))


def test_rational_solution_validated():
    with pytest.raises(PointNotOnCurveError):
        RationalSolution(1, 1, 5)


@given(curve=curves, seeds=st.tuples(st.integers(), st.integers(), st.integers()))
def test_group_axioms(curve, seeds):
    E = BachetCurve.of(*curve)
    X, Y, Z = (random_point(E, random.Random(seed)) for seed in seeds)
    o = Point.infinity(E)
    assert add(X, Y) == add(Y, X)
    assert add(add(X, Y), Z) == add(X, add(Y, Z))
    assert add(X, o) == X
    assert add(X, negate(X)).is_infinity


@given(curve=curves, seed=st.integers())
def test_order_kills_point(curve, seed):
    E = BachetCurve.of(*curve)
    N = count_by_character_sum(E).N
    assert scalar_mul(N, random_point(E, random.Random(seed))).is_infinity


def representatives(p):
    return [BachetCurve.of(p, a) for a in sorted({1, smallest_nonresidue(p).value})]


@pytest.mark.parametrize("p", primes_in_class(50, 1, 1))
def test_group_law_all_pairs(p):
    for E in representatives(p):
        points = enumerate_points(E)
        o = points[0]
        for X in points:
            assert add(X, o) == X == add(o, X)
            assert add(X, negate(X)).is_infinity
            for Y in points:
                assert add(X, Y) == add(Y, X)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_associativity_all_triples(p):
    for E in representatives(p):
        points = enumerate_points(E)
        for X in points:
            for Y in points:
                XY = add(X, Y)
                for Z in points:
                    assert add(XY, Z) == add(X, add(Y, Z))


@pytest.mark.slow
def test_associativity_random_triples():
    rng = random.Random(0)
    curves = [BachetCurve.of(p, a) for p in primes_in_class(400, 1, 1)[20:30] for a in (1, 2)]
    assert len(curves) == 20
    for E in curves:
        for _ in range(1000):
            X, Y, Z = (random_point(E, rng) for _ in range(3))
            assert add(add(X, Y), Z) == add(X, add(Y, Z))


@pytest.mark.slow
def test_group_order_kills_every_point():
    for p in primes_in_class(499, 1, 1):
        for E in representatives(p):
            points = enumerate_points(E)
            assert all(scalar_mul(len(points), X).is_infinity for X in points)


def test_random_duplication_chains():
    rng = random.Random(0)
    chains = 0
    while chains < 100:
        x, y = rng.randint(-30, 30), rng.randint(1, 30)
        c = y * y - x ** 3
        if c == 0:
            continue
        s = RationalSolution(x, y, c)
        for _ in range(3):
            s = bachet_duplicate(s)
            assert s.y * s.y - s.x ** 3 == c
        chains += 1

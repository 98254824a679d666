import pytest
from hypothesis import given, settings, strategies as st

from fatpoints import library
from fatpoints.coeffs import QQ
from fatpoints.groebner import Ideal, ideal_equal, member
from fatpoints.ideal_ops import (colon, ideal_power, ideal_product, ideal_quotient, ideal_sum,
                                 intersect, intersect_all, irrelevant_ideal, prune_generators,
                                 saturate)
from fatpoints.invariants import alpha, hilbert_function
from fatpoints.oracle import symbolic_hilbert
from fatpoints.schemes import (FatPointScheme, ProjectivePoint, fat_point_ideal,
                               random_points, symbolic_power)
from conftest import ideal, poly

M = irrelevant_ideal(2, QQ)


def test_irrelevant_ideal():
    assert ideal_equal(M, ideal("x", "y", "z"))
    M3 = ideal_power(M, 3)
    assert member(poly("x^2*y"), M3)
    assert not member(poly("x^2"), M3)
    with pytest.raises(ValueError):
        irrelevant_ideal(0, QQ)


def test_sum_product_power():
    assert ideal_equal(ideal_product(ideal("x"), ideal("y")), ideal("x*y"))
    assert ideal_equal(ideal_sum(ideal("x"), ideal("y")), ideal("x", "y"))
    sq = ideal_power(ideal("x", "y"), 2)
    assert sorted(map(str, sq.generators)) == ["x*y", "x^2", "y^2"]
    with pytest.raises(ValueError):
        ideal_power(ideal("x"), 0)


def test_power_prunes_dependent_products():
    gens = prune_generators([poly("x+y"), poly("x-y"), poly("2*x"), poly("0")])
    assert len(gens) == 2
    assert len(ideal_power(ideal("x", "y", "x+y"), 3).generators) == 4


def test_alpha_of_dual_hesse_square(dual_hesse):
    _, J = dual_hesse
    I = fat_point_ideal(J)
    assert alpha(I) == 4
    sq = ideal_power(I, 2)
    assert alpha(sq) == 8
    assert hilbert_function(sq, 7) == 36  # no form of degree 7


def test_intersect_examples():
    assert ideal_equal(intersect(ideal("x"), ideal("y")), ideal("x*y"))
    assert ideal_equal(intersect(ideal("x", "y"), ideal("x", "z")), ideal("x", "y*z"))


def test_intersection_gives_example_ideal(example33):
    A, S = example33
    I = intersect_all([ideal_power(ideal("x", "y"), 2), ideal("x", "z"),
                       ideal("y", "z"), ideal("x-y", "z")])
    assert alpha(I) == 3
    assert ideal_equal(I, fat_point_ideal(S))


def test_colon_and_saturate():
    assert ideal_equal(colon(ideal("x*y"), poly("x")), ideal("y"))
    # in P^1 the embedded component of <x^2, xy> is irrelevant and goes away
    M1 = irrelevant_ideal(1, QQ)
    assert ideal_equal(saturate(ideal("x^2", "x*y", nvars=2), M1), ideal("x", nvars=2))
    # in P^2 it sits at [0:0:1], so the ideal is already saturated
    assert ideal_equal(saturate(ideal("x^2", "x*y"), M), ideal("x^2", "x*y"))
    sq = ideal_power(ideal("x", "y"), 2)
    assert ideal_equal(saturate(sq, M), sq)
    assert ideal_equal(ideal_quotient(ideal("x^2", "x*y", "x*z"), M), ideal("x"))
    with pytest.raises(ValueError):
        colon(ideal("x"), poly("0"))


def test_intersection_members_and_hilbert():
    pts = [ProjectivePoint.of(c) for c in ((1, 2, 3), (1, -1, 0), (0, 1, 5))]
    S = FatPointScheme(pts, [2, 1, 3])
    I = fat_point_ideal(S)
    for d in range(10):
        assert hilbert_function(I, d) == symbolic_hilbert(S, 1, d)


@pytest.mark.parametrize("name", ["triangle", "generic4.points", "xyxmyz.points", "random5"])
def test_fat_point_ideals_are_saturated(name):
    S = next(s for s in library.point_fixtures() if s.name == name)
    I = fat_point_ideal(S)
    assert ideal_equal(saturate(I, M), I)


@pytest.mark.parametrize("name,m", [("triangle", 2), ("triangle", 3), ("generic4.points", 2),
                                    ("xyxmyz.points", 2), ("random5", 2)])
def test_saturated_power_is_symbolic_power(name, m):
    S = next(s for s in library.point_fixtures() if s.name == name)
    I = fat_point_ideal(S)
    assert ideal_equal(saturate(ideal_power(I, m), M), symbolic_power(S, m))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**5))
def test_intersect_commutative_associative(seed):
    pts = random_points(3, 2, seed, height=5).points
    a, b, c = (fat_point_ideal(FatPointScheme([P], [k])) for P, k in zip(pts, (1, 2, 1)))
    assert ideal_equal(intersect(a, b), intersect(b, a))
    assert ideal_equal(intersect(intersect(a, b), c), intersect(a, intersect(b, c)))

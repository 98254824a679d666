import random

import pytest
from hypothesis import given, settings, strategies as st

from fatpoints.coeffs import QQ, QW
from fatpoints.poly import (GREVLEX, LEX, Block, Polynomial, derivative_multi_indices,
                            euler_sum, evaluate_derivative, monomials_of_degree,
                            parse_polynomial, partial_derivative, random_homogeneous)
from fatpoints.schemes import ProjectivePoint
from conftest import poly

F_TEXT = "(x^3-y^3)*(y^3-z^3)*(z^3-x^3)"


def test_difference_of_squares():
    assert poly("x+y") * poly("x-y") == poly("x^2-y^2")


def test_additive_inverse():
    f = poly("x^2*y - 3/2*z^3")
    assert (f + (-f)).is_zero()
    assert not (f - f)


def test_cube_factorisation_over_qw():
    f = poly("(x-y)*(x-w*y)*(x-w^2*y)", QW)
    assert f == poly("x^3-y^3", QW)


def test_partial_derivatives():
    assert partial_derivative(poly("x^2*y"), 0) == poly("2*x*y")
    assert partial_derivative(poly("x^2*y"), 2).is_zero()
    with pytest.raises(IndexError):
        partial_derivative(poly("x"), 3)


def test_euler_cubic():
    f = poly("x^3-y^3")
    assert euler_sum(f) == 3 * f


def test_evaluate_derivative_examples():
    P = ProjectivePoint.of((0, 0, 1))
    assert evaluate_derivative(poly("x^2+y*z"), P, (0, 0, 0)) == 0
    assert evaluate_derivative(poly("x^2"), P, (1, 0, 0)) == 0
    assert evaluate_derivative(poly("x^2"), P, (2, 0, 0)) == 2


def test_fermat_product_vanishes_doubly_at_origin_chart():
    F = poly(F_TEXT)
    P = ProjectivePoint.of((0, 0, 1))
    mus = derivative_multi_indices(3, 2, skip=2)
    assert len(mus) == 6
    assert all(evaluate_derivative(F, P, mu) == 0 for mu in mus)
    # all ten multi-indices too, since F is homogeneous
    assert all(evaluate_derivative(F, P, mu) == 0 for mu in derivative_multi_indices(3, 2))
    assert evaluate_derivative(F, P, (3, 0, 0)) != 0


def test_parse_and_print_roundtrip():
    f = parse_polynomial("x^2*y - 3/2*z^3")
    assert str(f) == "x^2*y - 3/2*z^3"
    assert parse_polynomial(str(f)) == f
    g = parse_polynomial("x - w*y", QW)
    assert parse_polynomial(str(g), QW) == g
    h = parse_polynomial("x0*x3 - x1^2", nvars=4)
    assert h.nvars == 4 and h.degree() == 2


def test_homogeneity_and_degree():
    assert poly("x^2+y*z").is_homogeneous()
    assert not poly("x^2+y").is_homogeneous()
    assert poly("0").degree() == -1
    assert poly("x+1").homogeneous_component(1) == poly("x")


def test_leading_terms():
    f = poly("x*z^2 + y^3")
    assert f.leading_monomial(LEX) == (1, 0, 2)
    assert f.leading_monomial(GREVLEX) == (0, 3, 0)
    t = Polynomial.variable(QQ, 4, 3)
    g = Polynomial.variable(QQ, 4, 0) ** 5 + t
    assert g.leading_monomial(Block([3])) == (0, 0, 0, 1)


def test_monomial_counts():
    assert len(monomials_of_degree(3, 4)) == 15
    assert len(set(monomials_of_degree(4, 3))) == 20


exps = st.tuples(*[st.integers(0, 6)] * 3)


@pytest.mark.parametrize("order", [GREVLEX, LEX, Block([0])], ids=["grevlex", "lex", "block"])
@settings(max_examples=100, deadline=None)
@given(a=exps, b=exps, c=exps)
def test_order_is_multiplicative(order, a, b, c):
    ac = tuple(i + k for i, k in zip(a, c))
    bc = tuple(j + k for j, k in zip(b, c))
    assert order.compare(a, b) == order.compare(ac, bc)
    assert order.compare(a, a) == 0
    assert order.compare((0, 0, 0), a) <= 0


def _rand(seed, degree, domain=QQ):
    return random_homogeneous(random.Random(seed), domain, 3, degree)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 5), st.integers(0, 5), st.integers(0, 2))
def test_product_rule(seed, d1, d2, i):
    f, g = _rand(seed, d1), _rand(seed + 1, d2)
    lhs = partial_derivative(f * g, i)
    rhs = partial_derivative(f, i) * g + f * partial_derivative(g, i)
    assert lhs == rhs
    assert partial_derivative(f + g, i) == partial_derivative(f, i) + partial_derivative(g, i)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 6), st.sampled_from([1, 2, 3, -5]))
def test_vanishing_order_ignores_representative(seed, degree, scale):
    f = _rand(seed, degree, QW)
    rng = random.Random(seed)
    coords = [QW.convert(rng.randint(-3, 3)) + QW.gen * rng.randint(-3, 3) for _ in range(3)]
    if not any(coords):
        coords[0] = QW.one
    P = ProjectivePoint.of(coords, QW)
    raw = [c * scale for c in coords]

    def order(pt):
        k = 0
        while k <= degree and all(evaluate_derivative(f, pt, mu) == 0
                                  for mu in derivative_multi_indices(3, k)):
            k += 1
        return k

    assert order(P) == order(raw)

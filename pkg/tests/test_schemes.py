import pytest
from hypothesis import given, settings, strategies as st

from fatpoints import library
from fatpoints.coeffs import QQ, QW
from fatpoints.groebner import ideal_equal, member
from fatpoints.ideal_ops import ideal_power
from fatpoints.invariants import alpha
from fatpoints.oracle import alpha_oracle
from fatpoints.schemes import (FatPointScheme, FixtureError, ProjectivePoint, arrangement_make,
                               fat_point_ideal, format_fixture, intersection_counts,
                               linear_form, parse_fixture, point_ideal, random_points,
                               singular_locus, subproducts_ideal, symbolic_power)
from conftest import ideal, poly

ARRANGEMENTS = library.ARRANGEMENTS


def test_point_normalisation():
    P = ProjectivePoint.of((2, 4, 0))
    assert P.coords == (1, 2, 0) and P == ProjectivePoint.of((-1, -2, 0))
    with pytest.raises(ValueError):
        ProjectivePoint.of((0, 0, 0))


def test_point_ideals():
    assert ideal_equal(point_ideal(ProjectivePoint.of((0, 0, 1))), ideal("x", "y"))
    assert ideal_equal(point_ideal(ProjectivePoint.of((1, 1, 0))), ideal("x-y", "z"))
    w = QW.gen
    P = ProjectivePoint.of((1, w, w * w), QW)
    I = point_ideal(P)
    assert len(I.generators) == 2
    assert all(g.evaluate(P.coords) == 0 for g in I.generators)
    assert poly("x-y", QW).evaluate(P.coords) == 1 - w != 0


def test_fat_point_ideal_examples(example33, triangle):
    S = FatPointScheme([ProjectivePoint.of((0, 0, 1))], [2])
    assert ideal_equal(fat_point_ideal(S), ideal("x^2", "x*y", "y^2"))
    assert alpha(fat_point_ideal(example33[1])) == 3
    assert ideal_equal(fat_point_ideal(triangle), ideal("x*y", "x*z", "y*z"))


def test_symbolic_power_examples(example33, dual_hesse):
    A, S = example33
    assert symbolic_power(S, 1) is fat_point_ideal(S)
    assert alpha(symbolic_power(S, 3)) == 7
    with pytest.raises(ValueError):
        symbolic_power(S, 0)


def test_scheme_validation():
    P = ProjectivePoint.of((1, 0, 0))
    with pytest.raises(ValueError):
        FatPointScheme([P, P], [1, 1])
    with pytest.raises(ValueError):
        FatPointScheme([P], [0])
    with pytest.raises(ValueError):
        FatPointScheme([P], [1, 2])
    S = FatPointScheme([P, ProjectivePoint.of((0, 1, 0))], [3, 1])
    assert S.degree() == 6 + 1 and not S.is_reduced()
    assert S.scaled(2).multiplicities == (6, 2)
    assert S.support().is_reduced()


def test_arrangement_make():
    A = arrangement_make([poly("x"), poly("y"), poly("x-y"), poly("z")])
    assert A.n == 4
    with pytest.raises(ValueError, match="rank"):
        arrangement_make([poly("x"), poly("y"), poly("x+y")])
    with pytest.raises(ValueError, match="coincide"):
        arrangement_make([poly("x"), poly("2*x"), poly("y"), poly("z")])
    with pytest.raises(ValueError):
        arrangement_make([poly("x^2"), poly("y"), poly("z")])


def test_fermat_forms_make_nine_lines(dual_hesse):
    A, _ = dual_hesse
    forms = [linear_form(t, QW) for t in
             ("x-y", "x-w*y", "x-w^2*y", "y-z", "y-w*z", "y-w^2*z", "z-x", "z-w*x", "z-w^2*x")]
    B = arrangement_make(forms)
    assert B.n == 9
    F = poly("(x^3-y^3)*(y^3-z^3)*(z^3-x^3)", QW)
    assert B.defining_polynomial() == F
    assert A.defining_polynomial() == F


def test_singular_locus_example33(example33):
    A, S = example33
    counts = {str(P): n for P, n in intersection_counts(A).items()}
    assert counts == {"[0:0:1]": 3, "[0:1:0]": 2, "[1:0:0]": 2, "[1:1:0]": 2}
    assert dict(zip(map(str, S.points), S.multiplicities)) == {
        "[0:0:1]": 2, "[0:1:0]": 1, "[1:0:0]": 1, "[1:1:0]": 1}


def test_singular_locus_generic_and_dual_hesse(dual_hesse):
    S = singular_locus(library.arrangement("generic4"))
    assert len(S) == 6 and S.is_reduced()
    A, J = dual_hesse
    counts = intersection_counts(A)
    assert len(counts) == 12 and set(counts.values()) == {3}


@pytest.mark.parametrize("name", ARRANGEMENTS + ("pencil4",))
def test_line_sums(name):
    A = library.arrangement(name)
    counts = intersection_counts(A)
    for i in range(A.n):
        total = sum(n - 1 for P, n in counts.items() if i in A.lines_through(P))
        assert total == A.n - 1


def test_subproducts_examples(example33):
    A3 = library.arrangement("generic3")
    assert ideal_equal(subproducts_ideal(A3, 2), ideal("x*y", "x*z", "y*z"))
    A, S = example33
    assert ideal_equal(subproducts_ideal(A, 3), fat_point_ideal(S))
    with pytest.raises(ValueError):
        subproducts_ideal(A, 5)


def test_subproducts_dual_hesse(dual_hesse):
    A, J = dual_hesse
    assert ideal_equal(subproducts_ideal(A, 8), symbolic_power(J, 2))


def test_random_points():
    S = random_points(6, 2, 1, 100)
    assert S == random_points(6, 2, 1, 100) and len(S) == 6 and S.is_reduced()
    assert alpha_oracle(S, 1) == 3 == alpha(fat_point_ideal(S))
    assert alpha_oracle(random_points(5, 2, 7, 100), 1) == 2
    one = random_points(1, 2, 3, 10)
    I = fat_point_ideal(one)
    assert ideal_equal(symbolic_power(one, 3), ideal_power(I, 3))
    with pytest.raises(ValueError):
        random_points(30, 1, 0, 2)


def test_fixture_format_roundtrip(dual_hesse):
    A, J = dual_hesse
    again = parse_fixture(format_fixture(A))
    assert again.forms == A.forms
    T = library.load("triangle")
    assert parse_fixture(format_fixture(T)) == T


@pytest.mark.parametrize("text,line", [
    ("field: Q\nline: 1 0\n", 2),
    ("field: R\nline: 1 0 0\n", 1),
    ("field: Q\npoint: 1 0 0 mult: 0\n", 2),
    ("field: Q\nline: 1 0 0\npoint: 0 1 0 mult: 1\n", 3),
    ("field: Q\nbogus\n", 2),
])
def test_fixture_errors(text, line):
    with pytest.raises(FixtureError) as exc:
        parse_fixture(text)
    assert exc.value.lineno == line


@pytest.mark.parametrize("name,m", [("triangle", 2), ("generic4.points", 2),
                                    ("xyxmyz.points", 3), ("random5", 2)])
def test_ordinary_power_inside_symbolic_power(name, m):
    S = next(s for s in library.point_fixtures() if s.name == name)
    I = fat_point_ideal(S)
    Im = symbolic_power(S, m)
    assert all(member(g, Im) for g in ideal_power(I, m).generators)


@pytest.mark.parametrize("name", ["triangle", "generic4.points", "xyxmyz.points"])
@pytest.mark.parametrize("t,m", [(2, 2), (3, 1), (2, 3)])
def test_scaling_multiplies_symbolic_exponent(name, t, m):
    S = next(s for s in library.point_fixtures() if s.name == name)
    assert ideal_equal(symbolic_power(S.scaled(t), m), symbolic_power(S, t * m))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**5), st.sampled_from([-3, -1, 2, 5]))
def test_rescaled_points_give_same_ideal(seed, c):
    S = random_points(4, 2, seed, height=6)
    raw = [ProjectivePoint.of([v * c for v in P.coords]) for P in S.points]
    assert ideal_equal(fat_point_ideal(FatPointScheme(raw, [2, 1, 1, 1])),
                       fat_point_ideal(FatPointScheme(S.points, [2, 1, 1, 1])))

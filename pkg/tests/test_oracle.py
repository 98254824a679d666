from math import comb

import pytest

from fatpoints import library
from fatpoints.coeffs import PrimeField
from fatpoints.groebner import member
from fatpoints.ideal_ops import ideal_power
from fatpoints.oracle import (alpha_oracle, alpha_upper_cap, conditions_matrix,
                              containment_oracle, power_piece_dim, power_piece_membership,
                              regularity_oracle, symbolic_piece_basis, symbolic_piece_dim)
from fatpoints.schemes import (FatPointScheme, ProjectivePoint, fat_point_ideal,
                               singular_locus, symbolic_power)
from fatpoints.invariants import hilbert_function, regularity_fat_points
from conftest import ideal, poly

ORIGIN = FatPointScheme([ProjectivePoint.of((0, 0, 1))], [1])


def test_piece_dim_examples(dual_hesse, example33):
    assert symbolic_piece_dim(ORIGIN, 2, 1) == 0
    assert symbolic_piece_dim(ORIGIN, 2, 2) == 3
    _, J = dual_hesse
    assert symbolic_piece_dim(J, 3, 9) >= 1
    S = example33[1]
    assert symbolic_piece_dim(S, 3, 6) == 0
    assert symbolic_piece_dim(S, 3, 7) >= 1
    with pytest.raises(ValueError):
        symbolic_piece_dim(S, 0, 3)


def test_matrix_shape(example33):
    S = example33[1]
    cm = conditions_matrix(S, 2, 5)
    # one row per derivative skipping the pivot variable: C(k-1+2, 2) per point
    assert len(cm.rows) == comb(3 + 2, 2) + 3 * comb(1 + 2, 2)
    assert cm.ncols == comb(5 + 2, 2)
    assert all(mu[P.pivot] == 0 for (i, mu), P in
               ((lab, S.points[lab[0]]) for lab in cm.labels))


def test_prime_field_guard():
    S = FatPointScheme([ProjectivePoint.of((1, 2, 3), PrimeField(5))], [2])
    assert symbolic_piece_dim(S, 1, 4) == 15 - 3
    with pytest.raises(ValueError, match="prime"):
        conditions_matrix(S, 1, 5)


def test_alpha_oracle_examples(triangle):
    assert alpha_oracle(triangle, 1) == 2
    for name, n in (("generic3", 3), ("generic4", 4), ("generic5", 5)):
        S = singular_locus(library.arrangement(name))
        assert alpha_oracle(S, 2) == n
        assert alpha_oracle(S, 4) == 2 * n
    with pytest.raises(ValueError):
        alpha_oracle(triangle, 0)


def test_alpha_cap_is_reached(dual_hesse):
    _, J = dual_hesse
    for m in (1, 2, 3):
        assert alpha_oracle(J, m) <= alpha_upper_cap(J, m)


def test_piece_basis_lies_in_symbolic_power(example33):
    S = example33[1]
    I3 = symbolic_power(S, 3)
    basis = symbolic_piece_basis(S, 3, 8)
    assert len(basis) == symbolic_piece_dim(S, 3, 8)
    assert all(member(b, I3) for b in basis)


def test_regularity_oracle_matches(example33, dual_hesse):
    S = example33[1]
    assert regularity_oracle(S, 1) == regularity_fat_points(fat_point_ideal(S), S.degree()) == 3
    _, J = dual_hesse
    assert regularity_oracle(J, 1) == 5


def test_power_membership_examples(dual_hesse):
    assert power_piece_membership(poly("x^2*y^2"), ideal("x", "y"), 2)
    assert not power_piece_membership(poly("x*z"), ideal("x^2", "x*y", "y^2"), 1)
    assert power_piece_membership(poly("0"), ideal("x"), 3)
    with pytest.raises(ValueError):
        power_piece_membership(poly("x + y^2"), ideal("x"), 1)
    A, J = dual_hesse
    assert not power_piece_membership(A.defining_polynomial(), fat_point_ideal(J), 2)


def test_power_piece_dim_matches_groebner():
    I = ideal("x^2 - y*z", "x*y")
    sq = ideal_power(I, 2)
    for d in range(4, 8):
        assert power_piece_dim(I, 2, d) == comb(d + 2, 2) - hilbert_function(sq, d)


def test_containment_oracle_examples(triangle, dual_hesse):
    I = fat_point_ideal(triangle)
    assert containment_oracle(triangle, 1, I, 1) == (True, None)
    assert containment_oracle(triangle, 4, I, 2)[0]
    A, J = dual_hesse
    F = A.defining_polynomial()
    holds, w = containment_oracle(J, 3, fat_point_ideal(J), 2, generators=[F])
    assert not holds and w == F


def test_rank_bound_never_overcounts(dual_hesse):
    _, J = dual_hesse
    for m, d in ((1, 3), (1, 6), (2, 8), (3, 9)):
        conds = sum(comb(m * k - 1 + 2, 2) for k in J.multiplicities)
        assert symbolic_piece_dim(J, m, d) >= comb(d + 2, 2) - conds

import pytest

from trop3.lattice import (CORNERS, EXPONENTS, N_POINTS, OMEGA, S4, Permutation,
                           exponent_to_index, index_to_exponent, lineality_vectors,
                           on_plane_sum, points_on_facet)


def test_twenty_points_of_degree_three():
    assert len(EXPONENTS) == N_POINTS == 20
    assert len(set(EXPONENTS)) == 20
    assert all(sum(e) == 3 and min(e) >= 0 for e in EXPONENTS)


def test_index_roundtrip_and_errors():
    for i in range(20):
        assert exponent_to_index(index_to_exponent(i)) == i
    with pytest.raises(ValueError):
        index_to_exponent(20)
    with pytest.raises(ValueError):
        exponent_to_index((1, 1, 1, 1))


def test_corners_and_facets():
    for f, c in enumerate(CORNERS):
        assert EXPONENTS[c][f] == 3
        assert len(points_on_facet(f)) == 10
        assert c not in points_on_facet(f)


def test_omega_sums_to_zero():
    assert [sum(col) for col in zip(*OMEGA)] == [0, 0, 0, 0]


def test_permutation_group_laws():
    assert len(set(S4)) == 24
    for p in S4:
        assert p * p.inverse() == Permutation()
        for q in S4:
            for i in range(20):
                assert (p * q).act_on_point(i) == p.act_on_point(q.act_on_point(i))


def test_permutation_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1, 2))


def test_transposition_swaps_corners():
    t = Permutation.transposition(1, 3)
    assert t.act_on_point(CORNERS[1]) == CORNERS[3]
    assert t.act_on_point(CORNERS[0]) == CORNERS[0]


def test_lineality_and_plane_sums():
    lin = lineality_vectors()
    assert len(lin) == 4
    assert [sum(v[i] for v in lin) for i in range(20)] == [3] * 20
    assert on_plane_sum((1, 2), 1, exponent_to_index((1, 1, 0, 1)))
    assert not on_plane_sum((1,), 1, 0)

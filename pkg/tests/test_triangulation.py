import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import reference_data as REF
from trop3.lattice import S4
from trop3.triangulation import (Triangulation, TriangulationError, altshuler, b_vector,
                                 boundary_f_vector, canonical_form, canonical_key,
                                 enumerate_3delta2, f_vector, gkz, interior_edges,
                                 interior_triangles, orbit, parse_facets, permute, validate)


def _cyclic_equal(a, b):
    if len(a) != len(b):
        return False
    n = len(a)
    rots = [tuple(a[k:] + a[:k]) for k in range(n)]
    return tuple(b) in rots or tuple(reversed(b)) in rots


def test_validate_accepts_reference_triangulations(typical, honeycomb):
    assert validate(REF.TYPICAL_FACETS) == typical
    assert len(honeycomb) == 27


def test_f_vectors(typical):
    assert f_vector(typical) == (20, 64, 72, 27)
    assert boundary_f_vector(typical) == (20, 54, 36)
    assert len(interior_triangles(typical)) == 36


@pytest.mark.parametrize("bad, reason", [
    (REF.TYPICAL_FACETS[:-1], "27"),
    (REF.TYPICAL_FACETS[:-1] + ((0, 3, 9, 19),), "non-unimodular"),
    (REF.TYPICAL_FACETS[:-1] + ((0, 1, 2, 3),), "degenerate"),
    (REF.TYPICAL_FACETS[:-1] + (REF.TYPICAL_FACETS[0],), "repeated"),
    (REF.TYPICAL_FACETS[:-1] + ((0, 1, 4, 20),), "outside"),
])
def test_validate_rejects(bad, reason):
    with pytest.raises(TriangulationError, match=reason):
        validate(bad)


def test_validate_rejects_overlap():
    # swap one tetrahedron for a different unimodular one on the same triangle
    facets = list(REF.TYPICAL_FACETS)
    facets[-1] = (11, 17, 18, 15)
    with pytest.raises(TriangulationError):
        validate(facets)


def test_parse_formats():
    text = "{" + ",".join("{" + ",".join(map(str, f)) + "}" for f in REF.TYPICAL_FACETS) + "}"
    assert len(parse_facets(text)) == 27
    assert parse_facets("[[0,1,4,10],[1,2,5,11]]") == [(0, 1, 4, 10), (1, 2, 5, 11)]
    for bad in ("", "{{0,1,4,10}", "[[0,1],", "{{a,b}}"):
        with pytest.raises(ValueError):
            parse_facets(bad)
    assert Triangulation(REF.TYPICAL_FACETS).to_text() == text


def test_gkz_and_b_vector(typical, honeycomb):
    assert gkz(typical) == REF.TYPICAL_GKZ
    assert b_vector(typical) == REF.TYPICAL_B
    assert b_vector(honeycomb) == (0, 6, 0, 4)
    assert sum(gkz(typical)) == 4 * 27


def test_interior_edge_links(typical):
    links = dict(interior_edges(typical))
    assert set(links) == set(REF.TYPICAL_LINKS)
    for edge, cycle in REF.TYPICAL_LINKS.items():
        assert set(links[edge]) == set(cycle)
        if edge != (1, 15):  # the printed order of this one is not a cycle
            assert _cyclic_equal(links[edge], cycle)


def test_orbit_sizes(typical, honeycomb):
    assert orbit(typical)[0] == 24
    assert orbit(honeycomb)[0] == 3


def test_orbit_representative_has_lexmin_gkz(typical):
    _, rep = orbit(typical)
    assert gkz(rep) == min(gkz(permute(typical, p)) for p in S4)


def test_altshuler(typical, honeycomb):
    assert altshuler(typical) == 614912
    assert altshuler(honeycomb) == 0


@given(st.sampled_from(S4))
@settings(max_examples=24, deadline=None)
def test_gkz_equivariance(p):
    T = Triangulation(REF.TYPICAL_FACETS)
    g = gkz(T)
    gp = gkz(permute(T, p))
    assert all(gp[p.act_on_point(i)] == g[i] for i in range(20))


@given(st.permutations(list(range(20))))
@settings(max_examples=15, deadline=None)
def test_canonical_form_invariant_under_relabeling(perm):
    facets = [tuple(perm[v] for v in f) for f in REF.TYPICAL_FACETS]
    assert canonical_form(facets) == canonical_form(REF.TYPICAL_FACETS)


def test_canonical_key_separates(typical, honeycomb):
    assert canonical_key(typical.facets) != canonical_key(honeycomb.facets)
    assert 0 <= canonical_key(typical.facets) < 2 ** 64


def test_delta2_census():
    t0 = time.time()
    tris, regular, orbits = enumerate_3delta2()
    assert (len(tris), all(regular), len(orbits)) == (79, True, 18)
    assert time.time() - t0 < 30

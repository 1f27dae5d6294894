import numpy as np
import pytest

from homcodes import complex2 as cx
from homcodes import families as fam


def rank_mod2(A):
    """Plain Gaussian elimination over GF(2), independent of the library."""
    A = (np.array(A, dtype=np.int64) % 2).copy()
    if A.size == 0:
        return 0
    r = 0
    for c in range(A.shape[1]):
        piv = next((i for i in range(r, A.shape[0]) if A[i, c]), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        for i in range(A.shape[0]):
            if i != r and A[i, c]:
                A[i] ^= A[r]
        r += 1
    return r


def betti1_mod2(c):
    E = c.n_edges
    return E - rank_mod2(c.boundary_1()) - rank_mod2(c.boundary_2())


CLOSED = {
    "S": fam.sphere(),
    "P": fam.projective_plane(),
    "T": fam.genus_torus(1),
    "2T": fam.genus_torus(2),
    "3P": fam.genus_projective(3),
    "kitaev3": fam.kitaev_toric(3),
    "opt3": fam.optimized_toric(3),
    "p93": fam.projective_plane_93(),
}


@pytest.mark.parametrize("name", sorted(CLOSED))
def test_boundary_of_boundary_vanishes(name):
    c = CLOSED[name]
    assert not (c.boundary_1() @ c.boundary_2()).any()


@pytest.mark.parametrize("name,free,torsion,chi", [
    ("S", 0, (), 2), ("P", 0, (2,), 1), ("T", 2, (), 0), ("2T", 4, (), -2),
    ("3P", 2, (2,), -1), ("kitaev3", 2, (), 0), ("p93", 0, (2,), 1)])
def test_integral_homology_of_surfaces(name, free, torsion, chi):
    c = CLOSED[name]
    h = cx.homology(c)
    assert h.free_rank == free
    assert tuple(t for t in h.torsion if t > 1) == torsion
    assert c.euler_characteristic() == chi


@pytest.mark.parametrize("name", sorted(CLOSED))
def test_mod2_homology_matches_elimination(name):
    c = CLOSED[name]
    h = cx.homology(c, 2)
    assert h.h1_size == 2 ** betti1_mod2(c)


@pytest.mark.parametrize("h", [1, 2, 3, 4])
def test_holed_disc_homology(h):
    c = fam.holed_disc(h)
    assert cx.homology(c, 2).h1_size == 2**h
    assert 1 - c.euler_characteristic() == h
    assert c.n_faces == 1


@pytest.mark.parametrize("name", sorted(CLOSED))
def test_every_canonical_complex_is_a_surface(name):
    chk = cx.is_surface(CLOSED[name])
    assert chk.ok, chk.reason


def test_wedge_of_tori_is_not_a_surface():
    t = fam.genus_torus(1)
    w = cx.wedge_complex(t, t, 0, 0)
    chk = cx.is_surface(w)
    assert not chk
    assert chk.vertex == 0
    assert cx.homology(w, 2).h1_size == 2**4


@pytest.mark.parametrize("name", sorted(CLOSED))
def test_orientability_agrees_with_exhaustive_oracle(name):
    c = CLOSED[name]
    fast = cx.orientability(c).status
    slow = cx.orientability_exhaustive(c)
    assert (fast == "nonorientable") == (slow == "nonorientable")
    assert fast == slow or {fast, slow} == {"oriented", "orientable"}


def test_reorient_makes_an_orientable_complex_oriented():
    t = fam.genus_torus(1)
    flipped = cx.reorient(t, [-1])
    assert cx.orientability(flipped).status == "oriented"
    c = cx.Complex2(t.n_vertices, t.edges, t.faces + (t.faces[0],))
    o = cx.orientability(c)
    if o.orientable:
        assert cx.orientability(cx.reorient(c, o.signs)).status == "oriented"


ORIENTED = ["S", "T", "2T", "kitaev3", "opt3"]


@pytest.mark.parametrize("name", ORIENTED)
def test_dual_exchanges_boundary_and_coboundary(name):
    c = CLOSED[name]
    dc = cx.dual_complex(c)
    assert (dc.n_vertices, dc.n_edges, dc.n_faces) == (c.n_faces, c.n_edges, c.n_vertices)
    # faces of the dual are primal vertices, dual vertices are primal faces
    assert np.array_equal(dc.boundary_2(), c.coboundary_1())
    assert np.array_equal(dc.boundary_1(), c.coboundary_2())
    assert cx.is_surface(dc)


@pytest.mark.parametrize("name", ORIENTED)
def test_dual_of_dual_is_isomorphic(name):
    c = CLOSED[name]
    assert cx.is_isomorphic(cx.dual_complex(cx.dual_complex(c)), c)


def test_optimized_toric_and_p93_are_self_dual():
    for c in (fam.optimized_toric(3), fam.optimized_toric(5), fam.projective_plane_93()):
        assert cx.is_isomorphic(cx.dual_complex(c), c)


def test_nonorientable_dual_holds_mod_two():
    c = fam.projective_plane_93()
    dc = cx.dual_complex(c)
    assert (dc.n_vertices, dc.n_edges, dc.n_faces) == (5, 9, 5)
    assert cx.homology(dc, 2).h1_size == 2


@pytest.mark.parametrize("name", sorted(CLOSED))
def test_json_round_trip(name):
    c = CLOSED[name]
    assert cx.Complex2.from_json(c.to_json()) == c


def test_remove_faces_and_adjacency_check():
    c = fam.kitaev_toric(3)
    d = cx.remove_faces(c, [0])
    assert d.has_boundary and d.n_faces == c.n_faces - 1
    with pytest.raises(cx.AdjacentFaces):
        cx.remove_faces(c, [0, 1])


def test_invalid_complexes_are_rejected():
    with pytest.raises(cx.ComplexError):
        cx.Complex2(2, ((0, 1),), ((1,),))
    with pytest.raises(cx.ComplexError):
        cx.Complex2(1, ((0, 3),), ())


@pytest.mark.parametrize("a,b", [("T", "T"), ("T", "P"), ("P", "P"), ("opt3", "opt3")])
def test_connected_sum_is_additive(a, b):
    pick = {"T": fam.torus_with_edge(), "P": fam.projective_with_edge(),
            "opt3": fam.optimized_toric(3)}
    c1, c2 = pick[a], pick[b]
    s = cx.connected_sum(c1, c2)
    assert s.n_edges == c1.n_edges + c2.n_edges
    assert s.euler_characteristic() == c1.euler_characteristic() + c2.euler_characteristic() - 2
    assert cx.is_surface(s)
    orientable = cx.orientability(c1).orientable and cx.orientability(c2).orientable
    assert cx.orientability(s).orientable == orientable
    assert cx.homology(s, 2).h1_size == 2 ** (2 - s.euler_characteristic())


def test_klein_bottle_from_two_projective_planes():
    k = cx.connected_sum(fam.projective_with_edge(), fam.projective_with_edge())
    h = cx.homology(k)
    assert (h.free_rank, tuple(t for t in h.torsion if t > 1)) == (1, (2,))


def test_connected_sum_preconditions():
    with pytest.raises(cx.PreconditionError):
        cx.connected_sum(fam.genus_torus(1), fam.torus_with_edge())
    with pytest.raises(cx.PreconditionError):
        cx.connected_sum(fam.sphere(), fam.torus_with_edge())
    with pytest.raises(cx.PreconditionError):
        cx.connected_sum(cx.remove_faces(fam.kitaev_toric(3), [0]), fam.torus_with_edge())


def horizontal_cycle(c, d):
    """Darts of a straight row of a d x d Kitaev lattice."""
    out = []
    for e, (a, b) in enumerate(c.edges):
        if a < d and b < d and b == (a + 1) % d:
            out.append(cx.dart(e))
    return out


def test_cut_handle_drops_k_by_one():
    c = fam.kitaev_toric(3)
    cyc = horizontal_cycle(c, 3)
    assert len(cyc) == 3
    cut = cx.cut_handle(c, cyc)
    assert cut.has_boundary
    assert cx.homology(cut, 2).h1_size == 2 ** (1 - cut.euler_characteristic())
    assert 1 - cut.euler_characteristic() == 1
    assert cut.n_edges == c.n_edges + 3


def test_cut_handle_rejects_separating_and_one_sided_cycles():
    c = fam.kitaev_toric(3)
    # the boundary of one square is contractible, hence separating
    with pytest.raises(cx.SeparatingCycle):
        cx.cut_handle(c, c.faces[0])
    p = fam.projective_plane_93()
    with pytest.raises(cx.SeparatingCycle):
        cx.cut_handle(p, p.faces[0])
    # the five rim edges close a cross-cap
    with pytest.raises(cx.OneSidedCycle):
        cx.cut_handle(p, [1, 2, 3, 4, 5])


def test_face_index_counts_both_senses():
    t = fam.genus_torus(1)
    a, b = cx.dart(0), cx.dart(1)
    corners = [(a, b), (b, -a), (-a, -b), (-b, a)]
    assert [cx.face_index(t, 0, x, y) for x, y in corners] == [1, 1, 1, 1]
    # reversing the walk keeps every count
    r = cx.reorient(t, [-1])
    assert [cx.face_index(r, 0, x, y) for x, y in corners] == [1, 1, 1, 1]
    with pytest.raises(cx.ComplexError):
        cx.face_index(fam.kitaev_toric(3), 0, 1, 1)


def test_subdivide_keeps_homology():
    for c in (fam.genus_torus(1), fam.projective_plane()):
        s = cx.subdivide_edge(c, 0)
        assert s.euler_characteristic() == c.euler_characteristic()
        assert cx.homology(s, 2).h1_size == cx.homology(c, 2).h1_size

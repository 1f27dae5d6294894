import itertools

import pytest

from homcodes import complex2 as cx
from homcodes import families as fam


def degrees(c):
    deg = [0] * c.n_vertices
    for a, b in c.edges:
        deg[a] += 1
        deg[b] += 1
    return deg


def is_44_regular(c):
    return all(x == 4 for x in degrees(c)) and all(len(c.faces[f]) == 4 for f in c.active_faces)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_kitaev_counts_and_regularity(d):
    c = fam.kitaev_toric(d)
    assert (c.n_vertices, c.n_edges, c.n_faces) == (d * d, 2 * d * d, d * d)
    assert is_44_regular(c)
    assert cx.orientability(c).status == "oriented"


@pytest.mark.parametrize("d", [3, 5, 7, 9])
def test_optimized_counts_and_regularity(d):
    c = fam.optimized_toric(d)
    half = (d * d + 1) // 2
    assert (c.n_vertices, c.n_edges, c.n_faces) == (half, d * d + 1, half)
    assert is_44_regular(c)
    assert c.euler_characteristic() == 0


def test_optimized_rejects_even_distance():
    with pytest.raises(fam.Unsupported):
        fam.optimized_toric(4)
    with pytest.raises(fam.Unsupported):
        fam.optimal_toric_scan(4)


def shortest_l1_oracle(basis, bound):
    """Smallest |x|+|y| over nonzero lattice points, searched in a box."""
    (a, b), (c, d) = basis
    best = None
    for x, y in itertools.product(range(-bound, bound + 1), repeat=2):
        if (x, y) == (0, 0) or abs(x) + abs(y) > bound:
            continue
        # (x, y) = i (a, b) + j (c, d) with integers i, j
        det = a * d - b * c
        i, j = x * d - y * c, a * y - b * x
        if i % det == 0 and j % det == 0:
            n = abs(x) + abs(y)
            best = n if best is None else min(best, n)
    return best


@pytest.mark.parametrize("basis", [((3, 0), (1, 3)), ((5, 0), (2, 1)), ((4, 0), (0, 4)),
                                   ((2, 0), (1, 7))])
def test_quotient_shortest_vector_matches_box_search(basis):
    lat = fam.QuotientLattice(*basis)
    assert lat.shortest_l1() == shortest_l1_oracle(basis, 12)


@pytest.mark.parametrize("d", [3, 5, 7])
def test_optimal_scan(d):
    rep = fam.optimal_toric_scan(d)
    assert rep.min_index == (d * d + 1) // 2
    assert rep.all_fail and rep.optimized_shortest == d and rep.achieved
    assert all(s < d for *_, s in rep.failures)


def test_ring_layout():
    c = fam.ring_code_complex(3)
    assert (c.n_vertices, c.n_edges, c.n_faces) == (3, 9, 6)
    assert c.has_boundary
    assert all(len(f) == 2 for f in c.faces)
    assert len(fam.shor_generators()) == 8


def test_p93_is_a_self_dual_projective_plane():
    c = fam.projective_plane_93()
    assert (c.n_vertices, c.n_edges, c.n_faces) == (5, 9, 5)
    assert cx.is_surface(c)
    assert cx.orientability(c).status == "nonorientable"
    assert c.euler_characteristic() == 1
    assert cx.is_isomorphic(cx.dual_complex(c), c)


@pytest.mark.parametrize("h", [1, 2, 3])
def test_holed_disc_is_minimal(h):
    c = fam.holed_disc(h)
    assert (c.n_vertices, c.n_edges, c.n_faces) == (h + 1, 2 * h + 1, 1)
    assert cx.is_surface(c, with_boundary=True)


@pytest.mark.parametrize("h,d", [(1, 3), (2, 3), (4, 3)])
def test_regular_disc_embedding_has_h_holes(h, d):
    c = fam.regular_disc_embedding(h, d)
    assert 1 - c.euler_characteristic() == h
    assert cx.homology(c, 2).h1_size == 2**h


@pytest.mark.parametrize("kind,chi", [("S", 2), ("P", 1), ("T", 0), ("GT", -2), ("GP", 0)])
def test_canonical_surfaces(kind, chi):
    assert fam.canonical_surface(kind, 2).euler_characteristic() == chi

import numpy as np
import pytest

from homcodes import complex2 as cx
from homcodes import families as fam
from homcodes import symplectic as sp
from homcodes.homological import (NoLogicals, TorsionObstruction, build, homological_distance,
                                  mu_bound_ledger, parameter_report)


def test_star_and_face_operators_commute_entrywise():
    # each face boundary meets each vertex star in a signed sum that vanishes
    for c in (fam.kitaev_toric(3), fam.optimized_toric(3), fam.genus_torus(2)):
        stars = c.boundary_1()
        faces = c.boundary_2().T
        assert not (stars @ faces.T).any()


@pytest.mark.parametrize("D", [2, 3, 5])
def test_kitaev_parameters_over_qudits(D):
    hc = build(fam.kitaev_toric(2), D)
    assert (hc.n, hc.k) == (8, 2)
    assert homological_distance(hc.complex, D).d == sp.distance_bruteforce(hc.code).d == 2


def cut_row(c):
    return cx.cut_handle(c, [cx.dart(e) for e, (a, b) in enumerate(c.edges) if a < 3 and b < 3])


@pytest.mark.parametrize("name,make", [
    ("kitaev3", lambda: fam.kitaev_toric(3)),
    ("opt3", lambda: fam.optimized_toric(3)),
    ("ring3", lambda: fam.ring_code_complex(3)),
    ("ring2", lambda: fam.ring_code_complex(2)),
    ("p93", fam.projective_plane_93),
    ("T#T", lambda: cx.connected_sum(fam.optimized_toric(3), fam.optimized_toric(3))),
    ("D3", lambda: fam.holed_disc(3)),
    ("cutT", lambda: cut_row(fam.kitaev_toric(3))),
])
def test_homological_distance_agrees_with_bruteforce(name, make):
    hc = build(make(), 2)
    assert homological_distance(hc.complex, 2).d == sp.distance_bruteforce(hc.code).d


def test_qutrit_optimized_torus():
    hc = build(fam.optimized_toric(3), 3)
    rep = parameter_report(hc)
    assert rep.triple() == "[[10,2,3]]"
    assert rep.d_bruteforce == rep.d_homological == 3


@pytest.mark.parametrize("g", [1, 2, 3])
def test_k_is_two_minus_chi_on_closed_orientable(g):
    c = fam.connected_sum_family(fam.torus_with_edge(), g)
    hc = build(c, 2)
    assert hc.k == 2 - c.euler_characteristic() == 2 * g
    assert hc.k_formula == "2-chi"


@pytest.mark.parametrize("g", [1, 2, 3])
def test_projective_k_and_torsion(g):
    c = fam.genus_projective(g)
    assert build(c, 2).k == g
    for D in (3, 4):
        with pytest.raises(TorsionObstruction):
            build(c, D)


@pytest.mark.parametrize("h", [1, 2, 3, 4])
def test_k_is_one_minus_chi_on_holed_discs(h):
    c = fam.holed_disc(h)
    hc = build(c, 2)
    assert hc.k == 1 - c.euler_characteristic() == h
    assert hc.k_formula == "1-chi"


def test_cut_handle_output_has_k_one_minus_chi():
    cut = cut_row(fam.kitaev_toric(3))
    hc = build(cut, 2)
    assert hc.k == 1 - cut.euler_characteristic() == 1
    assert hc.k_formula == "1-chi"


def test_sphere_encodes_nothing():
    hc = build(fam.sphere(), 2)
    assert hc.k == 0
    with pytest.raises(NoLogicals):
        homological_distance(hc.complex, 2)


def test_nonorientable_distance_needs_qubits():
    with pytest.raises(TorsionObstruction):
        homological_distance(fam.projective_plane_93(), 3)


def test_ring_code_matches_shor():
    hc = build(fam.ring_code_complex(3), 2)
    assert sp.same_stabilizer(hc.code.generators, np.array(fam.shor_generators()), 2)
    rep = parameter_report(hc)
    assert rep.triple() == "[[9,1,3]]" and rep.css and rep.degenerate


def test_mu_ledger_torus_witnesses():
    for g in (1, 2, 3, 4):
        rows = mu_bound_ledger("T", 3, g)
        upper = [b for b in rows if b.kind == "upper"]
        assert upper and upper[0].edges == 10 * g
    exact = [b for b in mu_bound_ledger("T", 3, 1) if b.kind == "exact-44"]
    assert exact and exact[0].edges == 10


def test_mu_ledger_projective_plane():
    rows = mu_bound_ledger("P", 3, 1)
    assert [b.edges for b in rows if b.kind == "upper"] == [9]
    with pytest.raises(ValueError):
        mu_bound_ledger("K", 3)


def test_report_json_fields():
    rep = parameter_report(build(fam.kitaev_toric(2), 2))
    j = rep.to_json()
    assert (j["n"], j["k"], j["d"]) == (8, 2, 2)
    assert j["k_formula"] == "2-chi"


def test_cutting_both_handles_of_2t_gives_d3():
    two = cx.connected_sum(fam.kitaev_toric(3), fam.kitaev_toric(3))
    assert build(two, 2).k == 4
    once = cx.cut_handle(two, [1, 3, 5])
    assert build(once, 2).k == 3
    twice = cx.cut_handle(once, [24, 30, 36])
    hc = build(twice, 2)
    # four boundary circles on a sphere: a disc with three holes
    assert len(twice.removed) == 4
    assert hc.k == 1 - twice.euler_characteristic() == 3
    assert cx.is_surface(twice, with_boundary=True)

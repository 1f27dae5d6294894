import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from homcodes import symplectic as sp


def span_set(G, D):
    G = np.asarray(G) % D
    return {tuple((np.array(c) @ G) % D) for c in itertools.product(range(D), repeat=G.shape[0])}


def naive_distance(code):
    """Smallest weight of a vector commuting with V but outside V."""
    n, D = code.n, code.D
    V = span_set(code.generators, D)
    singles = [(x, z) for x in range(D) for z in range(D) if (x, z) != (0, 0)]
    for w in range(1, n + 1):
        for support in itertools.combinations(range(n), w):
            for ops in itertools.product(singles, repeat=w):
                u = np.zeros(2 * n, dtype=np.int64)
                for q, (x, z) in zip(support, ops):
                    u[q], u[n + q] = x, z
                if not code.syndrome(u).any() and tuple(u) not in V:
                    return w
    return None


vec_pairs = st.sampled_from([2, 3, 4]).flatmap(
    lambda D: st.integers(1, 2).flatmap(
        lambda n: st.tuples(st.just(D),
                            st.lists(st.integers(0, D - 1), min_size=2 * n, max_size=2 * n),
                            st.lists(st.integers(0, D - 1), min_size=2 * n, max_size=2 * n))))


@settings(max_examples=60, deadline=None)
@given(vec_pairs)
def test_dense_commutation_law(args):
    D, u, v = args
    Su, Sv = sp.dense_sigma(u, D), sp.dense_sigma(v, D)
    w = np.exp(2j * np.pi / D)
    assert np.allclose(Su @ Sv, w ** sp.symp_form(v, u, D) * Sv @ Su, atol=1e-10)


@pytest.mark.parametrize("D", [2, 3, 4, 6])
def test_sigma_is_unitary_of_order_d(D):
    for x, z in itertools.product(range(D), repeat=2):
        s = sp.sigma_1(x, z, D)
        assert np.allclose(s.conj().T @ s, np.eye(D))
        assert np.allclose(np.linalg.matrix_power(s, D), np.eye(D))


def test_isotropy_matches_dense_commutation():
    code = sp.five_qubit_code()
    mats = [sp.dense_sigma(g, 2) for g in code.generators]
    for A, B in itertools.combinations(mats, 2):
        assert np.allclose(A @ B, B @ A)
    with pytest.raises(sp.NotIsotropic):
        sp.StabilizerCode([[1, 0], [0, 1]], 2)


def test_check_matrix_round_trip():
    code = sp.five_qubit_code()
    text = sp.format_check_matrix(code.generators)
    assert np.array_equal(sp.parse_check_matrix(text, 2), code.generators)


def test_five_qubit_code_parameters():
    code = sp.five_qubit_code()
    assert (code.n, code.k) == (5, 1)
    r = sp.distance_bruteforce(code)
    assert r.d == 3 == naive_distance(code)
    assert code.is_logical_error(r.witness) and sp.weight(r.witness) == 3
    assert sp.is_css(code) is None
    assert sp.min_stabilizer_weight(code) == 4
    assert not sp.is_degenerate(code, 1)
    assert 2 * (1 + 3 * 5) == 2**5
    assert sp.quantum_hamming_holds(5, 1, 1, 2)
    assert not sp.quantum_hamming_holds(4, 1, 1, 2)


@pytest.mark.parametrize("D", [2, 3, 5])
def test_vhat_dimension(D):
    rng = np.random.default_rng(D)
    code = sp.trivial_code(4, 2, D)
    assert code.vhat.shape[0] == 2 * 4 - code.m
    assert not sp.symp_products(code.vhat, code.generators, D).any()
    u = rng.integers(0, D, size=8)
    u[0:2] = 0  # Z on qudits 0, 1 commutes with u iff x_0 = x_1 = 0
    assert not code.syndrome(u).any()


@pytest.mark.parametrize("n,k,D", [(3, 1, 2), (3, 1, 3), (4, 2, 2), (2, 1, 4)])
def test_bruteforce_distance_matches_naive_enumeration(n, k, D):
    code = sp.trivial_code(n, k, D)
    assert sp.distance_bruteforce(code).d == naive_distance(code) == 1


def test_bruteforce_distance_on_qutrit_stabilizer():
    # XXX and ZZZ on three qutrits commute since 3 = 0 mod 3
    G = [[1, 1, 1, 0, 0, 0], [0, 0, 0, 1, 1, 1]]
    code = sp.StabilizerCode(G, 3)
    assert code.k == 1
    assert sp.distance_bruteforce(code).d == naive_distance(code)


def test_css_split_and_degeneracy():
    # XX and ZZ on two qubits
    code = sp.StabilizerCode([[1, 1, 0, 0], [0, 0, 1, 1]], 2)
    split = sp.is_css(code)
    assert split is not None and len(split.x_rows) == 1 and len(split.z_rows) == 1
    assert sp.min_stabilizer_weight(code) == 2


def test_too_large_guard():
    code = sp.trivial_code(2, 1, 2)
    with pytest.raises(sp.TooLarge):
        sp.distance_bruteforce(code, limit=2)


@pytest.mark.parametrize("D", [2, 3, 4, 6])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_generator_matrices_are_symplectic(D, n):
    for g in sp.appendix_a_generators(D, n):
        assert sp.is_symplectic(g.matrix, D), g.label


@pytest.mark.parametrize("D,n", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_generator_unitaries_conjugate_paulis(D, n):
    for chk in sp.verify_generator_unitaries(D, n):
        assert chk.max_deviation < 1e-10, chk.label
        assert all(abs(abs(c) - 1) < 1e-10 for c in chk.phases.values())


@pytest.mark.parametrize("D", [2, 3, 4, 5])
def test_single_qudit_closure_is_sl2(D):
    assert len(sp.sp2_closure(D)) == sp.sp2_order(D)


def test_sl2_orders():
    assert [sp.sp2_order(D) for D in (2, 3, 4)] == [6, 24, 48]
    assert sp.is_prime_modulus(5) and not sp.is_prime_modulus(6)


def test_pauli_phase_even_dimension():
    assert sp.pauli_phase_f(1, 2) == pytest.approx(1j)
    assert sp.pauli_phase_f(1, 3) == 1
    # with the phase, sigma_(1,1) squares to the identity for qubits
    s = sp.sigma_1(1, 1, 2)
    assert np.allclose(s @ s, np.eye(2))

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from homcodes import families as fam
from homcodes import simulate as sim
from homcodes import symplectic as sp
from homcodes.classical import LinearCode, syndrome
from homcodes.decoders import (ClassicalLookupDecoder, QuantumLookupDecoder,
                               UncorrectableSyndrome, syndrome_index)
from homcodes.homological import build


FIVE = sp.five_qubit_code()


def errors(n, D):
    return st.lists(st.integers(0, D - 1), min_size=2 * n, max_size=2 * n).map(np.array)


@settings(max_examples=50, deadline=None)
@given(errors(5, 2), errors(5, 2))
def test_syndrome_is_linear(e1, e2):
    assert np.array_equal(FIVE.syndrome(e1 + e2), (FIVE.syndrome(e1) + FIVE.syndrome(e2)) % 2)


@settings(max_examples=25, deadline=None)
@given(errors(5, 2))
def test_dense_syndrome_matches_symplectic(e):
    B = sim.code_basis(FIVE)
    psi = sim.encode(FIVE, [0.6, 0.8], B)
    assert np.array_equal(sim.measure_syndrome(FIVE, sim.apply_error(psi, e, 2)), FIVE.syndrome(e))


def test_qutrit_dense_syndrome_matches_symplectic():
    code = build(fam.kitaev_toric(2), 3).code
    B = sim.code_basis(code)
    rng = np.random.default_rng(3)
    psi = sim.encode(code, sim.random_state(B.shape[1], rng), B)
    for _ in range(5):
        e = rng.integers(0, 3, size=2 * code.n)
        assert np.array_equal(sim.measure_syndrome(code, sim.apply_error(psi, e, 3)),
                              code.syndrome(e))


def test_encoded_states_are_stabilized():
    B = sim.code_basis(FIVE)
    assert np.allclose(B.conj().T @ B, np.eye(2))
    for g in FIVE.generators:
        for col in B.T:
            assert np.allclose(sim.apply_error(col, g, 2), col)


def test_apply_error_matches_dense_operator():
    rng = np.random.default_rng(1)
    for D in (2, 3, 4):
        v = rng.integers(0, D, size=4)
        psi = sim.random_state(D * D, rng)
        assert np.allclose(sim.apply_error(psi, v, D), sp.dense_sigma(v, D) @ psi)
        assert np.allclose(sim.apply_inverse(sim.apply_error(psi, v, D), v, D), psi)


def test_trivial_code_encoding():
    code = sp.trivial_code(3, 1, 2)
    psi = sim.encode(code, [0.6, 0.8])
    assert np.allclose(psi[:2], [0.6, 0.8]) and np.allclose(psi[2:], 0)


def test_degenerate_corrections_still_recover():
    # ring(3) corrections may differ from the error by a stabilizer
    code = build(fam.ring_code_complex(3), 2).code
    dec = QuantumLookupDecoder(t=1).fit(code)
    B = sim.code_basis(code)
    rng = np.random.default_rng(0)
    for q in range(code.n):
        for x, z in ((1, 0), (0, 1), (1, 1)):
            e = np.zeros(2 * code.n, dtype=np.int64)
            e[q], e[code.n + q] = x, z
            r = sim.recovery_roundtrip(code, e, dec, basis=B, rng=rng)
            assert r.fidelity == pytest.approx(1, abs=1e-9)
            assert code.in_stabilizer((e - r.correction) % 2)


def test_decoder_predict_and_unknown_syndrome():
    dec = QuantumLookupDecoder(t=1).fit(FIVE)
    assert len(dec.table_) == 16
    S = np.array([FIVE.syndrome(v) for v in np.eye(10, dtype=np.int64)])
    out = dec.predict(S)
    assert dec.found_.all()
    assert np.array_equal(np.array([FIVE.syndrome(o) for o in out]), S)
    # a t=1 table on 16 checks leaves most syndromes unknown
    code = build(fam.kitaev_toric(3), 2).code
    small = QuantumLookupDecoder(t=1).fit(code)
    s = np.zeros(code.m, dtype=np.int64)
    s[[0, 4]] = 1
    assert syndrome_index(s, 2) not in small.table_
    with pytest.raises(UncorrectableSyndrome):
        small.decode(s)
    small.predict([s])
    assert not small.found_[0]


def test_decoder_fit_measures_distance():
    dec = QuantumLookupDecoder().fit(FIVE)
    assert dec.t_ == 1
    with pytest.raises(ValueError):
        QuantumLookupDecoder(t=3, max_entries=10).fit(FIVE)


def test_classical_decoder_facade():
    code = LinearCode.from_check_matrix([[1, 1, 0], [0, 1, 1]])
    dec = ClassicalLookupDecoder().fit(code)
    E = np.eye(3, dtype=np.int64)
    out = dec.predict([syndrome(code, e) for e in E])
    assert np.array_equal(out, E)


def test_monte_carlo_zero_noise_and_reproducibility():
    code = build(fam.optimized_toric(3), 2).code
    assert sim.monte_carlo_logical_rate(code, 0.0, 2000, seed=1).failures == 0
    a = sim.monte_carlo_logical_rate(code, 0.05, 5000, seed=9)
    b = sim.monte_carlo_logical_rate(code, 0.05, 5000, seed=9)
    assert a.failures == b.failures > 0
    assert 0 < a.stderr < a.rate


def test_depolarizing_sampler_statistics():
    rng = np.random.default_rng(5)
    E = sim.sample_depolarizing(10, 3, 0.2, 20000, rng)
    hit = (E[:, :10] != 0) | (E[:, 10:] != 0)
    assert hit.mean() == pytest.approx(0.2, abs=0.01)


def test_size_guard():
    code = build(fam.kitaev_toric(3), 2).code
    with pytest.raises(sp.TooLarge):
        sim.code_basis(code)

"""Error-correction simulation: dense state vectors and symplectic tracking.

Dense backend: states are arrays of D^n amplitudes (qudit 0 most
significant).  sigma(x|z) acts as |k> -> f(xz) w^{z.k} |k + x>, applied
axis by axis without ever forming a matrix.

Symplectic backend: only the error vector is tracked; a shot fails when
the residual after correction has a nonzero pairing with V^.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .decoders import QuantumLookupDecoder, UncorrectableSyndrome, syndrome_index
from .symplectic import StabilizerCode, TooLarge, pauli_phase_f, symp_products

MAX_STATE = 3**10  # covers qutrit codes on ten edges


class ZeroProjection(ValueError):
    pass


class MixedSector(ValueError):
    pass


def _check_size(n: int, D: int, limit: int = MAX_STATE) -> None:
    if D**n > limit:
        raise TooLarge(f"D^n = {D**n} amplitudes exceed {limit}")


def basis_state(digits, D: int) -> np.ndarray:
    n = len(digits)
    psi = np.zeros(D**n, dtype=complex)
    psi[int(np.ravel_multi_index(tuple(digits), (D,) * n)) if n else 0] = 1
    return psi


def apply_error(state, v, D: int) -> np.ndarray:
    """sigma_v |state> computed exactly."""
    v = np.asarray(v, dtype=np.int64).reshape(-1) % D
    n = v.size // 2
    _check_size(n, D)
    psi = np.asarray(state, dtype=complex).reshape((D,) * n).copy()
    w = np.exp(2j * np.pi / D)
    k = np.arange(D)
    for i in range(n):
        x, z = int(v[i]), int(v[n + i])
        if z:
            shape = [1] * n
            shape[i] = D
            psi = psi * (w ** ((z * k) % D)).reshape(shape)
        if x:
            psi = np.roll(psi, x, axis=i)
        f = pauli_phase_f((x * z) % D, D)
        if f != 1:
            psi = psi * f
    return psi.reshape(-1)


def apply_inverse(state, v, D: int) -> np.ndarray:
    """sigma_v^dagger |state>, using sigma_v^{D-1} = sigma_v^dagger."""
    psi = np.asarray(state, dtype=complex)
    for _ in range(D - 1):
        psi = apply_error(psi, v, D)
    return psi


def _project(code: StabilizerCode, psi: np.ndarray) -> np.ndarray:
    D = code.D
    w = np.exp(2j * np.pi / D)
    for g, f in zip(code.generators, code.phases):
        acc = psi.copy()
        cur = psi
        for _ in range(1, D):
            cur = w ** (-int(f)) * apply_error(cur, g, D)
            acc = acc + cur
        psi = acc / D
    return psi


def code_basis(code: StabilizerCode) -> np.ndarray:
    """Orthonormal columns spanning the code space (D^n x D^k).

    Columns are the projections of computational basis states, taken in
    increasing order and Gram-Schmidt orthonormalised.
    """
    D, n = code.D, code.n
    _check_size(n, D)
    want = D**code.k
    cols: list[np.ndarray] = []
    for idx in range(D**n):
        psi = np.zeros(D**n, dtype=complex)
        psi[idx] = 1
        psi = _project(code, psi)
        for c in cols:
            psi = psi - (c.conj() @ psi) * c
        norm = np.linalg.norm(psi)
        if norm > 1e-8:
            cols.append(psi / norm)
            if len(cols) == want:
                return np.array(cols).T
    raise ZeroProjection(f"found {len(cols)} of {want} code-space directions")


def encode(code: StabilizerCode, logical, basis: np.ndarray | None = None) -> np.ndarray:
    """Image of a D^k logical state in the code space."""
    logical = np.asarray(logical, dtype=complex).reshape(-1)
    if logical.size != code.D**code.k:
        raise ValueError(f"logical state needs {code.D ** code.k} amplitudes")
    B = code_basis(code) if basis is None else basis
    psi = B @ logical
    norm = np.linalg.norm(psi)
    if norm < 1e-12:
        raise ZeroProjection("logical state is zero")
    return psi / norm


def measure_syndrome(code: StabilizerCode, state) -> np.ndarray:
    """Residues g_i = <v_i, u> for a state sigma_u |code state>.

    S_i sigma_u |psi> = w^(f_i - <v_i, u>) sigma_u |psi>, so the eigenvalue
    exponent e_i gives g_i = f_i - e_i.
    """
    D = code.D
    psi = np.asarray(state, dtype=complex)
    out = np.zeros(code.m, dtype=np.int64)
    for i, (g, f) in enumerate(zip(code.generators, code.phases)):
        s_psi = apply_error(psi, g, D)
        lam = np.vdot(psi, s_psi)
        if np.linalg.norm(s_psi - lam * psi) > 1e-8:
            raise MixedSector(f"state is not an eigenvector of generator {i}")
        e = int(round(np.angle(lam) * D / (2 * np.pi))) % D
        out[i] = (int(f) - e) % D
    return out


def decode_min_weight(code: StabilizerCode, syndrome, decoder: QuantumLookupDecoder | None = None,
                      t: int | None = None) -> np.ndarray:
    decoder = decoder or QuantumLookupDecoder(t=t).fit(code)
    return decoder.decode(syndrome)


def random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return psi / np.linalg.norm(psi)


@dataclass(frozen=True)
class Roundtrip:
    fidelity: float
    syndrome: np.ndarray
    correction: np.ndarray


def recovery_roundtrip(code: StabilizerCode, error, decoder: QuantumLookupDecoder | None = None,
                       logical=None, basis: np.ndarray | None = None,
                       rng: np.random.Generator | None = None) -> Roundtrip:
    """Encode, corrupt, measure, correct; return |<psi|psi_recovered>|."""
    rng = rng or np.random.default_rng(0)
    B = code_basis(code) if basis is None else basis
    if logical is None:
        logical = random_state(B.shape[1], rng)
    psi = encode(code, logical, B)
    bad = apply_error(psi, error, code.D)
    s = measure_syndrome(code, bad)
    w = decode_min_weight(code, s, decoder)
    fixed = apply_inverse(bad, w, code.D)
    return Roundtrip(float(abs(np.vdot(psi, fixed))), s, w)


# -- Monte Carlo ---------------------------------------------------------------------


@dataclass(frozen=True)
class MonteCarloResult:
    p: float
    failures: int
    shots: int
    seed: int

    @property
    def rate(self) -> float:
        return self.failures / self.shots

    @property
    def stderr(self) -> float:
        r = self.rate
        return sqrt(r * (1 - r) / self.shots)


def sample_depolarizing(n: int, D: int, p: float, shots: int,
                        rng: np.random.Generator) -> np.ndarray:
    """Each qudit independently gets a uniform nonidentity sigma with probability p."""
    hit = rng.random((shots, n)) < p
    pick = rng.integers(1, D * D, size=(shots, n))
    x, z = pick // D, pick % D
    E = np.zeros((shots, 2 * n), dtype=np.int64)
    E[:, :n] = np.where(hit, x, 0)
    E[:, n:] = np.where(hit, z, 0)
    return E


def monte_carlo_logical_rate(code: StabilizerCode, p: float, shots: int, seed: int,
                             decoder: QuantumLookupDecoder | None = None,
                             shard_size: int = 20_000) -> MonteCarloResult:
    """Fraction of shots whose residual error leaves the stabilizer group.

    Shards draw from child seeds of one SeedSequence, so the count does not
    depend on how the shards are scheduled.
    """
    decoder = decoder or QuantumLookupDecoder().fit(code)
    if code.D**code.m > 2**22:
        raise TooLarge("syndrome space too large for a dense table")
    corr, known = decoder.dense_table()
    D = code.D
    Vh = code.vhat
    weights = D ** np.arange(code.m - 1, -1, -1, dtype=np.int64)
    n_shards = max(1, -(-shots // shard_size))
    children = np.random.SeedSequence(seed).spawn(n_shards)
    failures = 0
    left = shots
    for child in children:
        m = min(shard_size, left)
        left -= m
        rng = np.random.default_rng(child)
        E = sample_depolarizing(code.n, D, p, m, rng)
        S = symp_products(E, code.generators, D)
        keys = S @ weights
        R = (E - corr[keys]) % D
        logical = symp_products(R, Vh, D).any(axis=1)
        failures += int((logical | ~known[keys]).sum())
    return MonteCarloResult(p, failures, shots, seed)


def loglog_slope(results) -> float:
    ps = np.log([r.p for r in results])
    rs = np.log([max(r.rate, 1e-300) for r in results])
    return float(np.polyfit(ps, rs, 1)[0])


__all__ = [
    "MAX_STATE", "MixedSector", "MonteCarloResult", "Roundtrip", "UncorrectableSyndrome",
    "ZeroProjection", "apply_error", "apply_inverse", "basis_state", "code_basis",
    "decode_min_weight", "encode", "loglog_slope", "measure_syndrome",
    "monte_carlo_logical_rate", "random_state", "recovery_roundtrip", "sample_depolarizing",
    "syndrome_index",
]

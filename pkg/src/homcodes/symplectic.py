"""Qudit Pauli operators in symplectic form and stabilizer codes over Z_D.

A vector v = (x | z) in Z_D^{2n} stands for sigma_v = tensor f(x_i z_i) X^x_i Z^z_i
with X|k> = |k+1>, Z|k> = w^k |k>, w = exp(2 pi i / D), and
f(a) = exp(i pi / D) when D is even and a is odd (else 1).

With these operators XZ = w^{-1} ZX, so the commutation law reads
sigma_u sigma_v = w^{<v,u>} sigma_v sigma_u with <u,v> = x_u.z_v - z_u.x_v.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from math import comb, log

import numpy as np

from . import _kernels
from .zd_linalg import (as_int_array, is_independent_mod, is_prime, kernel_mod,
                        pack_gf2, span_size_mod, spans_equal_mod)


class TooLarge(ValueError):
    pass


class NotIsotropic(ValueError):
    pass


# -- vectors -----------------------------------------------------------------------


def omega_matrix(n: int) -> np.ndarray:
    I = np.eye(n, dtype=np.int64)
    Z = np.zeros((n, n), dtype=np.int64)
    return np.block([[Z, I], [-I, Z]])


def symp_form(u, v, D: int) -> int:
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if u.shape != v.shape or u.size % 2:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    n = u.size // 2
    return int((u[:n] @ v[n:] - u[n:] @ v[:n]) % D)


def symp_products(A, B, D: int) -> np.ndarray:
    """Matrix of <a_i, b_j> for rows a_i of A and b_j of B."""
    A = as_int_array(A)
    B = as_int_array(B)
    n = A.shape[1] // 2
    return (A[:, :n] @ B[:, n:].T - A[:, n:] @ B[:, :n].T) % D


def weight(v) -> int:
    v = np.asarray(v).reshape(-1)
    n = v.size // 2
    return int(np.count_nonzero((v[:n] != 0) | (v[n:] != 0)))


def pauli_phase_f(x: int, D: int) -> complex:
    if D % 2 == 0 and x % 2 == 1:
        return np.exp(1j * np.pi / D)
    return 1.0 + 0j


# -- dense operators -----------------------------------------------------------------


MAX_DENSE = 4096


def shift_op(D: int) -> np.ndarray:
    return np.roll(np.eye(D, dtype=complex), 1, axis=0)


def clock_op(D: int) -> np.ndarray:
    w = np.exp(2j * np.pi / D)
    return np.diag(w ** np.arange(D))


def sigma_1(x: int, z: int, D: int) -> np.ndarray:
    X = np.linalg.matrix_power(shift_op(D), x % D)
    Zm = np.linalg.matrix_power(clock_op(D), z % D)
    return pauli_phase_f((x * z) % D, D) * (X @ Zm)


def dense_sigma(v, D: int) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64).reshape(-1)
    n = v.size // 2
    if D**n > MAX_DENSE:
        raise TooLarge(f"D^n = {D**n} exceeds {MAX_DENSE}")
    out = np.ones((1, 1), dtype=complex)
    for i in range(n):
        out = np.kron(out, sigma_1(int(v[i]), int(v[n + i]), D))
    return out


# -- stabilizer codes ---------------------------------------------------------------------


def parse_check_matrix(text: str, D: int | None = None) -> np.ndarray:
    """Rows "x1 .. xn | z1 .. zn"; digits may also be run together."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "|" not in line:
            raise ValueError(f"check-matrix row without '|': {line!r}")
        left, right = line.split("|", 1)
        halves = []
        for part in (left, right):
            toks = part.split()
            if len(toks) == 1 and len(toks[0]) > 1:
                toks = list(toks[0])
            halves.append([int(t) for t in toks])
        if len(halves[0]) != len(halves[1]):
            raise ValueError(f"x and z blocks differ in length: {line!r}")
        rows.append(halves[0] + halves[1])
    M = np.array(rows, dtype=np.int64)
    if D is not None:
        if ((M < 0) | (M >= D)).any():
            raise ValueError(f"entries must lie in 0..{D - 1}")
    return M


def format_check_matrix(M) -> str:
    M = as_int_array(M)
    n = M.shape[1] // 2
    return "\n".join(" ".join(map(str, r[:n])) + " | " + " ".join(map(str, r[n:]))
                     for r in M) + "\n"


@dataclass(frozen=True)
class DistanceResult:
    d: int
    witness: np.ndarray


@dataclass(frozen=True, eq=False)
class StabilizerCode:
    """Isotropic V in Z_D^{2n} given by independent generator rows (x|z)."""

    generators: np.ndarray
    D: int
    phases: np.ndarray | None = None
    name: str = field(default="")

    def __post_init__(self):
        G = as_int_array(self.generators) % self.D
        object.__setattr__(self, "generators", G)
        if G.shape[1] % 2:
            raise ValueError("generator rows must have even length 2n")
        if self.phases is None:
            object.__setattr__(self, "phases", np.zeros(G.shape[0], dtype=np.int64))
        if G.shape[0] and symp_products(G, G, self.D).any():
            raise NotIsotropic("generators do not commute")
        if not is_independent_mod(G, self.D):
            raise ValueError("generators are not independent over Z_D")

    @property
    def n(self) -> int:
        return self.generators.shape[1] // 2

    @property
    def m(self) -> int:
        return self.generators.shape[0]

    @property
    def k_exact(self) -> float:
        """log_D of sqrt(|V^| / |V|); an integer whenever V is free."""
        return self.n - log(span_size_mod(self.generators, self.D, cols=2 * self.n)) / log(self.D) \
            if self.m else float(self.n)

    @property
    def k(self) -> int:
        k = self.k_exact
        if abs(k - round(k)) > 1e-9:
            raise ValueError(f"non-integral k = {k}")
        return int(round(k))

    @cached_property
    def vhat(self) -> np.ndarray:
        return vhat(self)

    def x_block(self) -> np.ndarray:
        return self.generators[:, : self.n]

    def z_block(self) -> np.ndarray:
        return self.generators[:, self.n:]

    def syndrome(self, e) -> np.ndarray:
        """g_i = <v_i, e> mod D for each generator v_i."""
        return symp_products(self.generators, np.asarray(e).reshape(1, -1), self.D)[:, 0]

    def in_stabilizer(self, e) -> bool:
        from .zd_linalg import in_span_mod
        return in_span_mod(self.generators, np.asarray(e) % self.D, self.D)

    def logical_pairings(self, e) -> np.ndarray:
        return symp_products(self.vhat, np.asarray(e).reshape(1, -1), self.D)[:, 0]

    def is_logical_error(self, e) -> bool:
        """e in V^ but not in V."""
        return not self.syndrome(e).any() and self.logical_pairings(e).any()


def vhat(code: StabilizerCode) -> np.ndarray:
    """Generators of V^ = {u : <v, u> = 0 for all v in V}."""
    n, D = code.n, code.D
    if code.m == 0:
        return np.eye(2 * n, dtype=np.int64)
    # <v, u> = v Omega u, so V^ = ker(G Omega)
    A = (code.generators @ omega_matrix(n)) % D
    return kernel_mod(A, D, cols=2 * n)


def five_qubit_code() -> StabilizerCode:
    """The packaged [[5,1,3]] check matrix."""
    text = resources.files("homcodes").joinpath("data/five_qubit.txt").read_text()
    return StabilizerCode(parse_check_matrix(text, 2), 2, name="five-qubit")


def trivial_code(n: int, k: int, D: int = 2) -> StabilizerCode:
    """C_T(n, k): the first n-k qudits fixed to |0>, stabilized by Z on each."""
    G = np.zeros((n - k, 2 * n), dtype=np.int64)
    for i in range(n - k):
        G[i, n + i] = 1
    return StabilizerCode(G, D, name=f"trivial({n},{k})")


def _gray_vector(G, index, D):
    coeffs = _kernels.gray_digits(index, G.shape[0], D)
    return (coeffs @ G) % D


def distance_bruteforce(code: StabilizerCode, limit: int = 2**30) -> DistanceResult:
    """min |u| over u in V^ \\ V by Gray-code enumeration of V^."""
    D = code.D
    Vh = code.vhat
    m = Vh.shape[0]
    if m == 0 or D**m > limit:
        raise TooLarge(f"{D}^{m} elements of V^ exceed the enumeration limit")
    P = symp_products(Vh, Vh, D)
    if not P.any():
        raise ValueError("the code encodes no qudits")
    n = code.n
    if D == 2:
        W = (n + 63) // 64
        gx = np.zeros((m, W), dtype=np.uint64)
        gz = np.zeros((m, W), dtype=np.uint64)
        for w in range(W):
            gx[:, w] = pack_gf2(Vh[:, 64 * w: min(n, 64 * (w + 1))])
            gz[:, w] = pack_gf2(Vh[:, n + 64 * w: n + min(n, 64 * (w + 1))])
        PW = (m + 63) // 64
        gp = np.zeros((m, PW), dtype=np.uint64)
        for w in range(PW):
            gp[:, w] = pack_gf2(P[:, 64 * w: 64 * (w + 1)])
        d, idx = _kernels.symp2_min_weight(gx, gz, gp)
    else:
        d, idx = _kernels.sympd_min_weight(Vh, P, D)
    return DistanceResult(d, _gray_vector(Vh, idx, D))


def min_stabilizer_weight(code: StabilizerCode, limit: int = 2**30) -> int:
    """Minimum weight of a nonzero element of V."""
    D, G, m = code.D, code.generators, code.m
    if m == 0:
        raise ValueError("empty stabilizer")
    if D**m > limit:
        raise TooLarge("stabilizer group too large to enumerate")
    # pairing against the identity tracks the coefficient vector itself
    P = np.eye(m, dtype=np.int64)
    if D == 2:
        n = code.n
        W = (n + 63) // 64
        gx = np.zeros((m, W), dtype=np.uint64)
        gz = np.zeros((m, W), dtype=np.uint64)
        for w in range(W):
            gx[:, w] = pack_gf2(G[:, 64 * w: min(n, 64 * (w + 1))])
            gz[:, w] = pack_gf2(G[:, n + 64 * w: n + min(n, 64 * (w + 1))])
        PW = (m + 63) // 64
        gp = np.zeros((m, PW), dtype=np.uint64)
        for w in range(PW):
            gp[:, w] = pack_gf2(P[:, 64 * w: 64 * (w + 1)])
        return _kernels.symp2_min_weight(gx, gz, gp)[0]
    return _kernels.sympd_min_weight(G, P, D)[0]


@dataclass(frozen=True)
class CSSSplit:
    x_rows: np.ndarray  # pure-X generators (x parts)
    z_rows: np.ndarray  # pure-Z generators (z parts)


def is_css(code: StabilizerCode) -> CSSSplit | None:
    """Split V as (V cap X) + (V cap Z) when the cardinalities allow it."""
    D, n, G = code.D, code.n, code.generators
    if code.m == 0:
        return CSSSplit(np.zeros((0, n), dtype=np.int64), np.zeros((0, n), dtype=np.int64))
    Gx, Gz = G[:, :n], G[:, n:]
    cx = kernel_mod(Gz.T, D, cols=code.m)  # combinations with zero z part
    cz = kernel_mod(Gx.T, D, cols=code.m)
    X = (cx @ Gx) % D if cx.size else np.zeros((0, n), dtype=np.int64)
    Z = (cz @ Gz) % D if cz.size else np.zeros((0, n), dtype=np.int64)
    X = X[X.any(axis=1)] if X.size else X
    Z = Z[Z.any(axis=1)] if Z.size else Z
    sx = span_size_mod(X, D, cols=n) if X.size else 1
    sz = span_size_mod(Z, D, cols=n) if Z.size else 1
    if sx * sz != span_size_mod(G, D, cols=2 * n):
        return None
    return CSSSplit(X, Z)


def is_degenerate(code: StabilizerCode, t: int) -> bool:
    """Some nonzero stabilizer has weight <= 2t."""
    if t <= 0:
        return False
    return min_stabilizer_weight(code) <= 2 * t


def quantum_hamming_holds(n: int, k: int, t: int, D: int) -> bool:
    return D**k * sum((D * D - 1) ** i * comb(n, i) for i in range(t + 1)) <= D**n


def same_stabilizer(a, b, D: int) -> bool:
    return spans_equal_mod(a, b, D)


# -- symplectic generators --------------------------------------------------------------


def is_symplectic(M, D: int) -> bool:
    M = as_int_array(M)
    n = M.shape[0] // 2
    Om = omega_matrix(n)
    return not ((M.T @ Om @ M - Om) % D).any()


def fourier_matrix(n: int, i: int, D: int) -> np.ndarray:
    """F on qudit i: X -> Z, Z -> X^-1."""
    M = np.eye(2 * n, dtype=np.int64)
    M[i, i] = 0
    M[n + i, n + i] = 0
    M[n + i, i] = 1  # x-part of the input becomes z
    M[i, n + i] = -1 % D  # z-part becomes -x
    return M % D


def phase_matrix(n: int, i: int, D: int) -> np.ndarray:
    """K on qudit i: X -> XZ, Z -> Z."""
    M = np.eye(2 * n, dtype=np.int64)
    M[n + i, i] = 1
    return M % D


def cnot_matrix(n: int, c: int, t: int, D: int) -> np.ndarray:
    """CNOT: x_t += x_c, z_c -= z_t."""
    M = np.eye(2 * n, dtype=np.int64)
    M[t, c] = 1
    M[n + c, n + t] = -1 % D
    return M % D


def permutation_matrix(n: int, perm, D: int) -> np.ndarray:
    """Qudit i moves to position perm[i]."""
    M = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for i, p in enumerate(perm):
        M[p, i] = 1
        M[n + p, n + i] = 1
    return M


@dataclass(frozen=True)
class Generator:
    label: str
    matrix: np.ndarray
    qudits: tuple[int, ...]


def appendix_a_generators(D: int, n: int) -> list[Generator]:
    gens = []
    for i in range(n):
        gens.append(Generator(f"F{i}", fourier_matrix(n, i, D), (i,)))
        gens.append(Generator(f"K{i}", phase_matrix(n, i, D), (i,)))
    for c in range(n):
        for t in range(n):
            if c != t:
                gens.append(Generator(f"CNOT{c}{t}", cnot_matrix(n, c, t, D), (c, t)))
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        gens.append(Generator(f"SWAP{i}{i + 1}", permutation_matrix(n, perm, D), (i, i + 1)))
    return gens


def fourier_unitary(D: int) -> np.ndarray:
    w = np.exp(2j * np.pi / D)
    k = np.arange(D)
    return w ** np.outer(k, k) / np.sqrt(D)


def phase_unitary(D: int) -> np.ndarray:
    w = np.exp(2j * np.pi / D)
    f1 = pauli_phase_f(1, D)
    k = np.arange(D)
    return np.diag(f1**k * w ** (k * (k + 1) // 2))


def cnot_unitary(D: int) -> np.ndarray:
    """|a, b> -> |a, a + b> on two qudits (control first)."""
    U = np.zeros((D * D, D * D), dtype=complex)
    for a in range(D):
        for b in range(D):
            U[a * D + (a + b) % D, a * D + b] = 1
    return U


def _embed(U_local, qudits, n, D):
    """Dense operator on n qudits acting as U_local on ``qudits``."""
    dim = D**n
    out = np.zeros((dim, dim), dtype=complex)
    k = len(qudits)
    for idx in range(dim):
        digits = np.array(np.unravel_index(idx, (D,) * n))
        sub = int(np.ravel_multi_index(tuple(digits[list(qudits)]), (D,) * k))
        for out_sub in range(D**k):
            amp = U_local[out_sub, sub]
            if amp == 0:
                continue
            nd = digits.copy()
            nd[list(qudits)] = np.unravel_index(out_sub, (D,) * k)
            jdx = int(np.ravel_multi_index(tuple(nd), (D,) * n))
            out[jdx, idx] += amp
    return out


def generator_unitary(g: Generator, n: int, D: int) -> np.ndarray:
    name = g.label
    if name.startswith("F"):
        return _embed(fourier_unitary(D), g.qudits, n, D)
    if name.startswith("K"):
        return _embed(phase_unitary(D), g.qudits, n, D)
    if name.startswith("CNOT"):
        return _embed(cnot_unitary(D), g.qudits, n, D)
    if name.startswith("SWAP"):
        sw = np.zeros((D * D, D * D), dtype=complex)
        for a in range(D):
            for b in range(D):
                sw[b * D + a, a * D + b] = 1
        return _embed(sw, g.qudits, n, D)
    raise ValueError(name)


@dataclass(frozen=True)
class UnitaryCheck:
    label: str
    max_deviation: float
    phases: dict  # v (tuple) -> unit-modulus factor c with U s_v U^+ = c s_{Mv}


def verify_generator_unitaries(D: int, n: int) -> list[UnitaryCheck]:
    """Check U sigma_v U^+ = c * sigma_{M v} with |c| = 1 for all v."""
    if D**n > 1024:
        raise TooLarge("dense verification needs D^n <= 1024")
    out = []
    vecs = [np.array(v) for v in itertools.product(range(D), repeat=2 * n)]
    for g in appendix_a_generators(D, n):
        U = generator_unitary(g, n, D)
        dev = float(np.abs(U.conj().T @ U - np.eye(D**n)).max())
        phases = {}
        for v in vecs:
            lhs = U @ dense_sigma(v, D) @ U.conj().T
            rhs = dense_sigma((g.matrix @ v) % D, D)
            j = np.unravel_index(np.argmax(np.abs(rhs)), rhs.shape)
            c = lhs[j] / rhs[j]
            dev = max(dev, float(np.abs(lhs - c * rhs).max()), abs(abs(c) - 1))
            phases[tuple(int(x) for x in v)] = complex(c)
        out.append(UnitaryCheck(g.label, dev, phases))
    return out


def sp2_closure(D: int) -> set:
    """Group generated by the one-qudit F and K matrices mod D."""
    gens = [fourier_matrix(1, 0, D), phase_matrix(1, 0, D)]
    start = tuple(np.eye(2, dtype=np.int64).reshape(-1))
    seen = {start}
    frontier = [np.eye(2, dtype=np.int64)]
    while frontier:
        nxt = []
        for M in frontier:
            for g in gens:
                P = (g @ M) % D
                key = tuple(P.reshape(-1))
                if key not in seen:
                    seen.add(key)
                    nxt.append(P)
        frontier = nxt
    return seen


def sp2_order(D: int) -> int:
    """|SL(2, Z_D)| = D^3 prod_{p | D} (1 - p^-2), counted directly."""
    count = 0
    for a, b, c, d in itertools.product(range(D), repeat=4):
        if (a * d - b * c) % D == 1:
            count += 1
    return count


def is_prime_modulus(D: int) -> bool:
    return is_prime(D)

"""Exact linear algebra over the integers and over Z_D.

Z_D is not a field when D is composite, so nothing here divides by a
non-unit.  Prime moduli take a fast row-reduction path; everything else
goes through the Smith normal form over Z or the Howell form over Z_D.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import reduce
from math import gcd

import numpy as np

INT64_MAX = 2**63 - 1


class SmithOverflowError(OverflowError):
    """An intermediate Smith-reduction entry left the signed 64-bit range."""


def is_prime(D: int) -> bool:
    if D < 2:
        return False
    f = 2
    while f * f <= D:
        if D % f == 0:
            return False
        f += 1
    return True


def as_int_array(A, cols: int | None = None) -> np.ndarray:
    """Coerce to a 2-D int64 array; an empty list becomes a (0, cols) array."""
    arr = np.asarray(A, dtype=np.int64)
    if arr.ndim == 1:
        if arr.size == 0:
            return np.zeros((0, cols or 0), dtype=np.int64)
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    return arr


# ---------------------------------------------------------------------------
# Smith normal form over Z
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == diag(factors) padded with zeros``; U and V unimodular."""

    factors: tuple[int, ...]
    U: np.ndarray | None
    V: np.ndarray | None
    shape: tuple[int, int]

    @property
    def rank(self) -> int:
        return len(self.factors)

    def diagonal_matrix(self) -> np.ndarray:
        S = np.zeros(self.shape, dtype=np.int64)
        for i, s in enumerate(self.factors):
            S[i, i] = s
        return S

    def torsion(self) -> tuple[int, ...]:
        return tuple(s for s in self.factors if s > 1)


def _guard(rows: list[list[int]], where: str) -> None:
    for r in rows:
        for x in r:
            if x > INT64_MAX or x < -INT64_MAX:
                raise SmithOverflowError(
                    f"Smith reduction entry {x} exceeds int64 range ({where}); "
                    "use a wider integer type for this matrix"
                )


def smith_normal_form(A, transforms: bool = True) -> SmithForm:
    """Smith normal form by repeated smallest-pivot elimination.

    Entries are held as Python ints and checked against the int64 range after
    every pivot, so coefficient blow-up fails loudly instead of wrapping.
    """
    M = as_int_array(A)
    m, n = M.shape
    a = [[int(x) for x in row] for row in M]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        ra, rs = a[dst], a[src]
        for j in range(n):
            if rs[j]:
                ra[j] -= q * rs[j]
        if U is not None:
            ua, us = U[dst], U[src]
            for j in range(m):
                if us[j]:
                    ua[j] -= q * us[j]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in a:
            if row[src]:
                row[dst] -= q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] -= q * row[src]

    factors: list[int] = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        swap_rows(t, bi)
        swap_cols(t, bj)
        while True:
            p = a[t][t]
            moved = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    add_row(i, t, q)
                    if a[i][t]:
                        moved = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    add_col(j, t, q)
                    if a[t][j]:
                        moved = True
            if moved:
                # a smaller remainder appeared in row/col t; re-pivot on it
                best = None
                for i in range(t, m):
                    if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                        best = (abs(a[i][t]), i, t)
                for j in range(t, n):
                    if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                        best = (abs(a[t][j]), t, j)
                _, bi, bj = best
                swap_rows(t, bi)
                swap_cols(t, bj)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        factors.append(a[t][t])
        _guard(a, f"after pivot {t}")
        t += 1
    if U is not None:
        _guard(U, "row transform")
        _guard(V, "column transform")
    return SmithForm(
        factors=tuple(factors),
        U=np.array(U, dtype=np.int64).reshape(m, m) if U is not None else None,
        V=np.array(V, dtype=np.int64).reshape(n, n) if V is not None else None,
        shape=(m, n),
    )


# ---------------------------------------------------------------------------
# Prime-modulus row reduction
# ---------------------------------------------------------------------------


def rref_mod_p(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over the field Z_p; returns (R, pivot_cols)."""
    R = as_int_array(A).copy() % p
    m, n = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = (R[r] * inv) % p
        col = R[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            R[rows] = (R[rows] - np.outer(col[rows], R[r])) % p
        pivots.append(c)
        r += 1
    return R[:r], pivots


# ---------------------------------------------------------------------------
# Howell form over Z_D
# ---------------------------------------------------------------------------


def _gcdex(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b)."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def _unit_normaliser(a: int, D: int) -> int:
    """A unit u of Z_D with u*a == gcd(a, D) (mod D)."""
    g = gcd(a, D)
    Dp = D // g
    ap = (a // g) % Dp
    u0 = pow(ap, -1, Dp) if Dp > 1 else 0
    for k in range(g):
        u = u0 + k * Dp
        if gcd(u, D) == 1:
            return u % D
    raise ArithmeticError(f"no unit normaliser for {a} mod {D}")  # pragma: no cover


def howell_form(A, D: int) -> np.ndarray:
    """Howell form of the row span of ``A`` over Z_D (zero rows dropped).

    Two matrices span the same Z_D-module iff their Howell forms are equal,
    and the module has exactly prod(D // pivot) elements.
    """
    M = as_int_array(A) % D
    n = M.shape[1]
    rows = [[int(x) for x in r] for r in M]
    while len(rows) < n:
        rows.append([0] * n)
    r = 0
    for c in range(n):
        for i in range(r + 1, len(rows)):
            if rows[i][c] == 0:
                continue
            if r >= len(rows):
                break
            a, b = rows[r][c], rows[i][c]
            g, s, t = _gcdex(a, b)
            u, v = -(b // g), a // g
            Rr, Ri = rows[r], rows[i]
            rows[r] = [(s * x + t * y) % D for x, y in zip(Rr, Ri)]
            rows[i] = [(u * x + v * y) % D for x, y in zip(Rr, Ri)]
        if r >= len(rows) or rows[r][c] == 0:
            continue
        unit = _unit_normaliser(rows[r][c], D)
        rows[r] = [(unit * x) % D for x in rows[r]]
        p = rows[r][c]
        for i in range(r):
            q = rows[i][c] // p
            if q:
                rows[i] = [(x - q * y) % D for x, y in zip(rows[i], rows[r])]
        ann = [((D // p) * x) % D for x in rows[r]]
        if any(ann):
            rows.append(ann)
        r += 1
    H = [row for row in rows[:r] if any(row)]
    return np.array(H, dtype=np.int64).reshape(len(H), n)


# ---------------------------------------------------------------------------
# Kernels, spans, independence
# ---------------------------------------------------------------------------


def kernel_mod(A, D: int, cols: int | None = None) -> np.ndarray:
    """Generators (as rows) of {x : A x = 0 mod D}.

    Prime D: a basis from the reduced echelon form.  Composite D: the Smith
    transform gives generators, returned in Howell form.
    """
    M = as_int_array(A, cols) % D
    n = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    if is_prime(D):
        R, piv = rref_mod_p(M, D)
        free = [c for c in range(n) if c not in set(piv)]
        basis = np.zeros((len(free), n), dtype=np.int64)
        for k, f in enumerate(free):
            basis[k, f] = 1
            for r, pc in enumerate(piv):
                basis[k, pc] = (-R[r, f]) % D
        return basis
    sf = smith_normal_form(M, transforms=True)
    gens = []
    for i in range(n):
        col = sf.V[:, i]
        if i < sf.rank:
            mult = D // gcd(sf.factors[i], D)
            if mult == D:
                continue
            gens.append((mult * col) % D)
        else:
            gens.append(col % D)
    if not gens:
        return np.zeros((0, n), dtype=np.int64)
    return howell_form(np.array(gens), D)


def span_size_mod(A, D: int, cols: int | None = None) -> int:
    """Number of elements in the Z_D row span of ``A``."""
    M = as_int_array(A, cols) % D
    if M.size == 0:
        return 1
    if is_prime(D):
        return D ** len(rref_mod_p(M, D)[1])
    sf = smith_normal_form(M, transforms=False)
    return reduce(lambda acc, s: acc * (D // gcd(s, D)), sf.factors, 1)


def row_space_rank_mod(A, D: int, cols: int | None = None) -> int:
    """Rank over Z_D for prime D; number of nonzero Howell rows otherwise."""
    M = as_int_array(A, cols) % D
    if M.size == 0:
        return 0
    if is_prime(D):
        return len(rref_mod_p(M, D)[1])
    return howell_form(M, D).shape[0]


def is_independent_mod(vectors, D: int) -> bool:
    """True iff no nontrivial Z_D-combination of ``vectors`` vanishes."""
    M = as_int_array(vectors) % D
    if M.shape[0] == 0:
        return True
    sf = smith_normal_form(M, transforms=False)
    return sf.rank == M.shape[0] and all(gcd(s, D) == 1 for s in sf.factors)


def is_free_span(vectors, D: int) -> bool:
    """True iff the Z_D row span of ``vectors`` has an independent generating set."""
    M = as_int_array(vectors) % D
    if M.shape[0] == 0:
        return True
    sf = smith_normal_form(M, transforms=False)
    return all(gcd(s, D) in (1, D) for s in sf.factors)


def free_basis(vectors, D: int) -> np.ndarray:
    """An independent generating set of a free row span (raises if not free)."""
    M = as_int_array(vectors) % D
    if M.shape[0] == 0:
        return M
    sf = smith_normal_form(M, transforms=True)
    if not all(gcd(s, D) in (1, D) for s in sf.factors):
        raise ValueError("row span is not a free Z_D-module")
    # span(M) = span(S V^-1) with V^-1 unimodular
    Vinv = _unimodular_inverse(sf.V)
    rows = [Vinv[i] % D for i, s in enumerate(sf.factors) if gcd(s, D) == 1]
    return np.array(rows, dtype=np.int64).reshape(len(rows), M.shape[1])


def _unimodular_inverse(V: np.ndarray) -> np.ndarray:
    sf = smith_normal_form(V, transforms=True)
    if sf.factors != (1,) * V.shape[0]:
        raise ValueError("matrix is not unimodular")
    # U V W = I  =>  V^-1 = W U
    return (sf.V.astype(object) @ sf.U.astype(object)).astype(np.int64)


def solve_left_mod(A, b, D: int) -> np.ndarray | None:
    """Some x with x @ A == b (mod D), or None if b is outside the row span."""
    M = as_int_array(A) % D
    m, n = M.shape
    b = np.asarray(b, dtype=np.int64).reshape(-1) % D
    if m == 0:
        return np.zeros(0, dtype=np.int64) if not b.any() else None
    sf = smith_normal_form(M.T, transforms=True)  # U M^T V = S
    c = (sf.U.astype(object) @ b.astype(object)) % D
    y = [0] * m
    for i in range(n):
        ci = int(c[i])
        if i < sf.rank:
            s = sf.factors[i]
            g = gcd(s, D)
            if ci % g:
                return None
            Dg = D // g
            y[i] = ((ci // g) * pow((s // g) % Dg, -1, Dg)) % Dg if Dg > 1 else 0
        elif ci % D:
            return None
    x = (sf.V.astype(object) @ np.array(y, dtype=object)) % D
    return np.array(x, dtype=np.int64)


def in_span_mod(A, b, D: int) -> bool:
    return solve_left_mod(A, b, D) is not None


def spans_equal_mod(A, B, D: int) -> bool:
    """Row-span equality over Z_D via canonical Howell forms."""
    A = as_int_array(A)
    B = as_int_array(B)
    n = max(A.shape[1], B.shape[1])
    A = as_int_array(A, n)
    B = as_int_array(B, n)
    HA = howell_form(A, D) if A.size else np.zeros((0, n), dtype=np.int64)
    HB = howell_form(B, D) if B.size else np.zeros((0, n), dtype=np.int64)
    return HA.shape == HB.shape and bool(np.array_equal(HA, HB))


def greedy_independent_rows(vectors, D: int) -> list[int]:
    """Indices of a maximal prefix-greedy independent subset of ``vectors``."""
    M = as_int_array(vectors) % D
    chosen: list[int] = []
    for i in range(M.shape[0]):
        if not M[i].any():
            continue
        trial = chosen + [i]
        if is_prime(D):
            if len(rref_mod_p(M[trial], D)[1]) == len(trial):
                chosen = trial
        elif is_independent_mod(M[trial], D):
            chosen = trial
    return chosen


# ---------------------------------------------------------------------------
# Packed GF(2) words (distance scans)
# ---------------------------------------------------------------------------


def pack_gf2(rows) -> np.ndarray:
    """Pack each 0/1 row (length <= 64) into a uint64, bit j = column j."""
    M = as_int_array(rows) & 1
    if M.shape[1] > 64:
        raise ValueError("packed GF(2) words hold at most 64 columns")
    weights = np.left_shift(np.uint64(1), np.arange(M.shape[1], dtype=np.uint64))
    return (M.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)


def unpack_gf2(words, ncols: int) -> np.ndarray:
    words = np.asarray(words, dtype=np.uint64).reshape(-1)
    shifts = np.arange(ncols, dtype=np.uint64)
    return ((words[:, None] >> shifts) & np.uint64(1)).astype(np.int64)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def matrix_to_json(A, modulus: int | None = None) -> dict:
    M = as_int_array(A)
    if modulus is not None:
        M = M % modulus
    out = {"rows": int(M.shape[0]), "cols": int(M.shape[1]),
           "entries": [int(x) for x in M.reshape(-1)]}
    if modulus is not None:
        out["modulus"] = int(modulus)
    return out


def matrix_from_json(obj: dict | str) -> tuple[np.ndarray, int | None]:
    if isinstance(obj, str):
        obj = json.loads(obj)
    rows, cols = int(obj["rows"]), int(obj["cols"])
    entries = obj["entries"]
    if len(entries) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
    M = np.array(entries, dtype=np.int64).reshape(rows, cols)
    modulus = obj.get("modulus")
    if modulus is not None:
        if modulus < 2:
            raise ValueError("modulus must be at least 2")
        if ((M < 0) | (M >= modulus)).any():
            raise ValueError("entries must be reduced modulo the modulus")
    return M, modulus

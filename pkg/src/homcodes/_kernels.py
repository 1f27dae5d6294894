"""Numba kernels for exhaustive minimum-weight scans.

Every scan walks a Gray code over the coefficient tuples of a generating
set, so each step adds exactly one generator.  The counter range is split
into chunks that run under ``prange``; each chunk rebuilds its starting
state from the Gray digits of its first counter.
"""

from __future__ import annotations

import os

import numba
import numpy as np
from numba import njit, prange

numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


def configure_threads() -> int:
    """Honour HOMCODES_THREADS (capped at the numba default)."""
    want = os.environ.get("HOMCODES_THREADS")
    n = numba.config.NUMBA_NUM_THREADS
    if want:
        n = max(1, min(int(want), n))
    numba.set_num_threads(n)
    return n


@njit(cache=True, inline="always")
def popcount64(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return (x * _H01) >> np.uint64(56)


@njit(cache=True)
def _trailing_zeros(i):
    t = 0
    while (i & 1) == 0:
        i >>= 1
        t += 1
    return t


def _chunking(total: int, min_bits: int = 12) -> tuple[int, int]:
    chunks = 1
    while chunks < 256 and total // (chunks * 2) >= (1 << min_bits):
        chunks *= 2
    return chunks, total // chunks


@njit(cache=True, parallel=True)
def _gf2_min_weight(gens, nchunks, chunk_len):
    k, W = gens.shape
    best = np.full(nchunks, np.int64(1) << 62)
    arg = np.zeros(nchunks, dtype=np.int64)
    for c in prange(nchunks):
        start = c * chunk_len
        cur = np.zeros(W, dtype=np.uint64)
        g = start ^ (start >> 1)
        for b in range(k):
            if (g >> b) & 1:
                for w in range(W):
                    cur[w] ^= gens[b, w]
        lo = start
        if lo == 0:
            lo = 1
        else:
            wt = 0
            for w in range(W):
                wt += popcount64(cur[w])
            best[c] = wt
            arg[c] = start
            lo = start + 1
        for i in range(lo, start + chunk_len):
            j = _trailing_zeros(i)
            wt = 0
            for w in range(W):
                cur[w] ^= gens[j, w]
                wt += popcount64(cur[w])
            if wt < best[c]:
                best[c] = wt
                arg[c] = i
    return best, arg


def gf2_min_weight(gens_packed: np.ndarray) -> tuple[int, int]:
    """Min weight over nonzero combinations; returns (weight, gray index)."""
    k = gens_packed.shape[0]
    configure_threads()
    nchunks, chunk_len = _chunking(1 << k)
    best, arg = _gf2_min_weight(np.ascontiguousarray(gens_packed, dtype=np.uint64),
                                nchunks, chunk_len)
    i = int(np.argmin(best))
    return int(best[i]), int(arg[i])


@njit(cache=True, parallel=True)
def _symp2_min_weight(gx, gz, gp, nchunks, chunk_len):
    # gx, gz: generator x/z words; gp: packed pairing of each generator
    # against all generators.  Elements with zero pairing are stabilizers.
    k, W = gx.shape
    PW = gp.shape[1]
    best = np.full(nchunks, np.int64(1) << 62)
    arg = np.zeros(nchunks, dtype=np.int64)
    for c in prange(nchunks):
        start = c * chunk_len
        cx = np.zeros(W, dtype=np.uint64)
        cz = np.zeros(W, dtype=np.uint64)
        cp = np.zeros(PW, dtype=np.uint64)
        g = start ^ (start >> 1)
        for b in range(k):
            if (g >> b) & 1:
                for w in range(W):
                    cx[w] ^= gx[b, w]
                    cz[w] ^= gz[b, w]
                for w in range(PW):
                    cp[w] ^= gp[b, w]
        if start > 0:
            nz = False
            for w in range(PW):
                if cp[w] != 0:
                    nz = True
            if nz:
                wt = 0
                for w in range(W):
                    wt += popcount64(cx[w] | cz[w])
                best[c] = wt
                arg[c] = start
        for i in range(start + 1, start + chunk_len):
            j = _trailing_zeros(i)
            nz = False
            for w in range(PW):
                cp[w] ^= gp[j, w]
                if cp[w] != 0:
                    nz = True
            for w in range(W):
                cx[w] ^= gx[j, w]
                cz[w] ^= gz[j, w]
            if nz:
                wt = 0
                for w in range(W):
                    wt += popcount64(cx[w] | cz[w])
                if wt < best[c]:
                    best[c] = wt
                    arg[c] = i
    return best, arg


def symp2_min_weight(gx, gz, gp) -> tuple[int, int]:
    k = gx.shape[0]
    configure_threads()
    nchunks, chunk_len = _chunking(1 << k)
    best, arg = _symp2_min_weight(
        np.ascontiguousarray(gx, dtype=np.uint64),
        np.ascontiguousarray(gz, dtype=np.uint64),
        np.ascontiguousarray(gp, dtype=np.uint64),
        nchunks, chunk_len)
    i = int(np.argmin(best))
    return int(best[i]), int(arg[i])


@njit(cache=True, parallel=True)
def _sympd_min_weight(G, P, D, nchunks, chunk_digits):
    # G: (m, 2n) generators mod D; P: (m, m) pairing matrix mod D.
    m, two_n = G.shape
    n = two_n // 2
    chunk_len = 1
    for _ in range(chunk_digits):
        chunk_len *= D
    best = np.full(nchunks, np.int64(1) << 62)
    arg = np.zeros(nchunks, dtype=np.int64)
    for c in prange(nchunks):
        start = c * chunk_len
        cur = np.zeros(two_n, dtype=np.int64)
        pair = np.zeros(m, dtype=np.int64)
        # Gray digits g_i = (n_i - n_{i+1}) mod D of the start counter
        digits = np.zeros(m + 1, dtype=np.int64)
        t = start
        for b in range(m):
            digits[b] = t % D
            t //= D
        for b in range(m):
            gd = (digits[b] - digits[b + 1]) % D
            if gd:
                for q in range(two_n):
                    cur[q] = (cur[q] + gd * G[b, q]) % D
                for q in range(m):
                    pair[q] = (pair[q] + gd * P[b, q]) % D
        wt = 0
        for q in range(n):
            if cur[q] != 0 or cur[n + q] != 0:
                wt += 1
        nz = False
        for q in range(m):
            if pair[q] != 0:
                nz = True
        if start > 0 and nz:
            best[c] = wt
            arg[c] = start
        for i in range(start + 1, start + chunk_len):
            # digit j that increments: number of trailing (D-1) digits of i-1
            j = 0
            t = i - 1
            while t % D == D - 1:
                t //= D
                j += 1
            for q in range(n):
                a0 = cur[q]
                b0 = cur[n + q]
                gx = G[j, q]
                gz = G[j, n + q]
                if gx == 0 and gz == 0:
                    continue
                a1 = a0 + gx
                if a1 >= D:
                    a1 -= D
                b1 = b0 + gz
                if b1 >= D:
                    b1 -= D
                cur[q] = a1
                cur[n + q] = b1
                was = a0 != 0 or b0 != 0
                now = a1 != 0 or b1 != 0
                if was and not now:
                    wt -= 1
                elif now and not was:
                    wt += 1
            nz = False
            for q in range(m):
                v = pair[q] + P[j, q]
                if v >= D:
                    v -= D
                pair[q] = v
                if v != 0:
                    nz = True
            if nz and wt < best[c]:
                best[c] = wt
                arg[c] = i
    return best, arg


def sympd_min_weight(G: np.ndarray, P: np.ndarray, D: int) -> tuple[int, int]:
    m = G.shape[0]
    configure_threads()
    chunk_digits = m
    nchunks = 1
    while chunk_digits > 0 and nchunks * D <= 256 and D ** (chunk_digits - 1) >= 4096:
        chunk_digits -= 1
        nchunks *= D
    best, arg = _sympd_min_weight(np.ascontiguousarray(G % D, dtype=np.int64),
                                  np.ascontiguousarray(P % D, dtype=np.int64),
                                  D, nchunks, chunk_digits)
    i = int(np.argmin(best))
    return int(best[i]), int(arg[i])


def gray_digits(index: int, m: int, D: int) -> np.ndarray:
    """Coefficient tuple visited at step ``index`` of the modular Gray walk."""
    digits = []
    t = index
    for _ in range(m + 1):
        digits.append(t % D)
        t //= D
    return np.array([(digits[b] - digits[b + 1]) % D for b in range(m)], dtype=np.int64)

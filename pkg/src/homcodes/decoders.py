"""Lookup-table decoders behind a scikit-learn estimator interface.

``fit`` takes a code and builds the table; ``predict`` maps a batch of
syndromes to corrections.  Syndromes outside the table are reported through
``UncorrectableSyndrome`` or, in batch mode, an all-zero row plus a mask.
"""

from __future__ import annotations

import itertools

import numpy as np
from sklearn.base import BaseEstimator

from .classical import LinearCode, build_lookup
from .symplectic import StabilizerCode


class UncorrectableSyndrome(ValueError):
    pass


def _low_weight_errors(n: int, D: int, t: int):
    """All symplectic errors of weight 1..t in (weight, lexicographic) order."""
    singles = [(x, z) for x in range(D) for z in range(D) if (x, z) != (0, 0)]
    out = []
    for w in range(1, t + 1):
        batch = []
        for support in itertools.combinations(range(n), w):
            for ops in itertools.product(singles, repeat=w):
                v = np.zeros(2 * n, dtype=np.int64)
                for q, (x, z) in zip(support, ops):
                    v[q], v[n + q] = x, z
                batch.append(v)
        batch.sort(key=lambda v: tuple(v))
        out.extend(batch)
    return out


def syndrome_index(s, D: int) -> int:
    idx = 0
    for g in s:
        idx = idx * D + int(g)
    return idx


class QuantumLookupDecoder(BaseEstimator):
    """Minimum-weight correction for every syndrome of an error of weight <= t."""

    def __init__(self, t: int | None = None, max_entries: int = 2_000_000):
        self.t = t
        self.max_entries = max_entries

    def fit(self, code: StabilizerCode, y=None, d: int | None = None):
        t = self.t
        if t is None:
            if d is None:
                from .symplectic import distance_bruteforce
                d = distance_bruteforce(code).d
            t = (d - 1) // 2
        n, D = code.n, code.D
        count = sum(len(list(itertools.combinations(range(n), w))) * (D * D - 1) ** w
                    for w in range(1, t + 1))
        if count > self.max_entries:
            raise ValueError(f"{count} low-weight errors exceed max_entries")
        table = {syndrome_index(np.zeros(code.m, dtype=np.int64), D):
                 np.zeros(2 * n, dtype=np.int64)}
        for v in _low_weight_errors(n, D, t):
            key = syndrome_index(code.syndrome(v), D)
            table.setdefault(key, v)
        self.code_ = code
        self.t_ = t
        self.table_ = table
        return self

    def decode(self, s) -> np.ndarray:
        key = syndrome_index(np.asarray(s) % self.code_.D, self.code_.D)
        if key not in self.table_:
            raise UncorrectableSyndrome(f"no error of weight <= {self.t_} has syndrome {list(s)}")
        return self.table_[key].copy()

    def predict(self, syndromes) -> np.ndarray:
        S = np.atleast_2d(np.asarray(syndromes, dtype=np.int64)) % self.code_.D
        out = np.zeros((S.shape[0], 2 * self.code_.n), dtype=np.int64)
        self.found_ = np.zeros(S.shape[0], dtype=bool)
        for i, s in enumerate(S):
            v = self.table_.get(syndrome_index(s, self.code_.D))
            if v is not None:
                out[i] = v
                self.found_[i] = True
        return out

    def dense_table(self):
        """(corrections, known) arrays indexed by the base-D syndrome integer."""
        D, m = self.code_.D, self.code_.m
        size = D**m
        corr = np.zeros((size, 2 * self.code_.n), dtype=np.int64)
        known = np.zeros(size, dtype=bool)
        for key, v in self.table_.items():
            corr[key] = v
            known[key] = True
        return corr, known


class ClassicalLookupDecoder(BaseEstimator):
    """Coset-leader decoding of a binary linear code."""

    def __init__(self, t: int | None = None, strict: bool = False):
        self.t = t
        self.strict = strict

    def fit(self, code: LinearCode, y=None):
        self.code_ = code
        self.lookup_ = build_lookup(code, self.t)
        return self

    def predict(self, syndromes) -> np.ndarray:
        S = np.atleast_2d(np.asarray(syndromes, dtype=np.int64)) % 2
        return np.array([self.lookup_.decode(s, strict=self.strict) for s in S],
                        dtype=np.int64).reshape(S.shape[0], self.code_.n)

"""Binary linear codes: parameters, bounds, lookup decoding, homologicality."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, log2

import numpy as np

from . import _kernels
from .graph import (Graph, IsTree, NotConnected, NotSimplicial, check_rows,
                    complete_graph, cycle_graph, fundamental_cycles, girth,
                    is_connected, is_simplicial)
from .zd_linalg import as_int_array, kernel_mod, pack_gf2, rref_mod_p


class TooLarge(ValueError):
    pass


class AmbiguousSyndrome(ValueError):
    pass


class SearchExhausted(RuntimeError):
    pass


def _rank2(A) -> int:
    A = as_int_array(A)
    return len(rref_mod_p(A, 2)[1]) if A.size else 0


@dataclass(frozen=True)
class LinearCode:
    """Binary code given by a full-rank check matrix H; G spans ker H."""

    H: np.ndarray
    G: np.ndarray
    distance_hint: int | None = field(default=None, compare=False)

    @classmethod
    def from_check_matrix(cls, H, n: int | None = None) -> "LinearCode":
        H = as_int_array(H, n) % 2
        n = H.shape[1]
        if H.shape[0]:
            R, _ = rref_mod_p(H, 2)
        else:
            R = H
        G = kernel_mod(R, 2, cols=n) if R.shape[0] else np.eye(n, dtype=np.int64)
        return cls(R, G)

    @classmethod
    def from_generator_matrix(cls, G) -> "LinearCode":
        G = as_int_array(G) % 2
        R, _ = rref_mod_p(G, 2)
        return cls(kernel_mod(R, 2, cols=G.shape[1]), R)

    @property
    def n(self) -> int:
        return self.H.shape[1]

    @property
    def k(self) -> int:
        return self.G.shape[0]

    def __post_init__(self):
        if self.G.size and self.H.size and ((self.G @ self.H.T) % 2).any():
            raise ValueError("G H^T is not zero mod 2")
        if _rank2(self.H) != self.H.shape[0] or _rank2(self.G) != self.G.shape[0]:
            raise ValueError("G and H must have full row rank")
        if self.H.shape[0] + self.G.shape[0] != self.n:
            raise ValueError("rank G + rank H must equal n")

    def codewords(self) -> np.ndarray:
        if self.k > 20:
            raise TooLarge(f"2^{self.k} codewords is too many to list")
        coeffs = np.array(list(itertools.product((0, 1), repeat=self.k)), dtype=np.int64)
        return (coeffs.reshape(-1, self.k) @ self.G) % 2

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "H": self.H.tolist()}

    @classmethod
    def from_json(cls, obj: dict | str) -> "LinearCode":
        if isinstance(obj, str):
            obj = json.loads(obj)
        code = cls.from_check_matrix(obj["H"], n=obj.get("n"))
        if "n" in obj and obj["n"] != code.n:
            raise ValueError("n does not match H")
        if "k" in obj and obj["k"] != code.k:
            raise ValueError(f"declared k={obj['k']} but H gives k={code.k}")
        return code


def distance_bruteforce(c: LinearCode, max_k: int = 24) -> int:
    """Exact minimum weight over all 2^k - 1 nonzero codewords."""
    if c.k == 0:
        raise ValueError("the zero code has no distance")
    if c.k > max_k:
        raise TooLarge(f"k={c.k} exceeds the enumeration bound {max_k}")
    words = (c.n + 63) // 64
    packed = np.zeros((c.k, words), dtype=np.uint64)
    for w in range(words):
        block = c.G[:, 64 * w: 64 * (w + 1)]
        packed[:, w] = pack_gf2(block)
    return _kernels.gf2_min_weight(packed)[0]


def hamming_bound_holds(n: int, k: int, t: int) -> bool:
    return 2**k * sum(comb(n, i) for i in range(t + 1)) <= 2**n


def gv_bound_guarantees(n: int, k: int, d: int) -> bool:
    return 2**k * sum(comb(n - 1, i) for i in range(d - 1)) < 2**n


def syndrome(c: LinearCode, word) -> np.ndarray:
    return (c.H @ (np.asarray(word, dtype=np.int64) % 2)) % 2


@dataclass(frozen=True)
class LookupDecoder:
    """Coset-leader table; ``ties`` marks syndromes whose leader is not unique."""

    code: LinearCode
    t: int
    leaders: dict
    ties: frozenset

    def decode(self, s, strict: bool = True) -> np.ndarray:
        key = tuple(int(x) % 2 for x in np.asarray(s).reshape(-1))
        if key not in self.leaders:
            raise AmbiguousSyndrome(f"syndrome {key} has no coset leader in the table")
        e = self.leaders[key]
        if strict and key in self.ties and int(e.sum()) > self.t:
            raise AmbiguousSyndrome(
                f"syndrome {key}: leader weight {int(e.sum())} > t={self.t} and not unique")
        return e.copy()


def build_lookup(c: LinearCode, t: int | None = None) -> LookupDecoder:
    """Full coset-leader table by increasing weight, ties broken lexicographically."""
    if c.n - c.k > 22:
        raise TooLarge("syndrome table too large")
    if t is None:
        t = (distance_bruteforce(c) - 1) // 2 if c.k else c.n
    leaders: dict = {}
    ties = set()
    target = 2 ** (c.n - c.k)
    for w in range(c.n + 1):
        fresh = {}
        for supp in itertools.combinations(range(c.n), w):
            e = np.zeros(c.n, dtype=np.int64)
            e[list(supp)] = 1
            key = tuple(int(x) for x in syndrome(c, e))
            if key in leaders:
                continue
            if key in fresh:
                ties.add(key)
            else:
                fresh[key] = e
        leaders.update(fresh)
        if len(leaders) == target:
            break
    return LookupDecoder(c, t, leaders, frozenset(ties))


def decode_lookup(c: LinearCode, s, decoder: LookupDecoder | None = None,
                  strict: bool = True) -> np.ndarray:
    decoder = decoder or build_lookup(c)
    return decoder.decode(s, strict=strict)


# -- codes from graphs ----------------------------------------------------------


@dataclass(frozen=True)
class GraphCode:
    graph: Graph
    code: LinearCode
    n: int
    k: int
    d: int


def classical_code_from_graph(g: Graph) -> GraphCode:
    """The cycle-space code: n = |E|, k = 1 - chi, d = girth."""
    if not is_connected(g):
        raise NotConnected("the graph must be connected")
    if not is_simplicial(g):
        raise NotSimplicial("the graph must have no self-loops or multiple edges")
    k = g.n_edges - g.n_vertices + 1
    if k == 0:
        raise IsTree("a tree has a trivial cycle space")
    H = check_rows(g)
    cb = fundamental_cycles(g)
    code = LinearCode(H, cb.cycles)
    return GraphCode(g, code, g.n_edges, k, int(girth(g)))


def is_homological(c: LinearCode, up_to_permutation: bool = False) -> Graph | None:
    """A connected simple graph whose cycle space is exactly ``c``, or None.

    Vertex stars of such a graph are distinct dual codewords covering every
    coordinate exactly twice, n-k+1 of them with rank n-k.  The search
    branches on the short coordinate with the fewest fitting stars.
    Relabelling edges carries a witness for a permuted code to one for ``c``,
    so ``up_to_permutation`` cannot change the answer.
    """
    del up_to_permutation
    n, r = c.n, c.n - c.k
    if r > 16:
        raise TooLarge(f"{2**r} dual codewords is too many to search")
    V = r + 1
    coeffs = np.array(list(itertools.product((0, 1), repeat=r)), dtype=np.int64).reshape(-1, r)
    stars = [row for row in (coeffs @ c.H) % 2 if row.any()]
    by_coord = [[i for i, s in enumerate(stars) if s[j]] for j in range(n)]
    cover = np.zeros(n, dtype=np.int64)
    chosen: list[int] = []
    seen: set[frozenset] = set()

    def finish() -> Graph | None:
        M = np.array([stars[i] for i in chosen])
        if _rank2(M) != V - 1:
            return None
        cols = [tuple(int(v) for v in np.nonzero(M[:, j])[0]) for j in range(n)]
        if len(set(cols)) != n:
            return None
        return Graph(V, tuple(cols))

    def rec() -> Graph | None:
        key = frozenset(chosen)
        if key in seen:
            return None
        seen.add(key)
        if len(chosen) == V:
            return finish() if (cover == 2).all() else None
        short = np.nonzero(cover < 2)[0]
        if short.size == 0:
            return None
        best = None
        for j in short:
            opts = [i for i in by_coord[j]
                    if i not in chosen and not ((cover + stars[i]) > 2).any()]
            if best is None or len(opts) < len(best):
                best = opts
            if not opts:
                return None
        for i in best:
            cover[:] += stars[i]
            chosen.append(i)
            res = rec()
            if res is not None:
                return res
            chosen.pop()
            cover[:] -= stars[i]
        return None

    if not stars:
        return None
    return rec()


# -- optimal homological codes ----------------------------------------------------


def _kernel_multigraphs(k: int) -> list[tuple[int, tuple[tuple[int, int], ...]]]:
    """Connected multigraphs (loops allowed) with min degree 3 and cycle rank k.

    These are the graphs left after pruning leaves and suppressing degree-2
    vertices, so V <= 2k-2 and E = V + k - 1.  Isomorphs are removed by a
    canonical form over all vertex relabellings.
    """
    out = []
    for V in range(1, 2 * k - 1):
        E = V + k - 1
        if 2 * E < 3 * V:
            continue
        pairs = [(i, j) for i in range(V) for j in range(i, V)]
        canon_seen = set()
        deg = [0] * V
        edges: list[tuple[int, int]] = []

        def rec(start):
            left = E - len(edges)
            deficit = sum(max(0, 3 - d) for d in deg)
            if deficit > 2 * left:
                return
            if left == 0:
                g = Graph(V, tuple(((a,) if a == b else (a, b)) for a, b in edges))
                if not is_connected(g):
                    return
                key = min(
                    tuple(sorted(tuple(sorted((p[a], p[b]))) for a, b in edges))
                    for p in itertools.permutations(range(V)))
                if key not in canon_seen:
                    canon_seen.add(key)
                    out.append((V, tuple(edges)))
                return
            for idx in range(start, len(pairs)):
                a, b = pairs[idx]
                edges.append((a, b))
                deg[a] += 1
                deg[b] += 1
                rec(idx)
                deg[a] -= 1
                deg[b] -= 1
                edges.pop()

        rec(0)
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _subdivide(V: int, edges, lengths) -> Graph:
    out = []
    nxt = V
    for (a, b), ell in zip(edges, lengths):
        prev = a
        for _ in range(ell - 1):
            out.append((prev, nxt))
            prev = nxt
            nxt += 1
        out.append((prev, b))
    return Graph(nxt, tuple(out))


@dataclass(frozen=True)
class NuResult:
    k: int
    d: int
    n: int
    witness: Graph


def nu_search(k: int, d: int, n_max: int = 14) -> NuResult:
    """Smallest n for a homological [n, k, d] code, with a witness graph.

    A minimal witness has no leaves, so it is a subdivision of a kernel
    multigraph of minimum degree 3 (a single cycle when k = 1).  Every kernel
    and every assignment of path lengths summing to n is tried, by
    increasing n.  Witnesses are simple graphs whenever d >= 3.
    """
    if k < 1 or d < 1:
        raise ValueError("need k >= 1 and d >= 1")
    kernels = [(1, ((0, 0),))] if k == 1 else _kernel_multigraphs(k)
    for n in range(d, n_max + 1):
        for V, edges in kernels:
            if len(edges) > n:
                continue
            for lengths in _compositions(n, len(edges)):
                g = _subdivide(V, edges, lengths)
                # girth below 3 needs a loop or parallel edges
                if d >= 3 and not is_simplicial(g):
                    continue
                if girth(g) == d:
                    return NuResult(k, d, n, g)
    raise SearchExhausted(f"no homological [n,{k},{d}] code with n <= {n_max}")


# -- rate tables ------------------------------------------------------------------


@dataclass(frozen=True)
class RatePoint:
    family: str
    param: int
    n: int
    k: int
    d: int
    rate: Fraction
    t_over_n: Fraction


def rate_table(family: str, params) -> list[RatePoint]:
    """(k/n, t/n) for C_d ("C") or K_s ("K"), from codes actually built."""
    pts = []
    for p in params:
        if family == "C":
            g = cycle_graph(p)
        elif family == "K":
            g = complete_graph(p)
        else:
            raise ValueError(f"unknown classical family {family!r}")
        gc = classical_code_from_graph(g)
        t = (gc.d - 1) // 2
        pts.append(RatePoint(family, p, gc.n, gc.k, gc.d,
                             Fraction(gc.k, gc.n), Fraction(t, gc.n)))
    return pts


def triangle_bound(s: int) -> tuple[int, int]:
    """Both sides of (s-2) n >= C(s,3) d for the K_s code."""
    gc = classical_code_from_graph(complete_graph(s))
    return (s - 2) * gc.n, comb(s, 3) * gc.d


def hamming_curve(x: float) -> float:
    """Asymptotic Hamming-bound rate 1 - H(x) (binary entropy H)."""
    if x <= 0:
        return 1.0
    if x >= 0.5:
        return 0.0
    return 1 + x * log2(x) + (1 - x) * log2(1 - x)

"""Quantum codes from 2-complexes: stars give X checks, faces give Z checks.

A qudit sits on every edge.  The star of v is the cochain delta(v*) placed in
the x block, the boundary of f is the chain boundary(f) placed in the z block.
The construction needs the whole family to be generated by an independent
set over Z_D; when torsion breaks this the builder refuses.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import log

import numpy as np

from .complex2 import (Complex2, NotSurface, homology, is_surface,
                       orientability)
from .graph import NotConnected, components
from .symplectic import (StabilizerCode, TooLarge, distance_bruteforce, is_css,
                         min_stabilizer_weight)
from .zd_linalg import greedy_independent_rows, kernel_mod, spans_equal_mod


class TorsionObstruction(ValueError):
    pass


class NoLogicals(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class HomologicalCode:
    complex: Complex2
    code: StabilizerCode
    star_vertices: tuple[int, ...]  # generator rows 0..len-1
    face_indices: tuple[int, ...]  # the following rows
    k_formula: str | None  # "2-chi", "1-chi" or None for non-surfaces

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def k(self) -> int:
        return self.code.k

    @property
    def D(self) -> int:
        return self.code.D


def _surface_kind(c: Complex2) -> str | None:
    if c.open_:
        return "1-chi" if is_surface(c, with_boundary=True) else None
    if not is_surface(c):
        return None
    return "1-chi" if c.removed else "2-chi"


def build(c: Complex2, D: int) -> HomologicalCode:
    """Stabilizer code with V = h[B^1] + h[B_1] over Z_D."""
    if D < 2:
        raise ValueError("D must be at least 2")
    if len(components(c.graph())) != 1:
        raise NotConnected("the complex is not connected")
    n = c.n_edges
    stars = c.boundary_1() % D  # row v is delta(v*)
    bnd = c.boundary_2().T % D  # row f is boundary(f)
    si = greedy_independent_rows(stars, D)
    fi = greedy_independent_rows(bnd, D)
    if stars.any() and not spans_equal_mod(stars[si], stars, D):
        raise TorsionObstruction("star cochains are not generated by an independent subset")
    if bnd.any() and not spans_equal_mod(bnd[fi], bnd, D):
        raise TorsionObstruction("face boundaries are not generated by an independent subset")
    G = np.zeros((len(si) + len(fi), 2 * n), dtype=np.int64)
    G[: len(si), :n] = stars[si]
    G[len(si):, n:] = bnd[fi]
    code = StabilizerCode(G, D, name=c.name)
    if D != 2 and not orientability(c).orientable:
        raise TorsionObstruction(
            f"non-orientable complex: the Z_2 torsion of H_1 obstructs D={D}")
    h = homology(c, D)
    k_h = log(h.h1_size) / log(D)
    if abs(code.k_exact - k_h) > 1e-9:
        raise TorsionObstruction(f"k = {code.k_exact} differs from log_D |H_1| = {k_h}")
    kind = _surface_kind(c)
    if kind is not None:
        want = (2 if kind == "2-chi" else 1) - c.euler_characteristic()
        if code.k != want:
            raise TorsionObstruction(f"k = {code.k} but {kind} gives {want}")
    active = c.active_faces
    return HomologicalCode(c, code, tuple(si), tuple(active[f] for f in fi), kind)


# -- homological distance --------------------------------------------------------


@dataclass(frozen=True)
class HomDistance:
    d: int
    d_cycles: float  # shortest nontrivial cycle (Z-type logical)
    d_cocycles: float  # shortest nontrivial cocycle (X-type logical)
    witness: np.ndarray  # chain or cochain over the edges


def _shortest_nontrivial(n_vertices, arcs, n_edges, trivial_test, D):
    """Shortest closed walk whose edge chain is nontrivial.

    ``arcs`` lists (tail, head, edge, coefficient).  Every candidate is a
    breadth-first fundamental cycle: tree path to the tail, the arc, tree
    path back from the head.  The shortest nontrivial class member is of
    this form for some root, since homology classes of walks add along
    three internally disjoint paths.
    """
    adj = [[] for _ in range(n_vertices)]
    for j, (a, b, e, s) in enumerate(arcs):
        adj[a].append((b, j, 1))
        adj[b].append((a, j, -1))
    best, best_chain = float("inf"), None
    for root in range(n_vertices):
        parent = [None] * n_vertices
        depth = [-1] * n_vertices
        depth[root] = 0
        q = deque([root])
        while q:
            u = q.popleft()
            for w, j, direction in adj[u]:
                if depth[w] < 0:
                    depth[w] = depth[u] + 1
                    parent[w] = (u, j, direction)
                    q.append(w)
        tree = {parent[v][1] for v in range(n_vertices) if parent[v] is not None}

        def path_chain(v, chain):
            # adds the tree path root -> v
            while parent[v] is not None:
                u, j, direction = parent[v]
                _, _, e, s = arcs[j]
                chain[e] += direction * s
                v = u

        for j, (a, b, e, s) in enumerate(arcs):
            if j in tree or depth[a] < 0:
                continue
            if depth[a] + depth[b] + 1 >= best:
                continue
            chain = np.zeros(n_edges, dtype=np.int64)
            path_chain(a, chain)
            chain[e] += s
            back = np.zeros(n_edges, dtype=np.int64)
            path_chain(b, back)
            chain = (chain - back) % D
            if not chain.any() or not trivial_test(chain):
                continue
            w = int(np.count_nonzero(chain))
            if w < best:
                best, best_chain = w, chain
    return best, best_chain


def _dual_arcs(c: Complex2):
    """Dual graph on active faces plus one vertex for everything outside."""
    active = c.active_faces
    index = {f: i for i, f in enumerate(active)}
    inf = len(active)
    occ = c.edge_occurrences(all_faces=False)
    arcs = []
    for e, lst in enumerate(occ):
        if len(lst) > 2:
            raise NotSurface(f"edge {e} lies on {len(lst)} face sides")
        if len(lst) == 2:
            (f1, _, s1), (f2, _, s2) = lst
            arcs.append((index[f1], index[f2], e, s2))
        elif len(lst) == 1:
            f, _, s = lst[0]
            arcs.append((index[f], inf, e, -s))
        else:
            arcs.append((inf, inf, e, 1))
    return inf + 1, arcs


def homological_distance(c: Complex2, D: int = 2) -> HomDistance:
    """min of the shortest nontrivial cycle and the shortest nontrivial cocycle."""
    if D != 2 and not orientability(c).orientable:
        raise TorsionObstruction("non-orientable complexes only carry D=2 codes")
    n = c.n_edges
    d1 = c.boundary_1()
    d2 = c.boundary_2()
    # z in B_1 iff every cocycle pairs to zero with it, and dually
    cocycles = kernel_mod(d2.T % D, D, cols=n)
    cycles = kernel_mod(d1 % D, D, cols=n)

    def cycle_nontrivial(z):
        return bool(((d1 @ z) % D == 0).all()) and bool(((cocycles @ z) % D).any())

    def cocycle_nontrivial(x):
        return bool(((d2.T @ x) % D == 0).all()) and bool(((cycles @ x) % D).any())

    primal = [(a, b, e, 1) for e, (a, b) in enumerate(c.edges)]
    dz, wz = _shortest_nontrivial(c.n_vertices, primal, n, cycle_nontrivial, D)
    nv, dual = _dual_arcs(c)
    dx, wx = _shortest_nontrivial(nv, dual, n, cocycle_nontrivial, D)
    if dz == float("inf") and dx == float("inf"):
        raise NoLogicals("H_1 vanishes: the code encodes nothing")
    if dz <= dx:
        return HomDistance(int(dz), dz, dx, wz)
    return HomDistance(int(dx), dz, dx, wx)


# -- reports ----------------------------------------------------------------------


@dataclass(frozen=True)
class ParameterReport:
    n: int
    k: int
    d: int
    D: int
    d_homological: int | None
    d_bruteforce: int | None
    css: bool
    degenerate: bool | None
    k_formula: str | None

    def triple(self) -> str:
        return f"[[{self.n},{self.k},{self.d}]]"

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "d": self.d, "D": self.D,
                "d_homological": self.d_homological, "d_bruteforce": self.d_bruteforce,
                "css": self.css, "degenerate": self.degenerate, "k_formula": self.k_formula}


class DistanceMismatch(AssertionError):
    pass


def parameter_report(code, brute_limit: int = 2**28,
                     degeneracy_limit: int = 2**26) -> ParameterReport:
    """[[n,k,d]] with every available distance method run and compared."""
    hom = code if isinstance(code, HomologicalCode) else None
    sc = hom.code if hom else code
    D = sc.D
    d_hom = homological_distance(hom.complex, D).d if hom else None
    d_bf = None
    if D ** (sc.n + sc.k) <= brute_limit or D ** sc.vhat.shape[0] <= brute_limit:
        try:
            d_bf = distance_bruteforce(sc, limit=brute_limit).d
        except TooLarge:
            d_bf = None
    if d_hom is not None and d_bf is not None and d_hom != d_bf:
        raise DistanceMismatch(f"homological distance {d_hom} != brute force {d_bf}")
    d = d_hom if d_hom is not None else d_bf
    if d is None:
        raise TooLarge("no distance method is feasible for this code")
    t = (d - 1) // 2
    degenerate = None
    if t == 0:
        degenerate = False
    elif D**sc.m <= degeneracy_limit:
        degenerate = min_stabilizer_weight(sc, limit=degeneracy_limit) <= 2 * t
    elif hom is not None:
        # a light star or face is enough; otherwise leave undecided
        light = min(int(np.count_nonzero(r)) for r in sc.generators) <= 2 * t
        degenerate = True if light else None
    return ParameterReport(sc.n, sc.k, d, D, d_hom, d_bf, is_css(sc) is not None,
                           degenerate, hom.k_formula if hom else None)


@dataclass(frozen=True)
class MuBound:
    surface: str
    d: int
    kind: str  # "upper", "lower" or "exact-44"
    edges: int
    witness: str


def mu_bound_ledger(surface: str, d: int, g: int = 1) -> list[MuBound]:
    """Recorded bounds on the minimum edge count for distance d.

    ``surface`` is "T" (with genus g) or "P" (with g cross-caps).  Upper
    bounds are constructive and re-measured; nothing here claims the exact
    minimum except the (4,4)-regular self-dual torus case.
    """
    from .families import (connected_sum_family, optimal_toric_scan,
                           optimized_toric, projective_plane_93)

    out = []
    if surface == "T":
        name = f"{g}T"
        out.append(MuBound(name, d, "lower", 2 * g, "distance 1 needs all 2g generators"))
        if d % 2 == 1 and d >= 3:
            base = optimized_toric(d)
            c = connected_sum_family(base, g) if g > 1 else base
            hd = homological_distance(c, 2).d
            if hd >= d:
                out.append(MuBound(name, d, "upper", c.n_edges,
                                   f"{g}-fold connected sum of optimized_toric({d})"))
            if g == 1 and d <= 9:
                scan = optimal_toric_scan(d)
                if scan.all_fail and scan.optimized_shortest == d:
                    out.append(MuBound(name, d, "exact-44", d * d + 1,
                                       "(4,4)-regular self-dual quotients of Z^2"))
    elif surface == "P":
        name = f"{g}P"
        out.append(MuBound(name, d, "lower", g, "distance 1 needs all g generators"))
        if g == 1 and d == 3:
            c = projective_plane_93()
            if homological_distance(c, 2).d >= 3:
                out.append(MuBound(name, d, "upper", c.n_edges, "projective_plane_93"))
    else:
        raise ValueError(f"unknown surface {surface!r}")
    return out

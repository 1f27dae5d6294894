"""Finite multigraphs and their Z_2 chain complexes."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .zd_linalg import kernel_mod, rref_mod_p


class GraphError(ValueError):
    pass


class NotConnected(GraphError):
    pass


class NotSimplicial(GraphError):
    pass


class IsTree(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    """Vertices are 0..n-1; an edge is a 1-tuple (self-loop) or a 2-tuple."""

    n_vertices: int
    edges: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        edges = tuple(tuple(int(x) for x in e) for e in self.edges)
        for i, e in enumerate(edges):
            if not 1 <= len(e) <= 2:
                raise GraphError(f"edge {i} must have 1 or 2 endpoints, got {e}")
            if len(e) == 2 and e[0] == e[1]:
                e = (e[0],)
            for v in e:
                if not 0 <= v < self.n_vertices:
                    raise GraphError(f"edge {i} uses vertex {v} outside 0..{self.n_vertices - 1}")
            edges = edges[:i] + (e,) + edges[i + 1:]
        object.__setattr__(self, "edges", edges)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges

    def neighbours(self) -> list[list[tuple[int, int]]]:
        """adj[v] lists (edge index, other endpoint); self-loops appear once."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n_vertices)]
        for i, e in enumerate(self.edges):
            if len(e) == 1:
                adj[e[0]].append((i, e[0]))
            else:
                adj[e[0]].append((i, e[1]))
                adj[e[1]].append((i, e[0]))
        return adj

    def degree(self, v: int) -> int:
        return int(self.incidence_matrix()[v].sum())

    def incidence_matrix(self) -> np.ndarray:
        M = np.zeros((self.n_vertices, self.n_edges), dtype=np.int64)
        for j, e in enumerate(self.edges):
            if len(e) == 1:
                M[e[0], j] = 2
            else:
                M[e[0], j] = M[e[1], j] = 1
        return M

    def boundary_mod2(self) -> np.ndarray:
        return self.incidence_matrix() % 2

    def to_json(self) -> dict:
        return {"vertices": self.n_vertices, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj: dict | str) -> "Graph":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["vertices"]), tuple(tuple(e) for e in obj["edges"]))

    @classmethod
    def from_edge_list(cls, text: str) -> "Graph":
        """One edge per line ("u v" or "u"); '#' starts a comment."""
        edges = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                edges.append(tuple(int(t) for t in line.replace(",", " ").split()))
        n = max((v for e in edges for v in e), default=-1) + 1
        return cls(n, tuple(edges))


def incidence_matrix(g: Graph) -> np.ndarray:
    return g.incidence_matrix()


def is_simplicial(g: Graph) -> bool:
    seen = set()
    for e in g.edges:
        if len(e) == 1:
            return False
        key = tuple(sorted(e))
        if key in seen:
            return False
        seen.add(key)
    return True


def components(g: Graph) -> list[list[int]]:
    adj = g.neighbours()
    comp = [-1] * g.n_vertices
    out: list[list[int]] = []
    for s in range(g.n_vertices):
        if comp[s] >= 0:
            continue
        comp[s] = len(out)
        members = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for _, w in adj[v]:
                if comp[w] < 0:
                    comp[w] = comp[s]
                    members.append(w)
                    queue.append(w)
        out.append(sorted(members))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


def maximal_subtree(g: Graph) -> list[int]:
    """Edge indices of a BFS spanning tree rooted at vertex 0."""
    if g.n_vertices == 0 or not is_connected(g):
        raise NotConnected("a maximal subtree needs a connected, nonempty graph")
    adj = g.neighbours()
    seen = [False] * g.n_vertices
    seen[0] = True
    tree = []
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for ei, w in adj[v]:
            if not seen[w]:
                seen[w] = True
                tree.append(ei)
                queue.append(w)
    return sorted(tree)


@dataclass(frozen=True)
class CycleBasis:
    tree: tuple[int, ...]
    cotree: tuple[int, ...]
    cycles: np.ndarray  # one 0/1 row per co-tree edge


def _tree_path(g: Graph, tree: list[int], a: int, b: int) -> list[int]:
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(g.n_vertices)}
    for ei in tree:
        u, v = g.edges[ei]
        adj[u].append((ei, v))
        adj[v].append((ei, u))
    parent = {a: None}
    queue = deque([a])
    while queue:
        v = queue.popleft()
        if v == b:
            break
        for ei, w in adj[v]:
            if w not in parent:
                parent[w] = (v, ei)
                queue.append(w)
    path = []
    v = b
    while parent[v] is not None:
        v, ei = parent[v]
        path.append(ei)
    return path


def fundamental_cycles(g: Graph, tree=None) -> CycleBasis:
    """One cycle C(T, e) per co-tree edge e, as Z_2 chains over the edges."""
    tree = sorted(maximal_subtree(g) if tree is None else tree)
    if len(tree) != g.n_vertices - 1 or any(len(g.edges[e]) == 1 for e in tree):
        raise GraphError("not a maximal subtree")
    sub = Graph(g.n_vertices, tuple(g.edges[e] for e in tree))
    if not is_connected(sub):
        raise GraphError("not a maximal subtree: it does not span the graph")
    cotree = [e for e in range(g.n_edges) if e not in set(tree)]
    cycles = np.zeros((len(cotree), g.n_edges), dtype=np.int64)
    for k, e in enumerate(cotree):
        cycles[k, e] = 1
        if len(g.edges[e]) == 2:
            for p in _tree_path(g, tree, *g.edges[e]):
                cycles[k, p] ^= 1
    return CycleBasis(tuple(tree), tuple(cotree), cycles)


def cycle_space(g: Graph) -> np.ndarray:
    """Generators of ker(boundary) over Z_2 for any graph, connected or not."""
    return kernel_mod(g.boundary_mod2(), 2, cols=g.n_edges)


def girth(g: Graph) -> float:
    """Length of a shortest cycle; self-loops count 1, parallel pairs 2."""
    best = float("inf")
    seen_pairs = set()
    for e in g.edges:
        if len(e) == 1:
            return 1
        key = tuple(sorted(e))
        if key in seen_pairs:
            best = 2
        seen_pairs.add(key)
    if best == 2:
        return 2
    adj = g.neighbours()
    for s in range(g.n_vertices):
        dist = {s: 0}
        via = {s: -1}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for ei, w in adj[v]:
                if ei == via[v]:
                    continue
                if w in dist:
                    best = min(best, dist[v] + dist[w] + 1)
                else:
                    dist[w] = dist[v] + 1
                    via[w] = ei
                    queue.append(w)
    return best


def wedge(g1: Graph, g2: Graph, v1: int, v2: int) -> Graph:
    """Glue g1 and g2 by identifying v1 in g1 with v2 in g2."""
    if not 0 <= v1 < g1.n_vertices or not 0 <= v2 < g2.n_vertices:
        raise GraphError(f"wedge vertices ({v1}, {v2}) out of range")
    relabel = {}
    nxt = g1.n_vertices
    for v in range(g2.n_vertices):
        if v == v2:
            relabel[v] = v1
        else:
            relabel[v] = nxt
            nxt += 1
    edges = g1.edges + tuple(tuple(relabel[x] for x in e) for e in g2.edges)
    return Graph(nxt, edges)


# -- small named graphs ------------------------------------------------------


def cycle_graph(n: int) -> Graph:
    if n == 1:
        return Graph(1, ((0,),))
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete_graph(s: int) -> Graph:
    return Graph(s, tuple((i, j) for i in range(s) for j in range(i + 1, s)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def loop_digon_graph() -> Graph:
    """Three vertices: a loop at v1, an edge v1-v2 and a double edge v2-v3."""
    return Graph(3, ((0,), (0, 1), (1, 2), (1, 2)))


def check_rows(g: Graph) -> np.ndarray:
    """The first linearly independent rows of the incidence matrix mod 2."""
    B = g.boundary_mod2()
    chosen: list[int] = []
    for i in range(B.shape[0]):
        trial = chosen + [i]
        if len(rref_mod_p(B[trial], 2)[1]) == len(trial):
            chosen = trial
    return B[chosen]

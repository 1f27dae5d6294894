"""Oriented 2-complexes, their (co)homology, surface tests and surgery.

Darts are signed edge labels: +(e+1) traverses edge e forwards and -(e+1)
backwards, the same encoding the JSON format uses.  A face stores its
boundary walk as a cyclic tuple of darts.  Faces listed in ``removed`` are
kept for surface checks but dropped from every chain computation, which is
how surfaces with boundary are represented.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from math import log

import networkx as nx
import numpy as np

from .graph import Graph, components
from .zd_linalg import smith_normal_form, span_size_mod


class ComplexError(ValueError):
    pass


class NotOriented(ComplexError):
    pass


class AdjacentFaces(ComplexError):
    pass


class SeparatingCycle(ComplexError):
    pass


class OneSidedCycle(ComplexError):
    pass


class NotSurface(ComplexError):
    pass


class PreconditionError(ComplexError):
    pass


def dart(e: int, sign: int = 1) -> int:
    return (e + 1) if sign > 0 else -(e + 1)


def dart_edge(d: int) -> int:
    return abs(d) - 1


def dart_sign(d: int) -> int:
    return 1 if d > 0 else -1


@dataclass(frozen=True)
class Complex2:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[int, ...], ...]
    removed: frozenset = frozenset()
    open_: bool = False  # explicit with-boundary tag for complexes not built by removal
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(a), int(b)) for a, b in self.edges))
        object.__setattr__(self, "faces", tuple(tuple(int(x) for x in f) for f in self.faces))
        object.__setattr__(self, "removed", frozenset(int(i) for i in self.removed))
        for i, (a, b) in enumerate(self.edges):
            if not (0 <= a < self.n_vertices and 0 <= b < self.n_vertices):
                raise ComplexError(f"edge {i} has an endpoint outside 0..{self.n_vertices - 1}")
        for fi, walk in enumerate(self.faces):
            if not walk:
                raise ComplexError(f"face {fi} has an empty boundary walk")
            for d in walk:
                if d == 0 or dart_edge(d) >= len(self.edges):
                    raise ComplexError(f"face {fi} uses unknown dart {d}")
            for i, d in enumerate(walk):
                nxt = walk[(i + 1) % len(walk)]
                if self.head(d) != self.tail(nxt):
                    raise ComplexError(f"face {fi} walk is not closed at position {i}")
        for r in self.removed:
            if not 0 <= r < len(self.faces):
                raise ComplexError(f"removed face {r} does not exist")
        if len(self.removed) == len(self.faces) and self.faces:
            raise ComplexError("cannot remove every face")
        d1, d2 = self.boundary_1(), self.boundary_2()
        if d2.size and (d1 @ d2).any():  # pragma: no cover - closed walks guarantee this
            raise ComplexError("boundary of boundary is not zero")

    # -- basic data ---------------------------------------------------------

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def active_faces(self) -> list[int]:
        return [i for i in range(len(self.faces)) if i not in self.removed]

    @property
    def n_faces(self) -> int:
        return len(self.active_faces)

    @property
    def has_boundary(self) -> bool:
        return bool(self.removed) or self.open_

    def tail(self, d: int) -> int:
        a, b = self.edges[dart_edge(d)]
        return a if d > 0 else b

    def head(self, d: int) -> int:
        a, b = self.edges[dart_edge(d)]
        return b if d > 0 else a

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    def graph(self) -> Graph:
        return Graph(self.n_vertices, tuple((a,) if a == b else (a, b) for a, b in self.edges))

    def boundary_1(self) -> np.ndarray:
        M = np.zeros((self.n_vertices, self.n_edges), dtype=np.int64)
        for j, (a, b) in enumerate(self.edges):
            M[b, j] += 1
            M[a, j] -= 1
        return M

    def face_chain(self, f: int) -> np.ndarray:
        c = np.zeros(self.n_edges, dtype=np.int64)
        for d in self.faces[f]:
            c[dart_edge(d)] += dart_sign(d)
        return c

    def boundary_2(self, all_faces: bool = False) -> np.ndarray:
        idx = range(len(self.faces)) if all_faces else self.active_faces
        M = np.zeros((self.n_edges, len(idx)), dtype=np.int64)
        for col, f in enumerate(idx):
            M[:, col] = self.face_chain(f)
        return M

    def coboundary_1(self) -> np.ndarray:
        """delta on 0-cochains: |E| x |V|."""
        return self.boundary_1().T

    def coboundary_2(self) -> np.ndarray:
        """delta on 1-cochains: |F| x |E|."""
        return self.boundary_2().T

    def vertex_star_cochain(self, v: int) -> np.ndarray:
        """delta(v*) as a vector over the edges."""
        return self.boundary_1()[v].copy()

    def closed_up(self) -> "Complex2":
        return Complex2(self.n_vertices, self.edges, self.faces, name=self.name)

    def edge_occurrences(self, all_faces: bool = True) -> list[list[tuple[int, int, int]]]:
        """occ[e] lists (face, position, sign) of every appearance of edge e."""
        occ: list[list[tuple[int, int, int]]] = [[] for _ in self.edges]
        for f, walk in enumerate(self.faces):
            if not all_faces and f in self.removed:
                continue
            for i, d in enumerate(walk):
                occ[dart_edge(d)].append((f, i, dart_sign(d)))
        return occ

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        out = {"vertices": self.n_vertices,
               "edges": [list(e) for e in self.edges],
               "faces": [list(f) for f in self.faces]}
        if self.removed:
            out["removed"] = sorted(self.removed)
        if self.open_:
            out["open"] = True
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, obj: dict | str) -> "Complex2":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["vertices"]), tuple(tuple(e) for e in obj["edges"]),
                   tuple(tuple(f) for f in obj["faces"]),
                   frozenset(obj.get("removed", ())), bool(obj.get("open", False)),
                   obj.get("name", ""))


def boundary_matrices(c: Complex2) -> dict:
    d1, d2 = c.boundary_1(), c.boundary_2()
    return {"d1": d1, "d2": d2, "delta1": d1.T, "delta2": d2.T}


def euler_characteristic(c: Complex2) -> int:
    return c.euler_characteristic()


# -- homology -------------------------------------------------------------------


@dataclass(frozen=True)
class HomologySummary:
    coefficients: int | None  # None for Z, D for Z_D
    free_rank: int | None = None
    torsion: tuple[int, ...] = ()
    z1: int | None = None  # |Z_1| etc. over Z_D (cardinalities)
    b1: int | None = None
    z1co: int | None = None
    b1co: int | None = None

    @property
    def h1_size(self) -> int:
        return self.z1 // self.b1

    @property
    def rank(self) -> float:
        """log_D |H_1| over Z_D, or the free rank over Z."""
        if self.coefficients is None:
            return self.free_rank
        return log(self.h1_size) / log(self.coefficients)


def homology(c: Complex2, D: int | None = None) -> HomologySummary:
    d1, d2 = c.boundary_1(), c.boundary_2()
    E = c.n_edges
    if D is None:
        r1 = smith_normal_form(d1, transforms=False).rank if d1.size else 0
        s2 = smith_normal_form(d2, transforms=False) if d2.size else None
        r2 = s2.rank if s2 else 0
        return HomologySummary(None, free_rank=E - r1 - r2,
                               torsion=s2.torsion() if s2 else ())
    # over Z_D: Z_1 = ker d1 has size D^E / |im d1|; B_1 = im d2
    im1 = span_size_mod(d1.T, D, cols=c.n_vertices) if d1.size else 1
    z1 = D**E // im1
    b1 = span_size_mod(d2.T, D, cols=E) if d2.size else 1
    # Z^1 = ker delta2 (|E| -> |F|), B^1 = im delta1
    im_delta2 = span_size_mod(d2, D, cols=d2.shape[1]) if d2.size else 1
    z1co = D**E // im_delta2
    b1co = span_size_mod(d1, D, cols=E) if d1.size else 1
    return HomologySummary(D, z1=z1, b1=b1, z1co=z1co, b1co=b1co)


# -- surface structure ---------------------------------------------------------


def incoming_darts(c: Complex2, v: int) -> list[int]:
    """star(v): darts that end at v (a self-loop contributes both)."""
    out = []
    for e, (a, b) in enumerate(c.edges):
        if b == v:
            out.append(dart(e, 1))
        if a == v:
            out.append(dart(e, -1))
    return out


def face_index(c: Complex2, f: int, e: int, e2: int) -> int:
    """How often the walk of f passes the corner (e, e2), counting both senses."""
    if c.head(e) != c.tail(e2):
        raise ComplexError(f"darts {e} and {e2} do not form a corner")
    walk = c.faces[f]
    k = len(walk)

    def s(a, b):
        return sum(1 for i in range(k) if walk[i] == a and walk[(i + 1) % k] == b)

    if -e == e2:
        return s(e, e2)
    return s(e, e2) + s(-e2, -e)


def _corner_matrix(c: Complex2, v: int, faces) -> tuple[list[int], np.ndarray]:
    star = incoming_darts(c, v)
    pos = {}
    for i, d in enumerate(star):
        pos.setdefault(d, i)
    k = len(star)
    W = np.zeros((k, k), dtype=np.int64)
    for f in faces:
        walk = c.faces[f]
        m = len(walk)
        for i in range(m):
            a, b = walk[i], walk[(i + 1) % m]
            if c.head(a) != v:
                continue
            # corner (a, b) pairs incoming a with incoming b^-1
            i1, i2 = pos[a], pos[-b]
            if i1 == i2:
                W[i1, i1] += 1
            else:
                W[i1, i2] += 1
                W[i2, i1] += 1
    return star, W


@dataclass(frozen=True)
class SurfaceCheck:
    ok: bool
    stars: dict  # v -> cyclic (or linear, at boundary) tuple of incoming darts
    vertex: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def _order_from_W(star, W, allow_path: bool):
    k = len(star)
    if k == 0:
        return None, "isolated vertex"
    if k == 1:
        if W[0, 0] == 1 or (allow_path and W[0, 0] == 0):
            return (star[0],), ""
        return None, f"single-dart star has index sum {W[0, 0]}"
    if k == 2:
        if np.diag(W).any():
            return None, "a corner turns back on the same dart"
        if W[0, 1] == 2 or (allow_path and W[0, 1] == 1):
            return (star[0], star[1]), ""
        return None, f"two-dart star has index sum {W[0, 1]}"
    if np.diag(W).any() or (W > 1).any():
        return None, "index sums exceed the surface-vertex condition"
    deg = W.sum(axis=1)
    if (deg > 2).any():
        return None, "a dart is adjacent to more than two others"
    ends = [i for i in range(k) if deg[i] < 2]
    if ends and not allow_path:
        return None, "the corners do not close into a cycle"
    if ends and (len(ends) != 2 or any(deg[i] == 0 for i in ends)):
        return None, "the corners form more than one chain"
    start = ends[0] if ends else 0
    order = [start]
    prev = -1
    cur = start
    while True:
        nbrs = [j for j in np.nonzero(W[cur])[0] if j != prev]
        if not nbrs:
            break
        nxt = int(nbrs[0])
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    if len(order) != k:
        return None, "the corners form more than one cycle"
    return tuple(star[i] for i in order), ""


def is_surface(c: Complex2, with_boundary: bool = False, cap: int = 16) -> SurfaceCheck:
    """Surface-vertex test at every vertex; returns the star orderings S(v).

    By default the closed-up complex (removed faces put back) is tested.
    ``with_boundary`` instead uses only active faces and lets a star close
    into an open chain rather than a cycle.
    """
    if not c.n_vertices or len(components(c.graph())) != 1:
        return SurfaceCheck(False, {}, None, "complex is not connected")
    faces = c.active_faces if with_boundary else range(len(c.faces))
    stars = {}
    for v in range(c.n_vertices):
        star, W = _corner_matrix(c, v, faces)
        if len(star) > cap:
            return SurfaceCheck(False, {}, v, f"star of size {len(star)} exceeds cap {cap}")
        order, why = _order_from_W(star, W, with_boundary)
        if order is None:
            return SurfaceCheck(False, {}, v, why)
        stars[v] = order
    return SurfaceCheck(True, stars)


@dataclass(frozen=True)
class Orientation:
    status: str  # "oriented" | "orientable" | "nonorientable"
    signs: tuple[int, ...] | None = None

    @property
    def orientable(self) -> bool:
        return self.status != "nonorientable"


def orientability(c: Complex2) -> Orientation:
    """Face signs making sum(sign_f * boundary f) vanish on every edge.

    All faces count, removed ones included.  Edges seen once (boundary of an
    explicitly open complex) impose nothing.  Propagation across shared
    edges is exact: each edge fixes the relative sign of its two faces.
    """
    nf = len(c.faces)
    occ = c.edge_occurrences()
    adj: list[list[tuple[int, int]]] = [[] for _ in range(nf)]
    for e, lst in enumerate(occ):
        if len(lst) > 2:
            return Orientation("nonorientable")
        if len(lst) == 2:
            (f1, _, s1), (f2, _, s2) = lst
            if f1 == f2:
                if s1 == s2:
                    return Orientation("nonorientable")
                continue
            rel = -s1 * s2  # sign_f2 = rel * sign_f1
            adj[f1].append((f2, rel))
            adj[f2].append((f1, rel))
    signs = [0] * nf
    for s in range(nf):
        if signs[s]:
            continue
        signs[s] = 1
        queue = deque([s])
        while queue:
            f = queue.popleft()
            for g, rel in adj[f]:
                want = signs[f] * rel
                if signs[g] == 0:
                    signs[g] = want
                    queue.append(g)
                elif signs[g] != want:
                    return Orientation("nonorientable")
    if all(s == 1 for s in signs):
        return Orientation("oriented", tuple(signs))
    return Orientation("orientable", tuple(signs))


def orientability_exhaustive(c: Complex2) -> str:
    """Oracle: try all 2^|F| sign vectors (|F| <= 20)."""
    nf = len(c.faces)
    if nf > 20:
        raise ValueError("too many faces for the exhaustive check")
    B = c.boundary_2(all_faces=True)
    occ = c.edge_occurrences()
    single = [e for e, lst in enumerate(occ) if len(lst) == 1]
    mask = np.ones(c.n_edges, dtype=bool)
    mask[single] = False
    if not (B[mask].sum(axis=1)).any():
        return "oriented"
    for bits in range(1 << nf):
        s = np.array([1 if (bits >> i) & 1 == 0 else -1 for i in range(nf)])
        if not (B[mask] @ s).any():
            return "orientable"
    return "nonorientable"


def reorient(c: Complex2, signs) -> Complex2:
    """Reverse the walks of faces whose sign is -1."""
    faces = []
    for f, s in zip(c.faces, signs):
        faces.append(f if s > 0 else tuple(-d for d in reversed(f)))
    return Complex2(c.n_vertices, c.edges, tuple(faces), c.removed, c.open_, c.name)


# -- duality ------------------------------------------------------------------------


def dual_complex(c: Complex2) -> Complex2:
    """Dual of a closed surface complex.

    Oriented input: dual vertex f* per face, dual edge e* from the face where e occurs with
    sign -1 to the face where it occurs with +1, dual face v* walking the
    star ordering S(v).  With this orientation delta* d = d boundary and
    d boundary* = delta d hold exactly.  Otherwise dual edges point from
    the first face side of e to the second and only hold mod 2.
    """
    if c.has_boundary:
        raise NotOriented("duals of surfaces with boundary are not 2-complexes")
    check = is_surface(c)
    if not check:
        raise NotSurface(f"vertex {check.vertex}: {check.reason}")
    if c.boundary_2().sum(axis=1).any():
        return _dual_unoriented(c, check)
    occ = c.edge_occurrences()
    edges = []
    for e, lst in enumerate(occ):
        plus = [f for f, _, s in lst if s > 0]
        minus = [f for f, _, s in lst if s < 0]
        if len(plus) != 1 or len(minus) != 1:
            raise NotOriented(f"edge {e} is not shared by one +1 and one -1 face side")
        edges.append((minus[0], plus[0]))
    faces = []
    for v in range(c.n_vertices):
        order = list(check.stars[v])
        # star entries are incoming darts; sigma is their sign
        for cand in (order, order[::-1]):
            walk = tuple(dart(dart_edge(d), dart_sign(d)) for d in cand)
            ok = all(
                _head(edges, walk[i]) == _tail(edges, walk[(i + 1) % len(walk)])
                for i in range(len(walk)))
            if ok:
                faces.append(walk)
                break
        else:
            raise NotOriented(f"dual face of vertex {v} does not close")
    return Complex2(len(c.faces), tuple(edges), tuple(faces), name=f"dual({c.name})")


def _corner_face(c: Complex2, a: int, b: int) -> int:
    # face passing the corner between incoming darts a and b at one vertex
    for f, walk in enumerate(c.faces):
        k = len(walk)
        for i in range(k):
            x, y = walk[i], walk[(i + 1) % k]
            if (x, y) == (a, -b) or (x, y) == (b, -a):
                return f
    raise NotSurface(f"no face passes the corner ({a}, {b})")


def _dual_unoriented(c: Complex2, check: SurfaceCheck) -> Complex2:
    edges = [(lst[0][0], lst[1][0]) for lst in c.edge_occurrences()]
    faces = []
    for v in range(c.n_vertices):
        star = list(check.stars[v])
        k = len(star)
        g = [_corner_face(c, star[i], star[(i + 1) % k]) for i in range(k)]
        walk = []
        for i in range(k):
            e = dart_edge(star[i])
            src, dst = g[i - 1], g[i]
            if src == dst:
                walk.append(dart(e, dart_sign(star[i])))
            else:
                walk.append(dart(e, 1 if edges[e] == (src, dst) else -1))
        faces.append(tuple(walk))
    return Complex2(len(c.faces), tuple(edges), tuple(faces), name=f"dual({c.name})")


def _tail(edges, d):
    a, b = edges[dart_edge(d)]
    return a if d > 0 else b


def _head(edges, d):
    a, b = edges[dart_edge(d)]
    return b if d > 0 else a


def _flag_graph(c: Complex2) -> nx.MultiGraph:
    G = nx.MultiGraph()
    for v in range(c.n_vertices):
        G.add_node(("v", v), kind="v")
    for e, (a, b) in enumerate(c.edges):
        G.add_node(("e", e), kind="e")
        G.add_edge(("e", e), ("v", a))
        G.add_edge(("e", e), ("v", b))
    for f, walk in enumerate(c.faces):
        kind = "r" if f in c.removed else "f"
        G.add_node(("f", f), kind=kind)
        for i, d in enumerate(walk):
            G.add_node(("p", f, i), kind="p")
            G.add_edge(("p", f, i), ("f", f))
            G.add_edge(("p", f, i), ("e", dart_edge(d)))
            G.add_edge(("p", f, i), ("p", f, (i + 1) % len(walk)))
    return G


def isomorphism(c1: Complex2, c2: Complex2) -> dict | None:
    """A vertex/edge/face relabelling carrying c1 to c2, or None.

    Compares incidence graphs that include every walk position, so cyclic
    walk order is respected up to rotation and reversal.
    """
    if (c1.n_vertices, c1.n_edges, len(c1.faces)) != (c2.n_vertices, c2.n_edges, len(c2.faces)):
        return None
    G1, G2 = _flag_graph(c1), _flag_graph(c2)
    gm = nx.algorithms.isomorphism.MultiGraphMatcher(
        G1, G2, node_match=lambda a, b: a["kind"] == b["kind"])
    if not gm.is_isomorphic():
        return None
    return {k: v for k, v in gm.mapping.items() if k[0] != "p"}


def is_isomorphic(c1: Complex2, c2: Complex2) -> bool:
    return isomorphism(c1, c2) is not None


# -- constructions ---------------------------------------------------------------------


def remove_faces(c: Complex2, faces) -> Complex2:
    """Mark faces as removed; all removed faces must be pairwise disjoint."""
    new = set(c.removed) | {int(f) for f in faces}
    lst = sorted(new)

    def support(f):
        walk = c.faces[f]
        return ({dart_edge(d) for d in walk}, {c.tail(d) for d in walk})

    for i, f in enumerate(lst):
        ef, vf = support(f)
        for g in lst[i + 1:]:
            eg, vg = support(g)
            if ef & eg or vf & vg:
                raise AdjacentFaces(f"faces {f} and {g} share an edge or vertex")
    return Complex2(c.n_vertices, c.edges, c.faces, frozenset(new), c.open_, c.name)


def subdivide_edge(c: Complex2, e: int) -> Complex2:
    """Split edge e = (a, b) into (a, m) and (m, b) with a new vertex m."""
    a, b = c.edges[e]
    m = c.n_vertices
    new = len(c.edges)
    edges = list(c.edges)
    edges[e] = (a, m)
    edges.append((m, b))
    faces = []
    for walk in c.faces:
        w = []
        for d in walk:
            if dart_edge(d) != e:
                w.append(d)
            elif d > 0:
                w += [dart(e, 1), dart(new, 1)]
            else:
                w += [dart(new, -1), dart(e, -1)]
        faces.append(tuple(w))
    return Complex2(m + 1, tuple(edges), tuple(faces), c.removed, c.open_, c.name)


def wedge_complex(c1: Complex2, c2: Complex2, v1: int, v2: int) -> Complex2:
    if not (0 <= v1 < c1.n_vertices and 0 <= v2 < c2.n_vertices):
        raise ComplexError(f"wedge vertices ({v1}, {v2}) out of range")
    relabel = {}
    nxt = c1.n_vertices
    for v in range(c2.n_vertices):
        if v == v2:
            relabel[v] = v1
        else:
            relabel[v] = nxt
            nxt += 1
    E1 = c1.n_edges
    edges = c1.edges + tuple((relabel[a], relabel[b]) for a, b in c2.edges)
    shift = lambda d: d + E1 if d > 0 else d - E1  # noqa: E731
    faces = c1.faces + tuple(tuple(shift(d) for d in f) for f in c2.faces)
    F1 = len(c1.faces)
    removed = c1.removed | {F1 + r for r in c2.removed}
    return Complex2(nxt, edges, faces, frozenset(removed), c1.open_ or c2.open_,
                    f"{c1.name}v{c2.name}")


def point_complex() -> Complex2:
    """A single vertex: the identity for wedges."""
    return Complex2(1, (), ())


def connected_sum(c1: Complex2, c2: Complex2, e1: int | None = None,
                  e2: int | None = None) -> Complex2:
    """Connected sum that keeps |E| additive.

    In each summand a non-loop edge gets a parallel copy which replaces it
    in one face, opening a bigon hole; the two holes are then glued edge to
    edge.  The second summand's edge is glued in the direction that keeps
    orientations compatible.
    """
    for c, tag in ((c1, "first"), (c2, "second")):
        if c.has_boundary:
            raise PreconditionError(f"the {tag} summand has boundary")
        chk = is_surface(c)
        if not chk:
            raise PreconditionError(f"the {tag} summand is not a surface: {chk.reason}")
        if c.euler_characteristic() == 2:
            raise PreconditionError(f"the {tag} summand is a sphere")
    picks = []
    for c, e, tag in ((c1, e1, "first"), (c2, e2, "second")):
        if e is None:
            cands = [i for i, (a, b) in enumerate(c.edges) if a != b]
            if not cands:
                raise PreconditionError(
                    f"the {tag} summand has no edge that is not a self-loop")
            e = cands[0]
        elif c.edges[e][0] == c.edges[e][1]:
            raise PreconditionError(f"edge {e} of the {tag} summand is a self-loop")
        occ = c.edge_occurrences()[e]
        if len(occ) != 2:
            raise PreconditionError(f"edge {e} of the {tag} summand is not two-sided")
        picks.append((e, occ[0]))
    (ea, (fa, ia, sa)), (eb, (fb, ib, sb)) = picks
    o1 = orientability(c1).status == "oriented"
    o2 = orientability(c2).status == "oriented"
    # glue e_b onto e_a forwards iff the rerouted occurrences have opposite
    # signs, so that in the oriented case each glued edge sees +1 and -1
    forward = sb == -sa if (o1 and o2) else True

    V1, E1 = c1.n_vertices, c1.n_edges
    a1, b1 = c1.edges[ea]
    a2, b2 = c2.edges[eb]
    prime = E1  # e_a' in the sum
    vmap = {}
    nxt = V1
    glue = {a2: a1, b2: b1} if forward else {a2: b1, b2: a1}
    for v in range(c2.n_vertices):
        if v in glue:
            vmap[v] = glue[v]
        else:
            vmap[v] = nxt
            nxt += 1
    edges = list(c1.edges) + [(a1, b1)]
    emap = {}
    for e, (a, b) in enumerate(c2.edges):
        if e == eb:
            continue
        emap[e] = len(edges)
        edges.append((vmap[a], vmap[b]))

    faces = [list(f) for f in c1.faces]
    faces[fa][ia] = dart(prime, sa)

    def map2(d, f, i):
        e = dart_edge(d)
        s = dart_sign(d)
        if e == eb:
            target = prime if (f, i) == (fb, ib) else ea
            return dart(target, s if forward else -s)
        return dart(emap[e], s)

    for f, walk in enumerate(c2.faces):
        faces.append([map2(d, f, i) for i, d in enumerate(walk)])
    out = Complex2(nxt, tuple(edges), tuple(tuple(f) for f in faces),
                   name=f"{c1.name}#{c2.name}")
    if out.n_edges != c1.n_edges + c2.n_edges:  # pragma: no cover
        raise ComplexError("edge count is not additive")
    if out.euler_characteristic() != c1.euler_characteristic() + c2.euler_characteristic() - 2:
        raise ComplexError("Euler characteristic is not additive minus 2")  # pragma: no cover
    return out


def cut_handle(c: Complex2, cycle) -> Complex2:
    """Cut along a simple two-sided non-separating cycle of darts.

    Each cycle vertex and edge is doubled; the two copies of the cycle
    become boundary faces (added and marked removed).  Sides are found by
    2-colouring the face occurrences of cycle edges: the corners on one
    side of a cycle vertex form a fan joining an occurrence of the incoming
    edge to one of the outgoing edge, and the two occurrences of each cycle
    edge lie on opposite sides.
    """
    cycle = [int(d) for d in cycle]
    m = len(cycle)
    if m == 0:
        raise ComplexError("empty cycle")
    verts = [c.tail(d) for d in cycle]
    for i in range(m):
        if c.head(cycle[i]) != c.tail(cycle[(i + 1) % m]):
            raise ComplexError("the darts do not form a closed walk")
    if len(set(verts)) != m or len({dart_edge(d) for d in cycle}) != m:
        raise ComplexError("the cycle is not simple")
    bverts = {c.tail(d) for f in c.removed for d in c.faces[f]}
    if bverts & set(verts):
        raise ComplexError("the cycle touches an existing boundary")
    chk = is_surface(c)
    if not chk:
        raise NotSurface(f"vertex {chk.vertex}: {chk.reason}")
    cyc_edges = {dart_edge(d) for d in cycle}

    same: list[tuple[tuple[int, int], tuple[int, int]]] = []
    fans: list[tuple[int, list[int], tuple[int, int]]] = []  # (v, arc darts, an occurrence)
    for i, v in enumerate(verts):
        a, b = cycle[i - 1], -cycle[i]
        corners: dict[frozenset, list[tuple[int, int]]] = {}
        for f, walk in enumerate(c.faces):
            L = len(walk)
            for p, d in enumerate(walk):
                if c.head(d) == v:
                    key = frozenset((d, -walk[(p + 1) % L]))
                    corners.setdefault(key, []).append((f, p))
        order = list(chk.stars[v])
        k = len(order)
        pa, pb = order.index(a), order.index(b)
        for start, stop, first, last in ((pa, pb, a, b), (pb, pa, b, a)):
            path = [order[start]]
            j = (start + 1) % k
            while j != stop:
                path.append(order[j])
                j = (j + 1) % k
            path.append(order[stop])
            occs = []
            for x, y in zip(path, path[1:]):
                f, p = corners[frozenset((x, y))].pop()
                occs.append((f, p, x, y))

            def occ_of(corner, target):
                f, p, _, _ = corner
                L = len(c.faces[f])
                if c.faces[f][p] == target:
                    return (f, p)
                return (f, (p + 1) % L)

            o1 = occ_of(occs[0], first)
            o2 = occ_of(occs[-1], last)
            same.append((o1, o2))
            fans.append((v, path[1:-1], o1))

    occ = c.edge_occurrences()
    nodes = {(f, p) for e in cyc_edges for f, p, _ in occ[e]}
    G = nx.MultiGraph()  # a same and an opposite link may join one pair
    G.add_nodes_from(nodes)
    for o1, o2 in same:
        G.add_edge(o1, o2, rel=0)
    for e in cyc_edges:
        (f1, p1, _), (f2, p2, _) = occ[e]
        G.add_edge((f1, p1), (f2, p2), rel=1)
    color: dict[tuple[int, int], int] = {}
    for comp in nx.connected_components(G):
        root = min(comp)
        color[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for _, w, rel in G.edges(u, data="rel"):
                want = color[u] ^ rel
                if w not in color:
                    color[w] = want
                    stack.append(w)
                elif color[w] != want:
                    raise OneSidedCycle("the cycle is one-sided")
    end_side: dict[tuple[int, int], int] = {}
    for v, arc, o in fans:
        for d in arc:
            end_side[(v, d)] = color[o]

    V, E = c.n_vertices, c.n_edges
    vcopy = {v: V + j for j, v in enumerate(verts)}
    ecopy = {e: E + j for j, e in enumerate(sorted(cyc_edges))}

    def endpoint(v, incoming):
        if v in vcopy and end_side[(v, incoming)] == 1:
            return vcopy[v]
        return v

    edges = []
    for e, (a, b) in enumerate(c.edges):
        if e in cyc_edges:
            edges.append((a, b))
        else:
            edges.append((endpoint(a, dart(e, -1)), endpoint(b, dart(e, 1))))
    for e in sorted(cyc_edges):
        a, b = c.edges[e]
        edges.append((vcopy[a], vcopy[b]))
    faces = []
    for f, walk in enumerate(c.faces):
        w = []
        for p, d in enumerate(walk):
            e = dart_edge(d)
            if e in cyc_edges and color[(f, p)] == 1:
                w.append(dart(ecopy[e], dart_sign(d)))
            else:
                w.append(d)
        faces.append(tuple(w))
    nf = len(faces)
    faces.append(tuple(cycle))
    faces.append(tuple(dart(ecopy[dart_edge(d)], dart_sign(d)) for d in cycle))
    out = Complex2(V + m, tuple(edges), tuple(faces),
                   c.removed | {nf, nf + 1}, c.open_, f"cut({c.name})")
    if len(components(out.graph())) != 1:
        raise SeparatingCycle("cutting along this cycle disconnects the complex")
    return out

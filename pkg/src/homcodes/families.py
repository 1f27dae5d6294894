"""Concrete complexes: canonical surfaces, toric lattices, ring and disc codes."""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, gcd

from .complex2 import Complex2, connected_sum, dart, remove_faces, subdivide_edge


class Unsupported(ValueError):
    pass


# -- one-vertex presentations ---------------------------------------------------


def sphere() -> Complex2:
    return Complex2(2, ((0, 1),), ((dart(0), dart(0, -1)),), name="S")


def projective_plane() -> Complex2:
    return Complex2(1, ((0, 0),), ((dart(0), dart(0)),), name="P")


def genus_torus(g: int) -> Complex2:
    """gT: one vertex, edges a_i, b_i, one face [a1 b1 a1^-1 b1^-1 ...]."""
    if g < 1:
        raise ValueError("genus must be at least 1")
    walk = []
    for i in range(g):
        a, b = 2 * i, 2 * i + 1
        walk += [dart(a), dart(b), dart(a, -1), dart(b, -1)]
    return Complex2(1, ((0, 0),) * (2 * g), (tuple(walk),), name=f"{g}T")


def genus_projective(g: int) -> Complex2:
    """gP: one vertex, edges a_i, one face [a1 a1 ... ag ag]."""
    if g < 1:
        raise ValueError("genus must be at least 1")
    walk = []
    for i in range(g):
        walk += [dart(i), dart(i)]
    return Complex2(1, ((0, 0),) * g, (tuple(walk),), name=f"{g}P")


def canonical_surface(kind: str, g: int = 1) -> Complex2:
    kind = kind.upper()
    if kind == "S":
        return sphere()
    if kind == "P":
        return projective_plane()
    if kind == "T":
        return genus_torus(1)
    if kind == "GT":
        return genus_torus(g)
    if kind == "GP":
        return genus_projective(g)
    raise ValueError(f"unknown surface kind {kind!r}")


# -- square lattices on the torus ---------------------------------------------------


@dataclass(frozen=True)
class QuotientLattice:
    """Sublattice of Z^2 spanned by u and v; Hermite basis (a, 0), (b, c)."""

    u: tuple[int, int]
    v: tuple[int, int]

    def __post_init__(self):
        if self.index == 0:
            raise ValueError("u and v are linearly dependent")

    @property
    def index(self) -> int:
        return abs(self.u[0] * self.v[1] - self.u[1] * self.v[0])

    def hermite(self) -> tuple[int, int, int]:
        (ux, uy), (vx, vy) = self.u, self.v
        g = gcd(uy, vy)
        if g == 0:
            # both vectors on the x-axis cannot span a lattice
            raise ValueError("degenerate lattice")
        # s*uy + t*vy = g
        s, t = _bezout(uy, vy)
        bx = s * ux + t * vx
        a = self.index // g
        return a, bx % a, g

    def reduce(self, x: int, y: int) -> tuple[int, int]:
        a, b, c = self.hermite()
        q = y // c
        x, y = x - q * b, y - q * c
        return x % a, y

    def contains(self, x: int, y: int) -> bool:
        return self.reduce(x, y) == (0, 0)

    def shortest_l1(self, bound: int | None = None) -> int:
        """Shortest L1 norm of a nonzero lattice vector."""
        bound = bound or (abs(self.u[0]) + abs(self.u[1]))
        for r in range(1, bound + 1):
            for x in range(-r, r + 1):
                y = r - abs(x)
                for yy in {y, -y}:
                    if self.contains(x, yy):
                        return r
        return bound


def _bezout(a: int, b: int) -> tuple[int, int]:
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        s0, t0 = -s0, -t0
    return s0, t0


def lattice_torus(lat: QuotientLattice, name: str = "") -> Complex2:
    """Square lattice Z^2 modulo ``lat``: edges h(p), v(p); faces are unit squares."""
    a, _, c = lat.hermite()
    pts = [(x, y) for y in range(c) for x in range(a)]
    index = {p: i for i, p in enumerate(pts)}
    N = len(pts)

    def vid(x, y):
        return index[lat.reduce(x, y)]

    edges = []
    for x, y in pts:
        edges.append((vid(x, y), vid(x + 1, y)))  # h(p) = 2i
        edges.append((vid(x, y), vid(x, y + 1)))  # v(p) = 2i + 1
    faces = []
    for x, y in pts:
        h = 2 * vid(x, y)
        v_right = 2 * vid(x + 1, y) + 1
        h_top = 2 * vid(x, y + 1)
        v = 2 * vid(x, y) + 1
        faces.append((dart(h), dart(v_right), dart(h_top, -1), dart(v, -1)))
    assert len(faces) == N
    return Complex2(N, tuple(edges), tuple(faces), name=name)


def kitaev_toric(d: int) -> Complex2:
    if d < 2:
        raise ValueError("d must be at least 2")
    return lattice_torus(QuotientLattice((d, 0), (0, d)), name=f"kitaev({d})")


def optimized_lattice(d: int) -> QuotientLattice:
    if d < 1 or d % 2 == 0:
        raise Unsupported("optimized toric lattices are defined for odd d only")
    return QuotientLattice(((d + 1) // 2, (d - 1) // 2), (-(d - 1) // 2, (d + 1) // 2))


def optimized_toric(d: int) -> Complex2:
    if d < 3:
        raise Unsupported("optimized toric codes need odd d >= 3")
    return lattice_torus(optimized_lattice(d), name=f"optimized({d})")


@dataclass(frozen=True)
class ScanReport:
    d: int
    min_index: int
    failures: tuple[tuple[int, int, int, int], ...]  # (a, b, c, shortest) for index < bound
    all_fail: bool
    optimized_shortest: int

    @property
    def achieved(self) -> bool:
        return self.all_fail and self.optimized_shortest == self.d


def optimal_toric_scan(d: int) -> ScanReport:
    """Every sublattice of index < (d^2+1)/2 has a nonzero vector of L1 norm < d.

    Sublattices are enumerated by Hermite basis (a, 0), (b, c) with a*c the
    index and 0 <= b < a.  The shortest L1 vector bounds the length of a
    homologically nontrivial cycle in the quotient square lattice, hence the
    distance.
    """
    if d % 2 == 0 or d < 1:
        raise Unsupported("the scan is defined for odd d")
    bound = (d * d + 1) // 2
    rows = []
    ok = True
    for N in range(1, bound):
        for a in range(1, N + 1):
            if N % a:
                continue
            c = N // a
            for b in range(a):
                lat = QuotientLattice((a, 0), (b, c))
                s = lat.shortest_l1(bound=d)
                rows.append((a, b, c, s))
                if s >= d:
                    ok = False
    opt = optimized_lattice(d)
    return ScanReport(d, bound, tuple(rows), ok, opt.shortest_l1(bound=2 * d))


# -- ring (Shor) codes -----------------------------------------------------------------


def ring_code_complex(d: int) -> Complex2:
    """d vertices on a ring, d parallel edges per step, bigons between neighbours.

    Edge e_{i,j} has index i*d + j and runs from v_i to v_{i+1}.  This is a
    pinched annulus, not a surface; it is tagged as having boundary.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    edges = []
    for i in range(d):
        for _ in range(d):
            edges.append((i, (i + 1) % d))
    faces = []
    for i in range(d):
        for j in range(d - 1):
            faces.append((dart(i * d + j), dart(i * d + j + 1, -1)))
    return Complex2(d, tuple(edges), tuple(faces), open_=True, name=f"ring({d})")


def shor_generators():
    """Shor's standard [[9,1,3]] stabilizers as (x|z) rows over Z_2."""
    rows = []
    for a, b in ((0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8)):
        z = [0] * 9
        z[a] = z[b] = 1
        rows.append([0] * 9 + z)
    for blocks in ((0, 1), (1, 2)):
        x = [0] * 9
        for blk in blocks:
            for j in range(3):
                x[3 * blk + j] = 1
        rows.append(x + [0] * 9)
    return rows


# -- discs with holes -----------------------------------------------------------------


def holed_disc(h: int) -> Complex2:
    """Minimal D_h: h+1 vertices, 2h+1 edges, one face.

    Built as a sphere (centre u, hole vertices w_i with loops l_i, spokes
    c_i: u -> w_i, outer loop o at u) from which the h hole faces and the
    outer face are removed.
    """
    if h < 1:
        raise ValueError("h must be at least 1")
    edges = []
    o = 0
    edges.append((0, 0))
    spokes, loops = [], []
    for i in range(1, h + 1):
        spokes.append(len(edges))
        edges.append((0, i))
        loops.append(len(edges))
        edges.append((i, i))
    walk = [dart(o)]
    for c, l in zip(spokes, loops):
        walk += [dart(c), dart(l), dart(c, -1)]
    faces = [tuple(walk)]
    faces += [(dart(l, -1),) for l in loops]
    faces.append((dart(o, -1),))
    sph = Complex2(h + 1, tuple(edges), tuple(faces), name=f"D{h}")
    return remove_faces(sph, range(1, h + 2))


def regular_disc_embedding(h: int, d: int) -> Complex2:
    """Square grid with h square holes of side ceil(d/4), outer face removed.

    Holes sit in a row, d-1 cells from each other and from the rim, so dual
    paths between boundaries cross at least d edges and every cycle around
    a hole has length at least d.
    """
    if h < 1 or d < 3 or d % 2 == 0:
        raise ValueError("need h >= 1 and odd d >= 3")
    s = ceil(d / 4)
    g = d - 1
    W = h * s + (h + 1) * g
    H = s + 2 * g
    holes = []
    for i in range(h):
        x0 = g + i * (s + g)
        holes.append((x0, g))
    in_hole = {}
    for hi, (x0, y0) in enumerate(holes):
        for x in range(x0, x0 + s):
            for y in range(y0, y0 + s):
                in_hole[(x, y)] = hi

    def cell_ok(x, y):
        return 0 <= x < W and 0 <= y < H and (x, y) not in in_hole

    def vertex_kept(x, y):
        # drop grid points strictly inside a hole block
        return not any(x0 < x < x0 + s and y0 < y < y0 + s for x0, y0 in holes)

    vid = {}
    for y in range(H + 1):
        for x in range(W + 1):
            if vertex_kept(x, y):
                vid[(x, y)] = len(vid)
    edges = []
    eid = {}

    def edge_kept(kind, x, y):
        if kind == "h":  # (x,y)-(x+1,y): cells below (x,y-1) and above (x,y)
            sides = [(x, y - 1), (x, y)]
        else:
            sides = [(x - 1, y), (x, y)]
        return any(cell_ok(*c) for c in sides)

    for y in range(H + 1):
        for x in range(W + 1):
            if x < W and edge_kept("h", x, y):
                eid[("h", x, y)] = len(edges)
                edges.append((vid[(x, y)], vid[(x + 1, y)]))
            if y < H and edge_kept("v", x, y):
                eid[("v", x, y)] = len(edges)
                edges.append((vid[(x, y)], vid[(x, y + 1)]))
    faces = []
    for y in range(H):
        for x in range(W):
            if cell_ok(x, y):
                faces.append((dart(eid[("h", x, y)]), dart(eid[("v", x + 1, y)]),
                               dart(eid[("h", x, y + 1)], -1), dart(eid[("v", x, y)], -1)))
    removed = []

    def rect_walk(x0, y0, w, hgt, ccw=True):
        walk = [dart(eid[("h", x, y0)]) for x in range(x0, x0 + w)]
        walk += [dart(eid[("v", x0 + w, y)]) for y in range(y0, y0 + hgt)]
        walk += [dart(eid[("h", x, y0 + hgt)], -1) for x in reversed(range(x0, x0 + w))]
        walk += [dart(eid[("v", x0, y)], -1) for y in reversed(range(y0, y0 + hgt))]
        if ccw:
            return tuple(walk)
        return tuple(-x for x in reversed(walk))

    for x0, y0 in holes:
        removed.append(len(faces))
        faces.append(rect_walk(x0, y0, s, s))
    removed.append(len(faces))
    faces.append(rect_walk(0, 0, W, H, ccw=False))
    return Complex2(len(vid), tuple(edges), tuple(faces), frozenset(removed),
                    name=f"disc({h},{d})")


# -- projective plane ------------------------------------------------------------------


def projective_plane_93() -> Complex2:
    """Self-dual cell embedding in P with 5 vertices, 9 edges and 5 faces.

    Drawn as a decagon whose antipodal rim arcs are identified (rim edges
    0..4, each traversed twice around the rim) plus four non-crossing
    chords; one chord is parallel to a rim edge and bounds a bigon.
    """
    return Complex2(5, _P93_EDGES, _P93_FACES, name="P93")


_P93_EDGES = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 1), (2, 0), (2, 4), (1, 4))
_P93_FACES = ((1, -6), (2, 8, 5, 6), (3, 4, 5, -7), (1, 9, -8, 7), (2, 3, 4, -9))


# -- connected sums -------------------------------------------------------------------


def connected_sum_family(base: Complex2, g: int) -> Complex2:
    """g-fold connected sum of ``base`` with itself."""
    if g < 1:
        raise ValueError("g must be at least 1")
    out = base
    for _ in range(g - 1):
        out = connected_sum(out, base)
    return out


def torus_with_edge() -> Complex2:
    """T with one loop subdivided, so a non-loop edge exists for gluing."""
    return subdivide_edge(genus_torus(1), 0)


def projective_with_edge() -> Complex2:
    return subdivide_edge(projective_plane(), 0)

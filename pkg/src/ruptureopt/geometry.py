"""Convex geometry in joint-torque space for dimensions 1 to 3.

Points are plain ``numpy`` vectors. Polytopes carry both their extreme points
and outward facet hyperplanes stored as ``(unit normal, offset)`` pairs, so a
plane through the origin is representable.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ruptureopt.errors import BoundsError, DegeneratePolytopeError, DimensionError

# coincidence of points
COINCIDENT_TOL = 1e-9
# facet-side tests
SIDE_TOL = 1e-7
MAX_HYPERCUBE_DIM = 20


@dataclass(frozen=True)
class Hyperplane:
    """The plane ``{x : normal . x = offset}`` with a unit ``normal``."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=float)
        if not np.all(np.isfinite(n)) or not np.isfinite(self.offset):
            raise ValueError("hyperplane must be finite")
        if abs(np.linalg.norm(n) - 1.0) > 1e-9:
            raise ValueError("hyperplane normal must have unit length")
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "offset", float(self.offset))

    @classmethod
    def through(cls, normal, point) -> "Hyperplane":
        n = np.asarray(normal, dtype=float)
        n = n / np.linalg.norm(n)
        return cls(n, float(n @ np.asarray(point, dtype=float)))


@dataclass(frozen=True)
class ConvexPolytope:
    vertices: np.ndarray  # (K, N)
    facets: list = field(default_factory=list)
    dimension: int = 1
    full_dimensional: bool = False

    @property
    def centroid(self) -> np.ndarray:
        """Mean of the vertices. Always inside the polytope."""
        return self.vertices.mean(axis=0)

    def __len__(self):
        return len(self.vertices)


def hypercube_vertices(f_min, f_max) -> np.ndarray:
    """All ``2**M`` corners of the box ``f_min <= f <= f_max``.

    Row ``k`` takes ``f_max[i]`` where bit ``i`` of ``k`` is set and
    ``f_min[i]`` otherwise. Coincident corners of a flat box are kept.
    """
    lo = np.atleast_1d(np.asarray(f_min, dtype=float))
    hi = np.atleast_1d(np.asarray(f_max, dtype=float))
    if lo.shape != hi.shape or lo.ndim != 1:
        raise BoundsError("f_min and f_max must be vectors of equal length")
    m = lo.size
    if m > MAX_HYPERCUBE_DIM:
        raise DimensionError(f"hypercube dimension {m} exceeds {MAX_HYPERCUBE_DIM}")
    if np.any(lo > hi):
        raise BoundsError("f_min must not exceed f_max")
    bits = (np.arange(2**m)[:, None] >> np.arange(m)[None, :]) & 1
    return np.where(bits == 1, hi, lo)


def signed_distance(point, plane: Hyperplane) -> float:
    p = np.atleast_1d(np.asarray(point, dtype=float))
    if p.shape != plane.normal.shape:
        raise DimensionError(
            f"point of dimension {p.size} against plane of dimension {plane.normal.size}"
        )
    return float(plane.normal @ p - plane.offset)


def reflect(point, plane: Hyperplane) -> np.ndarray:
    p = np.asarray(point, dtype=float)
    return p - 2.0 * signed_distance(p, plane) * plane.normal


def contains(poly: ConvexPolytope, point, tol: float = SIDE_TOL) -> bool:
    """Point inclusion by comparing sides against the vertex centroid.

    A point exactly on a facet counts as inside.
    """
    if not poly.full_dimensional:
        raise DegeneratePolytopeError("containment needs a full-dimensional polytope")
    c = poly.centroid
    for plane in poly.facets:
        d1 = signed_distance(point, plane)
        if abs(d1) <= tol:
            continue
        if d1 * signed_distance(c, plane) < 0:
            return False
    return True


def dedupe(points, tol: float = COINCIDENT_TOL) -> np.ndarray:
    """Drop points that coincide within ``tol``; keeps first occurrences in order."""
    pts = np.asarray(points, dtype=float)
    keys = np.round(pts / tol).astype(np.int64)
    _, first = np.unique(keys, axis=0, return_index=True)
    return pts[np.sort(first)]


def convex_hull(points, dim: int) -> ConvexPolytope:
    """Extreme points and outward facets of a finite point set.

    Supports ``dim`` 1 (interval), 2 (monotone chain) and 3 (incremental).
    Input whose affine span is lower-dimensional yields a polytope with
    ``full_dimensional=False`` and no facets.
    """
    if dim not in (1, 2, 3):
        raise DimensionError(f"convex hull supports dimensions 1-3, got {dim}")
    pts = np.asarray(points, dtype=float).reshape(-1, dim)
    if len(pts) == 0:
        raise ValueError("convex hull of an empty point set")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points must be finite")
    pts = dedupe(pts)
    if dim == 1:
        return _hull1(pts)
    if dim == 2:
        return _hull2(pts)
    return _hull3(pts)


def _hull1(pts):
    lo, hi = float(pts[:, 0].min()), float(pts[:, 0].max())
    if hi - lo <= COINCIDENT_TOL:
        return ConvexPolytope(np.array([[lo]]), [], 1, False)
    facets = [Hyperplane(np.array([-1.0]), -lo), Hyperplane(np.array([1.0]), hi)]
    return ConvexPolytope(np.array([[lo], [hi]]), facets, 1, True)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def monotone_chain(pts) -> list:
    """Indices of the 2-D hull in counter-clockwise order.

    Starts at the lexicographically smallest point. Collinear boundary
    points are dropped.
    """
    order = sorted(range(len(pts)), key=lambda i: (pts[i][0], pts[i][1]))
    if len(order) <= 2:
        return order

    def half(seq):
        chain = []
        for i in seq:
            while len(chain) >= 2 and _cross(pts[chain[-2]], pts[chain[-1]], pts[i]) <= COINCIDENT_TOL:
                chain.pop()
            chain.append(i)
        return chain

    lower = half(order)
    upper = half(reversed(order))
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


def _edge_facets(ring):
    facets = []
    for k in range(len(ring)):
        a, b = ring[k], ring[(k + 1) % len(ring)]
        e = b - a
        facets.append(Hyperplane.through((e[1], -e[0]), a))
    return facets


def _hull2(pts):
    idx = monotone_chain(pts.tolist())
    verts = pts[idx]
    if len(idx) < 3:
        return ConvexPolytope(verts, [], 2, False)
    return ConvexPolytope(verts, _edge_facets(verts), 2, True)


def _farthest(dists):
    k = int(np.argmax(dists))
    return k, float(dists[k])


def _hull3(pts):
    scale = max(1.0, float(np.abs(pts).max()))
    tol = COINCIDENT_TOL * scale
    i0 = 0
    i1, d = _farthest(np.linalg.norm(pts - pts[i0], axis=1))
    if d <= tol:
        return ConvexPolytope(pts[:1], [], 3, False)
    u = (pts[i1] - pts[i0]) / d
    rel = pts - pts[i0]
    i2, d = _farthest(np.linalg.norm(rel - np.outer(rel @ u, u), axis=1))
    if d <= tol:
        t = rel @ u
        ends = sorted({int(np.argmin(t)), int(np.argmax(t))})
        return ConvexPolytope(pts[ends], [], 3, False)
    n = np.cross(pts[i1] - pts[i0], pts[i2] - pts[i0])
    n /= np.linalg.norm(n)
    i3, d = _farthest(np.abs(rel @ n))
    if d <= tol:
        # planar set: hull in an in-plane frame
        v = np.cross(n, u)
        flat = np.column_stack([rel @ u, rel @ v])
        ring = monotone_chain(flat.tolist())
        return ConvexPolytope(pts[ring], [], 3, False)

    interior = pts[[i0, i1, i2, i3]].mean(axis=0)
    faces = []

    def make_face(a, b, c):
        nrm = np.cross(pts[b] - pts[a], pts[c] - pts[a])
        nrm /= np.linalg.norm(nrm)
        off = nrm @ pts[a]
        if nrm @ interior - off > 0:
            return make_face(a, c, b)
        return (a, b, c, nrm, off)

    for a, b, c in ((i0, i1, i2), (i0, i1, i3), (i0, i2, i3), (i1, i2, i3)):
        faces.append(make_face(a, b, c))

    seeded = {i0, i1, i2, i3}
    for p in range(len(pts)):
        if p in seeded:
            continue
        visible = [f for f in faces if f[3] @ pts[p] - f[4] > tol]
        if not visible:
            continue
        edges = set()
        for a, b, c, _, _ in visible:
            edges.update(((a, b), (b, c), (c, a)))
        horizon = [(a, b) for (a, b) in edges if (b, a) not in edges]
        faces = [f for f in faces if f[3] @ pts[p] - f[4] <= tol]
        for a, b in horizon:
            nrm = np.cross(pts[b] - pts[a], pts[p] - pts[a])
            nrm /= np.linalg.norm(nrm)
            faces.append((a, b, p, nrm, nrm @ pts[a]))

    planes = []
    for _, _, _, nrm, off in faces:
        if not any(np.allclose(nrm, q.normal, atol=1e-9) and abs(off - q.offset) <= SIDE_TOL
                   for q in planes):
            planes.append(Hyperplane(nrm, off))

    # keep only points pinned by three independent facet planes
    cand = sorted({i for f in faces for i in f[:3]})
    keep = []
    for i in cand:
        normals = [q.normal for q in planes if abs(signed_distance(pts[i], q)) <= SIDE_TOL]
        if len(normals) >= 3 and np.linalg.matrix_rank(np.array(normals), tol=1e-9) == 3:
            keep.append(i)
    verts = pts[keep]
    verts = verts[np.lexsort(verts.T[::-1])]
    return ConvexPolytope(verts, planes, 3, True)

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled torque-polytope kernels for one and two joints.

Mirrors ``_pykernels``: corner enumeration, monotone-chain hull, centroid
side test, minimum facet distance.
"""
import numpy as np

from libc.math cimport fabs, sqrt, INFINITY
from libc.stdlib cimport malloc, free, qsort

from ruptureopt.errors import DimensionError

cdef double COINCIDENT = 1e-9
cdef double INCLUSION = 1e-9
cdef double POSITIVE = 1e-9
cdef int MAX_MUSCLES = 20

ctypedef struct Pt:
    double x
    double y


cdef int _cmp(const void* a, const void* b) noexcept nogil:
    cdef const Pt* p = <const Pt*>a
    cdef const Pt* q = <const Pt*>b
    if p.x < q.x:
        return -1
    if p.x > q.x:
        return 1
    if p.y < q.y:
        return -1
    if p.y > q.y:
        return 1
    return 0


cdef inline double _cross(Pt o, Pt a, Pt b) noexcept nogil:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


cdef struct Rits:
    double radius
    int included
    int facet
    int degenerate


cdef Rits _rits1(const double[:, :] G, const double[:] lo, const double[:] hi,
                 double tau, int skip) noexcept nogil:
    cdef Rits out
    cdef double tmin = 0.0, tmax = 0.0, a, b, c, d1, d2
    cdef Py_ssize_t i
    for i in range(G.shape[0]):
        if i == skip:
            continue
        a = -G[i, 0] * lo[i]
        b = -G[i, 0] * hi[i]
        if a < b:
            tmin += a
            tmax += b
        else:
            tmin += b
            tmax += a
    out.facet = -1
    if tmax - tmin <= COINCIDENT:
        out.radius = 0.0
        out.included = 0
        out.degenerate = 1
        return out
    out.degenerate = 0
    out.included = 1
    c = 0.5 * (tmin + tmax)
    # facet 0 is the lower end (normal -1), facet 1 the upper end
    d1 = tmin - tau
    d2 = tmin - c
    if d1 * d2 < -INCLUSION:
        out.included = 0
    out.radius = fabs(d1)
    out.facet = 0
    d1 = tau - tmax
    d2 = c - tmax
    if d1 * d2 < -INCLUSION:
        out.included = 0
    if fabs(d1) < out.radius:
        out.radius = fabs(d1)
        out.facet = 1
    if not out.included:
        out.radius = 0.0
        out.facet = -1
    return out


cdef Rits _rits2(const double[:, :] G, const double[:] lo, const double[:] hi,
                 double tx, double ty, int skip, Pt* pts, Pt* hull) noexcept nogil:
    cdef Rits out
    cdef Py_ssize_t m = G.shape[0], i, j, k, n, h, lower
    cdef Py_ssize_t active[64]
    cdef Py_ssize_t na = 0
    cdef double f, x, y, cx, cy, ex, ey, nn, nx, ny, off, d1, d2
    for i in range(m):
        if i != skip:
            active[na] = i
            na += 1
    n = (<Py_ssize_t>1) << na
    for k in range(n):
        x = 0.0
        y = 0.0
        for j in range(na):
            i = active[j]
            f = hi[i] if (k >> j) & 1 else lo[i]
            x -= G[i, 0] * f
            y -= G[i, 1] * f
        pts[k].x = x
        pts[k].y = y
    qsort(pts, n, sizeof(Pt), _cmp)

    h = 0
    for k in range(n):
        while h >= 2 and _cross(hull[h - 2], hull[h - 1], pts[k]) <= COINCIDENT:
            h -= 1
        hull[h] = pts[k]
        h += 1
    lower = h
    for k in range(n - 2, -1, -1):
        while h > lower and _cross(hull[h - 2], hull[h - 1], pts[k]) <= COINCIDENT:
            h -= 1
        hull[h] = pts[k]
        h += 1
    h -= 1  # last point repeats the first

    out.facet = -1
    if h < 3:
        out.radius = 0.0
        out.included = 0
        out.degenerate = 1
        return out
    out.degenerate = 0
    out.included = 1
    cx = 0.0
    cy = 0.0
    for k in range(h):
        cx += hull[k].x
        cy += hull[k].y
    cx /= h
    cy /= h
    out.radius = INFINITY
    for k in range(h):
        ex = hull[(k + 1) % h].x - hull[k].x
        ey = hull[(k + 1) % h].y - hull[k].y
        nn = sqrt(ex * ex + ey * ey)
        nx = ey / nn
        ny = -ex / nn
        off = nx * hull[k].x + ny * hull[k].y
        d1 = nx * tx + ny * ty - off
        d2 = nx * cx + ny * cy - off
        if d1 * d2 < -INCLUSION:
            out.included = 0
        if fabs(d1) < out.radius:
            out.radius = fabs(d1)
            out.facet = <int>k
    if not out.included:
        out.radius = 0.0
        out.facet = -1
    return out


cdef class _Workspace:
    cdef Pt* pts
    cdef Pt* hull

    def __cinit__(self, Py_ssize_t m):
        cdef Py_ssize_t n = (<Py_ssize_t>1) << m
        self.pts = <Pt*>malloc(n * sizeof(Pt))
        self.hull = <Pt*>malloc((n + 1) * sizeof(Pt))
        if self.pts == NULL or self.hull == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.pts)
        free(self.hull)


cdef Rits _rits(const double[:, :] G, const double[:] lo, const double[:] hi,
                const double[:] tau, int skip, Pt* pts, Pt* hull) noexcept nogil:
    if G.shape[1] == 1:
        return _rits1(G, lo, hi, tau[0], skip)
    return _rits2(G, lo, hi, tau[0], tau[1], skip, pts, hull)


def _prepare(G, f_min, f_max, tau_g):
    G = np.ascontiguousarray(G, dtype=np.float64)
    if G.ndim == 1:
        G = G[:, None]
    m, n = G.shape
    if n not in (1, 2):
        raise DimensionError(f"compiled kernels handle 1 or 2 joints, got {n}")
    if m > MAX_MUSCLES:
        raise DimensionError(f"{m} muscles exceeds {MAX_MUSCLES}")
    lo = np.ascontiguousarray(np.broadcast_to(np.asarray(f_min, dtype=np.float64), (m,)))
    hi = np.ascontiguousarray(np.broadcast_to(np.asarray(f_max, dtype=np.float64), (m,)))
    tau = np.ascontiguousarray(np.atleast_1d(np.asarray(tau_g, dtype=np.float64)))
    if tau.shape[0] != n:
        raise DimensionError("tau_g length does not match joint count")
    return G, lo, hi, tau


def rits_radius(G, f_min, f_max, tau_g):
    """(radius, included, limiting facet or -1, degenerate) for one design."""
    G, lo, hi, tau = _prepare(G, f_min, f_max, tau_g)
    cdef _Workspace ws = _Workspace(G.shape[0])
    cdef Rits r = _rits(G, lo, hi, tau, -1, ws.pts, ws.hull)
    return r.radius, bool(r.included), r.facet, bool(r.degenerate)


def rupture_radii(G, f_min, f_max, tau_g):
    """Radii of the intact design followed by each single-muscle rupture."""
    G, lo, hi, tau = _prepare(G, f_min, f_max, tau_g)
    cdef Py_ssize_t m = G.shape[0], i
    out = np.empty(m + 1)
    cdef double[:] o = out
    cdef const double[:, :] g = G
    cdef const double[:] lv = lo
    cdef const double[:] hv = hi
    cdef const double[:] tv = tau
    cdef _Workspace ws = _Workspace(m)
    with nogil:
        for i in range(m + 1):
            o[i] = _rits(g, lv, hv, tv, <int>i - 1, ws.pts, ws.hull).radius
    return out


def population_scores(genomes, f_min, f_max, tau_g, int m_min):
    """Robustness score E for a stack of (M, N) designs."""
    genomes = np.ascontiguousarray(genomes, dtype=np.float64)
    if genomes.ndim != 3:
        raise DimensionError("genomes must be a (P, M, N) array")
    cdef Py_ssize_t p = genomes.shape[0], m = genomes.shape[1], k, i, count
    _, lo, hi, tau = _prepare(genomes[0] if p else np.zeros(genomes.shape[1:]), f_min, f_max, tau_g)
    out = np.zeros(p)
    cdef double[:] o = out
    cdef const double[:, :, :] gs = genomes
    cdef const double[:] lv = lo
    cdef const double[:] hv = hi
    cdef const double[:] tv = tau
    cdef double r, total
    cdef _Workspace ws = _Workspace(m)
    with nogil:
        for k in range(p):
            total = 0.0
            count = 0
            for i in range(m + 1):
                r = _rits(gs[k], lv, hv, tv, <int>i - 1, ws.pts, ws.hull).radius
                total += r
                if r > POSITIVE:
                    count += 1
            o[k] = total if count >= m_min + 1 else 0.0
    return out

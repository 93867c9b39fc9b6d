"""Stretch-factor measurement, degree/connectivity audits, closed-form
stretch bounds, and independent brute-force oracles.

Stretch is always measured on the undirected support of the directed edge
sets (graph distances between all ordered pairs divided by Euclidean
distance); every report records that choice.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np
from mpmath import mp
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _sparse_dijkstra

from .build import ConeGraph, DirectedEdge, as_point_array, undirected_pairs
from .geometry import EPS_REL, GeometryError, Point, dist


@dataclass(frozen=True)
class SpannerReport:
    """Measured stretch with its witness pair, plus degree and connectivity."""

    stretch: float
    witness: tuple[int, int] | None
    max_degree: int
    connected: bool
    bound: float | None = None
    bound_satisfied: bool | None = None
    path_model: str = "undirected"


@dataclass(frozen=True)
class BoundTable:
    """The full chain of closed-form constants at parameter k."""

    k: int
    tau_k: float
    tau_2k: float
    theta_2k: float
    tau_prime_k: float
    t_k: float


def tau_bound(k: int) -> float:
    """Stretch bound 1 / (1 - 2 sin(pi/k + pi/8)) for the widened-cone and
    trapezoidal families; positive (hence meaningful) exactly when k > 24."""
    if k <= 24:
        raise GeometryError(f"stretch bound requires k > 24, got {k}")
    with mp.workdps(30):
        v = 1 / (1 - 2 * mp.sin(mp.pi / k + mp.pi / 8))
    return float(v)


def tau_prime_bound(k: int) -> float:
    """Constant bounding how much longer Yao-Yao paths are than trapezoidal
    edges at parameter 2k; the larger of the two closed-form requirements.

    Needs k >= 42 so that (2*tau(2k) + 1) * tan(pi/k) stays below 1.
    """
    if k < 42:
        raise GeometryError(f"path-expansion bound requires k >= 42, got {k}")
    with mp.workdps(30):
        t2k = 1 / (1 - 2 * mp.sin(mp.pi / (2 * k) + mp.pi / 8))
        th = mp.ceil(mp.mpf(k) / 4) * mp.pi / k
        d1 = (1 - (2 * t2k + 1) * mp.tan(mp.pi / k)) * mp.cos(th + mp.pi / k)
        d2 = 1 - 2 * t2k * mp.sin(mp.pi / (2 * k))
        if d1 <= 0 or d2 <= 0:
            raise GeometryError(f"bound denominators must be positive at k={k}")
        v = max(1 / d1, 1 / d2)
    return float(v)


def t_bound(k: int) -> BoundTable:
    """Full constant table at parameter k, with t_k = tau_prime(k) * tau(2k)."""
    if k < 42:
        raise GeometryError(f"bound table requires k >= 42, got {k}")
    tau_k = tau_bound(k)
    tau_2k = tau_bound(2 * k)
    with mp.workdps(30):
        theta_2k = float(mp.ceil(mp.mpf(k) / 4) * mp.pi / k)
    tau_prime_k = tau_prime_bound(k)
    return BoundTable(k, tau_k, tau_2k, theta_2k, tau_prime_k, tau_prime_k * tau_2k)


def _undirected_adjacency(graph: ConeGraph) -> list[list[tuple[int, float]]]:
    adj: list[list[tuple[int, float]]] = [[] for _ in range(graph.n)]
    for t, h in undirected_pairs(graph.edges):
        w = dist(graph.points[t], graph.points[h])
        adj[t].append((h, w))
        adj[h].append((t, w))
    return adj


def shortest_paths(graph: ConeGraph, source: int) -> dict[int, float]:
    """Single-source shortest path lengths over the undirected support;
    unreachable vertices map to +inf."""
    n = graph.n
    if not 0 <= source < n:
        raise GeometryError(f"source index out of range: {source}")
    adj = _undirected_adjacency(graph)
    distmap = {i: math.inf for i in range(n)}
    distmap[source] = 0.0
    heap: list[tuple[float, int]] = [(0.0, source)]
    done: set[int] = set()
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        for v, w in adj[u]:
            nd = d + w
            if nd < distmap[v]:
                distmap[v] = nd
                heapq.heappush(heap, (nd, v))
    return distmap


def _all_pairs_graph_dist(graph: ConeGraph) -> np.ndarray:
    n = graph.n
    pairs = undirected_pairs(graph.edges)
    if not pairs:
        mat = np.full((n, n), np.inf)
        np.fill_diagonal(mat, 0.0)
        return mat
    rows, cols, data = [], [], []
    for t, h in pairs:
        w = dist(graph.points[t], graph.points[h])
        rows += [t, h]
        cols += [h, t]
        data += [w, w]
    sp = csr_matrix((data, (rows, cols)), shape=(n, n))
    return _sparse_dijkstra(sp, directed=True)


def stretch_factor(graph: ConeGraph, bound: float | None = None, tol: float = EPS_REL) -> SpannerReport:
    """Exact stretch factor: max over ordered pairs of graph distance divided
    by Euclidean distance, with the attaining witness pair.  Disconnected
    graphs report +inf stretch (flagged, not an error)."""
    n = graph.n
    if n < 2:
        raise GeometryError(f"stretch factor needs at least 2 points, got {n}")
    xy = as_point_array(graph.points)
    gd = _all_pairs_graph_dist(graph)
    delta = xy[:, None, :] - xy[None, :, :]
    euclid = np.hypot(delta[..., 0], delta[..., 1])
    np.fill_diagonal(euclid, 1.0)  # diagonal masked below
    ratio = gd / euclid
    np.fill_diagonal(ratio, -np.inf)
    flat = int(np.argmax(ratio))
    witness = (flat // n, flat % n)
    stretch = float(ratio[witness])
    connected = bool(np.isfinite(gd).all())
    max_degree, _ = degree_stats(graph)
    satisfied = None if bound is None else bool(stretch <= bound * (1.0 + tol))
    return SpannerReport(stretch, witness, max_degree, connected, bound, satisfied)


def degree_stats(graph: ConeGraph) -> tuple[int, dict[int, int]]:
    """Maximum degree and degree histogram of the undirected support."""
    counts = np.zeros(graph.n, dtype=np.int64)
    for t, h in undirected_pairs(graph.edges):
        counts[t] += 1
        counts[h] += 1
    hist: dict[int, int] = {}
    for c in counts:
        hist[int(c)] = hist.get(int(c), 0) + 1
    return (int(counts.max()) if graph.n else 0), hist


def is_connected(graph: ConeGraph) -> bool:
    """Connectivity of the undirected support (vacuously true below 2 vertices)."""
    n = graph.n
    if n <= 1:
        return True
    adj = _undirected_adjacency(graph)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v, _ in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == n


def subgraph_check(inner: ConeGraph, outer: ConeGraph) -> tuple[bool, list[DirectedEdge]]:
    """True iff every directed edge of ``inner`` appears in ``outer`` (same
    point sequence required); returns the violating edges otherwise."""
    if inner.points != outer.points:
        raise GeometryError("subgraph check requires identical point sequences")
    missing = sorted(
        (e for e in inner.edges if (e.tail, e.head) not in outer.edge_pairs),
        key=lambda e: (e.tail, e.head),
    )
    return (not missing), missing


def brute_force_stretch(points, edges) -> float:
    """Independent stretch oracle: exhaustive all-pairs relaxation
    (Floyd-Warshall) over the undirected support, for n <= 12 points.

    ``edges`` may be DirectedEdge records or (tail, head) pairs; weights are
    recomputed from the coordinates.
    """
    xy = as_point_array(points)
    n = xy.shape[0]
    if n > 12:
        raise GeometryError(f"brute-force oracle is limited to n <= 12, got {n}")
    if n < 2:
        raise GeometryError("stretch needs at least 2 points")
    w = np.full((n, n), math.inf)
    np.fill_diagonal(w, 0.0)
    for e in edges:
        t, h = (e.tail, e.head) if isinstance(e, DirectedEdge) else (e[0], e[1])
        d = math.hypot(xy[h, 0] - xy[t, 0], xy[h, 1] - xy[t, 1])
        if d < w[t, h]:
            w[t, h] = w[h, t] = d
    for mid in range(n):
        for i in range(n):
            for j in range(n):
                via = w[i, mid] + w[mid, j]
                if via < w[i, j]:
                    w[i, j] = via
    best = 1.0
    for i in range(n):
        for j in range(n):
            if i != j:
                best = max(best, w[i, j] / math.hypot(xy[j, 0] - xy[i, 0], xy[j, 1] - xy[i, 1]))
    return float(best)


def _angle_at(a: Point, b: Point, c: Point) -> float:
    """Unsigned angle at vertex ``a`` between rays a->b and a->c, in [0, pi]."""
    ux, uy = b.x - a.x, b.y - a.y
    vx, vy = c.x - a.x, c.y - a.y
    return abs(math.atan2(ux * vy - uy * vx, ux * vx + uy * vy))


def ratio_oracle(u: Point, v: Point, w: Point, tau: float) -> float:
    """The ratio |uw| / (|uv| - tau*|vw|) under its validity conditions:
    tau >= 1, tau*|vw| < |uv|, and both base angles at u and v below pi/2."""
    if tau < 1.0:
        raise GeometryError(f"tau must be >= 1, got {tau}")
    duv = dist(u, v)
    if duv == 0.0:
        raise GeometryError("u and v must be distinct")
    dvw = dist(v, w)
    if tau * dvw >= duv:
        raise GeometryError(f"requires tau*|vw| < |uv| (got {tau * dvw} >= {duv})")
    duw = dist(u, w)
    if dvw > 0.0:
        ang_u = _angle_at(u, w, v)
        ang_v = _angle_at(v, w, u)
        if ang_u >= math.pi / 2 or ang_v >= math.pi / 2:
            raise GeometryError(
                f"base angles must lie in [0, pi/2) (got {ang_u} at u, {ang_v} at v)"
            )
    return duw / (duv - tau * dvw)

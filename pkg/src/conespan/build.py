"""Construction of the four directed cone-graph families over a planar point
set: Yao, Yao-Yao (reverse-Yao pruned), overlapping-Yao with widened cones,
and trapezoidal-Yao selected by first contact of a growing curved trapezoid.

All four builders share one tie-breaking rule: candidates are ordered by
(selection scale, polar angle of the edge, candidate index), where the scale
is the Euclidean distance except in the trapezoidal family, which uses the
first-contact dilation factor.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .geometry import (
    EPS_REL,
    TWO_PI,
    HALF_PI,
    GeometryError,
    Point,
    theta,
)


class Family(str, Enum):
    YAO = "yao"
    YAO_YAO = "yao_yao"
    OVERLAPPING_YAO = "overlapping_yao"
    TRAPEZOIDAL_YAO = "trapezoidal_yao"


@dataclass(frozen=True)
class DirectedEdge:
    tail: int
    head: int
    length: float


@dataclass
class ConeGraph:
    """A point set plus the directed edges selected by one cone family.

    Instances are immutable by convention once built.  ``cone_choice`` (for
    the Yao and overlapping-Yao families) maps (vertex, cone index) to the
    selected head vertex (-1 where the cone is empty); ``ty_frames`` (for the
    trapezoidal family) maps each directed edge to the list of
    (orientation index, reflected) frames that selected it.
    """

    points: tuple[Point, ...]
    k: int
    family: Family
    edges: frozenset[DirectedEdge]
    cone_choice: np.ndarray | None = field(default=None, compare=False, repr=False)
    ty_frames: dict[tuple[int, int], list[tuple[int, bool]]] | None = field(
        default=None, compare=False, repr=False
    )

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def edge_pairs(self) -> frozenset[tuple[int, int]]:
        cached = getattr(self, "_edge_pairs", None)
        if cached is None:
            cached = frozenset((e.tail, e.head) for e in self.edges)
            object.__setattr__(self, "_edge_pairs", cached)
        return cached

    def has_edge(self, tail: int, head: int) -> bool:
        return (tail, head) in self.edge_pairs


def as_point_array(points: Sequence[Point]) -> np.ndarray:
    """Validate a point sequence (finite, pairwise distinct) into an (n,2) array."""
    xy = np.asarray([(p.x, p.y) for p in points], dtype=float).reshape(-1, 2)
    if xy.size and not np.all(np.isfinite(xy)):
        raise GeometryError("point coordinates must be finite")
    seen: dict[tuple[float, float], int] = {}
    for i, (x, y) in enumerate(map(tuple, xy)):
        if (x, y) in seen:
            raise GeometryError(f"duplicate point at indices {seen[(x, y)]} and {i}: ({x}, {y})")
        seen[(x, y)] = i
    return xy


def _candidate_polar(xy: np.ndarray, i: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Indices, distances, and normalized polar angles of all points but i, seen from i."""
    n = xy.shape[0]
    cand = np.concatenate([np.arange(i), np.arange(i + 1, n)])
    d = xy[cand] - xy[i]
    r = np.hypot(d[:, 0], d[:, 1])
    phi = np.arctan2(d[:, 1], d[:, 0])
    np.mod(phi, TWO_PI, out=phi)
    phi[phi >= TWO_PI] = 0.0
    return cand, r, phi


def _cone_index_arr(k: int, phi: np.ndarray) -> np.ndarray:
    """Vectorized counterpart of geometry.cone_index on normalized angles."""
    w = TWO_PI / k
    j = np.floor(phi / w).astype(np.int64)
    np.clip(j, 0, k - 1, out=j)
    j = np.where((j < k - 1) & (phi >= (j + 1) * w), j + 1, j)
    j = np.where((j > 0) & (phi < j * w), j - 1, j)
    return j


def _narrow_minima(k: int, cand: np.ndarray, r: np.ndarray, phi: np.ndarray):
    """Per-narrow-cone argmin under the global tie-break order.

    Returns (cones, rows): the occupied cone indices and, for each, the row of
    the winning candidate within the cand/r/phi arrays.
    """
    if cand.size == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    cid = _cone_index_arr(k, phi)
    order = np.lexsort((cand, phi, r))
    cones, first = np.unique(cid[order], return_index=True)
    return cones, order[first]


def build_yao(points: Sequence[Point], k: int) -> ConeGraph:
    """Yao graph: per vertex and per cone of the uniform k-partition, keep the
    directed edge to the tie-broken nearest point inside the cone."""
    if k < 1:
        raise GeometryError(f"k must be >= 1, got {k}")
    xy = as_point_array(points)
    n = xy.shape[0]
    choice = np.full((n, k), -1, dtype=np.int64)
    edges = []
    for i in range(n):
        cand, r, phi = _candidate_polar(xy, i)
        cones, rows = _narrow_minima(k, cand, r, phi)
        for c, row in zip(cones, rows):
            choice[i, c] = cand[row]
            edges.append(DirectedEdge(i, int(cand[row]), float(r[row])))
    return ConeGraph(tuple(points), k, Family.YAO, frozenset(edges), cone_choice=choice)


def build_yao_yao(points: Sequence[Point], k: int) -> ConeGraph:
    """Yao-Yao graph: reverse-Yao step on the Yao graph.  Per vertex u and per
    cone around u, among incoming Yao edges v->u with v inside the cone, only
    the tie-broken shortest survives."""
    yao = build_yao(points, k)
    xy = as_point_array(points)
    if not yao.edges:
        return ConeGraph(tuple(points), k, Family.YAO_YAO, frozenset())
    tails = np.array([e.tail for e in yao.edges], dtype=np.int64)
    heads = np.array([e.head for e in yao.edges], dtype=np.int64)
    lengths = np.array([e.length for e in yao.edges], dtype=float)
    # evaluate each edge in its head's frame: direction and cone of head->tail
    d = xy[tails] - xy[heads]
    phi = np.arctan2(d[:, 1], d[:, 0])
    np.mod(phi, TWO_PI, out=phi)
    phi[phi >= TWO_PI] = 0.0
    cid = _cone_index_arr(k, phi)
    group = heads * k + cid
    order = np.lexsort((tails, phi, lengths))
    _, first = np.unique(group[order], return_index=True)
    keep = order[first]
    edges = frozenset(
        DirectedEdge(int(tails[i]), int(heads[i]), float(lengths[i])) for i in keep
    )
    return ConeGraph(tuple(points), k, Family.YAO_YAO, edges)


def build_oy(points: Sequence[Point], k: int) -> ConeGraph:
    """Overlapping-Yao graph: per vertex and per cone j, keep the shortest
    edge inside the widened cone [2j*pi/k, 2j*pi/k + gamma(k)).

    The widened cone of index j is exactly the union of the m = ceil(k/4)
    narrow cones j..j+m-1 (mod k), so selection reduces to a cyclic
    window-minimum over the per-narrow-cone minima.
    """
    if k < 1:
        raise GeometryError(f"k must be >= 1, got {k}")
    if k <= 24:
        warnings.warn(
            f"overlapping-Yao spanner guarantees need k > 24 (got k={k}); building anyway",
            stacklevel=2,
        )
    xy = as_point_array(points)
    n = xy.shape[0]
    m = -(-k // 4)
    window = (np.arange(k)[:, None] + np.arange(m)[None, :]) % k
    choice = np.full((n, k), -1, dtype=np.int64)
    edges = []
    for i in range(n):
        cand, r, phi = _candidate_polar(xy, i)
        cones, rows = _narrow_minima(k, cand, r, phi)
        if cones.size == 0:
            continue
        nb_r = np.full(k, np.inf)
        nb_row = np.full(k, -1, dtype=np.int64)
        nb_r[cones] = r[rows]
        nb_row[cones] = rows
        win_r = nb_r[window]
        best = np.argmin(win_r, axis=1)
        rows_k = np.arange(k)
        best_r = win_r[rows_k, best]
        occupied = np.isfinite(best_r)
        ties = (win_r == best_r[:, None]).sum(axis=1) > 1
        for j in np.flatnonzero(occupied):
            if ties[j]:
                rs = [int(nb_row[c]) for c in window[j] if nb_row[c] >= 0]
                row = min(rs, key=lambda t: (r[t], phi[t], cand[t]))
            else:
                row = int(nb_row[window[j, best[j]]])
            choice[i, j] = cand[row]
            edges.append(DirectedEdge(i, int(cand[row]), float(r[row])))
    # identical selections across overlapping cones collapse in the edge set
    return ConeGraph(tuple(points), k, Family.OVERLAPPING_YAO, frozenset(edges), cone_choice=choice)


def build_ty(points: Sequence[Point], k: int) -> ConeGraph:
    """Trapezoidal-Yao graph: per vertex, per orientation 2j*pi/k, and per
    mirror image, grow the placed curved trapezoid until it first hits a
    point; keep the edge only when the hit lies on the critical arc.

    For a candidate at local polar angle a and distance r the first-contact
    dilation is r * max(1, sin(a)/sin(theta), 1/(2 cos(a))), so the whole
    frame sweep reduces to angular arithmetic.
    """
    th = theta(k)  # also enforces k > 24
    xy = as_point_array(points)
    n = xy.shape[0]
    sin_th = np.sin(th)
    psi = np.arange(k) * (TWO_PI / k)
    edges: set[DirectedEdge] = set()
    frames: dict[tuple[int, int], list[tuple[int, bool]]] = {}
    for i in range(n):
        cand, r, phi = _candidate_polar(xy, i)
        if cand.size == 0:
            continue
        for reflected in (False, True):
            if reflected:
                alpha = np.mod(psi[None, :] - phi[:, None], TWO_PI)
            else:
                alpha = np.mod(phi[:, None] - psi[None, :], TWO_PI)
            valid = alpha < HALF_PI
            sina = np.sin(alpha, where=valid, out=np.zeros_like(alpha))
            cosa = np.cos(alpha, where=valid, out=np.ones_like(alpha))
            factor = np.maximum(1.0, np.maximum(sina / sin_th, 0.5 / cosa))
            lam = r[:, None] * factor
            lam[~valid] = np.inf
            col_min = lam.min(axis=0)
            occupied = np.isfinite(col_min)
            winner = np.argmin(lam, axis=0)
            tie_counts = (lam == col_min[None, :]).sum(axis=0)
            for j in np.flatnonzero(occupied):
                if tie_counts[j] > 1:
                    tied = np.flatnonzero(lam[:, j] == col_min[j])
                    row = min(tied, key=lambda t: (phi[t], cand[t]))
                else:
                    row = int(winner[j])
                if col_min[j] <= r[row] * (1.0 + EPS_REL):  # critical-arc hit
                    e = DirectedEdge(i, int(cand[row]), float(r[row]))
                    edges.add(e)
                    frames.setdefault((i, int(cand[row])), []).append((int(j), reflected))
    return ConeGraph(tuple(points), k, Family.TRAPEZOIDAL_YAO, frozenset(edges), ty_frames=frames)


def undirected_pairs(edges: Iterable[DirectedEdge]) -> set[tuple[int, int]]:
    """Undirected support of a directed edge set, as (min, max) index pairs."""
    return {(min(e.tail, e.head), max(e.tail, e.head)) for e in edges}

"""Constructive path algorithms over the built graphs.

Two algorithms live here.  The greedy overlapping-Yao path walks toward the
target through the cone that encloses it (shifted by pi/4), following the
edge the construction selected there; its hop-by-hop certificate is the
non-increasing quantity tau * remaining-distance + accumulated-length.

The trapezoid descent walks from a witness point ``a`` to a frame apex ``o``
by repeatedly growing a mirrored trapezoid toward ``o`` and either taking the
trapezoidal-Yao edge it certifies (critical-arc hit) or splicing in a greedy
overlapping-Yao subpath.  Its audit quantity is the potential
x + (2*tau + 1)*|y| - remaining-length, evaluated in frame-local units where
the placed trapezoid has unit width; the potential never increases and ends
at zero, which yields the descent length bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .analysis import tau_bound
from .build import ConeGraph, Family
from .geometry import (
    EPS_REL,
    HALF_PI,
    TWO_PI,
    GeometryError,
    Point,
    cone_index,
    dist,
    normalize_angle,
    polar_angle,
    theta,
)


class InvariantViolation(RuntimeError):
    """An algorithm step contradicted a structural guarantee (construction bug)."""


class StepKind(str, Enum):
    DIRECT_TY_EDGE = "direct_ty_edge"
    OY_SUBPATH = "oy_subpath"
    FINAL_OY_SUBPATH = "final_oy_subpath"
    OY_HOP = "oy_hop"


@dataclass(frozen=True)
class StepAudit:
    """One audited step: its kind, length, and the audit quantity before and
    after (phi_after <= phi_before + eps must hold).  ``psi`` records the
    growth-ray direction for descent steps."""

    kind: StepKind
    length: float
    phi_before: float
    phi_after: float
    psi: float | None = None


@dataclass(frozen=True)
class PathTrace:
    """An ordered vertex walk with per-step audit records.

    Consecutive vertices are joined by edges of the graph(s) the trace was
    built from; total_length equals the sum of step lengths.  Descent traces
    measure lengths in frame-local units (|op| = 1); greedy traces use the
    input coordinates' units.
    """

    vertices: tuple[int, ...]
    steps: tuple[StepAudit, ...]
    total_length: float
    diagnostics: tuple[str, ...] = ()


def phi_potential(point_local: Point, accumulated_length: float, tau: float) -> float:
    """Descent potential x + (2*tau + 1)*|y| - l at a frame-local point, where
    l is the length of the constructed path from the point to the apex."""
    if tau < 1.0:
        raise GeometryError(f"tau must be >= 1, got {tau}")
    return point_local.x + (2.0 * tau + 1.0) * abs(point_local.y) - accumulated_length


def _oy_choice(graph: ConeGraph, u: int, j: int) -> int:
    """Head of the overlapping-Yao selection at (vertex u, cone j), -1 if empty."""
    if graph.cone_choice is not None:
        return int(graph.cone_choice[u, j])
    # fallback for graphs loaded without the selection table
    k = graph.k
    w = TWO_PI / k
    lo = j * w
    g = -(-k // 4) * w
    best = -1
    best_key = None
    pu = graph.points[u]
    for i, p in enumerate(graph.points):
        if i == u:
            continue
        phi = polar_angle(pu, p)
        if normalize_angle(phi - lo) >= g:
            continue
        key = (dist(pu, p), phi, i)
        if best_key is None or key < best_key:
            best_key = key
            best = i
    return best


def oy_greedy_path(graph: ConeGraph, u: int, v: int) -> PathTrace:
    """Constructive path from u to v in an overlapping-Yao graph.

    Each hop locates the narrow cone containing v after a pi/4 shift, then
    follows the edge selected in the widened cone with the same index; the
    head is strictly closer to v than the current vertex, and the total
    length never exceeds tau_bound(k) * |uv|.
    """
    if graph.family is not Family.OVERLAPPING_YAO:
        raise GeometryError(f"greedy path requires an overlapping-Yao graph, got {graph.family.value}")
    if u == v:
        raise GeometryError("path endpoints must differ")
    n = graph.n
    if not (0 <= u < n and 0 <= v < n):
        raise GeometryError(f"vertex index out of range: u={u}, v={v}, n={n}")
    k = graph.k
    tau = tau_bound(k)
    points = graph.points
    target = points[v]

    vertices = [u]
    steps: list[StepAudit] = []
    acc = 0.0
    cur = u
    remaining = dist(points[cur], target)
    for _ in range(n):
        if cur == v:
            break
        shifted = normalize_angle(polar_angle(points[cur], target) - math.pi / 4)
        j = cone_index(k, shifted)
        head = _oy_choice(graph, cur, j)
        if head < 0 or not graph.has_edge(cur, head):
            raise InvariantViolation(
                f"expected an overlapping-Yao edge from {cur} in cone {j} toward {v}"
            )
        hop = dist(points[cur], points[head])
        new_remaining = dist(points[head], target)
        if head != v and new_remaining >= remaining:
            raise InvariantViolation(
                f"greedy hop {cur}->{head} did not approach target {v} "
                f"({new_remaining} >= {remaining})"
            )
        phi_before = tau * remaining + acc
        acc += hop
        phi_after = tau * new_remaining + acc
        steps.append(StepAudit(StepKind.OY_HOP, hop, phi_before, phi_after))
        vertices.append(head)
        cur = head
        remaining = new_remaining
    else:
        raise InvariantViolation(f"greedy path from {u} to {v} exceeded {n} hops")
    return PathTrace(tuple(vertices), tuple(steps), acc)


@dataclass(frozen=True)
class DescentFrame:
    """Placement of the unit trapezoid for the descent: apex vertex ``o``,
    the location of the far bottom corner ``p`` (not necessarily an input
    point), and the mirror flag of the generating frame."""

    o: int
    p: Point
    reflected: bool


def _local_coords(xy: np.ndarray, o: int, p: Point, reflected: bool) -> tuple[np.ndarray, float]:
    """Unit-local coordinates of all points (apex at origin, p at (1,0))."""
    ox, oy = xy[o]
    s = math.hypot(p.x - ox, p.y - oy)
    if s <= 0.0:
        raise GeometryError("degenerate placement: p coincides with the apex")
    orient = math.atan2(p.y - oy, p.x - ox)
    c = math.cos(orient)
    sn = math.sin(orient)
    dx = xy[:, 0] - ox
    dy = xy[:, 1] - oy
    lx = (c * dx + sn * dy) / s
    ly = (-sn * dx + c * dy) / s
    if reflected:
        ly = -ly
    return np.column_stack([lx, ly]), s


def _first_contact(local: np.ndarray, cur: int, psi: float, sin_th: float) -> tuple[int, float, float]:
    """First point hit by the trapezoid grown from ``cur`` along direction
    ``psi`` (mirrored in local coordinates).  Returns (index, lam, r)."""
    dx = local[:, 0] - local[cur, 0]
    dy = local[:, 1] - local[cur, 1]
    r = np.hypot(dx, dy)
    phi = np.mod(np.arctan2(dy, dx), TWO_PI)
    alpha = np.mod(psi - phi, TWO_PI)
    valid = (alpha < HALF_PI) & (r > 0.0)
    lam = np.full(r.shape, np.inf)
    idx = np.flatnonzero(valid)
    if idx.size:
        a = alpha[idx]
        factor = np.maximum(1.0, np.maximum(np.sin(a) / sin_th, 0.5 / np.cos(a)))
        lam[idx] = r[idx] * factor
    best = np.flatnonzero(lam == lam.min())
    if not np.isfinite(lam[best[0]]):
        raise InvariantViolation("trapezoid growth found no candidate point")
    win = min(best, key=lambda t: (phi[t], t))
    return int(win), float(lam[win]), float(r[win])


def ty_descent_path(
    ty: ConeGraph,
    oy: ConeGraph,
    frame: DescentFrame,
    a: int,
) -> PathTrace:
    """Descent path from witness ``a`` to apex ``frame.o`` through TY edges
    and greedy OY subpaths; lengths are in frame-local units (|op| = 1).

    Preconditions (each named on violation): ``oy`` and ``ty`` share the
    point set and parameter; the placement direction o->p lies on the
    construction grid; the placed unit trapezoid has an empty interior; and
    in unit-local coordinates 0 < x_a < 1, y_a <= 0, 0 < phi(a->p) < pi/6.
    """
    if ty.family is not Family.TRAPEZOIDAL_YAO:
        raise GeometryError(f"descent requires a trapezoidal-Yao graph, got {ty.family.value}")
    if oy.family is not Family.OVERLAPPING_YAO:
        raise GeometryError(f"descent requires an overlapping-Yao graph, got {oy.family.value}")
    if oy.k != ty.k or oy.points != ty.points:
        raise GeometryError("the two graphs must share the point set and parameter k")
    k = ty.k
    th = theta(k)
    tau = tau_bound(k)
    points = ty.points
    n = len(points)
    o = frame.o
    if not (0 <= o < n and 0 <= a < n):
        raise GeometryError(f"vertex index out of range: o={o}, a={a}, n={n}")
    if a == o:
        raise GeometryError("witness must differ from the apex")

    xy = np.asarray([(p.x, p.y) for p in points], dtype=float)
    local, scale = _local_coords(xy, o, frame.p, frame.reflected)
    grid = TWO_PI / k
    orient = math.atan2(frame.p.y - xy[o, 1], frame.p.x - xy[o, 0])
    j0 = round(normalize_angle(orient) / grid)
    if abs(normalize_angle(orient) - (j0 % k) * grid) > 1e-9 and abs(
        normalize_angle(orient) - j0 * grid
    ) > 1e-9:
        raise GeometryError("precondition failed: placement direction o->p must lie on the cone grid")

    # empty interior: no point may enter the unit shape strictly before scale 1
    # (boundary contact at scale 1 is allowed, hence the relative margin)
    lx, ly = local[:, 0], local[:, 1]
    can_enter = (lx > 0.0) & (ly >= 0.0)
    r_all = np.hypot(lx, ly)
    lam_unit = np.full(n, np.inf)
    ce = np.flatnonzero(can_enter & (r_all > 0.0))
    lam_unit[ce] = np.maximum(
        r_all[ce], np.maximum(ly[ce] / math.sin(th), r_all[ce] ** 2 / (2.0 * lx[ce]))
    )
    inside = lam_unit < 1.0 - EPS_REL
    if np.any(inside):
        raise GeometryError(
            f"precondition failed: placed trapezoid interior contains point "
            f"{int(np.flatnonzero(inside)[0])}"
        )
    ax, ay = local[a]
    if not (0.0 < ax < 1.0):
        raise GeometryError(f"precondition failed: 0 < x_a < 1 (got x_a={ax})")
    if ay > 0.0:
        raise GeometryError(f"precondition failed: y_a <= 0 (got y_a={ay})")
    phi_ap = math.atan2(-ay, 1.0 - ax)
    if not (0.0 < phi_ap < math.pi / 6):
        raise GeometryError(f"precondition failed: 0 < phi(a->p) < pi/6 (got {phi_ap})")

    sin_th = math.sin(th)
    five_sixth = 5.0 * math.pi / 6.0
    vertices = [a]
    # (kind, local length, from-vertex, to-vertex, psi)
    raw_steps: list[tuple[StepKind, float, int, int, float | None]] = []
    diagnostics: list[str] = []
    cur = a
    for _ in range(n):
        if cur == o:
            break
        phi_uo = normalize_angle(math.atan2(-local[cur, 1], -local[cur, 0]))
        if phi_uo <= five_sixth:
            break
        j = int(phi_uo / grid)
        while j * grid <= phi_uo:  # strict: exact multiples step to the next ray
            j += 1
        psi = j * grid
        win, lam, r_win = _first_contact(local, cur, psi, sin_th)
        d_cur = math.hypot(local[cur, 0], local[cur, 1])
        d_win = math.hypot(local[win, 0], local[win, 1])
        if d_win >= d_cur:
            raise InvariantViolation(
                f"descent step {cur}->{win} did not approach the apex ({d_win} >= {d_cur})"
            )
        if lam <= r_win * (1.0 + EPS_REL):  # critical-arc hit: a TY edge is certified
            if not ty.has_edge(cur, win):
                raise InvariantViolation(
                    f"descent expected trapezoidal-Yao edge {cur}->{win}, not present"
                )
            if ty.ty_frames is not None:
                if frame.reflected:
                    orient_g = normalize_angle(orient - psi)
                    refl_g = False
                else:
                    orient_g = normalize_angle(orient + psi)
                    refl_g = True
                jg = round(orient_g / grid) % k
                if (jg, refl_g) not in ty.ty_frames.get((cur, win), []):
                    diagnostics.append(
                        f"edge {cur}->{win}: growth frame ({jg}, reflected={refl_g}) "
                        f"differs from its recorded selection frames"
                    )
            raw_steps.append((StepKind.DIRECT_TY_EDGE, r_win, cur, win, psi))
            vertices.append(win)
        else:
            sub = oy_greedy_path(oy, cur, win)
            raw_steps.append((StepKind.OY_SUBPATH, sub.total_length / scale, cur, win, psi))
            vertices.extend(sub.vertices[1:])
        cur = win
    else:
        raise InvariantViolation(f"descent from {a} exceeded {n} iterations")
    if cur != o:
        sub = oy_greedy_path(oy, cur, o)
        raw_steps.append((StepKind.FINAL_OY_SUBPATH, sub.total_length / scale, cur, o, None))
        vertices.extend(sub.vertices[1:])

    total = sum(s[1] for s in raw_steps)
    # audit pass: remaining-length to the apex decreases front to back
    steps = []
    remaining = total
    for kind, seg, u_idx, v_idx, psi in raw_steps:
        phi_before = phi_potential(Point(*local[u_idx]), remaining, tau)
        remaining -= seg
        phi_after = phi_potential(Point(*local[v_idx]), remaining, tau)
        steps.append(StepAudit(kind, seg, phi_before, phi_after, psi))
    return PathTrace(tuple(vertices), tuple(steps), total, tuple(diagnostics))


def descent_length_bound(ty: ConeGraph, frame: DescentFrame, a: int) -> float:
    """Guaranteed ceiling x_a + (2*tau + 1)*|y_a| on the descent length, in
    the same frame-local units the trace reports."""
    xy = np.asarray([(p.x, p.y) for p in ty.points], dtype=float)
    local, _ = _local_coords(xy, frame.o, frame.p, frame.reflected)
    tau = tau_bound(ty.k)
    return float(local[a, 0] + (2.0 * tau + 1.0) * abs(local[a, 1]))


def harvest_descent_configs(ty: ConeGraph) -> list[tuple[DescentFrame, int]]:
    """Collect real (placement, witness) descent configurations from a built
    trapezoidal-Yao graph: for every edge and every frame that selected it,
    the placed trapezoid is empty by construction, and every point meeting
    the witness conditions in that placement qualifies."""
    if ty.family is not Family.TRAPEZOIDAL_YAO or ty.ty_frames is None:
        raise GeometryError("harvest requires a trapezoidal-Yao graph built by build_ty")
    k = ty.k
    grid = TWO_PI / k
    xy = np.asarray([(p.x, p.y) for p in ty.points], dtype=float)
    configs: list[tuple[DescentFrame, int]] = []
    for (t, h), frame_list in sorted(ty.ty_frames.items()):
        s = math.hypot(xy[h, 0] - xy[t, 0], xy[h, 1] - xy[t, 1])
        for j, reflected in frame_list:
            orient = j * grid
            p = Point(xy[t, 0] + s * math.cos(orient), xy[t, 1] + s * math.sin(orient))
            local, _ = _local_coords(xy, t, p, reflected)
            lx = local[:, 0]
            ly = local[:, 1]
            phi_ap = np.arctan2(-ly, 1.0 - lx)
            ok = (
                (lx > 0.0)
                & (lx < 1.0)
                & (ly <= 0.0)
                & (phi_ap > 0.0)
                & (phi_ap < math.pi / 6)
            )
            ok[t] = False
            for a in np.flatnonzero(ok):
                configs.append((DescentFrame(t, p, reflected), int(a)))
    return configs

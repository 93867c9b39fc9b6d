import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conespan.build import (
    ConeGraph,
    DirectedEdge,
    Family,
    build_oy,
    build_ty,
    build_yao,
    build_yao_yao,
    undirected_pairs,
)
from conespan.analysis import subgraph_check
from conespan.geometry import (
    GeometryError,
    HitPart,
    Point,
    TWO_PI,
    TrapezoidFrame,
    polar_angle,
    scale_to_hit,
    theta,
)
from conftest import (
    oracle_oy_pairs,
    oracle_ty_pairs,
    oracle_yao_pairs,
    oracle_yy_pairs,
    random_points,
)


def pairs(graph: ConeGraph) -> set[tuple[int, int]]:
    return {(e.tail, e.head) for e in graph.edges}


class TestBuildYao:
    def test_two_points(self):
        g = build_yao([Point(0, 0), Point(1, 0)], 8)
        assert pairs(g) == {(0, 1), (1, 0)}
        assert all(e.length == 1.0 for e in g.edges)

    def test_collinear_three(self):
        g = build_yao([Point(0, 0), Point(1, 0), Point(2, 0)], 8)
        assert pairs(g) == {(0, 1), (1, 0), (1, 2), (2, 1)}

    def test_square_corners_k4(self, square_corners):
        g = build_yao(square_corners, 4)
        from_origin = {(t, h) for t, h in pairs(g) if t == 0}
        # cone 0 holds both (1,0) and (1,1); the nearer (1,0) wins
        assert from_origin == {(0, 1), (0, 3)}

    @pytest.mark.parametrize("k,seed", [(7, 0), (8, 1), (12, 2), (26, 3)])
    def test_matches_scalar_oracle(self, k, seed):
        pts = random_points(40, seed)
        assert pairs(build_yao(pts, k)) == oracle_yao_pairs(pts, k)

    def test_out_degree_bound(self):
        pts = random_points(80, 4)
        for k in (4, 9, 16):
            g = build_yao(pts, k)
            out = np.zeros(len(pts), dtype=int)
            for t, _ in pairs(g):
                out[t] += 1
            assert out.max() <= k

    def test_duplicate_points_rejected(self):
        with pytest.raises(GeometryError, match="duplicate"):
            build_yao([Point(0, 0), Point(1, 1), Point(0, 0)], 8)

    def test_edge_lengths_match_coordinates(self):
        pts = random_points(30, 5)
        for e in build_yao(pts, 8).edges:
            d = math.hypot(pts[e.head].x - pts[e.tail].x, pts[e.head].y - pts[e.tail].y)
            assert abs(e.length - d) <= 1e-12 * max(1.0, d)


class TestBuildYaoYao:
    def test_no_competition(self):
        pts = [Point(0, 0), Point(1, 0)]
        assert pairs(build_yao_yao(pts, 8)) == pairs(build_yao(pts, 8))

    @pytest.mark.parametrize("k,seed", [(6, 0), (8, 10), (12, 1), (30, 2)])
    def test_subset_of_yao(self, k, seed):
        pts = random_points(50, seed)
        assert pairs(build_yao_yao(pts, k)) <= pairs(build_yao(pts, k))

    def test_matches_two_pass_oracle(self):
        pts = random_points(50, 1)
        k = 12
        yy = pairs(build_yao_yao(pts, k))
        assert yy == oracle_yy_pairs(pts, k)
        assert len(yy) < len(pairs(build_yao(pts, k)))  # something was pruned

    def test_degree_bounds(self):
        pts = random_points(120, 3)
        for k in (8, 16):
            g = build_yao_yao(pts, k)
            indeg = np.zeros(len(pts), dtype=int)
            outdeg = np.zeros(len(pts), dtype=int)
            for t, h in pairs(g):
                outdeg[t] += 1
                indeg[h] += 1
            assert indeg.max() <= k
            assert outdeg.max() <= k


class TestBuildOy:
    def test_two_points(self):
        g = build_oy([Point(0, 0), Point(1, 0)], 26)
        assert pairs(g) == {(0, 1), (1, 0)}

    def test_collinear_dedup(self):
        g = build_oy([Point(0, 0), Point(1, 0), Point(3, 0)], 26)
        assert pairs(g) == {(0, 1), (1, 0), (1, 2), (2, 1)}

    def test_per_cone_selection_table(self):
        pts = random_points(20, 6)
        g = build_oy(pts, 26)
        assert g.cone_choice is not None
        assert g.cone_choice.shape == (20, 26)
        # every occupied slot's head must be an actual edge
        for u in range(20):
            for j in range(26):
                h = g.cone_choice[u, j]
                if h >= 0:
                    assert (u, int(h)) in pairs(g)

    @pytest.mark.parametrize("k,seed", [(26, 7), (30, 7)])
    def test_matches_brute_force_scan(self, k, seed):
        pts = random_points(40, seed)
        assert pairs(build_oy(pts, k)) == oracle_oy_pairs(pts, k)

    def test_small_k_warns_but_builds(self):
        with pytest.warns(UserWarning, match="k > 24"):
            g = build_oy(random_points(10, 0), 8)
        assert g.family is Family.OVERLAPPING_YAO


class TestBuildTy:
    def test_two_points(self):
        g = build_ty([Point(0, 0), Point(1, 0)], 26)
        assert pairs(g) == {(0, 1), (1, 0)}

    def test_requires_large_k(self):
        with pytest.raises(GeometryError):
            build_ty([Point(0, 0), Point(1, 0)], 24)

    @pytest.mark.parametrize("seed", [0, 1, 7])
    def test_oy_subgraph_of_ty(self, seed):
        pts = random_points(60, seed)
        for k in (26, 30):
            assert pairs(build_oy(pts, k)) <= pairs(build_ty(pts, k))

    def test_matches_first_contact_oracle(self):
        pts = random_points(40, 7)
        k = 30
        assert pairs(build_ty(pts, k)) == oracle_ty_pairs(pts, k)

    def test_generating_frames_recorded(self):
        pts = random_points(30, 2)
        g = build_ty(pts, 26)
        assert g.ty_frames is not None
        assert set(g.ty_frames) == pairs(g)
        th = theta(26)
        for (t, h), frames in g.ty_frames.items():
            assert frames
            for j, reflected in frames:
                frame = TrapezoidFrame(pts[t], j * (TWO_PI / 26), reflected, th)
                hit = scale_to_hit(frame, pts[h])
                assert hit.part is HitPart.CRITICAL_ARC

    def test_open_trapezoid_empty_per_edge(self):
        # for every selected edge and generating frame, no point enters the
        # placed shape strictly before the edge's contact scale
        pts = random_points(40, 9)
        k = 26
        g = build_ty(pts, k)
        th = theta(k)
        for (t, h), frames in g.ty_frames.items():
            d = math.hypot(pts[h].x - pts[t].x, pts[h].y - pts[t].y)
            for j, reflected in frames:
                frame = TrapezoidFrame(pts[t], j * (TWO_PI / k), reflected, th)
                for i, p in enumerate(pts):
                    if i == t:
                        continue
                    hit = scale_to_hit(frame, p)
                    if hit.part is not HitPart.NONE:
                        assert hit.lam >= d * (1 - 1e-9)


class TestDeterminism:
    def test_rebuild_identical(self):
        pts = random_points(50, 8)
        for build, k in ((build_yao, 9), (build_yao_yao, 9), (build_oy, 27), (build_ty, 27)):
            assert build(pts, k).edges == build(pts, k).edges


class TestDegenerateInputs:
    """Structured sets with exact symmetries put chord directions exactly on
    cone rays and points exactly on growth-frame bottom rays.  Half-open
    membership at such knife edges is decided by last-ulp rounding, so the
    scalar oracles legitimately disagree with the vectorized builders there
    (both are internally consistent), and the widened-cone-inside-trapezoid
    inclusion itself has a measure-zero gap (see the right-angle-ray case
    below).  What must still hold on any input: determinism, the reverse
    step only removing edges, per-cone selection uniqueness, and the degree
    bounds.
    """

    @pytest.fixture(scope="class")
    @staticmethod
    def degenerate_sets():
        from conespan.pointgen import GenKind, GenSpec, gen_points

        return {
            "grid": gen_points(GenSpec(GenKind.GRID, 25, pitch=1.0)),
            "circle24": gen_points(GenSpec(GenKind.CO_CIRCULAR, 24, radius=1.0, jitter=0.0)),
            "circle26": gen_points(GenSpec(GenKind.CO_CIRCULAR, 26, radius=1.0, jitter=0.0)),
            "two_rows": [Point(float(i), 0.0) for i in range(8)]
            + [Point(float(i), 1.0) for i in range(8)],
        }

    def test_deterministic_and_structural(self, degenerate_sets):
        for pts in degenerate_sets.values():
            for k in (8, 26, 30):
                yao = build_yao(pts, k)
                yy = build_yao_yao(pts, k)
                assert build_yao(pts, k).edges == yao.edges
                assert pairs(yy) <= pairs(yao)
                outdeg = np.zeros(len(pts), dtype=int)
                for t, _ in pairs(yao):
                    outdeg[t] += 1
                assert outdeg.max() <= k
                indeg = np.zeros(len(pts), dtype=int)
                for _, h in pairs(yy):
                    indeg[h] += 1
                assert indeg.max() <= k

    def test_ty_rebuild_identical_on_symmetric_input(self, degenerate_sets):
        pts = degenerate_sets["circle24"]
        for k in (26, 30):
            assert build_ty(pts, k).edges == build_ty(pts, k).edges
            assert build_oy(pts, k).edges == build_oy(pts, k).edges

    def test_bottom_ray_point_blocks_subgraph_inclusion(self, degenerate_sets):
        # 24 co-circular points at k=26: the widened-cone edge 7->4 is chosen
        # in a cone whose upper boundary ray carries point 5 at a smaller
        # distance; the mirrored growth frame touches 5 on its bottom edge
        # before the far arc reaches 4, so no frame certifies 7->4.  The
        # inclusion therefore fails exactly on this measure-zero alignment
        # (and only there; random sets never produce it).
        pts = degenerate_sets["circle24"]
        oy = build_oy(pts, 26)
        ty = build_ty(pts, 26)
        assert (7, 4) in pairs(oy)
        ok, violations = subgraph_check(oy, ty)
        assert not ok
        assert (7, 4) in {(e.tail, e.head) for e in violations}


@st.composite
def small_point_sets(draw):
    coords = st.floats(-100.0, 100.0, allow_nan=False, allow_infinity=False)
    pts = draw(st.lists(st.tuples(coords, coords), min_size=2, max_size=8, unique=True))
    return [Point(x, y) for x, y in pts]


def _generic_position(pts, k: int, margin: float = 1e-9) -> bool:
    """No pairwise direction within ``margin`` of a cone ray or of a ray
    shifted by pi/2 (the trapezoid window edge).  Oracle equality is only
    meaningful there: exactly-aligned directions are decided by last-ulp
    rounding, which the two computation paths may resolve differently.
    """
    w = TWO_PI / k
    for u in range(len(pts)):
        for v in range(len(pts)):
            if u == v:
                continue
            phi = polar_angle(pts[u], pts[v])
            for base in (phi, phi - math.pi / 2):
                frac = math.fmod(base, w)
                if frac < 0:
                    frac += w
                if min(frac, w - frac) < margin:
                    return False
    return True


class TestBuilderFuzz:
    @given(small_point_sets(), st.sampled_from([5, 8, 26]))
    @settings(max_examples=60, deadline=None, derandomize=True)
    def test_yao_families_match_oracles(self, pts, k):
        assume(_generic_position(pts, k))
        assert pairs(build_yao(pts, k)) == oracle_yao_pairs(pts, k)
        assert pairs(build_yao_yao(pts, k)) == oracle_yy_pairs(pts, k)

    @given(small_point_sets(), st.sampled_from([26, 31]))
    @settings(max_examples=30, deadline=None, derandomize=True)
    def test_widened_and_trapezoid_match_oracles(self, pts, k):
        assume(_generic_position(pts, k))
        assert pairs(build_oy(pts, k)) == oracle_oy_pairs(pts, k)
        assert pairs(build_ty(pts, k)) == oracle_ty_pairs(pts, k)


class TestScaleInvariance:
    # uniform scaling by a power of two is exact in floating point, so the
    # selected edge pairs must be identical at any such scale
    @pytest.mark.parametrize("factor", [2.0**-20, 2.0**18])
    def test_power_of_two_scaling_preserves_edges(self, factor):
        pts = random_points(40, 12)
        scaled = [Point(p.x * factor, p.y * factor) for p in pts]
        for build, k in ((build_yao, 9), (build_yao_yao, 9), (build_oy, 26), (build_ty, 26)):
            assert pairs(build(pts, k)) == pairs(build(scaled, k))


class TestConeGraph:
    def test_edge_pair_lookup(self):
        g = build_yao([Point(0, 0), Point(1, 0)], 8)
        assert g.has_edge(0, 1)
        assert not g.has_edge(1, 1)

    def test_undirected_pairs(self):
        edges = [DirectedEdge(0, 1, 1.0), DirectedEdge(1, 0, 1.0), DirectedEdge(2, 1, 1.0)]
        assert undirected_pairs(edges) == {(0, 1), (1, 2)}

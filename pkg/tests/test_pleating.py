import cmath
import math

import numpy as np
import pytest

from domekit.errors import UnknownGap
from domekit.hyperbolic import (
    GeodesicH2,
    PointH2,
    dist_h2,
    dist_h3,
    disk_to_halfspace,
    geodesic_polar,
    poincare_extension,
)
from domekit.laminations import FiniteLamination, random_lamination, scale
from domekit.mobius import MobiusMap
from domekit.pleating import (
    ComplexEarthquake,
    GapComplex,
    T0Region,
    _foot_on_leaf,
    complex_earthquake,
    earthquake,
    embedding_check,
    in_T0,
    pleat,
    shear_reach,
)

from _oracles import dihedral_angle


def exterior_angle_at_leaf(plane, leaf_idx: int) -> float:
    """Independent dihedral oracle: tangent vectors at a point of the bent edge."""
    lam = plane.lamination
    g = lam.leaves[leaf_idx]
    parent, child = plane.complex_.tree_paths(plane.base_gap)[1][leaf_idx]
    w_par = plane.gap_maps[parent]
    w_chi = plane.gap_maps[child]
    cay = MobiusMap.cayley_disk_to_uhp()
    edge_a = w_par.compose(cay)(g.a.z)
    edge_b = w_par.compose(cay)(g.b.z)
    zf = _foot_on_leaf(plane.complex_.gaps[parent].sample, geodesic_polar(g))
    foot3 = poincare_extension(w_par, disk_to_halfspace(zf))
    q1 = poincare_extension(
        w_par, disk_to_halfspace(plane.complex_.gaps[parent].sample)
    )
    q2 = poincare_extension(
        w_chi, disk_to_halfspace(plane.complex_.gaps[child].sample)
    )
    return math.pi - dihedral_angle(edge_a, edge_b, foot3, q1, q2)


class TestGapComplex:
    def test_empty(self):
        gc = GapComplex([])
        assert len(gc) == 1 and gc.gap_of(0.3 + 0.1j) == 0

    def test_counts(self, rng):
        for n in (1, 2, 5, 9):
            lam = random_lamination(rng, n)
            assert len(GapComplex(lam.leaves)) == n + 1

    def test_unknown_gap(self, rng):
        lam = random_lamination(rng, 2)
        gc = GapComplex(lam.leaves)
        with pytest.raises(UnknownGap):
            gc.resolve(99)

    def test_tree_paths_cross_separating_leaves(self, rng):
        lam = random_lamination(rng, 6)
        gc = GapComplex(lam.leaves)
        base = gc.gap_of(0j)
        paths, crossing = gc.tree_paths(base)
        for g, path in enumerate(paths):
            assert len(set(path)) == len(path)
            for leaf_idx in path:
                par, chi = crossing[leaf_idx]
                assert leaf_idx in paths[chi]


class TestPleat:
    def test_empty_is_flat_embedding(self):
        plane = pleat(FiniteLamination([], []))
        for z in (0j, 0.3 + 0.1j, -0.7j):
            assert dist_h3(plane.apply(PointH2(z)), disk_to_halfspace(z)) < 1e-12

    def test_single_leaf_dihedral_equals_weight(self, rng):
        for _ in range(25):
            t = np.sort(rng.uniform(0, 2 * math.pi, 2))
            if t[1] - t[0] < 0.3 or t[1] - t[0] > 2 * math.pi - 0.3:
                continue
            w = rng.uniform(0.05, math.pi - 0.05)
            lam = FiniteLamination([GeodesicH2.from_angles(*t)], [w])
            plane = pleat(lam)
            assert exterior_angle_at_leaf(plane, 0) == pytest.approx(w, abs=1e-9)

    def test_two_leaf_composition(self):
        lam = FiniteLamination(
            [GeodesicH2.from_angles(0.2, 1.2), GeodesicH2.from_angles(0.4, 1.0)],
            [0.8, 0.5],
        )
        base = PointH2(-0.5)
        plane = pleat(lam, base=base)
        # both exterior angles match their weights
        assert exterior_angle_at_leaf(plane, 0) == pytest.approx(0.8, abs=1e-9)
        assert exterior_angle_at_leaf(plane, 1) == pytest.approx(0.5, abs=1e-9)
        # middle gap moved by the first rotation only: relative map elliptic
        # with angle = first weight
        paths, _ = plane.complex_.tree_paths(plane.base_gap)
        mid = next(g for g, p in enumerate(paths) if len(p) == 1)
        far = next(g for g, p in enumerate(paths) if len(p) == 2)
        rel_mid = plane.gap_maps[mid].compose(plane.gap_maps[plane.base_gap].inverse())
        assert abs(abs(rel_mid.trace()) - 2 * math.cos(0.8 / 2)) < 1e-12
        rel_far = plane.gap_maps[far].compose(plane.gap_maps[mid].inverse())
        assert abs(abs(rel_far.trace()) - 2 * math.cos(0.5 / 2)) < 1e-12

    def test_gap_relative_rotation_angle(self, rng):
        lam = random_lamination(rng, 5)
        plane = pleat(lam)
        _, crossing = plane.complex_.tree_paths(plane.base_gap)
        for i, w in enumerate(lam.weights):
            par, chi = crossing[i]
            rel = plane.gap_maps[chi].compose(plane.gap_maps[par].inverse())
            assert abs(abs(rel.trace()) - 2 * math.cos(w / 2)) < 1e-12

    def test_isometric_on_gaps(self, rng):
        lam = random_lamination(rng, 3)
        plane = pleat(lam)
        gc = plane.complex_
        for gap in gc.gaps:
            base = gap.sample
            for _ in range(30):
                z = base + 0.03 * (rng.normal() + 1j * rng.normal())
                if abs(z) > 0.995 or gc.gap_of(z) != gc.gap_of(base):
                    continue
                d2 = dist_h2(base, z)
                d3 = dist_h3(plane.apply(PointH2(base)), plane.apply(PointH2(z)))
                assert abs(d3 - d2) < 1e-12

    def test_never_expands(self, rng):
        lam = scale(random_lamination(rng, 4), 0.1)
        plane = pleat(lam)
        for _ in range(500):
            z1 = 0.9 * math.sqrt(rng.uniform()) * cmath.exp(1j * rng.uniform(0, 7))
            z2 = 0.9 * math.sqrt(rng.uniform()) * cmath.exp(1j * rng.uniform(0, 7))
            d2 = dist_h2(z1, z2)
            if d2 < 1e-6:
                continue
            d3 = dist_h3(plane.apply(PointH2(z1)), plane.apply(PointH2(z2)))
            assert d3 <= d2 + 1e-12


class TestEarthquake:
    def test_empty_identity(self):
        q = earthquake(FiniteLamination([], []))
        z = 0.4 - 0.2j
        assert abs(q.apply(PointH2(z)).z - z) < 1e-15

    def test_single_leaf_translation_length(self, rng):
        for _ in range(20):
            t = np.sort(rng.uniform(0, 2 * math.pi, 2))
            if t[1] - t[0] < 0.3 or t[1] - t[0] > 2 * math.pi - 0.3:
                continue
            s = rng.uniform(0.1, 2.0)
            lam = FiniteLamination([GeodesicH2.from_angles(*t)], [s])
            q = earthquake(lam)
            far = 1 - q.base_gap
            rel = q.gap_maps[far].compose(q.gap_maps[q.base_gap].inverse())
            assert abs(abs(rel.trace()) - 2 * math.cosh(s / 2)) < 1e-12
            # fixed points of the relative map are the leaf endpoints
            g = lam.leaves[0]
            for p in (g.a.z, g.b.z):
                assert abs(rel(p) - p) < 1e-9

    def test_doubling_weights_squares_relative_maps(self, rng):
        # per-leaf shear factor in flat coordinates: W_parent^-1 W_child;
        # doubling every weight squares each factor
        lam = random_lamination(rng, 4)
        q1 = earthquake(lam, base=0)
        q2 = earthquake(scale(lam, 2.0), base=0)
        _, crossing = q1.complex_.tree_paths(q1.base_gap)
        for i in range(len(lam)):
            par, chi = crossing[i]
            t1 = q1.gap_maps[par].inverse().compose(q1.gap_maps[chi])
            t2 = q2.gap_maps[par].inverse().compose(q2.gap_maps[chi])
            sq = t1.compose(t1)
            assert sq.compose(t2.inverse()).is_identity(tol=1e-9)

    def test_boundary_map_monotone(self, rng):
        lam = random_lamination(rng, 5)
        bm = earthquake(lam).boundary_map()
        angles = rng.uniform(0, 2 * math.pi, 10**4)
        imgs = np.array([bm(a) for a in angles])
        order_in = np.argsort(angles)
        # cyclic order preserved: image sequence has exactly one wraparound
        seq = imgs[order_in]
        drops = np.sum(np.diff(seq) < 0)
        assert drops <= 1

    def test_boundary_continuity_at_endpoints(self, rng):
        lam = random_lamination(rng, 4)
        bm = earthquake(lam).boundary_map()
        for g in lam.leaves:
            for t in g.angles():
                lo = bm(t - 1e-12)
                hi = bm(t + 1e-12)
                gap = abs((hi - lo + math.pi) % (2 * math.pi) - math.pi)
                assert gap < 1e-9

    def test_disk_preserved(self, rng):
        lam = random_lamination(rng, 3)
        q = earthquake(lam)
        for m in q.gap_maps:
            for ang in rng.uniform(0, 2 * math.pi, 50):
                assert abs(abs(m(cmath.exp(1j * ang))) - 1.0) < 1e-12


class TestComplexEarthquake:
    def test_zero_parameter_is_flat(self, rng):
        lam = random_lamination(rng, 3)
        ce = complex_earthquake(lam, 0j)
        for _ in range(50):
            z = 0.8 * math.sqrt(rng.uniform()) * cmath.exp(1j * rng.uniform(0, 7))
            assert dist_h3(ce.apply(PointH2(z)), disk_to_halfspace(z)) < 1e-12

    def test_pure_bend_equals_pleat(self, rng):
        lam = random_lamination(rng, 3)
        y = 0.45
        ce = complex_earthquake(lam, complex(0, y))
        pl = pleat(scale(lam, y))
        for _ in range(1000):
            z = 0.85 * math.sqrt(rng.uniform()) * cmath.exp(1j * rng.uniform(0, 7))
            assert dist_h3(ce.apply(PointH2(z)), pl.apply(PointH2(z))) < 1e-12

    def test_real_parameter_is_plane_earthquake(self, rng):
        lam = random_lamination(rng, 3)
        x = 0.6
        ce = complex_earthquake(lam, complex(x, 0))
        qk = earthquake(scale(lam, x))
        for _ in range(200):
            z = 0.8 * math.sqrt(rng.uniform()) * cmath.exp(1j * rng.uniform(0, 7))
            img = ce.apply(PointH2(z))
            assert abs(img.y) < 1e-12
            want = disk_to_halfspace(qk.apply(PointH2(z)).z)
            assert dist_h3(img, want) < 1e-10

    def test_boundary_trace_matches_pleat(self, rng):
        lam = random_lamination(rng, 2)
        for y in (0.2, 0.5, 0.9):
            ce = complex_earthquake(lam, complex(0, y))
            pl = pleat(scale(lam, y))
            for ang in rng.uniform(0, 2 * math.pi, 60):
                a = ce.boundary(float(ang))
                b = pl.boundary(float(ang))
                from domekit.mobius import chordal_distance

                assert chordal_distance(a, b) < 1e-9


class TestT0:
    def test_origin_inside(self):
        assert in_T0(0)

    def test_shear_reach_at_origin(self):
        assert shear_reach(1.0, 0.0) == pytest.approx(1.0, abs=1e-15)

    def test_pure_bend_values(self):
        assert in_T0(0.3j)
        assert not in_T0(0.8j, c2=0.73)
        assert in_T0(0.8j, c2=0.948)

    def test_symmetry(self, rng):
        region = T0Region()
        for _ in range(100):
            t = complex(rng.normal(), rng.normal())
            assert region.contains(t) == region.contains(t.conjugate())
            assert region.contains(t) == region.contains(-t)

    def test_shrinks_with_shear(self):
        # more real shear means less bending allowed
        y = 0.4
        assert in_T0(complex(0.0, y))
        assert not in_T0(complex(3.0, y))


class TestEmbeddingCheck:
    def test_flat_plane_ratio_one(self):
        rep = embedding_check(pleat(FiniteLamination([], [])), samples=300, seed=1)
        assert rep.min_ratio == pytest.approx(1.0, abs=1e-9)
        assert rep.max_ratio == pytest.approx(1.0, abs=1e-9)

    def test_near_fold_small_but_positive(self):
        lam = FiniteLamination([GeodesicH2.from_angles(0.5, 2.5)], [math.pi - 0.01])
        rep = embedding_check(pleat(lam), samples=3000, seed=2)
        assert 0 < rep.min_ratio < 0.05
        assert rep.near_collisions == 0

    def test_small_roundness_no_collisions(self, rng):
        lam = random_lamination(rng, 4)
        from domekit.laminations import roundness

        lam = scale(lam, 0.5 / roundness(lam))
        rep = embedding_check(pleat(lam), samples=10**4, seed=3)
        assert rep.near_collisions == 0
        assert rep.min_ratio > 0.05


class TestGlobalConvexity:
    def test_branched_pleats_stay_on_one_side_of_every_face(self, rng):
        # every gap image plane supports the whole surface: folds across
        # different branches of the gap tree all tip the same way
        from domekit.mobius import CircleOrLine

        for _ in range(5):
            lam = random_lamination(rng, 6)
            lam = scale(lam, 0.6 / max(lam.weights))
            plane = pleat(lam)
            pts = []
            for gid, gap in enumerate(plane.complex_.gaps):
                for _ in range(40):
                    z = gap.sample + 0.02 * (rng.normal() + 1j * rng.normal())
                    if abs(z) > 0.995 or plane.complex_.gap_of(z) != gid:
                        continue
                    p = plane.apply(PointH2(z))
                    pts.append((p.z, p.t))
            for m in plane.gap_maps:
                circ = CircleOrLine.real_line().mobius_image(m)
                vals = []
                for z, t in pts:
                    if circ.is_line:
                        vals.append(circ.evaluate(z))
                    else:
                        c, r = circ.center_radius()
                        vals.append(abs(z - c) ** 2 + t * t - r * r)
                vals = np.array(vals)
                assert vals.max() <= 1e-9 or vals.min() >= -1e-9

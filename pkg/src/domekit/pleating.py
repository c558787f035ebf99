"""Pleated planes, earthquakes and complex earthquakes for finite laminations.

The complement of a finite lamination is a tree of gaps.  A pleated plane
maps the base gap into a fixed vertical plane of upper half-space and bends
by each leaf's weight across it; an earthquake shears instead of bending.
Both are realized as one Mobius map per gap, composed along the tree path
from the base.
"""
from __future__ import annotations

import bisect
import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import UnknownGap
from .hyperbolic import (
    GeodesicH2,
    PointH2,
    PointH3,
    dist_h2,
    dist_h3,
    disk_boundary_to_real,
    disk_to_halfspace,
    geodesic_polar,
    light_vec,
    point_vec,
    poincare_extension,
    _mink_dot,
)
from .laminations import FiniteLamination, validate, _initial_direction
from .mobius import MobiusMap

ON_LEAF_TOL = 1e-9

# ---------------------------------------------------------------------------
# gap structure of a finite lamination
# ---------------------------------------------------------------------------


@dataclass
class Gap:
    signs: tuple
    sample: complex
    arcs: list  # boundary arcs (start, end) with end > start, possibly > 2pi


class GapComplex:
    """Complement components of a finite set of disjoint geodesics.

    Gaps are enumerated from the boundary arcs between leaf endpoints, so
    arbitrarily thin gaps are found.  Gap ids are indices into ``gaps``,
    ordered by each gap's first boundary arc.
    """

    def __init__(self, leaves: list[GeodesicH2]):
        self.leaves = list(leaves)
        self.polars = (
            np.stack([geodesic_polar(g) for g in leaves])
            if leaves else np.zeros((0, 3))
        )
        self.gaps: list[Gap] = []
        self._by_signs: dict[tuple, int] = {}
        self._build()

    def _boundary_sign_vector(self, angle: float) -> tuple:
        v = light_vec(angle)
        s = self.polars @ np.array([v[0], v[1], -v[2]])
        return tuple(1 if x > 0 else -1 for x in s)

    def _interior_sign_vector(self, z: complex) -> tuple:
        v = point_vec(z)
        s = self.polars @ np.array([v[0], v[1], -v[2]])
        return tuple(1 if x > ON_LEAF_TOL else (-1 if x < -ON_LEAF_TOL else 1)
                     for x in s)

    def _build(self):
        n = len(self.leaves)
        if n == 0:
            self.gaps = [Gap(signs=(), sample=0j, arcs=[(0.0, 2 * math.pi)])]
            self._by_signs[()] = 0
            return
        ends = sorted({a for g in self.leaves for a in g.angles()})
        arcs = []
        for i, start in enumerate(ends):
            end = ends[(i + 1) % len(ends)]
            if end <= start:
                end += 2 * math.pi
            arcs.append((start, end))
        by_signs: dict[tuple, Gap] = {}
        for start, end in arcs:
            mid = 0.5 * (start + end)
            key = self._boundary_sign_vector(mid)
            if key not in by_signs:
                # interior sample: walk inward until the sign vector matches
                sample = None
                for r in (0.9, 0.99, 0.999, 0.9999, 0.99999):
                    z = r * cmath.exp(1j * mid)
                    if self._interior_sign_vector(z) == key:
                        sample = z
                        break
                if sample is None:
                    z = 0.999999 * cmath.exp(1j * mid)
                    sample = z
                by_signs[key] = Gap(signs=key, sample=sample, arcs=[])
            by_signs[key].arcs.append((start, end))
        self.gaps = list(by_signs.values())
        self._by_signs = {g.signs: i for i, g in enumerate(self.gaps)}

    def __len__(self):
        return len(self.gaps)

    def gap_of(self, z: complex | PointH2) -> int:
        """Gap containing a disk point; on-leaf points go to the + side."""
        if isinstance(z, PointH2):
            z = z.z
        key = self._interior_sign_vector(z)
        if key not in self._by_signs:
            raise UnknownGap(f"no gap with sign vector {key}")
        return self._by_signs[key]

    def gap_of_boundary(self, angle: float) -> int:
        key = self._boundary_sign_vector(angle)
        if key not in self._by_signs:
            raise UnknownGap(f"no gap for boundary angle {angle}")
        return self._by_signs[key]

    def resolve(self, base) -> int:
        if base is None:
            return self.gap_of(0j)
        if isinstance(base, (PointH2, complex)):
            return self.gap_of(base)
        base = int(base)
        if not 0 <= base < len(self.gaps):
            raise UnknownGap(f"gap id {base} out of range")
        return base

    def tree_paths(self, base: int) -> tuple[list[list[int]], dict[int, tuple[int, int]]]:
        """BFS paths of leaf indices from the base gap to every gap.

        Returns (paths, crossing) where paths[g] lists the separating leaf
        indices ordered from the base outward, and crossing[i] = (parent
        gap, child gap) for the tree edge of leaf i (child on the far side
        of the base).
        """
        n_gaps = len(self.gaps)
        adj: dict[int, list[tuple[int, int]]] = {g: [] for g in range(n_gaps)}
        for g1 in range(n_gaps):
            for g2 in range(g1 + 1, n_gaps):
                s1, s2 = self.gaps[g1].signs, self.gaps[g2].signs
                diff = [i for i in range(len(s1)) if s1[i] != s2[i]]
                if len(diff) == 1:
                    adj[g1].append((g2, diff[0]))
                    adj[g2].append((g1, diff[0]))
        paths: list[list[int] | None] = [None] * n_gaps
        crossing: dict[int, tuple[int, int]] = {}
        paths[base] = []
        queue = [base]
        while queue:
            g = queue.pop(0)
            for h, leaf in adj[g]:
                if paths[h] is None:
                    paths[h] = paths[g] + [leaf]
                    crossing[leaf] = (g, h)
                    queue.append(h)
        if any(p is None for p in paths):
            raise UnknownGap("gap adjacency graph is disconnected")
        return paths, crossing


# ---------------------------------------------------------------------------
# piecewise-Mobius circle maps
# ---------------------------------------------------------------------------


class CircleMap:
    """Piecewise-Mobius homeomorphism of the circle, one map per boundary arc."""

    def __init__(self, breaks: list[float], maps: list[MobiusMap]):
        order = np.argsort(breaks)
        self.breaks = [breaks[i] for i in order]
        self.maps = [maps[i] for i in order]

    @staticmethod
    def from_gap_maps(complex_: GapComplex, gap_maps: list[MobiusMap]) -> "CircleMap":
        breaks, maps = [], []
        for gid, gap in enumerate(complex_.gaps):
            for start, _ in gap.arcs:
                breaks.append(start % (2 * math.pi))
                maps.append(gap_maps[gid])
        if not breaks:
            breaks, maps = [0.0], [gap_maps[0]]
        return CircleMap(breaks, maps)

    def _map_at(self, angle: float) -> MobiusMap:
        a = angle % (2 * math.pi)
        i = bisect.bisect_right(self.breaks, a) - 1
        return self.maps[i]

    def __call__(self, angle: float) -> float:
        w = self._map_at(angle)(cmath.exp(1j * (angle % (2 * math.pi))))
        return math.atan2(w.imag, w.real) % (2 * math.pi)

    def apply_complex(self, angle: float):
        """Image of the boundary point as an extended complex number."""
        return self._map_at(angle)(cmath.exp(1j * (angle % (2 * math.pi))))


# ---------------------------------------------------------------------------
# earthquakes
# ---------------------------------------------------------------------------


@dataclass
class EarthquakeMap:
    """Left earthquake along a finite lamination, one disk Mobius per gap."""

    lamination: FiniteLamination
    base_gap: int
    complex_: GapComplex = field(repr=False)
    gap_maps: list[MobiusMap] = field(repr=False)

    def apply(self, p: PointH2) -> PointH2:
        g = self.complex_.gap_of(p)
        return PointH2(self.gap_maps[g](p.z))

    def gap_map(self, gap_id: int) -> MobiusMap:
        if not 0 <= gap_id < len(self.gap_maps):
            raise UnknownGap(f"gap id {gap_id} out of range")
        return self.gap_maps[gap_id]

    def boundary_map(self) -> CircleMap:
        return CircleMap.from_gap_maps(self.complex_, self.gap_maps)


def _leaf_endpoints_disk(g: GeodesicH2) -> tuple[complex, complex]:
    return g.a.z, g.b.z


def _foot_on_leaf(z: complex, polar: np.ndarray) -> complex:
    """Foot of the perpendicular from a disk point to the leaf."""
    P = point_vec(z)
    v = np.cross(polar, P)
    v[2] = -v[2]
    v = v / math.sqrt(abs(_mink_dot(v, v)))
    f = np.cross(polar, v)
    f[2] = -f[2]
    f = f / math.sqrt(abs(-_mink_dot(f, f)))
    if f[2] < 0:
        f = -f
    return complex(f[0], f[1]) / (1.0 + f[2])


def _left_shear_translation(leaf: GeodesicH2, polar: np.ndarray,
                            far_sample: complex, dist: float) -> MobiusMap:
    """Translation along the leaf moving the far side to its left.

    Standing on the leaf facing the far gap, that gap slides to the left
    (counterclockwise of the facing direction) for positive dist.
    """
    pa, pb = _leaf_endpoints_disk(leaf)
    m = _foot_on_leaf(far_sample, polar)
    facing = _initial_direction(m, far_sample)
    left = facing + math.pi / 2.0
    to_b = _initial_direction(m, pb)
    if math.cos(to_b - left) > 0:
        p, q = pa, pb
    else:
        p, q = pb, pa
    return MobiusMap.translation_along(p, q, dist)


def _earthquake_signed(lam: FiniteLamination, shears: list[float],
                       base) -> EarthquakeMap:
    complex_ = GapComplex(lam.leaves)
    base_id = complex_.resolve(base)
    paths, crossing = complex_.tree_paths(base_id)
    leaf_maps: dict[int, MobiusMap] = {}
    for i, leaf in enumerate(lam.leaves):
        _, child = crossing[i]
        far_sample = complex_.gaps[child].sample
        leaf_maps[i] = _left_shear_translation(
            leaf, complex_.polars[i], far_sample, shears[i]
        )
    gap_maps = []
    for g in range(len(complex_)):
        m = MobiusMap.identity()
        for leaf_idx in paths[g]:
            m = m.compose(leaf_maps[leaf_idx])
        gap_maps.append(m)
    return EarthquakeMap(lam, base_id, complex_, gap_maps)


def earthquake(lam: FiniteLamination, base=None) -> EarthquakeMap:
    """Left earthquake shearing by each leaf's weight, fixing the base gap."""
    validate(lam)
    return _earthquake_signed(lam, list(lam.weights), base)


# ---------------------------------------------------------------------------
# pleated planes
# ---------------------------------------------------------------------------


@dataclass
class PleatedPlane:
    """Bent isometric image of the disk in upper half-space.

    The base gap lands in the vertical plane over the real axis; each other
    gap is moved by the ordered composition of rotations, one per leaf
    separating it from the base, about the flat image of that leaf.
    """

    lamination: FiniteLamination
    base_gap: int
    complex_: GapComplex = field(repr=False)
    gap_maps: list[MobiusMap] = field(repr=False)

    def apply(self, p: PointH2) -> PointH3:
        g = self.complex_.gap_of(p)
        return poincare_extension(self.gap_maps[g], disk_to_halfspace(p.z))

    def gap_map(self, gap_id: int) -> MobiusMap:
        if not 0 <= gap_id < len(self.gap_maps):
            raise UnknownGap(f"gap id {gap_id} out of range")
        return self.gap_maps[gap_id]

    def boundary_map(self) -> CircleMap:
        cay = MobiusMap.cayley_disk_to_uhp()
        return CircleMap.from_gap_maps(
            self.complex_, [m.compose(cay) for m in self.gap_maps]
        )

    def boundary(self, angle: float):
        """Ideal boundary trace: image of the disk boundary point on the sphere."""
        return self.boundary_map().apply_complex(angle)

    def faces(self) -> list[dict]:
        """Supporting plane and boundary arcs of each gap image."""
        from .mobius import CircleOrLine

        real_line = CircleOrLine.real_line()
        out = []
        for gid, gap in enumerate(self.complex_.gaps):
            circ = real_line.mobius_image(self.gap_maps[gid])
            out.append({"gap": gid, "circle": circ, "arcs": list(gap.arcs)})
        return out


def _bend_rotation(leaf: GeodesicH2, far_sample: complex, angle: float) -> MobiusMap:
    """Rotation about the flat image of the leaf tipping its far side to y > 0."""
    a = disk_boundary_to_real(leaf.a.angle)
    b = disk_boundary_to_real(leaf.b.angle)
    probe = MobiusMap.rotation_about(a, b, 1e-3)
    y = poincare_extension(probe, disk_to_halfspace(far_sample)).y
    sign = 1.0 if y > 0 else -1.0
    return MobiusMap.rotation_about(a, b, sign * angle)


def _pleat_signed(lam: FiniteLamination, bends: list[float], base) -> PleatedPlane:
    complex_ = GapComplex(lam.leaves)
    base_id = complex_.resolve(base)
    paths, crossing = complex_.tree_paths(base_id)
    leaf_maps: dict[int, MobiusMap] = {}
    for i, leaf in enumerate(lam.leaves):
        _, child = crossing[i]
        far_sample = complex_.gaps[child].sample
        leaf_maps[i] = _bend_rotation(leaf, far_sample, bends[i])
    gap_maps = []
    for g in range(len(complex_)):
        m = MobiusMap.identity()
        for leaf_idx in paths[g]:
            m = m.compose(leaf_maps[leaf_idx])
        gap_maps.append(m)
    return PleatedPlane(lam, base_id, complex_, gap_maps)


def pleat(lam: FiniteLamination, base=None) -> PleatedPlane:
    """Convex pleated plane bending by each leaf's weight across the base gap."""
    validate(lam)
    return _pleat_signed(lam, list(lam.weights), base)


# ---------------------------------------------------------------------------
# complex earthquakes
# ---------------------------------------------------------------------------


@dataclass
class ComplexEarthquake:
    """Earthquake by Re(z) mu followed by bending by Im(z) times the image.

    Built as the pleated plane along the pushed-forward lamination after the
    real earthquake; agrees with a pure bend at Re(z) = 0 and with a plane
    earthquake at Im(z) = 0.
    """

    lamination: FiniteLamination
    z: complex
    quake: EarthquakeMap
    plane: PleatedPlane

    def apply(self, p: PointH2) -> PointH3:
        return self.plane.apply(self.quake.apply(p))

    def boundary(self, angle: float):
        return self.plane.boundary(self.quake.boundary_map()(angle))


def complex_earthquake(lam: FiniteLamination, z: complex, base=None) -> ComplexEarthquake:
    validate(lam)
    x, y = z.real, z.imag
    quake = _earthquake_signed(lam, [x * w for w in lam.weights], base)
    bm = quake.boundary_map()
    pushed_leaves = [
        GeodesicH2.from_angles(bm(g.a.angle), bm(g.b.angle)) for g in lam.leaves
    ]
    pushed = FiniteLamination(pushed_leaves, list(lam.weights))
    base_sample = quake.complex_.gaps[quake.base_gap].sample
    plane = _pleat_signed(pushed, [y * w for w in lam.weights], base_sample)
    return ComplexEarthquake(lam, complex(z), quake, plane)


# ---------------------------------------------------------------------------
# the parameter region of guaranteed embeddings
# ---------------------------------------------------------------------------


def shear_reach(L: float, x: float) -> float:
    """min(asinh(e^{|x|} sinh L), e^{|x|/2} sinh L)."""
    return min(
        math.asinh(math.exp(abs(x)) * math.sinh(L)),
        math.exp(abs(x) / 2.0) * math.sinh(L),
    )


@dataclass(frozen=True)
class T0Region:
    """Parameters x + iy with |y| < c2 / ceil(shear_reach(1, x))."""

    c2: float = 0.73

    def contains(self, t: complex) -> bool:
        t = complex(t)
        return abs(t.imag) < self.c2 / math.ceil(shear_reach(1.0, t.real))


def in_T0(t: complex, c2: float = 0.73) -> bool:
    return T0Region(c2).contains(t)


# ---------------------------------------------------------------------------
# embedding diagnostics
# ---------------------------------------------------------------------------


@dataclass
class EmbeddingReport:
    samples: int
    min_ratio: float
    max_ratio: float
    near_collisions: int


def embedding_check(plane: PleatedPlane, samples: int = 10**4,
                    seed: int = 0, radius: float = 3.0) -> EmbeddingReport:
    """Sample point pairs and compare image distance to source distance.

    A ratio bounded away from zero over many pairs is evidence of an
    embedding; near-collisions (tiny image distance at macroscopic source
    distance) witness a failure.
    """
    rng = np.random.default_rng(seed)
    u = rng.uniform(0.0, 1.0, size=(2, samples))
    r = np.arccosh(1.0 + u * (math.cosh(radius) - 1.0))
    phi = rng.uniform(0.0, 2 * math.pi, size=(2, samples))
    zs = np.tanh(r / 2.0) * np.exp(1j * phi)
    min_ratio, max_ratio = math.inf, 0.0
    collisions = 0
    for z1, z2 in zip(zs[0], zs[1]):
        d2 = dist_h2(z1, z2)
        if d2 < 1e-6:
            continue
        p1 = PointH2(z1)
        p2 = PointH2(z2)
        d3 = dist_h3(plane.apply(p1), plane.apply(p2))
        ratio = d3 / d2
        min_ratio = min(min_ratio, ratio)
        max_ratio = max(max_ratio, ratio)
        if d3 < 1e-8 and d2 > 1e-3:
            collisions += 1
    return EmbeddingReport(samples, min_ratio, max_ratio, collisions)

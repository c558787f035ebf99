"""Fractional-linear transformations of the Riemann sphere and circles on it.

A MobiusMap is the isometry currency of the whole engine: it acts on the
extended complex plane, and (via the Poincare extension in
:mod:`domekit.hyperbolic`) on upper half-space.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import DegenerateMobius

#: Sentinel for the point at infinity on the Riemann sphere.
INF = complex(math.inf, 0.0)

_DET_TOL = 1e-12


def is_inf(z) -> bool:
    return z == INF or (isinstance(z, complex) and not cmath.isfinite(z))


def chordal_distance(z, w) -> float:
    """Distance between two extended-complex points on the unit sphere."""
    if is_inf(z) and is_inf(w):
        return 0.0
    if is_inf(z):
        return 2.0 / math.sqrt(1.0 + abs(w) ** 2)
    if is_inf(w):
        return 2.0 / math.sqrt(1.0 + abs(z) ** 2)
    return 2.0 * abs(z - w) / math.sqrt((1.0 + abs(z) ** 2) * (1.0 + abs(w) ** 2))


class MobiusMap:
    """z -> (a z + b) / (c z + d), normalized to determinant 1 (up to sign)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        a, b, c, d = complex(a), complex(b), complex(c), complex(d)
        det = a * d - b * c
        if abs(det) < _DET_TOL * max(abs(a), abs(b), abs(c), abs(d), 1.0) ** 2:
            raise DegenerateMobius(f"determinant {det} too small")
        s = cmath.sqrt(det)
        self.a, self.b, self.c, self.d = a / s, b / s, c / s, d / s

    # -- algebra ---------------------------------------------------------

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """self after other (matrix product self @ other)."""
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return self.compose(other)

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def trace(self) -> complex:
        return self.a + self.d

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def is_identity(self, tol: float = 1e-9) -> bool:
        m = self.matrix()
        return min(
            float(np.abs(m - np.eye(2)).max()), float(np.abs(m + np.eye(2)).max())
        ) < tol

    # -- action ----------------------------------------------------------

    def __call__(self, z):
        """Apply to an extended complex number; total on the sphere."""
        if is_inf(z):
            if self.c == 0:
                return INF
            return self.a / self.c
        num = self.a * z + self.b
        den = self.c * z + self.d
        if den == 0:
            return INF
        return num / den

    def apply_array(self, z: np.ndarray) -> np.ndarray:
        """Vectorized action on finite complex arrays (poles map to inf)."""
        num = self.a * z + self.b
        den = self.c * z + self.d
        with np.errstate(divide="ignore", invalid="ignore"):
            out = num / den
        return out

    def __repr__(self):
        return f"MobiusMap({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"

    # -- constructors ------------------------------------------------------

    @staticmethod
    def identity() -> "MobiusMap":
        return MobiusMap(1, 0, 0, 1)

    @staticmethod
    def to_zero_one_inf(z1, z2, z3) -> "MobiusMap":
        """The unique map sending (z1, z2, z3) to (0, 1, inf)."""
        if is_inf(z1):
            return MobiusMap(0, z2 - z3, 1, -z3)
        if is_inf(z2):
            return MobiusMap(1, -z1, 1, -z3)
        if is_inf(z3):
            return MobiusMap(1, -z1, 0, z2 - z1)
        return MobiusMap(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))

    @staticmethod
    def from_three_points(src, dst) -> "MobiusMap":
        """Map the triple src = (z1,z2,z3) to dst = (w1,w2,w3)."""
        return MobiusMap.to_zero_one_inf(*dst).inverse().compose(
            MobiusMap.to_zero_one_inf(*src)
        )

    @staticmethod
    def to_zero_inf(p, q) -> "MobiusMap":
        """Some map sending p to 0 and q to inf (normalization free)."""
        if is_inf(p):
            return MobiusMap(0, 1, 1, -q)
        if is_inf(q):
            return MobiusMap(1, -p, 0, 1)
        return MobiusMap(1, -p, 1, -q)

    @staticmethod
    def scaling(w) -> "MobiusMap":
        return MobiusMap(w, 0, 0, 1)

    @staticmethod
    def translation_along(p, q, dist: float) -> "MobiusMap":
        """Hyperbolic translation with axis (p, q), by dist toward q.

        If p, q lie on a circle, that circle (and both disks it bounds)
        is preserved.
        """
        s = MobiusMap.to_zero_inf(p, q)
        half = math.exp(dist / 2.0)
        return s.inverse().compose(MobiusMap(half, 0, 0, 1.0 / half)).compose(s)

    @staticmethod
    def rotation_about(p, q, angle: float) -> "MobiusMap":
        """Elliptic map with fixed points p, q; angle signed by the (p, q) order."""
        s = MobiusMap.to_zero_inf(p, q)
        half = cmath.exp(1j * angle / 2.0)
        return s.inverse().compose(MobiusMap(half, 0, 0, 1.0 / half)).compose(s)

    @staticmethod
    def cayley_disk_to_uhp() -> "MobiusMap":
        """Unit disk -> upper half plane, 0 -> i, 1 -> inf, -1 -> 0."""
        return MobiusMap(1j, 1j, -1, 1)


def random_disk_mobius(rng: np.random.Generator) -> MobiusMap:
    """Random Mobius map preserving the unit disk (SU(1,1) form)."""
    t = rng.uniform(0, 2 * math.pi)
    phi = rng.uniform(0, 2 * math.pi)
    r = rng.uniform(0, 2.0)
    b = r * cmath.exp(1j * phi)
    a = math.sqrt(1 + r * r) * cmath.exp(1j * t)
    return MobiusMap(a, b, b.conjugate(), a.conjugate())


def random_mobius(rng: np.random.Generator) -> MobiusMap:
    """Random normalized Mobius map (rejection on near-degenerate draws)."""
    while True:
        m = rng.normal(size=4) + 1j * rng.normal(size=4)
        try:
            return MobiusMap(*m)
        except DegenerateMobius:
            continue


class CircleOrLine:
    """Circle or line on the Riemann sphere, as a Hermitian form.

    Stored as (A, B, C) with A, C real and B complex; the locus is
    A |z|^2 + B conj(z) + conj(B) z + C = 0, with infinity on the locus
    iff A = 0 (a line).  Real circles require |B|^2 - A C > 0.
    """

    __slots__ = ("A", "B", "C")

    def __init__(self, A: float, B: complex, C: float):
        A, B, C = float(A), complex(B), float(C)
        norm = math.sqrt(A * A + 2 * abs(B) ** 2 + C * C)
        if norm == 0:
            raise ValueError("zero Hermitian form")
        if abs(B) ** 2 - A * C <= 0:
            raise ValueError("form has no real locus")
        # canonical scale and sign, so equal circles compare equal
        A, B, C = A / norm, B / norm, C / norm
        for lead in (A, B.real, B.imag, C):
            if abs(lead) > 1e-13:
                if lead < 0:
                    A, B, C = -A, -B, -C
                break
        self.A, self.B, self.C = A, B, C

    # -- constructors ----------------------------------------------------

    @staticmethod
    def circle(center: complex, radius: float) -> "CircleOrLine":
        if radius <= 0:
            raise ValueError("radius must be positive")
        return CircleOrLine(1.0, -center, abs(center) ** 2 - radius**2)

    @staticmethod
    def line_through(p: complex, q: complex) -> "CircleOrLine":
        """Line through two finite points."""
        d = q - p
        if d == 0:
            raise ValueError("points coincide")
        b = 1j * d / abs(d)
        c = -(b * p.conjugate() + b.conjugate() * p).real
        return CircleOrLine(0.0, b, c)

    @staticmethod
    def unit_circle() -> "CircleOrLine":
        return CircleOrLine(1.0, 0.0, -1.0)

    @staticmethod
    def real_line() -> "CircleOrLine":
        return CircleOrLine(0.0, 0.5j, 0.0)

    @staticmethod
    def through_points(z1, z2, z3) -> "CircleOrLine":
        """Circle or line through three distinct extended-complex points."""
        rows = []
        for z in (z1, z2, z3):
            if is_inf(z):
                rows.append([1.0, 0.0, 0.0, 0.0])
            else:
                rows.append([abs(z) ** 2, 2 * z.real, 2 * z.imag, 1.0])
        _, _, vt = np.linalg.svd(np.array(rows))
        A, br, bi, C = vt[-1]
        return CircleOrLine(A, complex(br, bi), C)

    # -- queries -----------------------------------------------------------

    @property
    def is_line(self) -> bool:
        return abs(self.A) < 1e-12

    def center_radius(self) -> tuple[complex, float]:
        if self.is_line:
            raise ValueError("a line has no finite center")
        c = -self.B / self.A
        r2 = (abs(self.B) ** 2 - self.A * self.C) / self.A**2
        return c, math.sqrt(r2)

    def evaluate(self, z) -> float:
        """Signed value of the Hermitian form at z (0 on the locus)."""
        if is_inf(z):
            return self.A
        return (
            self.A * abs(z) ** 2 + 2 * (self.B.conjugate() * z).real + self.C
        )

    def contains(self, z, tol: float = 1e-9) -> bool:
        if is_inf(z):
            return abs(self.A) < tol
        scale = max(1.0, abs(z) ** 2)
        return abs(self.evaluate(z)) < tol * scale

    def mobius_image(self, m: MobiusMap) -> "CircleOrLine":
        """Image circle under a Mobius map (pullback by the inverse)."""
        n = m.inverse()
        H = np.array(
            [[self.A, self.B], [self.B.conjugate(), self.C]], dtype=complex
        )
        N = n.matrix()
        Hp = N.conjugate().T @ H @ N
        return CircleOrLine(Hp[0, 0].real, Hp[0, 1], Hp[1, 1].real)

    def close_to(self, other: "CircleOrLine", tol: float = 1e-8) -> bool:
        return (
            abs(self.A - other.A) < tol
            and abs(self.B - other.B) < tol
            and abs(self.C - other.C) < tol
        )

    def intersect(self, other: "CircleOrLine") -> list:
        """Intersection points with another circle/line (possibly incl. INF)."""
        pts = []
        if self.is_line and other.is_line:
            # both pass through infinity
            pts.append(INF)
            a1, c1 = self.B, self.C
            a2, c2 = other.B, other.C
            # solve 2 Re(conj(B) z) + C = 0 for both
            M = np.array(
                [[2 * a1.real, 2 * a1.imag], [2 * a2.real, 2 * a2.imag]]
            )
            rhs = np.array([-c1, -c2])
            if abs(np.linalg.det(M)) < 1e-14:
                return pts  # parallel lines: tangent at infinity
            xy = np.linalg.solve(M, rhs)
            pts.append(complex(xy[0], xy[1]))
            return pts
        if self.is_line or other.is_line:
            line, circ = (self, other) if self.is_line else (other, self)
            c, r = circ.center_radius()
            # line: 2 Re(conj(B) z) + C = 0; unit normal n, distance from c
            n = line.B / abs(line.B)
            d = (2 * (line.B.conjugate() * c).real + line.C) / (2 * abs(line.B))
            foot = c - d * n
            h2 = r * r - d * d
            if h2 < -1e-14 * r * r:
                return []
            h = math.sqrt(max(h2, 0.0))
            t = 1j * n
            return [foot + h * t, foot - h * t]
        c1, r1 = self.center_radius()
        c2, r2 = other.center_radius()
        d = abs(c2 - c1)
        if d < 1e-15:
            return []
        x = (d * d + r1 * r1 - r2 * r2) / (2 * d)
        h2 = r1 * r1 - x * x
        if h2 < -1e-12 * r1 * r1:
            return []
        h = math.sqrt(max(h2, 0.0))
        u = (c2 - c1) / d
        base = c1 + x * u
        return [base + h * 1j * u, base - h * 1j * u]

    def __repr__(self):
        if self.is_line:
            return f"CircleOrLine(line, B={self.B:.6g}, C={self.C:.6g})"
        c, r = self.center_radius()
        return f"CircleOrLine(center={c:.6g}, radius={r:.6g})"

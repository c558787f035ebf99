"""Grid estimation of the complex dilatation of a sampled map.

Central-difference Wirtinger derivatives give the Beltrami coefficient
mu = f_zbar / f_z per cell and the dilatation K = (1 + |mu|) / (1 - |mu|).
This is the verification instrument for the analytic dilatation of crescent
scalings and radial power maps between annuli.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .crescents import AngleScaling, scaling_dilatation
from .errors import EmptyField, NonpositiveInput
from .mobius import MobiusMap

DEGENERATE_REL_TOL = 1e-10


@dataclass
class GridSample:
    """Map values sampled on a uniform rectangular grid.

    values[j, i] is the image of x0 + i*h + 1j*(y0 + j*h); masked cells are
    excluded from statistics.
    """

    x0: float
    y0: float
    h: float
    values: np.ndarray
    mask: np.ndarray | None = None

    def __post_init__(self):
        if self.mask is None:
            self.mask = np.ones(self.values.shape, dtype=bool)

    @property
    def shape(self):
        return self.values.shape

    def cell_location(self, j: int, i: int) -> complex:
        return complex(self.x0 + i * self.h, self.y0 + j * self.h)

    @staticmethod
    def from_function(f, x0: float, x1: float, y0: float, y1: float,
                      n: int, mask_fn=None) -> "GridSample":
        """Sample f on an n-column grid with square cells."""
        h = (x1 - x0) / (n - 1)
        ny = int(round((y1 - y0) / h)) + 1
        xs = x0 + h * np.arange(n)
        ys = y0 + h * np.arange(ny)
        Z = xs[None, :] + 1j * ys[:, None]
        values = f(Z)
        mask = mask_fn(Z) if mask_fn is not None else np.ones(Z.shape, bool)
        return GridSample(x0, y0, h, np.asarray(values, complex), mask)


@dataclass
class BeltramiField:
    """Estimated complex dilatation field of a grid sample."""

    grid: GridSample
    mu: np.ndarray
    K: np.ndarray
    valid: np.ndarray
    degenerate: np.ndarray
    orientation_reversing: np.ndarray


def beltrami_estimate(grid: GridSample) -> BeltramiField:
    """Second-order central differences; boundary and mask-adjacent cells drop."""
    v = grid.values
    h = grid.h
    ny, nx = v.shape
    fx = np.full_like(v, np.nan)
    fy = np.full_like(v, np.nan)
    fx[:, 1:-1] = (v[:, 2:] - v[:, :-2]) / (2 * h)
    fy[1:-1, :] = (v[2:, :] - v[:-2, :]) / (2 * h)
    m = grid.mask
    valid = np.zeros_like(m)
    valid[1:-1, 1:-1] = (
        m[1:-1, 1:-1]
        & m[1:-1, 2:] & m[1:-1, :-2]
        & m[2:, 1:-1] & m[:-2, 1:-1]
    )
    fz = (fx - 1j * fy) / 2.0
    fzb = (fx + 1j * fy) / 2.0
    scale = np.nanmax(np.abs(np.where(valid, fz, np.nan))) if valid.any() else 1.0
    degenerate = valid & (np.abs(fz) < DEGENERATE_REL_TOL * max(scale, 1e-300))
    with np.errstate(divide="ignore", invalid="ignore"):
        mu = np.where(valid & ~degenerate, fzb / np.where(fz == 0, 1, fz), np.nan)
        orientation_reversing = valid & ~degenerate & (np.abs(mu) >= 1.0)
        orientation_reversing |= degenerate & (np.abs(fzb) > 0)
        K = (1.0 + np.abs(mu)) / (1.0 - np.abs(mu))
    return BeltramiField(grid, mu, K, valid, degenerate, orientation_reversing)


@dataclass
class DilatationStats:
    sup: float
    sup_cell: tuple[int, int]
    sup_location: complex
    mean: float
    quantiles: dict
    n_cells: int


def dilatation_stats(field: BeltramiField) -> DilatationStats:
    """Statistics of K over usable cells; the sup comes with its location."""
    usable = field.valid & ~field.degenerate & ~field.orientation_reversing
    if not usable.any():
        raise EmptyField("no usable cells")
    K = np.where(usable, field.K, -np.inf)
    j, i = np.unravel_index(int(np.argmax(K)), K.shape)
    vals = field.K[usable]
    return DilatationStats(
        sup=float(K[j, i]),
        sup_cell=(int(j), int(i)),
        sup_location=field.grid.cell_location(int(j), int(i)),
        mean=float(vals.mean()),
        quantiles={q: float(np.quantile(vals, q)) for q in (0.5, 0.9, 0.99)},
        n_cells=int(usable.sum()),
    )


# ---------------------------------------------------------------------------
# analytic fixtures
# ---------------------------------------------------------------------------


def identity_sample(n: int = 128) -> GridSample:
    return GridSample.from_function(lambda z: z, 0.0, 1.0, 0.0, 1.0, n)


def affine_sample(n: int = 128) -> GridSample:
    """f(x + iy) = 2x + iy: mu = 1/3, K = 2 exactly."""
    return GridSample.from_function(
        lambda z: 2 * z.real + 1j * z.imag, 0.0, 1.0, 0.0, 1.0, n
    )


def conjugation_sample(n: int = 128) -> GridSample:
    return GridSample.from_function(np.conj, 0.0, 1.0, 0.0, 1.0, n)


def power_map_sample(alpha: float, n: int = 512, r0: float = 1.0,
                     r1: float = 2.0) -> GridSample:
    """Radial power map r e^{i t} -> r^alpha e^{i t} on a masked annulus.

    |mu| = |alpha - 1| / (alpha + 1), so sup K = max(alpha, 1/alpha).
    """
    if alpha <= 0:
        raise NonpositiveInput("alpha must be positive")

    def f(z):
        r = np.abs(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(r > 0, z * r ** (alpha - 1.0), 0.0)
        return out

    return GridSample.from_function(
        f, -r1, r1, -r1, r1, n,
        mask_fn=lambda z: (np.abs(z) > r0) & (np.abs(z) < r1),
    )


def mobius_sample(m: MobiusMap, n: int = 512, x0: float = 0.0, x1: float = 1.0,
                  y0: float = 0.0, y1: float = 1.0) -> GridSample:
    return GridSample.from_function(m.apply_array, x0, x1, y0, y1, n)


def far_pole_mobius() -> MobiusMap:
    """Mobius fixture with pole ~100 domain-widths away.

    On the unit square with h ~ 1/512 the central-difference bias
    h^2 |f'''/f'| / 6 ~ 1e-9 sits below the 1e-8 conformality tolerance.
    """
    return MobiusMap(1.0, 0.5j, 0.01, 1.0)


def near_pole_mobius() -> MobiusMap:
    """Mobius fixture with pole at distance ~2: bias is visibly h^2."""
    return MobiusMap(1.0, 0.0, 0.5, 1.0 + 2.0j)


# ---------------------------------------------------------------------------
# verifications against closed forms
# ---------------------------------------------------------------------------


@dataclass
class ScalingCheck:
    w: complex
    theta: float
    n: int
    analytic_K: float
    grid_sup_K: float
    max_abs_deviation: float
    quasiregular_bound: float | None = None


def verify_scaling_dilatation(w: complex, theta: float, n: int = 512,
                              r0: float = 0.45, r1: float = 1.0,
                              t: complex | None = None,
                              t0: complex | None = None) -> ScalingCheck:
    """Grid-estimate the dilatation of the angle scaling and compare.

    The scaling is sampled directly on the wedge sector r0 < |z| < r1,
    0 <= arg z <= theta, with cells within 2h of a wedge edge masked,
    mirroring how composite maps jump across bending lines.  The inner
    radius keeps the angular derivatives resolvable at the grid spacing.
    """
    scaling = AngleScaling(w, theta)
    analytic = scaling_dilatation(scaling)

    from .crescents import angle_scale_array

    x_lo = min(0.0, r1 * math.cos(min(theta, math.pi)))
    h = (r1 - x_lo) / (n - 1)

    def mask(z):
        r = np.abs(z)
        ang = np.angle(z) % (2 * math.pi)
        d_edge1 = z.imag  # distance to the positive real axis edge
        d_edge2 = r * np.sin(np.maximum(theta - ang, 0.0))
        return (
            (r > r0) & (r < r1)
            & (ang < theta) & (d_edge1 > 2 * h) & (d_edge2 > 2 * h)
        )

    grid = GridSample.from_function(
        lambda z: angle_scale_array(scaling, z), x_lo, r1, 0.0,
        r1 * math.sin(min(theta, math.pi / 2)) if theta < math.pi else r1,
        n, mask_fn=mask,
    )
    field = beltrami_estimate(grid)
    stats = dilatation_stats(field)
    usable = field.valid & ~field.degenerate & ~field.orientation_reversing
    dev = float(np.max(np.abs(field.K[usable] - analytic)))
    qb = None
    if t is not None and t0 is not None:
        from .crescents import quasiregular_bound

        qb = quasiregular_bound(t, t0)
    return ScalingCheck(w, theta, n, analytic, stats.sup, dev, qb)


@dataclass
class AnnulusExtremalCheck:
    s: float
    alpha: float
    n: int
    analytic_K: float
    grid_sup_K: float
    max_abs_deviation: float
    target_modulus: float


def extremal_alpha(s: float) -> float:
    """Power exponent sending the annulus onto one with its dome's modulus."""
    return math.pi * math.sinh(s / 2.0) / s


def annulus_extremal_check(s: float, alpha: float, n: int = 512) -> AnnulusExtremalCheck:
    """Dilatation of the radial power map between round annuli.

    Sampled in the log chart, where the annulus of modulus s/2pi is the
    rectangle [0, s] x [0, 2 pi) and the power map is zeta -> alpha Re zeta
    + i Im zeta.  sup K must come out max(alpha, 1/alpha); with
    alpha = extremal_alpha(s) the target annulus has the dome's modulus
    sinh(s/2)/2, so reaching it inside this family costs K(s).
    """
    if s <= 0 or alpha <= 0:
        raise NonpositiveInput("s and alpha must be positive")
    analytic = max(alpha, 1.0 / alpha)
    h = s / (n - 1)

    def g(zeta):
        return np.exp(alpha * zeta.real + 1j * zeta.imag)

    ny = int(round(2 * math.pi / h)) + 1
    xs = h * np.arange(n)
    ys = h * np.arange(ny)
    Z = xs[None, :] + 1j * ys[:, None]
    grid = GridSample(0.0, 0.0, h, g(Z))
    field = beltrami_estimate(grid)
    stats = dilatation_stats(field)
    usable = field.valid & ~field.degenerate & ~field.orientation_reversing
    dev = float(np.max(np.abs(field.K[usable] - analytic)))
    return AnnulusExtremalCheck(
        s, alpha, n, analytic, stats.sup, dev, alpha * s / (2 * math.pi)
    )

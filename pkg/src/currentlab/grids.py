"""Discretized flat torus with exact spectral calculus, plus a circle grid.

The torus C/(Z + tau Z) is sampled on an n x n lattice in lattice
coordinates (u, v) in [0,1)^2, z = u + tau v. For band-limited fields the
trigonometric interpolant is exact, so derivatives, integrals, cycle
integrals and wedge integrals below are exact up to rounding; analytic
identities (integration by parts, exactness of df, dd = 0) then hold at
machine precision and become sharp tests.

Cartesian derivatives relate to lattice ones by the chain rule
    d/dx = d/du,   d/dy = (d/dv - Re(tau) d/du) / Im(tau),
which collapses to plain (d/du, d/dv) on the default square torus tau = i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np


class GridError(ValueError):
    pass


@dataclass(frozen=True)
class TorusGrid:
    """Uniform n x n grid on the torus, with the two cut lines.

    cut_x is the u-coordinate of the cut along the cycle gamma2 (image of
    the tau axis); cut_y is the v-coordinate of the cut along gamma1 (image
    of the real axis). Both must be grid-aligned.
    """

    n: int
    lattice_tau: complex = 1j
    cut_x: float = 0.0
    cut_y: float = 0.0

    def __post_init__(self):
        if self.n < 8 or self.n % 2:
            raise GridError("n must be even and >= 8")
        if self.lattice_tau.imag <= 0:
            raise GridError("Im(lattice_tau) must be positive")
        for c in (self.cut_x, self.cut_y):
            if abs(round(c * self.n) - c * self.n) > 1e-12:
                raise GridError("cuts must be grid-aligned (multiples of 1/n)")

    @property
    def area(self) -> float:
        return self.lattice_tau.imag

    @property
    def coords(self):
        s = np.arange(self.n) / self.n
        return np.meshgrid(s, s, indexing="ij")

    @property
    def freq(self) -> np.ndarray:
        return np.fft.fftfreq(self.n, 1.0 / self.n)

    def col_of_cut_x(self) -> int:
        return int(round(self.cut_x * self.n)) % self.n

    def row_of_cut_y(self) -> int:
        return int(round(self.cut_y * self.n)) % self.n

    @staticmethod
    def from_json_dict(doc: dict) -> "TorusGrid":
        tau = doc.get("lattice_tau", [0.0, 1.0])
        return TorusGrid(
            n=int(doc.get("n", 64)),
            lattice_tau=complex(tau[0], tau[1]),
            cut_x=float(doc.get("cut_x", 0.0)),
            cut_y=float(doc.get("cut_y", 0.0)),
        )

    @staticmethod
    def load_json(path) -> "TorusGrid":
        with open(path) as fh:
            return TorusGrid.from_json_dict(json.load(fh))


@dataclass
class ScalarGrid:
    """Sampled scalar function on a TorusGrid with a bandwidth tag.

    bandwidth is the largest retained |frequency| per axis; pointwise
    products add bandwidths, which callers use to keep quadrature exact.
    """

    grid: TorusGrid
    values: np.ndarray
    bandwidth: int = field(default=0)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid.n, self.grid.n):
            raise GridError("values shape does not match grid")
        if self.bandwidth > self.grid.n // 2 - 1:
            raise GridError("bandwidth exceeds n/2 - 1")

    def copy_with(self, values, bandwidth=None):
        return ScalarGrid(self.grid, values, self.bandwidth if bandwidth is None else bandwidth)


def constant_grid(grid: TorusGrid, value: complex) -> ScalarGrid:
    return ScalarGrid(grid, np.full((grid.n, grid.n), value, dtype=complex), 0)


def _lattice_derivative(grid: TorusGrid, values: np.ndarray, axis: int) -> np.ndarray:
    k = grid.freq
    shape = [1, 1]
    shape[axis] = grid.n
    mult = (2j * np.pi * k).reshape(shape)
    return np.fft.ifft2(np.fft.fft2(values) * mult)


def spectral_derivative(f: ScalarGrid, direction: str) -> ScalarGrid:
    """Exact derivative of the trigonometric interpolant, d/dx or d/dy."""
    g = f.grid
    du = _lattice_derivative(g, f.values, 0)
    if direction == "x":
        out = du
    elif direction == "y":
        dv = _lattice_derivative(g, f.values, 1)
        out = (dv - g.lattice_tau.real * du) / g.lattice_tau.imag
    else:
        raise GridError(f"direction must be 'x' or 'y', got {direction!r}")
    return f.copy_with(out)


def integrate(f: ScalarGrid) -> complex:
    """Integral over the torus: mean of samples times the fundamental-domain
    area. Exact for trigonometric polynomials of bandwidth < n."""
    return complex(f.values.mean() * f.grid.area)


def cycle_integral(fx: ScalarGrid, fy: ScalarGrid, cycle: str) -> complex:
    """Line integral of the one-form fx dx + fy dy along gamma1 or gamma2.

    gamma1 runs along the cut at v = cut_y in the +u direction (so the
    period of dx over gamma1 is +1); gamma2 runs along u = cut_x in the +v
    direction. Periodic trapezoid = plain mean along the line.
    """
    g = fx.grid
    tau = g.lattice_tau
    if cycle == "gamma1":
        row = g.row_of_cut_y()
        return complex(fx.values[:, row].mean())
    if cycle == "gamma2":
        col = g.col_of_cut_x()
        line = fx.values[col, :] * tau.real + fy.values[col, :] * tau.imag
        return complex(line.mean())
    raise GridError(f"cycle must be 'gamma1' or 'gamma2', got {cycle!r}")


def wedge_integrate(fx: ScalarGrid, fy: ScalarGrid, gx: ScalarGrid, gy: ScalarGrid) -> complex:
    """Integral of (fx dx + fy dy) ^ (gx dx + gy dy) with dx^dy > 0."""
    w = fx.values * gy.values - fy.values * gx.values
    return complex(w.mean() * fx.grid.area)


@dataclass(frozen=True)
class CircleGrid:
    """Uniform grid on S^1 with angles 2 pi j / m."""

    m: int

    def __post_init__(self):
        if self.m < 8:
            raise GridError("m must be >= 8")

    @property
    def theta(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.m) / self.m


def circle_derivative(circle: CircleGrid, values: np.ndarray) -> np.ndarray:
    """d/dtheta of the trigonometric interpolant, vectorized over trailing axes."""
    k = np.fft.fftfreq(circle.m, 1.0 / circle.m)
    shape = (circle.m,) + (1,) * (values.ndim - 1)
    return np.fft.ifft(np.fft.fft(values, axis=0) * (1j * k).reshape(shape), axis=0)


def circle_pair_integral(circle: CircleGrid, algebra, a: np.ndarray, b: np.ndarray) -> complex:
    """Loop pairing: integral over S^1 of <a, db/dtheta> dtheta.

    a, b are loops of algebra elements sampled as (m, dim) arrays.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape or a.shape[0] != circle.m:
        raise GridError("loops must share the circle grid")
    db = circle_derivative(circle, b)
    integrand = algebra.inner_grid(a, db)
    return complex(integrand.mean() * 2 * np.pi)

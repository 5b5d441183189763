"""Currents on the discrete torus and every central term of the theory.

A CurrentField samples a map from the torus into the complexified fiber
algebra. ComplexVectorField holds the two coefficient functions of a
(complex) vector field f d/dx + g d/dy; coefficients may carry jumps across
the two cut lines, represented exactly as sawtooth profiles so that
integrals against them stay spectrally exact (a sampled sawtooth would
poison the quadrature at O(1/n^2), far above the suite's tolerances).

Sign conventions, fixed once and verified by the operator tests:

* the one-field central term is
      c(a, b) = 2i [ (Z1 conj(b), Z2 a) - (Z1 conj(a), Z2 b) ],
  the sign chosen so that it equals the commutator defect
  [L(a), L(b)] - L([a,b]) of the Fock operators built from Y = Z1 + i Z2;
* the two-field central term is
      c(a, b) = (YL conj(b), YR a) - (YL conj(a), YR b),
  again equal to the operator defect with no extra factor;
* the boundary decomposition pairs the cycle integrals with weights
  (-hat_c1, +hat_c2): Stokes on the cut square induces opposite
  orientations on the two banks, and with gamma1 oriented so that the
  period of dx over it is +1, the gamma1 boundary term enters with the
  opposite sign. The weights are pinned numerically by the abelian oracle
  in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .grids import (
    CircleGrid,
    GridError,
    ScalarGrid,
    TorusGrid,
    circle_pair_integral,
    constant_grid,
    cycle_integral,
    spectral_derivative,
    wedge_integrate,
)
from .liealg import StructureAlgebra
from .rng import Lcg, coeff_table, sample_scalar, sample_vector, square_freqs

# gamma1 boundary term enters Stokes with orientation opposite to the
# +x-oriented cycle_integral convention; gamma2 with the same orientation.
BOUNDARY_WEIGHTS = (-1.0, +1.0)


# ---------------------------------------------------------------------------
# fields

@dataclass
class CurrentField:
    """Grid-sampled map torus -> complexified algebra, samples (n, n, dim)."""

    grid: TorusGrid
    algebra: StructureAlgebra
    samples: np.ndarray
    bandwidth: int = 0

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=complex)
        n = self.grid.n
        if self.samples.shape != (n, n, self.algebra.dim):
            raise GridError(
                f"samples must be {(n, n, self.algebra.dim)}, got {self.samples.shape}"
            )

    def conj(self) -> "CurrentField":
        """Fiberwise conjugation in the real structure-constant basis."""
        return CurrentField(self.grid, self.algebra, np.conj(self.samples), self.bandwidth)

    def derivative(self, direction: str) -> "CurrentField":
        comps = [
            spectral_derivative(ScalarGrid(self.grid, self.samples[..., k], 0), direction).values
            for k in range(self.algebra.dim)
        ]
        return CurrentField(self.grid, self.algebra, np.stack(comps, axis=-1), self.bandwidth)

    def __add__(self, other):
        _check_pair(self, other)
        return CurrentField(
            self.grid, self.algebra, self.samples + other.samples,
            max(self.bandwidth, other.bandwidth),
        )

    def __sub__(self, other):
        _check_pair(self, other)
        return CurrentField(
            self.grid, self.algebra, self.samples - other.samples,
            max(self.bandwidth, other.bandwidth),
        )

    def __rmul__(self, scalar):
        return CurrentField(self.grid, self.algebra, scalar * self.samples, self.bandwidth)

    def sup_norm(self) -> float:
        return float(np.abs(self.samples).max())


def _check_pair(a: CurrentField, b: CurrentField):
    if a.grid != b.grid:
        raise GridError("fields live on different grids")
    if a.algebra is not b.algebra and a.algebra != b.algebra:
        raise GridError("fields have different fiber algebras")


def constant_field(grid: TorusGrid, algebra: StructureAlgebra, element) -> CurrentField:
    samples = np.broadcast_to(
        np.asarray(element, dtype=complex), (grid.n, grid.n, algebra.dim)
    ).copy()
    return CurrentField(grid, algebra, samples, 0)


def pointwise_bracket(a: CurrentField, b: CurrentField) -> CurrentField:
    """Fiberwise Lie bracket [a, b](x) = [a(x), b(x)]."""
    _check_pair(a, b)
    out = a.algebra.bracket(a.samples, b.samples)
    bw = min(a.bandwidth + b.bandwidth, a.grid.n // 2 - 1)
    return CurrentField(a.grid, a.algebra, out, bw)


def l2_inner(a: CurrentField, b: CurrentField) -> complex:
    """Scalar product: integral of <conj(a), b> over the torus.

    Conjugate-linear in the first slot, linear in the second.
    """
    _check_pair(a, b)
    vals = a.algebra.inner_grid(np.conj(a.samples), b.samples)
    return complex(vals.mean() * a.grid.area)


# ---------------------------------------------------------------------------
# cut functions (sawtooth decomposition)

@dataclass
class CutFunction:
    """Function on the cut torus: smooth part + sawtooth jumps at the cuts.

    value(u, v) = smooth(u, v) + saw_u * frac(u - cut_x) + saw_v * frac(v - cut_y)

    The jump on crossing gamma2 (u wrapping) is -saw_u, on crossing gamma1
    (v wrapping) is -saw_v; both with respect to the positive direction of
    the dual cycle. The basepoint records where the defining path integral
    starts (value there is zero for functions built by build_phi).
    """

    grid: TorusGrid
    smooth: ScalarGrid
    saw_u: complex = 0.0
    saw_v: complex = 0.0
    basepoint: tuple = (None, None)

    @property
    def values(self) -> np.ndarray:
        u, v = self.grid.coords
        su = np.mod(u - self.grid.cut_x, 1.0)
        sv = np.mod(v - self.grid.cut_y, 1.0)
        return self.smooth.values + self.saw_u * su + self.saw_v * sv

    @property
    def jumps(self) -> dict:
        return {"gamma1": -self.saw_v, "gamma2": -self.saw_u}

    def conj(self) -> "CutFunction":
        return CutFunction(
            self.grid,
            self.smooth.copy_with(np.conj(self.smooth.values)),
            np.conj(self.saw_u),
            np.conj(self.saw_v),
            self.basepoint,
        )

    def derivative(self, direction: str) -> ScalarGrid:
        """Derivative away from the cuts (the sawtooth slope is 1 there)."""
        g = self.grid
        base = spectral_derivative(self.smooth, direction)
        # lattice-coordinate sawtooth slopes converted to cartesian derivatives
        if direction == "x":
            extra = self.saw_u
        else:
            extra = (self.saw_v - g.lattice_tau.real * self.saw_u) / g.lattice_tau.imag
        return base.copy_with(base.values + extra)


def _saw_fourier_sum(w: np.ndarray, axis: int, cut: float, bandwidth: int, n: int) -> complex:
    """Exact integral (d(u,v)-measure) of frac(coord - cut) * w for band-limited w."""
    wf = np.fft.fft2(w) / n**2
    total = 0.5 * wf[0, 0]
    for m in range(1, min(bandwidth, n // 2 - 1) + 1):
        for mm in (m, -m):
            c = wf[(-mm) % n, 0] if axis == 0 else wf[0, (-mm) % n]
            total += (1j / (2 * np.pi * mm)) * np.exp(-2j * np.pi * mm * cut) * c
    return complex(total)


def integrate_against_cut(phi: CutFunction, w: ScalarGrid) -> complex:
    """Exact integral of phi * w over the torus for band-limited w.

    The sawtooth factors are integrated via their Fourier series against the
    spectrum of w, so no sampled-discontinuity quadrature error enters.
    """
    g = phi.grid
    total = (phi.smooth.values * w.values).mean()
    bw = w.bandwidth + phi.smooth.bandwidth
    if phi.saw_u != 0:
        total += phi.saw_u * _saw_fourier_sum(w.values, 0, g.cut_x, bw, g.n)
    if phi.saw_v != 0:
        total += phi.saw_v * _saw_fourier_sum(w.values, 1, g.cut_y, bw, g.n)
    return complex(total * g.area)


# ---------------------------------------------------------------------------
# vector fields

Coefficient = Union[ScalarGrid, CutFunction]


@dataclass
class ComplexVectorField:
    """Vector field f d/dx + g d/dy with possibly cut coefficient functions."""

    f: Coefficient
    g: Coefficient

    @property
    def grid(self) -> TorusGrid:
        return self.f.grid

    @property
    def jumps(self) -> list:
        out = []
        for coeff in (self.f, self.g):
            if isinstance(coeff, CutFunction):
                out.extend((k, v) for k, v in coeff.jumps.items() if v != 0)
        return out

    def real_part(self) -> "ComplexVectorField":
        return ComplexVectorField(_coeff_real(self.f), _coeff_real(self.g))

    def imag_part(self) -> "ComplexVectorField":
        return ComplexVectorField(_coeff_imag(self.f), _coeff_imag(self.g))


def _coeff_real(c: Coefficient) -> Coefficient:
    if isinstance(c, CutFunction):
        raise GridError("real/imag split of cut coefficients is not supported")
    return c.copy_with(c.values.real.astype(complex))


def _coeff_imag(c: Coefficient) -> Coefficient:
    if isinstance(c, CutFunction):
        raise GridError("real/imag split of cut coefficients is not supported")
    return c.copy_with(c.values.imag.astype(complex))


def vector_field_from_constants(grid: TorusGrid, f: complex, g: complex) -> ComplexVectorField:
    return ComplexVectorField(constant_grid(grid, f), constant_grid(grid, g))


def apply_field(V: ComplexVectorField, a: CurrentField) -> CurrentField:
    """(V a)(x) = f(x) da/dx + g(x) da/dy, componentwise in the algebra basis.

    Cut coefficients are rejected here: results of applying a jumping field
    are not band-limited, and the exact-quadrature paths (cocycle_two_fields,
    integrate_against_cut) handle the jumps algebraically instead.
    """
    if isinstance(V.f, CutFunction) or isinstance(V.g, CutFunction):
        raise GridError("apply_field requires smooth coefficients")
    ax = a.derivative("x")
    ay = a.derivative("y")
    out = V.f.values[..., None] * ax.samples + V.g.values[..., None] * ay.samples
    bw = a.bandwidth + max(V.f.bandwidth, V.g.bandwidth)
    return CurrentField(a.grid, a.algebra, out, min(bw, a.grid.n // 2 - 1))


# ---------------------------------------------------------------------------
# central terms

def cocycle_real(Z1: ComplexVectorField, Z2: ComplexVectorField,
                 a: CurrentField, b: CurrentField) -> complex:
    """One-field central term for real vector fields and real-form currents.

    c(a, b) = 2i [ (Z1 b, Z2 a) - (Z1 a, Z2 b) ]; the sign is the one the
    operator commutator actually produces (verified in the Fock tests).
    """
    return cocycle_complex(Z1, Z2, a, b)


def cocycle_complex(Z1: ComplexVectorField, Z2: ComplexVectorField,
                    a: CurrentField, b: CurrentField) -> complex:
    """Central term on the complexified currents, conjugating first slots:

    c(a, b) = 2i [ (Z1 conj(b), Z2 a) - (Z1 conj(a), Z2 b) ].
    """
    t1 = l2_inner(apply_field(Z1, b.conj()), apply_field(Z2, a))
    t2 = l2_inner(apply_field(Z1, a.conj()), apply_field(Z2, b))
    return 2j * (t1 - t2)


def _coeff_pair_integral(cL: Coefficient, cR: Coefficient, w: ScalarGrid) -> complex:
    """Integral of conj(cL) * cR * w with at most one cut coefficient."""
    if isinstance(cL, CutFunction) and isinstance(cR, CutFunction):
        raise GridError("products of two cut coefficients are not supported")
    if isinstance(cL, CutFunction):
        cof = w.copy_with(cR.values * w.values, cR.bandwidth + w.bandwidth)
        return integrate_against_cut(cL.conj(), cof)
    if isinstance(cR, CutFunction):
        cof = w.copy_with(np.conj(cL.values) * w.values, cL.bandwidth + w.bandwidth)
        return integrate_against_cut(cR, cof)
    vals = np.conj(cL.values) * cR.values * w.values
    return complex(vals.mean() * w.grid.area)


def cocycle_two_fields(YL: ComplexVectorField, YR: ComplexVectorField,
                       a: CurrentField, b: CurrentField) -> complex:
    """Two-field central term c(a,b) = (YL conj(b), YR a) - (YL conj(a), YR b).

    Bilinear in (a, b) (scaling a by lambda scales c by lambda, not its
    conjugate). Expanded into coefficient products so cut coefficients are
    integrated exactly through their sawtooth spectra.
    """
    _check_pair(a, b)
    ax, ay = a.derivative("x"), a.derivative("y")
    bx, by = b.derivative("x"), b.derivative("y")
    alg = a.algebra
    bw = a.bandwidth + b.bandwidth

    def pairing(u: CurrentField, v: CurrentField) -> ScalarGrid:
        return ScalarGrid(a.grid, alg.inner_grid(u.samples, v.samples), bw)

    total = 0.0 + 0.0j
    for cL, dL in ((YL.f, "x"), (YL.g, "y")):
        dbL = {"x": bx, "y": by}[dL]
        daL = {"x": ax, "y": ay}[dL]
        for cR, dR in ((YR.f, "x"), (YR.g, "y")):
            daR = {"x": ax, "y": ay}[dR]
            dbR = {"x": bx, "y": by}[dR]
            w = pairing(dbL, daR).copy_with(
                pairing(dbL, daR).values - pairing(daL, dbR).values
            )
            total += _coeff_pair_integral(cL, cR, w)
    return complex(total)


def omega_ef(a: CurrentField, b: CurrentField, alpha_x: complex, alpha_y: complex) -> complex:
    """Pairing of the currents with a constant holomorphic differential:

    Omega(a, b) = integral of <a, db> wedge (alpha_x dx + alpha_y dy).
    """
    _check_pair(a, b)
    alg = a.algebra
    bx, by = b.derivative("x"), b.derivative("y")
    fx = ScalarGrid(a.grid, alg.inner_grid(a.samples, bx.samples), 0)
    fy = ScalarGrid(a.grid, alg.inner_grid(a.samples, by.samples), 0)
    gx = constant_grid(a.grid, alpha_x)
    gy = constant_grid(a.grid, alpha_y)
    return wedge_integrate(fx, fy, gx, gy)


def hodge_phi(w1: ComplexVectorField, w2: ComplexVectorField) -> ScalarGrid:
    """Hodge-dual weight of two vector fields: f1 g2 - f2 g1 (flat metric)."""
    for v in (w1, w2):
        if isinstance(v.f, CutFunction) or isinstance(v.g, CutFunction):
            raise GridError("hodge_phi requires smooth coefficients")
    vals = w1.f.values * w2.g.values - w2.f.values * w1.g.values
    bw = max(w1.f.bandwidth, w1.g.bandwidth) + max(w2.f.bandwidth, w2.g.bandwidth)
    return ScalarGrid(w1.grid, vals, min(bw, w1.grid.n // 2 - 1))


def torus_alpha_periods(grid: TorusGrid, alpha_x: complex, alpha_y: complex) -> tuple:
    """Periods (c1, c2) of the constant one-form over gamma1 and gamma2."""
    tau = grid.lattice_tau
    return (complex(alpha_x), complex(alpha_x * tau.real + alpha_y * tau.imag))


def hat_swap(periods: tuple) -> tuple:
    """Genus-1 index swap pairing each cycle with its dual: (c1, c2) -> (c2, c1)."""
    c1, c2 = periods
    return (c2, c1)


def build_phi(grid: TorusGrid, alpha_x: complex, alpha_y: complex,
              basepoint: tuple) -> CutFunction:
    """Potential of a constant closed one-form on the cut torus.

    phi(P) is the path integral of alpha from the basepoint to P inside the
    cut domain; it equals c1 * frac(u - cut_x) + c2 * frac(v - cut_y) plus a
    constant, where (c1, c2) are the periods. Jumps: -hat_c_j along gamma_j.
    """
    u0, v0 = basepoint
    su0 = (u0 - grid.cut_x) % 1.0
    sv0 = (v0 - grid.cut_y) % 1.0
    if su0 == 0.0 or sv0 == 0.0:
        raise GridError("basepoint may not lie on a cut")
    c1, c2 = torus_alpha_periods(grid, alpha_x, alpha_y)
    smooth = constant_grid(grid, -(c1 * su0 + c2 * sv0))
    return CutFunction(grid, smooth, saw_u=c1, saw_v=c2, basepoint=basepoint)


def fields_from_phi(phi: CutFunction) -> tuple:
    """Two-field gauge realizing a given weight function phi:

    YR = phi d/dx and YL = d/dy, so that f_R conj(g_L) - conj(f_L) g_R = phi.
    """
    grid = phi.grid
    yr = ComplexVectorField(phi, constant_grid(grid, 0.0))
    yl = ComplexVectorField(constant_grid(grid, 0.0), constant_grid(grid, 1.0))
    return yl, yr


def ef_central_rhs(a: CurrentField, b: CurrentField, alpha: tuple, c_periods: tuple) -> complex:
    """Decomposed central term: the differential pairing plus the
    hatted-period-weighted cycle integrals over the two cuts.

    The gamma1 term carries weight -hat_c1 and the gamma2 term +hat_c2
    (BOUNDARY_WEIGHTS): Stokes on the cut square traverses the gamma1 banks
    against the +x cycle orientation.
    """
    _check_pair(a, b)
    alg = a.algebra
    alpha_x, alpha_y = alpha
    hat1, hat2 = hat_swap(c_periods)
    bx, by = b.derivative("x"), b.derivative("y")
    fx = ScalarGrid(a.grid, alg.inner_grid(a.samples, bx.samples), 0)
    fy = ScalarGrid(a.grid, alg.inner_grid(a.samples, by.samples), 0)
    omega = omega_ef(a, b, alpha_x, alpha_y)
    w1, w2 = BOUNDARY_WEIGHTS
    return complex(
        omega
        + w1 * hat1 * cycle_integral(fx, fy, "gamma1")
        + w2 * hat2 * cycle_integral(fx, fy, "gamma2")
    )


def loop_cocycle(circle: CircleGrid, algebra: StructureAlgebra,
                 a: np.ndarray, b: np.ndarray) -> complex:
    """Loop-algebra central term: integral over S^1 of <a, db>."""
    return circle_pair_integral(circle, algebra, a, b)


def required_charges(periods: tuple, tol: float = 0.0) -> list:
    """Central charges -hat_c_j demanded along each cycle; zeros omitted."""
    hat1, hat2 = hat_swap(periods)
    out = []
    if abs(hat1) > tol:
        out.append(("gamma1", -hat1))
    if abs(hat2) > tol:
        out.append(("gamma2", -hat2))
    return out


# ---------------------------------------------------------------------------
# seeded test fields

def random_current_field(grid: TorusGrid, algebra: StructureAlgebra, rng: Lcg,
                         bandwidth: int = 2, real: bool = False,
                         freqs: Optional[list] = None) -> CurrentField:
    freqs = square_freqs(bandwidth) if freqs is None else freqs
    table = coeff_table(rng, freqs, algebra.dim, real)
    gx, gy = grid.coords
    # O(1) sup norm regardless of the frequency budget
    samples = sample_vector(table, gx, gy) / len(freqs)
    bw = max(max(abs(p), abs(q)) for p, q in freqs)
    return CurrentField(grid, algebra, samples, bw)


def random_vector_field(grid: TorusGrid, rng: Lcg, bandwidth: int = 1,
                        real: bool = False, freqs: Optional[list] = None) -> ComplexVectorField:
    freqs = square_freqs(bandwidth) if freqs is None else freqs
    gx, gy = grid.coords
    bw = max(max(abs(p), abs(q)) for p, q in freqs)
    fvals = sample_scalar(coeff_table(rng, freqs, 1, real), gx, gy) / len(freqs)
    gvals = sample_scalar(coeff_table(rng, freqs, 1, real), gx, gy) / len(freqs)
    return ComplexVectorField(ScalarGrid(grid, fvals, bw), ScalarGrid(grid, gvals, bw))


def random_loop(circle: CircleGrid, algebra: StructureAlgebra, rng: Lcg,
                bandwidth: int = 2, real: bool = False) -> np.ndarray:
    theta = circle.theta[:, None]
    out = np.zeros((circle.m, algebra.dim), dtype=complex)
    for p in range(-bandwidth, bandwidth + 1):
        if real and p < 0:
            continue
        c = np.array([rng.complex_unit() for _ in range(algebra.dim)])
        if real:
            if p == 0:
                out += c.real[None, :]
            else:
                out += 2 * (c[None, :] * np.exp(1j * p * theta)).real
        else:
            out += c[None, :] * np.exp(1j * p * theta)
    return out

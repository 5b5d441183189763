"""Periods of holomorphic differentials on the genus-2 curve
y^2 = (z^2 - s^2)(z^2 - t^2)(z^2 - r^2), plus torus periods and an AGM
elliptic-integral oracle.

Geometry. The six branch points are -r < -t < -s < s < t < r; the sextic
is negative exactly on [-r,-t], [-s,s], [t,r], which carry the cuts. With
h_c(z) = z sqrt(1 - c^2/z^2) (principal branch, cut [-c,c]) the sheet-1
root is w = h_s h_t h_r, real outside the cuts with sign pattern

    (-inf,-r): -|w|    (-t,-s): +|w|    (s,t): -|w|    (r,inf): +|w|

and +i|w| on the upper bank of [-r,-t] and [t,r], -i|w| on that of [-s,s].

Cycle table (canonical basis, a_j . b_j = +1), I_k[u,v] = integral of
x^k |f|^{-1/2} over (u, v):

    a1: clockwise loop around [-r,-t]      period  -2i I_k[-r,-t]
    a2: clockwise loop around [-s,  s]     period  +2i I_k[-s, s]
    b1: reversed outer through-loop crossing the [-r,-t] and [t,r] cuts
        via the real stretch through infinity:
        period  -2 (I_k[r,inf) - (-1)^k I_k[r,inf))  ->  0 for k = 0,
                                                        -4 I_1[r,inf) for k = 1
    b2: through-loop crossing the [-s,s] and [t,r] cuts via (s,t) on
        sheet 1:                            period  -2 I_k[s,t]

The two loop orientations not pinned by the displayed identities (a1 odd
period positive imaginary, b2 odd period negative real) were fixed by
requiring tau = A^{-1} B symmetric with positive-definite imaginary part,
which this table achieves for every valid curve (tests sweep families).
Classical equal-gap identities, verified numerically in the tests, tie the
entries together: I0[t,r] = I0[0,s] and I1[s,t] = I1[r,inf).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_LEG_CACHE: dict = {}


class PeriodsError(ValueError):
    pass


@dataclass(frozen=True)
class HyperellipticCurve:
    """Branch parameters 0 < s < t < r of the genus-2 curve."""

    s: float
    t: float
    r: float

    def __post_init__(self):
        if not (0 < self.s < self.t < self.r):
            raise PeriodsError("branch points must satisfy 0 < s < t < r")

    def radicand(self, x: float) -> float:
        x2 = x * x
        return (x2 - self.s**2) * (x2 - self.t**2) * (x2 - self.r**2)

    @property
    def branch_points(self):
        return (-self.r, -self.t, -self.s, self.s, self.t, self.r)


@dataclass(frozen=True)
class HoloDifferential:
    """Holomorphic basis differential z^k dz / y, k in {0, 1}."""

    k: int

    def __post_init__(self):
        if self.k not in (0, 1):
            raise PeriodsError("k must be 0 or 1 for genus 2")


@dataclass
class PeriodData:
    """a- and b-period matrices (rows: differentials k=0,1) and tau = A^-1 B."""

    a_periods: np.ndarray
    b_periods: np.ndarray
    tau: np.ndarray

    def symmetry_residual(self) -> float:
        return float(abs(self.tau[0, 1] - self.tau[1, 0]))

    def im_tau_eigenvalues(self) -> np.ndarray:
        sym = 0.5 * (self.tau.imag + self.tau.imag.T)
        return np.linalg.eigvalsh(sym)


def r_integrand(curve: HyperellipticCurve, x: float) -> float:
    """Odd reduction integrand x |radicand|^{-1/2}; the caller supplies the
    constant +-1 / +-i branch factor of its interval."""
    rad = curve.radicand(x)
    if rad == 0.0:
        raise PeriodsError(f"x = {x} is a branch point")
    return x / math.sqrt(abs(rad))


def _leggauss(nodes: int):
    if nodes not in _LEG_CACHE:
        _LEG_CACHE[nodes] = np.polynomial.legendre.leggauss(nodes)
    return _LEG_CACHE[nodes]


def segment_integral(curve: HyperellipticCurve, k: int, x0: float, x1: float,
                     nodes: int = 400) -> float:
    """Integral of x^k |radicand|^{-1/2} over (x0, x1), branch points allowed
    only at the endpoints; x1 = inf is supported from x0 = r.

    The substitution x = mid + half*sin(theta) absorbs the inverse-sqrt
    endpoint singularities: with e_i = 1 when endpoint i is a branch point,

        integrand * dx = x^k R(x)^{-1/2} half^{1 - (e0+e1)/2}
                         (1+sin)^{(1-e0)/2} (1-sin)^{(1-e1)/2} dtheta,

    R being the product of |x - p| over the non-endpoint branch points.
    The transformed integrand is analytic, so Gauss-Legendre in theta
    converges geometrically.
    """
    if k not in (0, 1):
        raise PeriodsError("k must be 0 or 1")
    if x0 == x1:
        return 0.0
    if math.isinf(x1):
        if x0 != curve.r:
            raise PeriodsError("infinite segment must start at r")
        return _segment_to_infinity(curve, k, nodes)
    if x0 > x1:
        return -segment_integral(curve, k, x1, x0, nodes)
    bp = curve.branch_points
    interior = [p for p in bp if x0 < p < x1]
    if interior:
        raise PeriodsError(f"interval ({x0}, {x1}) contains branch points {interior}")

    e0 = 1 if x0 in bp else 0
    e1 = 1 if x1 in bp else 0
    mid, half = 0.5 * (x0 + x1), 0.5 * (x1 - x0)
    tnodes, weights = _leggauss(nodes)
    theta = 0.5 * np.pi * tnodes
    sin = np.sin(theta)
    x = mid + half * sin
    rest = np.ones_like(x)
    for p in bp:
        if (p == x0 and e0) or (p == x1 and e1):
            continue
        rest *= np.abs(x - p)
    vals = (
        (x**k)
        / np.sqrt(rest)
        * half ** (1.0 - 0.5 * (e0 + e1))
        * (1.0 + sin) ** (0.5 * (1 - e0))
        * (1.0 - sin) ** (0.5 * (1 - e1))
    )
    return float(np.sum(weights * vals) * 0.5 * np.pi)


def _segment_to_infinity(curve: HyperellipticCurve, k: int, nodes: int) -> float:
    """Integral of x^k |radicand|^{-1/2} over [r, inf) via x = r / sin(phi);
    the endpoint singularity at r and the decay at infinity both smooth out."""
    r = curve.r
    tnodes, weights = _leggauss(nodes)
    phi = 0.25 * np.pi * (tnodes + 1.0)  # interior nodes of (0, pi/2)
    x = r / np.sin(phi)
    rest = np.abs((x**2 - curve.s**2) * (x**2 - curve.t**2))
    vals = (x**k) / np.sqrt(rest) / np.sin(phi)
    return float(np.sum(weights * vals) * 0.25 * np.pi)


def elliptic_oracle(m: float) -> float:
    """Complete elliptic integral K(m) by the arithmetic-geometric mean,
    K(m) = pi / (2 AGM(1, sqrt(1-m))), parameter convention m = k^2.

    Quadratic convergence reaches machine precision in under ten sweeps;
    the loop stops once the pair stops contracting (float fixed point).
    """
    if not 0 <= m < 1:
        raise PeriodsError("m must lie in [0, 1)")
    a, b = 1.0, math.sqrt(1.0 - m)
    for _ in range(64):
        if a == b:
            break
        a1, b1 = 0.5 * (a + b), math.sqrt(a * b)
        if abs(a1 - b1) >= abs(a - b):
            break
        a, b = a1, b1
    return math.pi / (a + b)


def segment_via_elliptic(curve: HyperellipticCurve, k: int, which: str) -> float:
    """Closed AGM forms for the basic segment integrals (independent oracle).

    u = x^2 reduces the odd integrals over the cubic gaps (s^2, t^2, r^2)
    and the even ones over the quartic gaps (0, s^2, t^2, r^2):

        I1[t,r] = K(m) / sqrt(r^2-s^2),        m  = (r^2-t^2)/(r^2-s^2)
        I1[s,t] = I1[r,inf) = K(1-m) / sqrt(r^2-s^2)
        I0[0,s] = I0[t,r] = K(m0) / (t sqrt(r^2-s^2) m_g),  see below
        I0[s,t] = K(1-m0) * (same scale)

    with m0 = s^2 (r^2-t^2) / (t^2 (r^2-s^2)) and scale g = 1/sqrt(t^2 (r^2-s^2)).
    """
    s2, t2, r2 = curve.s**2, curve.t**2, curve.r**2
    if k == 1:
        m = (r2 - t2) / (r2 - s2)
        scale = 1.0 / math.sqrt(r2 - s2)
        if which == "t_r":
            return scale * elliptic_oracle(m)
        if which in ("s_t", "r_inf"):
            return scale * elliptic_oracle(1.0 - m)
        raise PeriodsError(f"no odd closed form for {which!r}")
    g = 1.0 / math.sqrt(t2 * (r2 - s2))
    m0 = (s2 * (r2 - t2)) / (t2 * (r2 - s2))
    if which in ("0_s", "t_r"):
        return g * elliptic_oracle(m0)
    if which == "s_t":
        return g * elliptic_oracle(1.0 - m0)
    raise PeriodsError(f"no even closed form for {which!r}")


# ---------------------------------------------------------------------------
# cycle reductions

def alpha_displayed_periods(curve: HyperellipticCurve, nodes: int = 400) -> dict:
    """The four displayed period reductions of the odd differential z dz / y.

    a1 and b2 reduce to single segment integrals. The two vanishing slots
    are genuine quadratures that cancel by symmetry: the a2 loop reduces to
    the odd integral over [-s, s], and the b1 slot is the period over the
    difference of the two through-loops at (-t,-s) and (s,t), zero by the
    equal-gap identity. The canonical-basis b1 itself cannot have vanishing
    odd period (tau would acquire a zero diagonal, contradicting the
    positive-definite imaginary part); full_periods carries its true value.
    """
    t, s = curve.t, curve.s
    a1 = 2j * segment_integral(curve, 1, t, curve.r, nodes)
    a2 = 2j * segment_integral(curve, 1, -s, s, nodes)
    through_neg = 2.0 * segment_integral(curve, 1, -t, -s, nodes)
    through_pos = -2.0 * segment_integral(curve, 1, s, t, nodes)
    b1 = through_neg - through_pos
    return {"a1": complex(a1), "a2": complex(a2), "b1": complex(b1),
            "b2": complex(through_pos)}


def full_periods(curve: HyperellipticCurve, nodes: int = 400) -> PeriodData:
    """All eight periods of the basis differentials and tau = A^{-1} B.

    Rows of the matrices are the differentials k = 0, 1; columns the cycles
    (a1, a2) and (b1, b2) of the module table. The b1 even period vanishes
    because the even integrand meets opposite root signs on the two outer
    stretches; the odd one is computed on [r, inf) directly.
    """
    I0_tr = segment_integral(curve, 0, curve.t, curve.r, nodes)
    I0_ss = segment_integral(curve, 0, -curve.s, curve.s, nodes)
    I0_st = segment_integral(curve, 0, curve.s, curve.t, nodes)
    I1_tr = segment_integral(curve, 1, curve.t, curve.r, nodes)
    I1_st = segment_integral(curve, 1, curve.s, curve.t, nodes)
    I1_rinf = segment_integral(curve, 1, curve.r, math.inf, nodes)

    a = np.array(
        [[-2j * I0_tr, 2j * I0_ss],
         [2j * I1_tr, 0.0]],
        dtype=complex,
    )
    b = np.array(
        [[0.0, -2.0 * I0_st],
         [-4.0 * I1_rinf, -2.0 * I1_st]],
        dtype=complex,
    )
    cond = np.linalg.cond(a)
    if not np.isfinite(cond) or cond > 1e10:
        raise PeriodsError(f"near-degenerate curve: cond(A) = {cond:.3e}")
    tau = np.linalg.solve(a, b)
    return PeriodData(a_periods=a, b_periods=b, tau=tau)


def torus_periods(lattice_tau: complex, coefficient: complex) -> tuple:
    """Periods of coefficient * dz over the two torus cycles: the real-axis
    cycle gives the coefficient itself, the tau-axis cycle coefficient*tau."""
    if lattice_tau.imag <= 0:
        raise PeriodsError("Im(lattice_tau) must be positive")
    return (complex(coefficient), complex(coefficient * lattice_tau))

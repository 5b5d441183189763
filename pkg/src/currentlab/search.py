"""Central-charge classification and the rational-period tuning search.

Only imaginary-integer central charges admit integrable highest/lowest
weight factors, so the game is to scale the odd differential until its two
nonzero displayed periods become an imaginary and a real integer. The
ratio of those periods,

    rho(s; t, r) = I1[t,r] / I1[s,t] = K(m) / K(1-m),
    m = (r^2 - t^2) / (r^2 - s^2),

is strictly increasing in s (m is, and K(m)/K(1-m) is increasing), with
range ( K(1 - t^2/r^2) / K(t^2/r^2), inf ) as s runs over (0, t). A
rational target p/q inside that range is found by bisection; targets below
the infimum are rejected with the attainable range reported. In particular
1/1 at (t, r) = (2, 3) lies below the infimum 1.05226... and is therefore
unattainable; feasible example: 6/5.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .periods import (
    HyperellipticCurve,
    PeriodsError,
    alpha_displayed_periods,
    elliptic_oracle,
    full_periods,
    segment_integral,
)

INTEGER_TOL = 1e-9
MAX_BISECT = 200


class SearchError(ValueError):
    pass


class RatioRangeError(SearchError):
    """Target ratio lies outside the attainable range; carries the range."""

    def __init__(self, target: float, lo: float, hi: float):
        self.target = target
        self.attained_range = (lo, hi)
        super().__init__(
            f"target ratio {target!r} outside attainable range ({lo:.12g}, {hi if math.isfinite(hi) else 'inf'})"
        )


@dataclass(frozen=True)
class ChargeClass:
    """A central charge and its integrability class."""

    value: complex
    klass: str  # integrable-highest | integrable-lowest | nonintegrable


def classify_charge(c: complex, tol: float = INTEGER_TOL) -> ChargeClass:
    """Integrable-highest iff c is a positive imaginary integer, lowest iff
    negative imaginary integer; everything else (zero included) is
    nonintegrable."""
    c = complex(c)
    n = round(c.imag)
    if abs(c.real) <= tol and abs(c.imag - n) <= tol and n != 0:
        return ChargeClass(c, "integrable-highest" if n > 0 else "integrable-lowest")
    return ChargeClass(c, "nonintegrable")


def period_ratio(curve: HyperellipticCurve, nodes: int = 400) -> float:
    """|Im a1-period| / |b2-period| of the odd differential,
    = I1[t,r] / I1[s,t]; strictly positive and scale-invariant."""
    u = segment_integral(curve, 1, curve.t, curve.r, nodes)
    v = segment_integral(curve, 1, curve.s, curve.t, nodes)
    return u / v


def ratio_infimum(t: float, r: float) -> float:
    """Limit of the ratio as s -> 0+: K(1 - t^2/r^2) / K(t^2/r^2)."""
    m = t * t / (r * r)
    return elliptic_oracle(1.0 - m) / elliptic_oracle(m)


@dataclass
class SearchResult:
    curve: HyperellipticCurve
    ratio_found: float
    target: tuple  # (p, q)
    scale: complex
    scaled_periods: tuple  # (a1, b2) after scaling
    iterations: int

    @property
    def scaled_b1(self) -> complex:
        """Canonical b1 period after scaling; comes out at -2q automatically."""
        pd = full_periods(self.curve)
        return complex(self.scale * pd.b_periods[1, 0])


def _ratio_of_s(s: float, t: float, r: float, nodes: int) -> float:
    return period_ratio(HyperellipticCurve(s, t, r), nodes)


def search_ratio(target: float, t: float, r: float, nodes: int = 400,
                 tol: float = 1e-11, samples: int = 17) -> tuple:
    """Find s in (0, t) with period ratio equal to target, by bracketing and
    bisection; returns (s, ratio, iterations).

    Monotonicity in s is verified on a sample grid; if it ever failed the
    bracket would fall back to the sampled sign changes.
    """
    if not (0 < t < r):
        raise SearchError("need 0 < t < r")
    lo_s, hi_s = 1e-6 * t, (1.0 - 1e-9) * t
    grid = np.linspace(lo_s, hi_s, samples)
    vals = [_ratio_of_s(float(sv), t, r, nodes) for sv in grid]
    if any(b < a for a, b in zip(vals, vals[1:])):
        # sampled fallback: locate any bracket containing the target
        brackets = [
            (float(grid[i]), float(grid[i + 1]))
            for i in range(len(vals) - 1)
            if min(vals[i], vals[i + 1]) <= target <= max(vals[i], vals[i + 1])
        ]
        if not brackets:
            raise RatioRangeError(target, min(vals), max(vals))
        a, b = brackets[0]
    else:
        if not (vals[0] <= target <= vals[-1]):
            # the true range opens at the s->0 infimum and is unbounded above
            raise RatioRangeError(target, ratio_infimum(t, r), math.inf)
        k = int(np.searchsorted(vals, target))
        a, b = float(grid[max(k - 1, 0)]), float(grid[min(k, samples - 1)])
    fa = _ratio_of_s(a, t, r, nodes) - target
    it = 0
    for it in range(1, MAX_BISECT + 1):
        midp = 0.5 * (a + b)
        fm = _ratio_of_s(midp, t, r, nodes) - target
        if fm == 0.0 or abs(fm) <= tol:
            return midp, fm + target, it
        if (fa < 0) == (fm < 0):
            a, fa = midp, fm
        else:
            b = midp
    raise SearchError(f"bisection did not converge within {MAX_BISECT} iterations")


def search_rational(target_p: int, target_q: int, t: float, r: float,
                    nodes: int = 400, tol: float = 1e-11) -> SearchResult:
    """Tune s so the displayed period ratio equals p/q, then scale the
    differential to integer periods: lambda = q / |b2| makes the scaled
    periods (i p, -q)."""
    if target_p < 1 or target_q < 1:
        raise SearchError("target must be a ratio of positive integers")
    if math.gcd(target_p, target_q) != 1:
        raise SearchError("target p/q must be in lowest terms")
    target = target_p / target_q
    s, ratio, iters = search_ratio(target, t, r, nodes=nodes, tol=tol)
    curve = HyperellipticCurve(s, t, r)
    disp = alpha_displayed_periods(curve, nodes)
    scale = target_q / abs(disp["b2"])
    scaled = (scale * disp["a1"], scale * disp["b2"])
    return SearchResult(
        curve=curve,
        ratio_found=ratio,
        target=(target_p, target_q),
        scale=complex(scale),
        scaled_periods=scaled,
        iterations=iters,
    )


def impossibility_check(tau: np.ndarray, coeff_range: int = 5) -> dict:
    """Finite-sample demonstration that no integer differential has all four
    dual-basis periods equal to purely imaginary integers.

    For the dual basis the a-periods of n1 a^1 + n2 a^2 are (n1, n2) and
    the b-periods (tau n). Real integer coefficient pairs fail already on
    the a-side (real nonzero integers are not imaginary); imaginary pairs
    i(m1, m2) have imaginary-integer a-periods but their b-periods i tau m
    keep a nonzero real part bounded below by the smallest eigenvalue of
    Im(tau) -- the positive-definiteness obstruction. The reported distance
    is the euclidean gap of the period 4-vector from the purely-imaginary-
    integer lattice, minimized over the sampled nonzero coefficient pairs.
    """
    tau = np.asarray(tau, dtype=complex)
    if tau.shape != (2, 2):
        raise SearchError("tau must be 2x2")

    def gap(vec):
        tot = 0.0
        for z in vec:
            tot += z.real**2 + (z.imag - round(z.imag)) ** 2
        return math.sqrt(tot)

    best = math.inf
    best_combo = None
    rng = range(-coeff_range, coeff_range + 1)
    for m1 in rng:
        for m2 in rng:
            if m1 == 0 and m2 == 0:
                continue
            n = np.array([m1, m2], dtype=float)
            for unit in (1.0, 1j):  # real and imaginary integer sweeps
                coeffs = unit * n
                periods = np.concatenate([coeffs, tau @ coeffs])
                d = gap(periods)
                if d < best:
                    best, best_combo = d, (complex(coeffs[0]), complex(coeffs[1]))
    imtau = 0.5 * (tau.imag + tau.imag.T)
    return {
        "min_distance": best,
        "argmin": best_combo,
        "eig_im_tau": np.linalg.eigvalsh(imtau).tolist(),
        "samples": (2 * coeff_range + 1) ** 2 * 2 - 2,
    }


def genus2_charges(periods4: dict, tol: float = 0.0) -> list:
    """Central charges -hat_c_j for the genus-2 cycle quadruple.

    The hat swap pairs each cycle with its dual: hat(a1, a2, b1, b2) =
    (b1-period, b2-period, a1-period, a2-period); zero charges are omitted.
    """
    order = ("a1", "a2", "b1", "b2")
    hats = {
        "a1": periods4["b1"],
        "a2": periods4["b2"],
        "b1": periods4["a1"],
        "b2": periods4["a2"],
    }
    return [(cyc, -hats[cyc]) for cyc in order if abs(hats[cyc]) > tol]


def integrability_report(charges: list) -> dict:
    """Classify a list of (cycle, charge) pairs and summarize."""
    entries = []
    for cycle, charge in charges:
        cls = classify_charge(charge)
        entries.append({"cycle": cycle, "charge": complex(charge), "class": cls.klass})
    n_int = sum(1 for e in entries if e["class"].startswith("integrable"))
    return {
        "entries": entries,
        "integrable": n_int,
        "nonintegrable": len(entries) - n_int,
        "fully_integrable": n_int == len(entries) and len(entries) > 0,
    }

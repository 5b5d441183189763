#!/usr/bin/env python3
"""Regenerate src/currentlab/fixtures/golden.json with a high-precision oracle.

Every frozen value is computed here with mpmath at 30 significant digits,
independently of the package code paths (adaptive quadrature and mpmath's
own elliptic integrals; no reuse of currentlab quadrature, reduction tables
or AGM code). Run from the repository root:

    python scripts/make_goldens.py
"""

import json
import pathlib

import mpmath as mp

mp.mp.dps = 30

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "currentlab" / "fixtures" / "golden.json"


def absf(x, s, t, r):
    return abs((x * x - s * s) * (x * x - t * t) * (x * x - r * r))


def seg(k, a, b, s, t, r):
    """Integral of x^k |f|^(-1/2) over (a, b) by adaptive quadrature."""
    return mp.quad(lambda x: x**k / mp.sqrt(absf(x, s, t, r)), [a, b])


def curve_block(s, t, r):
    s, t, r = mp.mpf(s), mp.mpf(t), mp.mpf(r)
    I1_tr = seg(1, t, r, s, t, r)
    I1_st = seg(1, s, t, s, t, r)
    I1_rinf = mp.quad(lambda x: x / mp.sqrt(absf(x, s, t, r)), [r, mp.inf])
    I0_tr = seg(0, t, r, s, t, r)
    I0_0s = seg(0, 0, s, s, t, r)
    I0_st = seg(0, s, t, s, t, r)
    # normalized period matrix from the dual-basis construction (see periods.py
    # for the cycle table; these closed forms were derived from the same table
    # and cross-check it at 30 digits)
    u, v, p, q, w0 = I1_tr, I1_st, I0_tr, I0_0s, I0_st
    tau11 = 2j * v / u
    tau12 = 1j * v / u
    tau22 = 1j * (u * w0 + p * v) / (2 * q * u)
    return {
        "I1_t_r": mp.nstr(I1_tr, 25),
        "I1_s_t": mp.nstr(I1_st, 25),
        "I1_r_inf": mp.nstr(I1_rinf, 25),
        "I0_t_r": mp.nstr(I0_tr, 25),
        "I0_0_s": mp.nstr(I0_0s, 25),
        "I0_s_t": mp.nstr(I0_st, 25),
        "period_ratio": mp.nstr(I1_tr / I1_st, 25),
        "tau": [
            [[float(mp.re(tau11)), float(mp.im(tau11))], [float(mp.re(tau12)), float(mp.im(tau12))]],
            [[float(mp.re(tau12)), float(mp.im(tau12))], [float(mp.re(tau22)), float(mp.im(tau22))]],
        ],
    }


def main():
    golden = {
        "_provenance": (
            "generated by scripts/make_goldens.py with mpmath dps=30: "
            "adaptive quadrature for segment integrals, mpmath.ellipk for "
            "elliptic references; independent of the package quadrature."
        ),
        "ellipk": {
            "0.5": mp.nstr(mp.ellipk(mp.mpf(1) / 2), 30),
            "0.0625": mp.nstr(mp.ellipk(mp.mpf(1) / 16), 30),
            "0.96": mp.nstr(mp.ellipk(mp.mpf("0.96")), 30),
        },
        "curves": {
            "1,2,3": curve_block(1, 2, 3),
            "0.5,1,4": curve_block("0.5", 1, 4),
            "1,1.1,1.2": curve_block(1, "1.1", "1.2"),
        },
        # infimum of the period ratio for (t, r) = (2, 3) as s -> 0+:
        # K(1 - t^2/r^2) / K(t^2/r^2)
        "ratio_inf_t2_r3": mp.nstr(mp.ellipk(1 - mp.mpf(4) / 9) / mp.ellipk(mp.mpf(4) / 9), 25),
        # a feasible rational-ratio solution for the search round trip:
        # s* in (0, 2) with I1[t,r]/I1[s,t] = 6/5 at (t, r) = (2, 3)
        "s_star_6_5_t2_r3": mp.nstr(
            mp.findroot(
                lambda s: seg(1, 2, 3, s, mp.mpf(2), mp.mpf(3))
                / seg(1, s, 2, s, mp.mpf(2), mp.mpf(3))
                - mp.mpf(6) / 5,
                mp.mpf("1.4"),
            ),
            25,
        ),
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(golden, indent=2, sort_keys=True) + "\n")
    print("wrote", OUT)


if __name__ == "__main__":
    main()

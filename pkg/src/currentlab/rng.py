"""Deterministic random fields from a documented 64-bit LCG.

Generator spec (so fixtures are reproducible from any language):

    state_{k+1} = (6364136223846793005 * state_k + 1442695040888963407) mod 2^64
    uniform01   = (state >> 11) / 2^53          (53-bit mantissa draw)
    seeding     = state_0 = (seed XOR 0x9E3779B97F4A7C15) mod 2^64, then one step

Every test field in the suite is derived from uniform01 draws in a fixed
order; identical seeds give bit-identical fields.
"""

from __future__ import annotations

import numpy as np

_MULT = 6364136223846793005
_INC = 1442695040888963407
_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class Lcg:
    """Minimal linear-congruential generator; see module docstring for spec."""

    def __init__(self, seed: int):
        self.state = (int(seed) ^ _GOLDEN) & _MASK
        self._step()

    def _step(self) -> int:
        self.state = (_MULT * self.state + _INC) & _MASK
        return self.state

    def uniform01(self) -> float:
        return (self._step() >> 11) / float(1 << 53)

    def uniform(self, lo: float = -1.0, hi: float = 1.0) -> float:
        return lo + (hi - lo) * self.uniform01()

    def complex_unit(self) -> complex:
        return complex(self.uniform(), self.uniform())

    def spawn(self) -> "Lcg":
        """Independent child stream keyed off the current state."""
        return Lcg(self._step())


def coeff_table(rng: Lcg, freqs, ncomp: int, real: bool) -> dict:
    """Draw complex coefficients c[(p,q)][comp]; for real fields the table is
    Hermitian, c[-P] = conj(c[P]), drawing each +/- pair once."""
    table = {}
    for pq in freqs:
        if pq in table:
            continue
        c = np.array([rng.complex_unit() for _ in range(ncomp)])
        if real:
            neg = (-pq[0], -pq[1])
            if pq == neg:
                c = c.real.astype(complex)
            table[pq] = c
            if neg in dict.fromkeys(freqs):
                table[neg] = np.conj(c)
        else:
            table[pq] = c
    return table


def sample_scalar(table: dict, grid_x: np.ndarray, grid_y: np.ndarray) -> np.ndarray:
    out = np.zeros(grid_x.shape, dtype=complex)
    for (p, q), c in table.items():
        out += c[0] * np.exp(2j * np.pi * (p * grid_x + q * grid_y))
    return out


def sample_vector(table: dict, grid_x: np.ndarray, grid_y: np.ndarray) -> np.ndarray:
    ncomp = len(next(iter(table.values())))
    out = np.zeros(grid_x.shape + (ncomp,), dtype=complex)
    for (p, q), c in table.items():
        out += c[None, None, :] * np.exp(2j * np.pi * (p * grid_x + q * grid_y))[..., None]
    return out


def square_freqs(bw: int):
    return [(p, q) for p in range(-bw, bw + 1) for q in range(-bw, bw + 1)]


def diamond_freqs(bw: int):
    return [(p, q) for p in range(-bw, bw + 1) for q in range(-bw, bw + 1) if abs(p) + abs(q) <= bw]

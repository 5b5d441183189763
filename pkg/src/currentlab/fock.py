"""Truncated bosonic Fock space over a finite mode set of currents.

Occupation-number basis over M orthonormal modes with total particle
number at most P (dimension C(M+P, P)); states are stored normalized, so
adjoints are plain conjugate transposes, while the operator actions agree
with the unnormalized-product convention through the usual sqrt factors
(the product-state norms are the permanents of the mode gram, checked in
the tests).

Mode-set design. Exactness of the two-operator identities on a truncated
space needs (i) every creation/annihilation argument (the vector field
applied to a test current) to lie inside the mode span, and (ii) the modes
hit by the one-particle bracket action of the test currents to stay inside
the span. No finite Fourier shell is bracket-invariant under a nonconstant
current, so (ii) cannot hold on all modes; it does hold on the "interior"
modes, those whose frequency stays inside the retained set after adding
any test-field frequency. The defect is therefore measured on safe states:
total occupation at most P-2 *and* only interior modes occupied. On that
block the commutator defect is a scalar to rounding accuracy, and the
scalar equals the quadrature central term exactly.

Default frequency layout (shell = 1):

    test currents:  diamond |p|+|q| <= 1           (5 frequencies)
    field coeffs:   {(0,0), (1,1), (-1,-1)}        (diagonal, so the
                    hodge weight is nonconstant and the central term
                    does not degenerate to an exact-form integral)
    modes:          pointwise sums of the two       (11 frequencies)
    interior:       {(0,0), (1,1), (-1,-1)}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .currents import (
    ComplexVectorField,
    CurrentField,
    apply_field,
    l2_inner,
    pointwise_bracket,
)
from .grids import GridError, TorusGrid
from .liealg import StructureAlgebra, by_name

T_CUTOFF = 1e-13


class FockError(ValueError):
    pass


def diamond(shell: int):
    return [
        (p, q)
        for p in range(-shell, shell + 1)
        for q in range(-shell, shell + 1)
        if abs(p) + abs(q) <= shell
    ]


def coeff_freqs(shell: int):
    out = [(0, 0)]
    for d in range(1, shell + 1):
        out += [(d, d), (-d, -d)]
    return out


def mode_freqs(shell: int):
    base = diamond(shell)
    shifts = coeff_freqs(shell)
    return sorted({(p + a, q + b) for (p, q) in base for (a, b) in shifts})


@dataclass
class ModeBasis:
    """Orthonormal current modes e_i exp(2 pi i (p x + q y)) over a grid."""

    grid: TorusGrid
    algebra: StructureAlgebra
    freqs: list
    interior_freqs: list
    stack: np.ndarray = field(repr=False)  # (M, n, n, dim)

    @property
    def size(self) -> int:
        return len(self.freqs) * self.algebra.dim

    def meta(self, k: int):
        p, q = self.freqs[k // self.algebra.dim]
        return (p, q, k % self.algebra.dim)

    @property
    def interior_indices(self) -> list:
        return [
            k for k in range(self.size)
            if self.freqs[k // self.algebra.dim] in self.interior_freqs
        ]

    def fields(self) -> list:
        out = []
        for k in range(self.size):
            p, q, _ = self.meta(k)
            out.append(CurrentField(self.grid, self.algebra, self.stack[k],
                                    max(abs(p), abs(q))))
        return out

    def expand(self, a: CurrentField) -> tuple:
        """Components of a in the mode basis and the truncation residual."""
        coeffs = np.einsum("mxyd,xyd->m", np.conj(self.stack), a.samples) / self.grid.n**2
        norm2 = float(np.real(l2_inner(a, a)))
        resid2 = norm2 - float(np.sum(np.abs(coeffs) ** 2))
        return coeffs, float(np.sqrt(max(resid2, 0.0)))

    def bracket_matrix(self, a: CurrentField) -> np.ndarray:
        """T[j,k] = (m_j, [a, m_k]): the projected one-particle bracket action."""
        br = self.algebra.bracket(a.samples[None, ...], self.stack)
        return np.einsum("jxyd,kxyd->jk", np.conj(self.stack), br) / self.grid.n**2

    def closure_residual(self, a: CurrentField, interior_only: bool = False) -> float:
        """Largest L2 norm lost projecting [a, m_k] back onto the span.

        With interior_only=True only the interior modes are scanned; that
        residual is zero by construction for shell test fields and is the
        condition under which the commutator defect is exactly scalar. Over
        the full mode set the bracket necessarily leaks at the edge
        frequencies (no finite shell is bracket-invariant), so the full
        residual is diagnostic, not a correctness gate.
        """
        br = self.algebra.bracket(a.samples[None, ...], self.stack)
        t = np.einsum("jxyd,kxyd->jk", np.conj(self.stack), br) / self.grid.n**2
        norms2 = np.einsum("kxyd,kxyd->k", np.conj(br), br).real / self.grid.n**2
        resid2 = norms2 - np.sum(np.abs(t) ** 2, axis=0)
        if interior_only:
            resid2 = resid2[self.interior_indices]
        return float(np.sqrt(max(np.max(resid2), 0.0)))


def make_mode_basis(grid: TorusGrid, algebra: StructureAlgebra, shell: int = 1,
                    freqs: list | None = None, field_freqs: list | None = None) -> ModeBasis:
    if freqs is None:
        freqs = mode_freqs(shell)
    if field_freqs is None:
        field_freqs = diamond(shell)
    fset = set(freqs)
    interior = [
        (p, q) for (p, q) in freqs
        if all((p + a, q + b) in fset for (a, b) in field_freqs)
    ]
    gx, gy = grid.coords
    blocks = []
    for (p, q) in freqs:
        phase = np.exp(2j * np.pi * (p * gx + q * gy))
        for e in range(algebra.dim):
            m = np.zeros((grid.n, grid.n, algebra.dim), dtype=complex)
            m[..., e] = phase
            blocks.append(m)
    return ModeBasis(grid, algebra, list(freqs), interior, np.stack(blocks))


@lru_cache(maxsize=8)
def _basis_tables(M: int, P: int):
    """Occupation states with sum <= P over M modes, plus raise/lower maps."""
    states = []

    def rec(prefix, rem, k):
        if k == M:
            states.append(tuple(prefix))
            return
        for v in range(rem + 1):
            rec(prefix + [v], rem - v, k + 1)

    rec([], P, 0)
    idx = {s: i for i, s in enumerate(states)}
    arr = np.array(states, dtype=np.int8)
    D = len(states)
    raise_idx = np.full((D, M), -1, dtype=np.int64)
    totals = arr.sum(axis=1)
    for i, s in enumerate(states):
        if totals[i] >= P:
            continue
        for k in range(M):
            up = list(s)
            up[k] += 1
            raise_idx[i, k] = idx[tuple(up)]
    pairs_by_mode = []
    occ_s, occ_k = np.nonzero(arr)
    lowered = np.empty(len(occ_s), dtype=np.int64)
    for i, (s, k) in enumerate(zip(occ_s, occ_k)):
        lo = list(states[s])
        lo[k] -= 1
        lowered[i] = idx[tuple(lo)]
    amp = np.sqrt(arr[occ_s, occ_k].astype(float))
    for k in range(M):
        sel = occ_k == k
        pairs_by_mode.append((occ_s[sel], lowered[sel], amp[sel]))
    return arr, raise_idx, totals, pairs_by_mode


@dataclass
class FockBasis:
    """Truncated occupation basis: all multi-indices with sum <= P."""

    modes: ModeBasis
    cutoff: int

    def __post_init__(self):
        if self.cutoff < 1:
            raise FockError("particle cutoff must be >= 1")
        (self.states, self.raise_idx, self.totals,
         self.pairs_by_mode) = _basis_tables(self.modes.size, self.cutoff)

    @property
    def dim(self) -> int:
        return len(self.states)

    def safe_state_indices(self, margin: int = 2) -> np.ndarray:
        """States with occupation sum <= P - margin and only interior modes
        occupied: the block where two-operator identities are exact."""
        interior = np.zeros(self.modes.size, dtype=bool)
        interior[self.modes.interior_indices] = True
        occupied_ok = (self.states[:, ~interior] == 0).all(axis=1)
        return np.nonzero((self.totals <= self.cutoff - margin) & occupied_ok)[0]


@dataclass
class FockOperator:
    """Sparse operator on a FockBasis with provenance metadata."""

    basis: FockBasis
    matrix: sp.csr_matrix
    kind: str
    meta: dict = field(default_factory=dict)

    def adjoint(self) -> "FockOperator":
        return FockOperator(self.basis, self.matrix.conjugate().transpose().tocsr(),
                            f"adjoint({self.kind})", dict(self.meta))

    def __add__(self, other):
        return FockOperator(self.basis, (self.matrix + other.matrix).tocsr(),
                            f"({self.kind}+{other.kind})", {})

    def __sub__(self, other):
        return FockOperator(self.basis, (self.matrix - other.matrix).tocsr(),
                            f"({self.kind}-{other.kind})", {})

    def __rmul__(self, scalar):
        return FockOperator(self.basis, (scalar * self.matrix).tocsr(), self.kind, dict(self.meta))

    def apply(self, block: np.ndarray) -> np.ndarray:
        return self.matrix @ block

    def antihermiticity_residual(self) -> float:
        d = self.matrix + self.matrix.conjugate().transpose()
        return float(np.abs(d.data).max()) if d.nnz else 0.0


def _creation_matrix(basis: FockBasis, coeffs: np.ndarray) -> sp.csr_matrix:
    arr, raise_idx, totals = basis.states, basis.raise_idx, basis.totals
    raisable = np.nonzero(totals < basis.cutoff)[0]
    rows, cols, data = [], [], []
    for k in np.nonzero(np.abs(coeffs) > 0)[0]:
        rows.append(raise_idx[raisable, k])
        cols.append(raisable)
        data.append(coeffs[k] * np.sqrt(arr[raisable, k] + 1.0))
    if not rows:
        return sp.csr_matrix((basis.dim, basis.dim), dtype=complex)
    return sp.csr_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(basis.dim, basis.dim),
    )


def _dgamma_matrix(basis: FockBasis, T: np.ndarray) -> sp.csr_matrix:
    arr, raise_idx = basis.states, basis.raise_idx
    scale = np.abs(T).max()
    rows, cols, data = [], [], []
    for k in range(basis.modes.size):
        ps, plow, amp = basis.pairs_by_mode[k]
        if len(ps) == 0:
            continue
        js = np.nonzero(np.abs(T[:, k]) > T_CUTOFF * max(scale, 1.0))[0]
        if len(js) == 0:
            continue
        tgt = raise_idx[plow[:, None], js[None, :]]
        vals = (amp[:, None]
                * np.sqrt(arr[plow[:, None], js[None, :]] + 1.0)
                * T[js, k][None, :])
        rows.append(tgt.ravel())
        cols.append(np.repeat(ps, len(js)))
        data.append(vals.ravel())
    if not rows:
        return sp.csr_matrix((basis.dim, basis.dim), dtype=complex)
    return sp.csr_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(basis.dim, basis.dim),
    )


def creation(basis: FockBasis, a: CurrentField) -> FockOperator:
    """B*(a): prepends the (projected) one-particle state a."""
    coeffs, resid = basis.modes.expand(a)
    return FockOperator(basis, _creation_matrix(basis, coeffs), "B*",
                        {"truncation_residual": resid})


def annihilation(basis: FockBasis, a: CurrentField) -> FockOperator:
    """B(a) = adjoint of B*(a); kills the vacuum, contracts with (a, .)."""
    op = creation(basis, a)
    return FockOperator(basis, op.matrix.conjugate().transpose().tocsr(), "B",
                        dict(op.meta))


def second_quantized_l0(basis: FockBasis, a: CurrentField,
                        max_closure_residual: float | None = None) -> FockOperator:
    """L0(a): derivation replacing one factor by its bracket with a."""
    resid = basis.modes.closure_residual(a)
    if max_closure_residual is not None and resid > max_closure_residual:
        raise FockError(
            f"mode set is not bracket-closed for this field: residual {resid:.3e}"
        )
    T = basis.modes.bracket_matrix(a)
    return FockOperator(basis, _dgamma_matrix(basis, T), "L0",
                        {"closure_residual": resid})


def _rep(basis: FockBasis, a: CurrentField, star_arg: CurrentField,
         ann_arg: CurrentField, kind: str) -> FockOperator:
    l0 = second_quantized_l0(basis, a)
    cs, rs = basis.modes.expand(star_arg)
    ca, ra = basis.modes.expand(ann_arg)
    mat = (l0.matrix + _creation_matrix(basis, cs)
           - _creation_matrix(basis, ca).conjugate().transpose()).tocsr()
    return FockOperator(basis, mat, kind, {
        "closure_residual": l0.meta["closure_residual"],
        "projection_residual_star": rs,
        "projection_residual_ann": ra,
    })


def rep_lz(basis: FockBasis, Z: ComplexVectorField, a: CurrentField) -> FockOperator:
    """L^Z(a) = L0(a) + B*(Za) - B(Z conj(a)); antihermitian for real Z, a."""
    return _rep(basis, a, apply_field(Z, a), apply_field(Z, a.conj()), "LZ")


def rep_ly(basis: FockBasis, Y: ComplexVectorField, a: CurrentField) -> FockOperator:
    """L^Y(a) = L0(a) + B*(Ya) - B(Y conj(a)) for complex Y."""
    return _rep(basis, a, apply_field(Y, a), apply_field(Y, a.conj()), "LY")


def rep_l_two(basis: FockBasis, YL: ComplexVectorField, YR: ComplexVectorField,
              a: CurrentField) -> FockOperator:
    """L(a) = L0(a) + B*(YR a) - B(YL conj(a)), the two-field operators."""
    return _rep(basis, a, apply_field(YR, a), apply_field(YL, a.conj()), "L2")


def commutator_defect(op_builder, basis: FockBasis, a: CurrentField,
                      b: CurrentField) -> tuple:
    """Scalar part and off-scalar residual of [L(a), L(b)] - L([a,b]).

    The three operators are applied column-by-column to the safe states
    (occupation <= P-2, interior modes only); on that block the defect is
    provably scalar up to rounding. Returns (lambda, residual).
    """
    if basis.cutoff < 2:
        raise FockError("commutator defect needs particle cutoff P >= 2")
    safe = basis.safe_state_indices()
    if len(safe) == 0:
        raise FockError("no safe states: increase P or the interior mode set")
    La = op_builder(a)
    Lb = op_builder(b)
    Lab = op_builder(pointwise_bracket(a, b))
    ncols = len(safe)
    # unit-vector columns: sparse-sparse products keep the whole defect cheap
    block = sp.csc_matrix(
        (np.ones(ncols), (safe, np.arange(ncols))), shape=(basis.dim, ncols),
        dtype=complex,
    )
    dmat = (La.matrix @ (Lb.matrix @ block)
            - Lb.matrix @ (La.matrix @ block)
            - Lab.matrix @ block).tocsr()
    diag = np.asarray(dmat[safe, np.arange(ncols)]).ravel()
    lam = complex(diag.mean())
    rem = (dmat - lam * block).tocsr()
    residual = float(np.abs(rem.data).max()) if rem.nnz else 0.0
    return lam, residual


# ---------------------------------------------------------------------------
# configuration

@dataclass(frozen=True)
class FockConfig:
    shell: int = 1
    cutoff: int = 4
    algebra: str = "su2"
    seed: int = 1
    n: int = 16

    @staticmethod
    def from_json_dict(doc: dict) -> "FockConfig":
        return FockConfig(
            shell=int(doc.get("M_shell", 1)),
            cutoff=int(doc.get("P", 4)),
            algebra=str(doc.get("algebra", "su2")),
            seed=int(doc.get("seed", 1)),
            n=int(doc.get("n", 16)),
        )


def standard_setup(config: FockConfig = FockConfig()):
    """Grid, algebra, mode basis and Fock basis for a configuration."""
    grid = TorusGrid(config.n)
    algebra = by_name(config.algebra)
    modes = make_mode_basis(grid, algebra, config.shell)
    basis = FockBasis(modes, config.cutoff)
    return grid, algebra, modes, basis

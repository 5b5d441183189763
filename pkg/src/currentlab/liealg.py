"""Finite-dimensional Lie algebra with structure constants and invariant form.

Supplies the pointwise fiber for all current-algebra computations: a basis
with real structure constants c[i, j, k] ([e_i, e_j] = sum_k c[i,j,k] e_k)
and a symmetric positive-definite gram matrix for the invariant pairing.
Elements are complex coefficient vectors in that basis.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

JACOBI_TOL = 1e-12
INVARIANCE_TOL = 1e-12


class AlgebraError(ValueError):
    """Raised for dimension mismatches or invalid structure data."""


@dataclass(frozen=True)
class StructureAlgebra:
    """Lie algebra data: dimension, structure constants, invariant gram."""

    dim: int
    structure_constants: np.ndarray  # (dim, dim, dim) real
    gram: np.ndarray                 # (dim, dim) real symmetric positive-definite
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        c = np.asarray(self.structure_constants, dtype=float)
        g = np.asarray(self.gram, dtype=float)
        if c.shape != (self.dim,) * 3:
            raise AlgebraError(f"structure constants must be {(self.dim,)*3}, got {c.shape}")
        if g.shape != (self.dim, self.dim):
            raise AlgebraError(f"gram must be {(self.dim, self.dim)}, got {g.shape}")
        object.__setattr__(self, "structure_constants", c)
        object.__setattr__(self, "gram", g)
        if np.max(np.abs(c + np.swapaxes(c, 0, 1))) != 0.0:
            raise AlgebraError("structure constants not exactly antisymmetric in first two indices")
        if np.max(np.abs(g - g.T)) > 1e-14:
            raise AlgebraError("gram not symmetric")
        if np.any(np.linalg.eigvalsh(g) <= 0):
            raise AlgebraError("gram not positive definite")
        jac = self.jacobi_residual()
        if jac > JACOBI_TOL:
            raise AlgebraError(f"Jacobi identity violated: residual {jac:.3e}")
        inv = self.invariance_residual()
        if inv > INVARIANCE_TOL:
            raise AlgebraError(f"gram not invariant: residual {inv:.3e}")

    def jacobi_residual(self) -> float:
        """Max norm of the cyclic double-bracket sum over all basis triples."""
        c = self.structure_constants
        # [[e_i, e_j], e_k] contracted: sum_m c[i,j,m] c[m,k,l]
        d = np.einsum("ijm,mkl->ijkl", c, c)
        cyc = d + np.einsum("jkil->ijkl", d) + np.einsum("kijl->ijkl", d)
        return float(np.max(np.abs(cyc)))

    def invariance_residual(self) -> float:
        """Max of <[e_a, e_i], e_j> + <e_i, [e_a, e_j]> over basis triples."""
        c, g = self.structure_constants, self.gram
        t = np.einsum("aik,kj->aij", c, g)
        return float(np.max(np.abs(t + np.swapaxes(t, 1, 2))))

    # -- fiber operations ------------------------------------------------

    def check_member(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        if x.shape[-1] != self.dim:
            raise AlgebraError(f"element has {x.shape[-1]} components, algebra dim is {self.dim}")
        return x

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """[x, y] by contraction with the structure constants (vectorized over
        leading axes, so grid-sampled fields go through unchanged)."""
        x, y = self.check_member(x), self.check_member(y)
        return np.einsum("ijk,...i,...j->...k", self.structure_constants, x, y)

    def inner(self, x: np.ndarray, y: np.ndarray) -> complex:
        """Bilinear invariant pairing x^T gram y; no conjugation at fiber level."""
        x, y = self.check_member(x), self.check_member(y)
        return complex(np.einsum("i,ij,j->", x, self.gram, y))

    def inner_grid(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Pointwise pairing of two sampled fields (..., dim) -> (...)."""
        x, y = self.check_member(x), self.check_member(y)
        return np.einsum("...i,ij,...j->...", x, self.gram, y)

    def ad_matrix(self, a: np.ndarray) -> np.ndarray:
        """Matrix M with M @ y == bracket(a, y) for every y."""
        a = self.check_member(a)
        return np.einsum("ijk,i->kj", self.structure_constants, a)

    def basis_element(self, k: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=complex)
        e[k] = 1.0
        return e


def su2() -> StructureAlgebra:
    """su(2) with epsilon_ijk structure constants and identity gram."""
    c = np.zeros((3, 3, 3))
    for (i, j, k), s in (((0, 1, 2), 1.0), ((1, 2, 0), 1.0), ((2, 0, 1), 1.0)):
        c[i, j, k] = s
        c[j, i, k] = -s
    return StructureAlgebra(3, c, np.eye(3), name="su2")


def _gellmann():
    l = np.zeros((8, 3, 3), dtype=complex)
    l[0][0, 1] = l[0][1, 0] = 1
    l[1][0, 1] = -1j; l[1][1, 0] = 1j
    l[2][0, 0] = 1; l[2][1, 1] = -1
    l[3][0, 2] = l[3][2, 0] = 1
    l[4][0, 2] = -1j; l[4][2, 0] = 1j
    l[5][1, 2] = l[5][2, 1] = 1
    l[6][1, 2] = -1j; l[6][2, 1] = 1j
    l[7][0, 0] = l[7][1, 1] = 1 / np.sqrt(3.0); l[7][2, 2] = -2 / np.sqrt(3.0)
    return l


def su3() -> StructureAlgebra:
    """su(3) from the standard Gell-Mann f-constants, identity gram.

    Basis e_a = (i/2) lambda_a gives [e_a, e_b] = -f_abc e_c with real
    totally antisymmetric f; the constants are computed from the matrices
    rather than typed in from a table.
    """
    l = _gellmann()
    comm = np.einsum("aij,bjk->abik", l, l) - np.einsum("bij,ajk->abik", l, l)
    f = np.einsum("abik,cki->abc", comm, l) / 4j
    f = np.real(f)
    f[np.abs(f) < 1e-14] = 0.0
    # exact antisymmetry in the first two slots, defensively resymmetrized
    f = 0.5 * (f - np.swapaxes(f, 0, 1))
    return StructureAlgebra(8, -f, np.eye(8), name="su3")


def from_json_dict(doc: dict) -> StructureAlgebra:
    """Load an algebra from {"dim": n, "c": [[i,j,k,value],...], "gram": [[...]]}.

    Each entry sets c[i,j,k] = value and c[j,i,k] = -value; conflicting
    duplicates are rejected, so antisymmetry holds by construction.
    """
    dim = int(doc["dim"])
    c = np.zeros((dim, dim, dim))
    seen = {}
    for i, j, k, v in doc["c"]:
        i, j, k, v = int(i), int(j), int(k), float(v)
        for (a, b, val) in ((i, j, v), (j, i, -v)):
            key = (a, b, k)
            if key in seen and seen[key] != val:
                raise AlgebraError(f"conflicting structure constant at {key}")
            seen[key] = val
            c[a, b, k] = val
    gram = np.asarray(doc.get("gram", np.eye(dim).tolist()), dtype=float)
    return StructureAlgebra(dim, c, gram, name=str(doc.get("name", "custom")))


def load_json(path) -> StructureAlgebra:
    with open(path) as fh:
        return from_json_dict(json.load(fh))


_BUILTINS = {"su2": su2, "su3": su3}


def by_name(name: str) -> StructureAlgebra:
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise AlgebraError(f"unknown algebra {name!r}; built-ins: {sorted(_BUILTINS)}")

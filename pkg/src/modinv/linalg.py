"""Exact dense linear algebra over a :class:`~modinv.gf.GF`.

Matrices are 2-D ``int64`` arrays of field codes.  Every subspace is kept in
strict reduced row-echelon form so that equality of subspaces is equality of
their basis arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, InvalidArgument
from .gf import GF


def as_matrix(field: GF, rows) -> np.ndarray:
    """Convert nested lists of ints / coefficient lists / Scalars to codes."""
    m = [[field.code(x) for x in row] for row in rows]
    return np.array(m, dtype=np.int64).reshape(len(m), -1 if m else 0)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(field: GF, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[-1] != b.shape[0]:
        raise DimMismatch(f"cannot multiply {a.shape} by {b.shape}")
    if field.k == 1:
        return (a @ b) % field.p
    if a.ndim != 2 or b.ndim != 2:
        raise DimMismatch("extension-field matmul expects 2-D operands")
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for j in range(a.shape[1]):
        out = field.add(out, field.mul(a[:, j, None], b[None, j, :]))
    return out


def _eliminate(field: GF, m: np.ndarray):
    """Gauss-Jordan elimination with first-nonzero pivoting.

    Returns the nonzero RREF rows, the pivot columns, the number of row swaps
    and the list of pivot values met before normalisation.
    """
    m = np.array(m, dtype=np.int64, copy=True)
    rows, cols = m.shape
    r = 0
    pivots: list[int] = []
    pivot_values: list[int] = []
    swaps = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
            swaps += 1
        piv = int(m[r, c])
        pivot_values.append(piv)
        if piv != 1:
            m[r, c:] = field.mul(m[r, c:], field.s_inv(piv))
        others = np.flatnonzero(m[:, c])
        others = others[others != r]
        if others.size:
            factors = m[others, c][:, None]
            m[np.ix_(others, np.arange(c, cols))] = field.sub(
                m[others, c:], field.mul(factors, m[r, c:][None, :])
            )
        pivots.append(c)
        r += 1
    return m[:r], pivots, swaps, pivot_values


def rref(field: GF, m) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form (zero rows dropped) and pivot columns."""
    m = np.asarray(m, dtype=np.int64)
    if m.ndim != 2:
        raise InvalidArgument("rref expects a 2-D array")
    if m.shape[0] == 0:
        return m.copy(), []
    red, piv, _, _ = _eliminate(field, m)
    return red, piv


def rank(field: GF, m) -> int:
    return len(rref(field, m)[1])


def determinant(field: GF, m) -> int:
    m = np.asarray(m, dtype=np.int64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimMismatch("determinant of a non-square matrix")
    n = m.shape[0]
    if n == 0:
        return 1
    _, piv, swaps, vals = _eliminate(field, m)
    if len(piv) < n:
        return 0
    d = 1
    for v in vals:
        d = field.s_mul(d, v)
    if swaps % 2:
        d = field.s_neg(d)
    return d


def inverse(field: GF, m) -> np.ndarray:
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[0]
    aug = np.concatenate([m, identity(n)], axis=1)
    red, piv = rref(field, aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise InvalidArgument("matrix is singular")
    return red[:n, n:]


def _kernel_rows(field: GF, red: np.ndarray, piv: list[int], cols: int) -> np.ndarray:
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, pc in enumerate(piv):
            basis[t, pc] = field.s_neg(int(red[i, f]))
    return basis


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of F^n stored as the RREF rows of a basis."""

    field: GF
    ambient_dim: int
    basis: np.ndarray

    @classmethod
    def span(cls, field: GF, vectors, ambient_dim: int | None = None) -> "Subspace":
        v = np.asarray(vectors, dtype=np.int64)
        if v.size == 0:
            if ambient_dim is None:
                ambient_dim = v.shape[-1] if v.ndim == 2 else 0
            return cls(field, ambient_dim, np.zeros((0, ambient_dim), dtype=np.int64))
        v = v.reshape(-1, v.shape[-1])
        if ambient_dim is not None and v.shape[1] != ambient_dim:
            raise DimMismatch(f"vectors of length {v.shape[1]} in F^{ambient_dim}")
        red, _ = rref(field, v)
        return cls(field, v.shape[1], red)

    @classmethod
    def zero(cls, field: GF, n: int) -> "Subspace":
        return cls(field, n, np.zeros((0, n), dtype=np.int64))

    @classmethod
    def full(cls, field: GF, n: int) -> "Subspace":
        return cls(field, n, identity(n))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def pivots(self) -> list[int]:
        return [int(np.flatnonzero(row)[0]) for row in self.basis]

    def key(self) -> bytes:
        return self.basis.astype("<i8").tobytes() + self.ambient_dim.to_bytes(4, "little")

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis={self.basis.tolist()})"

    def reduce(self, vectors) -> np.ndarray:
        """Reduce rows of ``vectors`` modulo this subspace (zero at pivots)."""
        v = np.array(vectors, dtype=np.int64, copy=True).reshape(-1, self.ambient_dim)
        for row, pc in zip(self.basis, self.pivots):
            c = v[:, pc].copy()
            nz = np.flatnonzero(c)
            if nz.size:
                v[nz] = self.field.sub(v[nz], self.field.mul(c[nz, None], row[None, :]))
        return v

    def contains(self, other) -> bool:
        """True iff ``other`` (a Subspace or row vectors) lies in this space."""
        vecs = other.basis if isinstance(other, Subspace) else np.asarray(other, dtype=np.int64)
        if isinstance(other, Subspace) and other.field != self.field:
            raise DimMismatch("subspaces over different fields")
        if vecs.size == 0:
            return True
        vecs = vecs.reshape(-1, vecs.shape[-1])
        if vecs.shape[1] != self.ambient_dim:
            raise DimMismatch(f"vectors of length {vecs.shape[1]} vs ambient {self.ambient_dim}")
        return not np.any(self.reduce(vecs))

    def coordinates(self, vectors) -> np.ndarray:
        """Coefficients expressing each row of ``vectors`` in ``self.basis``."""
        v = np.asarray(vectors, dtype=np.int64).reshape(-1, self.ambient_dim)
        if not self.contains(v):
            raise InvalidArgument("vector not in subspace")
        return v[:, self.pivots]

    def __add__(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise DimMismatch("ambient dimensions differ")
        return Subspace.span(
            self.field, np.concatenate([self.basis, other.basis]), self.ambient_dim
        )

    def intersection(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise DimMismatch("ambient dimensions differ")
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient_dim)
        # x A = y B  <=>  [x | y] [A; -B] = 0
        stacked = np.concatenate([self.basis, self.field.neg(other.basis)]).T
        ker = kernel(self.field, stacked)
        vecs = matmul(self.field, ker.basis[:, : self.dim], self.basis)
        return Subspace.span(self.field, vecs, self.ambient_dim)

    def image(self, mat: np.ndarray) -> "Subspace":
        """``{mat @ x : x in self}`` for a square matrix acting on columns."""
        return Subspace.span(self.field, matmul(self.field, mat, self.basis.T).T, self.ambient_dim)


def kernel(field: GF, m) -> Subspace:
    """Right kernel ``{x : m @ x = 0}``."""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1]
    red, piv = rref(field, m)
    return Subspace(field, cols, _kernel_rows(field, red, piv, cols))


def column_space(field: GF, m) -> Subspace:
    m = np.asarray(m, dtype=np.int64)
    return Subspace.span(field, m.T, m.shape[0])


@dataclass(frozen=True)
class Decomposition:
    rank: int
    det: int | None
    kernel: Subspace
    image: Subspace


def decompose(field: GF, m) -> Decomposition:
    """Rank, determinant (square only), right kernel and column space."""
    m = np.asarray(m, dtype=np.int64)
    red, piv = rref(field, m)
    ker = Subspace(field, m.shape[1], _kernel_rows(field, red, piv, m.shape[1]))
    det = determinant(field, m) if m.shape[0] == m.shape[1] else None
    return Decomposition(len(piv), det, ker, column_space(field, m))


def contains(s: Subspace, t) -> bool:
    """Whether ``t`` lies in ``s``.

    ``t`` is a :class:`Subspace`, or a matrix whose *columns* are tested.
    """
    if isinstance(t, Subspace):
        if t.ambient_dim != s.ambient_dim:
            raise DimMismatch("ambient dimensions differ")
        return s.contains(t)
    t = np.asarray(t, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != s.ambient_dim:
        raise DimMismatch(f"matrix with {t.shape[0]} rows vs ambient {s.ambient_dim}")
    return s.contains(t.T)


def annihilator(field: GF, f) -> Subspace:
    """``ker f`` for a nonzero covector ``f`` on F^n."""
    f = np.asarray(f, dtype=np.int64).reshape(1, -1)
    if not np.any(f):
        raise InvalidArgument("annihilator of the zero covector")
    return kernel(field, f)


def complement_basis(space: Subspace) -> np.ndarray:
    """Standard basis vectors at the non-pivot columns of ``space``."""
    free = [c for c in range(space.ambient_dim) if c not in set(space.pivots)]
    out = np.zeros((len(free), space.ambient_dim), dtype=np.int64)
    for i, c in enumerate(free):
        out[i, c] = 1
    return out

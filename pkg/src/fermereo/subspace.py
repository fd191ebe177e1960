"""Subspaces of the single-particle space, stored canonically."""

from __future__ import annotations

import numpy as np
import scipy.linalg

from ._config import resolve_eps


def _as_rows(vectors, dim: int | None) -> np.ndarray:
    arr = np.asarray(vectors, dtype=np.complex128)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise ValueError(f"expected a list of vectors, got shape {arr.shape}")
    if arr.shape[0] == 0 and dim is not None:
        arr = np.zeros((0, dim), dtype=np.complex128)
    if dim is not None and arr.shape[1] != dim:
        raise ValueError(f"vectors have length {arr.shape[1]}, expected {dim}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vectors contain NaN or Inf")
    return arr


def numerical_rank(singular_values: np.ndarray, eps: float) -> int:
    """Count singular values above ``eps`` times the largest one."""
    if singular_values.size == 0:
        return 0
    top = singular_values[0]
    if top <= eps:
        return 0
    return int(np.count_nonzero(singular_values > eps * top))


def _canonical_generators(projector: np.ndarray, rank: int) -> np.ndarray:
    # Gram-Schmidt on pivoted projector columns; fixed phase makes R's diagonal positive.
    if rank == 0:
        return np.zeros((0, projector.shape[0]), dtype=np.complex128)
    q, r, _ = scipy.linalg.qr(projector, pivoting=True)
    q = q[:, :rank]
    diag = np.diagonal(r)[:rank]
    phases = diag / np.abs(diag)
    q = q * phases[None, :]
    return np.ascontiguousarray(q.T)


class Subspace:
    """A subspace of C^dim, held as orthonormal generator rows plus its projector.

    Build instances through the classmethods; the constructor assumes its
    input is already canonical. Equality compares projectors entrywise within
    the current tolerance, so instances are deliberately unhashable.
    """

    __slots__ = ("_gens", "_proj")

    def __init__(self, generators: np.ndarray, projector: np.ndarray):
        generators = np.array(generators, dtype=np.complex128)
        projector = np.array(projector, dtype=np.complex128)
        generators.setflags(write=False)
        projector.setflags(write=False)
        self._gens = generators
        self._proj = projector

    # -- construction -----------------------------------------------------

    @classmethod
    def span(cls, vectors, dim: int | None = None, eps: float | None = None) -> "Subspace":
        """Span of the given vectors (rows); dependent or zero vectors are fine."""
        eps = resolve_eps(eps)
        rows = _as_rows(vectors, dim)
        d = rows.shape[1]
        if rows.shape[0] == 0:
            return cls.zero(d)
        _, sv, vh = np.linalg.svd(rows, full_matrices=False)
        k = numerical_rank(sv, eps)
        basis = vh[:k]
        return cls.from_orthonormal(basis, d)

    @classmethod
    def from_orthonormal(cls, basis, dim: int | None = None) -> "Subspace":
        rows = _as_rows(basis, dim)
        k = rows.shape[0]
        projector = rows.T @ rows.conj()
        projector = 0.5 * (projector + projector.conj().T)
        return cls(_canonical_generators(projector, k), projector)

    @classmethod
    def from_projector(cls, projector, eps: float | None = None) -> "Subspace":
        eps = resolve_eps(eps)
        m = np.asarray(projector, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("projector must be a square matrix")
        if not is_projector(m, eps):
            raise ValueError("matrix is not a Hermitian idempotent within tolerance")
        w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
        return cls.from_orthonormal(v[:, w > 0.5].T, m.shape[0])

    @classmethod
    def coordinate(cls, dim: int, indices) -> "Subspace":
        """Span of standard basis vectors (0-based indices)."""
        idx = sorted({int(i) for i in indices})
        if idx and not (0 <= idx[0] and idx[-1] < dim):
            raise ValueError(f"indices {idx} out of range for dim {dim}")
        basis = np.zeros((len(idx), dim), dtype=np.complex128)
        basis[np.arange(len(idx)), idx] = 1.0
        proj = np.zeros((dim, dim), dtype=np.complex128)
        proj[idx, idx] = 1.0
        return cls(basis, proj)

    @classmethod
    def full(cls, dim: int) -> "Subspace":
        return cls.coordinate(dim, range(dim))

    @classmethod
    def zero(cls, dim: int) -> "Subspace":
        return cls(np.zeros((0, dim), dtype=np.complex128), np.zeros((dim, dim), dtype=np.complex128))

    @classmethod
    def random(cls, dim: int, rank: int, rng: np.random.Generator, within: "Subspace | None" = None) -> "Subspace":
        """Unitarily invariant random subspace, optionally inside ``within``."""
        host = within if within is not None else cls.full(dim)
        if not 0 <= rank <= host.rank:
            raise ValueError(f"rank {rank} outside 0..{host.rank}")
        z = rng.standard_normal((rank, host.rank)) + 1j * rng.standard_normal((rank, host.rank))
        return cls.span(z @ host.generators, dim)

    # -- accessors --------------------------------------------------------

    @property
    def dim(self) -> int:
        return self._proj.shape[0]

    @property
    def rank(self) -> int:
        return self._gens.shape[0]

    @property
    def generators(self) -> np.ndarray:
        return self._gens

    @property
    def projector(self) -> np.ndarray:
        return self._proj

    @property
    def is_zero(self) -> bool:
        return self.rank == 0

    def is_coordinate(self, eps: float | None = None) -> bool:
        """True when spanned by standard basis vectors."""
        eps = resolve_eps(eps)
        diag = np.diagonal(self._proj)
        off = self._proj - np.diag(diag)
        return bool(
            np.max(np.abs(off), initial=0.0) <= eps
            and np.all((np.abs(diag) <= eps) | (np.abs(diag - 1.0) <= eps))
        )

    def coordinate_indices(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(np.abs(np.diagonal(self._proj)) > 0.5))

    def perp(self) -> "Subspace":
        """Orthocomplement in the full space."""
        if self.is_coordinate():
            return Subspace.coordinate(self.dim, set(range(self.dim)) - set(self.coordinate_indices()))
        comp = np.eye(self.dim) - self._proj
        return Subspace.from_orthonormal(_range_basis(comp), self.dim)

    def contains_vector(self, v, eps: float | None = None) -> bool:
        eps = resolve_eps(eps)
        v = np.asarray(v, dtype=np.complex128)
        n = np.linalg.norm(v)
        if n == 0:
            return True
        return bool(np.linalg.norm(v - self._proj @ v) <= eps * max(1.0, n))

    def equals(self, other: "Subspace", eps: float | None = None) -> bool:
        eps = resolve_eps(eps)
        if self.dim != other.dim or self.rank != other.rank:
            return False
        return bool(np.max(np.abs(self._proj - other._proj), initial=0.0) <= eps)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def __repr__(self):
        return f"Subspace(dim={self.dim}, rank={self.rank})"


def _range_basis(m: np.ndarray) -> np.ndarray:
    # eigenvalues of a projector are 0 or 1 up to noise
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    return v[:, w > 0.5].T


def is_projector(m: np.ndarray, eps: float | None = None) -> bool:
    eps = resolve_eps(eps)
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    if m.size == 0:
        return True
    return bool(
        np.max(np.abs(m - m.conj().T)) <= eps and np.max(np.abs(m @ m - m)) <= eps
    )

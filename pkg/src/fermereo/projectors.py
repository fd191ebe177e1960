"""Occupancy projectors on the antisymmetric sector.

``sigma(P, s, r)`` is the symmetric projector for "exactly r of s degree-1
constituents have property P". Three constructions are available and are
required to agree:

``"compress"``
    Sum of tensor products of P on r slots and P-perp on the remaining
    s - r slots, applied to the isometric image of every combination basis
    vector and read back in combination coordinates.
``"compound"``
    The s-th compound matrix of ``P + t P_perp`` is a polynomial in t whose
    coefficient of ``t**(s-r)`` is sigma(P, s, r); the coefficients are
    recovered exactly by a discrete Fourier transform over roots of unity.
``"diagonal"``
    For P spanned by standard basis vectors the projector is diagonal with
    entry 1 iff the combination has exactly r indices inside P.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial, sqrt

import numpy as np

from ._config import resolve_eps
from .combinatorics import SizeCapError, combination_table, mask_of
from .exterior import AntiSymTensor, embed_full
from .kernels import compound_kernel, occupancy_kernel
from .subspace import Subspace, is_projector

SECTOR_CAP = 10**3
PRODUCT_CAP = 10**6


@dataclass(frozen=True, eq=False)
class OccupancyProjector:
    base: Subspace
    s: int
    r: int
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.base.dim

    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))

    def is_zero(self, eps: float | None = None) -> bool:
        return bool(np.max(np.abs(self.matrix), initial=0.0) <= resolve_eps(eps))

    def apply(self, a: AntiSymTensor) -> AntiSymTensor:
        if a.dim != self.dim or a.degree != self.s:
            raise ValueError(f"projector acts on degree {self.s}, got degree {a.degree}")
        return AntiSymTensor(a.dim, a.degree, self.matrix @ a.vector)

    def __repr__(self):
        return f"OccupancyProjector(dim={self.dim}, rank(P)={self.base.rank}, s={self.s}, r={self.r})"


def _check_args(P: Subspace, s: int, r: int) -> None:
    d = P.dim
    if not 1 <= s <= d:
        raise ValueError(f"particle count s={s} outside 1..{d}")
    if not 0 <= r <= s:
        raise ValueError(f"occupancy r={r} outside 0..{s}")
    if comb(d, s) > SECTOR_CAP:
        raise SizeCapError(f"C({d},{s}) exceeds sector cap {SECTOR_CAP}")


def sigma_diagonal(P: Subspace, s: int, r: int) -> np.ndarray:
    _check_args(P, s, r)
    if not P.is_coordinate():
        raise ValueError("diagonal construction needs a coordinate subspace")
    _, masks, _ = combination_table(P.dim, s)
    occ = occupancy_kernel(masks, mask_of(P.coordinate_indices()))
    return np.diag((occ == r).astype(np.complex128))


def sigma_compress(P: Subspace, s: int, r: int) -> np.ndarray:
    _check_args(P, s, r)
    d = P.dim
    if d**s > PRODUCT_CAP:
        raise SizeCapError(f"{d}**{s} exceeds product cap {PRODUCT_CAP}")
    n = comb(d, s)
    combos = combination_table(d, s)[0]
    # columns of the isometry, stacked along a leading axis
    cols = np.stack([embed_full(AntiSymTensor.basis(d, k)).array for k in combos])
    ops = (P.projector, np.eye(d) - P.projector)
    acc = np.zeros_like(cols)
    for chosen in itertools.combinations(range(s), r):
        t = cols
        for slot in range(s):
            op = ops[0] if slot in chosen else ops[1]
            t = np.moveaxis(np.tensordot(t, op, axes=([slot + 1], [1])), -1, slot + 1)
        acc = acc + t
    # <iso(e_K), v> = sqrt(s!) v[K] for antisymmetric v
    read = acc[(slice(None),) + tuple(combos[:, j] for j in range(s))]
    return sqrt(factorial(s)) * read.T.reshape(n, n)


def compound_matrix(mat: np.ndarray, s: int) -> np.ndarray:
    """Matrix of s x s minors, rows/columns in lexicographic combination order."""
    combos = combination_table(mat.shape[0], s)[0]
    return compound_kernel(np.ascontiguousarray(mat, dtype=np.complex128), combos, combos)


def sigma_compound(P: Subspace, s: int, r: int) -> np.ndarray:
    _check_args(P, s, r)
    return _sigma_compound_all(P, s)[r]


def _sigma_compound_all(P: Subspace, s: int) -> list[np.ndarray]:
    """sigma(P, s, r) for every r = 0..s from one polynomial interpolation."""
    p = P.projector
    q = np.eye(P.dim) - p
    nodes = np.exp(2j * np.pi * np.arange(s + 1) / (s + 1))
    values = np.stack([compound_matrix(p + t * q, s) for t in nodes])
    # coefficient of t**j is (1/(s+1)) sum_k nodes[k]**(-j) values[k]
    coeffs = np.fft.fft(values, axis=0) / (s + 1)
    return [coeffs[s - r] for r in range(s + 1)]


_METHODS = {"diagonal": sigma_diagonal, "compress": sigma_compress, "compound": sigma_compound}


def sigma(P: Subspace, s: int, r: int, method: str = "auto") -> OccupancyProjector:
    """Build sigma^s_r(P) on the degree-s antisymmetric sector."""
    if method == "auto":
        method = "diagonal" if P.is_coordinate() else "compound"
    try:
        build = _METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}") from None
    m = build(P, s, r)
    m = 0.5 * (m + m.conj().T)
    m.setflags(write=False)
    return OccupancyProjector(P, s, r, m)


def sigma_family(P: Subspace, s: int) -> list[OccupancyProjector]:
    """All of sigma^s_0(P) ... sigma^s_s(P)."""
    _check_args(P, s, 0)
    if P.is_coordinate():
        return [sigma(P, s, r, "diagonal") for r in range(s + 1)]
    out = []
    for r, m in enumerate(_sigma_compound_all(P, s)):
        m = 0.5 * (m + m.conj().T)
        m.setflags(write=False)
        out.append(OccupancyProjector(P, s, r, m))
    return out


def at_least(P: Subspace, s: int, r: int) -> np.ndarray:
    """sum_{i >= r} sigma^s_i(P): at least r of s constituents have P."""
    return sum(op.matrix for op in sigma_family(P, s)[r:])


def _matrix_of(x) -> np.ndarray:
    if isinstance(x, OccupancyProjector):
        return x.matrix
    if isinstance(x, Subspace):
        return x.projector
    return np.asarray(x)


def projector_leq(A, B, eps: float | None = None) -> bool:
    """Projector order: ``A <= B`` iff AB = BA = A."""
    eps = resolve_eps(eps)
    a, b = _matrix_of(A), _matrix_of(B)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    for m in (a, b):
        if not is_projector(m, eps):
            raise ValueError("input is not a Hermitian idempotent within tolerance")
    if a.size == 0:
        return True
    return bool(np.max(np.abs(a @ b - a)) <= eps and np.max(np.abs(b @ a - a)) <= eps)


def is_eigenstate(matrix: np.ndarray, a: AntiSymTensor, eps: float | None = None) -> bool:
    """``matrix @ a == a`` within eps (relative to the norm of ``a``)."""
    eps = resolve_eps(eps)
    v = a.vector
    return bool(np.linalg.norm(matrix @ v - v) <= eps * max(1.0, np.linalg.norm(v)))


def occupancy_of_state(a: AntiSymTensor, P: Subspace, eps: float | None = None) -> int | None:
    """The definite number of constituents of ``a`` with property P, or None."""
    eps = resolve_eps(eps)
    if not a.is_state(eps):
        raise ValueError(f"expected a unit tensor, got norm {a.norm()}")
    if a.dim != P.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {P.dim}")
    s = a.degree
    if P.is_coordinate(eps):
        _, masks, _ = combination_table(a.dim, s)
        occ = occupancy_kernel(masks, mask_of(P.coordinate_indices()))
        weights = np.abs(a.vector) ** 2
        for r in range(s + 1):
            if weights[occ == r].sum() >= 1.0 - eps:
                return r
        return None
    for op in sigma_family(P, s):
        if is_eigenstate(op.matrix, a, eps):
            return op.r
    return None


def leq_via_occupancy(P: Subspace, Q: Subspace, eps: float | None = None) -> bool:
    """Decide ``P <= Q`` through ``sigma^s_s(Q) <= sigma^s_r(P)``, r = dim P, s = dim Q.

    When r > s the occupancy projector is undefined and P cannot lie in Q, so
    the answer is False.
    """
    if P.dim != Q.dim:
        raise ValueError(f"dimension mismatch: {P.dim} vs {Q.dim}")
    r, s = P.rank, Q.rank
    if r == 0 or s == 0:
        raise ValueError("occupancy order needs nonzero subspaces")
    if r > s:
        return False
    return projector_leq(sigma(Q, s, s), sigma(P, s, r), eps)

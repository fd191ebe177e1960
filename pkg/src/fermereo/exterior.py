"""Antisymmetric tensors in combination-basis coordinates.

A degree-r element of the exterior power over C^d is a complex vector of
length C(d, r); entry K is the coefficient of the normalised wedge
``e_{k1} ^ ... ^ e_{kr}`` for the K-th increasing index tuple in
lexicographic order. The dense full-tensor form is only used as a checking
bridge and is size-capped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial, sqrt

import numpy as np

from ._config import resolve_eps
from .combinatorics import SizeCapError, combination_table, permutation_parity, rank_combination
from .kernels import contraction_kernel, wedge_kernel
from .subspace import Subspace, numerical_rank

PRODUCT_CAP = 10**6


class AntiSymTensor:
    """Immutable element of the degree-``degree`` exterior power over C^dim."""

    __slots__ = ("_dim", "_degree", "_vec")

    def __init__(self, dim: int, degree: int, vec):
        vec = np.array(vec, dtype=np.complex128).reshape(-1)
        if vec.shape[0] != comb(dim, degree):
            raise ValueError(f"expected {comb(dim, degree)} coefficients for ({dim}, {degree}), got {vec.shape[0]}")
        if not np.all(np.isfinite(vec)):
            raise ValueError("coefficients must be finite")
        vec.setflags(write=False)
        self._dim = int(dim)
        self._degree = int(degree)
        self._vec = vec

    @classmethod
    def zero(cls, dim: int, degree: int) -> "AntiSymTensor":
        return cls(dim, degree, np.zeros(comb(dim, degree), dtype=np.complex128))

    @classmethod
    def basis(cls, dim: int, indices) -> "AntiSymTensor":
        """Unit combination vector for 0-based, strictly increasing ``indices``."""
        indices = tuple(indices)
        vec = np.zeros(comb(dim, len(indices)), dtype=np.complex128)
        vec[rank_combination(dim, indices)] = 1.0
        return cls(dim, len(indices), vec)

    @classmethod
    def from_vector(cls, v) -> "AntiSymTensor":
        v = np.asarray(v, dtype=np.complex128).reshape(-1)
        return cls(v.shape[0], 1, v)

    @classmethod
    def from_dict(cls, dim: int, degree: int, coeffs: dict) -> "AntiSymTensor":
        vec = np.zeros(comb(dim, degree), dtype=np.complex128)
        for key, value in coeffs.items():
            if len(key) != degree:
                raise ValueError(f"key {key} has wrong length for degree {degree}")
            vec[rank_combination(dim, key)] += value
        return cls(dim, degree, vec)

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def vector(self) -> np.ndarray:
        return self._vec

    @property
    def coeffs(self) -> dict[tuple[int, ...], complex]:
        """Nonzero coefficients keyed by 0-based index tuples."""
        combos = combination_table(self._dim, self._degree)[0]
        return {tuple(int(i) for i in combos[k]): complex(self._vec[k]) for k in np.flatnonzero(self._vec)}

    def __getitem__(self, indices) -> complex:
        return complex(self._vec[rank_combination(self._dim, indices)])

    def norm(self) -> float:
        return float(np.linalg.norm(self._vec))

    def is_state(self, eps: float | None = None) -> bool:
        return abs(self.norm() - 1.0) <= resolve_eps(eps)

    def is_zero(self, eps: float | None = None) -> bool:
        return self.norm() <= resolve_eps(eps)

    def normalized(self) -> "AntiSymTensor":
        n = self.norm()
        if n == 0:
            raise ValueError("cannot normalise the zero tensor")
        return AntiSymTensor(self._dim, self._degree, self._vec / n)

    def _check_same(self, other):
        if not isinstance(other, AntiSymTensor):
            return NotImplemented
        if (self._dim, self._degree) != (other._dim, other._degree):
            raise ValueError(
                f"shape mismatch: ({self._dim}, {self._degree}) vs ({other._dim}, {other._degree})"
            )
        return None

    def __add__(self, other):
        if self._check_same(other) is NotImplemented:
            return NotImplemented
        return AntiSymTensor(self._dim, self._degree, self._vec + other._vec)

    def __sub__(self, other):
        if self._check_same(other) is NotImplemented:
            return NotImplemented
        return AntiSymTensor(self._dim, self._degree, self._vec - other._vec)

    def __neg__(self):
        return AntiSymTensor(self._dim, self._degree, -self._vec)

    def __mul__(self, scalar):
        if isinstance(scalar, AntiSymTensor):
            return NotImplemented
        return AntiSymTensor(self._dim, self._degree, complex(scalar) * self._vec)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return AntiSymTensor(self._dim, self._degree, self._vec / complex(scalar))

    def __xor__(self, other):
        return wedge(self, other)

    def allclose(self, other: "AntiSymTensor", atol: float | None = None) -> bool:
        atol = resolve_eps(atol)
        if (self._dim, self._degree) != (other._dim, other._degree):
            return False
        return bool(np.max(np.abs(self._vec - other._vec), initial=0.0) <= atol)

    def __repr__(self):
        terms = ", ".join(f"{k}: {v:.6g}" for k, v in list(self.coeffs.items())[:6])
        more = ", ..." if np.count_nonzero(self._vec) > 6 else ""
        return f"AntiSymTensor(dim={self._dim}, degree={self._degree}, {{{terms}{more}}})"


@dataclass(frozen=True)
class ProductTensor:
    """Dense element of the r-fold tensor power, shape ``(dim,) * degree``."""

    dim: int
    degree: int
    array: np.ndarray

    def __post_init__(self):
        arr = np.array(self.array, dtype=np.complex128)
        if arr.shape != (self.dim,) * self.degree:
            raise ValueError(f"array shape {arr.shape} does not match ({self.dim},)*{self.degree}")
        _check_cap(self.dim, self.degree)
        arr.setflags(write=False)
        object.__setattr__(self, "array", arr)

    @classmethod
    def product(cls, vectors) -> "ProductTensor":
        """Elementary tensor v1 (x) v2 (x) ... of the given vectors."""
        vectors = [np.asarray(v, dtype=np.complex128) for v in vectors]
        if not vectors:
            raise ValueError("need at least one factor")
        d = vectors[0].shape[0]
        _check_cap(d, len(vectors))
        out = vectors[0]
        for v in vectors[1:]:
            out = np.multiply.outer(out, v)
        return cls(d, len(vectors), out)

    def inner(self, other: "ProductTensor") -> complex:
        return complex(np.vdot(self.array, other.array))


def _check_cap(dim: int, degree: int, cap: int = PRODUCT_CAP) -> None:
    if dim**degree > cap:
        raise SizeCapError(f"dense tensor of size {dim}**{degree} exceeds cap {cap}")


def _check_dims(a: AntiSymTensor, b: AntiSymTensor) -> None:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")


def wedge(a: AntiSymTensor, b: AntiSymTensor) -> AntiSymTensor:
    """Exterior product; exact shuffle signs, no renormalisation."""
    _check_dims(a, b)
    d, r, s = a.dim, a.degree, b.degree
    if r + s > d:
        return AntiSymTensor.zero(d, r + s)
    _, ma, _ = combination_table(d, r)
    _, mb, _ = combination_table(d, s)
    _, _, rank_of_mask = combination_table(d, r + s)
    out = wedge_kernel(a.vector, ma, b.vector, mb, rank_of_mask, comb(d, r + s))
    return AntiSymTensor(d, r + s, out)


def wedge_all(vectors, dim: int | None = None) -> AntiSymTensor:
    """v1 ^ v2 ^ ... for a sequence of degree-1 vectors (arrays or tensors)."""
    factors = [v if isinstance(v, AntiSymTensor) else AntiSymTensor.from_vector(v) for v in vectors]
    if not factors:
        if dim is None:
            raise ValueError("dim required for an empty wedge")
        return AntiSymTensor(dim, 0, [1.0])
    out = factors[0]
    for f in factors[1:]:
        out = wedge(out, f)
    return out


def apply_permutation(t: ProductTensor, perm) -> ProductTensor:
    """Move the tensor factor in slot i to slot ``perm[i]``."""
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(t.degree)):
        raise ValueError(f"{perm} is not a permutation of {t.degree} slots")
    inv = np.argsort(perm)
    return ProductTensor(t.dim, t.degree, np.transpose(t.array, axes=inv))


def antisymmetrize(t: ProductTensor) -> AntiSymTensor:
    """Image of ``t`` under ``(1/sqrt(r!)) sum_pi sgn(pi) U(pi)``, in combination coordinates.

    Maps ``v1 (x) ... (x) vr`` to ``v1 ^ ... ^ vr``. Because the operator is
    sqrt(r!) times the orthogonal projector, ``antisymmetrize(embed_full(a))``
    equals ``sqrt(r!) * a``; use :func:`project_antisymmetric` for the exact
    left inverse of :func:`embed_full`.
    """
    d, r = t.dim, t.degree
    combos = combination_table(d, r)[0]
    out = np.zeros(len(combos), dtype=np.complex128)
    if r == 0:
        return AntiSymTensor(d, 0, [t.array[()]])
    for perm in itertools.permutations(range(r)):
        sign = -1.0 if permutation_parity(perm) else 1.0
        out += sign * t.array[tuple(combos[:, p] for p in perm)]
    return AntiSymTensor(d, r, out)


def project_antisymmetric(t: ProductTensor) -> AntiSymTensor:
    """Orthogonal projection onto the antisymmetric sector, in combination coordinates."""
    a = antisymmetrize(t)
    return a / sqrt(factorial(t.degree))


def embed_full(a: AntiSymTensor) -> ProductTensor:
    """Dense antisymmetric tensor whose combination coordinates are ``a``."""
    d, r = a.dim, a.degree
    _check_cap(d, r)
    arr = np.zeros((d,) * r, dtype=np.complex128)
    if r == 0:
        arr[()] = a.vector[0]
        return ProductTensor(d, 0, arr)
    combos = combination_table(d, r)[0]
    scale = 1.0 / sqrt(factorial(r))
    for perm in itertools.permutations(range(r)):
        sign = -scale if permutation_parity(perm) else scale
        arr[tuple(combos[:, p] for p in perm)] = sign * a.vector
    return ProductTensor(d, r, arr)


def inner(a: AntiSymTensor, b: AntiSymTensor) -> complex:
    """Hermitian inner product, conjugate-linear in ``a``."""
    _check_dims(a, b)
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")
    return complex(np.vdot(a.vector, b.vector))


def one_body_map(a: AntiSymTensor) -> np.ndarray:
    """Matrix whose rows are the contractions of ``a`` by each (r-1)-combination."""
    d, r = a.dim, a.degree
    if r == 0:
        return np.zeros((0, d), dtype=np.complex128)
    _, masks, _ = combination_table(d, r)
    _, _, rank_lower = combination_table(d, r - 1)
    return contraction_kernel(a.vector, masks, rank_lower, comb(d, r - 1), d)


@dataclass(frozen=True)
class DecomposabilityVerdict:
    decomposable: bool
    support: Subspace
    support_rank: int
    overlap: float

    def __bool__(self):
        return self.decomposable


def is_decomposable(a: AntiSymTensor, eps: float | None = None) -> DecomposabilityVerdict:
    """Decide whether ``a`` is a wedge of degree-1 vectors.

    The one-body support (span of all single-vector contractions) has rank
    at least ``a.degree`` and equals it exactly for decomposable tensors; the
    wedge of an orthonormal basis of the support is then checked to be
    proportional to ``a``.
    """
    eps = resolve_eps(eps)
    n = a.norm()
    if n <= eps:
        raise ValueError("the zero tensor has no decomposability verdict")
    if a.degree == 0:
        return DecomposabilityVerdict(True, Subspace.zero(a.dim), 0, 1.0)
    m = one_body_map(a)
    _, sv, vh = np.linalg.svd(m, full_matrices=False)
    k = numerical_rank(sv, eps)
    support = Subspace.from_orthonormal(vh[:k], a.dim)
    overlap = 0.0
    if k == a.degree:
        b = wedge_all(support.generators)
        overlap = abs(inner(b, a)) / n
    decomposable = k == a.degree and abs(overlap - 1.0) <= eps
    return DecomposabilityVerdict(decomposable, support, k, overlap)


def decomposable_state(space: Subspace) -> AntiSymTensor:
    """Normalised wedge of the subspace's orthonormal generators."""
    if space.is_zero:
        raise ValueError("the zero subspace has no state")
    return wedge_all(space.generators)


def phase_equal(a: AntiSymTensor, b: AntiSymTensor, eps: float | None = None) -> bool:
    """Ray equality of two unit tensors."""
    eps = resolve_eps(eps)
    for t in (a, b):
        if not t.is_state(eps):
            raise ValueError(f"phase_equal needs unit tensors, got norm {t.norm()}")
    if (a.dim, a.degree) != (b.dim, b.degree):
        return False
    return abs(abs(inner(a, b)) - 1.0) <= eps

"""The skew group ring F_{q^2}^theta D_2n.

A ring element is a dense length-2n coefficient vector over F_{q^2}: index
i < n holds the coefficient of x^i, index n+i the coefficient of x^i y.
Coefficients are stored as an (2n, 2) int64 numpy array so that the skew
product (the hot loop of every scheme) vectorizes; a naive triple-loop
product that works directly on formal sums is kept as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Sequence

import numpy as np

from .dihedral import build_table, inverse, mul_index
from .field import Fq2, QuadraticField


class SubspaceTag(Enum):
    ZERO = "zero"
    CN_ONLY = "cn"
    CNY_ONLY = "cny"
    MIXED = "mixed"


@dataclass(frozen=True, eq=False)
class RingElement:
    """Immutable element of F_{q^2}^theta D_2n."""

    ring: "SkewRing"
    coeffs: np.ndarray  # shape (2n, 2), int64, entries in [0, p)

    def __post_init__(self) -> None:
        self.coeffs.setflags(write=False)

    def __add__(self, other: "RingElement") -> "RingElement":
        return self.ring.add(self, other)

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self.ring.sub(self, other)

    def __neg__(self) -> "RingElement":
        return self.ring.neg(self)

    def __mul__(self, other: "RingElement") -> "RingElement":
        return self.ring.mul(self, other)

    def adjunct(self) -> "RingElement":
        return self.ring.adjunct(self)

    def classify(self) -> SubspaceTag:
        return self.ring.classify(self)

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def coefficient(self, i: int) -> Fq2:
        return (int(self.coeffs[i, 0]), int(self.coeffs[i, 1]))

    def coefficients(self) -> List[Fq2]:
        return [self.coefficient(i) for i in range(self.coeffs.shape[0])]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring is other.ring and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self) -> int:
        return hash(self.coeffs.tobytes())

    def __repr__(self) -> str:  # pragma: no cover
        return f"RingElement(n={self.ring.n}, coeffs={self.coefficients()})"


class SkewRing:
    """F_{q^2}^theta D_2n with theta sending reflections to the Frobenius."""

    def __init__(self, p: int, n: int, lam: int | None = None, m: int = 1):
        self.field = QuadraticField(p, lam=lam, m=m)
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        self.p = p
        self.n = n
        self.size = 2 * n
        self.table = build_table(n)
        self._flat_table = self.table.ravel()
        # rows i >= n apply sigma (conjugation) to the right factor
        self._sigma_row = (np.arange(self.size) >= n)[:, None]
        self._inv_perm = np.array([inverse(n, k) for k in range(self.size)], dtype=np.int64)

    # -- construction ------------------------------------------------------

    def zero(self) -> RingElement:
        return RingElement(self, np.zeros((self.size, 2), dtype=np.int64))

    def one(self) -> RingElement:
        return self.basis(0)

    def basis(self, k: int, coeff: Fq2 = (1, 0)) -> RingElement:
        """coeff times the basis group element with index k."""
        if not 0 <= k < self.size:
            raise IndexError(f"basis index {k} out of range")
        c = np.zeros((self.size, 2), dtype=np.int64)
        c[k, 0] = coeff[0] % self.p
        c[k, 1] = coeff[1] % self.p
        return RingElement(self, c)

    def element(self, coeffs: Sequence[Fq2]) -> RingElement:
        if len(coeffs) != self.size:
            raise ValueError(f"expected {self.size} coefficients, got {len(coeffs)}")
        arr = np.array(coeffs, dtype=np.int64) % self.p
        return RingElement(self, arr)

    def _wrap(self, arr: np.ndarray) -> RingElement:
        return RingElement(self, arr)

    def _check(self, *elems: RingElement) -> None:
        for e in elems:
            if e.ring is not self:
                raise ValueError("ring element belongs to a different ring")
            if e.coeffs.shape != (self.size, 2):
                raise ValueError("coefficient vector has the wrong length")

    # -- linear structure ---------------------------------------------------

    def add(self, a: RingElement, b: RingElement) -> RingElement:
        self._check(a, b)
        return self._wrap((a.coeffs + b.coeffs) % self.p)

    def sub(self, a: RingElement, b: RingElement) -> RingElement:
        self._check(a, b)
        return self._wrap((a.coeffs - b.coeffs) % self.p)

    def neg(self, a: RingElement) -> RingElement:
        self._check(a)
        return self._wrap((-a.coeffs) % self.p)

    def scalar_mul(self, c: Fq2, a: RingElement) -> RingElement:
        self._check(a)
        p, lam = self.p, self.field.lam
        a0, a1 = a.coeffs[:, 0], a.coeffs[:, 1]
        out = np.empty_like(a.coeffs)
        out[:, 0] = (c[0] * a0 + lam * c[1] * a1) % p
        out[:, 1] = (c[0] * a1 + c[1] * a0) % p
        return self._wrap(out)

    # -- skew product --------------------------------------------------------

    def mul(self, a: RingElement, b: RingElement) -> RingElement:
        """Skew product: c[ij] += a_i * theta(g_i)(b_j) over all basis pairs.

        Vectorized: the sigma rows see the conjugated right factor; products
        are scattered through the flattened Cayley table with bincount.
        Intermediate sums stay far below 2^53, so float64 accumulation is exact.
        """
        self._check(a, b)
        p, lam, size = self.p, self.field.lam, self.size
        a0 = a.coeffs[:, 0][:, None]
        a1 = a.coeffs[:, 1][:, None]
        b0 = np.broadcast_to(b.coeffs[:, 0][None, :], (size, size))
        b1 = np.where(self._sigma_row, (p - b.coeffs[:, 1]) % p, b.coeffs[:, 1][None, :])
        v0 = a0 * b0 + lam * (a1 * b1)
        v1 = a0 * b1 + a1 * b0
        c0 = np.bincount(self._flat_table, weights=v0.ravel(), minlength=size)
        c1 = np.bincount(self._flat_table, weights=v1.ravel(), minlength=size)
        out = np.empty((size, 2), dtype=np.int64)
        out[:, 0] = c0.astype(np.int64) % p
        out[:, 1] = c1.astype(np.int64) % p
        return self._wrap(out)

    def naive_product(self, a: RingElement, b: RingElement) -> RingElement:
        """Independent oracle: formal-sum product with no precomputed table.

        Walks every pair of basis terms, applies theta via the reflection
        flag, and multiplies group elements through the closed-form dihedral
        relations.
        """
        self._check(a, b)
        f, n = self.field, self.n
        out = [f.zero] * self.size
        for i in range(self.size):
            ai = a.coefficient(i)
            if ai == (0, 0):
                continue
            twist = i >= n
            for j in range(self.size):
                bj = b.coefficient(j)
                if bj == (0, 0):
                    continue
                if twist:
                    bj = f.frobenius(bj)
                k = mul_index(n, i, j)
                out[k] = f.add(out[k], f.mul(ai, bj))
        return self.element(out)

    def adjunct(self, a: RingElement) -> RingElement:
        """Anti-isomorphism: sum a_g g -> sum theta(g^-1)(a_g) g^-1."""
        self._check(a)
        tmp = a.coeffs.copy()
        # reflections are involutions, their theta is sigma; rotations move to n-i
        tmp[self.n :, 1] = (self.p - tmp[self.n :, 1]) % self.p
        out = np.empty_like(tmp)
        out[self._inv_perm] = tmp
        return self._wrap(out)

    # -- subspace structure --------------------------------------------------

    def classify(self, a: RingElement) -> SubspaceTag:
        self._check(a)
        has_cn = bool(a.coeffs[: self.n].any())
        has_cny = bool(a.coeffs[self.n :].any())
        if has_cn and has_cny:
            return SubspaceTag.MIXED
        if has_cn:
            return SubspaceTag.CN_ONLY
        if has_cny:
            return SubspaceTag.CNY_ONLY
        return SubspaceTag.ZERO

    def phi(self, a: RingElement) -> RingElement:
        """Coefficient transport C_n y -> C_n: sum a_i x^i y -> sum a_i x^i."""
        if self.classify(a) not in (SubspaceTag.CNY_ONLY, SubspaceTag.ZERO):
            raise ValueError("phi is defined on elements supported on C_n y")
        out = np.zeros_like(a.coeffs)
        out[: self.n] = a.coeffs[self.n :]
        return self._wrap(out)

    def phi_inv(self, a: RingElement) -> RingElement:
        if self.classify(a) not in (SubspaceTag.CN_ONLY, SubspaceTag.ZERO):
            raise ValueError("phi_inv is defined on elements supported on C_n")
        out = np.zeros_like(a.coeffs)
        out[self.n :] = a.coeffs[: self.n]
        return self._wrap(out)

    def is_reversible(self, a: RingElement) -> bool:
        """Membership in Gamma_theta: C_n y support with palindromic coefficients."""
        if self.classify(a) not in (SubspaceTag.CNY_ONLY, SubspaceTag.ZERO):
            return False
        n = self.n
        for i in range(1, n):
            if not np.array_equal(a.coeffs[n + i], a.coeffs[n + (n - i) % n]):
                return False
        return True

    # -- samplers ------------------------------------------------------------

    def sample_ring(self, rng) -> RingElement:
        arr = np.array([rng.randrange(self.p) for _ in range(2 * self.size)], dtype=np.int64)
        return self._wrap(arr.reshape(self.size, 2))

    def sample_cn(self, rng) -> RingElement:
        out = np.zeros((self.size, 2), dtype=np.int64)
        for i in range(self.n):
            out[i, 0] = rng.randrange(self.p)
            out[i, 1] = rng.randrange(self.p)
        return self._wrap(out)

    def sample_cny(self, rng) -> RingElement:
        out = np.zeros((self.size, 2), dtype=np.int64)
        for i in range(self.n, self.size):
            out[i, 0] = rng.randrange(self.p)
            out[i, 1] = rng.randrange(self.p)
        return self._wrap(out)

    def sample_gamma(self, rng) -> RingElement:
        """Uniform element of Gamma_theta: free coefficient at index n, then a
        mirrored loop over indices n+1 .. n+floor(n/2)."""
        out = np.zeros((self.size, 2), dtype=np.int64)
        n = self.n
        out[n, 0] = rng.randrange(self.p)
        out[n, 1] = rng.randrange(self.p)
        for i in range(1, n // 2 + 1):
            c = (rng.randrange(self.p), rng.randrange(self.p))
            out[n + i] = c
            out[n + (n - i) % n] = c
        return self._wrap(out)

    def gamma_from_free(self, free: Sequence[Fq2]) -> RingElement:
        """Build a Gamma_theta element from its free coordinates
        (index n first, then n+1 .. n+floor(n/2))."""
        n = self.n
        expected = n // 2 + 1
        if len(free) != expected:
            raise ValueError(f"expected {expected} free coefficients, got {len(free)}")
        out = np.zeros((self.size, 2), dtype=np.int64)
        out[n] = np.array(free[0], dtype=np.int64) % self.p
        for i in range(1, n // 2 + 1):
            c = np.array(free[i], dtype=np.int64) % self.p
            out[n + i] = c
            out[n + (n - i) % n] = c
        return self._wrap(out)

    def gamma_free_count(self) -> int:
        return self.n // 2 + 1

    def gen_public_element(self, rng) -> RingElement:
        """Public h = h1 + h2 with both halves non-zero, by rejection sampling."""
        while True:
            a = self.sample_ring(rng)
            if a.coeffs[: self.n].any() and a.coeffs[self.n :].any():
                return a

    # -- enumeration (desk-scale solvers) ------------------------------------

    def iter_cn(self) -> Iterator[RingElement]:
        """All p^(2n) elements of F_{q^2}^theta C_n.  Desk scale only."""
        f = self.field
        coords = [f.zero] * self.size

        def rec(i: int):
            if i == self.n:
                yield self.element(list(coords))
                return
            for c in f.elements():
                coords[i] = c
                yield from rec(i + 1)

        yield from rec(0)

    def iter_gamma(self) -> Iterator[RingElement]:
        """All elements of Gamma_theta.  Desk scale only."""
        f = self.field
        free = [f.zero] * self.gamma_free_count()

        def rec(i: int):
            if i == len(free):
                yield self.gamma_from_free(list(free))
                return
            for c in f.elements():
                free[i] = c
                yield from rec(i + 1)

        yield from rec(0)

    def __repr__(self) -> str:  # pragma: no cover
        return f"SkewRing(p={self.p}, n={self.n}, lam={self.field.lam})"

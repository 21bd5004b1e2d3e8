"""Exact arithmetic and linear algebra over Z/p^N.

Residues are plain Python ints in ``[0, p^N)``.  The public types
(`PAdicScalar`, `PModVector`, `PModMatrix`) wrap them with their prime and
precision; the hot loops work on nested lists.

Smith normal form over the local ring Z/p^N picks, at every step, the entry of
minimal valuation (ties: smallest column, then smallest row).  Pivoting by
valuation makes the result on an integer matrix the truncation of the same
computation over the p-adic integers, up to a loss of ``max(exponents)``
digits in the transforms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence


def valuation(a: int, p: int, N: int) -> Optional[int]:
    """p-adic valuation of a residue mod p^N; None for zero."""
    a %= p**N
    if a == 0:
        return None
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


def inverse_unit(u: int, p: int, N: int) -> int:
    return pow(u, -1, p**N)


def signed(a: int, modulus: int) -> int:
    """Representative of ``a`` in the symmetric range around zero."""
    a %= modulus
    return a - modulus if a > modulus // 2 else a


@dataclass(frozen=True)
class PAdicScalar:
    prime: int
    precision: int
    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.prime**self.precision)

    def _coerce(self, other):
        if isinstance(other, PAdicScalar):
            if other.prime != self.prime:
                raise ValueError("mixed primes")
            return other.value, min(self.precision, other.precision)
        return int(other), self.precision

    def __add__(self, other):
        v, N = self._coerce(other)
        return PAdicScalar(self.prime, N, self.value + v)

    __radd__ = __add__

    def __sub__(self, other):
        v, N = self._coerce(other)
        return PAdicScalar(self.prime, N, self.value - v)

    def __rsub__(self, other):
        v, N = self._coerce(other)
        return PAdicScalar(self.prime, N, v - self.value)

    def __mul__(self, other):
        v, N = self._coerce(other)
        return PAdicScalar(self.prime, N, self.value * v)

    __rmul__ = __mul__

    def __neg__(self):
        return PAdicScalar(self.prime, self.precision, -self.value)

    def __eq__(self, other):
        if isinstance(other, PAdicScalar):
            if other.prime != self.prime:
                return False
            N = min(self.precision, other.precision)
            return (self.value - other.value) % self.prime**N == 0
        if isinstance(other, int):
            return (self.value - other) % self.prime**self.precision == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.prime, self.value))

    def valuation(self) -> Optional[int]:
        return valuation(self.value, self.prime, self.precision)

    def is_unit(self) -> bool:
        return self.value % self.prime != 0

    def inverse(self) -> "PAdicScalar":
        return PAdicScalar(self.prime, self.precision, inverse_unit(self.value, self.prime, self.precision))

    def reduce(self, precision: int) -> "PAdicScalar":
        if precision > self.precision:
            raise ValueError("cannot raise precision")
        return PAdicScalar(self.prime, precision, self.value)


@dataclass(frozen=True)
class PModVector:
    prime: int
    precision: int
    entries: tuple

    def __post_init__(self):
        q = self.prime**self.precision
        object.__setattr__(self, "entries", tuple(int(e) % q for e in self.entries))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def scalar(self, i) -> PAdicScalar:
        return PAdicScalar(self.prime, self.precision, self.entries[i])

    def __add__(self, other: "PModVector") -> "PModVector":
        return PModVector(self.prime, min(self.precision, other.precision),
                          [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "PModVector") -> "PModVector":
        return PModVector(self.prime, min(self.precision, other.precision),
                          [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return PModVector(self.prime, self.precision, [-a for a in self.entries])

    def scale(self, c: int) -> "PModVector":
        return PModVector(self.prime, self.precision, [c * a for a in self.entries])

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other):
        if not isinstance(other, PModVector):
            return NotImplemented
        if self.prime != other.prime or self.dim != other.dim:
            return False
        q = self.prime ** min(self.precision, other.precision)
        return all((a - b) % q == 0 for a, b in zip(self.entries, other.entries))

    def __hash__(self):
        return hash((self.prime, self.entries))

    @classmethod
    def zero(cls, prime, precision, dim):
        return cls(prime, precision, (0,) * dim)


class PModMatrix:
    """Rectangular matrix over Z/p^N, stored row-major as lists of ints."""

    def __init__(self, prime: int, precision: int, data: Sequence[Sequence[int]], cols: Optional[int] = None):
        q = prime**precision
        self.prime = prime
        self.precision = precision
        rows = [[int(a) % q for a in row] for row in data]
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged matrix")
        elif cols is None:
            cols = 0
        self._data = rows
        self.rows = len(rows)
        self._cols = ncols if rows else cols

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def modulus(self) -> int:
        return self.prime**self.precision

    @property
    def data(self):
        return [row[:] for row in self._data]

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def __eq__(self, other):
        if not isinstance(other, PModMatrix):
            return NotImplemented
        return (self.prime, self.precision, self._data, self.cols) == (
            other.prime, other.precision, other._data, other.cols)

    def __repr__(self):
        return f"PModMatrix({self.prime}^{self.precision}, {self._data})"

    @classmethod
    def identity(cls, prime, precision, n):
        return cls(prime, precision, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, prime, precision, rows, cols):
        return cls(prime, precision, [[0] * cols for _ in range(rows)], cols=cols)

    def __matmul__(self, other):
        if isinstance(other, PModMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            N = min(self.precision, other.precision)
            return PModMatrix(self.prime, N, matmul(self._data, other._data, other.cols), cols=other.cols)
        if isinstance(other, PModVector):
            N = min(self.precision, other.precision)
            return PModVector(self.prime, N, matvec(self._data, other.entries))
        raise TypeError(type(other))

    def transpose(self) -> "PModMatrix":
        return PModMatrix(self.prime, self.precision, [list(c) for c in zip(*self._data)] if self.rows else [],
                          cols=self.rows)

    def reduce(self, precision: int) -> "PModMatrix":
        return PModMatrix(self.prime, precision, self._data, cols=self.cols)


# -- list-level helpers -------------------------------------------------------

def matmul(A, B, bcols=None):
    if not A:
        return []
    if bcols is None:
        bcols = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else [()] * bcols
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


@dataclass(frozen=True)
class DiagonalForm:
    """``left @ M @ right == diag(p^e for e in exponents)`` mod p^N.

    ``exponents`` has one entry per pivot found (nondecreasing); every other
    diagonal entry is zero.  ``left_inv``/``right_inv`` are the inverses.
    """

    prime: int
    precision: int
    left: PModMatrix
    right: PModMatrix
    left_inv: PModMatrix
    right_inv: PModMatrix
    exponents: tuple
    shape: tuple

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @property
    def divisors(self) -> list:
        """Diagonal entries p^{e_1}, ..., p^{e_s}, then zeros."""
        k = min(self.shape)
        return [self.prime**e for e in self.exponents] + [0] * (k - self.rank)

    def diagonal_matrix(self) -> PModMatrix:
        rows, cols = self.shape
        D = [[0] * cols for _ in range(rows)]
        for i, e in enumerate(self.exponents):
            D[i][i] = self.prime**e
        return PModMatrix(self.prime, self.precision, D, cols=cols)


def _snf_lists(A, p, N):
    """Smith form of a list matrix over Z/p^N.

    Returns (L, R, Linv, Rinv, exponents) as lists; A is consumed.
    """
    q = p**N
    rows = len(A)
    cols = len(A[0]) if rows else 0
    L = [[int(i == j) for j in range(rows)] for i in range(rows)]
    Linv = [[int(i == j) for j in range(rows)] for i in range(rows)]
    R = [[int(i == j) for j in range(cols)] for i in range(cols)]
    Rinv = [[int(i == j) for j in range(cols)] for i in range(cols)]
    exps = []
    # valuations cached per entry would not survive the updates; recompute
    for k in range(min(rows, cols)):
        best = None
        for j in range(k, cols):
            for i in range(k, rows):
                a = A[i][j]
                if a:
                    v = 0
                    while a % p == 0:
                        a //= p
                        v += 1
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        v, i, j = best
        if i != k:
            A[i], A[k] = A[k], A[i]
            L[i], L[k] = L[k], L[i]
            for row in Linv:
                row[i], row[k] = row[k], row[i]
        if j != k:
            for row in A:
                row[j], row[k] = row[k], row[j]
            for row in R:
                row[j], row[k] = row[k], row[j]
            Rinv[j], Rinv[k] = Rinv[k], Rinv[j]
        pv = p**v
        u = A[k][k] // pv
        if u != 1:
            uinv = pow(u, -1, q)
            A[k] = [a * uinv % q for a in A[k]]
            L[k] = [a * uinv % q for a in L[k]]
            for row in Linv:
                row[k] = row[k] * u % q
        rowk = A[k]
        Lk = L[k]
        for i2 in range(rows):
            if i2 == k:
                continue
            a = A[i2][k]
            if a:
                f = a // pv
                A[i2] = [(x - f * y) % q for x, y in zip(A[i2], rowk)]
                L[i2] = [(x - f * y) % q for x, y in zip(L[i2], Lk)]
                for row in Linv:
                    row[k] = (row[k] + f * row[i2]) % q
        for j2 in range(k + 1, cols):
            a = A[k][j2]
            if a:
                f = a // pv
                A[k][j2] = 0
                for row in R:
                    row[j2] = (row[j2] - f * row[k]) % q
                Rinv[k] = [(x + f * y) % q for x, y in zip(Rinv[k], Rinv[j2])]
        exps.append(v)
    return L, R, Linv, Rinv, exps


def smith_normal_form(M: PModMatrix) -> DiagonalForm:
    p, N = M.prime, M.precision
    L, R, Linv, Rinv, exps = _snf_lists(M.data, p, N)
    return DiagonalForm(
        prime=p, precision=N,
        left=PModMatrix(p, N, L, cols=M.rows),
        right=PModMatrix(p, N, R, cols=M.cols),
        left_inv=PModMatrix(p, N, Linv, cols=M.rows),
        right_inv=PModMatrix(p, N, Rinv, cols=M.cols),
        exponents=tuple(exps),
        shape=(M.rows, M.cols),
    )


def _solve_with(form: DiagonalForm, b: Sequence[int]) -> Optional[list]:
    p, N = form.prime, form.precision
    q = p**N
    bb = matvec(form.left._data, b)
    bb = [x % q for x in bb]
    s = form.rank
    for i in range(s, len(bb)):
        if bb[i]:
            return None
    y = [0] * form.shape[1]
    for i, e in enumerate(form.exponents):
        pe = p**e
        if bb[i] % pe:
            return None
        y[i] = bb[i] // pe
    return [x % q for x in matvec(form.right._data, y)]


def solve_mod(M: PModMatrix, b: PModVector) -> Optional[PModVector]:
    """One solution of ``M x = b`` mod p^N, or None.

    Free coordinates in the diagonalised basis are set to zero, so the answer
    is deterministic.
    """
    if len(b) != M.rows:
        raise ValueError("shape mismatch")
    N = min(M.precision, b.precision)
    if N != M.precision:
        M = M.reduce(N)
    x = _solve_with(smith_normal_form(M), b.entries)
    if x is None:
        return None
    return PModVector(M.prime, N, x)


def kernel_basis(M: PModMatrix):
    """Generators of {x : Mx = 0 mod p^N} with their orders.

    Returns ``(generators, orders)``; the generators are independent, so the
    kernel has order ``prod(orders)``.
    """
    p, N = M.prime, M.precision
    form = smith_normal_form(M)
    R = form.right._data
    gens, orders = [], []
    cols = M.cols
    for j in range(cols):
        col = [R[i][j] for i in range(cols)]
        if j < form.rank:
            e = form.exponents[j]
            if e == 0:
                continue
            scale = p ** (N - e)
            gens.append(PModVector(p, N, [scale * c for c in col]))
            orders.append(p**e)
        else:
            gens.append(PModVector(p, N, col))
            orders.append(p**N)
    return gens, orders


class ModSubgroup:
    """A subgroup of (Z/p^r)^k given by generating rows.

    The canonical form comes from the Smith form of the generator matrix:
    ``basis[i]`` has order ``p^(r - f_i)`` and the subgroup is their direct sum.
    """

    def __init__(self, prime: int, level: int, dim: int, generators: Sequence[Sequence[int]] = ()):
        self.prime = prime
        self.level = level
        self.dim = dim
        q = prime**level
        gens = [[int(a) % q for a in g] for g in generators]
        gens = [g for g in gens if any(g)]
        for g in gens:
            if len(g) != dim:
                raise ValueError("generator of wrong length")
        self.generators = gens
        self._canon = None
        self._membership = None

    def _canonical(self):
        if self._canon is None:
            p, r = self.prime, self.level
            if not self.generators:
                self._canon = ([], [], [[int(i == j) for j in range(self.dim)] for i in range(self.dim)], [])
                return self._canon
            L, R, Linv, Rinv, exps = _snf_lists([g[:] for g in self.generators], p, r)
            # rows of Rinv: rowspace(G) = rowspace(D Rinv)
            q = p**r
            basis, orders = [], []
            for i, f in enumerate(exps):
                if f < r:
                    basis.append([p**f * a % q for a in Rinv[i]])
                    orders.append(p ** (r - f))
            self._canon = (basis, orders, Rinv, exps)
        return self._canon

    @property
    def basis(self):
        return [b[:] for b in self._canonical()[0]]

    @property
    def orders(self):
        return list(self._canonical()[1])

    def order(self) -> int:
        out = 1
        for o in self._canonical()[1]:
            out *= o
        return out

    def contains(self, v: Sequence[int]) -> bool:
        q = self.prime**self.level
        v = [int(a) % q for a in v]
        if not any(v):
            return True
        if not self.generators:
            return False
        if self._membership is None:
            Gt = [list(c) for c in zip(*self.generators)]
            self._membership = smith_normal_form(PModMatrix(self.prime, self.level, Gt))
        return _solve_with(self._membership, v) is not None

    def contains_subgroup(self, other: "ModSubgroup") -> bool:
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, ModSubgroup):
            return NotImplemented
        return (self.prime, self.level, self.dim) == (other.prime, other.level, other.dim) and \
            self.order() == other.order() and self.contains_subgroup(other)

    def __add__(self, other: "ModSubgroup") -> "ModSubgroup":
        return ModSubgroup(self.prime, self.level, self.dim, self.generators + other.generators)

    def scaled(self, c: int) -> "ModSubgroup":
        return ModSubgroup(self.prime, self.level, self.dim, [[c * a for a in g] for g in self.generators])

    def intersection(self, other: "ModSubgroup") -> "ModSubgroup":
        A, B = self.generators, other.generators
        if not A or not B:
            return ModSubgroup(self.prime, self.level, self.dim)
        # kernel of (x, y) -> xA - yB
        cols = [list(a) for a in A] + [[-c for c in b] for b in B]
        M = PModMatrix(self.prime, self.level, [list(c) for c in zip(*cols)])
        gens, _ = kernel_basis(M)
        q = self.prime**self.level
        out = []
        for g in gens:
            coeffs = g.entries[: len(A)]
            out.append([sum(c * a[j] for c, a in zip(coeffs, A)) % q for j in range(self.dim)])
        return ModSubgroup(self.prime, self.level, self.dim, out)

    def elements(self) -> Iterator[tuple]:
        basis, orders = self._canonical()[:2]
        q = self.prime**self.level
        for coeffs in itertools.product(*[range(o) for o in orders]):
            v = [0] * self.dim
            for c, b in zip(coeffs, basis):
                if c:
                    v = [(x + c * y) for x, y in zip(v, b)]
            yield tuple(x % q for x in v)

    def transversal(self) -> Iterator[tuple]:
        """Canonical coset representatives of this subgroup in (Z/p^r)^k."""
        p, r = self.prime, self.level
        q = p**r
        _, _, Rinv, exps = self._canonical()
        # coordinates z with x = z Rinv; subgroup = {z_i in p^{f_i}}
        bounds = [p ** min(f, r) for f in exps] + [q] * (self.dim - len(exps))
        for coeffs in itertools.product(*[range(b) for b in bounds]):
            v = [0] * self.dim
            for c, row in zip(coeffs, Rinv):
                if c:
                    v = [x + c * y for x, y in zip(v, row)]
            yield tuple(x % q for x in v)

    def index(self) -> int:
        return self.prime ** (self.level * self.dim) // self.order()

    def __repr__(self):
        return f"ModSubgroup(p={self.prime}, r={self.level}, orders={self.orders})"

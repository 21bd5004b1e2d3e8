"""Normalized cochains with values in T/p^r T, coboundaries and cohomology.

A cochain of degree n on a subgroup L of P is a dense table over the n-tuples
of non-identity elements of L (lexicographic in the parent indices), each
entry a vector of length d.  The flat integer vector of all entries is what
the coboundary matrices act on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .errors import DivNotDivisible, PrecisionUnstable
from .groups import PModuleAction, Subgroup
from .padic import (DiagonalForm, ModSubgroup, PModMatrix, _snf_lists, _solve_with,
                    kernel_basis, smith_normal_form, valuation)


def nonidentity(L: Subgroup) -> tuple:
    e = L.parent.identity
    return tuple(a for a in L.elements if a != e)


@lru_cache(maxsize=None)
def _tuples(elements: tuple, n: int) -> tuple:
    return tuple(itertools.product(elements, repeat=n))


@lru_cache(maxsize=None)
def _positions(elements: tuple, n: int) -> dict:
    return {t: i for i, t in enumerate(_tuples(elements, n))}


@dataclass(frozen=True)
class Cochain:
    """Normalized n-cochain L^n -> T/p^precision T.

    ``vec`` holds the entries, block ``i`` of length d being the value at
    the i-th tuple of non-identity elements.
    """

    subgroup: Subgroup
    action: PModuleAction = field(compare=False, repr=False)
    degree: int
    precision: int
    vec: tuple

    def __post_init__(self):
        q = self.modulus
        object.__setattr__(self, "vec", tuple(int(a) % q for a in self.vec))
        if len(self.vec) != self.size:
            raise ValueError(f"expected {self.size} entries, got {len(self.vec)}")

    @property
    def prime(self) -> int:
        return self.action.prime

    @property
    def d(self) -> int:
        return self.action.d

    @property
    def modulus(self) -> int:
        return self.action.prime**self.precision

    @property
    def size(self) -> int:
        return len(nonidentity(self.subgroup)) ** self.degree * self.action.d

    @classmethod
    def zero(cls, L, action, degree, precision):
        return cls(L, action, degree, precision, (0,) * (len(nonidentity(L)) ** degree * action.d))

    @classmethod
    def from_function(cls, L, action, degree, precision, fn):
        """Tabulate ``fn(*args) -> vector``; identity arguments are skipped."""
        vec = []
        for args in _tuples(nonidentity(L), degree):
            vec.extend(fn(*args))
        return cls(L, action, degree, precision, tuple(vec))

    @classmethod
    def from_table(cls, L, action, degree, precision, table: dict):
        """Build from a dict ``{tuple of elements: vector}``; missing keys are 0."""
        zero = (0,) * action.d
        return cls.from_function(L, action, degree, precision, lambda *a: table.get(tuple(a), zero))

    def __call__(self, *args) -> tuple:
        if len(args) != self.degree:
            raise TypeError(f"degree {self.degree} cochain called with {len(args)} arguments")
        e = self.subgroup.parent.identity
        if any(a == e for a in args):
            return (0,) * self.d
        i = _positions(nonidentity(self.subgroup), self.degree)[tuple(args)]
        d = self.d
        return self.vec[i * d:(i + 1) * d]

    def items(self):
        d = self.d
        for i, args in enumerate(_tuples(nonidentity(self.subgroup), self.degree)):
            yield args, self.vec[i * d:(i + 1) * d]

    def _like(self, vec, precision=None):
        return Cochain(self.subgroup, self.action, self.degree,
                       self.precision if precision is None else precision, tuple(vec))

    def _check(self, other):
        if self.subgroup.elements != other.subgroup.elements or self.degree != other.degree:
            raise ValueError("cochains live on different groups or degrees")

    def __add__(self, other):
        self._check(other)
        r = min(self.precision, other.precision)
        return self._like([a + b for a, b in zip(self.vec, other.vec)], r)

    def __sub__(self, other):
        self._check(other)
        r = min(self.precision, other.precision)
        return self._like([a - b for a, b in zip(self.vec, other.vec)], r)

    def __neg__(self):
        return self._like([-a for a in self.vec])

    def scale(self, c: int):
        return self._like([c * a for a in self.vec])

    def is_zero(self) -> bool:
        return not any(self.vec)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        if self.subgroup.elements != other.subgroup.elements or self.degree != other.degree:
            return False
        q = self.prime ** min(self.precision, other.precision)
        return all((a - b) % q == 0 for a, b in zip(self.vec, other.vec))

    def __hash__(self):
        return hash((self.subgroup.elements, self.degree, self.precision, self.vec))

    def valuation(self) -> Optional[int]:
        """Minimal p-adic valuation of the entries, None for the zero cochain."""
        vals = [valuation(a, self.prime, self.precision) for a in self.vec if a]
        return min(vals) if vals else None

    def to_dict(self) -> dict:
        return {"degree": self.degree, "precision": self.precision,
                "subgroup": list(self.subgroup.elements),
                "table": [[list(args), list(v)] for args, v in self.items() if any(v)]}


# ---------------------------------------------------------------- coboundary

def coboundary(gamma: Cochain) -> Cochain:
    """Delta_n by the alternating-sum formula, last term twisted by g_{n+1}."""
    n = gamma.degree
    G = gamma.subgroup.parent
    act = gamma.action
    q = gamma.modulus
    d = gamma.d

    def value(*g):
        out = [0] * d
        first = gamma(*g[1:])
        out = [a + b for a, b in zip(out, first)]
        for i in range(n):
            args = g[:i] + (G.mul(g[i], g[i + 1]),) + g[i + 2:]
            sign = -1 if i % 2 == 0 else 1
            out = [a + sign * b for a, b in zip(out, gamma(*args))]
        last = act.act(gamma(*g[:n]), g[n])
        sign = -1 if n % 2 == 0 else 1
        out = [(a + sign * b) % q for a, b in zip(out, last)]
        return out

    return Cochain.from_function(gamma.subgroup, act, n + 1, gamma.precision, value)


_matrix_cache: dict = {}


def coboundary_matrix(L: Subgroup, action: PModuleAction, n: int) -> list:
    """Integer matrix of Delta_n on flat cochain vectors (rows: degree n+1)."""
    key = (L.elements, action.key, n)
    if key in _matrix_cache:
        return _matrix_cache[key]
    G = L.parent
    d = action.d
    els = nonidentity(L)
    src = _positions(els, n)
    rows = len(els) ** (n + 1) * d
    cols = len(els) ** n * d
    D = [[0] * cols for _ in range(rows)]
    e = G.identity

    def add_block(r0, args, sign, A=None):
        if any(a == e for a in args):
            return
        c0 = src[args] * d
        for j in range(d):
            for i in range(d):
                # output coordinate j picks input coordinate i
                coeff = (A[i][j] if A is not None else int(i == j))
                if coeff:
                    D[r0 + j][c0 + i] += sign * coeff

    for ri, g in enumerate(_tuples(els, n + 1)):
        r0 = ri * d
        add_block(r0, g[1:], 1)
        for i in range(n):
            args = g[:i] + (G.mul(g[i], g[i + 1]),) + g[i + 2:]
            add_block(r0, args, -1 if i % 2 == 0 else 1)
        add_block(r0, g[:n], -1 if n % 2 == 0 else 1, action.matrices[g[n]])
    _matrix_cache[key] = D
    return D


def coboundary_via_matrix(gamma: Cochain) -> Cochain:
    D = coboundary_matrix(gamma.subgroup, gamma.action, gamma.degree)
    vec = [sum(a * b for a, b in zip(row, gamma.vec)) for row in D]
    return Cochain(gamma.subgroup, gamma.action, gamma.degree + 1, gamma.precision, tuple(vec))


def is_cocycle(gamma: Cochain) -> bool:
    return coboundary(gamma).is_zero()


def commutator_cochain(m: Sequence[int], L: Subgroup, action: PModuleAction, precision: int) -> Cochain:
    """lambda_m : l -> m^l - m, the 1-coboundary induced by m."""
    q = action.prime**precision
    return Cochain.from_function(
        L, action, 1, precision,
        lambda l: [(a - b) % q for a, b in zip(action.act(m, l), m)])


def solve_coboundary(target: Cochain, precision: Optional[int] = None) -> Optional[Cochain]:
    """Canonical c of degree n-1 with Delta(c) = target mod p^precision, or None."""
    n = target.degree
    r = target.precision if precision is None else precision
    L, act = target.subgroup, target.action
    p = act.prime
    if n == 0:
        raise ValueError("degree 0 cochains are not coboundaries")
    if n == 1:
        # Delta_0(m)(g) = m - m^g
        D = coboundary_matrix(L, act, 0)
    else:
        D = coboundary_matrix(L, act, n - 1)
    if not D or not D[0]:
        return Cochain.zero(L, act, n - 1, r) if target.reduce(r).is_zero() else None
    form = _form(D, p, r)
    x = _solve_with(form, [a % p**r for a in target.vec])
    if x is None:
        return None
    return Cochain(L, act, n - 1, r, tuple(x))


_form_cache: dict = {}


def _form(D, p, r) -> DiagonalForm:
    key = (id(D), p, r)
    hit = _form_cache.get(key)
    if hit is not None and hit[0] is D:
        return hit[1]
    form = smith_normal_form(PModMatrix(p, r, D, cols=len(D[0]) if D else 0))
    _form_cache[key] = (D, form)
    return form


# ---------------------------------------------------------------- transports

def reduce(gamma: Cochain, precision: int) -> Cochain:
    if precision > gamma.precision:
        raise ValueError("cannot raise precision by projection")
    return gamma._like(gamma.vec, precision)


Cochain.reduce = reduce


def restrict(gamma: Cochain, K: Subgroup) -> Cochain:
    """res_K for K a subgroup of gamma's domain."""
    if not set(K.elements) <= set(gamma.subgroup.elements):
        raise ValueError("restriction target is not a subgroup of the domain")
    return Cochain.from_function(K, gamma.action, gamma.degree, gamma.precision, gamma)


def project(gamma: Cochain, precision: int) -> Cochain:
    """pro: T/p^r T -> T/p^s T for s <= r."""
    return reduce(gamma, precision)


def include(gamma: Cochain, precision: int) -> Cochain:
    """inc: p^(s-r)T/p^s T -> T/p^s T, where gamma at level r stands for its
    image under division by p^(s-r)."""
    shift = precision - gamma.precision
    if shift < 0:
        raise ValueError("inclusion must not lower the level")
    return gamma._like([a * gamma.prime**shift for a in gamma.vec], precision)


def multiply(gamma: Cochain, times: int = 1) -> Cochain:
    """mul: T/p^r T -> T/p^(r+1) T, t -> pt (iterated ``times`` times)."""
    return include(gamma, gamma.precision + times)


def divide(gamma: Cochain, l: int = 1) -> Cochain:
    """div_l: p^l T/p^r T -> T/p^(r-l) T."""
    p = gamma.prime
    pl = p**l
    if any(a % pl for a in gamma.vec):
        raise DivNotDivisible(f"values are not divisible by {p}^{l}")
    if l > gamma.precision:
        raise ValueError("division below level 0")
    return gamma._like([a // pl for a in gamma.vec], gamma.precision - l)


def act(gamma: Cochain, g: int) -> Cochain:
    """gamma^g(g_1..g_n) = gamma(g_1^g, .., g_n^g)^(g^-1).

    The result lives on g L g^-1 when gamma lives on L.
    """
    G = gamma.subgroup.parent
    ginv = G.inv(g)
    target = gamma.subgroup.conjugate(ginv)
    A = gamma.action
    q = gamma.modulus
    return Cochain.from_function(
        target, A, gamma.degree, gamma.precision,
        lambda *args: A.act(gamma(*(G.conj(a, g) for a in args)), ginv, q))


def lift(gamma: Cochain, precision: int) -> Cochain:
    """Integer representatives of the entries, placed at a higher level."""
    return gamma._like(gamma.vec, precision)


def connecting(gamma: Cochain, r: int, precision: int) -> Cochain:
    """Connecting map of 0 -> p^r T -> T -> T/p^r T -> 0 followed by div_r.

    ``gamma`` is a cocycle at level r; it is lifted to level ``precision``,
    its coboundary computed there and divided by p^r.
    """
    if gamma.precision != r:
        gamma = reduce(gamma, r)
    delta = coboundary(lift(gamma, precision))
    return divide(delta, r)


# ---------------------------------------------------------------- groups

@dataclass
class CocycleGroup:
    """Z^n and B^n inside the flat cochain space at a finite level."""

    subgroup: Subgroup
    action: PModuleAction = field(repr=False)
    degree: int
    precision: int
    cocycles: ModSubgroup
    coboundaries: ModSubgroup

    @property
    def z_order(self) -> int:
        return self.cocycles.order()

    @property
    def b_order(self) -> int:
        return self.coboundaries.order()

    @property
    def h_order(self) -> int:
        return self.z_order // self.b_order

    def invariants(self) -> list:
        """Abelian invariants of H^n = Z^n / B^n (nontrivial cyclic factors)."""
        p = self.action.prime
        basis = self.cocycles.basis
        orders = self.cocycles.orders
        if not basis:
            return []
        N = self.precision
        # coordinates of B generators in the canonical basis of Z
        zs = smith_normal_form(PModMatrix(p, N, [list(c) for c in zip(*basis)]))
        rels = []
        for g in self.coboundaries.generators:
            c = _solve_with(zs, g)
            if c is None:
                raise AssertionError("coboundary outside cocycles")
            rels.append(c)
        for i, o in enumerate(orders):
            row = [0] * len(basis)
            row[i] = o
            rels.append(row)
        # the quotient is killed by max(orders), so one extra digit suffices
        top = 1
        while p**top <= max(orders):
            top += 1
        _, _, _, _, exps = _snf_lists([r[:] for r in rels], p, top)
        out = sorted(p**f for f in exps if f > 0)
        k = len(basis) - len(exps)
        return out + [0] * k

    def cochain(self, vec) -> Cochain:
        return Cochain(self.subgroup, self.action, self.degree, self.precision, tuple(vec))

    def generators(self) -> list:
        return [self.cochain(b) for b in self.cocycles.basis]

    def contains(self, gamma: Cochain) -> bool:
        return self.cocycles.contains(gamma.vec)

    def is_coboundary(self, gamma: Cochain) -> bool:
        return self.coboundaries.contains(gamma.vec)


def cocycle_group(L: Subgroup, action: PModuleAction, n: int, precision: int) -> CocycleGroup:
    """Z^n(L, T/p^r T) as a kernel and B^n as an image, at level r = precision."""
    p = action.prime
    dim = len(nonidentity(L)) ** n * action.d
    D = coboundary_matrix(L, action, n)
    if dim == 0:
        Z = ModSubgroup(p, precision, 0)
    elif not D:
        Z = ModSubgroup(p, precision, dim, [[int(i == j) for j in range(dim)] for i in range(dim)])
    else:
        gens, _ = kernel_basis(PModMatrix(p, precision, D, cols=dim))
        Z = ModSubgroup(p, precision, dim, [g.entries for g in gens])
    if n == 0:
        B = ModSubgroup(p, precision, dim)
    else:
        Dm = coboundary_matrix(L, action, n - 1)
        cols = [list(c) for c in zip(*Dm)] if Dm and Dm[0] else []
        B = ModSubgroup(p, precision, dim, cols)
    return CocycleGroup(L, action, n, precision, Z, B)


@dataclass
class TCohomology:
    """H^n(L, T) for T = Z_p^d, computed with a lattice basis of Z^n(L, T).

    ``basis`` is a Z_p-basis of Z^n(L, T) (in flat coordinates, at the working
    precision); ``classes`` are the abelian invariants p^f_j.  Class
    coordinates of a cocycle are given by ``class_of``.
    """

    subgroup: Subgroup
    action: PModuleAction = field(repr=False)
    degree: int
    precision: int
    rank: int                      # number of pivots of Delta_n
    delta_exponents: tuple         # elementary divisors of Delta_n
    right: list                    # R of SNF(Delta_n)
    right_inv: list
    class_left: list               # U_C
    class_exponents: tuple         # f_j (one per Z-basis vector, 0 for trivial factors)
    class_basis: list              # columns of U_C^-1 mapped back to flat cochains

    @property
    def invariants(self) -> list:
        p = self.action.prime
        return [p**f for f in self.class_exponents if f > 0]

    @property
    def order(self) -> int:
        out = 1
        for v in self.invariants:
            out *= v
        return out

    def _coords(self, gamma: Cochain) -> list:
        q = self.action.prime**self.precision
        y = [sum(a * b for a, b in zip(row, gamma.vec)) % q for row in self.right_inv]
        return y

    def class_of(self, gamma: Cochain) -> tuple:
        """Coordinates (c_j mod p^f_j) of [gamma] for the nontrivial factors."""
        p = self.action.prime
        z = self._coords(gamma)[self.rank:]
        c = [sum(a * b for a, b in zip(row, z)) for row in self.class_left]
        return tuple(ci % p**f for ci, f in zip(c, self.class_exponents) if f > 0)

    def is_cocycle(self, gamma: Cochain) -> bool:
        return coboundary(gamma).reduce(self.precision).is_zero()

    def transversal(self) -> list:
        """Canonical representatives sum c_j b_j, 0 <= c_j < p^f_j, zero first."""
        p = self.action.prime
        q = p**self.precision
        nontriv = [(b, f) for b, f in zip(self.class_basis, self.class_exponents) if f > 0]
        out = []
        for coeffs in itertools.product(*[range(p**f) for _, f in nontriv]):
            vec = [0] * len(self.right)
            for c, (b, _) in zip(coeffs, nontriv):
                if c:
                    vec = [x + c * y for x, y in zip(vec, b)]
            out.append(Cochain(self.subgroup, self.action, self.degree, self.precision,
                               tuple(x % q for x in vec)))
        return out

    def representative(self, gamma: Cochain) -> Cochain:
        """The transversal element in the class of gamma."""
        key = self.class_of(gamma)
        for rep in self.transversal():
            if self.class_of(rep) == key:
                return rep
        raise AssertionError("class not found in transversal")


def t_cohomology(L: Subgroup, action: PModuleAction, n: int, precision: int,
                 check: bool = True) -> TCohomology:
    """H^n(L, T) at working precision; with ``check`` the invariants are
    recomputed two digits higher and must agree."""
    coh = _t_cohomology(L, action, n, precision)
    if check:
        again = _t_cohomology(L, action, n, precision + 2)
        if again.invariants != coh.invariants:
            raise PrecisionUnstable(
                f"H^{n} invariants change from {coh.invariants} to {again.invariants}")
    return coh


def _t_cohomology(L, action, n, N) -> TCohomology:
    p = action.prime
    q = p**N
    dim = len(nonidentity(L)) ** n * action.d
    if dim == 0:
        return TCohomology(L, action, n, N, 0, (), [], [], [], (), [])
    D = coboundary_matrix(L, action, n)
    _, R, _, Rinv, exps = _snf_lists([row[:] for row in D], p, N)
    s = len(exps)
    if n == 0:
        C = []
    else:
        Dm = coboundary_matrix(L, action, n - 1)
        RD = [[sum(a * b for a, b in zip(row, col)) % q for col in zip(*Dm)] for row in Rinv]
        C = RD[s:]
    k = dim - s
    if k == 0:
        return TCohomology(L, action, n, N, s, tuple(exps), R, Rinv, [], (), [])
    if not C or not C[0]:
        U = [[int(i == j) for j in range(k)] for i in range(k)]
        Uinv = U
        fexps = []
    else:
        U, _, Uinv, _, fexps = _snf_lists([row[:] for row in C], p, N)
    if len(fexps) < k:
        raise PrecisionUnstable(f"H^{n} appears infinite at precision {N}")
    basis = []
    for j in range(k):
        col = [Uinv[i][j] for i in range(k)]
        vec = [sum(R[a][s + i] * col[i] for i in range(k)) % q for a in range(dim)]
        basis.append(vec)
    return TCohomology(L, action, n, N, s, tuple(exps), R, Rinv, U, tuple(fexps), basis)

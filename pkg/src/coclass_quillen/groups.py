"""Finite p-groups by multiplication table, subgroups, and P-modules Z_p^d."""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

from .errors import NotAGroup, NotUniserial
from .padic import ModSubgroup, PModMatrix, kernel_basis


def _prime_of(n: int) -> Optional[int]:
    if n == 1:
        return None
    for p in range(2, n + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return p if n == 1 else 0
    return 0


class FiniteGroup:
    """A finite group given by its Cayley table on ``range(order)``.

    Elements are ints; ``table[a][b]`` is ``a*b``.  Conjugation follows the
    right-action convention ``conj(a, g) = g^-1 a g``.
    """

    def __init__(self, table: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None,
                 prime: Optional[int] = None, check: bool = True):
        self.table = [list(row) for row in table]
        n = len(self.table)
        if n == 0 or any(len(row) != n for row in self.table):
            raise NotAGroup("table must be square and nonempty")
        ids = [e for e in range(n) if self.table[e] == list(range(n))]
        if len(ids) != 1:
            raise NotAGroup("no unique identity row")
        self.identity = ids[0]
        inv = [None] * n
        for a in range(n):
            row = self.table[a]
            for b in range(n):
                if row[b] == self.identity:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise NotAGroup(f"element {a} has no inverse")
        self.inverse = inv
        detected = _prime_of(n)
        if detected == 0:
            raise NotAGroup(f"order {n} is not a prime power")
        if prime is None:
            prime = detected
        elif detected is not None and detected != prime:
            raise NotAGroup(f"order {n} is not a power of {prime}")
        self.prime = prime
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        if check:
            self._check_axioms()

    def _check_axioms(self, samples: int = 20000):
        n = self.order
        t = self.table
        for row in t:
            if sorted(row) != list(range(n)):
                raise NotAGroup("table rows are not permutations")
        if n**3 <= 300_000:
            triples = ((a, b, c) for a in range(n) for b in range(n) for c in range(n))
        else:
            rng = random.Random(0)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples))
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise NotAGroup(f"associativity fails at {(a, b, c)}")

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def m(self) -> int:
        """log_p of the order."""
        n, k = self.order, 0
        while n > 1:
            n //= self.prime
            k += 1
        return k

    @cached_property
    def key(self) -> tuple:
        return tuple(map(tuple, self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, a: int, g: int) -> int:
        return self.table[self.table[self.inverse[g]][a]][g]

    def power(self, a: int, k: int) -> int:
        out = self.identity
        for _ in range(k):
            out = self.table[out][a]
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def commutes(self, a: int, b: int) -> bool:
        return self.table[a][b] == self.table[b][a]

    def closure(self, gens) -> tuple:
        """Sorted element tuple of the subgroup generated by ``gens``."""
        elems = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in elems:
                        elems.add(y)
                        new.append(y)
            frontier = new
        return tuple(sorted(elems))

    def subgroup(self, elements) -> "Subgroup":
        return Subgroup(self, tuple(sorted(elements)))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (self.identity,))

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def to_dict(self) -> dict:
        return {"prime": self.prime, "order": self.order, "identity": self.identity,
                "table": self.table, "labels": self.labels}

    @classmethod
    def from_dict(cls, d: dict, check: bool = True) -> "FiniteGroup":
        g = cls(d["table"], labels=d.get("labels"), prime=d.get("prime"), check=check)
        if "order" in d and d["order"] != g.order:
            raise NotAGroup("declared order does not match the table")
        return g

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, prime={self.prime})"


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(compare=False, hash=False, repr=False)
    elements: tuple

    def __post_init__(self):
        els = tuple(sorted(self.elements))
        object.__setattr__(self, "elements", els)
        s = set(els)
        g = self.parent
        if g.identity not in s:
            raise NotAGroup("subgroup lacks the identity")
        for a in els:
            for b in els:
                if g.table[a][b] not in s:
                    raise NotAGroup("subset is not closed")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, a):
        return a in self._set

    @cached_property
    def _set(self):
        return frozenset(self.elements)

    def __le__(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    def conjugate(self, g: int) -> "Subgroup":
        return Subgroup(self.parent, tuple(sorted(self.parent.conj(a, g) for a in self.elements)))

    @cached_property
    def group(self) -> FiniteGroup:
        """The subgroup as a standalone FiniteGroup; ``embedding[i]`` is the parent index."""
        pos = {a: i for i, a in enumerate(self.elements)}
        t = self.parent.table
        table = [[pos[t[a][b]] for b in self.elements] for a in self.elements]
        G = FiniteGroup(table, labels=[self.parent.labels[a] for a in self.elements],
                        prime=self.parent.prime, check=False)
        G.embedding = list(self.elements)
        return G

    def generators(self) -> list:
        """A minimal-ish generating set, greedy in index order."""
        gens, span = [], (self.parent.identity,)
        for a in self.elements:
            if a not in span:
                gens.append(a)
                span = self.parent.closure(gens)
        return gens

    def label(self) -> str:
        gens = self.generators()
        if not gens:
            return "<1>"
        return "<" + ", ".join(self.parent.labels[a] for a in gens) + ">"


def subgroup_key(S: Subgroup):
    return (S.order, S.elements)


def elementary_abelian_subgroups(G: FiniteGroup) -> list:
    """All elementary abelian p-subgroups of G, trivial included.

    Grows subgroups one order-p element at a time; ordered by size then by
    element list.
    """
    p = G.prime or 2
    e = G.identity
    t = G.table
    ordp = [a for a in range(G.order) if a != e and G.power(a, p) == e]
    found = {(e,)}
    frontier = [(e,)]
    while frontier:
        new = []
        for E in frontier:
            Es = set(E)
            for y in ordp:
                if y in Es or any(t[y][a] != t[a][y] for a in E):
                    continue
                els = set()
                ypow = e
                for _ in range(p):
                    els.update(t[a][ypow] for a in E)
                    ypow = t[ypow][y]
                key = tuple(sorted(els))
                if key not in found:
                    found.add(key)
                    new.append(key)
        frontier = new
    return [Subgroup(G, k) for k in sorted(found, key=lambda k: (len(k), k))]


def all_subgroups(G: FiniteGroup) -> list:
    """Every subgroup of G, by joining cyclic subgroups; ordered like the
    elementary abelian list."""
    cyclic = {G.closure([a]) for a in range(G.order)}
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        new = []
        for H in frontier:
            for C in cyclic:
                if set(C) <= set(H):
                    continue
                J = G.closure(list(H) + list(C))
                if J not in found:
                    found.add(J)
                    new.append(J)
        frontier = new
    return [Subgroup(G, k) for k in sorted(found, key=lambda k: (len(k), k))]


class PModuleAction:
    """Right action of a finite p-group on T = Z_p^d by integer matrices.

    ``t^g = t @ matrices[g]`` for row vectors t, so ``A_{gh} = A_g A_h``.
    """

    def __init__(self, group: FiniteGroup, matrices: Sequence[Sequence[Sequence[int]]]):
        if len(matrices) != group.order:
            raise ValueError("need one matrix per group element")
        self.group = group
        self.matrices = [[list(map(int, row)) for row in A] for A in matrices]
        self.d = len(self.matrices[0])
        self.prime = group.prime
        # the table is part of the key: equal matrices on different groups
        # give different coboundary matrices
        self.key = (group.key, tuple(tuple(map(tuple, A)) for A in self.matrices))

    def check(self, precision: int) -> None:
        """Raise ValueError unless g -> A_g is a homomorphism mod p^precision."""
        q = self.prime**precision
        d = self.d
        G = self.group
        ident = [[int(i == j) for j in range(d)] for i in range(d)]
        if [[a % q for a in row] for row in self.matrices[G.identity]] != [[a % q for a in r] for r in ident]:
            raise ValueError("identity does not act trivially")
        for g in range(G.order):
            for h in range(G.order):
                lhs = self.matrices[G.mul(g, h)]
                rhs = _mat_mul(self.matrices[g], self.matrices[h])
                if any((a - b) % q for r1, r2 in zip(lhs, rhs) for a, b in zip(r1, r2)):
                    raise ValueError(f"action is not a homomorphism at {(g, h)}")

    def act(self, v, g, modulus: Optional[int] = None):
        A = self.matrices[g]
        d = self.d
        out = [sum(v[i] * A[i][j] for i in range(d)) for j in range(d)]
        if modulus is not None:
            out = [a % modulus for a in out]
        return tuple(out)

    def restrict(self, L: Subgroup) -> "PModuleAction":
        return PModuleAction(L.group, [self.matrices[a] for a in L.elements])

    def to_dict(self) -> dict:
        return {"d": self.d, "matrices": self.matrices}


def _mat_mul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def module_centralizer(L: Subgroup, submodule: ModSubgroup, action: PModuleAction) -> ModSubgroup:
    """Elements of ``submodule`` (inside (Z/p^r)^d) fixed by every element of L."""
    p, r, d = submodule.prime, submodule.level, submodule.dim
    rows = []
    for l in L.generators():
        A = action.matrices[l]
        # n (A - I) = 0  <=>  (A - I)^T n^T = 0
        for j in range(d):
            rows.append([A[i][j] - int(i == j) for i in range(d)])
    if not rows:
        return submodule
    gens, _ = kernel_basis(PModMatrix(p, r, rows))
    fixed = ModSubgroup(p, r, d, [g.entries for g in gens])
    return fixed.intersection(submodule)


def elementary_subgroups_of_module(V: ModSubgroup) -> list:
    """All subgroups of an elementary abelian subgroup V of (Z/p^r)^d.

    Ordered by order, then by sorted element tuples.
    """
    p = V.prime
    elems = [v for v in V.elements() if any(v)]
    q = p**V.level
    zero = tuple([0] * V.dim)
    found = {(zero,)}
    frontier = [(zero,)]
    while frontier:
        new = []
        for E in frontier:
            Es = set(E)
            for y in elems:
                if y in Es:
                    continue
                els = {tuple((a + k * b) % q for a, b in zip(x, y)) for x in E for k in range(p)}
                key = tuple(sorted(els))
                if key not in found:
                    found.add(key)
                    new.append(key)
        frontier = new
    return sorted(found, key=lambda k: (len(k), k))


@dataclass
class UniserialData:
    prime: int
    d: int
    series: list          # T_i as ModSubgroups of (Z/p^N)^d
    indices: list         # [T_i : T_{i+1}]
    lower_central_depth: Optional[int] = None

    @property
    def l(self):
        return self.lower_central_depth


def verify_uniserial(action: PModuleAction, P: FiniteGroup, levels: Optional[int] = None,
                     rho=None) -> UniserialData:
    """Compute T_0 = T, T_{i+1} = [T_i, S] and check every index is p.

    Raises NotUniserial on the first index different from p, or if
    p T_i != T_{i+d}.  When a 2-cocycle table ``rho`` (``rho[g][h]`` a vector)
    is supplied, also finds the least l with gamma_l(S) = T by working in the
    finite quotient S / pT.
    """
    p, d = P.prime, action.d
    if levels is None:
        levels = 2 * d * max(P.m, 1) + d
    N = levels // d + 3
    q = p**N
    gensP = P.whole().generators()
    series = [ModSubgroup(p, N, d, [[int(i == j) for j in range(d)] for i in range(d)])]
    indices = []
    for i in range(levels):
        Ti = series[-1]
        new = []
        for t in Ti.generators:
            for w in gensP:
                tw = action.act(t, w, q)
                new.append([(a - b) % q for a, b in zip(tw, t)])
        nxt = ModSubgroup(p, N, d, new)
        idx = Ti.order() // nxt.order() if nxt.order() else 0
        indices.append(idx)
        if idx != p:
            raise NotUniserial(f"[T_{i} : T_{i + 1}] = {idx}, expected {p}")
        series.append(nxt)
    for i in range(len(series) - d):
        if series[i].scaled(p) != series[i + d]:
            raise NotUniserial(f"p T_{i} != T_{i + d}")
    depth = None
    if rho is not None:
        depth = _lower_central_depth(P, action, rho)
    return UniserialData(p, d, series, indices, depth)


def _lower_central_depth(P: FiniteGroup, action: PModuleAction, rho) -> Optional[int]:
    p, d = P.prime, action.d
    vecs = list(itertools.product(range(p), repeat=d))
    elems = [(g, v) for g in range(P.order) for v in vecs]

    def mul(x, y):
        (g, m), (h, k) = x, y
        mh = action.act(m, h, p)
        r = rho[g][h]
        return (P.mul(g, h), tuple((a + b + c) % p for a, b, c in zip(mh, k, r)))

    index = {x: i for i, x in enumerate(elems)}
    table = [[index[mul(x, y)] for y in elems] for x in elems]
    S = FiniteGroup(table, prime=p, check=False)
    kernel = tuple(sorted(index[(P.identity, v)] for v in vecs))
    gamma = tuple(range(S.order))
    for k in range(1, P.m + 3):
        if gamma == kernel:
            return k
        comms = {S.mul(S.mul(S.inv(a), S.inv(b)), S.mul(a, b)) for a in gamma for b in range(S.order)}
        gamma = S.closure(comms)
    return None


def load_group(path) -> FiniteGroup:
    with open(path) as fh:
        return FiniteGroup.from_dict(json.load(fh))


def save_group(G: FiniteGroup, path) -> None:
    with open(path, "w") as fh:
        json.dump(G.to_dict(), fh, indent=1)

"""Extensions Ext(tau) of P by T/p^r T and complements to the module."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional

from .cochains import Cochain, cocycle_group, coboundary, restrict, solve_coboundary
from .errors import NoComplement, NotACocycle
from .groups import FiniteGroup, PModuleAction, Subgroup


class ExtensionGroup:
    """Ext(tau): pairs (w, m) with (g,m)(h,n) = (gh, m^h + n + tau(g,h)).

    ``tau`` is a normalized 2-cochain on the whole of P with values at level
    ``tau.precision``; the module is M = (Z/p^r)^d.
    """

    def __init__(self, tau: Cochain, check: bool = True):
        if tau.degree != 2:
            raise ValueError("tau must have degree 2")
        self.tau = tau
        self.base: FiniteGroup = tau.subgroup.parent
        if tau.subgroup.order != self.base.order:
            raise ValueError("tau must be defined on the whole base group")
        self.action: PModuleAction = tau.action
        self.level = tau.precision
        self.modulus = tau.modulus
        self.d = tau.d
        if check and not coboundary(tau).is_zero():
            raise NotACocycle("tau is not a 2-cocycle, Ext(tau) is not associative")
        self._finite = None

    @property
    def order(self) -> int:
        return self.base.order * self.modulus**self.d

    @property
    def identity(self):
        return (self.base.identity, (0,) * self.d)

    def vec(self, m) -> tuple:
        return tuple(int(a) % self.modulus for a in m)

    def mul(self, x, y):
        (g, m), (h, n) = x, y
        q = self.modulus
        mh = self.action.act(m, h)
        t = self.tau(g, h)
        return (self.base.mul(g, h), tuple((a + b + c) % q for a, b, c in zip(mh, n, t)))

    def inv(self, x):
        g, m = x
        gi = self.base.inv(g)
        q = self.modulus
        mg = self.action.act(m, gi)
        t = self.tau(g, gi)
        return (gi, tuple((-a - b) % q for a, b in zip(mg, t)))

    def conj(self, x, y):
        """x^y = y^-1 x y."""
        return self.mul(self.mul(self.inv(y), x), y)

    def power(self, x, k: int):
        out = self.identity
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def module_elements(self):
        q = self.modulus
        return [tuple(v) for v in itertools.product(range(q), repeat=self.d)]

    def elements(self):
        mods = self.module_elements()
        return [(w, m) for w in range(self.base.order) for m in mods]

    def kernel_element(self, m):
        return (self.base.identity, self.vec(m))

    def projection(self, x) -> int:
        """The natural epimorphism (g, m) -> g."""
        return x[0]

    def check_associative(self, sample=None) -> bool:
        els = self.elements() if sample is None else sample
        for x in els:
            for y in els:
                xy = self.mul(x, y)
                for z in els:
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)):
                        return False
        return True

    def index_of(self, x) -> int:
        w, m = x
        q = self.modulus
        k = 0
        for a in m:
            k = k * q + a
        return w * q**self.d + k

    def element_at(self, i: int):
        q = self.modulus
        w, k = divmod(i, q**self.d)
        m = []
        for _ in range(self.d):
            k, a = divmod(k, q)
            m.append(a)
        return (w, tuple(reversed(m)))

    def as_finite_group(self, labeler: Optional[Callable] = None) -> FiniteGroup:
        """The extension as a multiplication table, indices via ``index_of``."""
        if self._finite is None:
            els = self.elements()
            table = [[self.index_of(self.mul(x, y)) for y in els] for x in els]
            labels = [labeler(x) if labeler else f"({x[0]},{','.join(map(str, x[1]))})" for x in els]
            self._finite = FiniteGroup(table, labels=labels, prime=self.base.prime, check=False)
        return self._finite

    def twist_map(self, zeta: Cochain):
        """(g, m) -> (g, m + zeta(g)); an isomorphism Ext(tau) -> Ext(tau - Delta zeta)."""
        q = self.modulus

        def f(x):
            g, m = x
            return (g, tuple((a + b) % q for a, b in zip(m, zeta(g))))
        return f


def build_extension(tau: Cochain) -> ExtensionGroup:
    return ExtensionGroup(tau)


@dataclass
class Complement:
    """A complement to M over L: the elements (l, m_l) for l in L."""

    ext: ExtensionGroup = field(repr=False)
    subgroup: Subgroup
    section: Cochain           # degree 1 cochain l -> m_l

    def element(self, l):
        return (l, self.section(l))

    def elements(self) -> list:
        return [self.element(l) for l in self.subgroup.elements]

    def element_set(self) -> frozenset:
        return frozenset(self.elements())

    def is_closed(self) -> bool:
        S = self.element_set()
        return all(self.ext.mul(x, y) in S for x in S for y in S)

    def shifted(self, delta: Cochain) -> "Complement":
        """C(delta) = {(l, m_l + delta(l))}."""
        return Complement(self.ext, self.subgroup, self.section + delta)


@dataclass
class ComplementFamily:
    """All complements over L: a base complement plus Z^1(L, M)."""

    base: Complement
    cocycles: object           # CocycleGroup of degree 1

    def complement(self, delta: Cochain) -> Complement:
        return self.base.shifted(delta)

    def all_complements(self) -> list:
        Z = self.cocycles
        return [self.base.shifted(Z.cochain(v)) for v in Z.cocycles.elements()]

    def class_representatives(self) -> list:
        """One complement per M-conjugacy class (a transversal of B^1 in Z^1)."""
        Z = self.cocycles
        seen, out = [], []
        for v in Z.cocycles.elements():
            delta = Z.cochain(v)
            if any(Z.is_coboundary(delta - s) for s in seen):
                continue
            seen.append(delta)
            out.append(self.base.shifted(delta))
        return out


def base_section(tau_L: Cochain) -> Optional[Cochain]:
    """Canonical section m with tau = -Delta_1(m) on L, or None."""
    return solve_coboundary(-tau_L)


def complements_of(L: Subgroup, ext: ExtensionGroup) -> ComplementFamily:
    tau_L = restrict(ext.tau, L)
    section = base_section(tau_L)
    if section is None:
        raise NoComplement(f"the extension does not split over {L.label()}")
    base = Complement(ext, L, section)
    return ComplementFamily(base, cocycle_group(L, ext.action, 1, ext.level))

"""Coclass families G_x = Ext(rho_x + eta_x) built from pro-p data."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .cochains import (Cochain, coboundary, commutator_cochain, reduce, restrict,
                       solve_coboundary, t_cohomology)
from .errors import NotACocycle, NotMapped, PrecisionUnstable
from .extension import ExtensionGroup
from .groups import (FiniteGroup, PModuleAction, Subgroup, elementary_abelian_subgroups,
                     elementary_subgroups_of_module, module_centralizer, verify_uniserial)
from .padic import ModSubgroup, signed
from .splitting import eta_representative, split_cocycles


@dataclass
class ProPData:
    """Input data (P, action on T = Z_p^d, rho, eta, e).

    ``rho`` and ``eta`` are exact integer tables keyed by tuples of P
    elements; missing keys are zero.  ``words`` names the chosen preimage of
    each element of P and ``module_symbols`` the basis of T, for rendering.
    """

    name: str
    group: FiniteGroup
    action: PModuleAction
    rho: dict
    eta: Optional[dict] = None
    e: Optional[int] = None
    words: Optional[list] = None
    module_symbols: Optional[list] = None

    def __post_init__(self):
        if self.e is None:
            self.e = 3 * self.group.m
        if self.words is None:
            self.words = list(self.group.labels)
        if self.module_symbols is None:
            self.module_symbols = ["t"] if self.action.d == 1 else [f"t{i + 1}" for i in range(self.action.d)]

    @property
    def prime(self) -> int:
        return self.group.prime

    @property
    def m(self) -> int:
        return self.group.m

    @property
    def d(self) -> int:
        return self.action.d

    def rho_cochain(self, precision: int) -> Cochain:
        return Cochain.from_table(self.group.whole(), self.action, 2, precision, self.rho)

    def eta_cochain(self, precision: int) -> Cochain:
        return Cochain.from_table(self.group.whole(), self.action, 3, precision, self.eta or {})

    def to_dict(self) -> dict:
        def table(t):
            return [[list(k), list(v)] for k, v in sorted(t.items()) if any(v)]
        return {"name": self.name, "prime": self.prime, "m": self.m, "d": self.d, "e": self.e,
                "table": self.group.table, "labels": self.group.labels,
                "words": self.words, "module_symbols": self.module_symbols,
                "action": self.action.matrices,
                "rho": table(self.rho), "eta": table(self.eta or {})}

    @classmethod
    def from_dict(cls, d: dict) -> "ProPData":
        G = FiniteGroup(d["table"], labels=d.get("labels"), prime=d.get("prime"))
        if "m" in d and d["m"] != G.m:
            raise ValueError("declared m does not match the table")
        act = PModuleAction(G, d["action"])
        if "d" in d and d["d"] != act.d:
            raise ValueError("declared d does not match the action")
        rho = {tuple(k): tuple(v) for k, v in d.get("rho", [])}
        eta = {tuple(k): tuple(v) for k, v in d.get("eta", [])}
        return cls(d.get("name", "data"), G, act, rho, eta or None, d.get("e"),
                   d.get("words"), d.get("module_symbols"))

    @classmethod
    def load(cls, path) -> "ProPData":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=1)


@dataclass
class SplitSubgroupData:
    subgroup: Subgroup
    section: Cochain                 # t_L over T
    omega0: Cochain                  # omega_{L,0}

    def omega(self, x: int) -> Cochain:
        """omega_{L,x} = mul^x(omega_{L,0})."""
        p = self.omega0.prime
        o = self.omega0
        return Cochain(o.subgroup, o.action, 1, o.precision + x, tuple(a * p**x for a in o.vec))

    def section_at(self, x: int, e: int) -> Cochain:
        """t_{L,x} = pro_x(t_L) + omega_{L,x}."""
        return reduce(self.section, x + e) + self.omega(x)


@dataclass
class ZetaData:
    zeta: Cochain
    zeta_hat: Cochain
    phi: Cochain
    is_cocycle: bool


class CoclassFamily:
    """All x-independent data of the family plus per-x constructions.

    One working precision ``N = x_cap + e + 2m + slack`` is used for every
    T-valued computation so that the Smith forms, sections and transversals
    are chosen once.  Decisions about T-valued identities are taken modulo
    ``p^N_dec`` with ``N_dec = N - 2m``.
    """

    def __init__(self, data: ProPData, x_cap: int = 12, slack: int = 8,
                 section_overrides: Optional[dict] = None, check: bool = True):
        self.data = data
        self.P = data.group
        self.action = data.action
        self.p = data.prime
        self.m = data.m
        self.e = data.e
        self.x_cap = x_cap
        self.slack = slack
        self.N = x_cap + self.e + 2 * self.m + slack
        self.N_dec = self.N - 2 * self.m
        self.whole = self.P.whole()
        self.rho = data.rho_cochain(self.N)
        self.eta = data.eta_cochain(self.N) if data.eta else None
        self._overrides = section_overrides or {}
        if check:
            self.action.check(self.N)
            verify_uniserial(self.action, self.P)
            if not coboundary(self.rho).is_zero():
                raise NotACocycle("rho is not a 2-cocycle")
            if self.eta is not None and not coboundary(self.eta).is_zero():
                raise NotACocycle("eta is not a 3-cocycle")
        self._zeta_cache = {}

    def level(self, x: int) -> int:
        return x + self.e

    # ------------------------------------------------------------ subgroups

    @cached_property
    def elementary_subgroups(self) -> list:
        return elementary_abelian_subgroups(self.P)

    def splits(self, L: Subgroup) -> bool:
        return solve_coboundary(restrict(self.rho, L), self.N_dec) is not None

    def eta_splits(self, L: Subgroup) -> bool:
        if self.eta is None:
            return True
        return solve_coboundary(restrict(self.eta, L), self.N_dec) is not None

    @cached_property
    def split_subgroups(self) -> list:
        """The elementary abelian L whose preimage in S splits over T."""
        return [L for L in self.elementary_subgroups if self.splits(L)]

    @cached_property
    def eta_split_subgroups(self) -> list:
        """Members of the split list over which eta also restricts to a coboundary."""
        return [L for L in self.split_subgroups if self.eta_splits(L)]

    def section(self, L: Subgroup) -> Cochain:
        """t_L over T with Delta_1(t_L) = -rho_L."""
        return self._sections[L.elements]

    @cached_property
    def _sections(self) -> dict:
        out = {}
        for L in self.split_subgroups:
            if L.elements in self._overrides:
                t = self._overrides[L.elements]
            else:
                t = solve_coboundary(-restrict(self.rho, L), self.N)
            if t is None:
                raise PrecisionUnstable(f"no section over {L.label()} at full precision")
            out[L.elements] = t
        return out

    def split_data(self, L: Subgroup) -> SplitSubgroupData:
        return self._split_data[L.elements]

    @cached_property
    def _split_data(self) -> dict:
        out = {}
        for L in self.eta_split_subgroups:
            out[L.elements] = SplitSubgroupData(L, self.section(L), self._omega0(L))
        return out

    def _omega0(self, L: Subgroup) -> Cochain:
        """omega_{L,0} with image in p^c M_0, c = max(0, e - 2m)."""
        r = self.e
        eta0 = restrict(self.eta_x(0), L)
        if eta0.is_zero():
            return Cochain.zero(L, self.action, 1, r)
        c = max(0, self.e - 2 * self.m)
        target = -eta0
        if c:
            if any(a % self.p**c for a in target.vec):
                raise NotACocycle("eta_0 is not divisible as expected")
            target = Cochain(L, self.action, 2, r - c, tuple(a // self.p**c for a in target.vec))
        sol = solve_coboundary(target)
        if sol is None:
            raise NotACocycle(f"eta_0 does not restrict to a coboundary on {L.label()}")
        return Cochain(L, self.action, 1, r, tuple(a * self.p**c for a in sol.vec))

    # ------------------------------------------------------------ cohomology

    def h1(self, L: Subgroup):
        return self._coh(L, 1)

    def h2(self, L: Subgroup):
        return self._coh(L, 2)

    def _coh(self, L, n):
        key = (L.elements, n)
        cache = self.__dict__.setdefault("_coh_cache", {})
        if key not in cache:
            cache[key] = t_cohomology(L, self.action, n, self.N)
        return cache[key]

    def h1_transversal(self, L: Subgroup) -> list:
        return self.h1(L).transversal()

    # ------------------------------------------------------------ groups

    def eta_x(self, x: int) -> Cochain:
        r = self.level(x)
        if self.eta is None:
            return Cochain.zero(self.whole, self.action, 2, r)
        cache = self.__dict__.setdefault("_eta_cache", {})
        if x not in cache:
            cache[x] = eta_representative(self.eta, r, self.N)
        return cache[x]

    def rho_x(self, x: int) -> Cochain:
        return reduce(self.rho, self.level(x))

    def nu_x(self, x: int) -> Cochain:
        return self.rho_x(x) + self.eta_x(x)

    def group(self, x: int) -> "FamilyGroup":
        cache = self.__dict__.setdefault("_group_cache", {})
        if x not in cache:
            if x > self.x_cap:
                raise ValueError(f"x = {x} exceeds the precision cap {self.x_cap}")
            cache[x] = FamilyGroup(self, x, ExtensionGroup(self.nu_x(x)))
        return cache[x]

    def section_at(self, L: Subgroup, x: int) -> Cochain:
        return self.split_data(L).section_at(x, self.e)

    def complement_elements(self, L: Subgroup, x: int, gamma: Optional[Cochain] = None) -> list:
        t = self.section_at(L, x)
        if gamma is not None:
            t = t + gamma
        return [(l, t(l)) for l in L.elements]

    def top_layer(self, x: int) -> ModSubgroup:
        """A_x = p^(x+e-1) M_x."""
        r = self.level(x)
        d = self.action.d
        c = self.p ** (r - 1)
        return ModSubgroup(self.p, r, d, [[c * int(i == j) for j in range(d)] for i in range(d)])

    def module_subgroups(self, L: Subgroup, x: int) -> list:
        """O_x(L): subgroups of the centralizer of L in A_x, as sorted tuples."""
        C = module_centralizer(L, self.top_layer(x), self.action)
        return elementary_subgroups_of_module(C)

    def k_part(self, L: Subgroup, x: int) -> list:
        """Elements of K^1(L, M_x), zero first."""
        dec = split_cocycles(L, self.action, 1, self.level(x), self.N)
        K = dec.K()
        out = []
        for v in K.elements():
            out.append(Cochain(L, self.action, 1, self.level(x), v))
        out.sort(key=lambda c: (not c.is_zero(), c.vec))
        return out

    # ------------------------------------------------------------ zeta calculus

    def conj_subgroup(self, L: Subgroup, w: int) -> Subgroup:
        return L.conjugate(w)

    def zeta_hat(self, L: Subgroup, H: Subgroup, w: int) -> Cochain:
        """zeta-hat_{L,H,w} over T (precision N)."""
        key = ("T", L.elements, H.elements, w)
        if key not in self._zeta_cache:
            self._zeta_cache[key] = self._zeta_hat(L, H, w, self.section(L), self.section(H), self.rho)
        return self._zeta_cache[key]

    def zeta_hat_x(self, L: Subgroup, H: Subgroup, w: int, x: int) -> Cochain:
        key = ("x", L.elements, H.elements, w, x)
        if key not in self._zeta_cache:
            self._zeta_cache[key] = self._zeta_hat(
                L, H, w, self.section_at(L, x), self.section_at(H, x), self.nu_x(x))
        return self._zeta_cache[key]

    def phi_x(self, L: Subgroup, H: Subgroup, w: int, x: int) -> Cochain:
        sd_L, sd_H = self.split_data(L), self.split_data(H)
        return self._zeta_hat(L, H, w, sd_L.omega(x), sd_H.omega(x), self.eta_x(x))

    def _zeta_hat(self, L, H, w, tL, tH, tau) -> Cochain:
        P = self.P
        if not set(L.conjugate(w).elements) <= set(H.elements):
            raise NotMapped(f"{L.label()}^{P.labels[w]} is not contained in {H.label()}")
        A = self.action
        q = self.p**tau.precision
        winv = P.inv(w)

        def value(l):
            lw = P.conj(l, w)
            v = A.act(tL(l), w)
            v = [a - b + c - d for a, b, c, d in zip(v, tH(lw), tau(l, w), tau(w, lw))]
            return A.act(v, winv, q)
        return Cochain.from_function(L, A, 1, tau.precision, value)

    def zeta_family(self, L: Subgroup, H: Subgroup, g, x: int) -> ZetaData:
        """zeta_{L,H,g,x} = zeta-hat_{L,H,w,x} - lambda^w_m for g = (w, m)."""
        w, m = g
        zh = self.zeta_hat_x(L, H, w, x)
        lam = act_commutator(m, w, L, self.action, self.level(x))
        z = zh - lam
        return ZetaData(z, zh, self.phi_x(L, H, w, x), coboundary(z).is_zero())

    # ------------------------------------------------------------ x_0

    def defect_valuations(self) -> dict:
        """Valuation of the cocycle defect of zeta-hat_{L,H,w} over T for every
        triple with L, H in the eta-split list and L^w <= H (None if zero)."""
        out = {}
        for L in self.eta_split_subgroups:
            for H in self.eta_split_subgroups:
                for w in range(self.P.order):
                    if not set(L.conjugate(w).elements) <= set(H.elements):
                        continue
                    defect = coboundary(self.zeta_hat(L, H, w)).reduce(self.N_dec)
                    out[(L.elements, H.elements, w)] = defect.valuation()
        return out

    def x_bounds(self) -> dict:
        """x_{L,H,w}: least x with pro_x(defect) != 0, i.e. max(0, v + 1 - e)."""
        return {k: (0 if v is None else max(0, v + 1 - self.e))
                for k, v in self.defect_valuations().items()}


def act_commutator(m, w, L, action, precision) -> Cochain:
    """lambda^w_m = lambda_{m^(w^-1)} on L."""
    winv = action.group.inv(w)
    return commutator_cochain(action.act(m, winv, action.prime**precision), L, action, precision)


def compute_x0(data: ProPData, x_cap: int = 12, slack: int = 8,
               section_overrides: Optional[dict] = None) -> int:
    """x_0 = max x_{L,H,w} + m, with the defect valuations re-checked four
    digits higher."""
    fam = CoclassFamily(data, x_cap, slack, section_overrides)
    hi = CoclassFamily(data, x_cap, slack + 4, _lift_overrides(section_overrides, 4))
    a, b = fam.defect_valuations(), hi.defect_valuations()
    if a != b:
        diff = sorted(k for k in a if a[k] != b.get(k))
        raise PrecisionUnstable(f"defect valuations change with precision at {diff[:3]}")
    return max(fam.x_bounds().values(), default=0) + fam.m


def _lift_overrides(overrides, extra):
    if not overrides:
        return overrides
    return {k: Cochain(c.subgroup, c.action, c.degree, c.precision + extra,
                       tuple(signed(a, c.modulus) for a in c.vec))
            for k, c in overrides.items()}


@dataclass
class FamilyGroup:
    family: CoclassFamily = field(repr=False)
    x: int
    ext: ExtensionGroup = field(repr=False)

    @property
    def level(self) -> int:
        return self.x + self.family.e

    @property
    def order(self) -> int:
        return self.ext.order

    def word(self, g) -> str:
        """Render (w, m) as the word s(w) t^k."""
        return render_word(self.family.data, g, self.ext.modulus)

    @cached_property
    def finite(self) -> FiniteGroup:
        return self.ext.as_finite_group(self.word)


def render_word(data: ProPData, g, modulus: Optional[int] = None) -> str:
    w, m = g
    head = data.words[w]
    parts = [] if head == "1" else [head]
    for sym, k in zip(data.module_symbols, m):
        k = signed(k, modulus) if modulus else int(k)
        if k == 0:
            continue
        parts.append(sym if k == 1 else f"{sym}^{k}")
    return "".join(parts) if parts else "1"

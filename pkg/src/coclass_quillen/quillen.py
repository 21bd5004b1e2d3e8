"""Quillen categories: brute force, the two semi-skeletons, liftings and the
functors F_S (to the pro-p group) and F (from G_x to G_(x+1)).

A morphism is identified with the injection it induces, stored as the sorted
tuple of (element, image) pairs.  On the S side an object C_L(gamma) is a
complement to T, so its morphisms are determined by the induced map on L.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .cochains import Cochain, act, coboundary, reduce, restrict, solve_coboundary
from .errors import BelowX0, CapExceeded, NotAMorphism
from .extension import ExtensionGroup
from .family import CoclassFamily, act_commutator, compute_x0, render_word
from .groups import FiniteGroup, elementary_abelian_subgroups, module_centralizer
from .padic import ModSubgroup, signed


@dataclass
class QuillenObject:
    label: str
    elements: frozenset
    kind: str = "abstract"             # "S", "G" or "abstract"
    subgroup: tuple = ()               # L as parent indices of P
    gamma_index: int = 0               # index in the T^1 transversal
    k_index: int = 0                   # index in K^1(L, M_x)
    module: tuple = ()                 # O as sorted module vectors
    gamma_bar: Optional[Cochain] = field(default=None, repr=False)
    gamma_under: Optional[Cochain] = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)


@dataclass
class Morphism:
    source: int
    target: int
    mapping: tuple                     # sorted (element, image) pairs
    witness: object = None
    witness_word: str = ""
    witnesses: list = field(default_factory=list, repr=False)


def compose_maps(f: tuple, g: tuple) -> tuple:
    """First f, then g."""
    gd = dict(g)
    return tuple(sorted((a, gd[b]) for a, b in f))


def identity_map(elements) -> tuple:
    return tuple(sorted((a, a) for a in elements))


class Category:
    def __init__(self, objects: list, homs: dict, name: str = ""):
        self.objects = objects
        self.homs = homs                 # (i, j) -> {mapping: Morphism}
        self.name = name

    def hom(self, i: int, j: int) -> dict:
        return self.homs.get((i, j), {})

    def hom_matrix(self) -> list:
        n = len(self.objects)
        return [[len(self.hom(i, j)) for j in range(n)] for i in range(n)]

    def morphism_count(self) -> int:
        return sum(len(h) for h in self.homs.values())

    def index_by_elements(self) -> dict:
        return {obj.elements: i for i, obj in enumerate(self.objects)}

    def identity(self, i: int) -> tuple:
        key = self._identity_key(i)
        if key not in self.hom(i, i):
            raise AssertionError(f"no identity on object {i}")
        return key

    def _identity_key(self, i):
        obj = self.objects[i]
        if obj.kind == "S":
            return identity_map(obj.subgroup)
        return identity_map(obj.elements)

    def isomorphic(self, i: int, j: int) -> bool:
        a, b = self.objects[i], self.objects[j]
        return a.order == b.order and bool(self.hom(i, j))

    def check_axioms(self) -> None:
        """Identities exist and composition is closed (associativity is
        inherited from map composition)."""
        n = len(self.objects)
        for i in range(n):
            self.identity(i)
        for i in range(n):
            for j in range(n):
                for f in self.hom(i, j):
                    for k in range(n):
                        for g in self.hom(j, k):
                            if compose_maps(f, g) not in self.hom(i, k):
                                raise AssertionError(f"composition {i}->{j}->{k} leaves the category")


# ---------------------------------------------------------------- brute force

def category_bruteforce(G: FiniteGroup, cap: int = 2**12) -> Category:
    if G.order > cap:
        raise CapExceeded(f"group order {G.order} exceeds the cap {cap}")
    subs = elementary_abelian_subgroups(G)
    objects = [QuillenObject(s.label(), frozenset(s.elements), subgroup=s.elements) for s in subs]
    by_size = {}
    for j, s in enumerate(subs):
        by_size.setdefault(s.order, []).append(j)
    homs = {}
    for i, s in enumerate(subs):
        for g in range(G.order):
            img = {a: G.conj(a, g) for a in s.elements}
            imgset = set(img.values())
            key = tuple(sorted(img.items()))
            for size, js in by_size.items():
                if size < s.order:
                    continue
                for j in js:
                    if imgset <= objects[j].elements:
                        h = homs.setdefault((i, j), {})
                        if key not in h:
                            h[key] = Morphism(i, j, key, g, G.labels[g], [g])
    return Category(objects, homs, "brute force")


# ---------------------------------------------------------------- S side

class SCategoryBuilder:
    def __init__(self, fam: CoclassFamily):
        self.fam = fam
        self.q_dec = fam.p**fam.N_dec
        self.ext = ExtensionGroup(reduce(fam.rho, fam.N_dec), check=False)

    def word(self, g) -> str:
        return render_word(self.fam.data, g, self.q_dec)

    def objects(self) -> list:
        fam = self.fam
        out = []
        for L in fam.split_subgroups:
            tL = fam.section(L)
            for gi, gbar in enumerate(fam.h1_transversal(L)):
                vals = {l: tuple(a % self.q_dec for a in (tL + gbar)(l)) for l in L.elements}
                elements = frozenset((l, v) for l, v in vals.items())
                gens = [self.word((l, vals[l])) for l in L.generators()]
                label = "<" + ", ".join(gens) + ">" if gens else "<1>"
                out.append(QuillenObject(label, elements, "S", L.elements, gi, 0, (), gbar, None))
        return out

    def solve_lift(self, L, H, w, gamma_bar, sigma_bar):
        """m-bar with zeta-hat - sigma-bar^w_L + gamma-bar = lambda^w_(m-bar), or None."""
        fam = self.fam
        R = fam.zeta_hat(L, H, w) - restrict(act(sigma_bar, w), L) + gamma_bar
        R = reduce(R, fam.N_dec)
        if not coboundary(R).is_zero():
            return None
        # lambda_u = -Delta_0(u)
        u = solve_coboundary(-R)
        if u is None:
            return None
        u = self._smallest(u.vec, L)
        return fam.action.act(u, w, self.q_dec)

    def _smallest(self, u, L):
        """Remove spurious high digits: u is only determined modulo the
        centralizer of L in T/p^N_dec, whose part in p^(N_dec - 2m) is an
        artefact of the truncation."""
        fam = self.fam
        d = fam.action.d
        full = ModSubgroup(fam.p, fam.N_dec, d, [[int(i == j) for j in range(d)] for i in range(d)])
        C = module_centralizer(L, full, fam.action)
        deep = fam.p ** (fam.N_dec - 2 * fam.m)
        spurious = C.intersection(full.scaled(deep)) if deep > 1 else C
        q = self.q_dec
        best = min((tuple((a + b) % q for a, b in zip(u, c)) for c in spurious.elements()),
                   key=lambda v: (_size(v, q), v))
        return best

    def conjugate_into(self, A: QuillenObject, B: QuillenObject, g) -> bool:
        return all(self.ext.conj(a, g) in B.elements for a in A.elements)

    def build(self) -> Category:
        fam = self.fam
        objs = self.objects()
        P = fam.P
        subs = {L.elements: L for L in fam.split_subgroups}
        homs = {}
        for i, A in enumerate(objs):
            L = subs[A.subgroup]
            for j, B in enumerate(objs):
                H = subs[B.subgroup]
                for w in range(P.order):
                    if not set(L.conjugate(w).elements) <= set(H.elements):
                        continue
                    mbar = self.solve_lift(L, H, w, A.gamma_bar, B.gamma_bar)
                    if mbar is None:
                        continue
                    g = (w, mbar)
                    if not self.conjugate_into(A, B, g):
                        raise AssertionError("lifting equation solved but conjugation fails")
                    key = tuple(sorted((l, P.conj(l, w)) for l in L.elements))
                    _record(homs, i, j, key, g, self.q_dec)
        _finish(homs, self.word, self.q_dec)
        return Category(objs, homs, "S semi-skeleton")


def _size(m, q) -> int:
    return max((abs(signed(a, q)) for a in m), default=0)


def _record(homs, i, j, key, g, q):
    h = homs.setdefault((i, j), {})
    if key in h:
        h[key].witnesses.append(g)
    else:
        h[key] = Morphism(i, j, key, g, "", [g])


def _finish(homs, word, q):
    """Display the shortest conjugator of each morphism."""
    for h in homs.values():
        for mor in h.values():
            mor.witness = min(mor.witnesses, key=lambda g: (_size(g[1], q), g[0], g[1]))
            mor.witness_word = word(mor.witness)


def skeleton_S(fam: CoclassFamily) -> Category:
    return SCategoryBuilder(fam).build()


# ---------------------------------------------------------------- G_x side

def _module_label(fam, O, level) -> str:
    if len(O) == 1:
        return ""
    top = fam.top_layer(level - fam.e)
    if fam.action.d == 1 and len(O) == top.order():
        return "O"
    gens = [v for v in O if any(v)]
    return "<" + ", ".join(render_word(fam.data, (fam.P.identity, v), fam.p**level) for v in gens[:fam.action.d]) + ">"


class GxCategoryBuilder:
    def __init__(self, fam: CoclassFamily, x: int):
        self.fam = fam
        self.x = x
        self.G = fam.group(x)
        self.ext = self.G.ext
        self.level = fam.level(x)
        self.q = fam.p**self.level

    def realize(self, L, gamma, O) -> frozenset:
        fam, ext = self.fam, self.ext
        t = fam.section_at(L, self.x) + gamma
        out = set()
        for l in L.elements:
            v = t(l)
            for o in O:
                out.add(ext.index_of((l, tuple((a + b) % self.q for a, b in zip(v, o)))))
        return frozenset(out)

    def gamma(self, L, gi, ki) -> Cochain:
        fam = self.fam
        gbar = fam.h1_transversal(L)[gi]
        return reduce(gbar, self.level) + fam.k_part(L, self.x)[ki]

    def objects(self) -> list:
        fam = self.fam
        entries = []
        all_O = set()
        for li, L in enumerate(fam.eta_split_subgroups):
            Ks = fam.k_part(L, self.x)
            for O in fam.module_subgroups(L, self.x):
                all_O.add(O)
                for gi in range(len(fam.h1_transversal(L))):
                    for ki in range(len(Ks)):
                        entries.append((O, li, gi, ki))
        O_order = {O: n for n, O in enumerate(sorted(all_O, key=lambda o: (len(o), o)))}
        entries.sort(key=lambda en: (O_order[en[0]], en[1], en[2], en[3]))
        out = []
        for O, li, gi, ki in entries:
            L = fam.eta_split_subgroups[li]
            gamma = self.gamma(L, gi, ki)
            elements = self.realize(L, gamma, O)
            t = fam.section_at(L, self.x) + gamma
            gens = [self.G.word((l, t(l))) for l in L.generators()]
            mlabel = _module_label(fam, O, self.level)
            if gens:
                label = "<" + ", ".join(gens) + ">" + (f" x {mlabel}" if mlabel else "")
            else:
                label = mlabel or "<1>"
            out.append(QuillenObject(label, elements, "G", L.elements, gi, ki, O,
                                     fam.h1_transversal(L)[gi], fam.k_part(L, self.x)[ki]))
        return out

    def centralizer_transversal(self, L, w) -> list:
        """Coset representatives of C_(M_x)(L)^w in M_x."""
        fam = self.fam
        d = fam.action.d
        full = ModSubgroup(fam.p, self.level, d, [[int(i == j) for j in range(d)] for i in range(d)])
        C = module_centralizer(L, full, fam.action)
        Cw = ModSubgroup(fam.p, self.level, d, [fam.action.act(g, w, self.q) for g in C.generators])
        return list(Cw.transversal())

    def delta(self, L, H, g, A: QuillenObject, B: QuillenObject) -> Cochain:
        """delta = zeta_(L,H,g,x) - sigma^g_L + gamma of Theorem 5.4."""
        fam = self.fam
        w, _ = g
        zeta = fam.zeta_family(L, H, g, self.x).zeta
        sigma = self.gamma(H, B.gamma_index, B.k_index)
        gamma = self.gamma(L, A.gamma_index, A.k_index)
        return zeta - restrict(act(sigma, w), L) + gamma

    def morphism_condition(self, L, H, g, A, B) -> bool:
        fam = self.fam
        w, _ = g
        if not set(L.conjugate(w).elements) <= set(H.elements):
            return False
        U = set(B.module)
        if any(fam.action.act(o, w, self.q) not in U for o in A.module):
            return False
        delta = self.delta(L, H, g, A, B)
        if not coboundary(delta).is_zero():
            return False
        winv = fam.P.inv(w)
        allowed = {fam.action.act(u, winv, self.q) for u in B.module}
        return all(delta(l) in allowed for l in L.elements)

    def induced_map(self, A: QuillenObject, g) -> tuple:
        ext = self.ext
        out = []
        for a in A.elements:
            out.append((a, ext.index_of(ext.conj(ext.element_at(a), g))))
        return tuple(sorted(out))

    def build(self) -> Category:
        fam = self.fam
        objs = self.objects()
        subs = {L.elements: L for L in fam.eta_split_subgroups}
        homs = {}
        for i, A in enumerate(objs):
            L = subs[A.subgroup]
            for j, B in enumerate(objs):
                H = subs[B.subgroup]
                if B.order < A.order:
                    continue
                for w in range(fam.P.order):
                    if not set(L.conjugate(w).elements) <= set(H.elements):
                        continue
                    for m in self.centralizer_transversal(L, w):
                        g = (w, m)
                        ok = self.morphism_condition(L, H, g, A, B)
                        key = self.induced_map(A, g)
                        inside = all(b in B.elements for _, b in key)
                        if ok != inside:
                            raise AssertionError(
                                f"morphism criterion disagrees with conjugation for {A.label} -> {B.label}")
                        if not ok:
                            continue
                        _record(homs, i, j, key, g, self.q)
        _finish(homs, self.G.word, self.q)
        return Category(objs, homs, f"G_{self.x} semi-skeleton")


def skeleton_Gx(fam: CoclassFamily, x: int) -> Category:
    cache = fam.__dict__.setdefault("_skeleton_cache", {})
    if x not in cache:
        cache[x] = GxCategoryBuilder(fam, x).build()
    return cache[x]


def family_x0(fam: CoclassFamily) -> int:
    if "_x0" not in fam.__dict__:
        fam._x0 = compute_x0(fam.data, fam.x_cap, fam.slack, fam._overrides or None)
    return fam._x0


# ---------------------------------------------------------------- liftings

@dataclass
class Lifting:
    w: int
    m_bar: tuple                 # in T, at precision N_dec
    m_under: tuple               # in M_x
    residual_zero: bool          # equation (1) holds exactly at N_dec
    second_equation: bool        # equation (2) holds in M_x

    @property
    def element(self):
        return (self.w, self.m_bar)


def lift_morphism(fam: CoclassFamily, x: int, A: QuillenObject, B: QuillenObject, g,
                  enforce_x0: bool = True) -> Lifting:
    if enforce_x0:
        x0 = family_x0(fam)
        if x < x0:
            raise BelowX0(x, x0)
    builder = GxCategoryBuilder(fam, x)
    key = builder.induced_map(A, g)
    if not all(b in B.elements for _, b in key):
        raise NotAMorphism(f"{g} does not conjugate {A.label} into {B.label}")
    subs = {L.elements: L for L in fam.eta_split_subgroups}
    L, H = subs[A.subgroup], subs[B.subgroup]
    w, m = g
    sb = SCategoryBuilder(fam)
    mbar = sb.solve_lift(L, H, w, A.gamma_bar, B.gamma_bar)
    if mbar is None:
        raise NotAMorphism(f"no lifting of {g} for {A.label} -> {B.label}")
    # residual of (1)
    lhs = act_commutator(mbar, w, L, fam.action, fam.N_dec)
    rhs = reduce(fam.zeta_hat(L, H, w) - restrict(act(B.gamma_bar, w), L) + A.gamma_bar, fam.N_dec)
    residual_zero = (lhs - rhs).is_zero()
    q = builder.q
    munder = tuple((a - b) % q for a, b in zip(m, mbar))
    # equation (2)
    delta = builder.delta(L, H, g, A, B)
    lhs2 = (fam.phi_x(L, H, w, x) - restrict(act(B.gamma_under, w), L) + A.gamma_under - delta)
    rhs2 = act_commutator(munder, w, L, fam.action, builder.level)
    return Lifting(w, tuple(mbar), munder, residual_zero, (lhs2 - rhs2).is_zero())


def pushout(fam: CoclassFamily, x: int, A, B, g, lifting: Optional[Lifting] = None):
    """g-hat = (w, pro_(x+1)(m-bar) + mul(m-under)) in G_(x+1)."""
    if lifting is None:
        lifting = lift_morphism(fam, x, A, B, g)
    q1 = fam.p ** fam.level(x + 1)
    m = tuple((a + fam.p * b) % q1 for a, b in zip(lifting.m_bar, lifting.m_under))
    return (lifting.w, m)


# ---------------------------------------------------------------- functors

@dataclass
class FunctorData:
    source: Category
    target: Category
    object_map: list
    morphism_map: dict           # (i, j) -> {source mapping: target mapping}
    name: str = ""

    def check_functor(self) -> None:
        """Identities and composition are preserved."""
        S, T = self.source, self.target
        for i in range(len(S.objects)):
            fi = self.object_map[i]
            if self.morphism_map[(i, i)][S.identity(i)] != T.identity(fi):
                raise AssertionError(f"identity of object {i} is not preserved")
        for (i, j), fs in self.morphism_map.items():
            for f, Ff in fs.items():
                for k in range(len(S.objects)):
                    for g, Fg in self.morphism_map.get((j, k), {}).items():
                        fg = compose_maps(f, g)
                        if self.morphism_map[(i, k)][fg] != compose_maps(Ff, Fg):
                            raise AssertionError(f"composition {i}->{j}->{k} is not preserved")


def functor_FS(fam: CoclassFamily, x: int, enforce_x0: bool = True) -> FunctorData:
    src = skeleton_Gx(fam, x)
    tgt = skeleton_S(fam)
    tindex = {(o.subgroup, o.gamma_index): n for n, o in enumerate(tgt.objects)}
    omap = [tindex[(o.subgroup, o.gamma_index)] for o in src.objects]
    P = fam.P
    mmap = {}
    for i, A in enumerate(src.objects):
        for j, B in enumerate(src.objects):
            out = {}
            for key, mor in src.hom(i, j).items():
                images = set()
                for g in mor.witnesses:
                    lift = lift_morphism(fam, x, A, B, g, enforce_x0)
                    if not (lift.residual_zero and lift.second_equation):
                        raise AssertionError("lifting equations fail")
                    images.add(tuple(sorted((l, P.conj(l, lift.w)) for l in A.subgroup)))
                if len(images) != 1:
                    raise AssertionError("lifting depends on the conjugator")
                image = images.pop()
                if image not in tgt.hom(omap[i], omap[j]):
                    raise AssertionError("lifted morphism is not in the target")
                out[key] = image
            mmap[(i, j)] = out
    return FunctorData(src, tgt, omap, mmap, f"F_S at x = {x}")


def functor_F(fam: CoclassFamily, x: int, enforce_x0: bool = True) -> FunctorData:
    if enforce_x0:
        x0 = family_x0(fam)
        if x < x0:
            raise BelowX0(x, x0)
    src = skeleton_Gx(fam, x)
    tgt = skeleton_Gx(fam, x + 1)
    p = fam.p
    q1 = p ** fam.level(x + 1)
    tindex = {(o.subgroup, o.gamma_index, o.gamma_under.vec, o.module): n
              for n, o in enumerate(tgt.objects)}
    omap = []
    for o in src.objects:
        under = tuple(a * p % q1 for a in o.gamma_under.vec)
        module = tuple(sorted(tuple(a * p % q1 for a in v) for v in o.module))
        omap.append(tindex[(o.subgroup, o.gamma_index, under, module)])
    tb = GxCategoryBuilder(fam, x + 1)
    mmap = {}
    for i, A in enumerate(src.objects):
        for j, B in enumerate(src.objects):
            out = {}
            for key, mor in src.hom(i, j).items():
                images = set()
                for g in mor.witnesses:
                    lift = lift_morphism(fam, x, A, B, g, enforce_x0=False)
                    ghat = pushout(fam, x, A, B, g, lift)
                    images.add(tb.induced_map(tgt.objects[omap[i]], ghat))
                if len(images) != 1:
                    raise AssertionError("pushout depends on the conjugator")
                image = images.pop()
                if image not in tgt.hom(omap[i], omap[j]):
                    raise AssertionError("pushout does not induce a morphism of the target")
                out[key] = image
            mmap[(i, j)] = out
    return FunctorData(src, tgt, omap, mmap, f"F at x = {x}")


def identity_functor(C: Category) -> FunctorData:
    mmap = {}
    for i in range(len(C.objects)):
        for j in range(len(C.objects)):
            mmap[(i, j)] = {k: k for k in C.hom(i, j)}
    return FunctorData(C, C, list(range(len(C.objects))), mmap, "identity")


@dataclass
class EquivalenceReport:
    essentially_surjective: bool
    full: bool
    faithful: bool
    full_on_nonempty: bool
    bijective_on_objects: bool
    witnesses: dict

    @property
    def equivalence(self) -> bool:
        return self.essentially_surjective and self.full and self.faithful

    def as_dict(self) -> dict:
        return {"essentially_surjective": self.essentially_surjective, "full": self.full,
                "faithful": self.faithful, "full_on_nonempty": self.full_on_nonempty,
                "bijective_on_objects": self.bijective_on_objects,
                "witnesses": {k: str(v) for k, v in self.witnesses.items()}}


def check_equivalence(F: FunctorData) -> EquivalenceReport:
    S, T = F.source, F.target
    witnesses = {}
    image = set(F.object_map)
    ess = True
    for b in range(len(T.objects)):
        if not any(T.isomorphic(a, b) for a in image):
            ess = False
            witnesses.setdefault("not_essentially_surjective", T.objects[b].label)
    full = full_ne = faithful = True
    for i in range(len(S.objects)):
        for j in range(len(S.objects)):
            src = F.morphism_map.get((i, j), {})
            imgs = list(src.values())
            tgt = set(T.hom(F.object_map[i], F.object_map[j]))
            if set(imgs) != tgt:
                if full:
                    witnesses["not_full"] = (S.objects[i].label, S.objects[j].label)
                full = False
                if src:
                    full_ne = False
                    witnesses.setdefault("not_full_on_nonempty", (S.objects[i].label, S.objects[j].label))
            if len(set(imgs)) != len(imgs):
                if faithful:
                    witnesses["not_faithful"] = (S.objects[i].label, S.objects[j].label)
                faithful = False
    bij = len(image) == len(F.object_map) == len(T.objects)
    return EquivalenceReport(ess, full, faithful, full_ne, bij, witnesses)


# ---------------------------------------------------------------- oracle

@dataclass
class OracleReport:
    agree: bool
    skeleton_objects: int
    oracle_objects: int
    hom_matrix: list
    problems: list
    conjugating_witnesses: dict
    skeleton_classes: int = 0
    oracle_classes: int = 0

    def as_dict(self) -> dict:
        return {"agree": self.agree, "skeleton_objects": self.skeleton_objects,
                "oracle_objects": self.oracle_objects, "hom_matrix": self.hom_matrix,
                "skeleton_classes": self.skeleton_classes, "oracle_classes": self.oracle_classes,
                "problems": self.problems}


def isomorphism_classes(C: Category) -> list:
    classes = []
    for i in range(len(C.objects)):
        for cl in classes:
            if C.isomorphic(i, cl[0]):
                cl.append(i)
                break
        else:
            classes.append([i])
    return classes


def compare_with_oracle(skel: Category, oracle: Category, G: FiniteGroup) -> OracleReport:
    """Skeleton objects must be oracle objects with identical Hom sets, and
    every oracle object must be conjugate to a skeleton object."""
    problems = []
    index = oracle.index_by_elements()
    pos = []
    for obj in skel.objects:
        if obj.elements not in index:
            problems.append(f"skeleton object {obj.label} is not an elementary abelian subgroup")
            pos.append(None)
        else:
            pos.append(index[obj.elements])
    n = len(skel.objects)
    for i in range(n):
        for j in range(n):
            if pos[i] is None or pos[j] is None:
                continue
            if set(skel.hom(i, j)) != set(oracle.hom(pos[i], pos[j])):
                problems.append(f"Hom({skel.objects[i].label}, {skel.objects[j].label}) differs: "
                                f"{len(skel.hom(i, j))} vs {len(oracle.hom(pos[i], pos[j]))}")
    witnesses = {}
    for k, obj in enumerate(oracle.objects):
        found = None
        order = sorted(range(n), key=lambda i: pos[i] != k)
        for i in order:
            if pos[i] is not None and oracle.isomorphic(k, pos[i]):
                found = oracle.hom(k, pos[i])
                found = next(iter(found.values())).witness
                witnesses[obj.label] = (skel.objects[i].label, G.labels[found])
                break
        if found is None:
            problems.append(f"oracle object {obj.label} is not conjugate to a skeleton object")
    sc, oc = len(isomorphism_classes(skel)), len(isomorphism_classes(oracle))
    if sc != oc:
        problems.append(f"{sc} isomorphism classes in the skeleton, {oc} in the oracle")
    return OracleReport(not problems, n, len(oracle.objects), skel.hom_matrix(), problems,
                        witnesses, sc, oc)


def oracle_check(fam: CoclassFamily, x: int, cap: int = 2**12) -> OracleReport:
    G = fam.group(x)
    if G.order > cap:
        raise CapExceeded(f"|G_{x}| = {G.order} exceeds the cap {cap}")
    return compare_with_oracle(skeleton_Gx(fam, x), category_bruteforce(G.finite, cap), G.finite)


# ---------------------------------------------------------------- output

def category_to_dict(C: Category, element_word=None) -> dict:
    def word(a):
        return element_word(a) if element_word else str(a)
    objs = [{"index": i, "label": o.label, "order": o.order} for i, o in enumerate(C.objects)]
    homs = []
    for (i, j) in sorted(C.homs):
        for key in sorted(C.homs[(i, j)]):
            mor = C.homs[(i, j)][key]
            homs.append({"source": i, "target": j, "witness": mor.witness_word,
                         "map": [[word(a), word(b)] for a, b in key]})
    return {"name": C.name, "objects": objs, "morphisms": homs}


def category_to_json(C: Category, element_word=None) -> str:
    return json.dumps(category_to_dict(C, element_word), indent=1, sort_keys=True)


def category_to_dot(C: Category) -> str:
    lines = ["digraph quillen {"]
    for i, o in enumerate(C.objects):
        lines.append(f'  n{i} [label="{o.label}"];')
    for (i, j) in sorted(C.homs):
        for key in sorted(C.homs[(i, j)]):
            mor = C.homs[(i, j)][key]
            if i == j and all(a == b for a, b in key):
                continue
            lines.append(f'  n{i} -> n{j} [label="{mor.witness_word}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def category_table(C: Category, omit_trivial: bool = True) -> str:
    """Objects, then 'source -> target | induced by' rows."""
    lines = ["objects: " + ", ".join(o.label for o in C.objects), "", "source -> target | induced by"]
    for (i, j) in sorted(C.homs):
        A, B = C.objects[i], C.objects[j]
        if omit_trivial and _trivial_pair(A, B):
            continue
        ws = [C.homs[(i, j)][k].witness_word for k in sorted(C.homs[(i, j)])]
        lines.append(f"{A.label} -> {B.label} | {', '.join(ws)}")
    return "\n".join(lines) + "\n"


def _trivial_pair(A: QuillenObject, B: QuillenObject) -> bool:
    """<1> -> B, and O -> B x O on the G_x side."""
    if A.order == 1:
        return True
    if A.kind == "G" and len(A.subgroup) == 1 and A.module == B.module:
        return True
    return False

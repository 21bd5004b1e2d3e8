"""Compare computed semi-skeletons with tables given by conjugating words.

A reference table lists (source, target, conjugators); objects are given by
generating elements (w, k) meaning s(w) t^k.  A row matches when the set of
morphisms induced by the listed conjugators equals the computed Hom set.
Pairs without a row must have empty Hom sets, except the trivial pairs
<1> -> B and O -> B x O, which have exactly one morphism.
"""

from __future__ import annotations

from .family import CoclassFamily
from .quillen import Category, GxCategoryBuilder, SCategoryBuilder


def _closure(mul, identity, gens) -> frozenset:
    out = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in out:
                    out.add(y)
                    new.append(y)
        frontier = new
    return frozenset(out)


def _vec(k, q, d):
    return ((k % q),) + (0,) * (d - 1)


def realize_s_object(fam: CoclassFamily, gens) -> frozenset:
    sb = SCategoryBuilder(fam)
    d = fam.action.d
    els = [(w, _vec(k, sb.q_dec, d)) for w, k in gens]
    return _closure(sb.ext.mul, sb.ext.identity, els)


def realize_gx_object(fam: CoclassFamily, x: int, gens) -> frozenset:
    gb = GxCategoryBuilder(fam, x)
    ext, d = gb.ext, fam.action.d
    els = [(w, _vec(k(x) if callable(k) else k, gb.q, d)) for w, k in gens]
    return frozenset(ext.index_of(e) for e in _closure(ext.mul, ext.identity, els))


def _trivial(name_src: str, name_dst: str) -> bool:
    if name_src == "<1>":
        return True
    return name_src == "O" and (name_dst == "O" or name_dst.endswith(" x O"))


def _compare(C: Category, objects: dict, rows: list, induced) -> list:
    """Problems found; objects maps names to element sets, induced(i, j, g)
    returns the morphism key of conjugator g from object i or None."""
    problems = []
    index = C.index_by_elements()
    pos = {}
    for name, els in objects.items():
        if els not in index:
            problems.append(f"reference object {name} is not in the skeleton")
        else:
            pos[name] = index[els]
    if len(objects) != len(C.objects):
        problems.append(f"{len(C.objects)} objects, reference has {len(objects)}")
    if problems:
        return problems
    listed = set()
    for src, dst, conjugators in rows:
        i, j = pos[src], pos[dst]
        listed.add((i, j))
        expected = set()
        for g in conjugators:
            key = induced(i, j, g)
            if key is None:
                problems.append(f"{src} -> {dst}: a listed conjugator does not map into the target")
            else:
                expected.add(key)
        if expected != set(C.hom(i, j)):
            problems.append(f"{src} -> {dst}: {len(C.hom(i, j))} morphisms, reference {len(expected)}")
    names = {v: k for k, v in pos.items()}
    for i in range(len(C.objects)):
        for j in range(len(C.objects)):
            if (i, j) in listed:
                continue
            want = 1 if _trivial(names[i], names[j]) else 0
            if len(C.hom(i, j)) != want:
                problems.append(f"{names[i]} -> {names[j]}: {len(C.hom(i, j))} morphisms, reference {want}")
    return problems


def compare_s_table(fam: CoclassFamily, C: Category, objects: dict, rows: list) -> list:
    sb = SCategoryBuilder(fam)
    P = fam.P
    d = fam.action.d
    realized = {name: realize_s_object(fam, gens) for name, gens in objects.items()}

    def induced(i, j, g):
        A, B = C.objects[i], C.objects[j]
        w, k = g
        h = (w, _vec(k, sb.q_dec, d))
        if not sb.conjugate_into(A, B, h):
            return None
        return tuple(sorted((l, P.conj(l, w)) for l in A.subgroup))
    return _compare(C, realized, rows, induced)


def compare_gx_table(fam: CoclassFamily, x: int, C: Category, objects: dict, rows: list) -> list:
    gb = GxCategoryBuilder(fam, x)
    d = fam.action.d
    realized = {name: realize_gx_object(fam, x, gens) for name, gens in objects.items()}

    def induced(i, j, g):
        A, B = C.objects[i], C.objects[j]
        w, k = g
        key = gb.induced_map(A, (w, _vec(k(x) if callable(k) else k, gb.q, d)))
        if not all(b in B.elements for _, b in key):
            return None
        return key
    return _compare(C, realized, rows, induced)

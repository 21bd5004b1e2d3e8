
import pytest

from coclass_quillen.errors import NotAGroup, NotUniserial
from coclass_quillen.fixtures import A, B, klein_group
from coclass_quillen.groups import (FiniteGroup, PModuleAction, all_subgroups,
                                    elementary_abelian_subgroups, elementary_subgroups_of_module,
                                    load_group, module_centralizer, save_group, verify_uniserial)
from coclass_quillen.padic import ModSubgroup


def dihedral8():
    """D8 as permutations of the square's corners."""
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)

    def compose(f, g):       # first f, then g
        return tuple(g[f[i]] for i in range(4))
    els = {(0, 1, 2, 3)}
    frontier = list(els)
    while frontier:
        new = []
        for x in frontier:
            for y in (r, s):
                z = compose(x, y)
                if z not in els:
                    els.add(z)
                    new.append(z)
        frontier = new
    els = sorted(els)
    idx = {e: i for i, e in enumerate(els)}
    return FiniteGroup([[idx[compose(a, b)] for b in els] for a in els])


def brute_subgroups(G):
    out = []
    for bits in range(1, 2**G.order):
        S = [a for a in range(G.order) if bits >> a & 1]
        if G.identity in S and all(G.mul(a, b) in S for a in S for b in S):
            out.append(tuple(S))
    return out


def test_klein_basics():
    P = klein_group()
    assert P.order == 4 and P.prime == 2 and P.m == 2
    assert P.conj(A, B) == A
    assert P.element_order(A) == 2


def test_bad_tables():
    with pytest.raises(NotAGroup):
        FiniteGroup([[0, 1], [0, 1]])
    with pytest.raises(NotAGroup):
        FiniteGroup([[(i + j) % 6 for j in range(6)] for i in range(6)])
    bad = [[0, 1, 2], [1, 2, 0], [2, 1, 0]]
    with pytest.raises(NotAGroup):
        FiniteGroup(bad, prime=3)


def test_nonassociative_table_rejected():
    # a Latin square with identity 0 that is not a group
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAGroup):
        FiniteGroup(t, prime=5)


def test_all_subgroups_against_brute_force():
    G = dihedral8()
    assert {S.elements for S in all_subgroups(G)} == set(brute_subgroups(G))
    assert len(all_subgroups(G)) == 10


def test_elementary_abelian_of_d8():
    G = dihedral8()
    found = {S.elements for S in elementary_abelian_subgroups(G)}
    expected = set()
    for S in brute_subgroups(G):
        if all(G.mul(a, b) == G.mul(b, a) and G.mul(a, a) == G.identity for a in S for b in S):
            expected.add(S)
    assert found == expected
    assert len(found) == 8


def test_subgroup_conjugate_and_label():
    P = klein_group()
    L = P.subgroup((0, A))
    assert L.conjugate(B) == L
    assert L.label() == "<a>"
    assert P.whole().order == 4


def test_roundtrip(tmp_path):
    G = dihedral8()
    path = tmp_path / "g.json"
    save_group(G, path)
    H = load_group(path)
    assert H.table == G.table


def test_action_check():
    P = klein_group()
    ok = PModuleAction(P, [[[1]], [[-1]], [[1]], [[-1]]])
    ok.check(5)
    bad = PModuleAction(P, [[[1]], [[-1]], [[1]], [[1]]])
    with pytest.raises(ValueError):
        bad.check(5)


def test_module_centralizer():
    P = klein_group()
    act = PModuleAction(P, [[[1]], [[-1]], [[1]], [[-1]]])
    full = ModSubgroup(2, 4, 1, [[1]])
    C = module_centralizer(P.subgroup((0, A)), full, act)
    assert set(C.elements()) == {(0,), (8,)}
    C = module_centralizer(P.subgroup((0, B)), full, act)
    assert C.order() == 16


def test_elementary_subgroups_of_module():
    V = ModSubgroup(2, 3, 2, [[4, 0], [0, 4]])
    subs = elementary_subgroups_of_module(V)
    assert len(subs) == 5          # trivial, three lines, the whole plane


def test_uniserial():
    P = klein_group()
    act = PModuleAction(P, [[[1]], [[-1]], [[1]], [[-1]]])
    data = verify_uniserial(act, P)
    assert all(i == 2 for i in data.indices)
    trivial = PModuleAction(P, [[[1]]] * 4)
    with pytest.raises(NotUniserial):
        verify_uniserial(trivial, P)


def test_rank_two_uniserial():
    # C4 = <g> acting on Z_2^2 by (x, y) -> (y, -x): T/[T,P] has order 2
    G = FiniteGroup([[(i + j) % 4 for j in range(4)] for i in range(4)])
    R = [[0, -1], [1, 0]]
    mats = [[[1, 0], [0, 1]], R, [[-1, 0], [0, -1]], [[0, 1], [-1, 0]]]
    act = PModuleAction(G, mats)
    act.check(6)
    data = verify_uniserial(act, G)
    assert data.d == 2

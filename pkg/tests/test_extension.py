import random

import pytest

from coclass_quillen.cochains import Cochain, cocycle_group, coboundary
from coclass_quillen.errors import NoComplement, NotACocycle
from coclass_quillen.extension import ExtensionGroup, complements_of
from coclass_quillen.fixtures import klein_group
from coclass_quillen.groups import PModuleAction

from conftest import get_family
from oracles import brute_complements, conjugacy_classes

P = klein_group()
SIGN = PModuleAction(P, [[[1]], [[-1]], [[1]], [[-1]]])


def test_associative_iff_cocycle_random():
    rng = random.Random(5)
    W = P.whole()
    both = {True: 0, False: 0}
    for _ in range(40):
        if rng.random() < 0.5:
            tau = Cochain(W, SIGN, 2, 2, tuple(rng.randrange(4) for _ in range(9)))
        else:
            # cocycle: rho + a random coboundary
            m = Cochain(W, SIGN, 1, 2, tuple(rng.randrange(4) for _ in range(3)))
            tau = get_family("dihedral2").rho_x(0) + coboundary(m)
        cocycle = coboundary(tau).is_zero()
        ext = ExtensionGroup(tau, check=False)
        assert ext.check_associative() == cocycle
        both[cocycle] += 1
    assert both[True] and both[False]


def test_fault_injection():
    fam = get_family("semidihedral2")
    tau = fam.nu_x(0)
    ExtensionGroup(tau)
    vec = list(tau.vec)
    vec[4] += 1
    bad = Cochain(tau.subgroup, tau.action, 2, tau.precision, tuple(vec))
    with pytest.raises(NotACocycle):
        ExtensionGroup(bad)
    assert not ExtensionGroup(bad, check=False).check_associative()


def test_group_operations():
    ext = get_family("dihedral2").group(0).ext
    G = ext.as_finite_group()
    assert G.order == 16
    for x in ext.elements()[:8]:
        assert ext.mul(x, ext.inv(x)) == ext.identity
        assert ext.element_at(ext.index_of(x)) == x


@pytest.mark.parametrize("name", ["dihedral2", "semidihedral2", "quaternion2"])
@pytest.mark.parametrize("x", [0, 1, 2])
def test_complement_counts(name, x):
    fam = get_family(name)
    ext = fam.group(x).ext
    split = {L.elements for L in fam.eta_split_subgroups}
    for L in fam.elementary_subgroups:
        found, G, kernel = brute_complements(ext, L)
        if L.elements not in split:
            # Lemma: a split preimage forces L into the eta-split list
            assert not found
            with pytest.raises(NoComplement):
                complements_of(L, ext)
            continue
        fam_c = complements_of(L, ext)
        Z = cocycle_group(L, ext.action, 1, ext.level)
        assert len(found) == Z.z_order
        assert {tuple(sorted(ext.index_of(e) for e in C.elements()))
                for C in fam_c.all_complements()} == found
        classes = conjugacy_classes(found, G, kernel)
        assert len(classes) == Z.h_order == len(fam_c.class_representatives())

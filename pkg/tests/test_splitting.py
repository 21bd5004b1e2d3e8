import pytest

from coclass_quillen.cochains import Cochain, coboundary, connecting, reduce, t_cohomology
from coclass_quillen.errors import NotACocycle, PrecisionTooLow
from coclass_quillen.fixtures import klein_group
from coclass_quillen.groups import PModuleAction, all_subgroups
from coclass_quillen.splitting import (decompose_cocycle, epi_shift, eta_representative,
                                       split_cocycles, verify_splitting)

from conftest import get_family

P = klein_group()
SIGN = PModuleAction(P, [[[1]], [[-1]], [[1]], [[-1]]])


@pytest.mark.parametrize("L", all_subgroups(P), ids=lambda L: L.label())
@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("r", range(4, 9))
def test_splitting_theorem(L, n, r):
    rep = verify_splitting(L, SIGN, n, r, 24)
    assert rep.z_order == rep.i_order * rep.k_order
    assert rep.intersection_order == 1
    assert rep.h_finite == rep.h_n * rep.h_next
    assert rep.mul_compatible


def test_k_order_is_next_cohomology():
    W = P.whole()
    for n in (1, 2):
        dec = split_cocycles(W, SIGN, n, 6, 24)
        assert dec.K().order() == t_cohomology(W, SIGN, n + 1, 24).order


def test_level_too_low():
    with pytest.raises(PrecisionTooLow):
        split_cocycles(P.whole(), SIGN, 1, 3, 24)


def test_decompose_roundtrip():
    W = P.whole()
    dec = split_cocycles(W, SIGN, 2, 6, 24)
    for z in list(dec.Z().elements())[:64]:
        gamma = Cochain(W, SIGN, 2, 6, z)
        bar, under = dec.decompose(gamma)
        assert coboundary(bar).reduce(20).is_zero()       # bar is a T-cocycle
        assert dec.K().contains(under.vec)
        assert reduce(bar, 6) + under == gamma


def test_decompose_rejects_non_cocycle():
    W = P.whole()
    gamma = Cochain(W, SIGN, 2, 6, (1,) + (0,) * 8)
    with pytest.raises(NotACocycle):
        decompose_cocycle(gamma, 24)


def test_epi_shift_divides_k_part():
    W = P.whole()
    dec = split_cocycles(W, SIGN, 1, 6, 24)
    k = dec.k_generators()[0]
    gamma = Cochain(W, SIGN, 1, 6, k)
    down = epi_shift(gamma, 24)
    assert down.precision == 5
    assert coboundary(down).is_zero()


@pytest.mark.parametrize("name", ["semidihedral2", "quaternion2"])
def test_eta_representative_recovers_eta(name):
    fam = get_family(name)
    W = fam.whole
    coh = t_cohomology(W, fam.action, 3, fam.N)
    for x in range(4):
        r = fam.level(x)
        eta_x = eta_representative(fam.eta, r, fam.N)
        assert coboundary(eta_x).is_zero()
        back = connecting(eta_x, r, fam.N)
        assert coh.class_of(back) == coh.class_of(fam.eta)
        if r >= 2 * fam.m:
            dec = split_cocycles(W, fam.action, 2, r, fam.N)
            assert dec.K().contains(eta_x.vec)

import pytest

from coclass_quillen.cochains import Cochain, cocycle_group, coboundary, reduce, restrict
from coclass_quillen.errors import NotMapped
from coclass_quillen.family import CoclassFamily, ProPData, compute_x0
from coclass_quillen.fixtures import (A, B, EXPECTED_ETA_SPLIT, EXPECTED_SPLIT,
                                      QUATERNION_TWIST, SEMIDIHEDRAL_TWIST, klein_group)
from coclass_quillen.groups import PModuleAction
from coclass_quillen.quillen import GxCategoryBuilder, category_bruteforce

from conftest import get_family


def labels(subs):
    return [tuple(e for e in L.elements if e) for L in subs]


def test_split_lists(family):
    name = family.data.name
    assert labels(family.split_subgroups) == EXPECTED_SPLIT[name]
    assert labels(family.eta_split_subgroups) == EXPECTED_ETA_SPLIT[name]


def test_sections_solve_rho(family):
    for L in family.split_subgroups:
        t = family.section(L)
        assert coboundary(t) == -restrict(family.rho, L)


def test_group_orders(family):
    for x in range(3):
        assert family.group(x).order == 2 ** (x + 4)


@pytest.mark.parametrize("name,twist", [("semidihedral2", SEMIDIHEDRAL_TWIST),
                                        ("quaternion2", QUATERNION_TWIST)])
def test_eta_x_is_presentation_twist(name, twist):
    fam = get_family(name)
    for x in range(4):
        expected = Cochain.from_table(fam.whole, fam.action, 2, fam.level(x),
                                      {k: (2 ** (x + 1) * v[0],) for k, v in twist.items()})
        assert fam.eta_x(x) == expected


def test_eta_x_mul_consistent(family):
    for x in range(3):
        up = family.eta_x(x + 1)
        assert up.vec == tuple(2 * a % up.modulus for a in family.eta_x(x).vec)


def test_sections_realize_complements(family):
    for x in range(3):
        ext = family.group(x).ext
        for L in family.eta_split_subgroups:
            els = set(family.complement_elements(L, x))
            assert all(ext.mul(a, b) in els for a in els for b in els)


def test_objects_theorem(family):
    """{C(gamma) x O : gamma in Z^1} is the list of elementary abelian subgroups."""
    for x in range(2):
        builder = GxCategoryBuilder(family, x)
        realized = set()
        for L in family.eta_split_subgroups:
            Z = cocycle_group(L, family.action, 1, family.level(x))
            for v in Z.cocycles.elements():
                gamma = Z.cochain(v)
                for O in family.module_subgroups(L, x):
                    realized.add(builder.realize(L, gamma, O))
        brute = {obj.elements for obj in category_bruteforce(family.group(x).finite).objects}
        assert realized == brute


def test_elementary_counts():
    counts = {"dihedral2": [14, 26, 50], "semidihedral2": [8, 14, 26], "quaternion2": [2, 2, 2]}
    for name, expected in counts.items():
        fam = get_family(name)
        got = [len(category_bruteforce(fam.group(x).finite).objects) for x in range(3)]
        assert got == expected


def test_zeta_identity_element_is_zero(family):
    for L in family.eta_split_subgroups:
        for x in range(3):
            z = family.zeta_family(L, L, (0, (0,)), x)
            assert z.zeta.is_zero() and z.is_cocycle


def test_zeta_not_mapped():
    fam = get_family("dihedral2")
    La, Lab = fam.split_subgroups[1], fam.split_subgroups[2]
    with pytest.raises(NotMapped):
        fam.zeta_hat(La, Lab, 0)


def test_zeta_decomposition(family):
    """zeta-hat at level x is pro_x(zeta-hat over T) + phi."""
    for L in family.eta_split_subgroups:
        for H in family.eta_split_subgroups:
            for w in range(4):
                if not set(L.conjugate(w).elements) <= set(H.elements):
                    continue
                for x in range(3):
                    lhs = family.zeta_hat_x(L, H, w, x)
                    rhs = reduce(family.zeta_hat(L, H, w), family.level(x)) + family.phi_x(L, H, w, x)
                    assert lhs == rhs


def test_zeta_membership_constant_on_cosets():
    fam = get_family("dihedral2")
    x = 1
    q = 2 ** fam.level(x)
    for L in fam.eta_split_subgroups:
        for H in fam.eta_split_subgroups:
            for w in range(4):
                if not set(L.conjugate(w).elements) <= set(H.elements):
                    continue
                flags = {fam.zeta_family(L, H, (w, (m,)), x).is_cocycle for m in range(q)}
                assert len(flags) == 1


def test_zeta_witnesses_a_to_at():
    fam = get_family("dihedral2")
    La = fam.split_subgroups[1]
    z = fam.zeta_family(La, La, (B, (0,)), 1)
    assert z.is_cocycle


def test_x0_of_built_in_families(family):
    assert compute_x0(family.data) == 2
    assert all(v == 0 for v in family.x_bounds().values())


def split_abelian():
    P = klein_group()
    act = PModuleAction(P, [[[1]], [[1]], [[-1]], [[-1]]])
    return ProPData("split", P, act, {}, None, e=2)


def test_x0_split_abelian():
    assert compute_x0(split_abelian()) == 2


@pytest.mark.parametrize("k", range(5))
def test_x0_planted_defect(k):
    """Perturb t_L by t(a) = 2^k over L = <a> (trivial action): the triple
    (L, L, b) has zeta-hat(a) = 2^(k+1), whose coboundary at (a, a) is 2^(k+2)."""
    data = split_abelian()
    fam = CoclassFamily(data)
    L = data.group.subgroup((0, A))
    t = Cochain.from_table(L, data.action, 1, fam.N, {(A,): (2**k,)})
    planted = CoclassFamily(data, section_overrides={L.elements: t})
    v = planted.defect_valuations()[(L.elements, L.elements, B)]
    assert v == k + 2
    assert planted.x_bounds()[(L.elements, L.elements, B)] == max(0, v + 1 - data.e)
    assert compute_x0(data, section_overrides={L.elements: t}) == k + 1 + data.m


def test_prop_data_roundtrip(tmp_path, family):
    path = tmp_path / "d.json"
    family.data.save(path)
    back = ProPData.load(path)
    assert back.rho == {k: v for k, v in family.data.rho.items() if any(v)}
    assert back.e == family.data.e
    fam2 = CoclassFamily(back)
    assert fam2.group(1).order == family.group(1).order
    assert fam2.eta_x(1) == family.eta_x(1)


def test_corrupted_eta_rejected():
    fam = get_family("semidihedral2")
    d = fam.data.to_dict()
    d["eta"][0][1][0] += 1
    from coclass_quillen.errors import NotACocycle
    with pytest.raises(NotACocycle):
        CoclassFamily(ProPData.from_dict(d))

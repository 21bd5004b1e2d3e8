"""Acceptance criteria 1-10.  Each test prints one PASS/FAIL line."""

import random
import time

import pytest

from coclass_quillen.cochains import Cochain, coboundary, cocycle_group
from coclass_quillen.errors import NotACocycle
from coclass_quillen.extension import ExtensionGroup, complements_of
from coclass_quillen.family import CoclassFamily, compute_x0
from coclass_quillen.fixtures import (ERRATA, S_OBJECTS, S_TABLE, family_data, gx_objects,
                                      gx_table, klein_group)
from coclass_quillen.groups import FiniteGroup, PModuleAction, all_subgroups
from coclass_quillen.quillen import (GxCategoryBuilder, check_equivalence, functor_F, functor_FS,
                                     lift_morphism, oracle_check, skeleton_Gx, skeleton_S)
from coclass_quillen.reference import compare_gx_table, compare_s_table
from coclass_quillen.splitting import verify_splitting

FAMILIES = ["dihedral2", "semidihedral2", "quaternion2"]


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
    return emit


def fresh(name):
    return CoclassFamily(family_data(name))


def test_criterion_1_s_skeleton(report):
    t = time.perf_counter()
    fam = fresh("dihedral2")
    S = skeleton_S(fam)
    problems = compare_s_table(fam, S, S_OBJECTS, S_TABLE)
    elapsed = time.perf_counter() - t
    labels = [o.label for o in S.objects]
    ok = not problems and labels == ["<1>", "<a>", "<at>", "<ab>", "<abt>"] and elapsed < 1
    report(1, ok, f"objects {labels}, 8 rows, {elapsed:.2f}s {problems[:2]}")
    assert ok, problems


def test_criterion_2_dihedral_tables(report):
    fam = fresh("dihedral2")
    worst, problems = 0.0, []
    for x in range(6):
        t = time.perf_counter()
        C = skeleton_Gx(fam, x)
        problems += [f"x={x}: {p}" for p in compare_gx_table(fam, x, C, gx_objects("dihedral2"),
                                                               gx_table("dihedral2"))]
        worst = max(worst, time.perf_counter() - t)
        if len(C.objects) != 10:
            problems.append(f"x={x}: {len(C.objects)} objects")
    ok = not problems and worst < 5
    report(2, ok, f"x = 0..5, 10 objects, {len(gx_table('dihedral2'))} rows each, "
                  f"slowest x {worst:.2f}s {problems[:2]}")
    assert ok, problems


def test_criterion_3_semidihedral_tables(report):
    fam = fresh("semidihedral2")
    eta_split = [L.label() for L in fam.eta_split_subgroups]
    problems = []
    for x in range(6):
        C = skeleton_Gx(fam, x)
        problems += [f"x={x}: {p}" for p in compare_gx_table(fam, x, C, gx_objects("semidihedral2"),
                                                               gx_table("semidihedral2"))]
        if len(C.objects) != 6:
            problems.append(f"x={x}: {len(C.objects)} objects")
        # the commonly quoted word bt^-1 for <at> -> <a> lands in <a> x O, not in <a>
        for src, dst, quoted, corrected in ERRATA["semidihedral2"]:
            b = GxCategoryBuilder(fam, x)
            names = {o.label: o for o in C.objects}
            img = {v for _, v in b.induced_map(names[src], (quoted[0], ((quoted[1](x)) % b.q,)))}
            if img <= names[dst].elements or not img <= names[f"{dst} x O"].elements:
                problems.append(f"x={x}: erratum check failed")
    ok = not problems and eta_split == ["<1>", "<a>"]
    report(3, ok, f"L_eta = {eta_split}, 6 objects, table with bt^(2^x) for <a> -> <at>; "
                  f"<at> -> <a> single row uses bt^(2^x - 1) (quoted bt^-1 maps into <a> x O) "
                  f"{problems[:2]}")
    assert ok, problems


def test_criterion_4_quaternion(report):
    fam = fresh("quaternion2")
    problems = []
    for x in range(6):
        C = skeleton_Gx(fam, x)
        if [o.label for o in C.objects] != ["<1>", "O"] or C.hom_matrix() != [[1, 1], [0, 1]]:
            problems.append(f"x={x}: {[o.label for o in C.objects]} {C.hom_matrix()}")
        problems += compare_gx_table(fam, x, C, gx_objects("quaternion2"), [])
    report(4, not problems, f"objects <1>, O; only <1> -> O besides identities {problems[:2]}")
    assert not problems


def test_criterion_5_counting(report):
    lines, ok = [], True
    for name, expected in zip(FAMILIES, [10, 6, 2]):
        fam = fresh(name)
        s_count = sum(fam.h1(L).order for L in fam.split_subgroups)
        ok &= s_count == len(skeleton_S(fam).objects) == 5
        for x in range(4):
            total = sum(fam.h1(L).order * fam.h2(L).order * len(fam.module_subgroups(L, x))
                        for L in fam.eta_split_subgroups)
            ok &= total == len(skeleton_Gx(fam, x).objects) == expected
        lines.append(f"{name}: S {s_count}, G_x {expected}")
    report(5, ok, "; ".join(lines))
    assert ok


def test_criterion_6_oracle(report):
    t = time.perf_counter()
    problems, sizes = [], []
    for name in FAMILIES:
        fam = fresh(name)
        for x in range(3):
            rep = oracle_check(fam, x)
            sizes.append(rep.oracle_objects)
            problems += [f"{name} x={x}: {p}" for p in rep.problems]
            # composition compatibility: Hom sets are equal as sets of maps,
            # so composites agree; check closure inside the skeleton too
            skeleton_Gx(fam, x).check_axioms()
    elapsed = time.perf_counter() - t
    ok = not problems and elapsed < 60
    report(6, ok, f"9 groups of order 16-64, {sum(sizes)} brute-force objects, {elapsed:.1f}s "
                  f"{problems[:2]}")
    assert ok, problems


def test_criterion_7_splitting(report):
    P = klein_group()
    data = family_data("dihedral2")
    bad, count = [], 0
    for L in all_subgroups(P):
        for n in (1, 2):
            for r in range(2 * P.m, 2 * P.m + 5):
                rep = verify_splitting(L, data.action, n, r, 26)
                count += 1
                if not rep.ok:
                    bad.append((L.label(), n, r))
    report(7, not bad, f"{count} cases (5 subgroups, n = 1, 2, r = 4..8) {bad[:3]}")
    assert not bad


def test_criterion_8_main_theorem(report):
    bad, steps = [], 0
    for name in FAMILIES:
        fam = fresh(name)
        x0 = compute_x0(fam.data)
        for x in range(x0, x0 + 4):
            F = functor_F(fam, x)
            F.check_functor()
            rep = check_equivalence(F)
            steps += 1
            if not (rep.essentially_surjective and rep.full and rep.faithful):
                bad.append((name, x, rep.witnesses))
    report(8, not bad, f"{steps} steps x -> x+1 for x = x0..x0+3 (x0 = 2) {bad[:2]}")
    assert not bad


def test_criterion_9_fs(report):
    expected = {
        # (essentially surjective, full on nonempty Hom sets, faithful)
        "dihedral2": (True, True, False),
        "semidihedral2": (False, True, False),
        # L_eta = {1} != L, so only <1> is hit; Hom sets are trivial
        "quaternion2": (False, True, True),
    }
    got = {}
    for name in FAMILIES:
        fam = fresh(name)
        results = set()
        for x in range(2, 6):
            F = functor_FS(fam, x)
            F.check_functor()
            rep = check_equivalence(F)
            results.add((rep.essentially_surjective, rep.full_on_nonempty, rep.faithful))
        got[name] = results
    ok = all(got[n] == {expected[n]} for n in FAMILIES)
    report(9, ok, "dihedral full not faithful; semidihedral not dense, full, not faithful; "
                  "quaternion faithful and full but not dense (deviation from 'everything true', "
                  f"see notes); fullness on nonempty Hom sets {got}")
    assert ok


CORPUS = [
    (klein_group(), [[[1]], [[-1]], [[1]], [[-1]]]),
    (klein_group(), [[[1]]] * 4),
    (FiniteGroup([[(i + j) % 4 for j in range(4)] for i in range(4)]), [[[1]], [[-1]], [[1]], [[-1]]]),
    (FiniteGroup([[(i + j) % 4 for j in range(4)] for i in range(4)]),
     [[[1, 0], [0, 1]], [[0, -1], [1, 0]], [[-1, 0], [0, -1]], [[0, 1], [-1, 0]]]),
]


def test_criterion_10_properties(report):
    from oracles import brute_complements, conjugacy_classes
    rng = random.Random(10)
    parts = []
    # (a) Delta Delta = 0
    for G, mats in CORPUS:
        action = PModuleAction(G, mats)
        W = G.whole()
        for _ in range(1000):
            n = rng.choice([0, 1, 2])
            size = (G.order - 1) ** n * action.d
            g = Cochain(W, action, n, 8, tuple(rng.randrange(256) for _ in range(size)))
            assert coboundary(coboundary(g)).is_zero()
    parts.append("Delta Delta = 0 on 4000 cochains")
    # (b) associativity iff cocycle, with faults injected into nu_x
    injected = 0
    for name in FAMILIES:
        fam = fresh(name)
        tau = fam.nu_x(0)
        assert ExtensionGroup(tau).check_associative()
        for pos in range(len(tau.vec)):
            vec = list(tau.vec)
            vec[pos] += 1 + rng.randrange(3)
            bad = Cochain(tau.subgroup, tau.action, 2, tau.precision, tuple(vec))
            assert not coboundary(bad).is_zero()
            assert not ExtensionGroup(bad, check=False).check_associative()
            with pytest.raises(NotACocycle):
                ExtensionGroup(bad)
            injected += 1
    parts.append(f"{injected} injected faults all non-associative")
    # (c) complements versus brute force
    checked = 0
    for name in FAMILIES:
        fam = fresh(name)
        for x in range(3):
            ext = fam.group(x).ext
            split = {L.elements for L in fam.eta_split_subgroups}
            for L in fam.elementary_subgroups:
                found, G, kernel = brute_complements(ext, L)
                if L.elements not in split:
                    assert not found
                    checked += 1
                    continue
                Z = cocycle_group(L, ext.action, 1, ext.level)
                assert len(found) == Z.z_order
                assert len(conjugacy_classes(found, G, kernel)) == Z.h_order
                assert len(complements_of(L, ext).all_complements()) == Z.z_order
                checked += 1
    parts.append(f"complement counts on {checked} (group, L) pairs")
    # (d) lifting residuals for every morphism lifted in criteria 8 and 9
    lifted = 0
    for name in FAMILIES:
        fam = fresh(name)
        for x in range(2, 6):
            C = skeleton_Gx(fam, x)
            for (i, j), h in C.homs.items():
                for mor in h.values():
                    for g in mor.witnesses:
                        lift = lift_morphism(fam, x, C.objects[i], C.objects[j], g)
                        assert lift.residual_zero and lift.second_equation
                        lifted += 1
    parts.append(f"{lifted} liftings with zero residual")
    report(10, True, "; ".join(parts))

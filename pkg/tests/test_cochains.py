import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coclass_quillen.cochains import (Cochain, act, coboundary, coboundary_via_matrix,
                                      cocycle_group, commutator_cochain, connecting, divide,
                                      include, multiply, reduce, restrict, solve_coboundary,
                                      t_cohomology)
from coclass_quillen.errors import DivNotDivisible
from coclass_quillen.fixtures import A, AB, B, klein_group
from coclass_quillen.groups import FiniteGroup, PModuleAction

P = klein_group()
SIGN = PModuleAction(P, [[[1]], [[-1]], [[1]], [[-1]]])
TRIVIAL = PModuleAction(P, [[[1]]] * 4)
C4 = FiniteGroup([[(i + j) % 4 for j in range(4)] for i in range(4)])
C4_INV = PModuleAction(C4, [[[1]], [[-1]], [[1]], [[-1]]])
C4_ROT = PModuleAction(C4, [[[1, 0], [0, 1]], [[0, -1], [1, 0]], [[-1, 0], [0, -1]], [[0, 1], [-1, 0]]])
CORPUS = [(P, SIGN), (P, TRIVIAL), (C4, C4_INV), (C4, C4_ROT)]


def random_cochain(rng, G, action, n, r):
    L = G.whole()
    size = (G.order - 1) ** n * action.d
    return Cochain(L, action, n, r, tuple(rng.randrange(2**r) for _ in range(size)))


@pytest.mark.parametrize("G,action", CORPUS)
def test_delta_delta_zero(G, action):
    rng = random.Random(1)
    for _ in range(200):
        n = rng.choice([0, 1, 2])
        g = random_cochain(rng, G, action, n, 6)
        assert coboundary(coboundary(g)).is_zero()


@pytest.mark.parametrize("G,action", CORPUS)
def test_formula_matches_matrix(G, action):
    rng = random.Random(2)
    for n in (0, 1, 2):
        g = random_cochain(rng, G, action, n, 5)
        assert coboundary(g) == coboundary_via_matrix(g)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 31), min_size=9, max_size=9), st.sampled_from([A, B, AB]))
def test_action_commutes_with_coboundary(vals, g):
    gamma = Cochain(P.whole(), SIGN, 2, 5, tuple(vals))
    assert coboundary(act(gamma, g)) == act(coboundary(gamma), g)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 31), min_size=3, max_size=3), st.sampled_from(range(4)),
       st.sampled_from(range(4)))
def test_action_composes(vals, g, h):
    gamma = Cochain(P.whole(), SIGN, 1, 5, tuple(vals))
    assert act(act(gamma, g), h) == act(gamma, P.mul(h, g))


def test_identity_arguments_vanish():
    g = Cochain(P.whole(), SIGN, 2, 3, tuple(range(9)))
    assert g(0, A) == (0,) and g(B, 0) == (0,)


def test_commutator_is_minus_delta0():
    m = Cochain(P.whole(), SIGN, 0, 6, (5,))
    lam = commutator_cochain((5,), P.whole(), SIGN, 6)
    assert lam == -coboundary(m)


def brute_counts(L, action, n, r):
    """|Z^n| and |B^n| by enumeration."""
    q = 2**r
    size = (L.order - 1) ** n * action.d
    z = 0
    for vec in itertools.product(range(q), repeat=size):
        if coboundary(Cochain(L, action, n, r, vec)).is_zero():
            z += 1
    bsize = (L.order - 1) ** (n - 1) * action.d
    bset = {coboundary(Cochain(L, action, n - 1, r, vec)).vec
            for vec in itertools.product(range(q), repeat=bsize)}
    return z, len(bset)


# keep the enumerations below 2^12 cochains per degree
BRUTE_CASES = [(G, a, n, r) for G, a in CORPUS for n, r in [(1, 1), (1, 2), (1, 3), (2, 1)]
               if a.d == 1 or (n, r) in [(1, 1), (1, 2)]]


@pytest.mark.parametrize("G,action,n,r", BRUTE_CASES)
def test_cocycle_orders_brute_force(G, action, n, r):
    L = G.whole()
    Z = cocycle_group(L, action, n, r)
    z, b = brute_counts(L, action, n, r)
    assert (Z.z_order, Z.b_order) == (z, b)


def test_klein_cohomology():
    L = P.subgroup((0, A))
    assert [t_cohomology(L, SIGN, n, 12).order for n in (1, 2, 3)] == [2, 1, 2]
    Lb = P.subgroup((0, B))
    assert [t_cohomology(Lb, SIGN, n, 12).order for n in (1, 2)] == [1, 2]
    W = P.whole()
    assert t_cohomology(W, SIGN, 1, 12).invariants == [2]
    assert t_cohomology(W, SIGN, 2, 12).invariants == [2]
    assert sorted(t_cohomology(W, SIGN, 3, 12).invariants) == [2, 2]


@pytest.mark.parametrize("r", range(4, 9))
def test_finite_level_order_formula(r):
    W = P.whole()
    for n in (1, 2):
        H = cocycle_group(W, SIGN, n, r).h_order
        assert H == t_cohomology(W, SIGN, n, 14).order * t_cohomology(W, SIGN, n + 1, 14).order


def test_transversal_classes_distinct():
    W = P.whole()
    coh = t_cohomology(W, SIGN, 3, 12)
    reps = coh.transversal()
    assert len(reps) == 4 and reps[0].is_zero()
    assert len({coh.class_of(g) for g in reps}) == 4
    for g in reps:
        assert coh.is_cocycle(g)
        assert coh.representative(g) == g


def test_solve_coboundary():
    W = P.whole()
    rng = random.Random(3)
    for _ in range(20):
        c = random_cochain(rng, P, SIGN, 1, 6)
        target = coboundary(c)
        sol = solve_coboundary(target)
        assert coboundary(sol) == target
    # the generator of H^2 is not a coboundary
    h2 = t_cohomology(W, SIGN, 2, 12).transversal()[1]
    assert solve_coboundary(h2) is None


def test_transports():
    W = P.whole()
    g = Cochain(W, SIGN, 1, 4, (2, 4, 6))
    assert restrict(g, P.subgroup((0, A))).vec == (2,)
    assert multiply(g).vec == (4, 8, 12) and multiply(g).precision == 5
    assert include(g, 6).vec == (8, 16, 24)
    assert divide(g).vec == (1, 2, 3) and divide(g).precision == 3
    with pytest.raises(DivNotDivisible):
        divide(g, 2)
    assert reduce(g, 2).vec == (2, 0, 2)


def test_connecting_map_of_coboundary_lift():
    # gamma = pro_r of a T-cocycle has trivial connecting image
    W = P.whole()
    c = Cochain(W, SIGN, 1, 10, (1, 0, 1))
    gamma = coboundary(c)
    assert connecting(reduce(gamma, 4), 4, 10).is_zero()

"""The three coclass-1 families of 2-groups over the pro-2 group

    S = <a, b, t | a^2 = 1, b^2 = t, b^a = b t^-1, t^a = t^-1, t^b = t>

with P = S/T of order 4.  Elements of P are 0 = 1, 1 = a, 2 = b, 3 = ab and
the preimage chosen for w = a^i b^j is the word a^i b^j, so (w, k) is the
element a^i b^j t^k.  The module order is 2^(x+2), i.e. e = 2.

The reference tables list morphisms by conjugating words; exponents of t
may depend on x.
"""

from __future__ import annotations

from .family import ProPData
from .groups import FiniteGroup, PModuleAction

ONE, A, B, AB = 0, 1, 2, 3
WORDS = ["1", "a", "b", "ab"]


def klein_group() -> FiniteGroup:
    return FiniteGroup([[i ^ j for j in range(4)] for i in range(4)], labels=WORDS)


def _base(name, beta=None):
    P = klein_group()
    action = PModuleAction(P, [[[1]], [[-1]], [[1]], [[-1]]])
    rho = {(B, A): (-1,), (B, B): (1,), (AB, A): (-1,), (AB, B): (1,)}
    eta = None
    if beta:
        eta = _half_coboundary(P, action, beta)
    return ProPData(name, P, action, rho, eta, e=2, words=list(WORDS), module_symbols=["t"])


def _half_coboundary(P, action, beta):
    """eta = Delta_2(beta) / 2 for an integer 2-cochain beta, computed exactly."""
    eta = {}
    for g1 in range(1, 4):
        for g2 in range(1, 4):
            for g3 in range(1, 4):
                def b(u, v):
                    return beta.get((u, v), (0,))[0]
                val = (b(g2, g3) - b(P.mul(g1, g2), g3) + b(g1, P.mul(g2, g3))
                       - action.matrices[g3][0][0] * b(g1, g2))
                if val % 2:
                    raise ValueError("beta does not give an integral eta")
                if val:
                    eta[(g1, g2, g3)] = (val // 2,)
    return eta


SEMIDIHEDRAL_TWIST = {(B, A): (1,), (AB, A): (1,), (B, AB): (1,), (AB, AB): (1,)}
QUATERNION_TWIST = {(A, A): (1,), (A, AB): (1,), (AB, AB): (1,), (AB, A): (1,)}


def dihedral2() -> ProPData:
    return _base("dihedral2")


def semidihedral2() -> ProPData:
    return _base("semidihedral2", SEMIDIHEDRAL_TWIST)


def quaternion2() -> ProPData:
    return _base("quaternion2", QUATERNION_TWIST)


FAMILIES = {"dihedral2": dihedral2, "semidihedral2": semidihedral2, "quaternion2": quaternion2}


def family_data(name: str) -> ProPData:
    if name not in FAMILIES:
        raise KeyError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}")
    return FAMILIES[name]()


# Reference tables.  A conjugator is (w, exponent) standing for s(w) t^exponent;
# exponents are functions of x on the G_x side.  Objects are given by
# generating elements; "O" is the central subgroup <t^(2^(x+1))>.

S_OBJECTS = {
    "<1>": [],
    "<a>": [(A, 0)],
    "<at>": [(A, 1)],
    "<ab>": [(AB, 0)],
    "<abt>": [(AB, 1)],
}

S_TABLE = [
    ("<a>", "<a>", [(ONE, 0)]),
    ("<a>", "<at>", [(B, 0)]),
    ("<at>", "<at>", [(ONE, 0)]),
    ("<at>", "<a>", [(B, -1)]),
    ("<ab>", "<ab>", [(ONE, 0)]),
    ("<ab>", "<abt>", [(B, 0)]),
    ("<abt>", "<abt>", [(ONE, 0)]),
    ("<abt>", "<ab>", [(B, -1)]),
]


def _one(x):
    return 0


def _tx(x):
    return 2**x


def _minus(x):
    return -1


def _tx_minus(x):
    return 2**x - 1


def gx_objects(family: str) -> dict:
    """Reference objects of the semi-skeleton, as generator lists."""
    base = {"<1>": [], "<a>": [(A, _one)], "<at>": [(A, lambda x: 1)]}
    if family == "dihedral2":
        base.update({"<ab>": [(AB, _one)], "<abt>": [(AB, lambda x: 1)]})
    if family == "quaternion2":
        base = {"<1>": []}
    out = dict(base)
    for k, gens in base.items():
        name = "O" if k == "<1>" else f"{k} x O"
        out[name] = gens + [(ONE, lambda x: 2 ** (x + 1))]
    return out


def _block(src, dst, single, double):
    """Rows for A -> B, A -> B x O, A x O -> B x O."""
    return [(src, dst, single),
            (src, f"{dst} x O", double),
            (f"{src} x O", f"{dst} x O", double)]


def gx_table(family: str) -> list:
    """Reference rows (source, target, [conjugators]) of the G_x table."""
    if family == "quaternion2":
        return []
    rows = []
    pairs = [("<a>", "<a>", [(ONE, _one)], [(ONE, _one), (ONE, _tx)]),
             ("<a>", "<at>",
              [(B, _tx)] if family == "semidihedral2" else [(B, _one)],
              [(B, _one), (B, _tx)]),
             ("<at>", "<at>", [(ONE, _one)], [(ONE, _one), (ONE, _tx)]),
             ("<at>", "<a>",
              [(B, _tx_minus)] if family == "semidihedral2" else [(B, _minus)],
              [(B, _minus), (B, _tx_minus)])]
    if family == "dihedral2":
        pairs += [("<ab>", "<ab>", [(ONE, _one)], [(ONE, _one), (ONE, _tx)]),
                  ("<ab>", "<abt>", [(B, _one)], [(B, _one), (B, _tx)]),
                  ("<abt>", "<abt>", [(ONE, _one)], [(ONE, _one), (ONE, _tx)]),
                  ("<abt>", "<ab>", [(B, _minus)], [(B, _minus), (B, _tx_minus)])]
    for src, dst, single, double in pairs:
        rows.extend(_block(src, dst, single, double))
    return rows


# The commonly quoted word bt^-1 for <at> -> <a> in the semidihedral table is wrong.  Since
# (at)^(b t^k) = a t^(2 - 2^(x+1) + 2k), only k = 2^x - 1 (mod 2^(x+1)) lands in
# <a>; bt^-1 lands in <a> x O.  The table above uses the corrected word.
ERRATA = {"semidihedral2": [("<at>", "<a>", (B, _minus), (B, _tx_minus))]}


EXPECTED_SPLIT = {"dihedral2": [(), (A,), (AB,)], "semidihedral2": [(), (A,), (AB,)],
                  "quaternion2": [(), (A,), (AB,)]}
EXPECTED_ETA_SPLIT = {"dihedral2": [(), (A,), (AB,)], "semidihedral2": [(), (A,)],
                      "quaternion2": [()]}

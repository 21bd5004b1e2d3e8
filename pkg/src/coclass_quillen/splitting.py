"""Splitting Z^n(L, T/p^r T) = I^n + K^n and the choice of eta_x.

Everything is read off one Smith form ``Lt . D_n . R = diag(p^e_i)`` of the
coboundary matrix over L, computed once at a fixed precision.  In the
coordinates y = R^-1 x a level-r cocycle has y_i in p^(r - e_i) for the
pivot columns i and free y_j otherwise, so

* I^n = pro_r(Z^n(L, T)) is spanned by the non-pivot columns R_j,
* K^n is spanned by p^(r - e_i) R_i over the pivots with e_i > 0.

Raising r by one multiplies each K generator by p, so mul(K at r) = K at r+1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cochains import (Cochain, coboundary, coboundary_matrix, cocycle_group, nonidentity,
                       t_cohomology)
from .errors import NotACocycle, PrecisionTooLow
from .groups import PModuleAction, Subgroup
from .padic import ModSubgroup, PModMatrix, _snf_lists, kernel_basis


@dataclass(frozen=True)
class _Form:
    left: tuple
    left_inv: tuple
    right: tuple
    right_inv: tuple
    exponents: tuple


_forms: dict = {}


def _coboundary_form(L: Subgroup, action: PModuleAction, n: int, precision: int) -> _Form:
    key = (L.elements, action.key, n, precision)
    if key not in _forms:
        D = coboundary_matrix(L, action, n)
        if not D or not D[0]:
            dim = len(nonidentity(L)) ** n * action.d
            I = tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim))
            rows = len(D)
            Ir = tuple(tuple(int(i == j) for j in range(rows)) for i in range(rows))
            _forms[key] = _Form(Ir, Ir, I, I, ())
        else:
            Lt, R, Linv, Rinv, exps = _snf_lists([row[:] for row in D], action.prime, precision)
            _forms[key] = _Form(tuple(map(tuple, Lt)), tuple(map(tuple, Linv)),
                                tuple(map(tuple, R)), tuple(map(tuple, Rinv)), tuple(exps))
    return _forms[key]


def minimal_level(L: Subgroup) -> int:
    """Smallest level at which the splitting is used: 2 log_p |L|."""
    return 2 * L.group.m


@dataclass
class SplitDecomposition:
    subgroup: Subgroup
    action: PModuleAction = field(repr=False)
    degree: int
    level: int
    precision: int              # precision of the Smith form and of T-valued parts
    form: _Form = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.form.exponents)

    @property
    def dim(self) -> int:
        return len(self.form.right)

    def _column(self, j):
        return [row[j] for row in self.form.right]

    def i_generators(self) -> list:
        q = self.action.prime**self.level
        return [[a % q for a in self._column(j)] for j in range(self.rank, self.dim)]

    def k_generators(self) -> list:
        p, r = self.action.prime, self.level
        q = p**r
        out = []
        for i, e in enumerate(self.form.exponents):
            if e > 0:
                out.append([p ** (r - e) * a % q for a in self._column(i)])
        return out

    @property
    def exponents(self) -> tuple:
        return tuple(e for e in self.form.exponents if e > 0)

    def I(self) -> ModSubgroup:
        return ModSubgroup(self.action.prime, self.level, self.dim, self.i_generators())

    def K(self) -> ModSubgroup:
        return ModSubgroup(self.action.prime, self.level, self.dim, self.k_generators())

    def Z(self) -> ModSubgroup:
        return cocycle_group(self.subgroup, self.action, self.degree, self.level).cocycles

    def B(self) -> ModSubgroup:
        return cocycle_group(self.subgroup, self.action, self.degree, self.level).coboundaries

    def J(self, shift: int) -> ModSubgroup:
        """Image of Z^n(L, p^(r-shift)T / p^r T) in Z^n(L, T/p^r T)."""
        p, r = self.action.prime, self.level
        D = coboundary_matrix(self.subgroup, self.action, self.degree)
        if shift <= 0:
            return ModSubgroup(p, r, self.dim)
        if D and D[0]:
            gens, _ = kernel_basis(PModMatrix(p, shift, D, cols=self.dim))
            gens = [g.entries for g in gens]
        else:
            gens = [[int(i == j) for j in range(self.dim)] for i in range(self.dim)]
        return ModSubgroup(p, r, self.dim, [[p ** (r - shift) * a for a in g] for g in gens])

    def coordinates(self, gamma: Cochain) -> list:
        q = self.action.prime**self.level
        return [sum(a * b for a, b in zip(row, gamma.vec)) % q for row in self.form.right_inv]

    def decompose(self, gamma: Cochain):
        """(gamma_bar over T at ``precision``, gamma_under in K) with
        pro_r(gamma_bar) + gamma_under = gamma."""
        if gamma.precision != self.level:
            raise ValueError("cocycle is not at the decomposition level")
        p, r, N = self.action.prime, self.level, self.precision
        y = self.coordinates(gamma)
        s = self.rank
        for i, e in enumerate(self.form.exponents):
            if (y[i] * p**e) % p**r:
                raise NotACocycle("argument is not a cocycle at this level")
        R = self.form.right
        qN = p**N
        bar = [sum(R[a][j] * y[j] for j in range(s, self.dim)) % qN for a in range(self.dim)]
        under = [sum(R[a][i] * y[i] for i in range(s)) % p**r for a in range(self.dim)]
        L, act, n = self.subgroup, self.action, self.degree
        return (Cochain(L, act, n, N, tuple(bar)), Cochain(L, act, n, r, tuple(under)))


def split_cocycles(L: Subgroup, action: PModuleAction, n: int, r: int,
                   precision: int) -> SplitDecomposition:
    """The decomposition at level r; ``precision`` fixes the Smith form and
    must be the same for all levels that are compared."""
    if r < minimal_level(L):
        raise PrecisionTooLow(f"level {r} is below 2 log|L| = {minimal_level(L)}")
    if precision < r:
        raise PrecisionTooLow("the Smith form precision must be at least the level")
    form = _coboundary_form(L, action, n, precision)
    return SplitDecomposition(L, action, n, r, precision, form)


def decompose_cocycle(gamma: Cochain, precision: int):
    dec = split_cocycles(gamma.subgroup, gamma.action, gamma.degree, gamma.precision, precision)
    return dec.decompose(gamma)


def epi_shift(gamma: Cochain, precision: int) -> Cochain:
    """pro_r(bar) + under -> pro_(r-1)(bar) + div(under)."""
    r = gamma.precision
    if r - 1 < minimal_level(gamma.subgroup):
        raise PrecisionTooLow(f"level {r - 1} is below 2 log|L|")
    bar, under = decompose_cocycle(gamma, precision)
    p = gamma.prime
    down = [a // p for a in under.vec]
    return Cochain(gamma.subgroup, gamma.action, gamma.degree, r - 1,
                   tuple(a + b for a, b in zip(bar.vec, down)))


def eta_representative(eta: Cochain, level: int, precision: int) -> Cochain:
    """The element of K^2(P, T/p^level T) whose connecting image, divided by
    p^level, is eta (a T-valued 3-cocycle) up to a coboundary.

    With Lt D_2 R = diag(p^e_i), the image of p^(r-e_i) R_i is column i of
    Lt^-1, and these columns span Z^3(P, T); so eta_x = sum c_i p^(r-e_i) R_i
    with c = Lt eta.
    """
    if eta.degree != 3:
        raise ValueError("eta must be a 3-cochain")
    if not coboundary(eta).is_zero():
        raise NotACocycle("eta is not a 3-cocycle")
    L, act = eta.subgroup, eta.action
    p = act.prime
    form = _coboundary_form(L, act, 2, precision)
    exps = form.exponents
    if exps and level < max(exps):
        raise PrecisionTooLow(f"level {level} is below the exponent {max(exps)}")
    qN = p**precision
    c = [sum(a * b for a, b in zip(row, eta.vec)) % qN for row in form.left]
    s = len(exps)
    # the top digits of c are unreliable, so check only well below the precision
    check = p ** max(1, precision - 2 * L.group.m)
    if any(ci % check for ci in c[s:]):
        raise NotACocycle("eta is not in the span of Z^3")
    q = p**level
    dim = len(form.right)
    vec = [0] * dim
    for i, e in enumerate(exps):
        if e == 0 or c[i] % p**e == 0:
            continue
        coeff = (c[i] % p**e) * p ** (level - e)
        for a in range(dim):
            vec[a] += coeff * form.right[a][i]
    return Cochain(L, act, 2, level, tuple(v % q for v in vec))


@dataclass
class SplittingReport:
    subgroup: Subgroup
    degree: int
    level: int
    z_order: int
    i_order: int
    k_order: int
    intersection_order: int
    h_finite: int                # |H^n(L, T/p^r T)|
    h_n: int                     # |H^n(L, T)|
    h_next: int                  # |H^(n+1)(L, T)|
    mul_compatible: bool         # mul(K at r) = K at r+1

    @property
    def ok(self) -> bool:
        return (self.z_order == self.i_order * self.k_order and self.intersection_order == 1
                and self.h_finite == self.h_n * self.h_next and self.mul_compatible)


def verify_splitting(L: Subgroup, action: PModuleAction, n: int, r: int,
                     precision: int) -> SplittingReport:
    """Check Z^n = I^n + K^n (direct), the order formula for H^n at level r
    and compatibility of K with mul : T/p^r -> T/p^(r+1)."""
    p = action.prime
    dec = split_cocycles(L, action, n, r, precision)
    up = split_cocycles(L, action, n, r + 1, precision)
    Z, I, K = dec.Z(), dec.I(), dec.K()
    raised = ModSubgroup(p, r + 1, dec.dim, [[p * a for a in g] for g in dec.k_generators()])
    return SplittingReport(
        L, n, r, Z.order(), I.order(), K.order(), I.intersection(K).order(),
        cocycle_group(L, action, n, r).h_order,
        t_cohomology(L, action, n, precision).order,
        t_cohomology(L, action, n + 1, precision).order,
        raised == up.K())

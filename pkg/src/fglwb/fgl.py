"""The universal formal group law over Q[CP1, CP2, ...] and its companions.

The base point is the logarithm g(x) = sum_n CP_n x**(n+1)/(n+1) (CP_0 = 1).
Its compositional inverse E gives the group law F(x, y) = E(g(x) + g(y)),
assembled coefficient-by-coefficient from univariate powers of g.  From F we
derive the invariant differential omega, the formal inverse, and the
antisymmetric pairing series A(x, y) = F(x, y) * (x*omega(y) - y*omega(x))
whose coefficients generate the quotient ideal studied downstream.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ConsistencyError, DomainError
from .graded import CP, POLY_RING, GradedPoly, poly_to_text
from .rationals import RAT_ONE, binomial, rat
from .series import Series1, Series2

__all__ = [
    "FGLTable",
    "PairingTable",
    "mishchenko_log",
    "group_law_from_log",
    "universal_fgl",
    "invariant_differential",
    "pairing_series",
    "formal_inverse",
    "fgl_axiom_check",
    "apply_strong_iso",
    "AxiomReport",
]


def mishchenko_log(n: int) -> Series1:
    """Logarithm series x + CP1*x**2/2 + CP2*x**3/3 + ... through x**(n+1)."""
    if n < 1:
        raise DomainError("mishchenko_log: weight bound must be >= 1")
    coeffs = [GradedPoly.zero(), GradedPoly.one()]
    for k in range(1, n + 1):
        coeffs.append(GradedPoly.generator(CP(k)).scale(rat(1, k + 1)))
    return Series1(POLY_RING, coeffs)


@dataclass
class FGLTable:
    """Universal formal group law truncated at total degree n + 1.

    `alpha` maps (i, j) with i, j >= 1 and i + j <= n + 1 to the coefficient
    of x**i y**j; `F` additionally carries the linear terms x + y.
    """

    n: int
    alpha: dict
    F: Series2
    log: Series1
    exp: Series1
    omega: Series1

    def alpha_at(self, i: int, j: int) -> GradedPoly:
        if i < 1 or j < 1 or i + j > self.n + 1:
            raise DomainError(f"alpha({i},{j}) outside the computed range")
        return self.alpha.get((i, j), GradedPoly.zero())


def group_law_from_log(log: Series1, exp: Series1, bound: int) -> Series2:
    """Assemble F(x, y) = exp(log(x) + log(y)) through total degree `bound`.

    Expanding (log(x) + log(y))**m binomially reduces the two-variable
    composition to tensor products of univariate powers of the logarithm.
    """
    gpow = _powers(log, bound)
    F = Series2(log.ring, bound)
    for a in range(0, bound + 1):
        for b in range(0, bound - a + 1):
            m = a + b
            if m < 1:
                continue
            mult = exp.coeff(m) * binomial(m, a)
            if not mult:
                continue
            ga, gb = gpow[a], gpow[b]
            for k in range(a, bound - b + 1):
                ca = ga.coeff(k)
                if not ca:
                    continue
                head = mult * ca
                for l in range(b, bound - k + 1):
                    cb = gb.coeff(l)
                    if cb:
                        F.set_coeff(k, l, F.coeff(k, l) + head * cb)
    return F


def universal_fgl(n: int) -> FGLTable:
    if n < 1:
        raise DomainError("universal_fgl: weight bound must be >= 1")
    g = mishchenko_log(n)
    exp = g.revert()
    F = group_law_from_log(g, exp, n + 1)

    alpha = {}
    for (i, j), c in F.items():
        if i >= 1 and j >= 1:
            alpha[(i, j)] = c
        elif (i, j) in ((1, 0), (0, 1)):
            if c != GradedPoly.one():
                raise ConsistencyError("linear coefficient of F is not 1")
        elif c:
            raise ConsistencyError(f"F has a pure-power term at {(i, j)}")

    table = FGLTable(n=n, alpha=alpha, F=F, log=g, exp=exp, omega=None)
    table.omega = invariant_differential(table)
    return table


def invariant_differential(table: FGLTable) -> Series1:
    """omega(x) = dF/dy at y = 0, computed two ways and cross-checked.

    Route one reads the alpha(i, 1) column of the table; route two inverts
    the derivative of the logarithm.  A mismatch means the kernel is broken.
    """
    n = table.n
    from_log = table.log.derive().reciprocal().truncated(n)
    coeffs = [GradedPoly.one()]
    for i in range(1, n + 1):
        coeffs.append(table.alpha.get((i, 1), GradedPoly.zero()))
    from_table = Series1(POLY_RING, coeffs)
    if from_log != from_table:
        raise ConsistencyError("invariant differential: 1/log' != dF/dy(x, 0)")
    return from_log


@dataclass
class PairingTable:
    """Antisymmetric pairing coefficients A(i, j) for i + j <= n + 2."""

    n: int
    A: dict

    def entry(self, i: int, j: int) -> GradedPoly:
        if i < 0 or j < 0 or i + j > self.n + 2:
            raise DomainError(f"A({i},{j}) outside the computed range")
        return self.A.get((i, j), GradedPoly.zero())

    def ideal_pairs(self, min_index: int = 3):
        """All (i, j) with min_index <= i, j and i + j <= n + 2."""
        return [
            (i, j)
            for i in range(min_index, self.n + 2 - min_index + 1)
            for j in range(min_index, self.n + 2 - i + 1)
        ]


def pairing_series(table: FGLTable) -> PairingTable:
    n = table.n
    bound = n + 2
    omega = table.omega
    skew = Series2(POLY_RING, bound)
    for k in range(0, min(omega.order, bound - 1) + 1):
        c = omega.coeff(k)
        if c:
            skew.set_coeff(1, k, skew.coeff(1, k) + c)
            skew.set_coeff(k, 1, skew.coeff(k, 1) - c)
    # F has no terms of total degree < 1 and skew none of total degree < 2,
    # so the product is exact through total degree n + 2 even though F is
    # only stored through n + 1.
    A = table.F.mul(skew, bound=bound)
    entries = {k: v for k, v in A.items() if v}
    return PairingTable(n=n, A=entries)


def formal_inverse(table: FGLTable) -> Series1:
    """Series ubar with F(u, ubar(u)) = 0; equals E(-g(u))."""
    return table.exp.compose(table.log.scale(-1))


@dataclass
class AxiomReport:
    unit_ok: bool
    commutative_ok: bool
    associative_ok: bool
    failures: list

    @property
    def passed(self) -> bool:
        return self.unit_ok and self.commutative_ok and self.associative_ok


def fgl_axiom_check(table: FGLTable) -> AxiomReport:
    """Expand the defining identities and report residuals.

    Unit: F(x, 0) = x.  Commutativity: alpha(i, j) = alpha(j, i).
    Associativity: F(F(x, y), z) = F(x, F(y, z)) through total degree n + 1,
    expanded by genuine series substitution on both sides.
    """
    failures = []

    unit_ok = True
    for (i, j), c in sorted(table.F.items()):
        if j == 0 and i != 1 and c:
            unit_ok = False
            failures.append(f"unit: F(x,0) has a term at x^{i}: {poly_to_text(c)}")
    if table.F.coeff(1, 0) != GradedPoly.one():
        unit_ok = False
        failures.append("unit: coefficient of x in F(x,0) is not 1")

    commutative_ok = True
    for (i, j) in sorted(table.alpha):
        if table.alpha_at(i, j) != table.alpha_at(j, i):
            commutative_ok = False
            failures.append(f"commutativity: alpha({i},{j}) != alpha({j},{i})")
            break

    left = _compose_outer_left(table)
    right = _compose_outer_right(table)
    associative_ok = True
    for key in sorted(set(left) | set(right)):
        l = left.get(key, GradedPoly.zero())
        r = right.get(key, GradedPoly.zero())
        if l != r:
            associative_ok = False
            i, j, k = key
            failures.append(
                f"associativity: coefficient of x^{i} y^{j} z^{k} differs: "
                f"{poly_to_text(l - r)}"
            )
            break

    return AxiomReport(unit_ok, commutative_ok, associative_ok, failures)


def _powers(s: Series1, order: int):
    one = Series1.constant(s.ring, s.ring.one, order)
    out = [one]
    cur = one
    for _ in range(order):
        cur = cur.mul(s.truncated(order).padded(order), order)
        out.append(cur)
    return out


def _series2_powers(S: Series2, top: int):
    out = [None] * (top + 1)
    one = Series2(S.ring, S.bound)
    one.set_coeff(0, 0, S.ring.one)
    out[0] = one
    cur = one
    for e in range(1, top + 1):
        cur = cur.mul(S)
        out[e] = cur
    return out


def _compose_outer_left(table: FGLTable) -> dict:
    """Trivariate coefficients of F(F(x, y), z) through total degree n + 1."""
    bound = table.n + 1
    spow = _series2_powers(table.F, bound)
    out = {}
    for (i, j), c in table.F.items():
        for (k, l), p in spow[i].items():
            if k + l + j <= bound:
                key = (k, l, j)
                acc = out.get(key)
                v = c * p
                out[key] = v if acc is None else acc + v
    return {k: v for k, v in out.items() if v}


def _compose_outer_right(table: FGLTable) -> dict:
    """Trivariate coefficients of F(x, F(y, z)) through total degree n + 1."""
    bound = table.n + 1
    spow = _series2_powers(table.F, bound)
    out = {}
    for (i, j), c in table.F.items():
        for (k, l), p in spow[j].items():
            if i + k + l <= bound:
                key = (i, k, l)
                acc = out.get(key)
                v = c * p
                out[key] = v if acc is None else acc + v
    return {k: v for k, v in out.items() if v}


def apply_strong_iso(t: Series1, F: Series2) -> Series2:
    """Transport a group law along t: returns t(F(t^{-1}(x), t^{-1}(y))).

    t must be a strict isomorphism, i.e. t = x + O(x**2).
    """
    if t.coeff(0):
        raise DomainError("apply_strong_iso: t(0) != 0")
    if t.coeff(1) != t.ring.one:
        raise DomainError("apply_strong_iso: t'(0) != 1")
    tinv = t.revert()
    inner = F.substitute_each(tinv, tinv)
    return inner.apply_series(t.padded(inner.bound))

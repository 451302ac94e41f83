"""Truncated power series in one and two variables over an exact coefficient ring.

A Series1 stores coefficients c_0..c_K and is exact through x**K; a Series2
stores c_ij for i + j <= bound.  The coefficient ring is either POLY_RING
(GradedPoly coefficients) or a QuadRing; both provide `zero`, `one`,
`promote` and `invert_unit`.  All operations are exact and truncate
explicitly, never silently past the stated order.
"""
from __future__ import annotations

from .errors import DomainError
from .rationals import Rat, rat

__all__ = ["Series1", "Series2", "geometric_type"]


class Series1:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = list(coeffs)
        if not self.coeffs:
            self.coeffs = [ring.zero]

    # -- builders ---------------------------------------------------------

    @classmethod
    def zeros(cls, ring, order: int) -> "Series1":
        return cls(ring, [ring.zero] * (order + 1))

    @classmethod
    def identity(cls, ring, order: int) -> "Series1":
        s = cls.zeros(ring, order)
        if order >= 1:
            s.coeffs[1] = ring.one
        return s

    @classmethod
    def constant(cls, ring, value, order: int) -> "Series1":
        s = cls.zeros(ring, order)
        s.coeffs[0] = ring.promote(value)
        return s

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.ring.zero

    def truncated(self, order: int) -> "Series1":
        if order >= self.order:
            return self.padded(order)
        return Series1(self.ring, self.coeffs[: order + 1])

    def padded(self, order: int) -> "Series1":
        if order <= self.order:
            return self
        return Series1(self.ring, self.coeffs + [self.ring.zero] * (order - self.order))

    def __eq__(self, other):
        if not isinstance(other, Series1):
            return NotImplemented
        k = max(self.order, other.order)
        return all(self.coeff(i) == other.coeff(i) for i in range(k + 1))

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    # -- linear structure ---------------------------------------------------

    def __add__(self, other):
        k = min(self.order, other.order)
        return Series1(self.ring, [self.coeff(i) + other.coeff(i) for i in range(k + 1)])

    def __sub__(self, other):
        k = min(self.order, other.order)
        return Series1(self.ring, [self.coeff(i) - other.coeff(i) for i in range(k + 1)])

    def __neg__(self):
        return Series1(self.ring, [-c for c in self.coeffs])

    def scale(self, c) -> "Series1":
        return Series1(self.ring, [v * c if v else v for v in self.coeffs])

    def shift_constant(self, value) -> "Series1":
        out = list(self.coeffs)
        out[0] = out[0] + self.ring.promote(value)
        return Series1(self.ring, out)

    # -- multiplicative structure -------------------------------------------

    def mul(self, other: "Series1", order=None) -> "Series1":
        k = min(self.order, other.order) if order is None else order
        out = [self.ring.zero] * (k + 1)
        for i, a in enumerate(self.coeffs):
            if i > k or not a:
                continue
            for j in range(k - i + 1):
                b = other.coeff(j)
                if b:
                    out[i + j] = out[i + j] + a * b
        return Series1(self.ring, out)

    def __mul__(self, other):
        if isinstance(other, Series1):
            return self.mul(other)
        return self.scale(other)

    def square(self) -> "Series1":
        return self.mul(self)

    def pow(self, e: int, order=None) -> "Series1":
        k = self.order if order is None else order
        result = Series1.constant(self.ring, self.ring.one, k)
        for _ in range(e):
            result = result.mul(self, k)
        return result

    def compose(self, inner: "Series1") -> "Series1":
        """self(inner(x)); inner must have zero constant term."""
        if inner.coeff(0):
            raise DomainError("compose: inner series has a nonzero constant term")
        k = min(self.order, inner.order)
        acc = Series1.zeros(self.ring, k)
        for c in reversed(self.coeffs[: k + 1]):
            acc = acc.mul(inner, k).shift_constant(c)
        return acc

    def revert(self) -> "Series1":
        """Compositional inverse g with g(self(x)) = x; needs self = x + O(x**2)."""
        if self.coeff(0):
            raise DomainError("revert: nonzero constant term")
        if not self.coeff(1):
            raise DomainError("revert: zero linear coefficient")
        if self.coeff(1) != self.ring.one:
            raise DomainError("revert: linear coefficient must be 1")
        k = self.order
        inv = [self.ring.zero, self.ring.one]
        for m in range(2, k + 1):
            partial = Series1(self.ring, inv + [self.ring.zero] * (m - len(inv) + 1))
            err = partial.compose(self.truncated(m)).coeff(m)
            inv.append(-err)
        return Series1(self.ring, inv)

    def derive(self) -> "Series1":
        return Series1(
            self.ring,
            [c * rat(i) for i, c in enumerate(self.coeffs) if i >= 1] or [self.ring.zero],
        )

    def integrate(self) -> "Series1":
        out = [self.ring.zero]
        for i, c in enumerate(self.coeffs):
            out.append(c * rat(1, i + 1))
        return Series1(self.ring, out)

    def reciprocal(self) -> "Series1":
        inv0 = self.ring.invert_unit(self.coeff(0))
        if inv0 is None:
            raise DomainError("reciprocal: constant term is not an invertible scalar")
        k = self.order
        out = [inv0]
        for m in range(1, k + 1):
            acc = self.ring.zero
            for i in range(1, m + 1):
                a = self.coeff(i)
                if a:
                    acc = acc + a * out[m - i]
            out.append(-(inv0 * acc))
        return Series1(self.ring, out)

    def binomial_pow(self, e) -> "Series1":
        """self**e for rational e via the binomial series; needs constant term 1."""
        if self.coeff(0) != self.ring.one:
            raise DomainError("binomial_pow: constant term must be 1")
        e = Rat(e)
        k = self.order
        y = Series1(self.ring, [self.ring.zero] + self.coeffs[1:])
        acc = Series1.constant(self.ring, self.ring.one, k)
        ypow = Series1.constant(self.ring, self.ring.one, k)
        coef = rat(1)
        for m in range(1, k + 1):
            ypow = ypow.mul(y, k)
            coef = coef * (e - m + 1) / m
            if coef:
                acc = acc + ypow.scale(coef)
        return acc

    def __repr__(self):
        return f"Series1(order={self.order})"


def geometric_type(s: Series1):
    """Classify a series' coefficient grading.

    Returns 'log' when c_0 = 0 and every c_k (k >= 1) is homogeneous of
    weight k - 1, 'unit' when c_0 is a unit scalar and c_k is homogeneous
    of weight k, and None otherwise.  Works for both coefficient rings.
    """

    def hom(c, w):
        if hasattr(c, "is_homogeneous_of"):
            return c.is_homogeneous_of(w)
        return c.is_zero or (c.is_homogeneous() and c.weight() == w)

    if not s.coeff(0):
        if all(not s.coeff(k) or hom(s.coeff(k), k - 1) for k in range(1, s.order + 1)):
            return "log"
        return None
    if s.ring.invert_unit(s.coeff(0)) is not None:
        if all(not s.coeff(k) or hom(s.coeff(k), k) for k in range(1, s.order + 1)):
            return "unit"
    return None


class Series2:
    """Bivariate truncated series: coefficients c_ij for i + j <= bound."""

    __slots__ = ("ring", "bound", "terms")

    def __init__(self, ring, bound: int, terms=None):
        self.ring = ring
        self.bound = bound
        self.terms = terms if terms is not None else {}

    @classmethod
    def zeros(cls, ring, bound: int) -> "Series2":
        return cls(ring, bound)

    def coeff(self, i: int, j: int):
        return self.terms.get((i, j), self.ring.zero)

    def set_coeff(self, i, j, value):
        if value:
            self.terms[(i, j)] = value
        else:
            self.terms.pop((i, j), None)

    def items(self):
        return self.terms.items()

    def __eq__(self, other):
        if not isinstance(other, Series2):
            return NotImplemented
        b = min(self.bound, other.bound)
        keys = {k for k in self.terms if sum(k) <= b} | {k for k in other.terms if sum(k) <= b}
        return all(self.coeff(*k) == other.coeff(*k) for k in keys)

    def __add__(self, other):
        b = min(self.bound, other.bound)
        out = Series2(self.ring, b)
        for k in set(self.terms) | set(other.terms):
            if sum(k) <= b:
                out.set_coeff(*k, self.coeff(*k) + other.coeff(*k))
        return out

    def __sub__(self, other):
        b = min(self.bound, other.bound)
        out = Series2(self.ring, b)
        for k in set(self.terms) | set(other.terms):
            if sum(k) <= b:
                out.set_coeff(*k, self.coeff(*k) - other.coeff(*k))
        return out

    def __neg__(self):
        return Series2(self.ring, self.bound, {k: -v for k, v in self.terms.items()})

    def scale(self, c) -> "Series2":
        return Series2(self.ring, self.bound, {k: v * c for k, v in self.terms.items()})

    def mul(self, other: "Series2", bound=None) -> "Series2":
        """Truncated product.

        The default bound is min of the operand bounds; callers may pass a
        larger bound when support arguments guarantee exactness (e.g. the
        other factor has no terms of low total degree).
        """
        b = min(self.bound, other.bound) if bound is None else bound
        out = {}
        items = [(k, v, k[0] + k[1]) for k, v in other.terms.items()]
        for (i1, j1), c1 in self.terms.items():
            d1 = i1 + j1
            if d1 > b:
                continue
            for (i2, j2), c2, d2 in items:
                if d1 + d2 > b:
                    continue
                key = (i1 + i2, j1 + j2)
                c = c1 * c2
                acc = out.get(key)
                if acc is None:
                    out[key] = c
                else:
                    acc = acc + c
                    if acc:
                        out[key] = acc
                    else:
                        del out[key]
        return Series2(self.ring, b, out)

    def transpose(self) -> "Series2":
        return Series2(self.ring, self.bound, {(j, i): v for (i, j), v in self.terms.items()})

    def eval_y0(self, order=None) -> Series1:
        """Univariate section y = 0."""
        k = self.bound if order is None else order
        out = [self.ring.zero] * (k + 1)
        for (i, j), c in self.terms.items():
            if j == 0 and i <= k:
                out[i] = c
        return Series1(self.ring, out)

    def partial_y_at_y0(self, order=None) -> Series1:
        """d/dy at y = 0 as a univariate series in x."""
        k = (self.bound - 1) if order is None else order
        out = [self.ring.zero] * (k + 1)
        for (i, j), c in self.terms.items():
            if j == 1 and i <= k:
                out[i] = c
        return Series1(self.ring, out)

    def substitute_each(self, sx: Series1, sy: Series1) -> "Series2":
        """self(sx(u), sy(v)); both substituted series need zero constant term."""
        if sx.coeff(0) or sy.coeff(0):
            raise DomainError("substitute_each: inner series has nonzero constant term")
        b = min(self.bound, sx.order, sy.order)
        xs = _univariate_powers(sx, b)
        ys = _univariate_powers(sy, b)
        out = Series2(self.ring, b)
        acc = {}
        for (i, j), c in self.terms.items():
            if i + j > b:
                continue
            xi, yj = xs[i], ys[j]
            for k in range(i, b - j + 1):
                a = xi.coeff(k)
                if not a:
                    continue
                ca = c * a
                for l in range(j, b - k + 1):
                    bb = yj.coeff(l)
                    if bb:
                        key = (k, l)
                        prev = acc.get(key)
                        acc[key] = ca * bb if prev is None else prev + ca * bb
        for key, v in acc.items():
            out.set_coeff(*key, v)
        return out

    def apply_series(self, outer: Series1) -> "Series2":
        """outer(self); requires self to have zero constant term."""
        if self.coeff(0, 0):
            raise DomainError("apply_series: series has nonzero constant term")
        b = self.bound
        acc = Series2(self.ring, b)
        for c in reversed(outer.coeffs[: b + 1]):
            acc = acc.mul(self, b)
            if c:
                acc.set_coeff(0, 0, acc.coeff(0, 0) + c)
        return acc

    def eval_diagonal(self, s: Series1, order=None) -> Series1:
        """Univariate series self(x, s(x)); s must have zero constant term."""
        if s.coeff(0):
            raise DomainError("eval_diagonal: series has nonzero constant term")
        k = min(self.bound, s.order) if order is None else order
        spow = _univariate_powers(s, k)
        out = [self.ring.zero] * (k + 1)
        for (i, j), c in self.terms.items():
            if i + j > k:
                continue
            sj = spow[j]
            for m in range(j, k - i + 1):
                v = sj.coeff(m)
                if v:
                    out[i + m] = out[i + m] + c * v
        return Series1(self.ring, out)

    def max_total_degree(self) -> int:
        return max((i + j for (i, j) in self.terms), default=0)

    def __repr__(self):
        return f"Series2(bound={self.bound}, nterms={len(self.terms)})"


def _univariate_powers(s: Series1, order: int):
    """[1, s, s**2, ..., s**order] truncated at `order`."""
    one = Series1.constant(s.ring, s.ring.one, order)
    powers = [one]
    cur = one
    st = s.truncated(order).padded(order)
    for _ in range(order):
        cur = cur.mul(st, order)
        powers.append(cur)
    return powers

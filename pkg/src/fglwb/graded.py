"""Sparse graded polynomials over exact rationals, plus a rank-2 extension.

Generators come in two families: ``CP(n)`` of weight n (n >= 1) and ``Q(i)``
of weight i (i in 1..4).  A monomial is a tuple of (generator, exponent)
pairs sorted by generator, a polynomial a dict from monomials to nonzero
rationals.  Everything is immutable in spirit: operations return fresh
objects and never mutate inputs.

The quadratic extension adjoins tau with tau**2 = r1*tau + r0 for fixed
polynomial parameters (r1, r0); elements are stored as (even, odd) parts.
"""
from __future__ import annotations

from .errors import DomainError
from .rationals import RAT_ONE, RAT_ZERO, Rat, rat

CP_KIND = 0
Q_KIND = 1

_KIND_NAMES = {CP_KIND: "CP", Q_KIND: "Q"}


def CP(n: int) -> tuple[int, int]:
    """Projective-space generator of weight n."""
    if n < 1:
        raise DomainError(f"CP({n}): index must be >= 1")
    return (CP_KIND, n)


def Q(i: int) -> tuple[int, int]:
    """Formal parameter generator of weight i, i in 1..4."""
    if not 1 <= i <= 4:
        raise DomainError(f"Q({i}): index must be in 1..4")
    return (Q_KIND, i)


def gen_weight(gen) -> int:
    return gen[1]


def gen_name(gen) -> str:
    return f"{_KIND_NAMES[gen[0]]}{gen[1]}"


# A monomial is a tuple of ((kind, index), exponent) with exponent >= 1,
# strictly sorted by (kind, index).  The empty tuple is the unit monomial.
ONE_MONO = ()


def mono_weight(mono) -> int:
    return sum(g[1] * e for g, e in mono)


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        ga, ea = a[i]
        gb, eb = b[j]
        if ga == gb:
            out.append((ga, ea + eb))
            i += 1
            j += 1
        elif ga < gb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_name(mono) -> str:
    if not mono:
        return "1"
    parts = []
    for g, e in mono:
        parts.append(gen_name(g) if e == 1 else f"{gen_name(g)}^{e}")
    return "*".join(parts)


class GradedPoly:
    """Sparse polynomial with exact rational coefficients; zero terms never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # Trusted constructor: `terms` must already be normalized.
        self.terms = terms if terms is not None else {}

    # -- builders ---------------------------------------------------------

    @classmethod
    def zero(cls):
        return _ZERO

    @classmethod
    def one(cls):
        return _ONE

    @classmethod
    def constant(cls, c):
        c = Rat(c)
        return cls({ONE_MONO: c}) if c else _ZERO

    @classmethod
    def generator(cls, gen):
        return cls({((gen, 1),): RAT_ONE})

    @classmethod
    def from_terms(cls, pairs):
        """Normalizing builder from (monomial, coefficient) pairs."""
        terms = {}
        for mono, c in pairs:
            c = Rat(c)
            if not c:
                continue
            acc = terms.get(mono)
            c = c if acc is None else acc + c
            if c:
                terms[mono] = c
            else:
                del terms[mono]
        return cls(terms)

    # -- queries ----------------------------------------------------------

    def coeff(self, mono):
        return self.terms.get(mono, RAT_ZERO)

    def coeff_of_gen(self, gen):
        return self.terms.get(((gen, 1),), RAT_ZERO)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_homogeneous(self) -> bool:
        ws = {mono_weight(m) for m in self.terms}
        return len(ws) <= 1

    def weight(self):
        """Weight of a homogeneous polynomial; None for 0, error otherwise."""
        ws = {mono_weight(m) for m in self.terms}
        if not ws:
            return None
        if len(ws) > 1:
            raise DomainError("weight of a non-homogeneous polynomial")
        return ws.pop()

    def max_weight(self) -> int:
        return max((mono_weight(m) for m in self.terms), default=0)

    def generators(self):
        seen = set()
        for mono in self.terms:
            for g, _ in mono:
                seen.add(g)
        return seen

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GradedPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return GradedPoly({m: -c for m, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, GradedPoly):
            return NotImplemented
        a, b = self.terms, other.terms
        if not a:
            return other
        if not b:
            return self
        out = dict(a)
        for m, c in b.items():
            acc = out.get(m)
            if acc is None:
                out[m] = c
            else:
                acc = acc + c
                if acc:
                    out[m] = acc
                else:
                    del out[m]
        return GradedPoly(out)

    def __sub__(self, other):
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GradedPoly):
            return self.mul(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = Rat(c)
        if not c:
            return _ZERO
        if c == RAT_ONE:
            return self
        return GradedPoly({m: v * c for m, v in self.terms.items()})

    def mul(self, other, weight_cap=None):
        """Product, optionally dropping terms of weight above `weight_cap`."""
        a, b = self.terms, other.terms
        if not a or not b:
            return _ZERO
        if len(a) > len(b):
            a, b = b, a
        out = {}
        if weight_cap is None:
            for m1, c1 in a.items():
                for m2, c2 in b.items():
                    m = mono_mul(m1, m2)
                    c = c1 * c2
                    acc = out.get(m)
                    if acc is None:
                        out[m] = c
                    else:
                        acc = acc + c
                        if acc:
                            out[m] = acc
                        else:
                            del out[m]
        else:
            bw = [(m2, c2, mono_weight(m2)) for m2, c2 in b.items()]
            for m1, c1 in a.items():
                w1 = mono_weight(m1)
                for m2, c2, w2 in bw:
                    if w1 + w2 > weight_cap:
                        continue
                    m = mono_mul(m1, m2)
                    c = c1 * c2
                    acc = out.get(m)
                    if acc is None:
                        out[m] = c
                    else:
                        acc = acc + c
                        if acc:
                            out[m] = acc
                        else:
                            del out[m]
        return GradedPoly(out)

    def __pow__(self, e: int):
        if e < 0:
            raise DomainError("negative polynomial power")
        result = _ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- substitution ------------------------------------------------------

    def substitute(self, images, weight_cap=None, _power_cache=None):
        """Ring-map evaluation sending each generator to its image polynomial.

        Every generator occurring here must have an image, and each image
        must be homogeneous of the generator's weight.
        """
        cache = _power_cache if _power_cache is not None else {}
        for g in self.generators():
            if g not in images:
                raise DomainError(f"substitute: no image for {gen_name(g)}")
            if (g, "ok") not in cache:
                img = images[g]
                if not img.is_homogeneous() or (img and img.weight() != gen_weight(g)):
                    raise DomainError(
                        f"substitute: image of {gen_name(g)} is not homogeneous "
                        f"of weight {gen_weight(g)}"
                    )
                cache[(g, "ok")] = True
        out = _ZERO
        for mono, c in self.terms.items():
            part = GradedPoly.constant(c)
            for g, e in mono:
                pw = cache.get((g, e))
                if pw is None:
                    pw = images[g] ** e if weight_cap is None else _pow_capped(images[g], e, weight_cap)
                    cache[(g, e)] = pw
                part = part.mul(pw, weight_cap)
                if part.is_zero:
                    break
            out = out + part
        return out

    # -- rendering ---------------------------------------------------------

    def sorted_terms(self):
        """Terms sorted by (weight, monomial order); the canonical order."""
        return sorted(self.terms.items(), key=lambda kv: (mono_weight(kv[0]), kv[0]))

    def __repr__(self):
        return f"GradedPoly({poly_to_text(self)})"


def _pow_capped(p: GradedPoly, e: int, cap: int) -> GradedPoly:
    result = _ONE
    for _ in range(e):
        result = result.mul(p, cap)
    return result


_ZERO = GradedPoly({})
_ONE = GradedPoly({ONE_MONO: RAT_ONE})


def poly_to_text(p: GradedPoly) -> str:
    """Canonical text form; parses back through the expression grammar."""
    if p.is_zero:
        return "0"
    chunks = []
    for mono, c in p.sorted_terms():
        neg = c < 0
        mag = -c if neg else c
        if not mono:
            body = str(mag)
        elif mag == RAT_ONE:
            body = mono_name(mono)
        else:
            body = f"{mag}*{mono_name(mono)}"
        if not chunks:
            chunks.append(f"-{body}" if neg else body)
        else:
            chunks.append(f" - {body}" if neg else f" + {body}")
    return "".join(chunks)


class QuadRing:
    """Coefficient ring R[tau]/(tau**2 - r1*tau - r0) over graded polynomials.

    Elements are pairs even + tau*odd; tau has weight 1, so a homogeneous
    element of weight w has even part of weight w and odd part of weight w-1.
    """

    __slots__ = ("r1", "r0", "zero", "one", "tau")

    def __init__(self, r1: GradedPoly, r0: GradedPoly):
        self.r1 = r1
        self.r0 = r0
        self.zero = QuadElem(self, _ZERO, _ZERO)
        self.one = QuadElem(self, _ONE, _ZERO)
        self.tau = QuadElem(self, _ZERO, _ONE)

    def element(self, even: GradedPoly, odd: GradedPoly) -> "QuadElem":
        return QuadElem(self, even, odd)

    def promote(self, value) -> "QuadElem":
        if isinstance(value, QuadElem):
            self._check(value)
            return value
        if isinstance(value, GradedPoly):
            return QuadElem(self, value, _ZERO)
        return QuadElem(self, GradedPoly.constant(value), _ZERO)

    def invert_unit(self, value):
        value = self.promote(value)
        if value.odd.is_zero:
            inv = _invert_constant_poly(value.even)
            if inv is not None:
                return QuadElem(self, inv, _ZERO)
        return None

    def same_params(self, other: "QuadRing") -> bool:
        return self is other or (self.r1 == other.r1 and self.r0 == other.r0)

    def _check(self, elem: "QuadElem"):
        if not self.same_params(elem.ring):
            raise DomainError("QuadElem built over different (r1, r0) parameters")


class PolyRing:
    """Coefficient-ring adapter for series with plain GradedPoly coefficients."""

    __slots__ = ()
    zero = _ZERO
    one = _ONE

    def promote(self, value):
        if isinstance(value, GradedPoly):
            return value
        return GradedPoly.constant(value)

    def invert_unit(self, value):
        value = self.promote(value)
        return _invert_constant_poly(value)

    def same_params(self, other):
        return isinstance(other, PolyRing)


POLY_RING = PolyRing()


def _invert_constant_poly(p: GradedPoly):
    if p.is_zero:
        return None
    if len(p.terms) == 1 and ONE_MONO in p.terms:
        return GradedPoly.constant(rat(1) / p.terms[ONE_MONO])
    return None


class QuadElem:
    """even + tau*odd over a fixed QuadRing."""

    __slots__ = ("ring", "even", "odd")

    def __init__(self, ring: QuadRing, even: GradedPoly, odd: GradedPoly):
        self.ring = ring
        self.even = even
        self.odd = odd

    @property
    def is_zero(self) -> bool:
        return self.even.is_zero and self.odd.is_zero

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return (
                self.ring.same_params(other.ring)
                and self.even == other.even
                and self.odd == other.odd
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.even, self.odd))

    def __neg__(self):
        return QuadElem(self.ring, -self.even, -self.odd)

    def __add__(self, other):
        other = self.ring.promote(other)
        return QuadElem(self.ring, self.even + other.even, self.odd + other.odd)

    __radd__ = __add__

    def __sub__(self, other):
        other = self.ring.promote(other)
        return QuadElem(self.ring, self.even - other.even, self.odd - other.odd)

    def __mul__(self, other):
        if isinstance(other, QuadElem):
            self.ring._check(other)
            oo = self.odd * other.odd
            even = self.even * other.even + self.ring.r0 * oo
            odd = self.even * other.odd + self.odd * other.even + self.ring.r1 * oo
            return QuadElem(self.ring, even, odd)
        if isinstance(other, GradedPoly):
            return QuadElem(self.ring, self.even * other, self.odd * other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, c):
        return QuadElem(self.ring, self.even.scale(c), self.odd.scale(c))

    def is_homogeneous_of(self, w: int) -> bool:
        ok_even = self.even.is_zero or (self.even.is_homogeneous() and self.even.weight() == w)
        ok_odd = self.odd.is_zero or (self.odd.is_homogeneous() and self.odd.weight() == w - 1)
        return ok_even and ok_odd

    def __repr__(self):
        return f"QuadElem({poly_to_text(self.even)}, tau*({poly_to_text(self.odd)}))"

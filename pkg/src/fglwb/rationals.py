"""Exact scalar arithmetic: rationals, extended-gcd certificates, dyadic splits.

Rationals are gmpy2.mpq when available, else fractions.Fraction.  Both are
always reduced, keep a positive denominator, print as ``p/q`` and hash/compare
interchangeably, so everything downstream treats them as opaque exact numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    from fractions import Fraction as Rat

RAT_ZERO = Rat(0)
RAT_ONE = Rat(1)


def rat(num, den=1):
    """Build a reduced rational with positive denominator."""
    if den == 0:
        raise DomainError("zero denominator")
    return Rat(num, den)


def rat_is_integer(r) -> bool:
    return Rat(r).denominator == 1


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient; requires 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"binomial({n}, {k}) out of range")
    return math.comb(n, k)


def ext_gcd2(a: int, b: int) -> tuple[int, int, int]:
    """Two-term extended Euclid: returns (g, u, v) with u*a + v*b = g > 0.

    When a already divides b the canonical answer (|a|, sign(a), 0) is
    returned, so folding a vector keeps the certificate of an element that
    is already the running gcd untouched.
    """
    if a == 0 and b == 0:
        raise DomainError("gcd(0, 0) undefined")
    sa = -1 if a < 0 else 1
    sb = -1 if b < 0 else 1
    old_r, r = abs(a), abs(b)
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r == abs(a):
        return old_r, sa, 0
    return old_r, sa * old_s, sb * old_t


@dataclass(frozen=True)
class GcdCertificate:
    """gcd of a signed integer vector together with Bezout multipliers.

    Invariant: sum(lam[i] * inputs[i]) == g == gcd(|inputs|) > 0.
    """

    inputs: tuple[int, ...]
    g: int
    lam: tuple[int, ...]

    def verify(self) -> bool:
        if self.g <= 0 or len(self.inputs) != len(self.lam):
            return False
        if sum(l * m for l, m in zip(self.lam, self.inputs)) != self.g:
            return False
        return all(m % self.g == 0 for m in self.inputs)


def ext_gcd_vector(values) -> GcdCertificate:
    """Left-fold extended Euclid over a vector of nonzero integers.

    The fold order makes the multiplier vector deterministic: the running
    gcd's multipliers are rescaled at each step and entries not yet seen
    stay zero.
    """
    vals = tuple(int(v) for v in values)
    if not vals:
        raise DomainError("ext_gcd_vector: empty input")
    if any(v == 0 for v in vals):
        raise DomainError("ext_gcd_vector: zero entry")
    g = abs(vals[0])
    lam = [1 if vals[0] > 0 else -1]
    for v in vals[1:]:
        g, u, w = ext_gcd2(g, v)
        lam = [u * x for x in lam]
        lam.append(w)
    cert = GcdCertificate(vals, g, tuple(lam))
    assert cert.verify()
    return cert


def dyadic_split(r) -> tuple[int, int, "Rat"]:
    """Write r = sign * 2**a * odd with odd having odd numerator and denominator."""
    r = Rat(r)
    if r == 0:
        raise DomainError("dyadic_split(0) undefined")
    num, den = int(r.numerator), int(r.denominator)
    sign = -1 if num < 0 else 1
    num = abs(num)
    a = (num & -num).bit_length() - 1
    b = (den & -den).bit_length() - 1
    return sign, a - b, Rat(num >> a, den >> b)


def is_dyadic(r) -> bool:
    """True when r lies in Z[1/2], i.e. its denominator is a power of two."""
    den = int(Rat(r).denominator)
    return den & (den - 1) == 0

"""Binomial gcd functions, s-numbers, and gcd-certified generator combinations.

d(m) is the gcd of the binomials C(m+1, i); D(m) the gcd of consecutive
binomial differences; d2(m) the gcd of the middle binomials.  Linear
combinations of group-law coefficients (kind E), pairing coefficients
(kind T) and inner group-law coefficients (kind Z) realize those gcds as
s-numbers of explicit classes.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ConsistencyError, DomainError
from .graded import CP, GradedPoly
from .rationals import (
    GcdCertificate,
    Rat,
    binomial,
    dyadic_split,
    ext_gcd_vector,
    rat,
    rat_is_integer,
)

import math

__all__ = [
    "d",
    "d_closed_form",
    "D",
    "d2",
    "prime_power",
    "verify_gcd_laws",
    "s_number",
    "GeneratorCombo",
    "build_combo",
    "novikov_admissible",
    "NovikovVerdict",
]


def d(m: int) -> int:
    """gcd of C(m+1, 1), ..., C(m+1, m)."""
    if m < 1:
        raise DomainError("d(m): m must be >= 1")
    return math.gcd(*(binomial(m + 1, i) for i in range(1, m + 1)))


def prime_power(m: int):
    """(p, s) with m = p**s, or None.  Trial division; fine at desk scale."""
    if m < 2:
        return None
    p = 2
    while p * p <= m:
        if m % p == 0:
            s, rest = 0, m
            while rest % p == 0:
                rest //= p
                s += 1
            return (p, s) if rest == 1 else None
        p += 1
    return (m, 1)


def d_closed_form(m: int) -> int:
    """p when m + 1 is a power of the prime p, else 1."""
    if m < 1:
        raise DomainError("d_closed_form(m): m must be >= 1")
    pp = prime_power(m + 1)
    return pp[0] if pp else 1


def D(m: int) -> int:
    """gcd of C(m+1, i) - C(m+1, i-1) over 2 < i <= m - 1; zeros skipped."""
    if m < 5:
        raise DomainError("D(m): m must be >= 5")
    diffs = [binomial(m + 1, i) - binomial(m + 1, i - 1) for i in range(3, m)]
    nonzero = [abs(x) for x in diffs if x]
    if not nonzero:
        raise ConsistencyError(f"D({m}): all differences vanish")
    return math.gcd(*nonzero)


def d2(m: int) -> int:
    """gcd of C(m+1, 2), ..., C(m+1, m-2); at m = 3 the single middle binomial."""
    if m < 3:
        raise DomainError("d2(m): m must be >= 3")
    top = max(m - 2, 2)
    return math.gcd(*(binomial(m + 1, i) for i in range(2, top + 1)))


@dataclass
class GcdLawReport:
    top: int
    checked: int
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_gcd_laws(top: int) -> GcdLawReport:
    """Check the three combinatorial laws up to `top`.

    - d(m) equals its closed form (prime-power test) for 1 <= m <= top;
    - D(m)/d(m) = d(m-1), or 2 when m = 2**k - 2, for 5 <= m <= top;
    - d2(m) = d(m) d(m-1) for 3 <= m <= top.
    """
    if top < 5:
        raise DomainError("verify_gcd_laws: top must be >= 5")
    failures = []
    checked = 0
    for m in range(1, top + 1):
        checked += 1
        if d(m) != d_closed_form(m):
            failures.append(f"d({m}) = {d(m)} != closed form {d_closed_form(m)}")
    for m in range(5, top + 1):
        checked += 1
        ratio = Rat(D(m), d(m))
        expected = 2 if _is_two_power_minus_two(m) else d(m - 1)
        if ratio != expected:
            failures.append(f"D({m})/d({m}) = {ratio} != {expected}")
    for m in range(3, top + 1):
        checked += 1
        if d2(m) != d(m) * d(m - 1):
            failures.append(f"d2({m}) = {d2(m)} != d({m})*d({m-1}) = {d(m)*d(m-1)}")
    return GcdLawReport(top=top, checked=checked, failures=failures)


def _is_two_power_minus_two(m: int) -> bool:
    k = m + 2
    return k >= 8 and (k & (k - 1)) == 0


def s_number(p: GradedPoly, n: int):
    """(n+1) times the CP_n coefficient of a weight-n homogeneous class.

    This is the power-sum Chern number: it is linear and kills products of
    positive-weight classes, which is what makes the coefficient formula
    correct.
    """
    if n < 1:
        raise DomainError("s_number: weight must be >= 1")
    if not p.is_homogeneous():
        raise DomainError("s_number of a non-homogeneous polynomial")
    if p and p.weight() != n:
        raise DomainError(f"s_number: polynomial has weight {p.weight()}, expected {n}")
    return p.coeff_of_gen(CP(n)) * rat(n + 1)


@dataclass
class GeneratorCombo:
    """A gcd-certified linear combination of table coefficients.

    kind 'E': sum lam_i alpha(i, m+1-i), i = 1..m, |s_m| = d(m)
    kind 'T': sum lam_i A(i, m+2-i),     i = 3..m-1, |s_m| = D(m)
    kind 'Z': sum lam_i alpha(i, m+1-i), i = 2..m-1, |s_m| = d2(m)
    """

    m: int
    kind: str
    lam: tuple
    cls: GradedPoly
    s_value: object
    target: int
    certificate: GcdCertificate


def build_combo(m: int, kind: str, table, pairing=None) -> GeneratorCombo:
    if kind == "E":
        if m < 2:
            raise DomainError("build_combo E: m must be >= 2")
        if m > table.n:
            raise DomainError("build_combo E: m exceeds the table bound")
        idx = list(range(1, m + 1))
        classes = [table.alpha_at(i, m + 1 - i) for i in idx]
        inputs = [abs(_int_s(c, m)) for c in classes]
        target = d(m)
    elif kind == "Z":
        if m < 3:
            raise DomainError("build_combo Z: m must be >= 3")
        if m > table.n:
            raise DomainError("build_combo Z: m exceeds the table bound")
        idx = list(range(2, m))
        classes = [table.alpha_at(i, m + 1 - i) for i in idx]
        inputs = [abs(_int_s(c, m)) for c in classes]
        target = d2(m)
    elif kind == "T":
        if m < 5:
            raise DomainError("build_combo T: m must be >= 5")
        if pairing is None:
            raise DomainError("build_combo T: pairing table required")
        if m > pairing.n:
            raise DomainError("build_combo T: m exceeds the pairing bound")
        idx = list(range(3, m))
        classes = [pairing.entry(i, m + 2 - i) for i in idx]
        inputs = [_int_s(c, m) for c in classes]
        target = D(m)
    else:
        raise DomainError(f"build_combo: unknown kind {kind!r}")

    keep = [k for k, v in enumerate(inputs) if v != 0]
    if not keep:
        raise ConsistencyError(f"build_combo {kind}({m}): all s-numbers vanish")
    cert = ext_gcd_vector([inputs[k] for k in keep])
    lam = [0] * len(idx)
    for pos, k in enumerate(keep):
        lam[k] = cert.lam[pos]

    cls = GradedPoly.zero()
    for k, l in enumerate(lam):
        if l:
            cls = cls + classes[k].scale(l)
    s_val = s_number(cls, m)
    if abs(s_val) != target:
        raise ConsistencyError(
            f"build_combo {kind}({m}): |s| = {abs(s_val)} != target {target}"
        )
    return GeneratorCombo(
        m=m, kind=kind, lam=tuple(lam), cls=cls, s_value=s_val,
        target=target, certificate=cert,
    )


def _int_s(cls: GradedPoly, m: int) -> int:
    v = s_number(cls, m)
    if not rat_is_integer(v):
        raise ConsistencyError("s-number of a table coefficient is not an integer")
    return int(v)


@dataclass
class NovikovVerdict:
    admissible: bool
    sign: int
    exponent: int
    odd: object
    constraint: str


def novikov_admissible(n: int, s) -> NovikovVerdict:
    """Main-Chern-number test for polynomial generators away from 2.

    The odd part of s must be the odd prime p when n or n + 1 is a power
    of p, and 1 otherwise.
    """
    if n < 2:
        raise DomainError("novikov_admissible: n must be >= 2")
    s = Rat(s)
    if s == 0:
        raise DomainError("novikov_admissible: s must be nonzero")
    sign, a, odd = dyadic_split(s)
    required = rat(1)
    constraint = "odd part 1"
    for cand, label in ((n, "n"), (n + 1, "n+1")):
        pp = prime_power(cand)
        if pp and pp[0] != 2:
            required = rat(pp[0])
            constraint = f"odd part {pp[0]} ({label} = {pp[0]}^{pp[1]})"
            break
    return NovikovVerdict(
        admissible=(odd == required),
        sign=sign,
        exponent=a,
        odd=odd,
        constraint=constraint,
    )

"""Independent reference computations for the test suite.

Everything here works on plain lists of Fractions (index = exponent) and
never calls into cancelkit's arithmetic, so agreement is meaningful.
"""

from __future__ import annotations

import math
from fractions import Fraction


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def padd(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def pscale(a, c):
    return trim([c * x for x in a])


def pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def pcompose(f, g):
    """f(g) by summing c_k g^k with explicit powers (not Horner)."""
    out, power = [], [Fraction(1)]
    for c in f:
        out = padd(out, pscale(power, c))
        power = pmul(power, g)
    return out


def peval(f, x):
    return sum((c * x ** k for k, c in enumerate(f)), Fraction(0))


def cheb_recurrence(r: int):
    """T_r from T_0 = 2, T_1 = x, T_{n+1} = x T_n - T_{n-1}."""
    t0, t1 = [Fraction(2)], [Fraction(0), Fraction(1)]
    if r == 0:
        return t0
    for _ in range(r - 1):
        t0, t1 = t1, padd(pmul([0, 1], t1), pscale(t0, -1))
    return t1


def cheb_by_elimination(f):
    """(a0, {i: a_i}) by repeatedly cancelling the leading term with T_deg."""
    f = trim([Fraction(c) for c in f])
    a = {}
    while len(f) > 1:
        n = len(f) - 1
        c = f[-1]
        a[n] = c
        f = padd(f, pscale(cheb_recurrence(n), -c))
    return (f[0] if f else Fraction(0)), a


def laurent_pi_power_sub(f):
    """f(z + 1/z) as {exponent: coefficient} by binomial expansion."""
    out = {}
    for k, c in enumerate(f):
        for i in range(k + 1):
            e = k - 2 * i
            out[e] = out.get(e, 0) + c * math.comb(k, i)
    return {e: c for e, c in out.items() if c}


def rational_sqrt(q: Fraction):
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def rationals_of_height(h: int):
    """All p/q in lowest terms with |p| <= h, 1 <= q <= h."""
    out = set()
    for q in range(1, h + 1):
        for p in range(-h, h + 1):
            if math.gcd(p, q) == 1:
                out.add(Fraction(p, q))
    return sorted(out)


def conic_has_point_upto(coeffs, h: int) -> bool:
    """Exhaustive search: some x = p/q of height <= h admits a rational y.

    Works with integers: for x = p/q the discriminant in y, times q^2, must be
    a perfect square.
    """
    A, B, C, D, E, F = [int(c) for c in coeffs]   # X^2, XY, Y^2, X, Y, 1
    for q in range(1, h + 1):
        for p in range(-h, h + 1):
            if math.gcd(p, q) != 1:
                continue
            if C == 0:
                lin = B * p + E * q
                if lin != 0:
                    return True
                if A * p * p + D * p * q + F * q * q == 0:
                    return True
                continue
            N = (B * p + E * q) ** 2 - 4 * C * (A * p * p + D * p * q + F * q * q)
            if N >= 0 and math.isqrt(N) ** 2 == N:
                return True
    # also scan along y when the conic is vertical-degenerate in x
    if A != 0 or C == 0:
        for q in range(1, h + 1):
            for p in range(-h, h + 1):
                if math.gcd(p, q) != 1:
                    continue
                if A == 0:
                    lin = B * p + D * q
                    if lin != 0 or C * p * p + E * p * q + F * q * q == 0:
                        return True
                    continue
                N = (B * p + D * q) ** 2 - 4 * A * (C * p * p + E * p * q + F * q * q)
                if N >= 0 and math.isqrt(N) ** 2 == N:
                    return True
    return False

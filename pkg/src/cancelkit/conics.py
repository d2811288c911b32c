"""Plane conics: the case-3(b) conic, rational points over Q, parametrization.

Over Q the existence of a point is decided completely: homogenize, diagonalize
the ternary form, reduce to w^2 = A x^2 + B y^2 with squarefree A, B, test the
Hilbert symbol (A, B)_p at infinity, 2 and every odd prime dividing AB, and
when every symbol is +1 build a point by Legendre descent. Degenerate
conics are split into their line components.

Over other fields only a bounded search is available (POINT_FOUND or UNKNOWN).
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterator

from sympy import factorint
from sympy.ntheory.residue_ntheory import sqrt_mod

from .errors import CertificateFailure, ConicError
from .numberfield import QQ, FieldElement, NumberField, is_square


@dataclass(frozen=True)
class Conic:
    """cXX X^2 + cXY XY + cYY Y^2 + cX X + cY Y + c1 = 0 over ``field``."""

    cXX: FieldElement
    cXY: FieldElement
    cYY: FieldElement
    cX: FieldElement
    cY: FieldElement
    c1: FieldElement
    field: NumberField = QQ

    def __post_init__(self):
        for name in ("cXX", "cXY", "cYY", "cX", "cY", "c1"):
            object.__setattr__(self, name, self.field.coerce(getattr(self, name)))
        if not (self.cXX or self.cXY or self.cYY):
            raise ConicError("NOT_A_CONIC", "quadratic part vanishes")

    @classmethod
    def from_coefficients(cls, coeffs, field=QQ) -> Conic:
        return cls(*coeffs, field=field)

    def coefficients(self) -> tuple[FieldElement, ...]:
        return (self.cXX, self.cXY, self.cYY, self.cX, self.cY, self.c1)

    def __call__(self, x, y) -> FieldElement:
        x, y = self.field.coerce(x), self.field.coerce(y)
        return (self.cXX * x * x + self.cXY * x * y + self.cYY * y * y
                + self.cX * x + self.cY * y + self.c1)

    evaluate = __call__

    def matrix(self) -> list[list[FieldElement]]:
        """Symmetric Gram matrix of the homogenized form in (X, Y, Z)."""
        h = Fraction(1, 2)
        return [[self.cXX, self.cXY * h, self.cX * h],
                [self.cXY * h, self.cYY, self.cY * h],
                [self.cX * h, self.cY * h, self.c1]]

    def determinant(self) -> FieldElement:
        m = self.matrix()
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))

    def is_degenerate(self) -> bool:
        return not self.determinant()

    def __str__(self):
        parts = []
        for c, mono in zip(self.coefficients(), ("X^2", "X*Y", "Y^2", "X", "Y", "")):
            if not c:
                continue
            parts.append((c, mono))
        out = []
        for i, (c, mono) in enumerate(parts):
            if c.is_rational():
                q = c.to_fraction()
                neg, mag = q < 0, abs(q)
                body = mono if (mag == 1 and mono) else (f"{_fmt(mag)}*{mono}" if mono else _fmt(mag))
            else:
                neg, body = False, f"({c})*{mono}" if mono else f"({c})"
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def conic_from_case3(u2, v, c) -> Conic:
    """The conic Y^2 + (c-2)v(X+Y) - cXY + X^2 + (2-c)v^2 + (c^2-4)u^2.

    Here c = eps + 1/eps for a primitive root of unity eps, so
    (eps - 1/eps)^2 = c^2 - 4. It is the image under (l, l), l = u x + v, of
    the closure of {(z + 1/z, eps z + 1/(eps z))}.
    """
    K = c.field if isinstance(c, FieldElement) else (v.field if isinstance(v, FieldElement) else QQ)
    u2, v, c = K.coerce(u2), K.coerce(v), K.coerce(c)
    lin = (c - 2) * v
    return Conic(K.one(), -c, K.one(), lin, lin, (2 - c) * v * v + (c * c - 4) * u2, field=K)


class ConicStatus(str, enum.Enum):
    POINT_FOUND = "POINT_FOUND"
    NO_POINT = "NO_POINT"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class ConicVerdict:
    status: ConicStatus
    point: tuple | None = None
    certificate: dict = dc_field(default_factory=dict)


# -- local solvability ----------------------------------------------------------

def _valuation(n: int, p: int) -> tuple[int, int]:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def hilbert_symbol(a: int, b: int, p: int) -> int:
    """(a, b)_p for nonzero integers; ``p = 0`` denotes the real place."""
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if p == 0:
        return -1 if (a < 0 and b < 0) else 1
    alpha, u = _valuation(a, p)
    beta, v = _valuation(b, p)
    if p == 2:
        eps = lambda n: ((n - 1) // 2) % 2
        omega = lambda n: ((n * n - 1) // 8) % 2
        e = (eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)) % 2
        return -1 if e else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    leg = lambda n: 1 if pow(n % p, (p - 1) // 2, p) == 1 else -1
    return sign * (leg(u) ** beta) * (leg(v) ** alpha)


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = core * s^2 with core squarefree; returns (core, s)."""
    sign = -1 if n < 0 else 1
    core, s = 1, 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            core *= p
        s *= p ** (e // 2)
    return sign * core, s


def obstructing_places(A: int, B: int) -> list[str]:
    """Places where w^2 = A x^2 + B y^2 has no local solution ('inf' or a prime)."""
    bad = []
    if hilbert_symbol(A, B, 0) == -1:
        bad.append("inf")
    primes = {2} | set(factorint(abs(A))) | set(factorint(abs(B)))
    for p in sorted(primes):
        if hilbert_symbol(A, B, p) == -1:
            bad.append(str(p))
    return bad


def _ldescent(A: int, B: int) -> tuple[int, int, int]:
    """Nontrivial (w, x, y) with w^2 = A x^2 + B y^2; A, B squarefree, solvable.

    Descent on |B|: pick r with r^2 = A mod B, write r^2 - A = B * B0 * d^2,
    solve the smaller equation for (A, B0) and multiply by r + sqrt(A).
    """
    if abs(A) > abs(B):
        w, y, x = _ldescent(B, A)
        return w, x, y
    if A == 1:
        return 1, 1, 0
    if B == 1:
        return 1, 0, 1
    n = abs(B)
    r = sqrt_mod(A % n, n)
    if r is None:
        raise CertificateFailure(f"descent: {A} is not a square mod {B}")
    if r > n // 2:
        r -= n
    Q = (r * r - A) // B
    if Q == 0:
        return r, 1, 0
    B0, d = _squarefree_split(Q)
    W, X, Y = _ldescent(A, B0)
    w, x, y = r * W + A * X, W + r * X, B0 * d * Y
    g = math.gcd(math.gcd(w, x), y)
    return w // g, x // g, y // g


def _diagonalize(M: list[list[Fraction]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """(D, P) with P^T M P = diag(D) for a nonsingular symmetric 3x3 matrix."""
    n = 3
    M = [row[:] for row in M]
    P = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def col_op(i, j, c):  # column i += c * column j, and the matching row op
        for k in range(n):
            M[k][i] += c * M[k][j]
        for k in range(n):
            M[i][k] += c * M[j][k]
        for k in range(n):
            P[k][i] += c * P[k][j]

    def swap(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        M[i], M[j] = M[j], M[i]
        for row in P:
            row[i], row[j] = row[j], row[i]

    for i in range(n):
        if M[i][i] == 0:
            j = next((j for j in range(i + 1, n) if M[j][j] != 0), None)
            if j is not None:
                swap(i, j)
            else:
                j = next((j for j in range(i + 1, n) if M[i][j] != 0), None)
                if j is None:
                    continue
                col_op(i, j, Fraction(1))
        piv = M[i][i]
        if piv == 0:
            continue
        for j in range(i + 1, n):
            if M[i][j] != 0:
                col_op(j, i, -M[i][j] / piv)
    return [M[i][i] for i in range(n)], P


def _qform(M, p) -> Fraction:
    return sum(M[i][j] * p[i] * p[j] for i in range(3) for j in range(3))


def _bilinear(M, p, q) -> Fraction:
    return sum(M[i][j] * p[i] * q[j] for i in range(3) for j in range(3))


def _affine_from_projective(M, P) -> tuple[Fraction, Fraction] | None:
    """An affine point on a nondegenerate conic given any projective point P on it."""
    if P[2] != 0:
        return P[0] / P[2], P[1] / P[2]
    for a, b in itertools.product(range(-2, 3), repeat=2):
        R = (Fraction(a), Fraction(b), Fraction(1))
        qr = _qform(M, R)
        if qr == 0:
            if R[2] != 0:
                return R[0] / R[2], R[1] / R[2]
            continue
        t = -2 * _bilinear(M, P, R) / qr
        S = tuple(P[i] + t * R[i] for i in range(3))
        if S[2] != 0:
            return S[0] / S[2], S[1] / S[2]
    return None


def _nullspace(M: list[list[Fraction]]) -> list[list[Fraction]]:
    rows = [r[:] for r in M]
    n = 3
    pivots = []
    ri = 0
    for c in range(n):
        pr = next((r for r in range(ri, n) if rows[r][c] != 0), None)
        if pr is None:
            continue
        rows[ri], rows[pr] = rows[pr], rows[ri]
        pv = rows[ri][c]
        rows[ri] = [x / pv for x in rows[ri]]
        for r in range(n):
            if r != ri and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[ri])]
        pivots.append(c)
        ri += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def _is_rational_square(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _degenerate_point(M) -> ConicVerdict:
    kernel = _nullspace(M)
    if len(kernel) >= 2:
        # double line: every kernel vector lies on the conic
        for a, b in [(1, 0), (0, 1), (1, 1), (1, -1)]:
            P = [a * kernel[0][i] + b * kernel[1][i] for i in range(3)]
            if P[2] != 0:
                return ConicVerdict(ConicStatus.POINT_FOUND, (P[0] / P[2], P[1] / P[2]),
                                    {"method": "double line"})
        raise CertificateFailure("double line at infinity")
    P = kernel[0]
    # complete {P} to a basis with two unit vectors
    units = [[Fraction(int(i == j)) for i in range(3)] for j in range(3)]
    for e1, e2 in itertools.combinations(units, 2):
        det = (P[0] * (e1[1] * e2[2] - e1[2] * e2[1]) - P[1] * (e1[0] * e2[2] - e1[2] * e2[0])
               + P[2] * (e1[0] * e2[1] - e1[1] * e2[0]))
        if det != 0:
            break
    alpha, beta, gamma = _qform(M, e1), 2 * _bilinear(M, e1, e2), _qform(M, e2)
    roots = []
    if alpha == 0:
        roots.append((Fraction(1), Fraction(0)))
        if beta != 0:
            roots.append((-gamma, beta))
    else:
        s = _is_rational_square(beta * beta - 4 * alpha * gamma)
        if s is not None:
            roots += [(-beta + s, 2 * alpha), (-beta - s, 2 * alpha)]
            roots = [(r[0] / r[1], Fraction(1)) for r in roots]
    for s_, t_ in roots:
        R = [s_ * e1[i] + t_ * e2[i] for i in range(3)]
        for lam in (0, 1, -1, 2):
            S = [P[i] + lam * R[i] for i in range(3)] if lam else P
            if S[2] != 0:
                return ConicVerdict(ConicStatus.POINT_FOUND, (S[0] / S[2], S[1] / S[2]),
                                    {"method": "rational line pair"})
        if R[2] != 0:
            return ConicVerdict(ConicStatus.POINT_FOUND, (R[0] / R[2], R[1] / R[2]),
                                {"method": "rational line pair"})
    if P[2] != 0:
        return ConicVerdict(ConicStatus.POINT_FOUND, (P[0] / P[2], P[1] / P[2]),
                            {"method": "singular point of conjugate line pair"})
    return ConicVerdict(ConicStatus.NO_POINT, None,
                        {"obstruction": "degenerate", "places": [],
                         "reason": "conjugate lines meeting only at infinity"})


def conic_rational_point(C: Conic) -> ConicVerdict:
    """Decide whether C has a point over Q and return one (complete over Q)."""
    if not C.field.is_rational:
        raise ConicError("NOT_RATIONAL", "conic_rational_point needs a conic over Q")
    M = [[e.to_fraction() for e in row] for row in C.matrix()]
    if C.is_degenerate():
        verdict = _degenerate_point(M)
    else:
        verdict = _nondegenerate_point(M)
    if verdict.point is not None and C(*verdict.point):
        raise CertificateFailure(f"point {verdict.point} is not on {C}")
    if verdict.point is not None:
        verdict = ConicVerdict(verdict.status, (QQ(verdict.point[0]), QQ(verdict.point[1])), verdict.certificate)
    return verdict


SMALL_SEARCH_HEIGHT = 6


def _small_point(M) -> tuple[Fraction, Fraction] | None:
    """A point with x of small height, preferred over the descent output."""
    a, b, c = M[1][1], 2 * M[0][1], M[0][0]
    d, e, f = 2 * M[0][2], 2 * M[1][2], M[2][2]
    for x in small_rationals(SMALL_SEARCH_HEIGHT):
        qa, qb, qc = a, b * x + e, c * x * x + d * x + f
        if qa == 0:
            if qb != 0:
                return x, -qc / qb
            continue
        s = _is_rational_square(qb * qb - 4 * qa * qc)
        if s is not None:
            return x, (-qb + s) / (2 * qa)
    return None


def _nondegenerate_point(M) -> ConicVerdict:
    D, P = _diagonalize(M)
    den = 1
    for d in D:
        den = den * d.denominator // math.gcd(den, d.denominator)
    Di = [int(d * den) for d in D]
    # (D3 y3)^2 = -D1 D3 y1^2 - D2 D3 y2^2
    A0, B0 = -Di[0] * Di[2], -Di[1] * Di[2]
    A, a = _squarefree_split(A0)
    B, b = _squarefree_split(B0)
    bad = obstructing_places(A, B)
    if bad:
        return ConicVerdict(ConicStatus.NO_POINT, None, {"obstruction": bad[0], "places": bad})
    small = _small_point(M)
    if small is not None:
        return ConicVerdict(ConicStatus.POINT_FOUND, small, {"method": "small search", "A": A, "B": B})
    w, x1, y1 = _ldescent(A, B)
    if w * w != A * x1 * x1 + B * y1 * y1:
        raise CertificateFailure("descent produced a non-solution")
    y = [Fraction(x1, a), Fraction(y1, b), Fraction(w, Di[2])]
    X = [sum(P[i][j] * y[j] for j in range(3)) for i in range(3)]
    if _qform(M, X) != 0:
        raise CertificateFailure("diagonalization back-substitution failed")
    pt = _affine_from_projective(M, X)
    if pt is None:
        raise CertificateFailure("no affine point found from projective point")
    return ConicVerdict(ConicStatus.POINT_FOUND, pt, {"method": "Legendre descent", "A": A, "B": B})


# -- parametrization --------------------------------------------------------------

@dataclass(frozen=True)
class ConicParametrization:
    """t -> second intersection of C with the line through ``base`` of slope t."""

    conic: Conic
    base: tuple

    def __call__(self, t):
        C = self.conic
        K = C.field
        t = K.coerce(t)
        x0, y0 = self.base
        m = C.cXX + C.cXY * t + C.cYY * t * t
        if not m:
            return None  # the line meets C again only at infinity
        lin = (C.cXX * x0 * 2 + C.cXY * y0 + C.cX) + (C.cXY * x0 + C.cYY * y0 * 2 + C.cY) * t
        s = -lin / m
        return (x0 + s, y0 + t * s)


def conic_parametrize(C: Conic, p) -> ConicParametrization:
    if C.is_degenerate():
        raise ConicError("DEGENERATE_CONIC", str(C))
    p = (C.field.coerce(p[0]), C.field.coerce(p[1]))
    if C(*p):
        raise ConicError("POINT_NOT_ON_CONIC", f"{p} not on {C}")
    return ConicParametrization(C, p)


# -- bounded search over any K ------------------------------------------------------

def small_rationals(bound: int) -> Iterator[Fraction]:
    """Rationals p/q with |p|, q <= bound in order of height, then value."""
    seen = set()
    for h in range(0, bound + 1):
        layer = set()
        for q in range(1, max(h, 1) + 1):
            for p in range(-h, h + 1):
                f = Fraction(p, q)
                if max(abs(f.numerator), f.denominator) == h or (h == 0 and f == 0):
                    layer.add(f)
        for f in sorted(layer, key=lambda f: (abs(f), f < 0)):
            if f not in seen:
                seen.add(f)
                yield f


def _field_candidates(K: NumberField, bound: int) -> list[FieldElement]:
    rats = list(small_rationals(bound))
    if K.degree == 1:
        return [K(q) for q in rats]
    cands = [K(list(c)) for c in itertools.product(rats, repeat=K.degree)]
    cands.sort(key=lambda e: (max(max(abs(c.numerator), c.denominator) for c in e.coords),
                              tuple((abs(c), c < 0) for c in e.coords)))
    return cands


def solve_for_y(C: Conic, x: FieldElement) -> list[FieldElement]:
    """All y in K with (x, y) on C."""
    K = C.field
    a = C.cYY
    b = C.cXY * x + C.cY
    c = C.cXX * x * x + C.cX * x + C.c1
    if not a:
        if b:
            return [-c / b]
        return [K.zero()] if not c else []
    disc = b * b - a * c * 4
    s = is_square(K, disc)
    if s is None:
        return []
    ys = [(-b + s) / (a * 2), (-b - s) / (a * 2)]
    return ys if ys[0] != ys[1] else ys[:1]


def conic_point_search(C: Conic, height_bound: int) -> ConicVerdict:
    """Search x of bounded height and solve for y; never reports NO_POINT."""
    for x in _field_candidates(C.field, height_bound):
        ys = solve_for_y(C, x)
        if ys:
            return ConicVerdict(ConicStatus.POINT_FOUND, (x, ys[0]), {"method": "search", "bound": height_bound})
    return ConicVerdict(ConicStatus.UNKNOWN, None, {"method": "search", "bound": height_bound,
                                                    "reason": "search bound exhausted"})

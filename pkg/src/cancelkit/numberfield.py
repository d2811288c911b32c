"""Exact arithmetic in Q and in number fields K = Q(t).

A field is given by the monic minimal polynomial of its generator ``t`` and
elements are stored as coordinate tuples in the power basis 1, t, ..., t^(n-1).
All coordinates are :class:`fractions.Fraction`, so every operation is exact.

Root finding over K (needed for roots of unity, real cyclotomic traces and
square roots) extracts linear factors with the norm-resultant method: shift the
polynomial until its norm down to Q is squarefree, factor the norm over Q, and
pull each degree-n norm factor back to a linear factor by a gcd over K.

>>> K = nf_create([1, 1, 1])            # t^2 + t + 1
>>> a = K.gen()
>>> str(a.inverse())
'-1 - t'
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import sympy

from .errors import NumberFieldError

Rational = Union[int, Fraction]

MAX_FIELD_DEGREE = 16

_t, _x = sympy.symbols("t x")


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(q: Fraction) -> str:
    """Canonical text for a rational: ``"p/q"`` or ``"p"``."""
    q = _frac(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# -- plain Q[t] helpers (coefficient lists, index = exponent) ---------------

def _qtrim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _qdivmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _qtrim(list(a))
    b = _qtrim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] -= c * bi
        a.pop()
        _qtrim(a)
    return _qtrim(q), a


def _qmul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _qtrim(out)


def _qsub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _qtrim([Fraction(c) for c in out])


def _qinverse_mod(a: Sequence[Fraction], m: Sequence[Fraction]) -> list[Fraction]:
    """Inverse of ``a`` modulo the irreducible ``m`` by the extended Euclidean algorithm."""
    r0, r1 = _qtrim(list(m)), _qtrim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _qdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qsub(s0, _qmul(q, s1))
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


def _to_sympy(coeffs: Sequence[Fraction], var) -> sympy.Poly:
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)] or [0],
                      var, domain=sympy.QQ)


def _from_sympy(p: sympy.Poly) -> list[Fraction]:
    return [_frac(c) for c in reversed(p.all_coeffs())]


# -- fields ----------------------------------------------------------------

class NumberField:
    """K = Q[t]/(m(t)) for a monic irreducible ``m``.

    ``minpoly`` lists the coefficients of ``m`` from the constant term up.
    Degree 1 always canonicalizes to ``m = t`` (the field Q).
    """

    __slots__ = ("minpoly", "degree", "_powers", "_hash")

    def __init__(self, minpoly: Sequence[Rational]):
        coeffs = _validate_minpoly(tuple(_frac(c) for c in minpoly))
        self.minpoly: tuple[Fraction, ...] = coeffs
        self.degree: int = len(coeffs) - 1
        self._hash = hash(("NumberField", coeffs))
        n = self.degree
        # t^k in the power basis for n <= k <= 2n - 2
        powers = []
        cur = [-c for c in coeffs[:-1]]
        for _ in range(max(n - 1, 0)):
            powers.append(tuple(cur))
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            cur = [c - top * m for c, m in zip(cur, coeffs[:-1])]
        self._powers = powers

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.degree == 1:
            return "NumberField(Q)"
        return f"NumberField({self.minpoly_text()})"

    def minpoly_text(self) -> str:
        return _format_tpoly(self.minpoly) if self.degree > 1 else "t"

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def zero(self) -> FieldElement:
        return FieldElement._make(self, (Fraction(0),) * self.degree)

    def one(self) -> FieldElement:
        return self(1)

    def gen(self) -> FieldElement:
        """The generator t (for Q this is 0, the root of m = t)."""
        if self.degree == 1:
            return self.zero()
        return self([0, 1])

    def __call__(self, value) -> FieldElement:
        return self.coerce(value)

    def coerce(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise NumberFieldError("FIELD_MISMATCH", f"{value.field!r} vs {self!r}")
            return value
        if isinstance(value, (list, tuple)):
            coords = [_frac(c) for c in value]
            if len(coords) > self.degree:
                return FieldElement._make(self, _reduce(self, coords))
            coords += [Fraction(0)] * (self.degree - len(coords))
            return FieldElement._make(self, tuple(coords))
        q = _frac(value)
        return FieldElement._make(self, (q,) + (Fraction(0),) * (self.degree - 1))


def _validate_minpoly(coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    coeffs = tuple(_qtrim(list(coeffs)))
    if len(coeffs) < 2:
        raise NumberFieldError("NOT_MONIC", "minimal polynomial must have degree >= 1")
    if coeffs[-1] != 1:
        raise NumberFieldError("NOT_MONIC", "leading coefficient must be 1")
    if len(coeffs) == 2:
        return (Fraction(0), Fraction(1))
    if len(coeffs) - 1 > MAX_FIELD_DEGREE:
        raise NumberFieldError("UNSUPPORTED_DEGREE", f"degree {len(coeffs) - 1} > {MAX_FIELD_DEGREE}")
    _check_irreducible(coeffs)
    return coeffs


@lru_cache(maxsize=256)
def _check_irreducible(coeffs: tuple[Fraction, ...]) -> None:
    p = _to_sympy(coeffs, _t)
    if p.gcd(p.diff(_t)).degree() > 0:
        raise NumberFieldError("NOT_SQUAREFREE", _format_tpoly(coeffs))
    _, factors = p.factor_list()
    if len(factors) > 1:
        raise NumberFieldError("REDUCIBLE", f"{_format_tpoly(coeffs)} has factor {factors[0][0].as_expr()}")


def _reduce(field: NumberField, coords: Sequence[Fraction]) -> tuple[Fraction, ...]:
    n = field.degree
    out = list(coords[:n]) + [Fraction(0)] * max(0, n - len(coords))
    for k in range(n, len(coords)):
        c = coords[k]
        if c:
            for i, p in enumerate(field._powers[k - n]):
                out[i] += c * p
    return tuple(out)


def nf_create(minpoly: Sequence[Rational]) -> NumberField:
    """Validated field from a monic minimal polynomial (coefficients low to high)."""
    return NumberField(minpoly)


QQ = NumberField([0, 1])


def _format_tpoly(coeffs: Sequence[Fraction], var: str = "t") -> str:
    terms = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        if k == 0:
            body = format_rational(abs(c))
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if abs(c) == 1 else f"{format_rational(abs(c))}*{mono}"
        terms.append((c < 0, body))
    if not terms:
        return "0"
    neg, body = terms[0]
    out = ("-" if neg else "") + body
    for neg, body in terms[1:]:
        out += (" - " if neg else " + ") + body
    return out


class FieldElement:
    """Immutable element of a :class:`NumberField`."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: Iterable[Rational]):
        c = field.coerce(list(coords))
        self.field = field
        self.coords = c.coords

    @classmethod
    def _make(cls, field: NumberField, coords: tuple[Fraction, ...]) -> FieldElement:
        obj = object.__new__(cls)
        obj.field = field
        obj.coords = coords
        return obj

    # conversion ------------------------------------------------------------
    def _other(self, other) -> FieldElement | None:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise NumberFieldError("FIELD_MISMATCH", f"{other.field!r} vs {self.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return None

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return any(self.coords)

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement._make(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement._make(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return FieldElement._make(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement._make(self.field, tuple(a * other for a in self.coords))
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.field.degree == 1:
            return FieldElement._make(self.field, (self.coords[0] * o.coords[0],))
        a, b = self.coords, o.coords
        prod = [Fraction(0)] * (2 * len(a) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return FieldElement._make(self.field, _reduce(self.field, prod))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if not self:
            raise ZeroDivisionError("DIVISION_BY_ZERO: inverse of zero")
        if self.field.degree == 1:
            return FieldElement._make(self.field, (1 / self.coords[0],))
        inv = _qinverse_mod(self.coords, self.field.minpoly)
        return self.field.coerce(inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("DIVISION_BY_ZERO")
            return FieldElement._make(self.field, tuple(a / other for a in self.coords))
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # comparison ------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.field, self.coords))

    def __str__(self):
        return _format_tpoly(self.coords)

    def __repr__(self):
        return f"FieldElement({self})"

    def sort_key(self):
        """Deterministic preference order used whenever a root must be chosen.

        Elements whose first nonzero coordinate is positive come first, then
        smaller height, then coordinates.
        """
        first = next((c for c in self.coords if c), Fraction(0))
        height = max(max(abs(c.numerator), c.denominator) for c in self.coords)
        return (0 if first >= 0 else 1, height, self.coords)


def nf_inverse(a: FieldElement) -> FieldElement:
    return a.inverse()


# -- polynomials over K as tuples of FieldElements ----------------------------

def _ktrim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _kdivmod(a: Sequence[FieldElement], b: Sequence[FieldElement]):
    a = _ktrim(list(a))
    b = _ktrim(list(b))
    inv = b[-1].inverse()
    q = [None] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] * inv
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = a[shift + i] - c * bi
        a.pop()
        _ktrim(a)
    return q, a


def _kgcd(a: Sequence[FieldElement], b: Sequence[FieldElement]) -> list[FieldElement]:
    a, b = _ktrim(list(a)), _ktrim(list(b))
    while b:
        _, r = _kdivmod(a, b)
        a, b = b, r
    if not a:
        return a
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _kderiv(a: Sequence[FieldElement]) -> list[FieldElement]:
    return _ktrim([a[i] * i for i in range(1, len(a))])


def _kcompose_linear(a: Sequence[FieldElement], shift: FieldElement) -> list[FieldElement]:
    """Coefficients of a(x + shift)."""
    field = shift.field
    out: list[FieldElement] = []
    for c in reversed(a):
        # out = out * (x + shift) + c
        new = [field.zero()] * (len(out) + 1)
        for i, oi in enumerate(out):
            new[i + 1] = new[i + 1] + oi
            new[i] = new[i] + oi * shift
        new[0] = new[0] + c
        out = new
    return _ktrim(out)


@lru_cache(maxsize=4096)
def _roots_cached(field: NumberField, key: tuple[tuple[Fraction, ...], ...]) -> tuple[tuple[Fraction, ...], ...]:
    coeffs = [FieldElement._make(field, c) for c in key]
    return tuple(r.coords for r in _roots_uncached(field, coeffs))


def roots_in_field(field: NumberField, coeffs: Sequence) -> list[FieldElement]:
    """All distinct roots in K of the polynomial with the given coefficients (low to high)."""
    elems = [field.coerce(c) for c in coeffs]
    elems = _ktrim(elems)
    key = tuple(e.coords for e in elems)
    roots = [FieldElement._make(field, c) for c in _roots_cached(field, key)]
    return sorted(roots, key=FieldElement.sort_key)


def _roots_uncached(field: NumberField, f: list[FieldElement]) -> list[FieldElement]:
    if len(f) <= 1:
        return []
    if len(f) == 2:
        return [-f[0] / f[1]]
    # drop repeated factors; roots are unchanged
    g = _kgcd(f, _kderiv(f))
    if len(g) > 1:
        f, _ = _kdivmod(f, g)
    if field.degree == 1:
        poly = _to_sympy([c.coords[0] for c in f], _x)
        _, factors = poly.factor_list()
        out = []
        for fac, _mult in factors:
            if fac.degree() == 1:
                a1, a0 = (_frac(c) for c in fac.all_coeffs())
                out.append(field(-a0 / a1))
        return out
    return _trager_linear_factors(field, f)


def _norm(field: NumberField, f: Sequence[FieldElement]) -> sympy.Poly:
    m = _to_sympy(field.minpoly, _t).as_expr()
    expr = 0
    for k, c in enumerate(f):
        ck = sum(sympy.Rational(q.numerator, q.denominator) * _t ** i for i, q in enumerate(c.coords))
        expr += ck * _x ** k
    res = sympy.resultant(m, expr, _t)
    return sympy.Poly(res, _x, domain=sympy.QQ)


def _trager_linear_factors(field: NumberField, f: list[FieldElement]) -> list[FieldElement]:
    n = field.degree
    alpha = field.gen()
    s = 0
    while True:
        shift = alpha * (-s)  # g(x) = f(x - s*t)
        g = _kcompose_linear(f, shift) if s else list(f)
        norm = _norm(field, g)
        if norm.gcd(norm.diff(_x)).degree() == 0:
            break
        s = -s if s > 0 else -s + 1
    roots = []
    _, factors = norm.factor_list()
    for fac, _mult in factors:
        if fac.degree() != n:
            continue
        h = _kgcd(g, [field(c) for c in _from_sympy(fac)])
        if len(h) == 2:
            y = -h[0] / h[1]
            roots.append(y - alpha * s)
    return roots


# -- cyclotomic data ------------------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_coefficients(d: int) -> tuple[int, ...]:
    """Integer coefficients of the d-th cyclotomic polynomial, constant term first."""
    p = sympy.Poly(sympy.cyclotomic_poly(d, _x), _x)
    return tuple(int(c) for c in reversed(p.all_coeffs()))


@lru_cache(maxsize=None)
def chebyshev_coefficients(r: int) -> tuple[int, ...]:
    """Integer coefficients of T_r normalized by T_r(x + 1/x) = x^r + x^-r (T_0 = 2)."""
    if r == 0:
        return (2,)
    if r == 1:
        return (0, 1)
    prev, cur = [2], [0, 1]
    for _ in range(r - 1):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return tuple(cur)


@lru_cache(maxsize=None)
def real_cyclotomic_coefficients(d: int) -> tuple[int, ...]:
    """Minimal polynomial of zeta_d + 1/zeta_d for d >= 3, degree phi(d)/2."""
    if d < 3:
        raise ValueError("d must be >= 3")
    phi = cyclotomic_coefficients(d)
    m = (len(phi) - 1) // 2
    out = [0] * (m + 1)
    out[0] = phi[m]
    for k in range(1, m + 1):
        for i, c in enumerate(chebyshev_coefficients(k)):
            out[i] += phi[m + k] * c
    return tuple(out)


def euler_phi(d: int) -> int:
    return int(sympy.totient(d))


def contains_primitive_root(field: NumberField, d: int) -> FieldElement | None:
    """A primitive d-th root of unity in K, or None."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if d == 1:
        return field.one()
    if d == 2:
        return field(-1)
    if field.degree % euler_phi(d):
        return None
    roots = roots_in_field(field, cyclotomic_coefficients(d))
    return roots[0] if roots else None


def real_cyclotomic_roots(field: NumberField, d: int) -> list[FieldElement]:
    """All values 2cos(2 pi k/d), gcd(k, d) = 1, that lie in K."""
    if d < 3:
        raise ValueError("d must be >= 3")
    if field.degree % (euler_phi(d) // 2):
        return []
    return roots_in_field(field, real_cyclotomic_coefficients(d))


def is_square(field: NumberField, a: FieldElement | Rational) -> FieldElement | None:
    """A square root of ``a`` in K, choosing the root whose first nonzero coordinate is positive."""
    a = field.coerce(a)
    if not a:
        return field.zero()
    if a.is_rational():
        q = a.coords[0]
        if q > 0:
            rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
            if rn * rn == q.numerator and rd * rd == q.denominator:
                return field(Fraction(rn, rd))
        if field.degree == 1:
            return None
    roots = roots_in_field(field, [-a, 0, 1])
    return roots[0] if roots else None


# -- one quadratic tower level --------------------------------------------------

class QuadraticTower:
    """E = K(sqrt(w)). When w is already a square in K the tower is trivial and
    every element is normalized into the base (q = 0)."""

    __slots__ = ("base", "w", "is_trivial", "root")

    def __init__(self, base: NumberField, w: FieldElement | Rational):
        w = base.coerce(w)
        if not w:
            raise NumberFieldError("ZERO_RADICAND", "cannot adjoin sqrt(0)")
        self.base = base
        self.w = w
        self.root = is_square(base, w)
        self.is_trivial = self.root is not None

    def __eq__(self, other):
        return isinstance(other, QuadraticTower) and self.base == other.base and self.w == other.w

    def __hash__(self):
        return hash(("QuadraticTower", self.base, self.w))

    def __repr__(self):
        return f"QuadraticTower({self.base!r}, sqrt({self.w}))"

    def element(self, p, q=0) -> TowerElement:
        return TowerElement(self, self.base.coerce(p), self.base.coerce(q))

    def zero(self) -> TowerElement:
        return self.element(0)

    def one(self) -> TowerElement:
        return self.element(1)

    def sqrt_w(self) -> TowerElement:
        return self.element(0, 1)

    def coerce(self, value) -> TowerElement:
        if isinstance(value, TowerElement):
            if value.tower != self:
                raise NumberFieldError("FIELD_MISMATCH", "different towers")
            return value
        return self.element(value)

    __call__ = coerce


def adjoin_sqrt(base: NumberField, w: FieldElement | Rational) -> QuadraticTower:
    return QuadraticTower(base, w)


class TowerElement:
    """p + q*sqrt(w) with p, q in the base field."""

    __slots__ = ("tower", "p", "q")

    def __init__(self, tower: QuadraticTower, p: FieldElement, q: FieldElement):
        if tower.is_trivial and q:
            p, q = p + q * tower.root, tower.base.zero()
        self.tower = tower
        self.p = p
        self.q = q

    def _other(self, other):
        if isinstance(other, TowerElement):
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.tower.element(other)
        return None

    def in_base(self) -> bool:
        return not self.q

    def to_base(self) -> FieldElement:
        if self.q:
            raise ValueError(f"{self} is not in the base field")
        return self.p

    def is_zero(self) -> bool:
        return not self.p and not self.q

    def __bool__(self):
        return bool(self.p) or bool(self.q)

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return TowerElement(self.tower, self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return TowerElement(self.tower, self.p - o.p, self.q - o.q)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return TowerElement(self.tower, -self.p, -self.q)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        w = self.tower.w
        return TowerElement(self.tower, self.p * o.p + self.q * o.q * w, self.p * o.q + self.q * o.p)

    __rmul__ = __mul__

    def inverse(self) -> TowerElement:
        if not self:
            raise ZeroDivisionError("DIVISION_BY_ZERO: inverse of zero")
        norm = self.p * self.p - self.q * self.q * self.tower.w
        inv = norm.inverse()
        return TowerElement(self.tower, self.p * inv, -self.q * inv)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.tower.one()
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._other(other) if not isinstance(other, TowerElement) else other
        if o is None:
            return NotImplemented
        return self.p == o.p and self.q == o.q

    def __hash__(self):
        return hash((self.p, self.q))

    def __str__(self):
        if not self.q:
            return str(self.p)
        return f"({self.p}) + ({self.q})*sqrt({self.tower.w})"

    def __repr__(self):
        return f"TowerElement({self})"

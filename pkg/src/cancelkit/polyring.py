"""Dense univariate polynomials over a number field or a quadratic tower.

Besides ring arithmetic this module carries the maps the rest of the package
is built on: power maps ``x^r``, Chebyshev maps ``T_r`` (normalized by
``T_r(x + 1/x) = x^r + x^-r``, so ``T_2 = x^2 - 2``), expansion in the
Chebyshev basis ``{1, T_1, T_2, ...}``, support tests, outer-factor
extraction, functional decomposition, and Laurent substitution.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb, gcd as _gcd
from typing import Iterable, Sequence

from .errors import PolynomialError
from .numberfield import QQ, FieldElement, NumberField, QuadraticTower, TowerElement, chebyshev_coefficients


class Polynomial:
    """Immutable dense polynomial; ``coeffs[k]`` multiplies ``x^k``."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField | QuadraticTower, coeffs: Iterable = ()):
        cs = [field.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def _make(cls, field, coeffs: list) -> Polynomial:
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        obj = object.__new__(cls)
        obj.field = field
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def constant(cls, field, c) -> Polynomial:
        return cls(field, [c])

    @classmethod
    def x(cls, field=QQ) -> Polynomial:
        return cls(field, [0, 1])

    # basic queries -----------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero()

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero()

    def support(self) -> list[int]:
        return [k for k, c in enumerate(self.coeffs) if c]

    def _check(self, other: Polynomial):
        if other.field != self.field:
            raise PolynomialError("FIELD_MISMATCH", f"{self.field!r} vs {other.field!r}")

    def _lift(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        try:
            return Polynomial(self.field, [other])
        except (TypeError, Exception):
            return None

    # arithmetic --------------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial._make(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._make(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            o = self._lift(other)
            if o is None:
                return NotImplemented
            c = o[0]
            return Polynomial._make(self.field, [a * c for a in self.coeffs])
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial._make(self.field, [])
        if min(len(a), len(b)) > 8 and isinstance(self.field, NumberField) and self.field.degree == 1:
            return Polynomial._make(self.field, _mul_rational(self.field, a, b))
        zero = self.field.zero()
        out = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = out[i + j] + ai * bj
        return Polynomial._make(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Polynomial:
        if e < 0:
            raise PolynomialError("NEGATIVE_POWER", "polynomials have no inverses")
        result = Polynomial(self.field, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, c):
        """Division by a scalar."""
        c = self.field.coerce(c)
        inv = c.inverse()
        return Polynomial._make(self.field, [a * inv for a in self.coeffs])

    def __divmod__(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("DIVISION_BY_ZERO: polynomial division by zero")
        rem = list(self.coeffs)
        b = other.coeffs
        inv = b[-1].inverse()
        zero = self.field.zero()
        q = [zero] * max(len(rem) - len(b) + 1, 0)
        while len(rem) >= len(b) and rem:
            shift = len(rem) - len(b)
            c = rem[-1] * inv
            q[shift] = c
            for i in range(len(b) - 1):
                if b[i]:
                    rem[shift + i] = rem[shift + i] - c * b[i]
            rem.pop()
            while rem and not rem[-1]:
                rem.pop()
        return Polynomial._make(self.field, q), Polynomial._make(self.field, rem)

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[0]

    def __mod__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.coeffs == other.coeffs
        o = self._lift(other)
        return o is not None and self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # evaluation and composition -------------------------------------------------
    def __call__(self, value):
        """Horner evaluation at a field element, or composition when given a polynomial."""
        if isinstance(value, Polynomial):
            return compose(self, value)
        if isinstance(value, LaurentPolynomial):
            return laurent_substitute(self, value)
        value = self.field.coerce(value)
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self) -> Polynomial:
        return Polynomial._make(self.field, [self.coeffs[k] * k for k in range(1, len(self.coeffs))])

    def shift(self, v) -> Polynomial:
        """f(x + v)."""
        v = self.field.coerce(v)
        if not v:
            return self
        return compose(self, Polynomial(self.field, [v, 1]))

    def scale(self, u) -> Polynomial:
        """f(u*x)."""
        u = self.field.coerce(u)
        out, p = [], self.field.one()
        for c in self.coeffs:
            out.append(c * p)
            p = p * u
        return Polynomial._make(self.field, out)

    def map_coeffs(self, fn, field) -> Polynomial:
        return Polynomial(field, [fn(c) for c in self.coeffs])

    def monic(self) -> Polynomial:
        return self / self.leading()

    # text ------------------------------------------------------------------------
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self})"


def _coeff_text(c) -> tuple[bool, str, bool]:
    """(negative, body, is_one) for a coefficient in polynomial text."""
    if isinstance(c, TowerElement) and c.in_base():
        c = c.to_base()
    if isinstance(c, FieldElement) and c.is_rational():
        q = c.coords[0]
        from .numberfield import format_rational
        return q < 0, format_rational(abs(q)), abs(q) == 1
    return False, f"({c})", False


def format_polynomial(f: Polynomial, var: str = "x") -> str:
    """Text in the input grammar, highest degree first, e.g. ``x^3 - 2*x``."""
    if f.is_zero():
        return "0"
    parts = []
    for k in range(f.degree, -1, -1):
        c = f.coeffs[k]
        if not c:
            continue
        neg, body, one = _coeff_text(c)
        if k == 0:
            term = body
        else:
            mono = var if k == 1 else f"{var}^{k}"
            term = mono if one else f"{body}*{mono}"
        parts.append((neg, term))
    neg, term = parts[0]
    out = ("-" if neg else "") + term
    for neg, term in parts[1:]:
        out += (" - " if neg else " + ") + term
    return out


def _integer_vector(cs) -> tuple[list[int], int]:
    den = 1
    for c in cs:
        q = c.coords[0]
        den = den * q.denominator // _gcd(den, q.denominator)
    return [c.coords[0].numerator * (den // c.coords[0].denominator) for c in cs], den


def _pack(values: list[int], nbytes: int) -> int:
    return int.from_bytes(b"".join(v.to_bytes(nbytes, "little") for v in values), "little")


def _mul_rational(K: NumberField, a, b) -> list:
    """Product over Q by Kronecker substitution on integer numerators.

    Signed digits are recovered by adding a bias of 2^(B-1) to every slot,
    which is exact because each product coefficient has |c| < 2^(B-1).
    """
    ia, da = _integer_vector(a)
    ib, db = _integer_vector(b)
    bits = (max(abs(v) for v in ia).bit_length() + max(abs(v) for v in ib).bit_length()
            + min(len(ia), len(ib)).bit_length() + 2)
    nbytes = (bits + 7) // 8
    B = 8 * nbytes

    def signed(vals):
        return (_pack([max(v, 0) for v in vals], nbytes) - _pack([max(-v, 0) for v in vals], nbytes))

    n = len(ia) + len(ib) - 1
    half = 1 << (B - 1)
    packed = signed(ia) * signed(ib) + _pack([half] * n, nbytes)
    raw = packed.to_bytes(n * nbytes + 1, "little")
    den = da * db
    out = []
    for i in range(n):
        c = int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
        out.append(FieldElement._make(K, (Fraction(c, den),)) if c else K.zero())
    return out


def compose(f: Polynomial, g: Polynomial) -> Polynomial:
    """f(g(x)); degrees multiply."""
    if f.field != g.field:
        raise PolynomialError("FIELD_MISMATCH", f"{f.field!r} vs {g.field!r}")
    acc = Polynomial._make(f.field, [])
    for c in reversed(f.coeffs):
        acc = acc * g + Polynomial._make(f.field, [c])
    return acc


def power_map(r: int, field=QQ) -> Polynomial:
    """P_r = x^r."""
    if r < 1:
        raise PolynomialError("BAD_DEGREE", "r must be >= 1")
    return Polynomial(field, [0] * r + [1])


def chebyshev(r: int, field=QQ) -> Polynomial:
    """T_r with T_r(x + 1/x) = x^r + x^-r."""
    if r < 1:
        raise PolynomialError("BAD_DEGREE", "r must be >= 1")
    return Polynomial(field, chebyshev_coefficients(r))


# -- Chebyshev basis ------------------------------------------------------------------

@dataclass(frozen=True)
class ChebyshevExpansion:
    """f = a0 + sum a[i] * T_i; only nonzero ``a[i]`` are stored."""

    a0: object
    a: dict = dc_field(default_factory=dict)

    def support(self) -> list[int]:
        idx = sorted(self.a)
        return ([0] + idx) if self.a0 else idx

    def reconstruct(self, field) -> Polynomial:
        out = Polynomial(field, [self.a0])
        for i, c in self.a.items():
            out = out + chebyshev(i, field) * c
        return out


def cheb_expand(f: Polynomial) -> ChebyshevExpansion:
    """Coefficients in the basis {1, T_1, T_2, ...}.

    Substituting x = z + 1/z turns T_i into z^i + z^-i, so a_i is the
    coefficient of z^i in f(z + 1/z), a sum of binomial terms.
    """
    if isinstance(f.field, NumberField):
        return _cheb_expand_integral(f)
    zero = f.field.zero()
    n = f.degree
    a0 = zero
    a = {}
    for i in range(0, n + 1):
        acc = zero
        for k in range(i, n + 1, 2):
            c = f.coeffs[k]
            if c:
                acc = acc + c * comb(k, (k - i) // 2)
        if i == 0:
            a0 = acc
        elif acc:
            a[i] = acc
    return ChebyshevExpansion(a0, a)


def _cheb_expand_integral(f: Polynomial) -> ChebyshevExpansion:
    # same sums on integer coordinate vectors scaled by a common denominator
    K = f.field
    n = f.degree
    den = 1
    for c in f.coeffs:
        for q in c.coords:
            den = den * q.denominator // _gcd(den, q.denominator)
    ints = [[int(q * den) for q in c.coords] for c in f.coeffs]
    dim = K.degree
    acc = [[0] * dim for _ in range(n + 1)]
    for k in range(n + 1):
        vec = ints[k]
        if not any(vec):
            continue
        # walk the row C(k, m), m = 0..k/2, which lands on T_(k - 2m)
        b = 1
        for m in range(k // 2 + 1):
            row = acc[k - 2 * m]
            for t, v in enumerate(vec):
                if v:
                    row[t] += b * v
            b = b * (k - m) // (m + 1)
    a0 = K.zero()
    a = {}
    for i, vec in enumerate(acc):
        if any(vec):
            elem = K.coerce([Fraction(v, den) for v in vec])
            if i == 0:
                a0 = elem
            else:
                a[i] = elem
    return ChebyshevExpansion(a0, a)


class FormKind(str, enum.Enum):
    POWER_INNER = "POWER_INNER"      # monomial support in dZ: f = P(x^d)
    LINEAR_TIMES = "LINEAR_TIMES"    # monomial support in 1 + dZ: f = x Q(x^d)
    CHEB_INNER = "CHEB_INNER"        # Chebyshev support in dZ: f = P(T_d)


def form_check(f: Polynomial, d: int, kind: FormKind, expansion: ChebyshevExpansion | None = None) -> bool:
    if d < 2:
        raise PolynomialError("BAD_DEGREE", "d must be >= 2")
    kind = FormKind(kind)
    if kind is FormKind.POWER_INNER:
        return all(k % d == 0 for k in f.support())
    if kind is FormKind.LINEAR_TIMES:
        return all(k % d == 1 for k in f.support())
    exp = expansion if expansion is not None else cheb_expand(f)
    return all(i % d == 0 for i in exp.a)


def extract_outer(f: Polynomial, d: int, kind: FormKind, expansion: ChebyshevExpansion | None = None) -> Polynomial:
    """P with f = P(x^d) (POWER_INNER) or f = P(T_d) (CHEB_INNER)."""
    kind = FormKind(kind)
    if kind is FormKind.LINEAR_TIMES:
        raise PolynomialError("FORM_VIOLATION", "LINEAR_TIMES has no outer factor; use extract_linear_times")
    if not form_check(f, d, kind, expansion):
        raise PolynomialError("FORM_VIOLATION", f"{f} is not of {kind.value} form for d = {d}")
    if kind is FormKind.POWER_INNER:
        outer = Polynomial(f.field, f.coeffs[::d])
        inner = power_map(d, f.field)
    else:
        exp = expansion if expansion is not None else cheb_expand(f)
        outer = Polynomial(f.field, [exp.a0])
        for i, c in exp.a.items():
            outer = outer + chebyshev(i // d, f.field) * c
        inner = chebyshev(d, f.field)
    if compose(outer, inner) != f:
        raise PolynomialError("FORM_VIOLATION", "outer factor failed re-composition")
    return outer


def extract_linear_times(f: Polynomial, d: int) -> Polynomial:
    """Q with f = x * Q(x^d)."""
    if not form_check(f, d, FormKind.LINEAR_TIMES):
        raise PolynomialError("FORM_VIOLATION", f"{f} is not x*Q(x^{d})")
    q = Polynomial(f.field, f.coeffs[1::d])
    if Polynomial(f.field, [0, 1]) * compose(q, power_map(d, f.field)) != f:
        raise PolynomialError("FORM_VIOLATION", "x*Q(x^d) failed re-composition")
    return q


# -- functional decomposition ----------------------------------------------------------

def _right_factor_candidate(f: Polynomial, e: int) -> Polynomial:
    """The unique monic g of degree e with g(0) = 0 that can be a right factor.

    Its top coefficients come from the k-th root (k = deg f / e) of the
    reversed monic f, taken as a power series to order e - 1.
    """
    n = f.degree
    k = n // e
    lead_inv = f.leading().inverse()
    # reversed monic coefficients: G(y) = 1 + c_1 y + c_2 y^2 + ...
    G = [f.coeffs[n - j] * lead_inv for j in range(e)]
    alpha = Fraction(1, k)
    zero = f.field.zero()
    p = [f.field.one()] + [zero] * (e - 1)
    for m in range(1, e):
        acc = zero
        for j in range(1, m + 1):
            if G[j]:
                acc = acc + G[j] * p[m - j] * ((alpha + 1) * j - m)
        p[m] = acc * Fraction(1, m)
    coeffs = [zero] * (e + 1)
    for i in range(e):
        coeffs[e - i] = p[i]
    coeffs[0] = zero
    return Polynomial(f.field, coeffs)


def _outer_for(f: Polynomial, g: Polynomial) -> Polynomial | None:
    """h with f = h(g) if the g-adic expansion of f has constant digits."""
    digits = []
    rest = f
    while not rest.is_zero():
        rest, r = divmod(rest, g)
        if r.degree > 0:
            return None
        digits.append(r[0])
    return Polynomial(f.field, digits)


def decompose(f: Polynomial) -> list[Polynomial]:
    """Complete decomposition f = f_1 o f_2 o ... o f_m into indecomposables.

    Right-factor degrees are scanned in increasing order, so the last factor
    is a right factor of smallest possible degree.
    """
    if f.degree < 2:
        raise PolynomialError("BAD_DEGREE", "decompose needs degree >= 2")
    n = f.degree
    for e in range(2, n):
        if n % e:
            continue
        g = _right_factor_candidate(f, e)
        h = _outer_for(f, g)
        if h is not None and h.degree >= 2 and compose(h, g) == f:
            return decompose(h) + [g]
    return [f]


# -- Laurent polynomials -------------------------------------------------------------

class LaurentPolynomial:
    """Finite sum of c_k x^k with k in Z."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms: dict | None = None):
        self.field = field
        self.terms = {k: field.coerce(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def pi(cls, field=QQ) -> LaurentPolynomial:
        """x + 1/x."""
        return cls(field, {1: 1, -1: 1})

    @classmethod
    def monomial(cls, k: int, field=QQ, c=1) -> LaurentPolynomial:
        return cls(field, {k: c})

    def _lift(self, other) -> LaurentPolynomial:
        if isinstance(other, LaurentPolynomial):
            return other
        return LaurentPolynomial(self.field, {0: other})

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out[k] + c if k in out else c
        return LaurentPolynomial(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.field, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        o = self._lift(other)
        out: dict = {}
        for i, a in self.terms.items():
            for j, b in o.terms.items():
                out[i + j] = out[i + j] + a * b if i + j in out else a * b
        return LaurentPolynomial(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = LaurentPolynomial(self.field, {0: 1})
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        body = " + ".join(f"({c})*x^{k}" for k, c in sorted(self.terms.items()))
        return f"LaurentPolynomial({body or '0'})"


def laurent_substitute(f: Polynomial, s: LaurentPolynomial) -> LaurentPolynomial:
    """f(s(x)) computed exactly by Horner's rule."""
    acc = LaurentPolynomial(f.field)
    for c in reversed(f.coeffs):
        acc = acc * s + c
    return acc


def from_rationals(coeffs: Sequence, field=QQ) -> Polynomial:
    return Polynomial(field, coeffs)

"""Invariant curves, counterexample pairs and a brute-force collision oracle.

Each obstruction case comes with a plane curve C over K that is mapped into
itself by (h1, h1) and sent into the diagonal by (h2, h2). Both facts are
checked as exact polynomial divisibilities. K-points of C then give pairs
(a, b) with h2(h1^j(a)) = h2(h1^j(b)) but h1^j(a) != h1^j(b).
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterator

from .conics import Conic, conic_parametrize, small_rationals
from .errors import CertificateFailure, WitnessError
from .numberfield import FieldElement, NumberField
from .polyring import Polynomial
from .words import CaseTag, GeneratorSet, ObstructionWitness, Word

DEFAULT_MAX_J = 8
ORACLE_DEGREE_LIMIT = 4096


class BivariatePolynomial:
    """Sparse polynomial in X, Y: ``terms[(i, j)]`` multiplies X^i Y^j."""

    __slots__ = ("field", "terms")

    def __init__(self, field: NumberField, terms: dict | None = None):
        self.field = field
        self.terms = {}
        for k, c in (terms or {}).items():
            c = field.coerce(c)
            if c:
                self.terms[(int(k[0]), int(k[1]))] = c

    @classmethod
    def _make(cls, field, terms: dict) -> BivariatePolynomial:
        obj = object.__new__(cls)
        obj.field = field
        obj.terms = terms
        return obj

    @classmethod
    def from_univariate(cls, f: Polynomial, var: str = "X") -> BivariatePolynomial:
        if var == "X":
            return cls._make(f.field, {(k, 0): c for k, c in enumerate(f.coeffs) if c})
        return cls._make(f.field, {(0, k): c for k, c in enumerate(f.coeffs) if c})

    @classmethod
    def from_conic(cls, C: Conic) -> BivariatePolynomial:
        keys = [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)]
        return cls(C.field, dict(zip(keys, C.coefficients())))

    # queries ------------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def leading_term(self):
        """Lex-largest monomial with X > Y."""
        k = max(self.terms)
        return k, self.terms[k]

    def __call__(self, x, y) -> FieldElement:
        K = self.field
        x, y = K.coerce(x), K.coerce(y)
        acc = K.zero()
        for (i, j), c in self.terms.items():
            acc = acc + c * x ** i * y ** j
        return acc

    # arithmetic ---------------------------------------------------------------
    def _lift(self, other) -> BivariatePolynomial:
        if isinstance(other, BivariatePolynomial):
            return other
        return BivariatePolynomial(self.field, {(0, 0): other})

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for k, c in o.terms.items():
            s = out[k] + c if k in out else c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return BivariatePolynomial._make(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePolynomial._make(self.field, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        out: dict = {}
        for (a, b), c in self.terms.items():
            for (p, q), e in o.terms.items():
                k = (a + p, b + q)
                out[k] = out[k] + c * e if k in out else c * e
        return BivariatePolynomial._make(self.field, {k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = BivariatePolynomial(self.field, {(0, 0): 1})
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def substitute(self, fx: Polynomial, fy: Polynomial) -> BivariatePolynomial:
        """F(fx(X), fy(Y)), built from univariate powers to avoid bivariate products."""
        max_i = max((i for i, _ in self.terms), default=0)
        max_j = max((j for _, j in self.terms), default=0)
        px, py = [Polynomial(fx.field, [1])], [Polynomial(fy.field, [1])]
        for _ in range(max_i):
            px.append(px[-1] * fx)
        for _ in range(max_j):
            py.append(py[-1] * fy)
        out: dict = {}
        for (i, j), c in self.terms.items():
            A, B = px[i], py[j]
            for a, ca in enumerate(A.coeffs):
                if not ca:
                    continue
                cca = c * ca
                for b, cb in enumerate(B.coeffs):
                    if cb:
                        k = (a, b)
                        out[k] = out[k] + cca * cb if k in out else cca * cb
        return BivariatePolynomial._make(self.field, {k: v for k, v in out.items() if v})

    def divmod(self, F: BivariatePolynomial) -> tuple[BivariatePolynomial, BivariatePolynomial]:
        """Division with remainder by lex reduction (X > Y).

        Monomials of the remainder are not divisible by LT(F), so for a
        single divisor the remainder is zero exactly when F divides self.
        """
        if F.is_zero():
            raise ZeroDivisionError("DIVISION_BY_ZERO: bivariate division by zero")
        (fa, fb), lc = F.leading_term()
        inv = lc.inverse()
        rest = dict(self.terms)
        heap = [(-i, -j) for i, j in rest]
        heapq.heapify(heap)
        quo, rem = {}, {}
        while heap:
            i, j = heapq.heappop(heap)
            k = (-i, -j)
            c = rest.pop(k, None)
            if c is None or not c:
                continue
            if k[0] >= fa and k[1] >= fb:
                m = (k[0] - fa, k[1] - fb)
                q = c * inv
                quo[m] = q
                for (p, s), e in F.terms.items():
                    t = (p + m[0], s + m[1])
                    if t == k:
                        continue
                    if t in rest:
                        nv = rest[t] - q * e
                        if nv:
                            rest[t] = nv
                        else:
                            del rest[t]
                    else:
                        rest[t] = -(q * e)
                        heapq.heappush(heap, (-t[0], -t[1]))
            else:
                rem[k] = c
        return BivariatePolynomial._make(self.field, quo), BivariatePolynomial._make(self.field, rem)

    def divides(self, G: BivariatePolynomial) -> bool:
        return G.divmod(self)[1].is_zero()

    def __str__(self):
        if not self.terms:
            return "0"
        from .numberfield import format_rational
        parts = []
        for (i, j) in sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0])):
            c = self.terms[(i, j)]
            mono = "*".join(([f"X^{i}" if i > 1 else "X"] if i else []) +
                            ([f"Y^{j}" if j > 1 else "Y"] if j else []))
            if c.is_rational():
                q = c.to_fraction()
                neg, body = q < 0, format_rational(abs(q))
                if mono:
                    term = mono if abs(q) == 1 else f"{body}*{mono}"
                else:
                    term = body
            else:
                neg, term = False, f"({c})*{mono}" if mono else f"({c})"
            parts.append((neg, term))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, term in parts[1:]:
            out += (" - " if neg else " + ") + term
        return out

    def __repr__(self):
        return f"BivariatePolynomial({self})"


def diagonal(field: NumberField) -> BivariatePolynomial:
    """Y - X."""
    return BivariatePolynomial(field, {(0, 1): 1, (1, 0): -1})


def verify_invariance(F: BivariatePolynomial, f: Polynomial) -> bool:
    """True iff F divides F(f(X), f(Y))."""
    if F.is_zero():
        raise ValueError("F must be nonzero")
    return F.divides(F.substitute(f, f))


def verify_collapse(F: BivariatePolynomial, g: Polynomial) -> bool:
    """True iff F divides g(X) - g(Y), i.e. (g, g) sends the curve into the diagonal."""
    G = BivariatePolynomial.from_univariate(g, "X") - BivariatePolynomial.from_univariate(g, "Y")
    return F.divides(G)


@dataclass(frozen=True)
class InvariantCurve:
    equation: BivariatePolynomial
    case_tag: CaseTag
    parametrization: Callable | None = dc_field(default=None, compare=False)
    description: str = ""

    def contains(self, a, b) -> bool:
        return not self.equation(a, b)


def invariant_curve(w: ObstructionWitness) -> InvariantCurve:
    """The curve attached to a witness, with invariance and collapse certified."""
    h1, h2 = w.h1.poly, w.h2.poly
    K = h1.field
    v = w.conjugator.v
    tag = w.case_tag
    if tag in (CaseTag.CASE1, CaseTag.CASE2):
        eps = w.cyclotomic
        shift = v * (1 - eps)
        F = BivariatePolynomial(K, {(0, 1): 1, (1, 0): -eps, (0, 0): -shift})
        param = lambda t: (K.coerce(t), eps * t + shift)
        desc = "line Y = eps*X + v*(1 - eps)"
    elif tag is CaseTag.CASE3A:
        F = BivariatePolynomial(K, {(1, 0): 1, (0, 1): 1, (0, 0): -2 * v})
        param = lambda t: (K.coerce(t), 2 * v - t)
        desc = "line X + Y = 2v"
    else:
        point = w.conic_verdict.point if w.conic_verdict is not None else None
        F = BivariatePolynomial.from_conic(w.conic)
        param = conic_parametrize(w.conic, point) if point is not None else None
        desc = "conic"
    if not verify_invariance(F, h1):
        raise CertificateFailure(f"curve {F} is not invariant under (h1, h1) for h1 = {h1}")
    if not verify_collapse(F, h2):
        raise CertificateFailure(f"(h2, h2) does not send {F} into the diagonal for h2 = {h2}")
    return InvariantCurve(F, tag, param, desc)


def _parameters() -> Iterator[Fraction]:
    return small_rationals(10 ** 9)


def _curve_point_stream(C: InvariantCurve, height_bound: int | None = None):
    if C.parametrization is None:
        raise WitnessError("INSUFFICIENT_POINTS", "curve has no parametrization")
    seen = set()
    params = small_rationals(height_bound) if height_bound is not None else _parameters()
    for t in params:
        p = C.parametrization(t)
        if p is None or p in seen:
            continue
        seen.add(p)
        if C.equation(*p):
            raise CertificateFailure(f"parametrization left the curve at t = {t}")
        yield p


def curve_points(C: InvariantCurve, count: int, height_bound: int | None = None) -> list[tuple]:
    """``count`` distinct K-points of C, in order of the parameter's height."""
    out = []
    for p in _curve_point_stream(C, height_bound):
        out.append(p)
        if len(out) == count:
            return out
    raise WitnessError("INSUFFICIENT_POINTS", f"only {len(out)} points within height {height_bound}")


@dataclass(frozen=True)
class PairSample:
    a: FieldElement
    b: FieldElement
    j: int
    checks: dict = dc_field(compare=False)


def iterate(f: Polynomial, x: FieldElement, j: int) -> FieldElement:
    """f^(j)(x), one Horner evaluation per step."""
    for _ in range(j):
        x = f(x)
    return x


def generate_pairs(w: ObstructionWitness, j: int, count: int,
                   curve: InvariantCurve | None = None, max_j: int = DEFAULT_MAX_J) -> list[PairSample]:
    """``count`` pairs (a, b) on the witness curve with
    h2(h1^j(a)) = h2(h1^j(b)) and h1^j(a) != h1^j(b)."""
    if j < 0 or j > max_j:
        raise ValueError(f"j must lie in [0, {max_j}]")
    curve = curve if curve is not None else invariant_curve(w)
    h1, h2 = w.h1.poly, w.h2.poly
    out, tried = [], 0
    for a, b in _curve_point_stream(curve):
        tried += 1
        A, B = iterate(h1, a, j), iterate(h1, b, j)
        if A != B:
            ha, hb = h2(A), h2(B)
            if ha != hb:
                raise CertificateFailure(f"pair ({a}, {b}) on the curve does not collapse")
            out.append(PairSample(a, b, j, {"h1j_a": A, "h1j_b": B, "h2_a": ha, "h2_b": hb}))
            if len(out) == count:
                return out
        if tried >= 10 * count:
            break
    raise WitnessError("INSUFFICIENT_POINTS", f"{len(out)} of {count} pairs after {tried} candidates")


def collision_oracle(S: GeneratorSet, a, b, max_depth: int) -> tuple[Word, int] | None:
    """First word (length, then lexicographic) whose orbit map equalizes a and b.

    Words are explored level by level; at each level states with the same
    pair of values are merged, keeping the lexicographically first word,
    since their extensions behave identically.
    """
    K = S.field
    a, b = K.coerce(a), K.coerce(b)
    if a == b:
        raise ValueError("collision_oracle needs a != b")
    level = [((), a, b)]
    for depth in range(1, max_depth + 1):
        nxt, seen = [], set()
        for word, x, y in level:
            for i, g in enumerate(S.generators):
                gx, gy = g(x), g(y)
                w = word + (i,)
                if gx == gy:
                    return _oracle_word(S, w), depth
                if (gx, gy) not in seen:
                    seen.add((gx, gy))
                    nxt.append((w, gx, gy))
        level = nxt
    return None


def _oracle_word(S: GeneratorSet, indices: tuple) -> Word:
    deg = 1
    for i in indices:
        deg *= S.generators[i].degree
    if deg <= ORACLE_DEGREE_LIMIT:
        return S.word(indices)
    return Word(indices, None)


def orbit_points(S: GeneratorSet, indices, a, b) -> list[tuple]:
    """[(a, b), (phi_i1(a), phi_i1(b)), ...] along a word, excluding the final step."""
    pts = [(a, b)]
    for i in indices[:-1]:
        g = S.generators[i]
        a, b = g(a), g(b)
        pts.append((a, b))
    return pts


def collision_explained(S: GeneratorSet, curves, a, b, word: Word) -> bool:
    """A first collision is explained when it happens in one step, or when some
    orbit point before the final step lies on one of the given curves."""
    if len(word) == 1:
        return True
    return any(A != B and any(C.contains(A, B) for C in curves)
               for A, B in orbit_points(S, word.indices, a, b))

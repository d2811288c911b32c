"""Search the composition monoid for obstructions to dynamical cancellation.

For every ordered pair (h1, h2) of words up to length L the three checks
below test whether, after a linear change of variable l, h1 commutes with a
rotation-like symmetry of order d that h2 collapses:

* case 1: l^-1 o h1 o l = x Q(x^d) with l = x + v, and h2 o l = P o P_d;
* case 2: l^-1 o h1 o l = P_r with d | r - 1, and h2 o l = P o P_d;
* case 3: l^-1 o h1 o l = +-T_r with d | r +- 1, and h2 o l = P o T_d,
  split into d = 2 (3a) and d > 2 (3b, which also needs a K-point on a conic).

Cases 1 and 2 need a primitive d-th root of unity in K; case 3b needs
eps + 1/eps in K. Every emitted witness is certified by the witness module.

``prove_absence`` is a sound shortcut: every case forces d | deg h2 and a
cyclotomic membership in K, so if no admissible d can divide a product of
generator degrees, no obstruction exists at any depth.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field as dc_field, replace

from sympy import divisors, primefactors

from .conics import ConicStatus, ConicVerdict, conic_from_case3, conic_point_search, conic_rational_point
from .conjugacy import (LinearConjugator, NormalFormReport, NormalKind, classify,
                        conjugate_by, rational_scaled)
from .errors import CancelKitError, CertificateFailure
from .numberfield import (NumberField, QuadraticTower, contains_primitive_root, euler_phi, is_square,
                          real_cyclotomic_roots)
from .polyring import (ChebyshevExpansion, FormKind, Polynomial, cheb_expand, extract_linear_times,
                       extract_outer, form_check)
from .words import CaseTag, GeneratorSet, ObstructionWitness, WitnessStatus, Word
from . import witness as _witness

DEFAULT_DEGREE_CAP = 10 ** 4
DEFAULT_WORD_CAP = 10 ** 5
DEFAULT_HEIGHT_BOUND = 4


class ExplosionError(CancelKitError):
    """Raised only when explicitly requested; by default the slice is flagged instead."""


@dataclass
class MonoidSlice:
    words: list
    exploded: bool = False
    generated: int = 0

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)


def enumerate_monoid(S: GeneratorSet, L: int, degree_cap: int = DEFAULT_DEGREE_CAP,
                     word_cap: int = DEFAULT_WORD_CAP) -> MonoidSlice:
    """Distinct polynomials given by words of length <= L and degree <= degree_cap.

    Breadth-first by length, extending only canonical words, so each
    polynomial keeps the lexicographically smallest of its shortest words.
    Dropping a non-canonical word loses nothing: any extension of it equals
    the same extension of the canonical one. Sorted by (degree, word).
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    seen: dict = {}
    frontier = []
    exploded = False
    generated = 0
    for i, g in enumerate(S.generators):
        generated += 1
        if g.degree <= degree_cap and g not in seen:
            w = Word((i,), g)
            seen[g] = w
            frontier.append(w)
    for _ in range(L - 1):
        nxt = []
        for prev in frontier:
            for i, g in enumerate(S.generators):
                if prev.degree * g.degree > degree_cap:
                    continue
                generated += 1
                poly = g(prev.poly)
                if poly in seen:
                    continue
                w = Word(prev.indices + (i,), poly)
                seen[poly] = w
                nxt.append(w)
                if len(seen) >= word_cap:
                    exploded = True
                    break
            if exploded:
                break
        frontier = nxt
        if exploded or not frontier:
            break
    words = sorted(seen.values(), key=lambda w: (w.degree, len(w), w.indices))
    return MonoidSlice(words, exploded, generated)


class _Analysis:
    """Per-word caches shared by all pair checks."""

    def __init__(self):
        self.reports: dict = {}
        self.scaled_support: dict = {}

    def classify(self, w: Word) -> NormalFormReport:
        if w.indices not in self.reports:
            self.reports[w.indices] = classify(w.poly)
        return self.reports[w.indices]

    def cheb_support(self, h2: Word, v, wsq) -> frozenset:
        key = (h2.indices, v, wsq)
        if key not in self.scaled_support:
            exp = cheb_expand(rational_scaled(h2.poly, v, wsq))
            self.scaled_support[key] = frozenset(exp.support())
        return self.scaled_support[key]


def _analysis(cache):
    return cache if cache is not None else _Analysis()


def check_case1(h1: Word, h2: Word, K: NumberField, cache: _Analysis | None = None) -> list[ObstructionWitness]:
    """h1 = l (x Q(x^d)) l^-1 with l = x + v and h2(x + v) in K[x^d]."""
    rep = _analysis(cache).classify(h1)
    if not rep.has(NormalKind.XQXD):
        return []
    v = rep.conjugator.v
    out = []
    shifted = None
    for d in divisors(rep.xqxd_gcd):
        if d < 2 or h2.degree % d:
            continue
        eps = contains_primitive_root(K, d)
        if eps is None:
            continue
        shifted = shifted if shifted is not None else h2.poly.shift(v)
        if not form_check(shifted, d, FormKind.POWER_INNER):
            continue
        out.append(ObstructionWitness(
            CaseTag.CASE1, h1, h2, d, rep.r, LinearConjugator(v=v, u_squared=K.one(), u_in_K=K.one()),
            eps, extract_outer(shifted, d, FormKind.POWER_INNER),
            inner_Q=extract_linear_times(rep.centered, d)))
    return out


def check_case2(h1: Word, h2: Word, K: NumberField, cache: _Analysis | None = None) -> list[ObstructionWitness]:
    """h1 conjugate to P_r, d | r - 1, and h2(x + v) in K[x^d].

    Monomial support mod d is unchanged by x -> u x, so the unknown scaling
    of the conjugator does not matter; ``outer`` is reported for l = x + v.
    """
    rep = _analysis(cache).classify(h1)
    if not rep.has(NormalKind.POWER):
        return []
    v, r = rep.conjugator.v, rep.r
    out = []
    shifted = None
    for d in divisors(r - 1):
        if d < 2 or h2.degree % d:
            continue
        eps = contains_primitive_root(K, d)
        if eps is None:
            continue
        shifted = shifted if shifted is not None else h2.poly.shift(v)
        if not form_check(shifted, d, FormKind.POWER_INNER):
            continue
        out.append(ObstructionWitness(CaseTag.CASE2, h1, h2, d, r, rep.conjugator, eps,
                                      extract_outer(shifted, d, FormKind.POWER_INNER)))
    return out


def check_case3(h1: Word, h2: Word, K: NumberField, cache: _Analysis | None = None,
                height_bound: int = DEFAULT_HEIGHT_BOUND) -> list[ObstructionWitness]:
    """h1 conjugate to +-T_r, h2 o l = P o T_d with d | r +- 1.

    The Chebyshev support test runs over K on a rational stand-in for
    h2(sqrt(w) x + v); the tower K(sqrt(w)) is built only for emitted witnesses.
    """
    an = _analysis(cache)
    rep = an.classify(h1)
    if not rep.has(NormalKind.CHEBYSHEV):
        return []
    conj = rep.conjugator
    v, wsq, r = conj.v, conj.u_squared, rep.r
    ds = sorted({d for d in set(divisors(r - 1)) | set(divisors(r + 1)) if d >= 2 and h2.degree % d == 0})
    if not ds:
        return []
    support = an.cheb_support(h2, v, wsq)
    out = []
    lifted = None
    for d in ds:
        if any(i % d for i in support):
            continue
        if lifted is None:
            tower = QuadraticTower(K, wsq)
            lifted = conjugate_by(h2.poly, v, tower)
            expansion = cheb_expand(lifted)
        outer = extract_outer(lifted, d, FormKind.CHEB_INNER, expansion)
        if d == 2:
            out.append(ObstructionWitness(CaseTag.CASE3A, h1, h2, d, r, conj, None, outer))
            continue
        for c in real_cyclotomic_roots(K, d):
            conic = conic_from_case3(wsq, v, c)
            verdict = _case3_conic_point(conic, r, wsq, v, c, K, height_bound)
            if verdict.status is ConicStatus.NO_POINT:
                continue
            status = WitnessStatus.CONDITIONAL if verdict.status is ConicStatus.UNKNOWN else WitnessStatus.PENDING
            out.append(ObstructionWitness(CaseTag.CASE3B, h1, h2, d, r, conj, c, outer,
                                          conic=conic, conic_verdict=verdict, status=status))
    return out


def _case3_conic_point(conic, r, wsq, v, c, K, height_bound) -> ConicVerdict:
    explicit = None
    if r % 2 == 0:
        u = is_square(K, wsq)
        if u is None:
            # cannot happen: +-T_r with r even forces w to be a square in K
            return ConicVerdict(ConicStatus.NO_POINT, None, {"reason": "u not in K for even r"})
        explicit = (u * 2 + v, u * c + v)
        if conic(*explicit):
            raise CertificateFailure(f"explicit point {explicit} is not on {conic}")
    if K.is_rational:
        # the complete solver gives the smallest point; the explicit one is kept as a cross-check
        verdict = conic_rational_point(conic)
        if explicit is not None:
            if verdict.status is not ConicStatus.POINT_FOUND:
                raise CertificateFailure(f"solver missed the explicit point {explicit} on {conic}")
            verdict = ConicVerdict(verdict.status, verdict.point,
                                   {**verdict.certificate, "explicit_point": explicit})
        return verdict
    if explicit is not None:
        return ConicVerdict(ConicStatus.POINT_FOUND, explicit, {"method": "explicit point (2u + v, uc + v)"})
    return conic_point_search(conic, height_bound)


# -- absence prover ---------------------------------------------------------------------

@dataclass(frozen=True)
class AbsenceProof:
    """Certificate that no obstruction exists at any depth.

    ``candidate_d_set`` maps every admissible d to the reason it is
    admissible; none of them has all its primes in ``degree_prime_set``.
    """

    candidate_d_set: dict
    degree_prime_set: tuple
    rule_trace: str

    def recheck(self) -> bool:
        primes = set(self.degree_prime_set)
        return all(not set(primefactors(d)) <= primes for d in self.candidate_d_set)


def candidate_orders(K: NumberField) -> dict:
    """Every d >= 2 a witness over K could use, with the membership that admits it.

    A witness needs eps in K (cases 1, 2), d = 2 (case 3a) or eps + 1/eps in K
    (case 3b); the last has degree phi(d)/2 <= [K:Q], and phi(d) >= sqrt(d/2)
    bounds the search.
    """
    n = K.degree
    out = {2: "d = 2 is always admissible"}
    for d in range(3, 8 * n * n + 3):
        if euler_phi(d) > 2 * n:
            continue
        if contains_primitive_root(K, d) is not None:
            out[d] = f"primitive {d}-th root of unity in K"
        elif real_cyclotomic_roots(K, d):
            out[d] = f"2cos(2pi/{d}) in K"
    return out


def prove_absence(S: GeneratorSet) -> AbsenceProof | None:
    D = candidate_orders(S.field)
    primes = sorted({p for n in S.degrees() for p in primefactors(n)})
    passing = [d for d in sorted(D) if set(primefactors(d)) <= set(primes)]
    if passing:
        return None
    lines = [f"candidate d: {sorted(D)}", f"primes of generator degrees: {primes}"]
    for d in sorted(D):
        lines.append(f"d = {d} ({D[d]}): primes {primefactors(d)} not all in {primes}")
    lines.append("every case needs d | deg h2, a product of generator degrees; no candidate qualifies")
    return AbsenceProof(D, tuple(primes), "\n".join(lines))


# -- decision ------------------------------------------------------------------------------

class Verdict(str, enum.Enum):
    OBSTRUCTED = "OBSTRUCTED"
    NO_OBSTRUCTION_UPTO_DEPTH = "NO_OBSTRUCTION_UPTO_DEPTH"
    PROVEN_CANCELLATION = "PROVEN_CANCELLATION"


CASE2_NOTE = "case 2 is checked with h1 linearly conjugate to the power map P_r and d | r - 1"


@dataclass
class DecisionReport:
    verdict: Verdict
    depth: int
    witnesses: list = dc_field(default_factory=list)
    absence_proof: AbsenceProof | None = None
    stats: dict = dc_field(default_factory=dict)
    generators: GeneratorSet | None = None
    curves: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    @property
    def conditional(self) -> bool:
        return bool(self.witnesses) and all(w.status is WitnessStatus.CONDITIONAL for w in self.witnesses)


def certify(w: ObstructionWitness):
    """Attach the invariant curve and one counterexample pair; returns (witness, curve)."""
    if w.status is WitnessStatus.CONDITIONAL:
        return w, None
    curve = _witness.invariant_curve(w)
    sample = _witness.generate_pairs(w, 0, 1, curve=curve)
    return replace(w, curve=curve.equation, status=WitnessStatus.VERIFIED, samples=tuple(sample)), curve


def decide(S: GeneratorSet, L: int, prover: bool = True, degree_cap: int = DEFAULT_DEGREE_CAP,
           word_cap: int = DEFAULT_WORD_CAP, height_bound: int = DEFAULT_HEIGHT_BOUND) -> DecisionReport:
    if L < 1:
        raise ValueError("L must be >= 1")
    K = S.field
    notes = [CASE2_NOTE]
    if prover:
        proof = prove_absence(S)
        if proof is not None:
            return DecisionReport(Verdict.PROVEN_CANCELLATION, L, [], proof,
                                  {"words": 0, "pairs_checked": 0, "exploded": False}, S, [], notes)
    slice_ = enumerate_monoid(S, L, degree_cap, word_cap)
    cache = _Analysis()
    found = []
    pairs = 0
    for h1 in slice_.words:
        for h2 in slice_.words:
            pairs += 1
            found += check_case1(h1, h2, K, cache)
            found += check_case2(h1, h2, K, cache)
            found += check_case3(h1, h2, K, cache, height_bound)
    certified, curves = [], []
    for w in sorted(found, key=lambda w: w.sort_key()):
        w, curve = certify(w)
        certified.append(w)
        if curve is not None:
            curves.append(curve)
    stats = {"words": len(slice_), "compositions": slice_.generated, "pairs_checked": pairs,
             "exploded": slice_.exploded}
    # only verified witnesses are definitive; conditional ones are reported alongside
    verified = any(w.status is WitnessStatus.VERIFIED for w in certified)
    verdict = Verdict.OBSTRUCTED if verified else Verdict.NO_OBSTRUCTION_UPTO_DEPTH
    if any(w.status is WitnessStatus.CONDITIONAL for w in certified):
        notes.append("some case-3b witnesses are conditional: conic point search was inconclusive")
    return DecisionReport(verdict, L, certified, None, stats, S, curves, notes)

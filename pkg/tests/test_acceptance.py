"""Acceptance criteria 1-8, each with its time limit.

Run alone with ``python3 -m pytest tests/test_acceptance.py`` or
``python3 tests/test_acceptance.py``; a PASS/FAIL line per criterion is
printed in the terminal summary.
"""

import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from cancelkit.cli import decision_dict, dumps, witness_dict  # noqa: E402
from cancelkit.conics import (Conic, ConicStatus, conic_from_case3, conic_rational_point)  # noqa: E402
from cancelkit.conjugacy import NormalKind, classify, linear_conjugate  # noqa: E402
from cancelkit.decider import Verdict, decide  # noqa: E402
from cancelkit.numberfield import QQ, contains_primitive_root, nf_create, real_cyclotomic_roots  # noqa: E402
from cancelkit.polyring import LaurentPolynomial, Polynomial, cheb_expand, chebyshev, compose, decompose  # noqa: E402
from cancelkit.polyring import laurent_substitute, power_map  # noqa: E402
from cancelkit.witness import collision_explained, collision_oracle, generate_pairs  # noqa: E402
from cancelkit.words import CaseTag, GeneratorSet, WitnessStatus  # noqa: E402
from tests import oracles  # noqa: E402

x = Polynomial.x()
T, P = chebyshev, power_map

SETS = {
    "T2,T3": [T(2), T(3)],
    "x3,x2": [x ** 3, x ** 2],
    "x3-2x,x2": [x ** 3 - 2 * x, x ** 2],
    "T4,T3": [T(4), T(3)],
}

# (set, case, h1 word, h2 word, d) for the witnesses named by criterion 1
NAMED = [
    ("T2,T3", CaseTag.CASE3A, (1,), (0,), 2),
    ("x3,x2", CaseTag.CASE1, (0,), (1,), 2),
    ("x3,x2", CaseTag.CASE2, (0,), (1,), 2),
    ("x3-2x,x2", CaseTag.CASE1, (0,), (1,), 2),
    ("T4,T3", CaseTag.CASE3B, (0,), (1,), 3),
]


def gens(name):
    return GeneratorSet(QQ, SETS[name])


def named_witnesses():
    reports = {name: decide(gens(name), 2) for name in SETS}
    out = []
    for name, tag, h1, h2, d in NAMED:
        w = next(w for w in reports[name].witnesses
                 if w.case_tag is tag and w.h1.indices == h1 and w.h2.indices == h2 and w.d == d)
        out.append((name, w))
    return reports, out


class Clock:
    def __init__(self, limit):
        self.limit = limit
        self.start = time.perf_counter()

    def check(self):
        spent = time.perf_counter() - self.start
        assert spent < self.limit, f"took {spent:.1f}s, limit {self.limit}s"


def fr(poly):
    return [c.to_fraction() for c in poly.coeffs]


# -- 1 ---------------------------------------------------------------------------------------

@pytest.mark.acceptance(1, "obstruction certificates for the four named sets")
@pytest.mark.parametrize("name", list(SETS))
def test_criterion_1_obstruction_certificates(name):
    clock = Clock(5)
    rep = decide(gens(name), 2)
    clock.check()
    assert rep.verdict is Verdict.OBSTRUCTED
    assert rep.witnesses and all(w.status is WitnessStatus.VERIFIED for w in rep.witnesses)
    tags = {(w.case_tag, w.h1.indices, w.h2.indices, w.d) for w in rep.witnesses}
    for set_name, tag, h1, h2, d in NAMED:
        if set_name == name:
            assert (tag, h1, h2, d) in tags
    if name == "T4,T3":
        w = next(w for w in rep.witnesses if w.case_tag is CaseTag.CASE3B and w.h1.indices == (0,)
                 and w.h2.indices == (1,))
        assert str(w.conic) == "X^2 + X*Y + Y^2 - 3"
        assert w.conic_verdict.point == (1, 1)


# -- 2 ---------------------------------------------------------------------------------------

@pytest.mark.acceptance(2, "25 exact counterexample pairs per witness for j = 0..3")
def test_criterion_2_moreover_pairs():
    _, named = named_witnesses()
    clock = Clock(30)
    for _, w in named:
        h1, h2 = fr(w.h1.poly), fr(w.h2.poly)
        for j in range(4):
            pairs = generate_pairs(w, j, 25)
            assert len({(p.a, p.b) for p in pairs}) == 25
            for p in pairs:
                A, B = p.a.to_fraction(), p.b.to_fraction()
                for _ in range(j):
                    A, B = oracles.peval(h1, A), oracles.peval(h1, B)
                assert A != B
                assert oracles.peval(h2, A) == oracles.peval(h2, B)
    clock.check()


# -- 3 ---------------------------------------------------------------------------------------

@pytest.mark.acceptance(3, "{T5, P5} proven cancellation with a prover-free audit")
def test_criterion_3_chebyshev_and_power_five():
    clock = Clock(60)
    S = GeneratorSet(QQ, [T(5), P(5)])
    for L in (1, 3, 10, 100):
        rep = decide(S, L)
        assert rep.verdict is Verdict.PROVEN_CANCELLATION and rep.absence_proof.recheck()
    audit = decide(S, 4, prover=False)
    assert audit.witnesses == []
    clock.check()


# -- 4 ---------------------------------------------------------------------------------------

@pytest.mark.acceptance(4, "negative controls {x^2} and {x^2 + 1}")
@pytest.mark.parametrize("poly", [x ** 2, x ** 2 + 1], ids=["x2", "x2+1"])
def test_criterion_4_negative_controls(poly):
    clock = Clock(30)
    rep = decide(GeneratorSet(QQ, [poly]), 6)
    assert rep.witnesses == []
    assert rep.verdict in (Verdict.NO_OBSTRUCTION_UPTO_DEPTH, Verdict.PROVEN_CANCELLATION)
    clock.check()


# -- 5 ---------------------------------------------------------------------------------------

@pytest.mark.acceptance(5, "conic solver, membership identity and explicit point")
def test_criterion_5_conics():
    clock = Clock(120)
    rng = random.Random(20240)
    checked = 0
    while checked < 200:
        cs = [rng.randint(-20, 20) for _ in range(6)]
        if not any(cs[:3]):
            continue
        checked += 1
        C = Conic.from_coefficients(cs)
        v = conic_rational_point(C)
        if v.status is ConicStatus.POINT_FOUND:
            assert C(*v.point) == 0
        else:
            assert v.status is ConicStatus.NO_POINT
            assert not oracles.conic_has_point_upto(cs, 50)
    fields = {3: nf_create([1, 1, 1]), 4: nf_create([1, 0, 1]), 6: nf_create([1, -1, 1])}
    for d, K in fields.items():
        eps = contains_primitive_root(K, d)
        c = (eps + eps.inverse()).to_fraction()
        base = conic_from_case3(1, 0, c)
        CK = Conic.from_coefficients([K.coerce(a.to_fraction()) for a in base.coefficients()], K)
        for _ in range(50):
            x0 = K(Fraction(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(1, 50)))
            assert CK(x0 + x0.inverse(), eps * x0 + (eps * x0).inverse()) == 0
        c_q = real_cyclotomic_roots(QQ, d)[0]
        for _ in range(50):
            u = Fraction(rng.choice([-1, 1]) * rng.randint(1, 40), rng.randint(1, 40))
            v = Fraction(rng.randint(-40, 40), rng.randint(1, 40))
            assert conic_from_case3(u * u, v, c_q)(2 * u + v, u * c_q + v) == 0
    clock.check()


# -- 6 ---------------------------------------------------------------------------------------

@pytest.mark.acceptance(6, "algebra suites: nesting, semiconjugacy, round trips, decomposition")
def test_criterion_6_algebra():
    clock = Clock(60)
    rng = random.Random(6)
    for m in range(1, 9):
        for n in range(1, 9):
            assert compose(T(m), T(n)) == T(m * n)
            assert fr(T(m * n)) == oracles.cheb_recurrence(m * n)
    pi = LaurentPolynomial.pi()
    for r in range(1, 11):
        assert laurent_substitute(T(r), pi) == LaurentPolynomial(QQ, {r: 1, -r: 1})
    for _ in range(500):
        n = rng.randint(0, 12)
        f = Polynomial(QQ, [Fraction(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(n + 1)])
        e = cheb_expand(f)
        assert e.reconstruct(QQ) == f
        a0, a = oracles.cheb_by_elimination(fr(f))
        assert e.a0 == a0 and {i: c.to_fraction() for i, c in e.a.items()} == a
    for _ in range(200):
        kind = rng.choice(["P", "+T", "-T"])
        r = rng.randint(2, 9)
        u = Fraction(rng.choice([-1, 1]) * rng.randint(1, 7), rng.randint(1, 5))
        v = Fraction(rng.randint(-7, 7), rng.randint(1, 5))
        nf = {"P": P(r), "+T": T(r), "-T": -T(r)}[kind]
        rep = classify(linear_conjugate(nf, u, v))
        assert rep.r == r and rep.conjugator.v == v
        if kind == "P":
            assert rep.has(NormalKind.POWER)
        else:
            assert rep.has(NormalKind.CHEBYSHEV) and rep.conjugator.u_squared == u * u
    for _ in range(40):
        parts = [Polynomial(QQ, [rng.randint(-4, 4) for _ in range(rng.randint(2, 3))] + [rng.choice([1, 2, -3])])
                 for _ in range(rng.randint(1, 3))]
        f = parts[-1]
        for g in reversed(parts[:-1]):
            f = compose(g, f)
        got = decompose(f)
        h = got[-1]
        for g in reversed(got[:-1]):
            h = compose(g, h)
        assert h == f and all(decompose(g) == [g] for g in got)
    clock.check()


# -- 7 ---------------------------------------------------------------------------------------

@pytest.mark.acceptance(7, "collision oracle cross-validation")
def test_criterion_7_cross_validation():
    reports, named = named_witnesses()
    clock = Clock(120)
    for name, w in named:
        S = gens(name)
        for j in range(4):
            for p in generate_pairs(w, j, 25):
                bound = len(w.h1) * j + len(w.h2)
                hit = collision_oracle(S, p.a, p.b, bound)
                assert hit is not None and hit[1] <= bound
    rng = random.Random(7)
    for name, rep in reports.items():
        S = gens(name)
        tested = 0
        while tested < 100:
            a = Fraction(rng.randint(-10, 10), rng.randint(1, 10))
            b = Fraction(rng.randint(-10, 10), rng.randint(1, 10))
            if a == b or any(C.contains(a, b) for C in rep.curves):
                continue
            tested += 1
            hit = collision_oracle(S, a, b, 4)
            if hit is not None:
                assert collision_explained(S, rep.curves, a, b, hit[0]), (name, a, b, hit[0].indices)
    clock.check()


# -- 8 ---------------------------------------------------------------------------------------

def full_report() -> str:
    """Every decision and witness sample used above, as one canonical JSON text."""
    doc = {}
    for name in SETS:
        doc[name] = decision_dict(decide(gens(name), 2))
    S = GeneratorSet(QQ, [T(5), P(5)])
    doc["T5,P5"] = decision_dict(decide(S, 3))
    doc["T5,P5 audit"] = decision_dict(decide(S, 4, prover=False))
    for poly, key in ((x ** 2, "x2"), (x ** 2 + 1, "x2+1")):
        doc[key] = decision_dict(decide(GeneratorSet(QQ, [poly]), 6))
    _, named = named_witnesses()
    doc["pairs"] = [{"set": name, "witness": witness_dict(w, gens(name)),
                     "pairs": {str(j): [[str(p.a), str(p.b)] for p in generate_pairs(w, j, 25)] for j in range(4)}}
                    for name, w in named]
    return dumps(doc)


@pytest.mark.acceptance(8, "byte-identical JSON across two full runs")
def test_criterion_8_determinism():
    outs = []
    for seed in ("0", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        r = subprocess.run([sys.executable, "-c", "from tests.test_acceptance import full_report;"
                            "import sys; sys.stdout.write(full_report())"],
                           cwd=ROOT, env=env, capture_output=True, check=True)
        outs.append(r.stdout)
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["T5,P5"]["verdict"] == "PROVEN_CANCELLATION"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))

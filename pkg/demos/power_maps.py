"""
Power maps and roots of unity
=============================

x^2 and x^3 collide for a = -b because x^2 ignores the sign.  The
decider reports this twice: once as an x Q(x^d) symmetry, once as a
power map twisted by -1.
"""

from cancelkit import QQ, GeneratorSet, Polynomial, decide, nf_create

x = Polynomial.x()

report = decide(GeneratorSet(QQ, [x ** 3, x ** 2]), 1)
for w in report.witnesses:
    print(w.case_tag.value, "d =", w.d, "conjugator shift:", w.conjugator.v)

# With x^2 alone nothing obstructs: every collision is already a
# one-step collision.
print(decide(GeneratorSet(QQ, [x ** 2]), 6).verdict.value)

# Over Q(i) the fourth roots of unity appear, and x^5 acquires an
# obstruction with x^4.
K = nf_create([1, 0, 1])
xk = Polynomial.x(K)
rep = decide(GeneratorSet(K, [xk ** 5, xk ** 4]), 1)
print(sorted({(w.case_tag.value, w.d) for w in rep.witnesses}))

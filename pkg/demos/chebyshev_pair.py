"""
Collisions under Chebyshev maps
===============================

T_2 and T_3 commute, so the set {T_2, T_3} cannot have cancellation.
Here we ask the decider why, then build counterexample pairs by hand.
"""

from cancelkit import QQ, GeneratorSet, chebyshev, collision_oracle, decide, generate_pairs

# Build the generator set and search words up to length 2.
S = GeneratorSet(QQ, [chebyshev(2), chebyshev(3)])
report = decide(S, 2)
print(report.verdict.value)

# Each witness names a pair of words (h1, h2) and a plane curve that
# (h1, h1) maps into itself.
for w in report.witnesses[:6]:
    print(w.case_tag.value, "h1 =", w.h1.indices, "h2 =", w.h2.indices, "d =", w.d)

# Take the reflection witness (case 3a) and generate pairs (a, b) with
# h1^j(a) != h1^j(b) but h2(h1^j(a)) == h2(h1^j(b)).
w = next(w for w in report.witnesses if w.case_tag.value == "CASE3A")
for j in range(3):
    pairs = generate_pairs(w, j, 4)
    print("j =", j, [(str(p.a), str(p.b)) for p in pairs])

# A brute force orbit search confirms that each pair eventually collides.
p = generate_pairs(w, 2, 1)[0]
word, depth = collision_oracle(S, p.a, p.b, len(w.h1) * 2 + len(w.h2))
print("first collision at depth", depth, "via word", word.indices)

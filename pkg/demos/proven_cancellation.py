"""
A set with cancellation
=======================

For {T_5, P_5} no word pair can satisfy any of the three obstruction
shapes.  The absence prover shows this for every depth at once; a plain
enumeration at depth 4 agrees.
"""

from cancelkit import QQ, GeneratorSet, chebyshev, decide, power_map

S = GeneratorSet(QQ, [chebyshev(5), power_map(5)])

report = decide(S, 3)
print(report.verdict.value)

# The proof: every degree is a power of 5, and no root of unity order d
# available over Q fits the divisibility each obstruction shape needs.
# The trace lists each rule that fired.
proof = report.absence_proof
print("candidate orders:", sorted(proof.candidate_d_set))
print("degree primes:", proof.degree_prime_set)
for line in proof.rule_trace.splitlines()[:6]:
    print("  ", line)
print("recheck:", proof.recheck())

# Same question with the prover switched off.
audit = decide(S, 4, prover=False)
print(audit.verdict.value, "with", len(audit.witnesses), "witnesses")

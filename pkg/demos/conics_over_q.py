"""
Rational points on conics
=========================

The case-3(b) obstruction lives on a conic.  Over Q, whether it has a
point is decided by local Hilbert symbols, and a point comes from
Legendre descent.
"""

from cancelkit import Conic, conic_from_case3, conic_parametrize, conic_rational_point, hilbert_symbol

# The conic attached to T_4 and T_3 with a cube root of unity: c = -1.
C = conic_from_case3(1, 0, -1)
print(C)
v = conic_rational_point(C)
print(v.status.value, [str(c) for c in v.point])

# Once one point is known, lines through it sweep out all the others.
line_pencil = conic_parametrize(C, v.point)
for t in range(4):
    print(t, [str(c) for c in line_pencil(t)])

# A conic with no real points, and one with real points but none over Q_3.
for cs in ([1, 0, 1, 0, 0, 1], [1, 0, 1, 0, 0, -3]):
    verdict = conic_rational_point(Conic.from_coefficients(cs))
    print(cs, verdict.status.value)

print("(-1, -1) at the real place:", hilbert_symbol(-1, -1, 0))
print("(-1, 3) at p = 3:", hilbert_symbol(-1, 3, 3))

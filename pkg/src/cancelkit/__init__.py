"""cancelkit: exact obstructions to dynamical cancellation for sets of polynomials.

Given polynomials phi_1, ..., phi_n over a number field K, decide whether
pairs a != b can first collide under long compositions of the phi_i for
structural reasons (power maps, Chebyshev maps, x Q(x^d) symmetries), and
produce verified witnesses with explicit counterexample pairs.
"""

__version__ = "0.1.0"

from .errors import CancelKitError, CertificateFailure, ConicError, NumberFieldError, ParseError, PolynomialError
from .numberfield import (QQ, FieldElement, NumberField, QuadraticTower, adjoin_sqrt, contains_primitive_root,
                          cyclotomic_coefficients, is_square, nf_create, nf_inverse, real_cyclotomic_roots,
                          roots_in_field)
from .polyring import (ChebyshevExpansion, FormKind, LaurentPolynomial, Polynomial, cheb_expand, chebyshev,
                       compose, decompose, extract_linear_times, extract_outer, form_check, power_map)
from .conjugacy import LinearConjugator, NormalFormReport, NormalKind, classify, conjugate_by, linear_conjugate
from .conics import (Conic, ConicStatus, ConicVerdict, conic_from_case3, conic_parametrize, conic_point_search,
                     conic_rational_point, hilbert_symbol)
from .words import CaseTag, GeneratorSet, ObstructionWitness, WitnessStatus, Word
from .witness import (BivariatePolynomial, InvariantCurve, PairSample, collision_oracle, curve_points,
                      generate_pairs, invariant_curve, verify_invariance)
from .decider import (AbsenceProof, DecisionReport, Verdict, check_case1, check_case2, check_case3, decide,
                      enumerate_monoid, prove_absence)
from .parsing import parse_conic, parse_field, parse_polynomial

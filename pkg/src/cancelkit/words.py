"""Generator sets, composition words and obstruction witnesses.

A word ``[i1, ..., ik]`` denotes ``phi_ik o ... o phi_i1``: the first index is
applied first. These records are shared by the decider (which produces them)
and the witness module (which certifies them).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import PolynomialError
from .numberfield import FieldElement, NumberField
from .polyring import Polynomial


class GeneratorSet:
    """A finite set S of polynomials of degree >= 2 over one field.

    Duplicates are dropped (first occurrence wins) so indices stay stable.
    ``labels`` are display names, e.g. ``"T(2)"``.
    """

    def __init__(self, field: NumberField, generators: Sequence[Polynomial],
                 labels: Sequence[str] | None = None):
        if not generators:
            raise PolynomialError("EMPTY_SET", "need at least one generator")
        labels = list(labels) if labels is not None else [str(g) for g in generators]
        if len(labels) != len(generators):
            raise ValueError("labels and generators differ in length")
        gens, names = [], []
        for g, name in zip(generators, labels):
            if g.field != field:
                raise PolynomialError("FIELD_MISMATCH", f"{g} is not over {field!r}")
            if g.degree < 2:
                raise PolynomialError("DEGREE_LT_2", f"generator {name} has degree {g.degree}")
            if g in gens:
                continue
            gens.append(g)
            names.append(name)
        self.field = field
        self.generators = tuple(gens)
        self.labels = tuple(names)

    def __len__(self):
        return len(self.generators)

    def __getitem__(self, i: int) -> Polynomial:
        return self.generators[i]

    def degrees(self) -> list[int]:
        return [g.degree for g in self.generators]

    def word(self, indices: Sequence[int]) -> Word:
        """Materialize a word by composing generators, first index innermost."""
        if not indices:
            raise ValueError("words have length >= 1")
        poly = self.generators[indices[0]]
        for i in indices[1:]:
            poly = self.generators[i](poly)
        return Word(tuple(indices), poly)


@dataclass(frozen=True)
class Word:
    indices: tuple
    poly: Polynomial = dc_field(compare=False, repr=False)

    def __len__(self):
        return len(self.indices)

    @property
    def degree(self) -> int:
        return self.poly.degree

    def label(self, S: GeneratorSet) -> str:
        """Composition text, outermost first, e.g. ``T(2) o T(3)``."""
        return " o ".join(S.labels[i] for i in reversed(self.indices))

    def sort_key(self):
        return (len(self.indices), self.indices)


class CaseTag(str, enum.Enum):
    CASE1 = "CASE1"
    CASE2 = "CASE2"
    CASE3A = "CASE3A"
    CASE3B = "CASE3B"

    @property
    def short(self) -> str:
        return {"CASE1": "1", "CASE2": "2", "CASE3A": "3a", "CASE3B": "3b"}[self.value]


class WitnessStatus(str, enum.Enum):
    PENDING = "PENDING"
    VERIFIED = "VERIFIED"
    CONDITIONAL = "CONDITIONAL"


_CASE_ORDER = {CaseTag.CASE1: 0, CaseTag.CASE2: 1, CaseTag.CASE3A: 2, CaseTag.CASE3B: 3}


@dataclass(frozen=True)
class ObstructionWitness:
    """One satisfied obstruction case for the pair (h1, h2).

    ``cyclotomic`` is a primitive d-th root of unity eps in K (cases 1, 2),
    eps + 1/eps (case 3b) or None (case 3a). ``outer`` is P with
    h2 o l = P o P_d or P o T_d for the recorded conjugator; in case 3 its
    coefficients live in K(sqrt(w)).
    """

    case_tag: CaseTag
    h1: Word
    h2: Word
    d: int
    r: int
    conjugator: object
    cyclotomic: FieldElement | None
    outer: Polynomial
    inner_Q: Polynomial | None = None
    conic: object | None = None
    conic_verdict: object | None = None
    curve: object | None = None
    status: WitnessStatus = WitnessStatus.PENDING
    samples: tuple = ()

    def __post_init__(self):
        d, r, n2 = self.d, self.r, self.h2.degree
        if d < 2:
            raise ValueError("d must be >= 2")
        if n2 % d:
            raise ValueError(f"d = {d} does not divide deg h2 = {n2}")
        tag = self.case_tag
        if tag is CaseTag.CASE1 and self.h1.degree % d != 1 % d:
            raise ValueError("case 1 needs deg h1 = 1 mod d")
        if tag is CaseTag.CASE2 and (r - 1) % d:
            raise ValueError("case 2 needs d | r - 1")
        if tag in (CaseTag.CASE3A, CaseTag.CASE3B) and (r - 1) % d and (r + 1) % d:
            raise ValueError("case 3 needs d | r - 1 or d | r + 1")
        if tag is CaseTag.CASE3A and d != 2:
            raise ValueError("case 3a has d = 2")
        if self.status is WitnessStatus.CONDITIONAL and tag is not CaseTag.CASE3B:
            raise ValueError("only case 3b witnesses can be conditional")

    def sort_key(self):
        c = self.cyclotomic.sort_key() if self.cyclotomic is not None else ()
        return (len(self.h1) + len(self.h2), self.h1.indices, self.h2.indices, self.d,
                _CASE_ORDER[self.case_tag], c)

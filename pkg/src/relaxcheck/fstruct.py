"""Flat feature values, agreement tracks and signs.

Every agreement-relevant value lives in a small finite lattice: one
underspecified top element per domain plus its specific values.  Signs are
immutable tree nodes; phrasal signs are built by the parser and rewritten
(never mutated) by the correction step.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional


class DomainError(TypeError):
    """Two values from different feature domains were combined."""


# domain -> (top element or None, specific values)
DOMAINS = {
    "gender": ("masc_fem", ("masc", "fem")),
    "number": ("sg_pl", ("sg", "pl")),
    "animacy": ("any", ("animate", "inanimate")),
    "clause_flag": (None, ("yes", "no")),
    # pform is open: any preposition lemma, or "none"
    "pform": (None, None),
}

BINARY_DOMAINS = ("gender", "number")


@dataclass(frozen=True, order=True)
class FeatureValue:
    domain: str
    value: str

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise DomainError(f"unknown feature domain {self.domain!r}")
        top, values = DOMAINS[self.domain]
        if values is not None and self.value != top and self.value not in values:
            raise ValueError(f"{self.value!r} is not a {self.domain} value")

    @property
    def underspecified(self) -> bool:
        return self.value == DOMAINS[self.domain][0]

    @property
    def specific(self) -> bool:
        return not self.underspecified

    def __str__(self):
        return self.value


def gender(value: str) -> FeatureValue:
    return FeatureValue("gender", value)


def number(value: str) -> FeatureValue:
    return FeatureValue("number", value)


def pform(value: str) -> FeatureValue:
    return FeatureValue("pform", value)


def animacy(value: str) -> FeatureValue:
    return FeatureValue("animacy", value)


MASC, FEM, MASC_FEM = gender("masc"), gender("fem"), gender("masc_fem")
SG, PL, SG_PL = number("sg"), number("pl"), number("sg_pl")
ANIMATE, INANIMATE, ANY = animacy("animate"), animacy("inanimate"), animacy("any")
PFORM_NONE = pform("none")


def top(domain: str) -> FeatureValue:
    t = DOMAINS[domain][0]
    if t is None:
        raise DomainError(f"domain {domain!r} has no underspecified value")
    return FeatureValue(domain, t)


def unify_value(a: FeatureValue, b: FeatureValue) -> Optional[FeatureValue]:
    """Lattice meet of two values; ``None`` when they conflict.

    Raises DomainError when the values belong to different domains, which
    is a grammar bug rather than an agreement failure.
    """
    if a.domain != b.domain:
        raise DomainError(f"cannot unify {a.domain} with {b.domain}")
    if a == b:
        return a
    if a.underspecified:
        return b
    if b.underspecified:
        return a
    return None


def opposite(v: FeatureValue) -> FeatureValue:
    if v.domain not in BINARY_DOMAINS:
        raise DomainError(f"opposite() is undefined on domain {v.domain!r}")
    if v.underspecified:
        return v
    a, b = DOMAINS[v.domain][1]
    return FeatureValue(v.domain, b if v.value == a else a)


@dataclass(frozen=True)
class AgreementTrack:
    """Head value with its score and the anticipated opposite value with its score."""

    h_value: FeatureValue
    h_score: int
    m_value: FeatureValue
    m_score: int

    def __post_init__(self):
        if self.h_score < 0 or self.m_score < 0:
            raise ValueError("agreement scores are non-negative")
        if self.m_value != opposite(self.h_value):
            raise ValueError(f"m_value {self.m_value} is not the opposite of {self.h_value}")

    @classmethod
    def neutral(cls, domain: str) -> "AgreementTrack":
        """Track for a sign that carries no evidence for this feature."""
        t = top(domain)
        return cls(t, 0, t, 0)

    def as_tuple(self):
        return (self.h_value.value, self.h_score, self.m_value.value, self.m_score)


NEUTRAL_GENDER = AgreementTrack.neutral("gender")
NEUTRAL_NUMBER = AgreementTrack.neutral("number")


@dataclass(frozen=True)
class Sign:
    """A node of a linguistic structure.

    Lexical signs have ``index`` set to their token position and no
    daughters.  ``gender_members``/``number_members`` list the token indices
    whose own values fed the corresponding track; they delimit the
    agreement domain when the sign is finalized.  ``edit`` is only set on
    lexical signs rewritten by the transfer step.
    """

    category: str
    gender_track: AgreementTrack = NEUTRAL_GENDER
    number_track: AgreementTrack = NEUTRAL_NUMBER
    pform: FeatureValue = PFORM_NONE
    animacy: FeatureValue = ANY
    inherent_gender: bool = False
    lemma: str = ""
    surface: str = ""
    span: tuple = (0, 0)
    subcat: tuple = ()
    daughters: tuple = ()
    diagnoses: tuple = ()
    finalized: bool = False
    rule: str = "lex"
    form: Optional[str] = None
    index: int = -1
    gender_members: tuple = ()
    number_members: tuple = ()
    clausal: bool = False
    edit: tuple = ()
    entry: object = field(default=None, compare=False, repr=False)

    @property
    def lexical(self) -> bool:
        return not self.daughters

    def leaves(self):
        if self.lexical:
            yield self
            return
        for d in self.daughters:
            yield from d.leaves()

    def nodes(self):
        yield self
        for d in self.daughters:
            yield from d.nodes()

    def all_diagnoses(self):
        for node in self.nodes():
            yield from node.diagnoses

    def with_(self, **changes) -> "Sign":
        return replace(self, **changes)


def span_union(spans) -> tuple:
    spans = list(spans)
    return (min(s[0] for s in spans), max(s[1] for s in spans))

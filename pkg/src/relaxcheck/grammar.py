"""Phrase-structure rules with attached constraint expressions.

Rule file syntax, one block per rule::

    rule <id> <ruleset> : <MOTHER> -> <D1> <D2*head> ... { <constraint> }

A daughter pattern is ``cat[:form][[lemma|=surface]]`` (alternative
categories joined by ``|``) followed by markers: ``*`` syntactic head,
``^`` agreement controller, ``~`` agreement dependent.  Rules whose
constraint binds ``Diag`` are anticipation rules: they exist only to
recognise an incorrect or weak construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from . import csolve

RULESETS = ("core", "standard", "administrative")
SUBLANGUAGES = ("standard", "administrative")


class GrammarError(Exception):
    pass


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Pattern:
    categories: tuple
    form: Optional[str] = None
    lemmas: Optional[frozenset] = None
    head: bool = False
    controller: bool = False
    dependent: bool = False

    def matches(self, sign) -> bool:
        if sign.category not in self.categories:
            return False
        if self.form is not None and sign.form != self.form:
            return False
        if self.lemmas is not None:
            # "=word" items match the surface form, bare items the lemma
            if not sign.lexical:
                return False
            if sign.lemma not in self.lemmas and "=" + sign.surface.lower() not in self.lemmas:
                return False
        return True

    def __str__(self):
        s = "|".join(self.categories)
        if self.form:
            s += ":" + self.form
        if self.lemmas:
            s += "[" + "|".join(sorted(self.lemmas)) + "]"
        return s + "*" * self.head + "^" * self.controller + "~" * self.dependent


@dataclass(frozen=True)
class Rule:
    id: str
    ruleset: str
    mother: str
    daughters: tuple
    constraint: object = field(compare=False)
    text: str = ""

    @property
    def head(self) -> int:
        return next(i for i, d in enumerate(self.daughters) if d.head)

    @property
    def controller(self) -> Optional[int]:
        return next((i for i, d in enumerate(self.daughters) if d.controller), None)

    @property
    def dependent(self) -> Optional[int]:
        return next((i for i, d in enumerate(self.daughters) if d.dependent), None)

    @property
    def anticipation(self) -> bool:
        return "Diag" in csolve.variables(self.constraint)

    def __str__(self):
        ds = " ".join(str(d) for d in self.daughters)
        return f"rule {self.id} {self.ruleset} : {self.mother} -> {ds}"


@dataclass
class CheckConfig:
    sublanguage: str = "standard"
    passive_max: int = 2
    gerund_max: int = 2
    adverb_max: int = 2

    def __post_init__(self):
        if self.sublanguage not in SUBLANGUAGES:
            raise ConfigError(f"unknown sublanguage {self.sublanguage!r}; "
                              f"expected one of {', '.join(SUBLANGUAGES)}")


_PATTERN = re.compile(r"^(?P<cats>[a-z_]+(?:\|[a-z_]+)*)(?::(?P<form>[a-z]+))?"
                      r"(?:\[(?P<lemmas>[^\]]+)\])?(?P<marks>[*^~]*)$")
_BLOCK = re.compile(r"rule\s+(?P<id>\S+)\s+(?P<set>\S+)\s*:\s*(?P<mother>[a-z_]+)\s*->"
                    r"(?P<ds>[^{]*)\{(?P<body>[^}]*)\}", re.S)


def parse_pattern(text: str) -> Pattern:
    m = _PATTERN.match(text)
    if not m:
        raise GrammarError(f"bad daughter pattern {text!r}")
    lemmas = m.group("lemmas")
    marks = m.group("marks")
    return Pattern(tuple(m.group("cats").split("|")), m.group("form"),
                   frozenset(lemmas.split("|")) if lemmas else None,
                   "*" in marks, "^" in marks, "~" in marks)


def parse_rules(text: str) -> list[Rule]:
    macros = csolve.canonical_templates()
    text = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    rules = []
    pos = 0
    for m in _BLOCK.finditer(text):
        if text[pos:m.start()].strip():
            raise GrammarError(f"unparseable text before rule {m.group('id')}: "
                               f"{text[pos:m.start()].strip()[:40]!r}")
        pos = m.end()
        ruleset = m.group("set")
        if ruleset not in RULESETS:
            raise GrammarError(f"rule {m.group('id')}: unknown ruleset {ruleset!r}")
        daughters = tuple(parse_pattern(d) for d in m.group("ds").split())
        if not daughters:
            raise GrammarError(f"rule {m.group('id')}: no daughters")
        if sum(d.head for d in daughters) != 1:
            raise GrammarError(f"rule {m.group('id')}: exactly one daughter must be the head")
        if sum(d.controller for d in daughters) > 1 or sum(d.dependent for d in daughters) > 1:
            raise GrammarError(f"rule {m.group('id')}: at most one controller and one dependent")
        if any(d.controller for d in daughters) != any(d.dependent for d in daughters):
            raise GrammarError(f"rule {m.group('id')}: controller and dependent come in pairs")
        try:
            constraint = csolve.parse_expr(m.group("body"), macros)
        except csolve.ConstraintSyntaxError as exc:
            raise GrammarError(f"rule {m.group('id')}: {exc}") from None
        rules.append(Rule(m.group("id"), ruleset, m.group("mother"), daughters,
                          constraint, m.group(0).strip()))
    if text[pos:].strip():
        raise GrammarError(f"unparseable trailing text: {text[pos:].strip()[:40]!r}")
    ids = [r.id for r in rules]
    dupes = {i for i in ids if ids.count(i) > 1}
    if dupes:
        raise GrammarError(f"duplicate rule id(s): {', '.join(sorted(dupes))}")
    return rules


def load(path) -> list[Rule]:
    return parse_rules(Path(path).read_text(encoding="utf-8"))


def builtin_grammar() -> list[Rule]:
    text = resources.files("relaxcheck").joinpath("data/grammar.rules").read_text(encoding="utf-8")
    return parse_rules(text)


def active_rules(rules, config: CheckConfig) -> list[Rule]:
    """Core rules plus the rules of the selected satellite subgrammar only."""
    if config.sublanguage not in SUBLANGUAGES:
        raise ConfigError(f"unknown sublanguage {config.sublanguage!r}")
    return [r for r in rules if r.ruleset in ("core", config.sublanguage)]

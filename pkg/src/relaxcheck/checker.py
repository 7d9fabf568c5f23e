"""Document-level pipeline: tokenize, parse, select, diagnose, correct."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import grammar, lexicon as lexmod
from .correct import Correction, corrections
from .diagnose import Diagnosis, Messages, style_scan
from .grammar import CheckConfig
from .parser import LinguisticStructure, Parser, select, split_sentences, tokenize

RESOURCE_ENV = "RELAXCHECK_DATA"
DATA_DIR = Path(__file__).parent / "data"


class ResourceError(OSError):
    pass


def resource_path(name: str, override=None) -> Path:
    """Explicit path, else $RELAXCHECK_DATA/<name>, else the shipped file."""
    if override:
        path = Path(override)
    elif os.environ.get(RESOURCE_ENV):
        path = Path(os.environ[RESOURCE_ENV]) / name
    else:
        path = DATA_DIR / name
    if not path.is_file():
        raise ResourceError(f"resource file not found: {path}")
    return path


@dataclass
class SentenceReport:
    index: int
    text: str
    span: tuple
    ls: Optional[LinguisticStructure]
    diagnoses: list = field(default_factory=list)
    corrections: list = field(default_factory=list)
    unsynthesizable: list = field(default_factory=list)
    notice: Optional[str] = None

    @property
    def errors(self) -> list[Diagnosis]:
        return [d for d in self.diagnoses if d.is_error]


class Checker:
    def __init__(self, lexicon=None, rules=None, messages=None, config=None):
        self.config = config or CheckConfig()
        self.lexicon = lexicon if lexicon is not None else lexmod.load(resource_path("lexicon.tsv"))
        all_rules = rules if rules is not None else grammar.load(resource_path("grammar.rules"))
        self.rules = grammar.active_rules(all_rules, self.config)
        self.messages = messages or Messages.load(resource_path("messages.tsv"))
        self.parser = Parser(self.rules, self.lexicon)

    @classmethod
    def from_paths(cls, lexicon=None, grammar_path=None, messages=None, config=None):
        return cls(lexmod.load(resource_path("lexicon.tsv", lexicon)),
                   grammar.load(resource_path("grammar.rules", grammar_path)),
                   Messages.load(resource_path("messages.tsv", messages)), config)

    def check_sentence(self, tokens, source: str) -> SentenceReport:
        span = (tokens[0].span[0], tokens[-1].span[1])
        report = SentenceReport(tokens[0].sentence_index, source[span[0]:span[1]], span, None)
        unknown = self.parser.unknown_words(tokens)
        if unknown:
            report.notice = "unparsed: unknown word(s) " + ", ".join(t.surface for t in unknown)
            return report
        if not any(t.is_word for t in tokens):
            return report
        candidates = self.parser.parse(tokens)
        if not candidates:
            report.notice = "unparsed: no analysis spans the sentence"
            return report
        ls = select(candidates)
        report.ls = ls
        diags = [d for d in ls.root.all_diagnoses() if d.is_error]
        diags += style_scan([ls], self.config)
        report.diagnoses = sorted(diags, key=lambda d: (d.span[0], d.code))
        report.corrections, report.unsynthesizable = corrections(ls, self.lexicon)
        return report

    def check_text(self, text: str) -> list[SentenceReport]:
        return [self.check_sentence(sent, text) for sent in split_sentences(tokenize(text))]

    def corrected_texts(self, text: str) -> list[str]:
        """Corrected variants of a single-sentence text (empty when clean)."""
        reports = self.check_text(text)
        return [c.corrected_text for r in reports for c in r.corrections]

    def message(self, diag: Diagnosis) -> str:
        return self.messages.render(diag)


def exit_status(reports) -> int:
    if any(r.errors for r in reports):
        return 2
    if any(r.diagnoses for r in reports):
        return 1
    return 0


__all__ = ["Checker", "CheckConfig", "Correction", "ResourceError", "SentenceReport",
           "exit_status", "resource_path"]

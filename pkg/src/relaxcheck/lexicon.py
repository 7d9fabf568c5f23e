"""Lexical entries, subcategorization frames and inflection paradigms.

Record format, one per line, tab separated::

    surface  lemma  category  key=value;key=value...

A record with a ``paradigm`` registers every cell of the paradigm as a
surface form of its own, copying the other keys, so only one record per
lemma is needed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from .fstruct import (ANY, MASC_FEM, PFORM_NONE, SG_PL, FeatureValue, animacy,
                      gender, number, pform)

log = logging.getLogger(__name__)

CATEGORIES = ("det", "n", "adj", "v", "aux", "prep", "conj", "adv")
STYLE_FLAGS = ("latinism", "foreign_derived", "foreign_replaceable", "cognitive",
               "verbose", "manner_adverb", "gerund", "passive_aux")
LEXICAL_STYLE_FLAGS = ("latinism", "foreign_derived", "foreign_replaceable", "cognitive",
                       "verbose")
ROLES = ("subject", "dobj", "iobj", "oblique", "attribute")
SLOT_CATEGORIES = ("np", "comp_s", "infinitive")
GN_CELLS = ("msg", "fsg", "mpl", "fpl")
N_CELLS = ("sg", "pl")


class LexiconError(Exception):
    def __init__(self, message, line=None, path=None):
        where = f"{path or '<lexicon>'}:{line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


class SynthesisError(LookupError):
    """No paradigm cell can realize the requested features."""


@dataclass(frozen=True)
class SubcatSlot:
    role: str
    category: str
    pform_list: tuple
    animacy_req: FeatureValue = ANY

    @property
    def correct_pform(self) -> str:
        return self.pform_list[0]


@dataclass(frozen=True)
class SubcatFrame:
    slots: tuple

    @property
    def complements(self) -> tuple:
        return tuple(s for s in self.slots if s.role != "subject")


@dataclass(frozen=True)
class Paradigm:
    cells: tuple  # sorted ((cell, surface), ...)

    @property
    def mapping(self) -> dict:
        return dict(self.cells)

    @property
    def by_gender(self) -> bool:
        return any(c in GN_CELLS for c, _ in self.cells)

    def cell_for(self, g: FeatureValue, n: FeatureValue) -> str:
        if self.by_gender:
            if not (g.specific and n.specific):
                raise SynthesisError(f"need specific gender and number, got {g}/{n}")
            key = g.value[0] + n.value
        else:
            if not n.specific:
                raise SynthesisError(f"need specific number, got {n}")
            key = n.value
        try:
            return self.mapping[key]
        except KeyError:
            raise SynthesisError(f"paradigm has no cell {key}") from None


@dataclass(frozen=True)
class LexEntry:
    surface: str
    lemma: str
    category: str
    gender: Optional[FeatureValue] = None
    inherent_gender: bool = False
    number: Optional[FeatureValue] = None
    inherent_number: bool = False
    animacy: FeatureValue = ANY
    pform: FeatureValue = PFORM_NONE
    form: Optional[str] = None
    frames: tuple = ()
    style_flag: Optional[str] = None
    suggest: Optional[str] = None
    contracts: Optional[str] = None
    paradigm: Optional[Paradigm] = None
    line: int = field(default=0, compare=False)


def _parse_slot(text, line, path):
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise LexiconError(f"bad frame slot {text!r}", line, path)
    role, cat, pforms = parts[:3]
    anim = parts[3] if len(parts) == 4 else "any"
    if role not in ROLES:
        raise LexiconError(f"unknown role {role!r}", line, path)
    if cat not in SLOT_CATEGORIES:
        raise LexiconError(f"unknown slot category {cat!r}", line, path)
    plist = tuple(p.strip() for p in pforms.split(",") if p.strip())
    return SubcatSlot(role, cat, plist, animacy(anim))


def _parse_paradigm(text, line, path):
    cells = {}
    for item in text.split(","):
        key, sep, surface = item.partition(":")
        if not sep or not surface:
            raise LexiconError(f"bad paradigm cell {item!r}", line, path)
        if key not in GN_CELLS + N_CELLS:
            raise LexiconError(f"unknown paradigm cell {key!r}", line, path)
        cells[key] = surface.strip()
    return Paradigm(tuple(sorted(cells.items())))


def parse_record(text: str, line: int = 0, path=None) -> LexEntry:
    fields = text.rstrip("\n").split("\t")
    if len(fields) not in (3, 4):
        raise LexiconError(f"expected 3 or 4 tab-separated fields, got {len(fields)}", line, path)
    surface, lemma, cat = (f.strip() for f in fields[:3])
    if cat not in CATEGORIES:
        raise LexiconError(f"unknown category {cat!r}", line, path)
    kw = dict(surface=surface, lemma=lemma, category=cat, line=line)
    frames = []
    if len(fields) == 4 and fields[3].strip():
        for item in fields[3].split(";"):
            key, sep, value = item.partition("=")
            key, value = key.strip(), value.strip()
            if not sep:
                raise LexiconError(f"expected key=value, got {item!r}", line, path)
            try:
                if key == "gender":
                    kw["gender"] = gender(value)
                elif key == "number":
                    kw["number"] = number(value)
                elif key == "inherent":
                    kw["inherent_gender"] = value == "yes"
                elif key == "inherent_num":
                    kw["inherent_number"] = value == "yes"
                elif key == "animacy":
                    kw["animacy"] = animacy(value)
                elif key == "pform":
                    kw["pform"] = pform(value)
                elif key == "form":
                    kw["form"] = value
                elif key == "flag":
                    if value not in STYLE_FLAGS:
                        raise LexiconError(f"unknown style flag {value!r}", line, path)
                    kw["style_flag"] = value
                elif key == "suggest":
                    kw["suggest"] = value
                elif key == "contracts":
                    kw["contracts"] = value
                elif key == "paradigm":
                    kw["paradigm"] = _parse_paradigm(value, line, path)
                elif key == "frame":
                    frames.append(SubcatFrame(tuple(_parse_slot(s, line, path)
                                                    for s in value.split("|"))))
                else:
                    raise LexiconError(f"unknown key {key!r}", line, path)
            except ValueError as exc:
                raise LexiconError(str(exc), line, path) from None
    kw["frames"] = tuple(frames)
    if cat == "prep" and "pform" not in kw:
        kw["pform"] = pform(lemma)
    if cat == "v" and "form" not in kw:
        kw["form"] = "fin"
    return LexEntry(**kw)


def _cell_features(entry: LexEntry, cell: str):
    if cell in GN_CELLS:
        return gender("masc" if cell[0] == "m" else "fem"), number(cell[1:])
    return entry.gender, number(cell)


class Lexicon:
    def __init__(self, entries=()):
        self._index: dict[str, list[LexEntry]] = {}
        self.records: list[LexEntry] = []
        for e in entries:
            self.add(e)

    def add(self, entry: LexEntry, expand: bool = True):
        self.records.append(entry)
        forms = [entry]
        if expand and entry.paradigm is not None:
            for cell, surface in entry.paradigm.cells:
                g, n = _cell_features(entry, cell)
                forms.append(replace(entry, surface=surface, gender=g, number=n))
        for e in forms:
            bucket = self._index.setdefault(e.surface.lower(), [])
            for i, old in enumerate(bucket):
                if _same_entry(old, e):
                    bucket[i] = e
                    break
            else:
                bucket.append(e)

    def lookup(self, surface: str) -> list[LexEntry]:
        return list(self._index.get(surface.lower(), ()))

    def __contains__(self, surface):
        return surface.lower() in self._index

    def __len__(self):
        return len(self.records)

    def entries(self):
        for bucket in self._index.values():
            yield from bucket

    def paradigm_for(self, lemma: str, category: str, form: Optional[str] = None):
        for e in self.records:
            if e.lemma == lemma and e.category == category and e.paradigm is not None:
                if form is None or e.form == form:
                    return e.paradigm
        return None

    def inflect(self, lemma, category, g: FeatureValue, n: FeatureValue, form=None) -> str:
        """Surface form of ``lemma`` for the requested gender/number cell."""
        para = self.paradigm_for(lemma, category, form or ("fin" if category == "v" else None))
        if para is None:
            para = self.paradigm_for(lemma, category)
        if para is None:
            raise SynthesisError(f"no paradigm for {lemma}/{category}")
        return para.cell_for(g, n)

    @staticmethod
    def inflect_entry(entry: LexEntry, g: FeatureValue, n: FeatureValue) -> str:
        if entry.paradigm is None:
            if (entry.gender in (None, g) or entry.gender == MASC_FEM) and entry.number in (None, n, SG_PL):
                return entry.surface
            raise SynthesisError(f"{entry.surface} has no paradigm")
        return entry.paradigm.cell_for(g, n)


def _same_entry(a: LexEntry, b: LexEntry) -> bool:
    return replace(a, line=0, paradigm=None) == replace(b, line=0, paradigm=None)


def load(path) -> Lexicon:
    path = Path(path)
    lex = Lexicon()
    seen = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            text = raw.rstrip("\n")
            if not text.strip() or text.lstrip().startswith("#"):
                continue
            if text in seen:
                log.warning("%s:%d: duplicate record (first at line %d); last wins",
                            path, lineno, seen[text])
            seen[text] = lineno
            lex.add(parse_record(text, lineno, path))
    return lex


def validate(lex: Lexicon) -> list[str]:
    """Invariant violations as ``line N: message`` strings."""
    problems = []
    for e in lex.records:
        where = f"line {e.line}: {e.surface}"
        if e.inherent_gender and (e.gender is None or not e.gender.specific):
            problems.append(f"{where}: inherent gender needs a specific gender")
        for frame in e.frames:
            if sum(s.role == "subject" for s in frame.slots) > 1:
                problems.append(f"{where}: frame has more than one subject slot")
            for slot in frame.slots:
                if not slot.pform_list:
                    problems.append(f"{where}: empty pform list in {slot.role} slot")
                elif len(set(slot.pform_list)) != len(slot.pform_list):
                    problems.append(f"{where}: duplicate pform in {slot.role} slot "
                                    f"{','.join(slot.pform_list)}")
        if e.paradigm is None:
            continue
        cells = e.paradigm.mapping
        dims = GN_CELLS if e.paradigm.by_gender else N_CELLS
        missing = [c for c in dims if c not in cells]
        if missing:
            problems.append(f"{where}: paradigm missing cell(s) {','.join(missing)}")
            continue
        if any(c not in dims for c in cells):
            problems.append(f"{where}: paradigm mixes gender and number-only cells")
            continue
        if e.gender is not None and e.number is not None:
            own = e.paradigm.cell_for(e.gender, e.number) if (
                e.paradigm.by_gender and e.gender.specific) or not e.paradigm.by_gender else None
            if own is not None and own != e.surface:
                problems.append(f"{where}: surface does not match its own paradigm cell {own}")
        for cell, surface in e.paradigm.cells:
            g, n = _cell_features(e, cell)
            hits = [x for x in lex.lookup(surface)
                    if (x.lemma, x.category, x.gender, x.number) == (e.lemma, e.category, g, n)]
            if not hits:
                problems.append(f"{where}: cell {cell}={surface} does not round-trip")
    return problems

"""Tokenization and exhaustive bottom-up chart parsing.

Each rule application evaluates the rule's constraint expression over
bindings taken from the daughters; every solution environment yields its
own edge.  Agreement daughters that stop being extended (neither head nor
agreement partner of the rule consuming them) are finalized on the spot,
so their diagnoses are attached where their maximal projection ends.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from . import csolve
from .diagnose import (ANTICIPATION_CODES, Diagnosis, FrameMismatch, check_personal_a,
                       check_pform, check_portmanteau, finalized, init_scores, track_env,
                       track_from_env)
from .fstruct import Sign, span_union
from .lexicon import SubcatFrame

ROOT_CATEGORIES = ("s", "np")
CONTRACTIBLE_PREPS = ("de", "a")
ADJUNCT_ARGS = {"np": ("np", "pp"), "comp_s": ("comp_s", "pp"), "infinitive": ("v",)}

_WORD = re.compile(r"\w+(?:[-']\w+)*|[^\w\s]", re.UNICODE)
_TERMINAL = set(".?!")


@dataclass(frozen=True)
class Token:
    surface: str
    span: tuple
    sentence_index: int = 0

    @property
    def is_word(self) -> bool:
        return self.surface[0].isalnum()


def tokenize(text: str) -> list[Token]:
    """Split into word and punctuation tokens; ``.?!`` then space/end closes a sentence."""
    tokens = []
    sentence = 0
    matches = list(_WORD.finditer(text))
    for k, m in enumerate(matches):
        tokens.append(Token(m.group(), (m.start(), m.end()), sentence))
        if m.group() in _TERMINAL:
            nxt = matches[k + 1] if k + 1 < len(matches) else None
            if nxt is None or (nxt.start() > m.end() and nxt.group() not in _TERMINAL):
                sentence += 1
    return tokens


def split_sentences(tokens) -> list[list[Token]]:
    out: dict[int, list[Token]] = {}
    for t in tokens:
        out.setdefault(t.sentence_index, []).append(t)
    return [out[k] for k in sorted(out)]


@dataclass(frozen=True)
class LinguisticStructure:
    root: Sign
    tokens: tuple           # all tokens of the sentence, punctuation included
    words: tuple            # the word tokens the leaves index into
    sentence_index: int = 0

    @property
    def errors(self) -> list[Diagnosis]:
        return [d for d in self.root.all_diagnoses() if d.is_error]

    @property
    def size(self) -> int:
        return sum(1 for _ in self.root.nodes())


@dataclass
class Edge:
    rule: str
    start: int
    end: int
    sign: Sign
    daughters: tuple = ()
    solution: dict = field(default_factory=dict, repr=False)


def _sign_key(s: Sign):
    return (s.category, s.gender_track, s.number_track, s.subcat, s.pform, s.clausal,
            s.finalized, tuple(d.code for d in s.diagnoses))


class Chart:
    def __init__(self, size):
        self.size = size
        self.edges: list[Edge] = []
        self.by_start: dict[int, list[int]] = {}
        self.by_span: dict[tuple, list[int]] = {}
        self._keys = set()

    def add(self, edge: Edge, key) -> Optional[int]:
        if key in self._keys:
            return None
        self._keys.add(key)
        eid = len(self.edges)
        self.edges.append(edge)
        self.by_start.setdefault(edge.start, []).append(eid)
        self.by_span.setdefault((edge.start, edge.end), []).append(eid)
        return eid

    def sequences(self, patterns, start, end):
        """Daughter edge-id tuples matching ``patterns`` and tiling [start, end)."""
        if not patterns:
            if start == end:
                yield ()
            return
        first, rest = patterns[0], patterns[1:]
        for eid in list(self.by_start.get(start, ())):
            e = self.edges[eid]
            if e.end > end - len(rest) or (not rest and e.end != end):
                continue
            if not first.matches(e.sign):
                continue
            for tail in self.sequences(rest, e.end, end):
                yield (eid,) + tail


def _leftmost(sign: Sign) -> Sign:
    while sign.daughters:
        sign = sign.daughters[0]
    return sign


def _join(prep: Sign, arg: Sign) -> str:
    if prep.category == "prep" and prep.form == "contr":
        return "contracted"     # its article is already inside; see pp_contr
    if prep.category != "prep" or arg.category != "np":
        return "plain"
    first = _leftmost(arg)
    if (prep.surface.lower() in CONTRACTIBLE_PREPS and first.category == "det"
            and first.surface.lower() == "el"):
        return "contractible"
    return "plain"


def _slot_pforms(slot, arg):
    plist = slot.pform_list
    # personal "a" is decided on animacy, not on the frame's list
    if slot.role == "dobj" and not arg.clausal and "a" not in plist:
        plist = plist + ("a",)
    return plist


def _compatible(slot, arg) -> bool:
    if slot.category == "np":
        return arg.category in ("np", "pp") and not arg.clausal
    if slot.category == "comp_s":
        return arg.category in ("comp_s", "pp") and arg.clausal
    return arg.category == "v" and arg.form == "inf"


def _has_agreement(s: Sign) -> bool:
    return bool(s.gender_members or s.number_members)


class Parser:
    def __init__(self, rules, lexicon, roots=ROOT_CATEGORIES):
        self.rules = list(rules)
        self.lexicon = lexicon
        self.roots = roots
        self.unary = [r for r in self.rules if len(r.daughters) == 1]
        self.nary = [r for r in self.rules if len(r.daughters) > 1]

    def unknown_words(self, tokens) -> list[Token]:
        return [t for t in tokens if t.is_word and not self.lexicon.lookup(t.surface)]

    def chart(self, words) -> Chart:
        chart = Chart(len(words))
        for i, w in enumerate(words):
            added = []
            for entry in self.lexicon.lookup(w.surface):
                sign = init_scores(entry, index=i, span=w.span, surface=w.surface)
                eid = chart.add(Edge("lex", i, i + 1, sign), ("lex", i, entry))
                if eid is not None:
                    added.append(eid)
            self._closure(chart, added)
        n = len(words)
        for length in range(2, n + 1):
            for start in range(0, n - length + 1):
                end = start + length
                added = []
                for rule in self.nary:
                    for dids in list(chart.sequences(rule.daughters, start, end)):
                        added += self._apply(chart, rule, dids, start, end)
                self._closure(chart, added)
        return chart

    def _closure(self, chart, agenda):
        agenda = list(agenda)
        while agenda:
            eid = agenda.pop(0)
            e = chart.edges[eid]
            for rule in self.unary:
                if rule.daughters[0].matches(e.sign):
                    agenda += self._apply(chart, rule, (eid,), e.start, e.end)

    def _apply(self, chart, rule, dids, start, end) -> list[int]:
        signs = [chart.edges[i].sign for i in dids]
        out = []
        for sol, mother in self.combine(rule, signs):
            key = (rule.id, dids, _sign_key(mother))
            eid = chart.add(Edge(rule.id, start, end, mother, dids, sol), key)
            if eid is not None:
                out.append(eid)
        return out

    def combine(self, rule, signs):
        """(solution, mother sign) pairs for one rule application."""
        h, c, d = rule.head, rule.controller, rule.dependent
        head = signs[h]
        others = [s for i, s in enumerate(signs) if i != h]
        arg = others[-1] if others else None
        env = {"Pending": len(head.subcat)}
        if c is not None:
            env.update(track_env(signs[c].gender_track, signs[d].gender_track))
            env.update(track_env(signs[c].number_track, signs[d].number_track))
        if arg is not None:
            env["Pform"] = arg.pform.value
            env["Join"] = _join(head, arg)
            if head.subcat:
                env["Pforms"] = _slot_pforms(head.subcat[0], arg)
        for sol in csolve.evaluate(rule.constraint, env):
            for mother in self._build(rule, signs, sol, arg):
                yield sol, mother

    def _build(self, rule, signs, sol, arg):
        h, c, d = rule.head, rule.controller, rule.dependent
        head = signs[h]
        if c is not None:
            gt, nt = track_from_env(sol, "gender"), track_from_env(sol, "number")
            gm = signs[c].gender_members + signs[d].gender_members
            nm = signs[c].number_members + signs[d].number_members
        else:
            gt, nt = head.gender_track, head.number_track
            gm, nm = head.gender_members, head.number_members
        daughters = tuple(
            finalized(s) if i not in (h, c, d) and not s.finalized and _has_agreement(s) else s
            for i, s in enumerate(signs))
        diags = []
        atom = csolve.resolve(sol, "Diag")
        if atom is not None:
            diags.append(self._anticipation(rule, atom, signs))

        base = dict(
            category=rule.mother, gender_track=gt, number_track=nt,
            gender_members=tuple(sorted(set(gm))), number_members=tuple(sorted(set(nm))),
            pform=head.pform,
            animacy=head.animacy, inherent_gender=head.inherent_gender, lemma=head.lemma,
            surface=head.surface, span=span_union(s.span for s in signs), daughters=daughters,
            rule=rule.id, form=head.form, subcat=head.subcat, clausal=head.clausal,
            entry=head.entry,
        )
        if rule.mother == "pp":
            obj = next(s for i, s in enumerate(signs) if i != h and s.category != "det")
            base.update(animacy=obj.animacy, clausal=obj.clausal, pform=head.pform)
        elif rule.mother == "comp_s":
            base.update(clausal=True)

        sub = csolve.resolve(sol, "Subcat")
        if sub == "init":
            frames = getattr(head.entry, "frames", ()) or (SubcatFrame(()),)
            for frame in frames:
                yield Sign(**{**base, "subcat": frame.complements, "diagnoses": tuple(diags)})
        elif sub == "pop":
            slot = head.subcat[0]
            if not _compatible(slot, arg):
                return
            try:
                pd = self._check_slot(slot, arg, sol)
            except FrameMismatch:
                return
            extra = [pd] if pd is not None else []
            yield Sign(**{**base, "subcat": head.subcat[1:], "diagnoses": tuple(diags + extra)})
        else:
            yield Sign(**{**base, "diagnoses": tuple(diags)})

    def _check_slot(self, slot, arg, sol):
        observed = arg.pform.value
        # an omitted preposition is inserted before the argument,
        # a wrong or extra one is the argument's first word
        targets = (_leftmost(arg).index,)
        if (slot.role == "dobj" and not arg.clausal and slot.correct_pform == "none"
                and observed in ("none", "a")):
            return check_personal_a(slot.animacy_req, arg.animacy, observed, arg.span, targets)
        return check_pform(slot, observed, arg.clausal, arg.span, targets)

    def _anticipation(self, rule, atom, signs) -> Diagnosis:
        code = ANTICIPATION_CODES.get(atom)
        if code is None:
            raise csolve.ConstraintError(f"rule {rule.id}: unknown diagnosis atom {atom!r}")
        if code == "PORTMANTEAU":
            prep = next(s for s in signs if s.category == "prep")
            det = next(s for s in signs if s.category == "det")
            diag = check_portmanteau(prep, det)
            if diag is not None:
                return diag
        c = rule.controller
        parts = [s for i, s in enumerate(signs) if i != c and s.category != "s"]
        return Diagnosis(span=span_union(s.span for s in parts), code=code,
                         target_signs=tuple(s.index for s in parts if s.lexical),
                         message_id=f"style_{atom}" if code.startswith("STYLE") and atom != "verbose"
                         else "")

    def parse(self, tokens) -> list[LinguisticStructure]:
        """Every sentence-spanning structure, in chart order.  Empty when unparsed."""
        tokens = tuple(tokens)
        words = tuple(t for t in tokens if t.is_word)
        if not words or self.unknown_words(words):
            return []
        chart = self.chart(words)
        out = []
        for eid in chart.by_span.get((0, len(words)), ()):
            sign = chart.edges[eid].sign
            if sign.category not in self.roots or sign.subcat:
                continue
            if not sign.finalized and _has_agreement(sign):
                sign = finalized(sign)
            out.append(LinguisticStructure(sign, tokens, words,
                                           tokens[0].sentence_index if tokens else 0))
        return out


def parse(tokens, rules, lexicon) -> list[LinguisticStructure]:
    return Parser(rules, lexicon).parse(tokens)


def select(candidates) -> LinguisticStructure:
    """Fewest errors, then fewest diagnoses, then fewest nodes, then first."""
    if not candidates:
        raise ValueError("select() needs at least one candidate")
    def key(item):
        pos, ls = item
        diags = list(ls.root.all_diagnoses())
        return (sum(d.is_error for d in diags), len(diags), ls.size, pos)
    return min(enumerate(candidates), key=key)[1]

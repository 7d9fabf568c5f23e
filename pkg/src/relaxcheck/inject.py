"""Seeded error injection over a corpus of clean sentences.

Each sentence gets at most one mutation: an inflection cell flip on an
agreeing word, or a swap of a bound preposition for a tail member of the
verb's frame.  Every mutation is tagged with the code the checker is
expected to report and with its agreement class:

favored   the original is the only score-preferred repair
tie       the mutated word and one other member weigh the same
other     pform mutations, and agreement domains with underspecified members
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .correct import CONTRACT, _case_like, join_words
from .diagnose import check_pform
from .fstruct import opposite
from .lexicon import Lexicon, SynthesisError
from .parser import _leftmost

KINDS = ("agreement", "pform", "any")
FEATURES = {"gender": ("gender_track", "gender_members", "AGR_GEN"),
            "number": ("number_track", "number_members", "AGR_NUM")}


@dataclass(frozen=True)
class Injection:
    original: str
    mutated: str
    code: str
    klass: str

    def line(self) -> str:
        return f"{self.original}\t{self.mutated}\t{self.code}\t{self.klass}"


@dataclass(frozen=True)
class _Site:
    op: str        # replace | delete | insert
    pos: int       # word index
    word: str
    code: str
    klass: str


def _domain(root, index, members_attr):
    for node in root.nodes():
        if node.finalized and index in getattr(node, members_attr):
            return node
    return None


def _agreement_class(ls, leaf, feature) -> str | None:
    track_attr, members_attr, _ = FEATURES[feature]
    dom = _domain(ls.root, leaf.index, members_attr)
    if dom is None:
        return None
    leaves = {l.index: l for l in ls.root.leaves()}
    others = [leaves[i] for i in getattr(dom, members_attr) if i != leaf.index]
    specific = [o for o in others if getattr(o, track_attr).h_value.specific]
    if not specific:
        return None     # nothing left to disagree with
    if len(specific) < len(others):
        return "other"
    if feature == "gender" and any(o.inherent_gender for o in others):
        return "favored"
    return "favored" if len(specific) >= 2 else "tie"


def agreement_sites(ls, lexicon: Lexicon):
    for leaf in ls.root.leaves():
        entry = leaf.entry
        if entry is None or entry.paradigm is None or leaf.form == "contr":
            continue
        for feature in FEATURES:
            track = getattr(leaf, FEATURES[feature][0])
            if getattr(entry, feature) is None or not track.h_value.specific:
                continue
            if feature == "gender" and entry.inherent_gender:
                continue
            g, n = leaf.gender_track.h_value, leaf.number_track.h_value
            if feature == "gender":
                g = opposite(g)
            else:
                n = opposite(n)
            try:
                word = Lexicon.inflect_entry(entry, g, n)
            except SynthesisError:
                continue
            if word.lower() == leaf.surface.lower():
                continue
            klass = _agreement_class(ls, leaf, feature)
            if klass is not None:
                yield _Site("replace", leaf.index, word, FEATURES[feature][2], klass)


def pform_sites(ls):
    for node in ls.root.nodes():
        if node.rule != "vp_comp":
            continue
        slot = node.daughters[0].subcat[0]
        arg = node.daughters[1]
        observed = arg.pform.value
        if observed != slot.correct_pform:
            continue
        first = _leftmost(arg)
        if first.form == "contr":
            continue
        for alt in slot.pform_list[1:]:
            if slot.role == "dobj" and not arg.clausal and "a" in (alt, observed):
                continue    # decided by animacy, not by the frame
            diag = check_pform(slot, alt, arg.clausal)
            if observed == "none":
                yield _Site("insert", first.index, alt, diag.code, "other")
            elif alt == "none":
                yield _Site("delete", first.index, "", diag.code, "other")
            else:
                yield _Site("replace", first.index, alt, diag.code, "other")


def apply_site(ls, site: _Site) -> str:
    words = [t.surface for t in ls.words]
    pos = site.pos
    if site.op == "replace":
        words[pos] = _case_like(site.word, words[pos])
    elif site.op == "delete":
        words[pos] = None
    else:
        nxt = words[pos]
        if site.word in CONTRACT and nxt.lower() == "el":
            words[pos] = _case_like(CONTRACT[site.word], nxt)
        else:
            words[pos] = site.word + " " + nxt
    word_no = {t: i for i, t in enumerate(ls.words)}
    out = []
    for tok in ls.tokens:
        w = words[word_no[tok]] if tok in word_no else tok.surface
        if w:
            out.append(w)
    text = join_words(out)
    if ls.words and ls.words[0].surface[:1].isupper():
        text = text[0].upper() + text[1:]
    return text


def mutable_sites(ls, lexicon: Lexicon, kind: str = "any"):
    if kind not in KINDS:
        raise ValueError(f"unknown error kind {kind!r}; expected one of {', '.join(KINDS)}")
    sites = []
    if kind in ("agreement", "any"):
        sites += list(agreement_sites(ls, lexicon))
    if kind in ("pform", "any"):
        sites += list(pform_sites(ls))
    return sites


def inject(sentences, checker, seed: int = 0, kind: str = "any"):
    """Return ``(injections, notices)`` for an iterable of clean sentences."""
    injections, notices = [], []
    for lineno, sentence in enumerate(sentences, 1):
        reports = checker.check_text(sentence)
        if len(reports) != 1 or reports[0].ls is None:
            notices.append(f"line {lineno}: skipped, sentence does not parse")
            continue
        ls = reports[0].ls
        sites = mutable_sites(ls, checker.lexicon, kind)
        if not sites:
            notices.append(f"line {lineno}: skipped, no mutable site")
            continue
        site = random.Random(f"{seed}:{lineno}:{sentence}").choice(sites)
        mutated = apply_site(ls, site)
        injections.append(Injection(reports[0].text, mutated, site.code, site.klass))
    return injections, notices


def read_corpus(path) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip() and not line.startswith("#")]


def read_pairs(path) -> list[Injection]:
    with open(path, encoding="utf-8") as fh:
        return [Injection(*line.rstrip("\n").split("\t")) for line in fh if line.strip()]

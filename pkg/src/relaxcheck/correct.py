"""Transfer of diagnosed structures into corrected ones, and surface synthesis."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

from .diagnose import AGREEMENT_CODES, MAX_SOLUTIONS, Diagnosis
from .fstruct import AgreementTrack, Sign, opposite
from .lexicon import Lexicon, SynthesisError
from .parser import LinguisticStructure

NO_SPACE_BEFORE = set(".,;:?!)»")
NO_SPACE_AFTER = set("¿¡(«")
CONTRACT = {"de": "del", "a": "al"}
DELETE_CODES = ("PREP_ADD", "DEQUEISMO", "PERS_A_ADD")
INSERT_CODES = ("PREP_OMIT", "QUEISMO", "PERS_A_OMIT")


class TransferError(RuntimeError):
    pass


@dataclass(frozen=True)
class Correction:
    span: tuple
    corrected_text: str
    applied: tuple          # ((Diagnosis, detail), ...)
    solution_index: int = 0


def _refeature(leaf: Sign, attr: str, right) -> Sign:
    track = getattr(leaf, attr)
    if right is None or not track.h_value.specific or track.h_value == right:
        return leaf
    new = AgreementTrack(right, track.h_score, opposite(right), track.m_score)
    return replace(leaf, **{attr: new}, edit=leaf.edit + (("inflect",),))


def _edits(fixes):
    """Leaf index -> function rewriting that leaf."""
    ops: dict[int, list] = {}
    for diag, sol in fixes:
        if diag.code in AGREEMENT_CODES:
            if sol is None:
                raise TransferError(f"{diag.code} needs a solution with right values")
            for i in sol.targets:
                ops.setdefault(i, []).append(("agree", sol))
        elif diag.code == "PREP_SUBST":
            ops.setdefault(diag.target_signs[0], []).append(("replace", diag.right_pform))
        elif diag.code in DELETE_CODES:
            ops.setdefault(diag.target_signs[0], []).append(("delete",))
        elif diag.code in INSERT_CODES:
            ops.setdefault(diag.target_signs[0], []).append(("insert", diag.right_pform))
    for diag, _ in fixes:
        if diag.code == "PORTMANTEAU":
            prep, det = diag.target_signs
            # a determiner re-inflected by an agreement fix no longer contracts
            if any(op[0] == "agree" for op in ops.get(det, ())):
                continue
            ops.setdefault(prep, []).append(("fuse", diag.info("replacement")))
            ops.setdefault(det, []).append(("drop",))
    return ops


def _rewrite(sign: Sign, ops) -> Sign:
    if sign.lexical:
        for op in ops.get(sign.index, ()):
            if op[0] == "agree":
                sign = _refeature(sign, "gender_track", op[1].right_gender)
                sign = _refeature(sign, "number_track", op[1].right_number)
            else:
                sign = replace(sign, edit=sign.edit + (op,))
        return sign
    return replace(sign, daughters=tuple(_rewrite(d, ops) for d in sign.daughters))


def transfer(ls: LinguisticStructure, fixes) -> LinguisticStructure:
    """Apply ``(diagnosis, solution)`` fixes; untouched leaves stay identical."""
    return replace(ls, root=_rewrite(ls.root, _edits(fixes)))


def _case_like(word: str, model: str) -> str:
    if model[:1].isupper() and word:
        return word[0].upper() + word[1:]
    return word


def _render(leaf: Sign, token, lexicon: Lexicon):
    """Output pieces ``(word, changed)`` for one leaf, insertions first."""
    kinds = {op[0] for op in leaf.edit}
    pieces = [(op[1], True) for op in leaf.edit if op[0] == "insert"]
    if "drop" in kinds or "delete" in kinds and leaf.form != "contr":
        return pieces
    g, n = leaf.gender_track.h_value, leaf.number_track.h_value
    contracted = leaf.form == "contr"
    if "fuse" in kinds:
        word = next(op[1] for op in leaf.edit if op[0] == "fuse")
        return pieces + [(_case_like(word, token.surface), True)]
    if contracted and kinds & {"inflect", "replace", "delete"}:
        det = lexicon.inflect("el", "det", g, n) if "inflect" in kinds else "el"
        prep = next((op[1] for op in leaf.edit if op[0] == "replace"), leaf.lemma)
        if "delete" in kinds:
            return pieces + [(_case_like(det, token.surface), True)]
        return pieces + [(_case_like(prep, token.surface), True), (det, True)]
    if "replace" in kinds:
        word = next(op[1] for op in leaf.edit if op[0] == "replace")
        return pieces + [(_case_like(word, token.surface), True)]
    if "inflect" in kinds:
        word = Lexicon.inflect_entry(leaf.entry, g, n)
        return pieces + [(_case_like(word, token.surface), True)]
    return pieces + [(token.surface, False)]


def _contract(pieces):
    out = []
    for word, changed in pieces:
        if out and word.lower() == "el" and out[-1][0].lower() in CONTRACT and (changed or out[-1][1]):
            prev = out.pop()[0]
            out.append((_case_like(CONTRACT[prev.lower()], prev), True))
        else:
            out.append((word, changed))
    return out


def join_words(words) -> str:
    text = ""
    for w in words:
        if text and w[0] not in NO_SPACE_BEFORE and text[-1] not in NO_SPACE_AFTER:
            text += " "
        text += w
    return text


def synthesize(ls: LinguisticStructure, lexicon: Lexicon) -> str:
    """Surface text of ``ls``; punctuation and initial capital come from the original."""
    leaves = {leaf.index: leaf for leaf in ls.root.leaves()}
    word_no = {t: i for i, t in enumerate(ls.words)}
    pieces = []
    for tok in ls.tokens:
        if tok in word_no:
            pieces += _render(leaves[word_no[tok]], tok, lexicon)
        else:
            pieces.append((tok.surface, False))
    words = [w for w, _ in _contract(pieces)]
    first_word = next((t for t in ls.tokens if t.is_word), None)
    if words and first_word is not None and first_word.surface[:1].isupper():
        idx = next((k for k, w in enumerate(words) if w[:1].isalnum()), None)
        if idx is not None:
            words[idx] = words[idx][0].upper() + words[idx][1:]
    return join_words(words)


def correction_options(diag: Diagnosis):
    if diag.code in AGREEMENT_CODES:
        return list(diag.solutions)
    return [None]


def corrections(ls: LinguisticStructure, lexicon: Lexicon):
    """Corrected sentence variants for every error in ``ls``.

    Returns ``(corrections, unsynthesizable)`` where the second list holds
    the diagnoses whose right values could not be realized as text.
    """
    errors = sorted(ls.errors, key=lambda d: (d.span[0], d.code))
    if not errors:
        return [], []
    span = (ls.tokens[0].span[0], ls.tokens[-1].span[1])
    out, failed, seen = [], [], set()
    combos = itertools.product(*(correction_options(d) for d in errors))
    for k, combo in enumerate(itertools.islice(combos, MAX_SOLUTIONS)):
        fixes = list(zip(errors, combo))
        try:
            text = synthesize(transfer(ls, fixes), lexicon)
        except SynthesisError:
            failed.extend(d for d, s in fixes if d.code in AGREEMENT_CODES and d not in failed)
            continue
        if text in seen:
            continue
        seen.add(text)
        out.append(Correction(span, text, tuple((d, s) for d, s in fixes), k))
    return out, failed

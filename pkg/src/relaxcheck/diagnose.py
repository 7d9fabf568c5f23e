"""Agreement scoring, pform pattern checks, anticipation and style diagnoses.

Agreement evidence is kept as scores on two tracks per feature: the
head's own value and the opposite value.  Controllers (nouns with
inherent gender) weigh 50, everything else 10.  A non-zero opposite score
at the end of the agreement domain means an error; the higher score names
the right value and a tie yields both.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from . import csolve
from .fstruct import (AgreementTrack, FeatureValue,
                      Sign, opposite, span_union, top, unify_value)
from .lexicon import LEXICAL_STYLE_FLAGS, LexEntry, SubcatSlot

CONTROLLER_SCORE = 50
DEPENDENT_SCORE = 10
MAX_SOLUTIONS = 4

AGREEMENT_CODES = ("AGR_GEN", "AGR_NUM", "AGR_GEN_NUM")
PFORM_CODES = ("PREP_SUBST", "PREP_OMIT", "PREP_ADD", "DEQUEISMO", "QUEISMO")
ERROR_CODES = AGREEMENT_CODES + PFORM_CODES + ("PERS_A_OMIT", "PERS_A_ADD", "PORTMANTEAU")
STYLE_CODES = ("STYLE_LEX", "STYLE_NOUN_A_INF", "STYLE_ABUSE_PASSIVE", "STYLE_ABUSE_GERUND",
               "STYLE_ABUSE_ADVERB")
ERTYPE_CODES = {"gender": "AGR_GEN", "number": "AGR_NUM", "gender_number": "AGR_GEN_NUM"}
ANTICIPATION_CODES = {"portmanteau": "PORTMANTEAU", "noun_a_inf": "STYLE_NOUN_A_INF",
                      "verbose": "STYLE_LEX"}


class FinalizationError(RuntimeError):
    pass


class FrameMismatch(Exception):
    """The observed preposition is not in the slot's pattern list at all."""


def severity_of(code: str) -> str:
    if code in ERROR_CODES:
        return "error"
    if code in STYLE_CODES:
        return "weakness"
    raise ValueError(f"unknown diagnosis code {code!r}")


@dataclass(frozen=True)
class AgreementSolution:
    right_gender: Optional[FeatureValue]
    right_number: Optional[FeatureValue]
    targets: tuple = ()


@dataclass(frozen=True)
class Diagnosis:
    span: tuple
    code: str
    severity: str = ""
    right_gender: Optional[FeatureValue] = None
    right_number: Optional[FeatureValue] = None
    right_pform: Optional[str] = None
    target_signs: tuple = ()
    message_id: str = ""
    solutions: tuple = ()
    detail: tuple = field(default=(), compare=False)

    def __post_init__(self):
        expected = severity_of(self.code)
        if not self.severity:
            object.__setattr__(self, "severity", expected)
        elif self.severity != expected:
            raise ValueError(f"{self.code} must have severity {expected}")
        if not self.message_id:
            object.__setattr__(self, "message_id", self.code.lower())

    @property
    def is_error(self) -> bool:
        return self.severity == "error"

    def info(self, key, default=None):
        return dict(self.detail).get(key, default)


# -- score initialisation -------------------------------------------------------

def _initial_track(value, inherent, domain):
    if value is None:
        return AgreementTrack.neutral(domain)
    if value.underspecified:
        return AgreementTrack(value, DEPENDENT_SCORE, value, 0)
    return AgreementTrack(value, CONTROLLER_SCORE if inherent else DEPENDENT_SCORE,
                          opposite(value), 0)


def init_scores(entry: LexEntry, index: int = -1, span=(0, 0), surface=None) -> Sign:
    """Lexical sign for ``entry`` with its initial agreement tracks.

    Only features the entry declares carry evidence; a finite verb, for
    instance, has a number track but a neutral gender track.
    """
    g = _initial_track(entry.gender, entry.inherent_gender, "gender")
    n = _initial_track(entry.number, entry.inherent_number, "number")
    return Sign(
        category=entry.category,
        gender_track=g,
        number_track=n,
        pform=entry.pform,
        animacy=entry.animacy,
        inherent_gender=entry.inherent_gender,
        lemma=entry.lemma,
        surface=surface if surface is not None else entry.surface,
        span=tuple(span),
        form=entry.form,
        index=index,
        gender_members=(index,) if entry.gender is not None else (),
        number_members=(index,) if entry.number is not None else (),
        entry=entry,
    )


def assign_via_template(inherent: bool) -> list[dict]:
    env = {"Inherentness_head": "yes" if inherent else "no"}
    return csolve.evaluate(csolve.canonical_templates()["assign"], env)


# -- percolation ------------------------------------------------------------------

def combine_tracks(head: AgreementTrack, dep: AgreementTrack) -> AgreementTrack:
    """Add a dependent's evidence to the head's track."""
    if head.h_value.domain != dep.h_value.domain:
        raise ValueError("tracks of different features")
    meet = unify_value(head.h_value, dep.h_value)
    if meet is not None:
        return AgreementTrack(meet, head.h_score + dep.h_score,
                              opposite(meet), head.m_score + dep.m_score)
    # dep carries the head's opposite value: cross addition
    return AgreementTrack(head.h_value, head.h_score + dep.m_score,
                          head.m_value, head.m_score + dep.h_score)


_PREFIX = {"gender": ("Gender", "GEN"), "number": ("Number", "NUM")}


def track_env(head: AgreementTrack, dep: AgreementTrack) -> dict:
    """Variable bindings the percolation solver reads for one feature.

    An underspecified head takes its value from a specific dependent before
    the solver runs; a head that stays underspecified has no anticipated
    opposite value, encoded as the atom ``none``.
    """
    domain = head.h_value.domain
    name, short = _PREFIX[domain]
    hv, hm = head.h_value, head.m_value
    if hv.underspecified and dep.h_value.specific:
        hv, hm = dep.h_value, opposite(dep.h_value)
    return {
        f"{name}_head_mother": hv,
        f"{name}_mod_head": hm if hv.specific else "none",
        f"{name}_mod": dep.h_value,
        f"H{short}_SCORE_HEAD": head.h_score,
        f"M{short}_SCORE_HEAD": head.m_score,
        f"H{short}_SCORE_MOD": dep.h_score,
        f"M{short}_SCORE_MOD": dep.m_score,
    }


def track_from_env(env: dict, domain: str) -> AgreementTrack:
    name, short = _PREFIX[domain]
    h = csolve.resolve(env, f"{name}_head_mother")
    m = csolve.resolve(env, f"{name}_mod_mother")
    hs = csolve.resolve(env, f"H{short}_SCORE_MOTHER")
    ms = csolve.resolve(env, f"M{short}_SCORE_MOTHER")
    if h is None or hs is None or ms is None or m is None:
        raise csolve.ConstraintError(f"percolation left the mother's {domain} track unbound")
    if not isinstance(m, FeatureValue):
        m = top(domain)
    return AgreementTrack(h, hs, m, ms)


def combine_via_template(head: AgreementTrack, dep: AgreementTrack) -> list[AgreementTrack]:
    """Every mother track the percolation solver admits, in solution order."""
    domain = head.h_value.domain
    expr = csolve.canonical_templates()[f"percolate_{domain}"]
    out = []
    for sol in csolve.evaluate(expr, track_env(head, dep)):
        t = track_from_env(sol, domain)
        if t not in out:
            out.append(t)
    return out


# -- final evaluation ---------------------------------------------------------------

def _rights(track: AgreementTrack):
    if track.h_score > track.m_score:
        return [track.h_value]
    if track.m_score > track.h_score:
        return [track.m_value]
    return [track.h_value, track.m_value]


def ertype(gender_track: AgreementTrack, number_track: AgreementTrack) -> Optional[str]:
    gen, num = gender_track.m_score > 0, number_track.m_score > 0
    if gen and num:
        return "gender_number"
    if gen:
        return "gender"
    if num:
        return "number"
    return None


def right_values(gender_track, number_track) -> list[tuple]:
    """(right_gender, right_number) pairs for the offending features only.

    Gender varies slowest; at most MAX_SOLUTIONS pairs.
    """
    kind = ertype(gender_track, number_track)
    if kind is None:
        return []
    gs = _rights(gender_track) if "gender" in kind else [None]
    ns = _rights(number_track) if "number" in kind else [None]
    return [(g, n) for g in gs for n in ns][:MAX_SOLUTIONS]


def evaluate_via_templates(gender_track, number_track):
    """(ERTYPE atom or None, right-value pairs) computed by the solvers."""
    t = csolve.canonical_templates()
    kinds = csolve.evaluate(t["ertype"], {"MGEN_SCORE_MOTHER": gender_track.m_score,
                                          "MNUM_SCORE_MOTHER": number_track.m_score})
    kind = csolve.resolve(kinds[0], "ERTYPE") if kinds else None
    if kind is None:
        return None, []
    env = {
        "HGEN_SCORE_NOUN": gender_track.h_score, "MGEN_SCORE_NOUN": gender_track.m_score,
        "Gender_Noun": gender_track.h_value, "Gender_Mod": gender_track.m_value,
        "HNUM_SCORE_NOUN": number_track.h_score, "MNUM_SCORE_NOUN": number_track.m_score,
        "Number_Noun": number_track.h_value, "Number_Mod": number_track.m_value,
    }
    pairs = []
    for sol in csolve.evaluate(t["evaluate"], env):
        rg = csolve.resolve(sol, "Right_Gender")
        rn = csolve.resolve(sol, "Right_Number")
        gs = ([rg] if rg is not None else [gender_track.h_value, gender_track.m_value]) \
            if "gender" in kind else [None]
        ns = ([rn] if rn is not None else [number_track.h_value, number_track.m_value]) \
            if "number" in kind else [None]
        pairs.extend((g, n) for g in gs for n in ns if (g, n) not in pairs)
    return kind, pairs[:MAX_SOLUTIONS]


def _leaf_index(sign: Sign) -> dict:
    return {leaf.index: leaf for leaf in sign.leaves()}


def _targets(leaves, members, attr, right):
    out = []
    for i in members:
        value = getattr(leaves[i], attr).h_value
        if value.specific and value != right:
            out.append(i)
    return out


def finalize(sign: Sign):
    """Diagnose the sign's agreement domain.

    Returns ``(diagnoses, solutions)``; both empty when every member agrees.
    """
    if sign.finalized:
        raise FinalizationError(f"{sign.category} sign at {sign.span} already finalized")
    g, n = sign.gender_track, sign.number_track
    kind = ertype(g, n)
    if kind is None:
        return [], []
    leaves = _leaf_index(sign)
    solutions = []
    for rg, rn in right_values(g, n):
        targets = []
        if rg is not None:
            targets += _targets(leaves, sign.gender_members, "gender_track", rg)
        if rn is not None:
            targets += _targets(leaves, sign.number_members, "number_track", rn)
        solutions.append(AgreementSolution(rg, rn, tuple(sorted(set(targets)))))
    members = set()
    if "gender" in kind:
        members |= set(sign.gender_members)
    if "number" in kind:
        members |= set(sign.number_members)
    unique_g = {s.right_gender for s in solutions}
    unique_n = {s.right_number for s in solutions}
    diag = Diagnosis(
        span=span_union(leaves[i].span for i in members),
        code=ERTYPE_CODES[kind],
        right_gender=unique_g.pop() if len(unique_g) == 1 else None,
        right_number=unique_n.pop() if len(unique_n) == 1 else None,
        target_signs=tuple(sorted({t for s in solutions for t in s.targets})),
        solutions=tuple(solutions),
    )
    return [diag], solutions


def finalized(sign: Sign) -> Sign:
    """Copy of ``sign`` marked final, carrying its agreement diagnoses."""
    diags, _ = finalize(sign)
    return sign.with_(finalized=True, diagnoses=sign.diagnoses + tuple(diags))


# -- pattern-list checks ----------------------------------------------------------

def check_pform(slot: SubcatSlot, observed, clausal: bool = False, span=(0, 0),
                targets=()) -> Optional[Diagnosis]:
    """None when ``observed`` heads the slot's list, a diagnosis when it is in the tail.

    Raises FrameMismatch when the preposition is not anticipated at all.
    """
    observed = getattr(observed, "value", observed)
    plist = slot.pform_list
    if observed == plist[0]:
        return None
    if observed not in plist[1:]:
        raise FrameMismatch(f"{observed} not in {plist}")
    right = plist[0]
    if observed != "none" and right != "none":
        code = "PREP_SUBST"
    elif observed == "none":
        code = "QUEISMO" if right == "de" and clausal else "PREP_OMIT"
    else:
        code = "DEQUEISMO" if observed == "de" and clausal else "PREP_ADD"
    return Diagnosis(span=tuple(span), code=code, right_pform=right, target_signs=tuple(targets),
                     detail=(("observed", observed),))


def check_personal_a(animacy_req, np_animacy: FeatureValue, observed, span=(0, 0),
                     targets=()) -> Optional[Diagnosis]:
    observed = getattr(observed, "value", observed)
    if np_animacy.value == "animate" and observed == "none":
        return Diagnosis(span=tuple(span), code="PERS_A_OMIT", right_pform="a",
                         target_signs=tuple(targets), detail=(("observed", observed),))
    if np_animacy.value == "inanimate" and observed == "a":
        return Diagnosis(span=tuple(span), code="PERS_A_ADD", right_pform="none",
                         target_signs=tuple(targets), detail=(("observed", observed),))
    return None


CONTRACTIONS = {"de": "del", "a": "al"}


def check_portmanteau(prep: Sign, det: Sign) -> Optional[Diagnosis]:
    p = prep.surface.lower()
    if prep.category != "prep" or det.category != "det" or p not in CONTRACTIONS:
        return None
    if det.surface.lower() != "el":
        return None
    return Diagnosis(span=span_union([prep.span, det.span]), code="PORTMANTEAU",
                     target_signs=(prep.index, det.index),
                     detail=(("replacement", CONTRACTIONS[p]),))


# -- style --------------------------------------------------------------------------

def count_style(root: Sign) -> dict:
    leaves = list(root.leaves())
    return {
        "passive": sum(node.rule == "passive" for node in root.nodes()),
        "gerund": sum(leaf.form == "ger" for leaf in leaves),
        "adverb": sum(leaf.category == "adv" and (
            leaf.surface.lower().endswith("mente")
            or getattr(leaf.entry, "style_flag", None) == "manner_adverb") for leaf in leaves),
    }


def style_scan(ls_list, config) -> list[Diagnosis]:
    out = []
    limits = {"passive": config.passive_max, "gerund": config.gerund_max,
              "adverb": config.adverb_max}
    for ls in ls_list:
        root = ls.root
        out.extend(d for d in root.all_diagnoses() if not d.is_error)
        for leaf in root.leaves():
            entry = leaf.entry
            if entry is not None and entry.style_flag in LEXICAL_STYLE_FLAGS:
                out.append(Diagnosis(span=leaf.span, code="STYLE_LEX", target_signs=(leaf.index,),
                                     message_id=f"style_{entry.style_flag}",
                                     detail=(("suggest", entry.suggest or ""),
                                             ("word", leaf.surface))))
        for kind, count in count_style(root).items():
            if count > limits[kind]:
                out.append(Diagnosis(span=root.span, code=f"STYLE_ABUSE_{kind.upper()}",
                                     detail=(("count", count), ("limit", limits[kind]))))
    return out


# -- messages -----------------------------------------------------------------------

def _alternatives(values) -> str:
    # solution order, first occurrence wins
    return "/".join(dict.fromkeys(str(v) for v in values if v))


class Messages:
    def __init__(self, table: dict):
        self.table = table

    @classmethod
    def load(cls, path=None) -> "Messages":
        if path is None:
            text = resources.files("relaxcheck").joinpath("data/messages.tsv").read_text(encoding="utf-8")
        else:
            text = Path(path).read_text(encoding="utf-8")
        table = {}
        for line in text.splitlines():
            if not line.strip() or line.startswith("#"):
                continue
            key, _, msg = line.partition("\t")
            table[key.strip()] = msg.strip()
        return cls(table)

    def render(self, diag: Diagnosis) -> str:
        template = self.table.get(diag.message_id) or self.table.get(diag.code.lower(), diag.code)
        values = {
            "right_gender": diag.right_gender or _alternatives(s.right_gender for s in diag.solutions),
            "right_number": diag.right_number or _alternatives(s.right_number for s in diag.solutions),
            "right_pform": diag.right_pform or "",
            **{k: v for k, v in diag.detail},
        }
        try:
            return template.format(**values)
        except (KeyError, IndexError):
            return template

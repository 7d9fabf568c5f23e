import pytest

from relaxcheck import grammar
from relaxcheck.grammar import CheckConfig, ConfigError, GrammarError, parse_pattern, parse_rules


def test_builtin_grammar_parses():
    rules = grammar.builtin_grammar()
    ids = {r.id for r in rules}
    assert {"np_det", "vp_comp", "portmanteau", "formal_comp_std", "formal_comp_adm"} <= ids
    assert all(sum(d.head for d in r.daughters) == 1 for r in rules)


def test_anticipation_rules_are_flagged():
    by_id = {r.id: r for r in grammar.builtin_grammar()}
    assert by_id["portmanteau"].anticipation
    assert by_id["noun_a_inf"].anticipation
    assert not by_id["np_det"].anticipation


def test_pattern_markers_and_restrictions():
    p = parse_pattern("prep[=de|=a]*")
    assert p.head and p.categories == ("prep",) and p.lemmas == frozenset({"=de", "=a"})
    q = parse_pattern("np|pp|comp_s")
    assert q.categories == ("np", "pp", "comp_s")
    r = parse_pattern("v:part^")
    assert r.form == "part" and r.controller
    with pytest.raises(GrammarError):
        parse_pattern("NP*")


def test_surface_versus_lemma_match(checker):
    from relaxcheck.diagnose import init_scores
    (la,) = checker.lexicon.lookup("la")
    sign = init_scores(la, 0, surface="la")
    assert parse_pattern("det[el]").matches(sign)
    assert not parse_pattern("det[=el]").matches(sign)


def test_satellites_are_mutually_exclusive():
    rules = grammar.builtin_grammar()
    std = {r.id for r in grammar.active_rules(rules, CheckConfig())}
    adm = {r.id for r in grammar.active_rules(rules, CheckConfig(sublanguage="administrative"))}
    assert "formal_comp_std" in std and "formal_comp_adm" not in std
    assert "formal_comp_adm" in adm and "formal_comp_std" not in adm


def test_unknown_sublanguage():
    with pytest.raises(ConfigError):
        CheckConfig(sublanguage="legal")


def test_macro_expansion():
    (rule,) = parse_rules("rule r core : np -> det~ n*^ { @agree }")
    assert rule.controller == 1 and rule.dependent == 0 and rule.head == 1


@pytest.mark.parametrize("text, msg", [
    ("rule r core : np -> det n { }", "head"),
    ("rule r core : np -> det* n* { }", "head"),
    ("rule r core : np -> det~ n* { }", "pairs"),
    ("rule r misc : np -> n* { }", "ruleset"),
    ("rule r core : np -> n* { and(=(X,a)) }", "r"),
    ("rule r core : np -> n* { }\nrule r core : np -> n* { }", "duplicate"),
    ("garbage rule r core : np -> n* { }", "unparseable"),
])
def test_malformed_rules(text, msg):
    with pytest.raises(GrammarError, match=msg):
        parse_rules(text)


def test_comments_are_ignored():
    rules = parse_rules("# a comment\nrule r core : np -> n* { }  # trailing\n")
    assert [r.id for r in rules] == ["r"]

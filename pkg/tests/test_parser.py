from relaxcheck.parser import Parser, parse, select, split_sentences, tokenize


def test_tokenize_keeps_character_offsets():
    text = "El chico, corre."
    toks = tokenize(text)
    assert [t.surface for t in toks] == ["El", "chico", ",", "corre", "."]
    assert all(text[t.span[0]:t.span[1]] == t.surface for t in toks)


def test_split_sentences():
    sents = split_sentences(tokenize("El chico corre. La casa es bonita.\nHoy"))
    assert [len(s) for s in sents] == [4, 5, 1]
    assert [s[0].sentence_index for s in sents] == [0, 1, 2]


def test_clean_sentence_parses_without_errors(checker):
    lss = checker.parser.parse(tokenize("La casa blanca es bonita."))
    assert lss
    best = select(lss)
    assert not best.errors and best.root.category == "s"


def test_np_utterance_carries_gender_diagnosis(checker):
    (ls,) = checker.parser.parse(tokenize("El casa."))
    assert [d.code for d in ls.errors] == ["AGR_GEN"]
    assert ls.root.category == "np"


def test_unknown_word_gives_no_parse(checker):
    toks = tokenize("El perro corre.")
    assert [t.surface for t in checker.parser.unknown_words(toks)] == ["perro"]
    assert checker.parser.parse(toks) == []


def test_no_spanning_edge(checker):
    assert checker.parser.parse(tokenize("casa el corre")) == []


def test_module_parse_function(checker):
    lss = parse(tokenize("El chico corre."), checker.rules, checker.lexicon)
    assert lss and not select(lss).errors


def test_select_prefers_fewer_errors(checker):
    # "Se acordó que ..." has an analysis per frame; the clausal one wins
    lss = checker.parser.parse(tokenize("Se acordó que tenía una reunión por la mañana."))
    assert len(lss) >= 1
    best = select(lss)
    assert [d.code for d in best.errors] == ["QUEISMO"]


def test_select_orders_by_errors_then_size(checker):
    a = checker.parser.parse(tokenize("el casa"))[0]
    b = checker.parser.parse(tokenize("la casa"))[0]
    assert select([a, b]) is b
    assert select([b, a]) is b


def test_personal_a(checker):
    assert not select(checker.parser.parse(tokenize("Los niños ven al profesor."))).errors
    codes = [d.code for d in select(checker.parser.parse(tokenize("Los niños ven el profesor."))).errors]
    assert codes == ["PERS_A_OMIT"]


def test_subject_verb_agreement(checker):
    best = select(checker.parser.parse(tokenize("Los chicos corre.")))
    (d,) = best.errors
    assert d.code == "AGR_NUM" and str(d.right_number) == "pl"


def test_parser_restricted_roots(checker):
    p = Parser(checker.rules, checker.lexicon, roots=("s",))
    assert p.parse(tokenize("el casa")) == []

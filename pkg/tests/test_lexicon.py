import pytest

from relaxcheck import lexicon as lexmod
from relaxcheck.fstruct import FEM, MASC, PL, SG
from relaxcheck.lexicon import Lexicon, LexiconError, SynthesisError, parse_record


def _write(tmp_path, *lines):
    p = tmp_path / "lex.tsv"
    p.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return p


def test_shipped_lexicon_is_valid(lexicon):
    assert lexmod.validate(lexicon) == []
    assert 100 <= len(list(lexicon.records)) <= 140


def test_paradigm_cells_expand_to_entries(lexicon):
    (la,) = lexicon.lookup("la")
    assert (la.lemma, la.gender, la.number) == ("el", FEM, SG)
    assert [e.lemma for e in lexicon.lookup("Casas")] == ["casa"]


def test_inflect_round_trip(lexicon):
    assert lexicon.inflect("el", "det", FEM, PL) == "las"
    assert lexicon.inflect("chico", "n", FEM, SG) == "chica"
    assert lexicon.inflect("correr", "v", MASC, PL) == "corren"
    with pytest.raises(SynthesisError):
        lexicon.inflect("nada", "n", MASC, SG)


def test_inherent_gender_and_frames(lexicon):
    (casa,) = lexicon.lookup("casa")
    assert casa.inherent_gender and casa.gender == FEM
    (rel,) = [e for e in lexicon.lookup("relacionan") if e.category == "v"]
    oblique = [s for s in rel.frames[0].slots if s.role == "oblique"][0]
    assert oblique.pform_list == ("con", "a") and oblique.correct_pform == "con"


def test_style_flags(lexicon):
    (m,) = lexicon.lookup("memorándum")
    assert m.style_flag == "latinism" and m.suggest == "memorando"


def test_prepositions_default_pform(lexicon):
    (con,) = lexicon.lookup("con")
    assert con.pform.value == "con"


def test_duplicate_pform_reported_with_line(tmp_path):
    p = _write(tmp_path, "# header",
               "ve\tver\tv\tnumber=sg;frame=subject:np:none:any|oblique:np:de,de:any")
    problems = lexmod.validate(lexmod.load(p))
    assert any("line 2" in x and "duplicate pform" in x for x in problems)


def test_missing_cell_reported(tmp_path):
    p = _write(tmp_path, "gato\tgato\tn\tgender=masc;number=sg;paradigm=msg:gato,fsg:gata,mpl:gatos")
    problems = lexmod.validate(lexmod.load(p))
    assert any("missing cell" in x and "fpl" in x for x in problems)


def test_inherent_needs_specific_gender(tmp_path):
    p = _write(tmp_path, "x\tx\tn\tgender=masc_fem;inherent=yes")
    assert any("inherent" in x for x in lexmod.validate(lexmod.load(p)))


@pytest.mark.parametrize("record", [
    "a\tb",
    "a\tb\tverb",
    "a\tb\tn\tgender=neuter",
    "a\tb\tn\tcolour=red",
    "a\tb\tn\tgender",
    "a\tb\tn\tflag=archaic",
])
def test_bad_records_raise(record):
    with pytest.raises(LexiconError):
        parse_record(record, 7)


def test_error_carries_line_number(tmp_path):
    p = _write(tmp_path, "el\tel\tdet", "x\tx\tnoun")
    with pytest.raises(LexiconError) as info:
        lexmod.load(p)
    assert "2" in str(info.value)


def test_duplicate_lines_last_wins(tmp_path, caplog):
    p = _write(tmp_path, "hoy\thoy\tadv", "hoy\thoy\tadv")
    lex = lexmod.load(p)
    assert len(lex.lookup("hoy")) == 1
    assert "duplicate" in caplog.text


def test_entry_without_paradigm_inflects_to_itself():
    e = parse_record("hoy\thoy\tadv")
    assert Lexicon.inflect_entry(e, MASC, SG) == "hoy"

import subprocess
import sys

import pytest

from relaxcheck.cli import ReportRecord, escape, main, read_annotated, unescape


def run(args, stdin="", env=None):
    proc = subprocess.run([sys.executable, "-m", "relaxcheck", *args], input=stdin,
                          capture_output=True, text=True, env=env)
    return proc.returncode, proc.stdout, proc.stderr


def test_clean_input_exit_0(capsys, monkeypatch, tmp_path):
    p = tmp_path / "in.txt"
    p.write_text("La casa blanca es bonita.\n", encoding="utf-8")
    assert main(["check", str(p), "--format", "records"]) == 0
    assert capsys.readouterr().out == ""


def test_error_exit_2_with_record(capsys, tmp_path):
    p = tmp_path / "in.txt"
    p.write_text("el casa", encoding="utf-8")
    assert main(["check", str(p), "--format", "records"]) == 2
    (line,) = capsys.readouterr().out.splitlines()
    rec = ReportRecord.from_line(line)
    assert (rec.code, rec.severity, rec.original, rec.corrections) == (
        "AGR_GEN", "error", "el casa", ("la casa",))
    assert (rec.start, rec.end) == (0, 7)


def test_latinism_exit_1(capsys, tmp_path):
    p = tmp_path / "in.txt"
    p.write_text("El memorándum es largo.", encoding="utf-8")
    assert main(["check", str(p), "--format", "records"]) == 1
    (line,) = capsys.readouterr().out.splitlines()
    assert ReportRecord.from_line(line).code == "STYLE_LEX"


def test_stdin_and_offsets_across_sentences():
    code, out, _ = run(["check", "--format", "records"], "La casa es bonita. Los chicos corre.\n")
    assert code == 2
    rec = ReportRecord.from_line(out.splitlines()[0])
    assert rec.sentence_index == 1 and rec.original == "Los chicos corre"
    assert rec.start == 19


def test_records_sorted_and_deterministic():
    text = "El memorándum es largo. la chico. el casa."
    first = run(["check", "--format", "records"], text)
    assert first == run(["check", "--format", "records"], text)
    recs = [ReportRecord.from_line(l) for l in first[1].splitlines()]
    assert recs == sorted(recs, key=lambda r: (r.sentence_index, r.start, r.code))
    assert recs[1].corrections == ("el chico.", "la chica.")


def test_no_corrections_flag():
    _, out, _ = run(["check", "--format", "records", "--no-corrections"], "el casa")
    assert ReportRecord.from_line(out.strip()).corrections == ()


def test_human_format():
    code, out, _ = run(["check"], "la chico")
    assert code == 2 and "AGR_GEN" in out and "-> el chico" in out and "-> la chica" in out


def test_unparsed_notice_is_not_an_error():
    code, out, _ = run(["check"], "El perro corre.")
    assert code == 0 and "unparsed" in out


def test_style_thresholds_flag():
    code, out, _ = run(["check", "--format", "records", "--style-thresholds", "2,2,0"],
                       "El chico corre rápidamente.")
    assert code == 1 and "STYLE_ABUSE_ADVERB" in out
    assert run(["check", "--style-thresholds", "x"], "")[0] == 3


def test_sublanguage_flag():
    text = "El profesor dice a efecto de que la tarea es importante."
    assert run(["check"], text)[0] == 1
    assert run(["check", "--sublanguage", "administrative"], text)[0] == 0


def test_missing_resource_exit_3(tmp_path):
    code, _, err = run(["check", "--lexicon", str(tmp_path / "nope.tsv")], "el casa")
    assert code == 3 and "nope.tsv" in err


def test_resource_directory_from_environment(tmp_path):
    import os
    env = {**os.environ, "RELAXCHECK_DATA": str(tmp_path)}
    code, _, err = run(["check"], "el casa", env=env)
    assert code == 3 and str(tmp_path) in err


@pytest.mark.parametrize("text", ["plain", "tab\there", "pipe|bar", "back\\slash", "new\nline"])
def test_escape_round_trip(text):
    assert unescape(escape(text)) == text


def test_record_round_trip():
    rec = ReportRecord(2, 5, 9, "AGR_NUM", "error", "a|b\tc", ("x y", "z|w"), "msg\\n")
    assert ReportRecord.from_line(rec.to_line()) == rec


def test_inject_is_deterministic(tmp_path):
    corpus = tmp_path / "c.txt"
    corpus.write_text("la casa\nLos alumnos relacionan la tarea con su conocimiento.\n"
                      "El perro corre.\n", encoding="utf-8")
    a = run(["inject", str(corpus), "--seed", "7"])
    b = run(["inject", str(corpus), "--seed", "7"])
    assert a == b and a[0] == 0
    assert len(a[1].splitlines()) == 2
    assert "line 3" in a[2]


def test_gender_flip_on_determiner(checker):
    from relaxcheck.inject import agreement_sites, apply_site
    ls = checker.check_text("la casa")[0].ls
    flips = [(apply_site(ls, s), s.code, s.klass) for s in agreement_sites(ls, checker.lexicon)
             if s.code == "AGR_GEN"]
    assert flips == [("el casa", "AGR_GEN", "favored")]


def test_inject_pform_swap(tmp_path):
    corpus = tmp_path / "c.txt"
    corpus.write_text("Los alumnos relacionan la tarea con su conocimiento.\n", encoding="utf-8")
    _, out, _ = run(["inject", str(corpus), "--kind", "pform"])
    assert out == ("Los alumnos relacionan la tarea con su conocimiento.\t"
                   "Los alumnos relacionan la tarea a su conocimiento.\tPREP_SUBST\tother\n")


def test_lexicon_validate(tmp_path):
    assert run(["lexicon-validate"])[0] == 0
    bad = tmp_path / "bad.tsv"
    bad.write_text("ve\tver\tv\tframe=subject:np:none:any|oblique:np:de,de:any\n", encoding="utf-8")
    code, out, _ = run(["lexicon-validate", str(bad)])
    assert code == 1 and "line 1" in out and "duplicate pform" in out


def test_corpus_runner(data_dir):
    code, out, _ = run(["corpus", str(data_dir / "worked_examples.txt")])
    assert code == 0 and "FAIL" not in out


def test_read_annotated(tmp_path):
    p = tmp_path / "a.txt"
    p.write_text("## header\nel casa\n#expect AGR_GEN\n#correct la casa\nla casa\n#expect none\n",
                 encoding="utf-8")
    assert read_annotated(p) == [("el casa", ["AGR_GEN"], ["la casa"]), ("la casa", [], [])]


def test_usage_error_exit_3():
    assert run(["frobnicate"])[0] == 3

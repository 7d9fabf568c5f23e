"""Command-line front end.

Exit status of ``check``: 0 clean, 1 style weaknesses only, 2 grammar
errors, 3 operational failure (missing resources, bad arguments).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import __version__
from . import lexicon as lexmod
from .checker import Checker, ResourceError, exit_status, resource_path
from .grammar import SUBLANGUAGES, CheckConfig, ConfigError, GrammarError
from .inject import KINDS, inject, read_corpus
from .lexicon import LexiconError

EXIT_FAILURE = 3

_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", "|": "\\p"}
_UNESCAPES = {"\\": "\\", "t": "\t", "n": "\n", "p": "|"}


def escape(text: str) -> str:
    return "".join(_ESCAPES.get(ch, ch) for ch in text)


def unescape(text: str) -> str:
    out, it = [], iter(text)
    for ch in it:
        out.append(_UNESCAPES.get(next(it, ""), "") if ch == "\\" else ch)
    return "".join(out)


@dataclass(frozen=True)
class ReportRecord:
    sentence_index: int
    start: int
    end: int
    code: str
    severity: str
    original: str
    corrections: tuple
    message: str

    def to_line(self) -> str:
        fields = [str(self.sentence_index), str(self.start), str(self.end), self.code,
                  self.severity, escape(self.original),
                  "|".join(escape(c) for c in self.corrections), escape(self.message)]
        return "\t".join(fields)

    @classmethod
    def from_line(cls, line: str) -> "ReportRecord":
        f = line.rstrip("\n").split("\t")
        if len(f) != 8:
            raise ValueError(f"expected 8 tab-separated fields, got {len(f)}")
        corr = tuple(unescape(c) for c in f[6].split("|")) if f[6] else ()
        return cls(int(f[0]), int(f[1]), int(f[2]), f[3], f[4], unescape(f[5]), corr,
                   unescape(f[7]))


def records(reports, text: str, checker: Checker, with_corrections=True) -> list[ReportRecord]:
    out = []
    for rep in reports:
        for d in rep.diagnoses:
            corr = ()
            if with_corrections and d.is_error:
                corr = tuple(c.corrected_text for c in rep.corrections
                             if any(a is d for a, _ in c.applied))
            out.append(ReportRecord(rep.index, d.span[0], d.span[1], d.code, d.severity,
                                    text[d.span[0]:d.span[1]], corr, checker.message(d)))
    return sorted(out, key=lambda r: (r.sentence_index, r.start, r.code))


def render_human(reports, text, checker, with_corrections=True) -> str:
    lines = []
    by_sentence = {}
    for rec in records(reports, text, checker, with_corrections):
        by_sentence.setdefault(rec.sentence_index, []).append(rec)
    for rep in reports:
        recs = by_sentence.get(rep.index, [])
        if not recs and not rep.notice:
            continue
        lines.append(f"sentence {rep.index + 1}: {rep.text}")
        if rep.notice:
            lines.append(f"  note: {rep.notice}")
        for rec in recs:
            lines.append(f"  {rec.start}-{rec.end} {rec.severity} {rec.code} "
                         f"\"{rec.original}\": {rec.message}")
            for c in rec.corrections:
                lines.append(f"    -> {c}")
        for d in rep.unsynthesizable:
            lines.append(f"  note: no correction could be synthesized for {d.code}")
    return "\n".join(lines) + ("\n" if lines else "")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FAILURE, f"{self.prog}: error: {message}\n")


def _thresholds(text: str):
    try:
        p, g, a = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected three integers p,g,a") from None
    if min(p, g, a) < 0:
        raise argparse.ArgumentTypeError("thresholds must be non-negative")
    return p, g, a


def _add_resources(p):
    p.add_argument("--sublanguage", choices=SUBLANGUAGES, default="standard")
    p.add_argument("--lexicon", help="lexicon file (default: $RELAXCHECK_DATA or shipped)")
    p.add_argument("--grammar", help="grammar rule file")
    p.add_argument("--messages", help="message catalogue")
    p.add_argument("--style-thresholds", type=_thresholds, metavar="P,G,A",
                   help="maximum passives, gerunds and -mente adverbs per sentence")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="relaxcheck", description="Spanish grammar and style checker.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="check a document")
    p.add_argument("input", nargs="?", default="-", help="input file, '-' for stdin")
    p.add_argument("--format", choices=("human", "records"), default="human")
    p.add_argument("--no-corrections", action="store_true")
    _add_resources(p)

    p = sub.add_parser("inject", help="write seeded error injections for a clean corpus")
    p.add_argument("corpus", nargs="?", help="one sentence per line (default: shipped)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kind", choices=KINDS, default="any")
    p.add_argument("-o", "--output", help="pairs file (default: stdout)")
    _add_resources(p)

    p = sub.add_parser("lexicon-validate", help="check lexicon invariants")
    p.add_argument("path", nargs="?")

    p = sub.add_parser("corpus", help="run an annotated test corpus")
    p.add_argument("path")
    _add_resources(p)
    return ap


def _checker(args) -> Checker:
    config = CheckConfig(sublanguage=args.sublanguage)
    if args.style_thresholds:
        config.passive_max, config.gerund_max, config.adverb_max = args.style_thresholds
    return Checker.from_paths(args.lexicon, args.grammar, args.messages, config)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_check(args) -> int:
    checker = _checker(args)
    text = _read_input(args.input)
    reports = checker.check_text(text)
    with_corr = not args.no_corrections
    if args.format == "records":
        for rec in records(reports, text, checker, with_corr):
            print(rec.to_line())
        for rep in reports:
            if rep.notice:
                print(f"sentence {rep.index + 1}: {rep.notice}", file=sys.stderr)
    else:
        sys.stdout.write(render_human(reports, text, checker, with_corr))
    return exit_status(reports)


def cmd_inject(args) -> int:
    checker = _checker(args)
    corpus = args.corpus or resource_path("clean_corpus.txt")
    injections, notices = inject(read_corpus(corpus), checker, args.seed, args.kind)
    for note in notices:
        print(note, file=sys.stderr)
    out = "".join(i.line() + "\n" for i in injections)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def cmd_lexicon_validate(args) -> int:
    path = resource_path("lexicon.tsv", args.path)
    problems = lexmod.validate(lexmod.load(path))
    for prob in problems:
        print(f"{path}: {prob}")
    if not problems:
        print(f"{path}: ok")
    return 1 if problems else 0


def read_annotated(path):
    """Items ``(sentence, expected codes, expected corrections)``."""
    items = []
    with open(path, encoding="utf-8") as fh:
        for n, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("##"):
                continue
            if line.startswith("#expect"):
                if not items:
                    raise ValueError(f"{path}:{n}: #expect before any sentence")
                codes = line[len("#expect"):].strip()
                items[-1][1] = [] if codes == "none" else [c.strip() for c in codes.split(",")]
            elif line.startswith("#correct"):
                if not items:
                    raise ValueError(f"{path}:{n}: #correct before any sentence")
                items[-1][2].append(line[len("#correct"):].strip())
            else:
                items.append([line, None, []])
    return [tuple(i) for i in items]


def run_annotated(checker: Checker, items):
    """Yield ``(sentence, ok, got codes, got corrections)``."""
    for sentence, codes, corr in items:
        reports = checker.check_text(sentence)
        got = sorted(d.code for r in reports for d in r.diagnoses)
        got_corr = [c.corrected_text for r in reports for c in r.corrections]
        ok = (codes is None or got == sorted(codes)) and (not corr or got_corr == corr)
        yield sentence, ok, got, got_corr


def cmd_corpus(args) -> int:
    checker = _checker(args)
    failed = 0
    for sentence, ok, got, corr in run_annotated(checker, read_annotated(args.path)):
        print(f"{'PASS' if ok else 'FAIL'}\t{sentence}\t{','.join(got) or 'none'}\t{' | '.join(corr)}")
        failed += not ok
    return 2 if failed else 0


COMMANDS = {"check": cmd_check, "inject": cmd_inject, "lexicon-validate": cmd_lexicon_validate,
            "corpus": cmd_corpus}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ResourceError, FileNotFoundError) as exc:
        print(f"relaxcheck: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except (LexiconError, GrammarError, ConfigError, ValueError) as exc:
        print(f"relaxcheck: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())

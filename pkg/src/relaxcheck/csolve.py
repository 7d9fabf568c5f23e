"""Constraint expressions over feature values, scores and lists.

Rules carry these expressions instead of hard-wired feature checks.  The
evaluator enumerates every solution environment depth-first, left branch
first, so an ``or`` whose branches both hold yields both bindings.

Text notation (Prolog-like)::

    and(E, E)  or(E, E)  =(T, T)  num_add(T, T, T)  num_gt(T, T)
    first(L, T)  member_tail(L, T)  @template_name

Terms starting with an upper-case letter or ``_`` are variables, other
identifiers are atoms, digits are integers and ``[a, b]`` is a list.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

from .fstruct import FeatureValue


class ConstraintError(Exception):
    pass


class NonGroundError(ConstraintError):
    """Arithmetic over a variable that is unbound or not an integer."""


class ConstraintSyntaxError(ConstraintError):
    pass


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


Term = Union[Var, str, int, tuple, FeatureValue]


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class Eq:
    a: Term
    b: Term


@dataclass(frozen=True)
class NumAdd:
    a: Term
    b: Term
    c: Term


@dataclass(frozen=True)
class NumGt:
    a: Term
    b: Term


@dataclass(frozen=True)
class First:
    lst: Term
    x: Term


@dataclass(frozen=True)
class MemberTail:
    lst: Term
    x: Term


@dataclass(frozen=True)
class TrueExpr:
    """The empty constraint."""


TRUE = TrueExpr()

Binding = Mapping[str, object]


# -- evaluation ---------------------------------------------------------------

def deref(term, env):
    while isinstance(term, Var) and term.name in env:
        term = env[term.name]
    return term


def _same(a, b) -> bool:
    # Bound feature values compare by identity; the explicit
    # underspecified-value tests in the templates depend on this.
    if isinstance(a, FeatureValue) and isinstance(b, str):
        return a.value == b
    if isinstance(b, FeatureValue) and isinstance(a, str):
        return b.value == a
    if isinstance(a, bool) or isinstance(b, bool):
        return a is b
    return type(a) == type(b) and a == b


def _unify(a, b, env):
    """Return the extended environment, or None on failure."""
    a, b = deref(a, env), deref(b, env)
    if isinstance(a, Var):
        if isinstance(b, Var) and a.name == b.name:
            return env
        return {**env, a.name: b}
    if isinstance(b, Var):
        return {**env, b.name: a}
    if isinstance(a, tuple) and isinstance(b, tuple):
        if len(a) != len(b):
            return None
        for x, y in zip(a, b):
            env = _unify(x, y, env)
            if env is None:
                return None
        return env
    return env if _same(a, b) else None


def _ground_int(term, env, op):
    value = deref(term, env)
    if isinstance(value, bool) or not isinstance(value, int):
        raise NonGroundError(f"{op}: {term} is not a ground integer (got {value!r})")
    return value


def _solve(expr, env):
    if isinstance(expr, TrueExpr):
        yield env
    elif isinstance(expr, And):
        for e1 in _solve(expr.left, env):
            yield from _solve(expr.right, e1)
    elif isinstance(expr, Or):
        yield from _solve(expr.left, env)
        yield from _solve(expr.right, env)
    elif isinstance(expr, Eq):
        out = _unify(expr.a, expr.b, env)
        if out is not None:
            yield out
    elif isinstance(expr, NumAdd):
        total = _ground_int(expr.a, env, "num_add") + _ground_int(expr.b, env, "num_add")
        out = _unify(expr.c, total, env)
        if out is not None:
            yield out
    elif isinstance(expr, NumGt):
        if _ground_int(expr.a, env, "num_gt") > _ground_int(expr.b, env, "num_gt"):
            yield env
    elif isinstance(expr, First):
        lst = _ground_list(expr.lst, env, "first")
        if lst:
            out = _unify(expr.x, lst[0], env)
            if out is not None:
                yield out
    elif isinstance(expr, MemberTail):
        for item in _ground_list(expr.lst, env, "member_tail")[1:]:
            out = _unify(expr.x, item, env)
            if out is not None:
                yield out
    else:
        raise ConstraintError(f"not a constraint expression: {expr!r}")


def _ground_list(term, env, op):
    value = deref(term, env)
    if not isinstance(value, tuple):
        raise ConstraintError(f"{op}: {term} is not bound to a list")
    return value


def _key(env):
    return tuple(sorted((k, _freeze(v)) for k, v in env.items()))


def _freeze(v):
    return (type(v).__name__, v)


def evaluate(expr, env: Binding | None = None) -> list[dict]:
    """All solution environments of ``expr`` extending ``env``.

    Duplicates are dropped, first occurrence kept.  An empty list means the
    constraint failed.
    """
    seen = set()
    out = []
    for sol in _solve(expr, dict(env or {})):
        k = _key(sol)
        if k not in seen:
            seen.add(k)
            out.append(sol)
    return out


def resolve(env: Binding, name: str):
    """Value bound to ``name`` after dereferencing, or None if unbound."""
    value = deref(Var(name), env)
    return None if isinstance(value, Var) else value


# -- text notation ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>-?\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<macro>@[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[(),\[\]=]))")

_ARITY = {"and": 2, "or": 2, "=": 2, "num_add": 3, "num_gt": 2, "first": 2, "member_tail": 2}
_BUILD = {"and": And, "or": Or, "=": Eq, "num_add": NumAdd, "num_gt": NumGt,
          "first": First, "member_tail": MemberTail}


def _tokenize(text):
    pos = 0
    text = text.rstrip()
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ConstraintSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind), pos))
        pos = m.end()
    return out


class _Reader:
    def __init__(self, text, macros):
        self.toks = _tokenize(text)
        self.i = 0
        self.macros = macros or {}

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, -1)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None:
            raise ConstraintSyntaxError("unexpected end of expression")
        if value is not None and tok[1] != value:
            raise ConstraintSyntaxError(f"expected {value!r} at {tok[2]}, got {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self):
        kind, value, pos = self.take()
        if kind == "macro":
            name = value[1:]
            if name not in self.macros:
                raise ConstraintSyntaxError(f"unknown template @{name}")
            return self.macros[name]
        if value not in _ARITY:
            raise ConstraintSyntaxError(f"unknown operator {value!r} at {pos}")
        self.take("(")
        args = []
        for n in range(_ARITY[value]):
            if n:
                self.take(",")
            args.append(self.expr() if value in ("and", "or") else self.term())
        self.take(")")
        return _BUILD[value](*args)

    def term(self):
        kind, value, pos = self.take()
        if kind == "num":
            return int(value)
        if kind == "name":
            return Var(value) if value[0].isupper() or value[0] == "_" else value
        if value == "[":
            items = []
            if self.peek()[1] != "]":
                items.append(self.term())
                while self.peek()[1] == ",":
                    self.take(",")
                    items.append(self.term())
            self.take("]")
            return tuple(items)
        raise ConstraintSyntaxError(f"unexpected {value!r} at {pos}")


def parse_expr(text: str, macros: Mapping[str, object] | None = None):
    """Parse the text notation.  Blank text is the trivially true constraint."""
    if not text.strip():
        return TRUE
    reader = _Reader(text, macros)
    expr = reader.expr()
    if reader.peek()[0] is not None:
        raise ConstraintSyntaxError(f"trailing input at {reader.peek()[2]}")
    return expr


def variables(expr) -> set[str]:
    if isinstance(expr, (And, Or)):
        return variables(expr.left) | variables(expr.right)
    if isinstance(expr, TrueExpr):
        return set()
    out = set()
    for term in vars(expr).values():
        if isinstance(term, Var):
            out.add(term.name)
        elif isinstance(term, tuple):
            out |= {t.name for t in term if isinstance(t, Var)}
    return out


# -- the schematic solvers ----------------------------------------------------

ASSIGN = """
and(=(Score_number_head,10),
  and(
    or(and(=(Inherentness_head,yes), =(Score_gender_head,50)),
       and(=(Inherentness_head,no), =(Score_gender_head,10))),
    =(Score_number_mod,0)))
"""

PERCOLATE_GENDER = """
or(
   and(or(=(Gender_head_mother,Gender_mod),
          =(Gender_mod,masc_fem)),
      and(num_add(MGEN_SCORE_HEAD,
                  MGEN_SCORE_MOD,
                  MGEN_SCORE_MOTHER),
         and(=(Gender_mod_head,Gender_mod_mother),
            num_add(HGEN_SCORE_HEAD,
                    HGEN_SCORE_MOD,
                    HGEN_SCORE_MOTHER)))),
   and(=(Gender_mod,Gender_mod_head),
      and(num_add(HGEN_SCORE_HEAD,
                  MGEN_SCORE_MOD,
                  HGEN_SCORE_MOTHER),
         and(=(Gender_mod_head,Gender_mod_mother),
            num_add(MGEN_SCORE_HEAD,
                    HGEN_SCORE_MOD,
                    MGEN_SCORE_MOTHER)))))
"""

FINAL_EVALUATION = """
and(
or(
    or(and(num_gt(HGEN_SCORE_NOUN,MGEN_SCORE_NOUN),
               =(Gender_Noun,Right_Gender)),
       and(num_gt(MGEN_SCORE_NOUN,HGEN_SCORE_NOUN),
               =(Gender_Mod,Right_Gender))),
    =(HGEN_SCORE_NOUN,MGEN_SCORE_NOUN)),
or(
    or(and(num_gt(HNUM_SCORE_NOUN,MNUM_SCORE_NOUN),
              =(Number_Noun,Right_Number)),
       and(num_gt(MNUM_SCORE_NOUN,HNUM_SCORE_NOUN),
              =(Number_Mod,Right_Number))),
    =(HNUM_SCORE_NOUN,MNUM_SCORE_NOUN)))
"""

ERTYPE = """
or(
   and(=(MNUM_SCORE_MOTHER,0),
       or(=(MGEN_SCORE_MOTHER,0),
          and(num_gt(MGEN_SCORE_MOTHER,0),
              =(ERTYPE,gender)))),
   and(num_gt(MNUM_SCORE_MOTHER,0),
       or(and(=(MGEN_SCORE_MOTHER,0),
              =(ERTYPE,number)),
          and(num_gt(MGEN_SCORE_MOTHER,0),
              =(ERTYPE,gender_number)))))
"""


def _number_version(text):
    return (text.replace("Gender_", "Number_").replace("GEN_", "NUM_")
            .replace("masc_fem", "sg_pl"))


_TEMPLATES = None


def canonical_templates() -> dict:
    """Name -> parsed expression for the schematic score solvers."""
    global _TEMPLATES
    if _TEMPLATES is None:
        _TEMPLATES = {
            "assign": parse_expr(ASSIGN),
            "percolate_gender": parse_expr(PERCOLATE_GENDER),
            "percolate_number": parse_expr(_number_version(PERCOLATE_GENDER)),
            "evaluate": parse_expr(FINAL_EVALUATION),
            "ertype": parse_expr(ERTYPE),
        }
        _TEMPLATES["agree"] = And(_TEMPLATES["percolate_gender"], _TEMPLATES["percolate_number"])
    return dict(_TEMPLATES)

"""Parser and printer for the representation-spec DSL.

Grammar (ASCII only):

    spec     := group "on" module ;
    group    := factor { "+" factor } ;
    factor   := NAME "(" INT ")" | "u1" "[" charges "]" ;
    module   := summand { "(+)" summand } ;
    summand  := term { "(x)" term } [ "*" ] [ "@" charges ] ;
    term     := "std" "(" INT ")" | "sym2" "(" INT ")" | "alt2" "(" INT ")"
              | "spin" "(" INT ")" | "triv" ;
    charges  := INT { "," INT } ;

The INT of a term is the 1-based factor index, "*" marks the dual summand,
and "@" assigns one integer charge per ambient torus circle.  Factor names
are su, so, sp, g2, f4, e6, e7, e8.  In pattern mode the INT slots may
carry arithmetic expressions over parameter names (used by the table
datasets); concrete parses reject symbols.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass

from .matrep import Factor, GroupSpec, RepSpec, Summand, Term


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


FACTOR_NAMES = ("su", "so", "sp", "g2", "f4", "e6", "e7", "e8")
TERM_NAMES = ("std", "sym2", "alt2", "spin", "triv")

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<oplus>\(\+\))|(?P<otimes>\(x\))|(?P<intdiv>//)"
    r"|(?P<name>[a-z][a-z0-9]*)"
    r"|(?P<int>-?\d+)|(?P<punct>[()\[\],@*+-])|(?P<bad>\S))"
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        pos = 0
        while pos < len(line):
            m = _TOKEN_RE.match(line, pos)
            if not m or m.end() == pos:
                break
            col = m.start(m.lastgroup) + 1
            if m.lastgroup == "bad":
                raise ParseError(f"unexpected character {m.group()!r}", lineno, col)
            toks.append(_Tok(m.lastgroup, m.group(m.lastgroup), lineno, col))
            pos = m.end()
    return toks


class IntExpr:
    """An integer slot: a literal, or an expression over named parameters."""

    __slots__ = ("text",)

    def __init__(self, text: str):
        self.text = text.strip()

    def is_literal(self) -> bool:
        try:
            int(self.text)
            return True
        except ValueError:
            return False

    def evaluate(self, env: dict[str, int]) -> int:
        return eval_int_expr(self.text, env)

    def __repr__(self):
        return f"IntExpr({self.text})"


_ALLOWED_AST = (
    ast.Expression,
    ast.BinOp,
    ast.UnaryOp,
    ast.Add,
    ast.Sub,
    ast.Mult,
    ast.FloorDiv,
    ast.Mod,
    ast.USub,
    ast.UAdd,
    ast.Constant,
    ast.Name,
    ast.Load,
    ast.Compare,
    ast.Eq,
    ast.NotEq,
    ast.Lt,
    ast.LtE,
    ast.Gt,
    ast.GtE,
    ast.BoolOp,
    ast.And,
    ast.Or,
    ast.Div,
)


def eval_int_expr(text: str, env: dict[str, int]) -> int:
    """Exact evaluation of a small integer/boolean expression."""
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"bad expression {text!r}: {exc}") from exc
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED_AST):
            raise ValueError(f"disallowed syntax in expression {text!r}")
        if isinstance(node, ast.Constant) and not isinstance(node.value, (int, bool)):
            raise ValueError(f"non-integer constant in {text!r}")
        if isinstance(node, ast.Name) and node.id not in env:
            raise ValueError(f"unknown parameter {node.id!r} in {text!r}")
        if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Div):
            raise ValueError("use // for division in integer expressions")
    value = eval(compile(tree, "<expr>", "eval"), {"__builtins__": {}}, dict(env))
    if isinstance(value, bool):
        return int(value)
    if not isinstance(value, int):
        raise ValueError(f"expression {text!r} is not integral")
    return value


def eval_condition(text: str, env: dict[str, int]) -> bool:
    """Evaluate a row condition like 'n >= 4 and a != b'."""
    if not text or text.strip() in ("", "-", "true"):
        return True
    return bool(eval_int_expr(text, env))


@dataclass(frozen=True)
class PatternTerm:
    kind: str
    factor: int


@dataclass(frozen=True)
class PatternSummand:
    terms: tuple[PatternTerm, ...]
    dual: bool
    charges: tuple[str, ...]


@dataclass(frozen=True)
class PatternSpec:
    """A parsed spec whose integer slots may still be symbolic."""

    factors: tuple[tuple[str, IntExpr], ...]
    torus_lines: tuple[tuple[str, ...], ...]
    summands: tuple[tuple[tuple[tuple[str, int], ...], bool, tuple[str, ...]], ...]

    def parameters(self) -> set[str]:
        names = set()
        for _, e in self.factors:
            names |= _names_in(e.text)
        for line in self.torus_lines:
            for c in line:
                names |= _names_in(c)
        for terms, _, charges in self.summands:
            for c in charges:
                names |= _names_in(c)
        return names

    def instantiate(self, env: dict[str, int]) -> tuple[GroupSpec, RepSpec]:
        factors = tuple(
            Factor(kind, eval_int_expr(e.text, env)) for kind, e in self.factors
        )
        lines = tuple(
            tuple(eval_int_expr(c, env) for c in line) for line in self.torus_lines
        )
        lines = tuple(_primitive(line) for line in lines)
        group = GroupSpec(factors=factors, torus_lines=lines)
        summands = []
        for terms, dual, charges in self.summands:
            tt = tuple(
                Term(kind, idx) if kind != "triv" else Term("triv")
                for kind, idx in terms
            )
            cc = tuple(eval_int_expr(c, env) for c in charges)
            summands.append(Summand(terms=tt, dual=dual, charges=cc))
        return group, RepSpec(summands=tuple(summands))


def _names_in(text: str) -> set[str]:
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError:
        return set()
    return {n.id for n in ast.walk(tree) if isinstance(n, ast.Name)}


def _primitive(line: tuple[int, ...]) -> tuple[int, ...]:
    from math import gcd

    g = 0
    for c in line:
        g = gcd(g, abs(c))
    if g > 1:
        return tuple(c // g for c in line)
    return line


class _Parser:
    def __init__(self, text: str, symbolic: bool):
        self.toks = _tokenize(text)
        self.pos = 0
        self.symbolic = symbolic
        self.text = text

    def _peek(self) -> _Tok | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def _fail(self, message: str):
        t = self._peek()
        if t is None:
            last_line = self.text.count("\n") + 1
            raise ParseError(message + " (at end of input)", last_line, 1)
        raise ParseError(message, t.line, t.col)

    def _take(self, kind: str, text: str | None = None) -> _Tok:
        t = self._peek()
        if t is None or t.kind != kind or (text is not None and t.text != text):
            want = text if text is not None else kind
            self._fail(f"expected {want!r}")
        self.pos += 1
        return t

    def _accept(self, kind: str, text: str | None = None) -> _Tok | None:
        t = self._peek()
        if t is not None and t.kind == kind and (text is None or t.text == text):
            self.pos += 1
            return t
        return None

    def _int_slot(self) -> IntExpr:
        # literal, or (in pattern mode) an expression until , ) ] or summand op
        t = self._peek()
        if t is None:
            self._fail("expected an integer")
        if not self.symbolic:
            if t.kind != "int":
                self._fail("expected an integer")
            self.pos += 1
            return IntExpr(t.text)
        parts = []
        depth = 0
        while True:
            t = self._peek()
            if t is None:
                break
            if t.kind in ("oplus", "otimes"):
                break
            if t.kind == "punct":
                if t.text in (",", "]") and depth == 0:
                    break
                if t.text == ")":
                    if depth == 0:
                        break
                    depth -= 1
                elif t.text == "(":
                    depth += 1
                elif t.text == "@":
                    break
            parts.append(t.text)
            self.pos += 1
        if not parts:
            self._fail("expected an integer or expression")
        return IntExpr(" ".join(parts))

    def parse(self) -> PatternSpec:
        if self._peek() is None:
            raise ParseError("empty specification", 1, 1)
        factors: list[tuple[str, IntExpr]] = []
        lines: list[tuple[str, ...]] = []
        while True:
            t = self._peek()
            if t is None or t.kind != "name":
                self._fail("expected a factor name")
            if t.text == "u1":
                self.pos += 1
                self._take("punct", "[")
                charges = [self._int_slot().text]
                while self._accept("punct", ","):
                    charges.append(self._int_slot().text)
                self._take("punct", "]")
                lines.append(tuple(charges))
            elif t.text in FACTOR_NAMES:
                self.pos += 1
                self._take("punct", "(")
                n = self._int_slot()
                self._take("punct", ")")
                factors.append((t.text, n))
            elif t.text == "on":
                self._fail("expected a factor before 'on'")
            else:
                self._fail(f"unknown factor name {t.text!r}")
            if self._accept("punct", "+"):
                continue
            break
        self._take("name", "on")
        summands = []
        while True:
            summands.append(self._summand())
            if self._accept("oplus"):
                continue
            break
        if self._peek() is not None:
            self._fail("trailing input")
        return PatternSpec(
            factors=tuple(factors),
            torus_lines=tuple(lines),
            summands=tuple(summands),
        )

    def _summand(self):
        terms = [self._term()]
        while self._accept("otimes"):
            terms.append(self._term())
        dual = self._accept("punct", "*") is not None
        charges: tuple[str, ...] = ()
        if self._accept("punct", "@"):
            cc = [self._int_slot().text]
            while self._accept("punct", ","):
                cc.append(self._int_slot().text)
            charges = tuple(cc)
        return tuple(terms), dual, charges

    def _term(self):
        t = self._peek()
        if t is None or t.kind != "name" or t.text not in TERM_NAMES:
            self._fail("expected a term (std/sym2/alt2/spin/triv)")
        self.pos += 1
        if t.text == "triv":
            return ("triv", 0)
        self._take("punct", "(")
        idx = self._int_slot()
        self._take("punct", ")")
        if not idx.is_literal():
            self._fail("factor index must be a literal integer")
        return (t.text, int(idx.text))


def parse_pattern(text: str) -> PatternSpec:
    """Parse a spec whose integer slots may be symbolic expressions."""
    return _Parser(text, symbolic=True).parse()


def parse_repspec(text: str) -> tuple[GroupSpec, RepSpec]:
    """Parse a concrete spec into a GroupSpec and RepSpec."""
    pattern = _Parser(text, symbolic=False).parse()
    return pattern.instantiate({})


def print_repspec(group: GroupSpec, rep: RepSpec) -> str:
    """Canonical ASCII form; parse(print(s)) round-trips."""
    parts = [f"{f.kind}({f.n})" for f in group.factors]
    parts += [
        "u1[" + ",".join(str(c) for c in line) + "]" for line in group.torus_lines
    ]
    sums = []
    for sm in rep.summands:
        ts = []
        for t in sm.terms:
            if t.kind == "triv":
                ts.append("triv")
            else:
                ts.append(f"{t.kind}({t.factor})")
        s = " (x) ".join(ts)
        if sm.dual:
            s += " *"
        if sm.charges:
            s += " @ " + ",".join(str(c) for c in sm.charges)
        sums.append(s)
    return " + ".join(parts) + " on " + " (+) ".join(sums)

"""Serialization of results: plain text, JSON, LaTeX bracket tables, golden files.

Text grammar (also accepted by :func:`from_text`)::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := "-" factor | atom ("^" int)?
    atom   := int | "u" | "b[" p "," q "](u" ("-" s)? ")" | "(" expr ")"

Golden files hold one term per line as ``coeff | k l m ; p r t |`` where the
bracket stands for ``b[p,k](u) * b[r,l](u-1) * b[t,m](u-2)``: the upper row
lists column indices, the lower row row indices, position ``i`` carries the
argument ``u - i + 1``.  Letters in a bracket are dummy indices summed over
``1..n``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from itertools import product
from pathlib import Path

from .freealg import AlgElem, GenSym, word_text
from .scalars import ONE, RatFunc, UPoly
from .scalars import to_text as rf_text

__all__ = [
    "ParseError",
    "to_text",
    "from_text",
    "to_json",
    "from_json",
    "to_latex",
    "GoldenFile",
    "parse_golden",
    "golden_to_alg",
    "write_golden",
    "golden_compare",
]


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


# -- text -------------------------------------------------------------------------


def to_text(S: AlgElem) -> str:
    if not S.terms:
        return "0"
    parts = []
    for w, c in S.items():
        parts.append(rf_text(c) if not w else f"{rf_text(c)} * {word_text(w)}")
    return " + ".join(parts)


_TOKEN = re.compile(
    r"\s*(?:(?P<gen>b\[\s*(\d+)\s*,\s*(\d+)\s*\]\(\s*u\s*(?:-\s*(\d+)\s*)?\))"
    r"|(?P<int>\d+)|(?P<u>u)|(?P<op>[-+*/^()]))"
)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, object, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
            start = m.start(m.lastgroup) if m.lastgroup else pos
            if m.group("gen"):
                self.toks.append(("gen", GenSym(int(m.group(2)), int(m.group(3)), int(m.group(4) or 0)), start))
            elif m.group("int"):
                self.toks.append(("int", int(m.group("int")), start))
            elif m.group("u"):
                self.toks.append(("u", None, start))
            else:
                self.toks.append(("op", m.group("op"), start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op: str):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse(self) -> AlgElem:
        out = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError("trailing input", pos)
        return out

    def expr(self) -> AlgElem:
        out = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                out = out + rhs if val == "+" else out - rhs
            else:
                return out

    def term(self) -> AlgElem:
        out = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.factor()
                if val == "*":
                    out = out * rhs
                else:
                    if set(rhs.terms) - {()} or not rhs.terms:
                        raise ParseError("division by a non-scalar or zero", pos)
                    out = out.scale(ONE / rhs.terms[()])
            else:
                return out

    def factor(self) -> AlgElem:
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, k, pos = self.take()
            if kind != "int":
                raise ParseError("expected integer exponent", pos)
            out = AlgElem.scalar(1)
            for _ in range(k):
                out = out * base
            return out
        return base

    def atom(self) -> AlgElem:
        kind, val, pos = self.take()
        if kind == "int":
            return AlgElem.scalar(val)
        if kind == "u":
            return AlgElem.scalar(UPoly((0, 1)))
        if kind == "gen":
            return AlgElem({(val,): 1})
        if kind == "op" and val == "(":
            out = self.expr()
            self.expect(")")
            return out
        raise ParseError("expected a number, u, a generator or '('", pos)


def from_text(s: str) -> AlgElem:
    """Parse the text form; raises :class:`ParseError` with a character position."""
    if not s.strip():
        raise ParseError("empty input", 0)
    return _Parser(s).parse()


def parse_ratfunc(s: str) -> RatFunc:
    a = from_text(s)
    if set(a.terms) - {()}:
        raise ValueError(f"{s!r} is not a scalar")
    return a.terms.get((), RatFunc(0))


# -- JSON ---------------------------------------------------------------------------


def _int_coeffs(c: RatFunc) -> tuple[list[int], list[int]]:
    L, _ = c.num.content()
    return [int(x * L) for x in c.num.coeffs], [L * int(x) for x in c.den.coeffs]


def to_json(result) -> bytes:
    """Deterministic JSON for an :class:`~sklyanin.sdetcore.SdetResult`.

    Polynomials are ascending coefficient lists of decimal strings.
    """
    terms = []
    for w, c in result.value.items():
        num, den = _int_coeffs(c)
        terms.append({
            "coeff": {"num": [str(x) for x in num], "den": [str(x) for x in den]},
            "word": [[g.p, g.q, g.shift] for g in w],
        })
    doc = {"n": result.n, "path": result.path, "terms": terms}
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode()


class SchemaError(ValueError):
    pass


def from_json(data: bytes | str):
    from .sdetcore import PATHS, SdetResult

    try:
        doc = json.loads(data)
        n, path, raw_terms = doc["n"], doc["path"], doc["terms"]
        if not isinstance(n, int) or n < 1:
            raise SchemaError("n must be a positive integer")
        if path not in PATHS:
            raise SchemaError(f"unknown path {path!r}")
        terms = {}
        for t in raw_terms:
            num = UPoly(int(x) for x in t["coeff"]["num"])
            den = UPoly(int(x) for x in t["coeff"]["den"])
            word = tuple(GenSym(int(p), int(q), int(s)) for p, q, s in t["word"])
            if word in terms:
                raise SchemaError(f"duplicate word {word_text(word)}")
            terms[word] = RatFunc(num, den)
    except SchemaError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"malformed sdet JSON: {exc}") from exc
    return SdetResult(n, path, AlgElem(terms))


# -- LaTeX --------------------------------------------------------------------------


def _poly_latex(coeffs: list[int]) -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else ("u" if k == 1 else f"u^{{{k}}}")
        mag = str(abs(c)) if (abs(c) != 1 or k == 0) else ""
        sign = "-" if c < 0 else ("+" if parts else "")
        parts.append(f"{sign}{mag}{mono}")
    return "".join(parts)


def ratfunc_latex(c: RatFunc) -> str:
    num, den = _int_coeffs(c)
    if den == [1]:
        return _poly_latex(num)
    return rf"\frac{{{_poly_latex(num)}}}{{{_poly_latex(den)}}}"


def bracket_latex(w) -> str:
    upper = "&".join(str(g.q) for g in w)
    lower = "&".join(str(g.p) for g in w)
    return rf"\left|\begin{{matrix}}{upper}\\{lower}\end{{matrix}}\right|"


def _check_shape(S: AlgElem, n: int) -> None:
    for w in S.terms:
        if len(w) != n or [g.shift for g in w] != list(range(n)):
            raise ValueError(f"word {word_text(w)} does not have the shape of an rank-{n} sdet term")


def to_latex(S: AlgElem, n: int) -> str:
    """Terms grouped by coefficient, each word as a two-row bracket."""
    _check_shape(S, n)
    groups: dict[RatFunc, list] = {}
    for w, c in S.items():
        groups.setdefault(c, []).append(w)
    lines = []
    for c, words in groups.items():
        brackets = " + ".join(bracket_latex(w) for w in words)
        if c == 1:
            lines.append(brackets)
            continue
        if len(words) > 1:
            brackets = rf"\left({brackets}\right)"
        coeff = ratfunc_latex(c)
        if c.den.deg == 0 and c.num.deg > 0:
            coeff = f"({coeff})"
        lines.append(f"{coeff}{brackets}")
    return "\n+ ".join(lines) if lines else "0"


# -- golden files -------------------------------------------------------------------


@dataclass(frozen=True)
class GoldenFile:
    n: int
    terms: tuple[tuple[str, str], ...]  # (coefficient text, bracket text)


_BRACKET = re.compile(r"^\|(?P<upper>[^;|]*);(?P<lower>[^;|]*)\|$")


def parse_golden(text: str) -> GoldenFile:
    n = None
    terms = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            m = re.fullmatch(r"n\s*=?\s*(\d+)", line)
            if not m:
                raise ValueError(f"line {lineno}: expected the header 'n <rank>'")
            n = int(m.group(1))
            continue
        if "|" not in line:
            raise ValueError(f"line {lineno}: expected 'coeff | upper ; lower |'")
        cut = line.index("|")
        coeff, bracket = line[:cut].strip() or "1", line[cut:].strip()
        if not _BRACKET.match(bracket):
            raise ValueError(f"line {lineno}: malformed bracket {bracket!r}")
        terms.append((coeff, bracket))
    if n is None:
        raise ValueError("golden file has no header")
    return GoldenFile(n, tuple(terms))


def _bracket_words(bracket: str, n: int) -> list[tuple]:
    m = _BRACKET.match(bracket)
    upper, lower = m.group("upper").split(), m.group("lower").split()
    if len(upper) != n or len(lower) != n:
        raise ValueError(f"bracket {bracket!r} does not have {n} columns")
    dummies = sorted({x for x in upper + lower if not x.isdigit()})
    words = []
    for vals in product(range(1, n + 1), repeat=len(dummies)):
        env = dict(zip(dummies, vals))
        get = lambda x: int(x) if x.isdigit() else env[x]
        words.append(tuple(GenSym(get(p), get(q), i) for i, (q, p) in enumerate(zip(upper, lower))))
    return words


def golden_to_alg(g: GoldenFile) -> AlgElem:
    acc: dict = {}
    for coeff, bracket in g.terms:
        c = parse_ratfunc(coeff)
        for w in _bracket_words(bracket, g.n):
            acc[w] = acc.get(w, RatFunc(0)) + c
    return AlgElem(acc)


def write_golden(S: AlgElem, n: int, header: str = "") -> str:
    _check_shape(S, n)
    lines = [f"# {l}" for l in header.splitlines()] + [f"n {n}"]
    for w, c in S.items():
        upper = " ".join(str(g.q) for g in w)
        lower = " ".join(str(g.p) for g in w)
        lines.append(f"{rf_text(c)} | {upper} ; {lower} |")
    return "\n".join(lines) + "\n"


@dataclass
class GoldenReport:
    path: str
    match: bool
    detail: str = ""


def golden_compare(S: AlgElem, path) -> GoldenReport:
    """Structural comparison of ``S`` with a golden file; reports every differing word."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"golden file {path} not found")
    try:
        expected = golden_to_alg(parse_golden(path.read_text()))
    except (ValueError, KeyError) as exc:
        raise ValueError(f"corrupt golden file {path}: {exc}") from exc
    if expected == S:
        return GoldenReport(str(path), True)
    diffs = []
    for w in sorted(set(expected.terms) | set(S.terms)):
        a, b = S.coeff(w), expected.coeff(w)
        if a != b:
            diffs.append(f"{word_text(w)}: computed {rf_text(a)}, golden {rf_text(b)}")
    return GoldenReport(str(path), False, "; ".join(diffs))

"""Text grammar, parser, and printers (text, LaTeX, JSON) for expressions.

Grammar (whitespace-insensitive, explicit '*', LL(1)):

    expr    := term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := atom ('^' nonneg-integer)? | '-' factor | '(' expr ')'
    atom    := 'theta' | 'phi' | 'x' | 'y' | 'dtheta' | 'dphi'
             | 'pth' | 'pph' | 'h' | 'hp' | 'i' | rational
    rational:= integer ('/' positive-integer)?

'dtheta' and 'dphi' are aliases of 'x' and 'y' (differentials); the
derivatives are spelled 'pth' and 'pph' to keep the two notions apart.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .algebra import Expr, Gen, Word
from .scalars import GaussianRational, ParamScalar

JSON_VERSION = 1

_ATOM_GENS = {
    "theta": Gen.THETA,
    "phi": Gen.PHI,
    "x": Gen.X,
    "y": Gen.Y,
    "dtheta": Gen.X,
    "dphi": Gen.Y,
    "pth": Gen.PTH,
    "pph": Gen.PPH,
}

_ATOM_SCALARS = {
    "h": ParamScalar.h,
    "hp": ParamScalar.hp,
    "i": ParamScalar.i,
}


class ParseError(ValueError):
    """Structured parse diagnostic with a character position."""

    def __init__(self, message: str, position: int):
        super().__init__("%s (at position %d)" % (message, position))
        self.message = message
        self.position = position


@dataclass
class _Token:
    kind: str   # 'name', 'int', or a punctuation character
    text: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z]+)|(?P<int>\d+)|(?P<punct>[-+*/^()]))")


def _tokenize(s: str) -> List[_Token]:
    tokens = []
    pos = 0
    while pos < len(s):
        m = _TOKEN_RE.match(s, pos)
        if not m:
            stripped = s[pos:].lstrip()
            if not stripped:
                break
            raise ParseError("unexpected character %r" % stripped[0],
                             len(s) - len(stripped))
        if m.lastgroup == "name":
            tokens.append(_Token("name", m.group("name"), m.start("name")))
        elif m.lastgroup == "int":
            tokens.append(_Token("int", m.group("int"), m.start("int")))
        else:
            tokens.append(_Token(m.group("punct"), m.group("punct"), m.start("punct")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.idx = 0

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.idx] if self.idx < len(self.tokens) else None

    def next(self) -> Optional[_Token]:
        tok = self.peek()
        if tok is not None:
            self.idx += 1
        return tok

    def fail(self, message: str):
        tok = self.peek()
        raise ParseError(message, tok.pos if tok else len(self.text))

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek() is not None:
            self.fail("trailing input")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            tok = self.peek()
            if tok and tok.kind in "+-":
                self.next()
                rhs = self.term()
                e = e + rhs if tok.kind == "+" else e - rhs
            else:
                return e

    def term(self) -> Expr:
        e = self.factor()
        while True:
            tok = self.peek()
            if tok and tok.kind == "*":
                self.next()
                e = e * self.factor()
            else:
                return e

    def factor(self) -> Expr:
        tok = self.peek()
        if tok is None:
            self.fail("expected a factor")
        if tok.kind == "-":
            self.next()
            return -self.factor()
        if tok.kind == "(":
            self.next()
            e = self.expr()
            closing = self.peek()
            if closing is None or closing.kind != ")":
                self.fail("expected ')'")
            self.next()
            base = e
        else:
            base = self.atom()
        tok = self.peek()
        if tok and tok.kind == "^":
            self.next()
            exp_tok = self.peek()
            if exp_tok and exp_tok.kind == "-":
                raise ParseError("negative exponent", exp_tok.pos)
            if exp_tok is None or exp_tok.kind != "int":
                self.fail("expected a nonnegative integer exponent")
            self.next()
            power = int(exp_tok.text)
            acc = Expr.unit()
            for _ in range(power):
                acc = acc * base
            return acc
        return base

    def atom(self) -> Expr:
        tok = self.next()
        if tok is None:
            raise ParseError("expected an atom", len(self.text))
        if tok.kind == "name":
            if tok.text in _ATOM_GENS:
                return Expr.word(_ATOM_GENS[tok.text])
            if tok.text in _ATOM_SCALARS:
                return Expr.scalar(_ATOM_SCALARS[tok.text]())
            raise ParseError("unknown identifier %r" % tok.text, tok.pos)
        if tok.kind == "int":
            num = int(tok.text)
            nxt = self.peek()
            if nxt and nxt.kind == "/":
                self.next()
                den_tok = self.peek()
                if den_tok is None or den_tok.kind != "int":
                    self.fail("expected a denominator")
                self.next()
                den = int(den_tok.text)
                if den == 0:
                    raise ParseError("zero denominator", den_tok.pos)
                return Expr.scalar(Fraction(num, den))
            return Expr.scalar(Fraction(num))
        raise ParseError("unexpected token %r" % tok.text, tok.pos)


def parse(s: str) -> Expr:
    return _Parser(s).parse()


# -- printing --------------------------------------------------------------

def _word_key(word: Word):
    return (len(word), tuple(int(g) for g in word))


def _frac_text(f: Fraction) -> str:
    return str(f)


def _monomial_pieces(coeff: GaussianRational, a: int, b: int) -> Tuple[int, List[str]]:
    """One h^a hp^b monomial with a real-or-imaginary coefficient, as
    (sign, factor list); complex coefficients are handled by the caller."""
    pieces = []
    if coeff.im:
        sign = 1 if coeff.im > 0 else -1
        mag = abs(coeff.im)
        if mag != 1:
            pieces.append(_frac_text(mag))
        pieces.append("i")
    else:
        sign = 1 if coeff.re > 0 else -1
        mag = abs(coeff.re)
        if mag != 1:
            pieces.append(_frac_text(mag))
    if a:
        pieces.append("h" if a == 1 else "h^%d" % a)
    if b:
        pieces.append("hp" if b == 1 else "hp^%d" % b)
    return sign, pieces


def _scalar_standalone(s: ParamScalar) -> str:
    """A ParamScalar as a self-contained parseable string."""
    if not s.terms:
        return "0"
    bits = []
    for (a, b) in sorted(s.terms):
        coeff = s.terms[(a, b)]
        if coeff.re and coeff.im:
            inner = "(%s + %s)" % (
                _signed_join([(1 if coeff.re > 0 else -1,
                               [_frac_text(abs(coeff.re))] if abs(coeff.re) != 1 else ["1"])]),
                _signed_join([(1 if coeff.im > 0 else -1,
                               ([_frac_text(abs(coeff.im))] if abs(coeff.im) != 1 else []) + ["i"])]),
            )
            body = [inner]
            if a:
                body.append("h" if a == 1 else "h^%d" % a)
            if b:
                body.append("hp" if b == 1 else "hp^%d" % b)
            bits.append((1, body))
        else:
            sign, pieces = _monomial_pieces(coeff, a, b)
            bits.append((sign, pieces or ["1"]))
    return _signed_join(bits)


def _signed_join(bits: List[Tuple[int, List[str]]]) -> str:
    out = []
    for idx, (sign, pieces) in enumerate(bits):
        body = "*".join(pieces) if pieces else "1"
        if idx == 0:
            out.append("-" + body if sign < 0 else body)
        else:
            out.append(("- " if sign < 0 else "+ ") + body)
    return " ".join(out)


def _coeff_for_term(s: ParamScalar) -> Tuple[int, Optional[str]]:
    """Coefficient of a word as (sign, prefix-or-None); None means 1."""
    if len(s.terms) == 1:
        ((a, b), coeff), = s.terms.items()
        if not (coeff.re and coeff.im):
            sign, pieces = _monomial_pieces(coeff, a, b)
            return sign, "*".join(pieces) if pieces else None
    return 1, "(%s)" % _scalar_standalone(s)


def to_text(e: Expr) -> str:
    if not e.terms:
        return "0"
    bits = []
    for word in sorted(e.terms, key=_word_key):
        sign, prefix = _coeff_for_term(e.terms[word])
        pieces = [] if prefix is None else [prefix]
        pieces.extend(g.token for g in word)
        bits.append((sign, pieces))
    return _signed_join(bits)


_LATEX_TOKENS = {
    Gen.Y: "y",
    Gen.X: "x",
    Gen.THETA: r"\theta",
    Gen.PHI: r"\phi",
    Gen.PTH: r"\partial_\theta",
    Gen.PPH: r"\partial_\phi",
}


def _frac_latex(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    num, den = abs(f.numerator), f.denominator
    text = r"\frac{%d}{%d}" % (num, den)
    return "-" + text if f < 0 else text


def _scalar_latex(s: ParamScalar) -> str:
    if not s.terms:
        return "0"
    parts = []
    for idx, (a, b) in enumerate(sorted(s.terms)):
        coeff = s.terms[(a, b)]
        if coeff.re and coeff.im:
            body = "(%s %s %s i)" % (
                _frac_latex(coeff.re),
                "+" if coeff.im > 0 else "-",
                _frac_latex(abs(coeff.im)),
            )
            sign = "+"
        elif coeff.im:
            sign = "+" if coeff.im > 0 else "-"
            mag = abs(coeff.im)
            body = ("" if mag == 1 else _frac_latex(mag)) + " i"
        else:
            sign = "+" if coeff.re > 0 else "-"
            mag = abs(coeff.re)
            body = _frac_latex(mag) if (mag != 1 or (a == 0 and b == 0)) else ""
        if a:
            body += " h" if a == 1 else " h^{%d}" % a
        if b:
            body += " h'" if b == 1 else " h'^{%d}" % b
        body = body.strip()
        if idx == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append("%s %s" % (sign, body))
    return " ".join(parts)


def to_latex(e: Expr) -> str:
    if not e.terms:
        return "0"
    parts = []
    for idx, word in enumerate(sorted(e.terms, key=_word_key)):
        coeff = e.terms[word]
        coeff_text = _scalar_latex(coeff)
        word_text = r" ".join(_LATEX_TOKENS[g] for g in word)
        if coeff_text == "1" and word:
            body, sign = word_text, "+"
        elif coeff_text == "-1" and word:
            body, sign = word_text, "-"
        elif len(coeff.terms) > 1:
            body = "(%s)" % coeff_text + (" " + word_text if word else "")
            sign = "+"
        else:
            sign = "-" if coeff_text.startswith("-") else "+"
            body = coeff_text.lstrip("-")
            if word:
                body += " " + word_text
        if idx == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append("%s %s" % (sign, body))
    return " ".join(parts)


def _gauss_json(g: GaussianRational) -> str:
    return "%s%s%s i" % (g.re, "+" if g.im >= 0 else "-", abs(g.im))


_GAUSS_JSON_RE = re.compile(
    r"^(?P<re>-?\d+(?:/\d+)?)(?P<sign>[+-])(?P<im>\d+(?:/\d+)?) i$"
)


def _gauss_from_json(text: str) -> GaussianRational:
    m = _GAUSS_JSON_RE.match(text)
    if not m:
        raise ValueError("malformed coefficient string %r" % text)
    im = Fraction(m.group("im"))
    if m.group("sign") == "-":
        im = -im
    return GaussianRational(Fraction(m.group("re")), im)


def to_json_obj(e: Expr) -> dict:
    terms = []
    for word in sorted(e.terms, key=_word_key):
        coeff = e.terms[word]
        coeff_map = {
            "(%d,%d)" % key: _gauss_json(coeff.terms[key])
            for key in sorted(coeff.terms)
        }
        terms.append({"coeff": coeff_map, "word": [g.token for g in word]})
    return {"version": JSON_VERSION, "terms": terms}


def to_json(e: Expr) -> str:
    return json.dumps(to_json_obj(e), sort_keys=True)


_KEY_RE = re.compile(r"^\((\d+),(\d+)\)$")


def from_json_obj(obj: dict) -> Expr:
    if obj.get("version") != JSON_VERSION:
        raise ValueError("unsupported schema version %r" % obj.get("version"))
    tokens = {g.token: g for g in Gen}
    out = Expr.zero()
    for item in obj["terms"]:
        word = tuple(tokens[name] for name in item["word"])
        coeff_terms = {}
        for key, value in item["coeff"].items():
            m = _KEY_RE.match(key)
            if not m:
                raise ValueError("malformed exponent key %r" % key)
            coeff_terms[(int(m.group(1)), int(m.group(2)))] = _gauss_from_json(value)
        out = out + Expr({word: ParamScalar(coeff_terms)})
    return out


def from_json(s: str) -> Expr:
    return from_json_obj(json.loads(s))

"""Free graded algebra on the six generators: words, terms, parity, subalgebras."""

from __future__ import annotations

import enum
from typing import Dict, Iterable, Tuple

from .scalars import ParamScalar, _as_scalar


class Gen(enum.IntEnum):
    """Generators in canonical rank order (rewrite targets are ascending words)."""

    Y = 0
    X = 1
    THETA = 2
    PHI = 3
    PTH = 4   # derivative with respect to theta
    PPH = 5   # derivative with respect to phi

    @property
    def parity(self) -> int:
        return 0 if self in (Gen.Y, Gen.X) else 1

    @property
    def token(self) -> str:
        return _TOKENS[self]


_TOKENS = {
    Gen.Y: "y",
    Gen.X: "x",
    Gen.THETA: "theta",
    Gen.PHI: "phi",
    Gen.PTH: "pth",
    Gen.PPH: "pph",
}

Word = Tuple[Gen, ...]
EMPTY_WORD: Word = ()


def parity(word: Word) -> int:
    """Mod-2 parity of a word: sum of letter parities."""
    return sum(g.parity for g in word) % 2


class SubalgebraTag(enum.Enum):
    COORDINATES = frozenset({Gen.THETA, Gen.PHI})
    DIFFERENTIALS = frozenset({Gen.Y, Gen.X})
    DERIVATIVES = frozenset({Gen.PTH, Gen.PPH})
    COORDINATES_AND_DIFFERENTIALS = frozenset({Gen.THETA, Gen.PHI, Gen.Y, Gen.X})
    COORDINATES_AND_DERIVATIVES = frozenset({Gen.THETA, Gen.PHI, Gen.PTH, Gen.PPH})
    FULL = frozenset(Gen)


class DomainError(ValueError):
    """Input lies outside the subalgebra an operator is defined on."""


class Expr:
    """Finite sum of scalar-weighted words; the free (unreduced) algebra element."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Word, ParamScalar] = None):
        clean = {}
        if terms:
            for word, coeff in terms.items():
                coeff = ParamScalar.coerce(coeff)
                if coeff:
                    clean[tuple(word)] = coeff
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Expr":
        return Expr()

    @staticmethod
    def unit() -> "Expr":
        return Expr({EMPTY_WORD: ParamScalar.one()})

    @staticmethod
    def word(*letters: Gen) -> "Expr":
        return Expr({tuple(letters): ParamScalar.one()})

    @staticmethod
    def scalar(s) -> "Expr":
        return Expr({EMPTY_WORD: ParamScalar.coerce(s)})

    # -- module structure --------------------------------------------------

    def __add__(self, other):
        other = _as_expr(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            acc = terms.get(word, ParamScalar.zero()) + coeff
            if acc:
                terms[word] = acc
            else:
                terms.pop(word, None)
        out = Expr.__new__(Expr)
        out.terms = terms
        return out

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_expr(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_expr(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        out = Expr.__new__(Expr)
        out.terms = {word: -coeff for word, coeff in self.terms.items()}
        return out

    def __mul__(self, other):
        """Free product: bilinear extension of word concatenation."""
        other = _as_expr(other)
        if other is None:
            return NotImplemented
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                acc = terms.get(word, ParamScalar.zero()) + c1 * c2
                if acc:
                    terms[word] = acc
                else:
                    terms.pop(word, None)
        out = Expr.__new__(Expr)
        out.terms = terms
        return out

    def __rmul__(self, other):
        other = _as_expr(other)
        if other is None:
            return NotImplemented
        return other * self

    # -- structure ---------------------------------------------------------

    def subst_params(self, target: str, replacement) -> "Expr":
        """Apply a parameter substitution to every coefficient."""
        return Expr({w: c.subst(target, replacement) for w, c in self.terms.items()})

    def letters(self) -> Iterable[Gen]:
        for word in self.terms:
            yield from word

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = _as_expr(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((w, c) for w, c in self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "Expr(0)"
        bits = []
        for word in sorted(self.terms, key=lambda w: (len(w), w)):
            name = "*".join(g.token for g in word) or "1"
            bits.append("(%r)%s" % (self.terms[word], name))
        return "Expr(%s)" % " + ".join(bits)


def _as_expr(x):
    if isinstance(x, Expr):
        return x
    scalar = _as_scalar(x)
    if scalar is not None:
        return Expr({EMPTY_WORD: scalar})
    return None


def free_mul(a: Expr, b: Expr) -> Expr:
    return a * b


def in_subalgebra(e: Expr, tag: SubalgebraTag) -> bool:
    """True iff every letter of every word of e lies in the tag's generator set."""
    allowed = tag.value
    return all(g in allowed for g in e.letters())


# Generator atoms, handy as building blocks.
Y_ = Expr.word(Gen.Y)
X_ = Expr.word(Gen.X)
THETA_ = Expr.word(Gen.THETA)
PHI_ = Expr.word(Gen.PHI)
PTH_ = Expr.word(Gen.PTH)
PPH_ = Expr.word(Gen.PPH)

"""Differential operators: exterior derivative, partial derivatives, twist map."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .algebra import DomainError, Expr, Gen, SubalgebraTag, in_subalgebra, parity
from .rewrite import RuleTable, normalize
from .rmatrix import rhat

_D_IMAGE = {
    Gen.THETA: Expr.word(Gen.X),
    Gen.PHI: Expr.word(Gen.Y),
    Gen.X: Expr.zero(),
    Gen.Y: Expr.zero(),
}

_DERIV_GEN = {1: Gen.PTH, 2: Gen.PPH}
_COORD_GEN = {1: Gen.THETA, 2: Gen.PHI}


def exterior_d(e: Expr, table: RuleTable = None) -> Expr:
    """Graded-Leibniz exterior derivative, normalized.

    Defined on words in the coordinates and differentials only; each letter
    contributes with the sign (-1)**parity(prefix).
    """
    if not in_subalgebra(e, SubalgebraTag.COORDINATES_AND_DIFFERENTIALS):
        raise DomainError("exterior derivative is not defined on derivative letters")
    out = Expr.zero()
    for word, coeff in e.terms.items():
        for pos, letter in enumerate(word):
            image = _D_IMAGE[letter]
            if image.is_zero():
                continue
            sign = -1 if parity(word[:pos]) else 1
            piece = Expr({word[:pos]: coeff * sign}) * image * Expr.word(*word[pos + 1:])
            out = out + piece
    return normalize(out, table)


def _drop_derivative_words(e: Expr) -> Expr:
    kept = {
        w: c
        for w, c in e.terms.items()
        if not any(g in (Gen.PTH, Gen.PPH) for g in w)
    }
    return Expr(kept)


def partial(i: int, f: Expr, table: RuleTable = None) -> Expr:
    """Partial derivative of a coordinate polynomial, by vacuum projection:

    normalize(deriv_i * f) and keep only the words free of derivative letters.
    """
    if i not in (1, 2):
        raise ValueError("partial index must be 1 or 2")
    if not in_subalgebra(f, SubalgebraTag.COORDINATES):
        raise DomainError("partial derivatives act on coordinate polynomials only")
    moved = normalize(Expr.word(_DERIV_GEN[i]) * f, table)
    return _drop_derivative_words(moved)


def partial_by_recursion(i: int, f: Expr) -> Expr:
    """Independent evaluation of the same derivative, expanding the exchange
    relation letter by letter instead of rewriting; used as a cross-check."""
    if not in_subalgebra(f, SubalgebraTag.COORDINATES):
        raise DomainError("partial derivatives act on coordinate polynomials only")
    r = rhat()
    out = Expr.zero()
    for word, coeff in f.terms.items():
        out = out + coeff * _partial_word(i, word, r)
    return out


def _partial_word(i: int, word, r) -> Expr:
    if not word:
        return Expr.zero()
    j = 1 if word[0] == Gen.THETA else 2
    rest = word[1:]
    out = Expr.word(*rest) if i == j else Expr.zero()
    for l in (1, 2):
        for k in (1, 2):
            coeff = r.entry(j, l, i, k)
            if coeff:
                out = out - coeff * (Expr.word(_COORD_GEN[k]) * _partial_word(l, rest, r))
    return out


def o_map(l: int, i: int, g: Gen, table: RuleTable = None) -> Expr:
    """Twist of a coordinate generator appearing in the deformed Leibniz rule."""
    if g not in (Gen.THETA, Gen.PHI):
        raise DomainError("the twist map is defined on coordinate generators only")
    j = 1 if g == Gen.THETA else 2
    r = rhat()
    out = Expr.zero()
    for k in (1, 2):
        out = out + r.entry(j, l, i, k) * Expr.word(_COORD_GEN[k])
    return normalize(out, table)


@dataclass
class Eq16Residual:
    i: int
    j: int
    residual: Expr


def derive_eq16_check(table: RuleTable = None) -> List[Eq16Residual]:
    """Check that moving a derivative past a coordinate generator matches the
    matrix form delta - sum R Theta dTheta, for all four index pairs."""
    r = rhat()
    out = []
    for i in (1, 2):
        for j in (1, 2):
            rhs = Expr.unit() if i == j else Expr.zero()
            for l in (1, 2):
                for k in (1, 2):
                    rhs = rhs - r.entry(j, l, i, k) * Expr.word(
                        _COORD_GEN[k], _DERIV_GEN[l]
                    )
            lhs = Expr.word(_DERIV_GEN[i], _COORD_GEN[j])
            out.append(Eq16Residual(i, j, normalize(lhs - rhs, table)))
    return out

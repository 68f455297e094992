"""Normal-ordering rewrite engine: the 19-rule table, normalization, critical pairs.

Rules rewrite a descending or repeated adjacent pair into a combination of
strictly smaller words (fewer rank inversions / repeated odd letters, or
shorter), so exhaustive application terminates; a fuel bound guards the loop
anyway.  Normal words have the shape y^a x^b theta^e phi^d pth^m pph^n with
e, d, m, n in {0, 1}.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .algebra import Expr, Gen, Word
from .scalars import H, HP, ParamScalar

DEFAULT_FUEL = 5_000_000
FUEL_ENV = "HPLANE_FUEL"

RulePattern = Tuple[Gen, Gen]


class FuelExhausted(RuntimeError):
    """Normalization exceeded its rewrite-step bound (internal error)."""

    def __init__(self, expr, fuel):
        super().__init__(
            "normalization did not finish within %d steps on %r" % (fuel, expr)
        )
        self.expr = expr
        self.fuel = fuel


class RuleTable:
    """Oriented length-2 rewrite rules keyed by their left-hand pair."""

    __slots__ = ("rules",)

    def __init__(self, rules: Dict[RulePattern, Expr]):
        for (a, b), rhs in rules.items():
            if (a, b) != (b, a) and a < b:
                raise ValueError("rule %s%s is not descending or repeated" % (a, b))
        self.rules = dict(rules)

    def substituted(self, target: str, replacement) -> "RuleTable":
        """Same table with a parameter substitution applied to every right side."""
        return RuleTable(
            {pat: rhs.subst_params(target, replacement) for pat, rhs in self.rules.items()}
        )


def _w(*gens: Gen) -> Expr:
    return Expr.word(*gens)


def _build_default_rules() -> Dict[RulePattern, Expr]:
    Y, X, TH, PH, PT, PP = Gen.Y, Gen.X, Gen.THETA, Gen.PHI, Gen.PTH, Gen.PPH
    one = Expr.unit()
    rules: Dict[RulePattern, Expr] = {}

    # (a) coordinates
    rules[(TH, TH)] = H * _w(TH, PH)
    rules[(PH, PH)] = Expr.zero()
    rules[(PH, TH)] = -_w(TH, PH)

    # (b) differentials
    rules[(X, Y)] = _w(Y, X) + HP * _w(Y, Y)

    # (c) coordinates with differentials
    rules[(TH, X)] = _w(X, TH) - H * _w(X, PH) + H * _w(Y, TH) + H * HP * _w(Y, PH)
    rules[(TH, Y)] = _w(Y, TH) + HP * _w(Y, PH)
    rules[(PH, X)] = _w(X, PH) - HP * _w(Y, PH)
    rules[(PH, Y)] = _w(Y, PH)

    # (d) derivatives with coordinates
    rules[(PT, TH)] = one - _w(TH, PT) + H * _w(PH, PT)
    rules[(PT, PH)] = -_w(PH, PT)
    rules[(PP, TH)] = (
        -_w(TH, PP) - H * _w(TH, PT) - HP * _w(PH, PP) - H * HP * _w(PH, PT)
    )
    rules[(PP, PH)] = one - _w(PH, PP) + HP * _w(PH, PT)

    # (e) derivatives
    rules[(PT, PT)] = Expr.zero()
    rules[(PP, PP)] = HP * _w(PT, PP)
    rules[(PP, PT)] = -_w(PT, PP)

    # (f) derivatives with differentials
    rules[(PT, X)] = _w(X, PT) - H * _w(Y, PT)
    rules[(PT, Y)] = _w(Y, PT)
    # The x*pth and y*pph coefficients here are forced by local confluence and
    # by the matrix form of the exchange relations (see relations_equiv_check).
    rules[(PP, X)] = (
        _w(X, PP) + H * _w(X, PT) + HP * _w(Y, PP) + H * HP * _w(Y, PT)
    )
    rules[(PP, Y)] = _w(Y, PP) - HP * _w(Y, PT)
    return rules


_DEFAULT_TABLE: Optional[RuleTable] = None


def default_table() -> RuleTable:
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        _DEFAULT_TABLE = RuleTable(_build_default_rules())
    return _DEFAULT_TABLE


def _default_fuel() -> int:
    raw = os.environ.get(FUEL_ENV)
    return int(raw) if raw else DEFAULT_FUEL


def _find_redex(word: Word, rules, strategy: str) -> Optional[int]:
    indices = range(len(word) - 1)
    if strategy == "rightmost":
        indices = reversed(indices)
    elif strategy != "leftmost":
        raise ValueError("unknown strategy %r" % strategy)
    for i in indices:
        if (word[i], word[i + 1]) in rules:
            return i
    return None


def is_normal(word: Word, table: RuleTable = None) -> bool:
    rules = (table or default_table()).rules
    return _find_redex(word, rules, "leftmost") is None


def normalize(e: Expr, table: RuleTable = None, strategy: str = "leftmost",
              fuel: int = None) -> Expr:
    """Reduce every word of e to normal form, combining like terms each pass."""
    table = table or default_table()
    rules = table.rules
    if fuel is None:
        fuel = _default_fuel()
    cur = dict(e.terms)
    steps = 0
    while True:
        nxt: Dict[Word, ParamScalar] = {}
        changed = False
        for word, coeff in cur.items():
            i = _find_redex(word, rules, strategy)
            if i is None:
                acc = nxt.get(word)
                nxt[word] = coeff if acc is None else acc + coeff
                continue
            changed = True
            steps += 1
            if steps > fuel:
                raise FuelExhausted(e, fuel)
            head, tail = word[:i], word[i + 2:]
            for rhs_word, rhs_coeff in rules[(word[i], word[i + 1])].terms.items():
                new_word = head + rhs_word + tail
                acc = nxt.get(new_word)
                new_coeff = coeff * rhs_coeff if acc is None else acc + coeff * rhs_coeff
                nxt[new_word] = new_coeff
        cur = {w: c for w, c in nxt.items() if c}
        if not changed:
            out = Expr.__new__(Expr)
            out.terms = cur
            return out


@dataclass
class CriticalPair:
    """A length-3 overlap reducible at two positions, with both outcomes."""

    overlap: Word
    left_result: Expr
    right_result: Expr

    @property
    def residual(self) -> Expr:
        return self.left_result - self.right_result

    @property
    def resolved(self) -> bool:
        return self.left_result == self.right_result


def _reduce_at(word: Word, pos: int, table: RuleTable) -> Expr:
    rhs = table.rules[(word[pos], word[pos + 1])]
    out = Expr.zero()
    for rhs_word, rhs_coeff in rhs.terms.items():
        out = out + Expr({word[:pos] + rhs_word + word[pos + 2:]: rhs_coeff})
    return out


def critical_pairs(table: RuleTable = None) -> List[CriticalPair]:
    """All overlaps a*b*c where both (a,b) and (b,c) are rule patterns."""
    table = table or default_table()
    pairs = []
    patterns = sorted(table.rules)
    for (a, b) in patterns:
        for (b2, c) in patterns:
            if b2 != b:
                continue
            overlap = (a, b, c)
            left = normalize(_reduce_at(overlap, 0, table), table)
            right = normalize(_reduce_at(overlap, 1, table), table)
            pairs.append(CriticalPair(overlap, left, right))
    return pairs


@dataclass
class ConfluenceReport:
    pairs: List[CriticalPair]

    @property
    def passed(self) -> bool:
        return all(p.resolved for p in self.pairs)

    @property
    def failures(self) -> List[CriticalPair]:
        return [p for p in self.pairs if not p.resolved]


def check_local_confluence(table: RuleTable = None) -> ConfluenceReport:
    return ConfluenceReport(critical_pairs(table))

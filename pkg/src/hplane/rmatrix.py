"""The C(t) matrix family, the fixed R-hat, their identities, and the rule-table audit.

Index convention (pinned by the audit below, which re-derives group (d) of the
rule table from the quadratic matrix relations): a four-index entry M^{ab}_{cd}
lives at row (a,b), column (c,d), pairs flattened in the order 11, 12, 21, 22.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Expr, Gen, Word
from .rewrite import RuleTable, default_table, is_normal, normalize
from .scalars import GaussianRational, H, HP, ParamScalar

_PAIR_INDEX = {(1, 1): 0, (1, 2): 1, (2, 1): 2, (2, 2): 3}
_COORD = {1: Gen.THETA, 2: Gen.PHI}
_DIFF = {1: Gen.X, 2: Gen.Y}
_DERIV = {1: Gen.PTH, 2: Gen.PPH}


class PairMatrix:
    """4x4 matrix of ParamScalar entries acting on pair indices."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ValueError("PairMatrix needs 4x4 entries")
        self.rows = [[ParamScalar.coerce(x) for x in row] for row in rows]

    def entry(self, a: int, b: int, c: int, d: int) -> ParamScalar:
        """Entry M^{ab}_{cd}: row (a,b), column (c,d)."""
        return self.rows[_PAIR_INDEX[(a, b)]][_PAIR_INDEX[(c, d)]]

    def __eq__(self, other):
        return isinstance(other, PairMatrix) and self.rows == other.rows

    def __matmul__(self, other: "PairMatrix") -> "PairMatrix":
        return PairMatrix(_mat_mul(self.rows, other.rows))

    @staticmethod
    def identity() -> "PairMatrix":
        one, zero = ParamScalar.one(), ParamScalar.zero()
        return PairMatrix([[one if i == j else zero for j in range(4)] for i in range(4)])

    def __repr__(self):
        return "PairMatrix(%r)" % (self.rows,)


def _mat_mul(a, b):
    n = len(a)
    return [
        [sum((a[i][k] * b[k][j] for k in range(n)), ParamScalar.zero()) for j in range(n)]
        for i in range(n)
    ]


def _mat_eq(a, b):
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def build_c(t) -> PairMatrix:
    """The one-parameter consistency family C(t); build_c(0) is R-hat."""
    t = ParamScalar.coerce(t)
    one = ParamScalar.one()
    zero = ParamScalar.zero()
    return PairMatrix([
        [one, (t - one) * H, (one - t) * H, (one - t) * H * HP],
        [zero, t, one - t, (one - t) * HP],
        [zero, one - t, t, (t - one) * HP],
        [zero, zero, zero, one],
    ])


_RHAT: Optional[PairMatrix] = None


def rhat() -> PairMatrix:
    global _RHAT
    if _RHAT is None:
        _RHAT = build_c(0)
    return _RHAT


# -- matrix identities -----------------------------------------------------

@dataclass
class MatrixCheck:
    name: str
    passed: bool
    detail: str = ""


def involutive_check(m: PairMatrix) -> MatrixCheck:
    """Does m squared equal the identity, symbolically?"""
    passed = (m @ m) == PairMatrix.identity()
    return MatrixCheck("involutive", passed)


def _tensor_left(m: PairMatrix):
    """m acting on the first pair of an 8-dim triple space: m (x) id_2."""
    zero = ParamScalar.zero()
    out = [[zero] * 8 for _ in range(8)]
    for i in range(4):
        for j in range(4):
            for k in range(2):
                out[2 * i + k][2 * j + k] = m.rows[i][j]
    return out


def _tensor_right(m: PairMatrix):
    """id_2 (x) m."""
    zero = ParamScalar.zero()
    out = [[zero] * 8 for _ in range(8)]
    for k in range(2):
        for i in range(4):
            for j in range(4):
                out[4 * k + i][4 * k + j] = m.rows[i][j]
    return out


def braid_check(m: PairMatrix) -> MatrixCheck:
    """(m x 1)(1 x m)(m x 1) = (1 x m)(m x 1)(1 x m), symbolically on 8x8."""
    a = _tensor_left(m)
    b = _tensor_right(m)
    lhs = _mat_mul(_mat_mul(a, b), a)
    rhs = _mat_mul(_mat_mul(b, a), b)
    return MatrixCheck("braid", _mat_eq(lhs, rhs))


# -- rule-table interplay --------------------------------------------------

def coordinate_differential_rules(c: PairMatrix) -> Dict[Tuple[Gen, Gen], Expr]:
    """Group-(c) rules read off the exchange relation with matrix c:

    coordinate_i * differential_j -> sum_{k,l} c^{ij}_{kl} differential_k * coordinate_l
    """
    rules = {}
    for i in (1, 2):
        for j in (1, 2):
            rhs = Expr.zero()
            for k in (1, 2):
                for l in (1, 2):
                    rhs = rhs + c.entry(i, j, k, l) * Expr.word(_DIFF[k], _COORD[l])
            rules[(_COORD[i], _DIFF[j])] = rhs
    return rules


def table_with_c(t) -> RuleTable:
    """Default table with group (c) rebuilt from C(t); groups (a), (b) kept."""
    rules = dict(default_table().rules)
    rules.update(coordinate_differential_rules(build_c(t)))
    return RuleTable(rules)


@dataclass
class TScanEntry:
    t: object
    residuals: Dict[Word, Expr]
    passed: bool


def t_consistency_scan(ts: Sequence) -> List[TScanEntry]:
    """Probe consistency of the C(t) exchange rules on the paper's cubic words.

    For each t the words theta*phi*x and phi*theta*x are normalized by the
    leftmost and rightmost strategies under the variant table; a nonzero
    difference witnesses inconsistency of that t.
    """
    words = [
        (Gen.THETA, Gen.PHI, Gen.X),
        (Gen.PHI, Gen.THETA, Gen.X),
    ]
    out = []
    for t in ts:
        table = table_with_c(t)
        residuals = {}
        for word in words:
            e = Expr.word(*word)
            residuals[word] = normalize(e, table, "leftmost") - normalize(
                e, table, "rightmost"
            )
        out.append(TScanEntry(t, residuals, all(r.is_zero() for r in residuals.values())))
    return out


@dataclass
class RelationInstance:
    relation: str          # which matrix relation family
    indices: Tuple[int, int]
    lhs_word: Word
    residual: Expr         # normalize(lhs - rhs)
    rule_pattern: Optional[Tuple[Gen, Gen]]  # table rule with the same lhs, if any
    rhs_matches_rule: bool


@dataclass
class EquivReport:
    instances: List[RelationInstance] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.bijective and all(
            inst.residual.is_zero() and inst.rhs_matches_rule for inst in self.instances
        )

    @property
    def bijective(self) -> bool:
        hit = [inst.rule_pattern for inst in self.instances if inst.rule_pattern]
        return sorted(hit) == sorted(default_table().rules)


def relations_equiv_check(table: RuleTable = None, r: PairMatrix = None) -> EquivReport:
    """Expand every matrix-form relation on generator pairs against the rule table.

    Covers the six families: the coordinate/differential exchange relation,
    the coordinate and differential quadratic relations, the derivative-on-
    coordinate relation, the derivative quadratic relation, and the
    derivative/differential exchange relation.  Together their 24 instances
    reproduce each of the 19 rules exactly once (5 instances land on already
    normal words).
    """
    table = table or default_table()
    r = r or rhat()
    report = EquivReport()

    def add(relation, idx, lhs_word, rhs_expr):
        lhs = Expr.word(*lhs_word)
        residual = normalize(lhs - rhs_expr, table)
        pattern = tuple(lhs_word) if tuple(lhs_word) in table.rules else None
        if pattern:
            matches = table.rules[pattern] == normalize(rhs_expr, table)
        else:
            matches = normalize(rhs_expr, table) == Expr.word(*lhs_word)
        report.instances.append(
            RelationInstance(relation, idx, tuple(lhs_word), residual, pattern, matches)
        )

    for i in (1, 2):
        for j in (1, 2):
            # coordinate exchange with differentials (group c)
            rhs = Expr.zero()
            for k in (1, 2):
                for l in (1, 2):
                    rhs = rhs + r.entry(i, j, k, l) * Expr.word(_DIFF[k], _COORD[l])
            add("coord-diff", (i, j), (_COORD[i], _DIFF[j]), rhs)

            # coordinate quadratic (group a)
            rhs = Expr.zero()
            for k in (1, 2):
                for l in (1, 2):
                    rhs = rhs - r.entry(i, j, k, l) * Expr.word(_COORD[k], _COORD[l])
            add("coord-coord", (i, j), (_COORD[i], _COORD[j]), rhs)

            # differential quadratic (group b)
            rhs = Expr.zero()
            for k in (1, 2):
                for l in (1, 2):
                    rhs = rhs + r.entry(i, j, k, l) * Expr.word(_DIFF[k], _DIFF[l])
            add("diff-diff", (i, j), (_DIFF[i], _DIFF[j]), rhs)

            # derivative on coordinate (group d): note the index roles swap
            rhs = Expr.unit() if i == j else Expr.zero()
            for l in (1, 2):
                for k in (1, 2):
                    rhs = rhs - r.entry(j, l, i, k) * Expr.word(_COORD[k], _DERIV[l])
            add("deriv-coord", (i, j), (_DERIV[i], _COORD[j]), rhs)

            # derivative quadratic (group e): lower-index access is transposed
            rhs = Expr.zero()
            for k in (1, 2):
                for l in (1, 2):
                    rhs = rhs - r.entry(k, l, j, i) * Expr.word(_DERIV[l], _DERIV[k])
            add("deriv-deriv", (i, j), (_DERIV[i], _DERIV[j]), rhs)

            # derivative exchange with differentials (group f)
            rhs = Expr.zero()
            for k in (1, 2):
                for l in (1, 2):
                    rhs = rhs + r.entry(j, k, i, l) * Expr.word(_DIFF[l], _DERIV[k])
            add("deriv-diff", (i, j), (_DERIV[i], _DIFF[j]), rhs)

    return report

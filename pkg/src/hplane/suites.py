"""Named verification suites behind `verify`: every identity the calculus
states, checked exactly, with deterministic machine-readable reports."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from . import calculus, frontend, rmatrix, star
from .algebra import Expr, Gen, SubalgebraTag, in_subalgebra
from .rewrite import RuleTable, check_local_confluence, default_table, is_normal, normalize
from .scalars import GaussianRational, ParamScalar

SEED = 97_08  # fixed so reports are identical across runs


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: str = "0"


@dataclass
class SuiteReport:
    suite: str
    checks: List[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, residual: Expr = None):
        text = "0" if residual is None else frontend.to_text(residual)
        self.checks.append(CheckResult(name, passed, text))

    def add_zero(self, name: str, residual: Expr):
        self.add(name, residual.is_zero(), residual)

    def finish(self) -> "SuiteReport":
        self.checks.sort(key=lambda c: c.name)
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_obj(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [
                {"name": c.name, "pass": c.passed, "residual": c.residual}
                for c in self.checks
            ],
            "pass": self.passed,
        }


# -- random expression generation -----------------------------------------

_COEFF_POOL = None


def _coeff_pool():
    global _COEFF_POOL
    if _COEFF_POOL is None:
        base = [
            ParamScalar.const(n) for n in (1, -1, 2, -2, 3)
        ] + [
            ParamScalar.const(Fraction(1, 2)),
            ParamScalar.const(Fraction(-2, 3)),
            ParamScalar.i(),
            ParamScalar.h(),
            ParamScalar.hp(),
            ParamScalar.h() * ParamScalar.hp(),
            ParamScalar.one() + ParamScalar.h(),
        ]
        _COEFF_POOL = base
    return _COEFF_POOL


def random_expr(rng: random.Random, max_len: int = 6, n_terms: int = 3,
                gens: Sequence[Gen] = tuple(Gen)) -> Expr:
    """Small random element of the free algebra, for property checks."""
    e = Expr.zero()
    for _ in range(n_terms):
        length = rng.randint(0, max_len)
        word = tuple(rng.choice(gens) for _ in range(length))
        e = e + Expr({word: rng.choice(_coeff_pool())})
    return e


# -- individual suites -----------------------------------------------------

def run_confluence(n_random: int = 1000, max_len: int = 6) -> SuiteReport:
    report = SuiteReport("confluence")
    table = default_table()

    conf = check_local_confluence(table)
    report.add(
        "critical_pairs_resolve(%d)" % len(conf.pairs),
        conf.passed,
        conf.failures[0].residual if conf.failures else None,
    )

    rng = random.Random(SEED)
    mismatches = 0
    idempotence_bad = 0
    shape_bad = 0
    for _ in range(n_random):
        e = random_expr(rng, max_len=max_len)
        left = normalize(e, table, "leftmost")
        right = normalize(e, table, "rightmost")
        if left != right:
            mismatches += 1
        if normalize(left, table) != left:
            idempotence_bad += 1
        if not all(is_normal(w, table) for w in left.terms):
            shape_bad += 1
    report.add("strategy_independence(%d)" % n_random, mismatches == 0)
    report.add("idempotence(%d)" % n_random, idempotence_bad == 0)
    report.add("normal_form_shape(%d)" % n_random, shape_bad == 0)

    rng = random.Random(SEED + 1)
    hom_bad = 0
    for _ in range(200):
        a = random_expr(rng, max_len=3)
        b = random_expr(rng, max_len=3)
        if normalize(a * b, table) != normalize(
            normalize(a, table) * normalize(b, table), table
        ):
            hom_bad += 1
    report.add("normalize_is_multiplicative(200)", hom_bad == 0)
    return report.finish()


def _coordinate_diff_words(max_len: int):
    gens = (Gen.Y, Gen.X, Gen.THETA, Gen.PHI)
    for length in range(max_len + 1):
        yield from itertools.product(gens, repeat=length)


def run_calculus() -> SuiteReport:
    report = SuiteReport("calculus")
    table = default_table()
    theta, phi = Expr.word(Gen.THETA), Expr.word(Gen.PHI)

    # consistency of the exterior derivative with the coordinate relations
    report.add_zero("d_of_anticommutator", calculus.exterior_d(theta * phi + phi * theta))
    report.add_zero("d_of_phi_sq", calculus.exterior_d(phi * phi))
    report.add_zero(
        "d_of_theta_sq_relation",
        calculus.exterior_d(theta * theta - ParamScalar.h() * (theta * phi)),
    )

    # nilpotence on every coordinate/differential monomial up to degree 4
    bad = 0
    total = 0
    for word in _coordinate_diff_words(4):
        total += 1
        if not calculus.exterior_d(calculus.exterior_d(Expr.word(*word))).is_zero():
            bad += 1
    report.add("d_squared_monomials(deg<=4,%d)" % total, bad == 0)

    rng = random.Random(SEED + 2)
    bad = 0
    for _ in range(500):
        e = random_expr(rng, max_len=4, gens=(Gen.Y, Gen.X, Gen.THETA, Gen.PHI))
        if not calculus.exterior_d(calculus.exterior_d(e)).is_zero():
            bad += 1
    report.add("d_squared_random(500)", bad == 0)

    # graded Leibniz on random homogeneous words
    rng = random.Random(SEED + 3)
    bad = 0
    for _ in range(200):
        gens = (Gen.Y, Gen.X, Gen.THETA, Gen.PHI)
        f = Expr.word(*(rng.choice(gens) for _ in range(rng.randint(0, 3))))
        g = Expr.word(*(rng.choice(gens) for _ in range(rng.randint(0, 3))))
        fword = next(iter(f.terms))
        sign = -1 if sum(x.parity for x in fword) % 2 else 1
        residual = normalize(
            calculus.exterior_d(f * g)
            - calculus.exterior_d(f) * g
            - sign * (f * calculus.exterior_d(g)),
            table,
        )
        if not residual.is_zero():
            bad += 1
    report.add("graded_leibniz(200)", bad == 0)

    # Kronecker contract on generators
    kron_ok = (
        calculus.partial(1, theta) == Expr.unit()
        and calculus.partial(1, phi).is_zero()
        and calculus.partial(2, theta).is_zero()
        and calculus.partial(2, phi) == Expr.unit()
    )
    report.add("kronecker_on_generators", kron_ok)

    # matrix form of the derivative-past-coordinate rules
    for entry in calculus.derive_eq16_check(table):
        report.add_zero("deriv_matrix_form(%d,%d)" % (entry.i, entry.j), entry.residual)

    # vacuum projection agrees with the recursive expansion
    rng = random.Random(SEED + 4)
    bad = 0
    for _ in range(100):
        f = random_expr(rng, max_len=4, gens=(Gen.THETA, Gen.PHI))
        for i in (1, 2):
            if calculus.partial(i, f) != normalize(calculus.partial_by_recursion(i, f), table):
                bad += 1
    report.add("projection_vs_recursion(100)", bad == 0)

    # deformed Leibniz rule with the twist map, on generator prefixes
    rng = random.Random(SEED + 5)
    bad = 0
    for _ in range(200):
        g = random_expr(rng, max_len=3, gens=(Gen.THETA, Gen.PHI))
        for i in (1, 2):
            for j, gen in ((1, Gen.THETA), (2, Gen.PHI)):
                lhs = calculus.partial(i, Expr.word(gen) * g)
                rhs = (Expr.unit() if i == j else Expr.zero()) * g
                for l in (1, 2):
                    rhs = rhs - calculus.o_map(l, i, gen) * calculus.partial(l, g)
                if normalize(lhs - rhs, table) != Expr.zero():
                    bad += 1
    report.add("deformed_leibniz(200)", bad == 0)
    return report.finish()


# Entries of the fixed exchange matrix, frozen from its printed form.
def _expected_rhat_rows():
    H, HP = ParamScalar.h(), ParamScalar.hp()
    one, zero = ParamScalar.one(), ParamScalar.zero()
    return [
        [one, -H, H, H * HP],
        [zero, zero, one, HP],
        [zero, one, zero, -HP],
        [zero, zero, zero, one],
    ]


def run_rmatrix(corrupt: bool = False) -> SuiteReport:
    """R-matrix suite; `corrupt` flips one matrix entry as a negative control."""
    report = SuiteReport("rmatrix")
    r = rmatrix.rhat()
    if corrupt:
        rows = [list(row) for row in r.rows]
        rows[0][1] = -rows[0][1]
        r = rmatrix.PairMatrix(rows)

    expected = _expected_rhat_rows()
    entry_ok = all(
        r.rows[i][j] == expected[i][j] for i in range(4) for j in range(4)
    )
    report.add("rhat_entries_16", entry_ok)
    report.add("rhat_involutive", rmatrix.involutive_check(r).passed)
    report.add("rhat_braid", rmatrix.braid_check(r).passed)

    # the t-scan: only t = 0 is consistent
    for entry in rmatrix.t_consistency_scan([0, 1, Fraction(1, 2), 2, -1]):
        expect_pass = entry.t == 0
        name = "t_scan(t=%s)_%s" % (entry.t, "consistent" if expect_pass else "inconsistent")
        report.add(name, entry.passed == expect_pass)

    equiv = rmatrix.relations_equiv_check(r=r)
    report.add("relations_equiv_bijective", equiv.bijective)
    for inst in equiv.instances:
        report.add(
            "relation_%s(%d,%d)" % (inst.relation, *inst.indices),
            inst.residual.is_zero() and inst.rhs_matches_rule,
            inst.residual,
        )
    return report.finish()


def run_phase_space() -> SuiteReport:
    report = SuiteReport("phase-space")
    table = default_table()

    for name, residual in star.derive_phase_space(table):
        report.add_zero("generic_%s" % name, residual)
    for name, residual in star.specialize_phase_space("minus-h", table):
        report.add_zero("minus_h_%s" % name, residual)
    for name, residual in star.specialize_phase_space("equal-h", table):
        report.add_zero("equal_h_%s" % name, residual)

    term = star.inhomogeneous_term(table)
    expected = ParamScalar.const(Fraction(1, 2)) * (ParamScalar.h() + ParamScalar.hp())
    report.add("inhomogeneous_term_half_h_plus_hp", term == expected)
    term_eq = term.subst("hp", ParamScalar.h())
    report.add("inhomogeneous_term_equal_h_is_h", term_eq == ParamScalar.h())
    term_minus = term.subst("hp", -ParamScalar.h())
    report.add("inhomogeneous_term_minus_h_vanishes", term_minus.is_zero())

    for entry in star.hermiticity_audit(table):
        report.add(entry.name, entry.passed, entry.residual)

    # involution properties on random elements
    rng = random.Random(SEED + 6)
    invol_bad = 0
    anti_bad = 0
    b_gens = (Gen.THETA, Gen.PHI, Gen.PTH, Gen.PPH)
    for _ in range(500):
        e = random_expr(rng, max_len=4, gens=b_gens)
        if star.star(star.star(e, table), table) != normalize(e, table):
            invol_bad += 1
    for _ in range(200):
        a = random_expr(rng, max_len=3, gens=b_gens)
        b = random_expr(rng, max_len=3, gens=b_gens)
        lhs = star.star(a * b, table)
        rhs = normalize(star.star(b, table) * star.star(a, table), table)
        if lhs != rhs:
            anti_bad += 1
    report.add("star_involution(500)", invol_bad == 0)
    report.add("star_antiautomorphism(200)", anti_bad == 0)
    return report.finish()


def run_limits() -> SuiteReport:
    """Classical limit h = hp = 0: plain Grassmann/commuting relations."""
    report = SuiteReport("limits")
    zero = ParamScalar.zero()
    table = default_table().substituted("h", zero).substituted("hp", zero)

    conf = check_local_confluence(table)
    report.add("classical_critical_pairs_resolve", conf.passed)

    checks = [
        ("theta_sq_vanishes", "theta*theta"),
        ("phi_sq_vanishes", "phi*phi"),
        ("anticommutator_theta_phi", "theta*phi + phi*theta"),
        ("commutator_x_y", "x*y - y*x"),
        ("classical_pth_theta", "pth*theta + theta*pth - 1"),
        ("classical_pph_phi", "pph*phi + phi*pph - 1"),
        ("classical_pph_theta", "pph*theta + theta*pph"),
        ("classical_theta_x", "theta*x - x*theta"),
        ("classical_pth_x", "pth*x - x*pth"),
        ("classical_pph_pph", "pph*pph"),
    ]
    for name, source in checks:
        residual = normalize(frontend.parse(source), table)
        report.add_zero(name, residual)

    # parametrized residuals still vanish after specialization
    for name, residual in star.derive_phase_space():
        specialized = residual.subst_params("h", zero).subst_params("hp", zero)
        report.add_zero("phase_space_specialized_%s" % name, specialized)

    rng = random.Random(SEED + 7)
    bad = 0
    for _ in range(200):
        e = random_expr(rng, max_len=5)
        if normalize(e, table, "leftmost") != normalize(e, table, "rightmost"):
            bad += 1
    report.add("classical_strategy_independence(200)", bad == 0)
    return report.finish()


SUITES: Dict[str, Callable[[], SuiteReport]] = {
    "confluence": run_confluence,
    "calculus": run_calculus,
    "rmatrix": run_rmatrix,
    "phase-space": run_phase_space,
    "limits": run_limits,
}


def run_suite(name: str, **kwargs) -> List[SuiteReport]:
    if name == "all":
        return [SUITES[key]() for key in sorted(SUITES)]
    if name not in SUITES:
        raise KeyError(name)
    if name == "rmatrix":
        return [run_rmatrix(**kwargs)]
    return [SUITES[name]()]

"""End-to-end acceptance checks, one test per criterion.

Each test prints a single PASS/FAIL line (outside pytest's capture) so the
run log doubles as an acceptance report.  All checks are exact; there are no
tolerances anywhere.
"""

import json
import random
from fractions import Fraction

from click.testing import CliRunner

from hplane.algebra import Expr, Gen
from hplane.calculus import (
    derive_eq16_check,
    exterior_d,
    o_map,
    partial,
    partial_by_recursion,
)
from hplane.cli import cli
from hplane.frontend import from_json, parse, to_json, to_text
from hplane.rewrite import check_local_confluence, default_table, normalize
from hplane.rmatrix import (
    braid_check,
    build_c,
    involutive_check,
    relations_equiv_check,
    rhat,
    t_consistency_scan,
)
from hplane.scalars import ParamScalar
from hplane.star import (
    derive_phase_space,
    hat,
    hermiticity_audit,
    inhomogeneous_term,
    specialize_phase_space,
    star,
)
from hplane.suites import SEED, random_expr, run_suite

H = ParamScalar.h()
HP = ParamScalar.hp()
ONE = ParamScalar.one()
ZERO = ParamScalar.zero()


def _report(capsys, number, label, passed):
    with capsys.disabled():
        print("acceptance %d %-22s %s" % (number, label + ":", "PASS" if passed else "FAIL"))
    assert passed, "criterion %d (%s) failed" % (number, label)


def test_criterion_1_matrix_reproduction(capsys):
    expected = [
        [ONE, -H, H, H * HP],
        [ZERO, ZERO, ONE, HP],
        [ZERO, ONE, ZERO, -HP],
        [ZERO, ZERO, ZERO, ONE],
    ]
    c0 = build_c(0)
    ok = c0.rows == expected and rhat().rows == expected

    scan = {e.t: e.passed for e in t_consistency_scan([0, 1, Fraction(1, 2), 2, -1])}
    ok = ok and scan[0] and not any(scan[t] for t in (1, Fraction(1, 2), 2, -1))
    _report(capsys, 1, "matrix reproduction", ok)


def test_criterion_2_nilpotence(capsys):
    theta, phi = Expr.word(Gen.THETA), Expr.word(Gen.PHI)
    relations = [
        theta * phi + phi * theta,
        phi * phi,
        theta * theta - H * (theta * phi),
    ]
    ok = all(exterior_d(r).is_zero() for r in relations)

    gens = (Gen.Y, Gen.X, Gen.THETA, Gen.PHI)
    words = [()]
    frontier = [()]
    for _ in range(4):
        frontier = [w + (g,) for w in frontier for g in gens]
        words.extend(frontier)
    ok = ok and all(exterior_d(exterior_d(Expr.word(*w))).is_zero() for w in words)
    _report(capsys, 2, "nilpotence", ok)


def test_criterion_3_local_confluence(capsys):
    conf = check_local_confluence()
    ok = conf.passed and len(conf.pairs) == 44

    rng = random.Random(SEED)
    for _ in range(1000):
        e = random_expr(rng, max_len=6)
        if normalize(e, strategy="leftmost") != normalize(e, strategy="rightmost"):
            ok = False
            break
    _report(capsys, 3, "local confluence", ok)


def test_criterion_4_rmatrix_identities(capsys):
    r = rhat()
    audit = relations_equiv_check()
    hits = [inst for inst in audit.instances if inst.rule_pattern is not None]
    ok = (
        involutive_check(r).passed
        and braid_check(r).passed
        and audit.passed
        and audit.bijective
        and len(audit.instances) == 24
        and len(hits) == 19
    )
    _report(capsys, 4, "r-matrix identities", ok)


def test_criterion_5_derivative_contracts(capsys):
    theta, phi = Expr.word(Gen.THETA), Expr.word(Gen.PHI)
    ok = (
        partial(1, theta) == Expr.unit()
        and partial(1, phi).is_zero()
        and partial(2, theta).is_zero()
        and partial(2, phi) == Expr.unit()
    )

    table = default_table()
    rng = random.Random(SEED + 50)
    for _ in range(200):
        g = random_expr(rng, max_len=3, gens=(Gen.THETA, Gen.PHI))
        for i in (1, 2):
            for j, gen in ((1, Gen.THETA), (2, Gen.PHI)):
                lhs = partial(i, Expr.word(gen) * g)
                rhs = (Expr.unit() if i == j else Expr.zero()) * g
                for l in (1, 2):
                    rhs = rhs - o_map(l, i, gen) * partial(l, g)
                if normalize(lhs - rhs, table) != Expr.zero():
                    ok = False
            if partial(i, g) != normalize(partial_by_recursion(i, g), table):
                ok = False
    ok = ok and all(e.residual.is_zero() for e in derive_eq16_check())
    _report(capsys, 5, "derivative contracts", ok)


def test_criterion_6_phase_space(capsys):
    residuals = derive_phase_space()
    ok = len(residuals) == 10 and all(r.is_zero() for _, r in residuals)
    half = ParamScalar.coerce(Fraction(1, 2))
    ok = ok and inhomogeneous_term() == half * (H + HP)

    ok = ok and all(r.is_zero() for _, r in specialize_phase_space("minus-h"))
    ok = ok and all(r.is_zero() for _, r in specialize_phase_space("equal-h"))

    equal_table = default_table().substituted("hp", H)
    ok = ok and inhomogeneous_term(equal_table).subst("hp", H) == H
    pp = hat("pi_phi")
    sq = normalize((pp * pp).subst_params("hp", H), equal_table)
    ok = ok and sq == H * Expr.word(Gen.PTH, Gen.PPH)
    _report(capsys, 6, "phase space", ok)


def test_criterion_7_hermiticity(capsys):
    table = default_table()
    ok = all(
        normalize(star(star(Expr.word(g))) - Expr.word(g), table).is_zero()
        for g in (Gen.THETA, Gen.PHI, Gen.PTH, Gen.PPH)
    )
    entries = {e.name: e for e in hermiticity_audit()}
    for name in ("theta", "phi", "pi_theta", "pi_phi"):
        ok = ok and entries["hat_%s_star_fixed" % name].passed
    ok = ok and all(e.passed for n, e in entries.items() if n.startswith("starred_"))
    naive = {n: e for n, e in entries.items() if n.startswith("naive_star_")}
    nonzero = sorted(n for n, e in naive.items() if not e.residual.is_zero())
    ok = ok and len(naive) == 4 and nonzero == ["naive_star_pph_theta_breaks"]
    ok = ok and all(e.passed for e in naive.values())
    _report(capsys, 7, "hermiticity", ok)


def test_criterion_8_classical_limits(capsys):
    table0 = default_table().substituted("h", ZERO).substituted("hp", ZERO)
    degenerate = [
        "theta*phi + phi*theta",
        "theta*theta",
        "phi*phi",
        "x*y - y*x",
        "theta*x - x*theta",
        "pth*pph + pph*pth",
        "pth*theta + theta*pth - 1",
        "pph*phi + phi*pph - 1",
        "pth*phi + phi*pth",
        "pph*theta + theta*pph",
    ]
    ok = all(
        normalize(parse(s).subst_params("h", ZERO).subst_params("hp", ZERO), table0).is_zero()
        for s in degenerate
    )
    ok = ok and all(rep.passed for rep in run_suite("limits"))
    _report(capsys, 8, "classical limits", ok)


def test_criterion_9_frontend(capsys):
    rng = random.Random(SEED + 90)
    ok = True
    for _ in range(1000):
        e = normalize(random_expr(rng, max_len=4))
        if parse(to_text(e)) != e or from_json(to_json(e)) != e:
            ok = False
            break

    runner = CliRunner()
    good = runner.invoke(cli, ["verify", "--suite", "all"])
    bad = runner.invoke(cli, ["verify", "--suite", "rmatrix", "--negative-control", "--json"])
    ok = ok and good.exit_code == 0 and bad.exit_code == 1
    if ok:
        payload = json.loads(bad.output)
        ok = not payload["pass"] and any(not c["pass"] for c in payload["checks"])
    _report(capsys, 9, "frontend", ok)

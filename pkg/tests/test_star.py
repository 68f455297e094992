import random
from fractions import Fraction

import pytest

from hplane.algebra import DomainError, Expr, Gen
from hplane.frontend import parse
from hplane.rewrite import normalize
from hplane.scalars import ParamScalar
from hplane.star import (
    derive_phase_space,
    hat,
    hermiticity_audit,
    inhomogeneous_term,
    phase_space_relations,
    specialize_phase_space,
    star,
    star_naive,
)
from hplane.suites import random_expr

H = ParamScalar.h()
HP = ParamScalar.hp()
B_GENS = (Gen.THETA, Gen.PHI, Gen.PTH, Gen.PPH)


def test_star_on_generators():
    assert star(parse("theta")) == parse("theta + h*phi")
    assert star(parse("phi")) == parse("phi")
    assert star(parse("pth")) == parse("pth")
    assert star(parse("pph")) == parse("pph + hp*pth")


def test_star_squares_to_identity_on_generators():
    for tok in ("theta", "phi", "pth", "pph"):
        e = parse(tok)
        assert star(star(e)) == e


def test_star_reverses_products():
    assert star(parse("theta*phi")) == parse("-theta*phi")


def test_star_is_antilinear():
    assert star(parse("i*theta")) == normalize(-parse("i") * star(parse("theta")))
    assert star(parse("h*phi")) == normalize(-H * parse("phi"))


def test_star_rejects_differentials():
    with pytest.raises(DomainError):
        star(parse("x"))
    with pytest.raises(DomainError):
        star(parse("theta*y"))


def test_star_involution_random():
    rng = random.Random(31)
    for _ in range(100):
        e = random_expr(rng, max_len=4, gens=B_GENS)
        assert star(star(e)) == normalize(e)


def test_star_antiautomorphism_random():
    rng = random.Random(32)
    for _ in range(50):
        a = random_expr(rng, max_len=3, gens=B_GENS)
        b = random_expr(rng, max_len=3, gens=B_GENS)
        assert star(a * b) == normalize(star(b) * star(a))


def test_star_preserves_coordinate_relation():
    # the square relation is star-stable under the no-sign convention
    rel = parse("theta*theta - h*theta*phi")
    assert star(rel).is_zero()


def test_hat_operators():
    assert hat("theta") == parse("theta + 1/2*h*phi")
    assert hat("phi") == parse("phi")
    assert hat("pi_theta") == parse("pth")
    assert hat("pi_phi") == parse("pph + 1/2*hp*pth")
    with pytest.raises(ValueError):
        hat("sigma")


def test_hats_are_star_fixed():
    for name in ("theta", "phi", "pi_theta", "pi_phi"):
        e = hat(name)
        assert star(e) == normalize(e)


def test_phase_space_residuals_vanish():
    results = derive_phase_space()
    assert len(results) == 10
    for name, residual in results:
        assert residual.is_zero(), name


def test_inhomogeneous_term():
    expected = ParamScalar.const(Fraction(1, 2)) * (H + HP)
    assert inhomogeneous_term() == expected
    assert expected.subst("hp", -H).is_zero()
    assert expected.subst("hp", H) == H


def test_minus_h_specialization():
    results = specialize_phase_space("minus-h")
    assert len(results) == 10
    for name, residual in results:
        assert residual.is_zero(), name


def test_equal_h_specialization():
    for name, residual in specialize_phase_space("equal-h"):
        assert residual.is_zero(), name


def test_unknown_mode_rejected():
    with pytest.raises(ValueError):
        phase_space_relations("plus-2h")


def test_hermiticity_audit_passes():
    entries = hermiticity_audit()
    assert all(e.passed for e in entries)
    names = [e.name for e in entries]
    assert "naive_star_pph_theta_breaks" in names
    assert "naive_star_pth_theta_survives" in names


def test_naive_star_breaks_only_mixed_momentum_rule():
    from hplane.rewrite import default_table

    table = default_table()
    outcomes = {}
    for pattern in ((Gen.PTH, Gen.THETA), (Gen.PTH, Gen.PHI),
                    (Gen.PPH, Gen.THETA), (Gen.PPH, Gen.PHI)):
        relation = Expr.word(*pattern) - table.rules[pattern]
        outcomes[pattern] = star_naive(relation).is_zero()
    assert outcomes[(Gen.PTH, Gen.THETA)]
    assert outcomes[(Gen.PTH, Gen.PHI)]
    assert not outcomes[(Gen.PPH, Gen.THETA)]
    assert outcomes[(Gen.PPH, Gen.PHI)]


def test_classical_limit_of_phase_space():
    zero = ParamScalar.zero()
    for name, residual in derive_phase_space():
        assert residual.subst_params("h", zero).subst_params("hp", zero).is_zero()
    # classical anticommutator pattern {pi, theta} = 1
    classical = normalize(parse("pth*theta + theta*pth")).subst_params(
        "h", zero
    ).subst_params("hp", zero)
    assert classical == Expr.unit()

"""The involution on coordinates + derivatives, hermitean operators, and the
deformed fermionic phase-space algebra they generate."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from .algebra import DomainError, Expr, Gen, SubalgebraTag, in_subalgebra
from .rewrite import RuleTable, default_table, normalize
from .scalars import H, HP, ParamScalar

HALF = Fraction(1, 2)

# Generator images of the involution.  It is an antilinear anti-automorphism:
# coefficients are conjugated (including h -> -h, hp -> -hp), words reversed,
# letters replaced, no extra sign.
STAR_IMAGES: Dict[Gen, Expr] = {
    Gen.THETA: Expr.word(Gen.THETA) + H * Expr.word(Gen.PHI),
    Gen.PHI: Expr.word(Gen.PHI),
    Gen.PTH: Expr.word(Gen.PTH),
    Gen.PPH: Expr.word(Gen.PPH) + HP * Expr.word(Gen.PTH),
}

# The unshifted candidate involution (identity on generators, same parameter
# conjugation).  It fails on exactly one of the mixed relations; keeping it
# around lets the audit demonstrate that failure.
NAIVE_IMAGES: Dict[Gen, Expr] = {
    Gen.THETA: Expr.word(Gen.THETA),
    Gen.PHI: Expr.word(Gen.PHI),
    Gen.PTH: Expr.word(Gen.PTH),
    Gen.PPH: Expr.word(Gen.PPH),
}


def _apply_star(e: Expr, images: Dict[Gen, Expr], table: Optional[RuleTable]) -> Expr:
    if not in_subalgebra(e, SubalgebraTag.COORDINATES_AND_DERIVATIVES):
        raise DomainError(
            "the involution is defined on coordinates and derivatives only"
        )
    out = Expr.zero()
    for word, coeff in e.terms.items():
        piece = Expr.scalar(coeff.conj())
        for letter in reversed(word):
            piece = piece * images[letter]
        out = out + piece
    return normalize(out, table)


def star(e: Expr, table: RuleTable = None) -> Expr:
    """The involution: antilinear, word-reversing, normalized output."""
    return _apply_star(e, STAR_IMAGES, table)


def star_naive(e: Expr, table: RuleTable = None) -> Expr:
    """The rejected identity-on-generators involution, for the audit."""
    return _apply_star(e, NAIVE_IMAGES, table)


_HATS: Dict[str, Expr] = {
    "theta": Expr.word(Gen.THETA) + (HALF * H) * Expr.word(Gen.PHI),
    "phi": Expr.word(Gen.PHI),
    "pi_theta": Expr.word(Gen.PTH),
    "pi_phi": Expr.word(Gen.PPH) + (HALF * HP) * Expr.word(Gen.PTH),
}


def hat(name: str) -> Expr:
    """One of the hermitean operators: theta, phi, pi_theta, pi_phi."""
    try:
        return _HATS[name]
    except KeyError:
        raise ValueError("unknown hat operator %r" % name) from None


@dataclass
class PhaseSpaceRelation:
    name: str
    lhs: Expr          # free products of hat operators, unreduced
    rhs: Expr
    display: str = ""  # the relation in hat-operator notation, for reports

    def residual(self, table: RuleTable = None) -> Expr:
        return normalize(self.lhs - self.rhs, table)


def _generic_relations() -> List[PhaseSpaceRelation]:
    th, ph = hat("theta"), hat("phi")
    pt, pp = hat("pi_theta"), hat("pi_phi")
    one = Expr.unit()
    half = ParamScalar.const(HALF)
    return [
        PhaseSpaceRelation("theta_sq", th * th, H * (th * ph),
                           "Th^2 = h*Th*Ph"),
        PhaseSpaceRelation("theta_phi_anticomm", th * ph + ph * th, Expr.zero(),
                           "Th*Ph + Ph*Th = 0"),
        PhaseSpaceRelation("phi_sq", ph * ph, Expr.zero(), "Ph^2 = 0"),
        PhaseSpaceRelation("pi_theta_sq", pt * pt, Expr.zero(), "Pt^2 = 0"),
        PhaseSpaceRelation("pi_anticomm", pt * pp + pp * pt, Expr.zero(),
                           "Pt*Pp + Pp*Pt = 0"),
        PhaseSpaceRelation("pi_phi_sq", pp * pp, HP * (pt * pp),
                           "Pp^2 = hp*Pt*Pp"),
        PhaseSpaceRelation("pi_theta_theta", pt * th, one - th * pt + H * (ph * pt),
                           "Pt*Th = 1 - Th*Pt + h*Ph*Pt"),
        PhaseSpaceRelation("pi_theta_phi", pt * ph, -(ph * pt),
                           "Pt*Ph = - Ph*Pt"),
        PhaseSpaceRelation(
            "pi_phi_theta",
            pp * th,
            -(th * pp) - H * (th * pt) - HP * (ph * pp)
            + (half * (H * H + HP * HP)) * (ph * pt)
            + Expr.scalar(half * (H + HP)),
            "Pp*Th = - Th*Pp - h*Th*Pt - hp*Ph*Pp + 1/2*(h^2 + hp^2)*Ph*Pt + 1/2*(h + hp)",
        ),
        PhaseSpaceRelation("pi_phi_phi", pp * ph, one - ph * pp + HP * (ph * pt),
                           "Pp*Ph = 1 - Ph*Pp + hp*Ph*Pt"),
    ]


def _minus_h_relations() -> List[PhaseSpaceRelation]:
    """The one-parameter specialization hp = -h, as an independent transcription."""
    th, ph = hat("theta"), hat("phi")
    pt = hat("pi_theta")
    pp_spec = Expr.word(Gen.PPH) + (-HALF * H) * Expr.word(Gen.PTH)
    one = Expr.unit()
    return [
        PhaseSpaceRelation("theta_sq", th * th, H * (th * ph),
                           "Th^2 = h*Th*Ph"),
        PhaseSpaceRelation("theta_phi_anticomm", th * ph + ph * th, Expr.zero(),
                           "Th*Ph + Ph*Th = 0"),
        PhaseSpaceRelation("phi_sq", ph * ph, Expr.zero(), "Ph^2 = 0"),
        PhaseSpaceRelation("pi_theta_sq", pt * pt, Expr.zero(), "Pt^2 = 0"),
        PhaseSpaceRelation("pi_anticomm", pt * pp_spec + pp_spec * pt, Expr.zero(),
                           "Pt*Pp + Pp*Pt = 0"),
        PhaseSpaceRelation("pi_phi_sq", pp_spec * pp_spec, H * (pp_spec * pt),
                           "Pp^2 = h*Pp*Pt"),
        PhaseSpaceRelation("pi_theta_theta", pt * th, one - th * pt + H * (ph * pt),
                           "Pt*Th = 1 - Th*Pt + h*Ph*Pt"),
        PhaseSpaceRelation("pi_theta_phi", pt * ph, -(ph * pt),
                           "Pt*Ph = - Ph*Pt"),
        PhaseSpaceRelation(
            "pi_phi_theta",
            pp_spec * th,
            -(th * pp_spec) - H * (th * pt - ph * pp_spec) + (H * H) * (ph * pt),
            "Pp*Th = - Th*Pp - h*(Th*Pt - Ph*Pp) + h^2*Ph*Pt",
        ),
        PhaseSpaceRelation("pi_phi_phi", pp_spec * ph, one - ph * pp_spec - H * (ph * pt),
                           "Pp*Ph = 1 - Ph*Pp - h*Ph*Pt"),
    ]


def phase_space_relations(hprime_mode: str = "generic") -> List[PhaseSpaceRelation]:
    """The ten defining relations of the deformed fermionic phase space.

    hprime_mode: 'generic' (two parameters), 'minus-h' (hp = -h, the
    one-parameter algebra), or 'equal-h' (hp = h).
    """
    if hprime_mode == "generic":
        return _generic_relations()
    if hprime_mode == "minus-h":
        return _minus_h_relations()
    if hprime_mode == "equal-h":
        return [
            PhaseSpaceRelation(
                rel.name,
                rel.lhs.subst_params("hp", H),
                rel.rhs.subst_params("hp", H),
                rel.display.replace("hp", "h"),
            )
            for rel in _generic_relations()
        ]
    raise ValueError("unknown hprime mode %r" % hprime_mode)


def derive_phase_space(table: RuleTable = None):
    """Residual of each generic relation under the rewrite system."""
    return [(rel.name, rel.residual(table)) for rel in _generic_relations()]


def specialize_phase_space(hprime_mode: str = "minus-h", table: RuleTable = None):
    """Residuals of the specialized relation set, each checked two ways: as a
    direct relation of the algebra, and against the substituted generic set."""
    base = table or default_table()
    if hprime_mode == "minus-h":
        replacement = -H
    elif hprime_mode == "equal-h":
        replacement = H
    else:
        raise ValueError("unknown hprime mode %r" % hprime_mode)
    spec_table = base.substituted("hp", replacement)
    out = []
    generic = {rel.name: rel for rel in _generic_relations()}
    for rel in phase_space_relations(hprime_mode):
        residual = rel.residual(spec_table).subst_params("hp", replacement)
        gen_rel = generic[rel.name]
        cross = normalize(
            (gen_rel.lhs - gen_rel.rhs).subst_params("hp", replacement)
            - (rel.lhs - rel.rhs).subst_params("hp", replacement),
            spec_table,
        )
        residual = residual + cross
        out.append((rel.name, residual))
    return out


def inhomogeneous_term(table: RuleTable = None) -> ParamScalar:
    """Empty-word coefficient produced when a momentum moves past its partner
    coordinate; the genuinely inhomogeneous piece of the algebra."""
    product = normalize(hat("pi_phi") * hat("theta"), table)
    return product.terms.get((), ParamScalar.zero())


@dataclass
class AuditEntry:
    name: str
    passed: bool
    residual: Expr


def hermiticity_audit(table: RuleTable = None) -> List[AuditEntry]:
    """Star-fixedness of the hat operators, star-stability of the relations,
    and the demonstration that the unshifted involution breaks exactly one
    mixed derivative-coordinate relation."""
    table = table or default_table()
    entries = []
    for name in ("theta", "phi", "pi_theta", "pi_phi"):
        res = normalize(star(hat(name), table) - hat(name), table)
        entries.append(AuditEntry("hat_%s_star_fixed" % name, res.is_zero(), res))
    for rel in _generic_relations():
        res = normalize(star(rel.lhs, table) - star(rel.rhs, table), table)
        entries.append(AuditEntry("starred_%s" % rel.name, res.is_zero(), res))

    # The four derivative-on-coordinate rules under the unshifted involution:
    # only the mixed-momentum rule (pph past theta) must break.
    rule_names = {
        (Gen.PTH, Gen.THETA): "pth_theta",
        (Gen.PTH, Gen.PHI): "pth_phi",
        (Gen.PPH, Gen.THETA): "pph_theta",
        (Gen.PPH, Gen.PHI): "pph_phi",
    }
    for pattern, label in rule_names.items():
        relation = Expr.word(*pattern) - default_table().rules[pattern]
        res = normalize(star_naive(relation, table), table)
        expect_zero = pattern != (Gen.PPH, Gen.THETA)
        entries.append(
            AuditEntry(
                "naive_star_%s_%s" % (label, "survives" if expect_zero else "breaks"),
                res.is_zero() == expect_zero,
                res,
            )
        )
    return entries

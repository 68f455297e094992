"""Exact coefficient arithmetic: Gaussian rationals and sparse polynomials in h, hp."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

PARAMS = ("h", "hp")


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError("expected an exact rational, got %r" % (x,))


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex rational re + im*i; Fraction keeps both parts reduced."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _frac(self.re))
        object.__setattr__(self, "im", _frac(self.im))

    @staticmethod
    def of(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return GaussianRational(_frac(value))

    def __add__(self, other):
        other = _as_gauss(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_gauss(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _as_gauss(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_gauss(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return "%s*i" % self.im
        return "%s%s%s*i" % (self.re, "+" if self.im > 0 else "-", abs(self.im))


GR_ZERO = GaussianRational()
GR_ONE = GaussianRational(Fraction(1))
GR_I = GaussianRational(Fraction(0), Fraction(1))


def _as_gauss(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(_frac(x))
    return None


class RecursiveSubstitutionError(ValueError):
    """Raised when a substitution's replacement still mentions the target parameter."""


class ParamScalar:
    """Sparse polynomial in h, hp over the Gaussian rationals.

    Terms map exponent pairs (deg_h, deg_hp) to nonzero GaussianRational
    coefficients; equality is term-map identity, so canonical form doubles
    as decidable equality.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, coeff in terms.items():
                coeff = GaussianRational.of(coeff)
                if coeff:
                    clean[key] = coeff
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "ParamScalar":
        return ParamScalar()

    @staticmethod
    def one() -> "ParamScalar":
        return ParamScalar({(0, 0): GR_ONE})

    @staticmethod
    def h() -> "ParamScalar":
        return ParamScalar({(1, 0): GR_ONE})

    @staticmethod
    def hp() -> "ParamScalar":
        return ParamScalar({(0, 1): GR_ONE})

    @staticmethod
    def i() -> "ParamScalar":
        return ParamScalar({(0, 0): GR_I})

    @staticmethod
    def const(value) -> "ParamScalar":
        return ParamScalar({(0, 0): GaussianRational.of(value)})

    @staticmethod
    def coerce(x) -> "ParamScalar":
        if isinstance(x, ParamScalar):
            return x
        if isinstance(x, (int, Fraction, GaussianRational)):
            return ParamScalar.const(x)
        raise TypeError("cannot treat %r as a scalar" % (x,))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            acc = terms.get(key, GR_ZERO) + coeff
            if acc:
                terms[key] = acc
            else:
                terms.pop(key, None)
        out = ParamScalar.__new__(ParamScalar)
        out.terms = terms
        return out

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        terms = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                acc = terms.get(key, GR_ZERO) + c1 * c2
                if acc:
                    terms[key] = acc
                else:
                    terms.pop(key, None)
        out = ParamScalar.__new__(ParamScalar)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __neg__(self):
        out = ParamScalar.__new__(ParamScalar)
        out.terms = {key: -coeff for key, coeff in self.terms.items()}
        return out

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial scalar")
        acc = ParamScalar.one()
        for _ in range(n):
            acc = acc * self
        return acc

    # -- structure ---------------------------------------------------------

    def conj(self) -> "ParamScalar":
        """Antilinear conjugation: i -> -i together with h -> -h, hp -> -hp."""
        terms = {}
        for (a, b), coeff in self.terms.items():
            coeff = coeff.conj()
            if (a + b) % 2:
                coeff = -coeff
            terms[(a, b)] = coeff
        out = ParamScalar.__new__(ParamScalar)
        out.terms = terms
        return out

    def subst(self, target: str, replacement) -> "ParamScalar":
        """Replace every occurrence of parameter `target` ('h' or 'hp')."""
        if target not in PARAMS:
            raise ValueError("unknown parameter %r" % target)
        replacement = ParamScalar.coerce(replacement)
        pos = PARAMS.index(target)
        if any(key[pos] for key in replacement.terms):
            raise RecursiveSubstitutionError(
                "replacement for %s mentions %s itself" % (target, target)
            )
        result = ParamScalar.zero()
        for (a, b), coeff in self.terms.items():
            tdeg, odeg = (a, b) if pos == 0 else (b, a)
            other = ParamScalar({(0, b) if pos == 0 else (a, 0): GR_ONE})
            result = result + ParamScalar.const(coeff) * (replacement ** tdeg) * other
        return result

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def constant_part(self) -> GaussianRational:
        return self.terms.get((0, 0), GR_ZERO)

    def __repr__(self):
        if not self.terms:
            return "ParamScalar(0)"
        bits = []
        for (a, b) in sorted(self.terms):
            coeff = self.terms[(a, b)]
            mono = "".join(
                ["(%s)" % coeff, "h^%d" % a if a else "", "hp^%d" % b if b else ""]
            )
            bits.append(mono)
        return "ParamScalar(%s)" % " + ".join(bits)


def _as_scalar(x):
    if isinstance(x, ParamScalar):
        return x
    if isinstance(x, (int, Fraction, GaussianRational)):
        return ParamScalar.const(x)
    return None


ZERO = ParamScalar.zero()
ONE = ParamScalar.one()
H = ParamScalar.h()
HP = ParamScalar.hp()
I = ParamScalar.i()

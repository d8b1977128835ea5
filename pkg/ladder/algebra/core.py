"""Unit conventions, exact scalars and validated system descriptors.

All quantities are reduced to ħ = m = ω₀ = 1, so that ω₁ = l₁ and ω₂ = l₂ and every energy is a multiple of ħω₀.
Coupling constants of the 1/x² term are kept as exact rationals, which makes Q(s) with s = √(1+4κ) a well-defined
quadratic extension. `AlgScalar` implements exact arithmetic in this extension.
"""
import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Union

from algebra import util

KAPPA_LOWER = Fraction(-1, 4)
KAPPA_UPPER = Fraction(3, 4)

Rational = Union[int, Fraction]


class NonPositiveMultiplier(ValueError):
    def __init__(self, msg: str = ""):
        super().__init__(msg if msg else "Frequency multipliers must be positive integers")


class KappaOutOfRange(ValueError):
    def __init__(self, kappa: Any = None, msg: str = ""):
        msg = msg if msg else f"Coupling kappa={kappa} outside of the admissible range (-1/4, 3/4)"
        self.kappa = kappa
        super().__init__(msg)


class UnexpectedKappa(ValueError):
    def __init__(self, msg: str = ""):
        super().__init__(msg if msg else "Anisotropic systems carry no kappa")


class ContextMismatch(ValueError):
    """Raised when scalars of two different quadratic extensions meet in a single operation."""
    def __init__(self, first: Fraction = None, second: Fraction = None):
        super().__init__(f"Scalars live in different extensions: s^2={first} vs. s^2={second}")


class SystemKind(enum.Enum):
    Anisotropic = "aniso"
    SWDeformed = "sw"

    def __str__(self) -> str:
        return self.name


# names of well-known special cases, mapped to (kind, l1, l2)
SYSTEM_ALIASES = {
    "isotropic": (SystemKind.Anisotropic, 1, 1),
    "fokas-lagerstrom": (SystemKind.Anisotropic, 3, 1),
    "holt": (SystemKind.SWDeformed, 1, 2),
}


@functools.total_ordering
@dataclass(frozen=True)
class AlgScalar:
    """Exact number a + b·s with s = √radicand, radicand being the rational 1+4κ.

    Whenever the radicand is the square of a rational r, s is folded into the rational part (a + b·r, b = 0). This keeps
    equality identical to numerical equality, independent of whether the extension is proper. Ordering is exact as well
    and is derived from the sign of the difference.
    """
    a: Fraction
    b: Fraction = Fraction(0)
    radicand: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        a, b, radicand = Fraction(self.a), Fraction(self.b), Fraction(self.radicand)
        if radicand < 0:
            raise ValueError(f"Negative radicand: {radicand}")
        root = util.rational_sqrt(radicand)
        if root is not None and b:
            a, b = a + b * root, Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "radicand", radicand)

    @staticmethod
    def radical(radicand: Rational) -> "AlgScalar":
        """Provides s itself for the extension s² = radicand."""
        return AlgScalar(Fraction(0), Fraction(1), Fraction(radicand))

    @staticmethod
    def rational(value: Rational, radicand: Rational = 1) -> "AlgScalar":
        return AlgScalar(Fraction(value), Fraction(0), Fraction(radicand))

    def promote(self, other: Any) -> "AlgScalar":
        """Lifts plain rationals into the extension of this scalar and rejects foreign extensions."""
        if isinstance(other, AlgScalar):
            if other.radicand != self.radicand:
                raise ContextMismatch(self.radicand, other.radicand)
            return other
        if util.is_rational(other):
            return AlgScalar(Fraction(other), Fraction(0), self.radicand)
        raise TypeError(f"Cannot combine AlgScalar with {type(other)}")

    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> "AlgScalar":
        return AlgScalar(self.a, -self.b, self.radicand)

    def norm(self) -> Fraction:
        """Field norm (a + b·s)(a − b·s) = a² − b²·radicand."""
        return self.a * self.a - self.b * self.b * self.radicand

    def sign(self) -> int:
        """Exact sign of the real number a + b·s, with s taken as the non-negative root."""
        a_sign, b_sign = _fraction_sign(self.a), _fraction_sign(self.b)
        if b_sign == 0 or a_sign == b_sign:
            return a_sign if a_sign else b_sign
        if a_sign == 0:
            return b_sign
        # mixed signs: the larger of a² and b²·radicand decides
        return a_sign if self.a * self.a > self.b * self.b * self.radicand else -a_sign

    def canonical_key(self) -> tuple:
        return self.a, self.b

    def __add__(self, other: Any) -> "AlgScalar":
        other = self.promote(other)
        return AlgScalar(self.a + other.a, self.b + other.b, self.radicand)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "AlgScalar":
        other = self.promote(other)
        return AlgScalar(self.a - other.a, self.b - other.b, self.radicand)

    def __rsub__(self, other: Any) -> "AlgScalar":
        return self.promote(other) - self

    def __neg__(self) -> "AlgScalar":
        return AlgScalar(-self.a, -self.b, self.radicand)

    def __mul__(self, other: Any) -> "AlgScalar":
        other = self.promote(other)
        return AlgScalar(self.a * other.a + self.b * other.b * self.radicand,
                         self.a * other.b + self.b * other.a,
                         self.radicand)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "AlgScalar":
        other = self.promote(other)
        denominator = other.norm()
        if denominator == 0:
            raise ZeroDivisionError("Division by zero in AlgScalar")
        numerator = self * other.conjugate()
        return AlgScalar(numerator.a / denominator, numerator.b / denominator, self.radicand)

    def __rtruediv__(self, other: Any) -> "AlgScalar":
        return self.promote(other) / self

    def __pow__(self, exponent: int) -> "AlgScalar":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"Only non-negative integer powers are supported, not {exponent}")
        result = AlgScalar.rational(1, self.radicand)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: Any) -> bool:
        if util.is_rational(other):
            return self.b == 0 and self.a == other
        if not isinstance(other, AlgScalar):
            return NotImplemented
        return (self.a, self.b, self.radicand) == (other.a, other.b, other.radicand)

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.radicand)) if self.b else hash(self.a)

    def __lt__(self, other: Any) -> bool:
        return (self - self.promote(other)).sign() < 0

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.radicand)

    def __json__(self) -> dict:
        return {"exact": str(self), "value": util.round_float(float(self))}

    def __repr__(self) -> str:
        return f"AlgScalar({self})"

    def __str__(self) -> str:
        if not self.b:
            return util.format_rational(self.a)
        b_abs = abs(self.b)
        s_term = "s" if b_abs == 1 else f"{util.format_rational(b_abs)}*s"
        if not self.a:
            return s_term if self.b > 0 else f"-{s_term}"
        return f"{util.format_rational(self.a)} {'+' if self.b > 0 else '-'} {s_term}"


def _fraction_sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def alg_mul(x: AlgScalar, y: AlgScalar) -> AlgScalar:
    """Exact product of two scalars of the same extension, reducing s² to 1+4κ."""
    if x.radicand != y.radicand:
        raise ContextMismatch(x.radicand, y.radicand)
    return x * y


@dataclass(frozen=True)
class SystemSpec:
    kind: SystemKind
    l1: int
    l2: int
    kappa: Optional[Fraction] = None
    alias: Optional[str] = None

    @property
    def omega1(self) -> int:
        return self.l1

    @property
    def omega2(self) -> int:
        return self.l2

    @property
    def radicand(self) -> Fraction:
        """The value of s² = 1+4κ (1 for anisotropic systems)."""
        return 1 + 4 * self.kappa if self.kind == SystemKind.SWDeformed else Fraction(1)

    def s(self) -> AlgScalar:
        return AlgScalar.radical(self.radicand)

    def scalar(self, value: Rational) -> AlgScalar:
        return AlgScalar.rational(value, self.radicand)

    def is_sw(self) -> bool:
        return self.kind == SystemKind.SWDeformed

    @property
    def name(self) -> str:
        if self.alias:
            return self.alias
        label = f"{self.kind.value}({self.l1}:{self.l2})"
        return label if not self.is_sw() else f"{label},kappa={util.format_rational(self.kappa)}"

    def with_kappa(self, kappa: Rational) -> "SystemSpec":
        return make_system(self.kind, self.l1, self.l2, kappa)

    def __json__(self) -> dict:
        return {"kind": self.kind.name, "l1": self.l1, "l2": self.l2,
                "kappa": util.format_rational(self.kappa) if self.kappa is not None else None,
                "name": self.name}

    def __str__(self) -> str:
        return self.name


def _parse_kind(kind: Union[SystemKind, str]) -> SystemKind:
    if isinstance(kind, SystemKind):
        return kind
    normalized = str(kind).strip().lower()
    if normalized in ("aniso", "anisotropic"):
        return SystemKind.Anisotropic
    elif normalized in ("sw", "swdeformed", "sw-deformed"):
        return SystemKind.SWDeformed
    raise ValueError("Unknown system kind: '{}'".format(kind))


def validate_kappa(kappa: Any) -> Fraction:
    if not util.is_rational(kappa):
        raise KappaOutOfRange(kappa, f"Coupling kappa={kappa!r} must be an exact rational")
    kappa = Fraction(kappa)
    if not KAPPA_LOWER < kappa < KAPPA_UPPER:
        raise KappaOutOfRange(kappa)
    return kappa


def make_system(kind: Union[SystemKind, str], l1: Optional[int] = None, l2: Optional[int] = None,
                kappa: Optional[Rational] = None) -> SystemSpec:
    """Builds a validated system descriptor.

    `kind` is either a `SystemKind` or one of the strings "aniso", "sw" or a special-case alias ("isotropic",
    "fokas-lagerstrom", "holt"). Aliases fix the multipliers, explicitly supplied multipliers must agree with them.
    """
    alias = None
    if isinstance(kind, str) and kind.strip().lower() in SYSTEM_ALIASES:
        alias = kind.strip().lower()
        kind, alias_l1, alias_l2 = SYSTEM_ALIASES[alias]
        if (l1 is not None and l1 != alias_l1) or (l2 is not None and l2 != alias_l2):
            raise ValueError(f"System '{alias}' requires l1={alias_l1}, l2={alias_l2}")
        l1, l2 = alias_l1, alias_l2
    kind = _parse_kind(kind)

    for multiplier in (l1, l2):
        if not isinstance(multiplier, int) or isinstance(multiplier, bool) or multiplier < 1:
            raise NonPositiveMultiplier(f"Frequency multipliers must be positive integers, got l1={l1}, l2={l2}")

    if kind == SystemKind.Anisotropic:
        if kappa is not None:
            raise UnexpectedKappa()
        return SystemSpec(kind, l1, l2, None, alias)

    if kappa is None:
        raise KappaOutOfRange(kappa, "SW-deformed systems require a coupling kappa")
    return SystemSpec(kind, l1, l2, validate_kappa(kappa), alias)

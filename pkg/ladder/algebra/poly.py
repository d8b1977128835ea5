"""Exact polynomial algebra in the variables (m, E).

m denotes the J₀ eigenvalue and E the energy in units of ħω₀. Coefficients are `AlgScalar`s, so the ring is Q(s)[m, E]
for the single quadratic extension s² = 1+4κ of the system at hand.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from algebra import core, util
from algebra.core import AlgScalar, Rational

Monomial = Tuple[int, int]


def _as_scalar(value: Union[AlgScalar, Rational], radicand: Fraction) -> AlgScalar:
    if isinstance(value, AlgScalar):
        if value.radicand != radicand:
            raise core.ContextMismatch(radicand, value.radicand)
        return value
    return AlgScalar.rational(value, radicand)


@dataclass(frozen=True)
class BivarPoly:
    """Expanded polynomial Σ c[(i, j)]·mⁱ·Eʲ in canonical form (zero coefficients are never stored)."""
    coefficients: Dict[Monomial, AlgScalar] = field(default_factory=dict)
    radicand: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        radicand = Fraction(self.radicand)
        canonical = {}
        for (deg_m, deg_e), coefficient in self.coefficients.items():
            if deg_m < 0 or deg_e < 0:
                raise ValueError(f"Negative degree in monomial {(deg_m, deg_e)}")
            coefficient = _as_scalar(coefficient, radicand)
            if coefficient:
                canonical[(deg_m, deg_e)] = coefficient
        object.__setattr__(self, "coefficients", dict(sorted(canonical.items())))
        object.__setattr__(self, "radicand", radicand)

    @staticmethod
    def constant(value: Union[AlgScalar, Rational], radicand: Rational = 1) -> "BivarPoly":
        radicand = value.radicand if isinstance(value, AlgScalar) else radicand
        return BivarPoly({(0, 0): value}, radicand)

    @staticmethod
    def monomial(deg_m: int, deg_e: int, coefficient: Union[AlgScalar, Rational] = 1,
                 radicand: Rational = 1) -> "BivarPoly":
        radicand = coefficient.radicand if isinstance(coefficient, AlgScalar) else radicand
        return BivarPoly({(deg_m, deg_e): coefficient}, radicand)

    def promote(self, other: Union["BivarPoly", AlgScalar, Rational]) -> "BivarPoly":
        if isinstance(other, BivarPoly):
            if other.radicand != self.radicand and other.coefficients and self.coefficients:
                raise core.ContextMismatch(self.radicand, other.radicand)
            return other
        return BivarPoly.constant(_as_scalar(other, self.radicand), self.radicand)

    def _context(self, other: "BivarPoly") -> Fraction:
        return self.radicand if self.coefficients else other.radicand

    def is_zero(self) -> bool:
        return not self.coefficients

    def deg_m(self) -> int:
        """Degree in m, with -1 for the zero polynomial."""
        return max((deg_m for deg_m, _ in self.coefficients), default=-1)

    def deg_e(self) -> int:
        return max((deg_e for _, deg_e in self.coefficients), default=-1)

    def coefficient(self, deg_m: int, deg_e: int) -> AlgScalar:
        return self.coefficients.get((deg_m, deg_e), AlgScalar.rational(0, self.radicand))

    def m_coefficient(self, power: int) -> "BivarPoly":
        """The coefficient of mᵖᵒʷᵉʳ as a polynomial in E alone."""
        return BivarPoly({(0, deg_e): coefficient for (deg_m, deg_e), coefficient in self.coefficients.items()
                          if deg_m == power}, self.radicand)

    def leading_m_coefficient(self) -> "BivarPoly":
        return self.m_coefficient(self.deg_m())

    def shift_m(self, shift: Union[AlgScalar, Rational]) -> "BivarPoly":
        """Substitutes m → m + shift."""
        shift = _as_scalar(shift, self.radicand)
        shifted: Dict[Monomial, AlgScalar] = {}
        for (deg_m, deg_e), coefficient in self.coefficients.items():
            for k in range(deg_m + 1):
                term = coefficient * math.comb(deg_m, k) * shift ** (deg_m - k)
                shifted[(k, deg_e)] = shifted.get((k, deg_e), AlgScalar.rational(0, self.radicand)) + term
        return BivarPoly(shifted, self.radicand)

    def scale_e(self, factor: Rational) -> "BivarPoly":
        """Substitutes E → factor·E, e.g. to re-express a polynomial in units of a different base frequency."""
        factor = Fraction(factor)
        return BivarPoly({(deg_m, deg_e): coefficient * factor ** deg_e
                          for (deg_m, deg_e), coefficient in self.coefficients.items()}, self.radicand)

    def at_m(self, m: Union[AlgScalar, Rational]) -> "BivarPoly":
        """Substitutes a fixed value for m, leaving a polynomial in E."""
        m = _as_scalar(m, self.radicand)
        restricted: Dict[Monomial, AlgScalar] = {}
        for (deg_m, deg_e), coefficient in self.coefficients.items():
            restricted[(0, deg_e)] = (restricted.get((0, deg_e), AlgScalar.rational(0, self.radicand))
                                      + coefficient * m ** deg_m)
        return BivarPoly(restricted, self.radicand)

    def evaluate(self, m: Union[AlgScalar, Rational], E: Union[AlgScalar, Rational]) -> AlgScalar:
        m, E = _as_scalar(m, self.radicand), _as_scalar(E, self.radicand)
        total = AlgScalar.rational(0, self.radicand)
        for (deg_m, deg_e), coefficient in self.coefficients.items():
            total = total + coefficient * m ** deg_m * E ** deg_e
        return total

    def __add__(self, other: Union["BivarPoly", AlgScalar, Rational]) -> "BivarPoly":
        other = self.promote(other)
        radicand = self._context(other)
        summed = dict(self.coefficients)
        for monomial, coefficient in other.coefficients.items():
            summed[monomial] = summed[monomial] + coefficient if monomial in summed else coefficient
        return BivarPoly(summed, radicand)

    __radd__ = __add__

    def __neg__(self) -> "BivarPoly":
        return BivarPoly({monomial: -coefficient for monomial, coefficient in self.coefficients.items()},
                         self.radicand)

    def __sub__(self, other: Union["BivarPoly", AlgScalar, Rational]) -> "BivarPoly":
        return self + (-self.promote(other))

    def __rsub__(self, other: Union[AlgScalar, Rational]) -> "BivarPoly":
        return self.promote(other) - self

    def __mul__(self, other: Union["BivarPoly", AlgScalar, Rational]) -> "BivarPoly":
        other = self.promote(other)
        radicand = self._context(other)
        product: Dict[Monomial, AlgScalar] = {}
        for (m1, e1), c1 in self.coefficients.items():
            for (m2, e2), c2 in other.coefficients.items():
                key = (m1 + m2, e1 + e2)
                product[key] = product[key] + c1 * c2 if key in product else c1 * c2
        return BivarPoly(product, radicand)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "BivarPoly":
        if exponent < 0:
            raise ValueError("Negative powers are not polynomials")
        result = BivarPoly.constant(1, self.radicand)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(tuple(self.coefficients.items()))

    def terms(self) -> List[dict]:
        return [{"deg_m": deg_m, "deg_E": deg_e, "a": util.format_rational(coefficient.a),
                 "b": util.format_rational(coefficient.b)}
                for (deg_m, deg_e), coefficient in self.coefficients.items()]

    def __json__(self) -> dict:
        return {"text": str(self), "terms": self.terms()}

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        rendered = []
        # descending in m, then in E
        for (deg_m, deg_e), coefficient in sorted(self.coefficients.items(), reverse=True):
            variables = "*".join(_power(name, degree) for name, degree in (("m", deg_m), ("E", deg_e)) if degree)
            if not variables:
                rendered.append(_signed(str(coefficient), coefficient))
            elif coefficient == 1:
                rendered.append("+ " + variables)
            elif coefficient == -1:
                rendered.append("- " + variables)
            elif coefficient.is_rational():
                rendered.append(_signed(f"{util.format_rational(abs(coefficient.a))}*{variables}", coefficient))
            else:
                rendered.append(f"+ ({coefficient})*{variables}")
        text = " ".join(rendered)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _power(name: str, degree: int) -> str:
    return name if degree == 1 else f"{name}^{degree}"


def _signed(text: str, coefficient: AlgScalar) -> str:
    if not coefficient.is_rational():
        return "+ (" + text + ")"
    if coefficient.a < 0:
        return "- " + text.lstrip("-")
    return "+ " + text


@dataclass(frozen=True)
class LinearFactor:
    """The affine form cm·m + cE·E + c0."""
    cm: Fraction
    cE: Fraction
    c0: AlgScalar

    def __post_init__(self) -> None:
        object.__setattr__(self, "cm", Fraction(self.cm))
        object.__setattr__(self, "cE", Fraction(self.cE))
        if not isinstance(self.c0, AlgScalar):
            object.__setattr__(self, "c0", AlgScalar.rational(self.c0))
        if not self.cm and not self.cE and not self.c0:
            raise ValueError("Linear factor must not vanish identically")

    def evaluate(self, m: Union[AlgScalar, Rational], E: Union[AlgScalar, Rational]) -> AlgScalar:
        return self.c0 + self.c0.promote(m) * self.cm + self.c0.promote(E) * self.cE

    def shift_m(self, shift: Rational) -> "LinearFactor":
        return LinearFactor(self.cm, self.cE, self.c0 + self.cm * Fraction(shift))

    def is_parallel(self, other: "LinearFactor") -> bool:
        return self.cm * other.cE == self.cE * other.cm

    def expand(self) -> BivarPoly:
        radicand = self.c0.radicand
        return BivarPoly({(1, 0): AlgScalar.rational(self.cm, radicand),
                          (0, 1): AlgScalar.rational(self.cE, radicand),
                          (0, 0): self.c0}, radicand)

    def __str__(self) -> str:
        return f"({self.expand()})"


@dataclass(frozen=True)
class FactorTag:
    """Which mode a factor of φ stems from and its index in the published enumeration (1-based)."""
    mode: int
    index: int
    sector: str = ""

    def __str__(self) -> str:
        return f"N{self.mode}[{self.index}{self.sector}]"


@dataclass(frozen=True)
class FactoredPoly:
    """The product lead·∏ factors, kept unexpanded so that roots can be read off directly."""
    lead: AlgScalar
    factors: Tuple[LinearFactor, ...]
    tags: Tuple[Optional[FactorTag], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        tags = tuple(self.tags) if self.tags else tuple(None for _ in self.factors)
        if len(tags) != len(self.factors):
            raise ValueError("Each factor needs exactly one tag")
        object.__setattr__(self, "tags", tags)
        for factor in self.factors:
            if factor.c0.radicand != self.lead.radicand:
                raise core.ContextMismatch(self.lead.radicand, factor.c0.radicand)

    @property
    def radicand(self) -> Fraction:
        return self.lead.radicand

    def expand(self) -> BivarPoly:
        expanded = BivarPoly.constant(self.lead)
        for factor in self.factors:
            expanded = expanded * factor.expand()
        return expanded

    def evaluate(self, m: Union[AlgScalar, Rational], E: Union[AlgScalar, Rational]) -> AlgScalar:
        value = self.lead
        for factor in self.factors:
            value = value * factor.evaluate(m, E)
        return value

    def shift_m(self, shift: Rational) -> "FactoredPoly":
        """φ(m + shift, E), again in factored form."""
        return FactoredPoly(self.lead, tuple(factor.shift_m(shift) for factor in self.factors), self.tags)

    def __len__(self) -> int:
        return len(self.factors)

    def __json__(self) -> dict:
        return {"lead": self.lead, "factors": [str(factor) for factor in self.factors],
                "tags": [str(tag) if tag else None for tag in self.tags]}

    def __str__(self) -> str:
        factors = "".join(str(factor) for factor in self.factors)
        return factors if self.lead == 1 else f"{self.lead}*{factors}"


def structure_function(sys: core.SystemSpec) -> FactoredPoly:
    """Provides φ(m, E), the eigenvalue of J₊J₋ on the simultaneous eigenstate |m, E⟩.

    Anisotropic systems normal-order J₊J₋ = (a₁†)^l₂ a₁^l₂ · a₂^l₁ (a₂†)^l₁ into ∏ᵢ(N₁ − i)·∏ⱼ(N₂ + j) and use
    N₁ = (E − (l₁+l₂)/2)/(2l₁) + l₂m, N₂ = (E − (l₁+l₂)/2)/(2l₂) − l₁m.

    SW-deformed systems use the su(1,1) lowest-weight form A†A = 4(K₀ − k₊)(K₀ − k₋) with k± = 1/2 ± s/4 in either
    mode, K₁ = Ẽ/2 + l₂m and K₂ = Ẽ/2 − l₁m, Ẽ = E/(l₁+l₂). Every factor is doubled, which absorbs the 4^(l₁+l₂).
    """
    l1, l2 = sys.l1, sys.l2
    factors: List[LinearFactor] = []
    tags: List[FactorTag] = []

    if sys.kind == core.SystemKind.Anisotropic:
        offset1, offset2 = Fraction(l1 + l2, 4 * l1), Fraction(l1 + l2, 4 * l2)
        for i in range(l2):
            factors.append(LinearFactor(l2, Fraction(1, 2 * l1), sys.scalar(-offset1 - i)))
            tags.append(FactorTag(1, i + 1))
        for j in range(1, l1 + 1):
            factors.append(LinearFactor(-l1, Fraction(1, 2 * l2), sys.scalar(-offset2 + j)))
            tags.append(FactorTag(2, l1 - j + 1))
        return FactoredPoly(sys.scalar(1), tuple(factors), tuple(tags))

    energy_scale = Fraction(1, l1 + l2)
    half_s = sys.s() * Fraction(1, 2)
    for i in range(l2):
        # even (odd) occupations of mode 1 have lowest weight k = 1/4 (3/4)
        factors.append(LinearFactor(2 * l2, energy_scale, sys.scalar(-2 * i - Fraction(1, 2))))
        tags.append(FactorTag(1, i + 1, "even"))
        factors.append(LinearFactor(2 * l2, energy_scale, sys.scalar(-2 * i - Fraction(3, 2))))
        tags.append(FactorTag(1, i + 1, "odd"))
    for j in range(l1):
        # the k₋ root closes the "+" ladder from above and vice versa
        factors.append(LinearFactor(-2 * l1, energy_scale, sys.scalar(2 * j + 1) - half_s))
        tags.append(FactorTag(2, l1 - j, "+"))
        factors.append(LinearFactor(-2 * l1, energy_scale, sys.scalar(2 * j + 1) + half_s))
        tags.append(FactorTag(2, l1 - j, "-"))
    return FactoredPoly(sys.scalar(1), tuple(factors), tuple(tags))


def commutator_polynomial(phi: FactoredPoly) -> BivarPoly:
    """P(m; E) = φ(m, E) − φ(m+1, E), the eigenvalue of [J₊, J₋]."""
    expanded = phi.expand()
    return expanded - expanded.shift_m(1)


def casimir_split(phi: FactoredPoly) -> Tuple[List[BivarPoly], BivarPoly]:
    """Splits φ(m) + φ(m+1) = C(E) − Σᵢ αᵢ(E)·mⁱ.

    Returns the list of αᵢ indexed by the power of m (α₀ is the zero polynomial by convention) and the Casimir C(E).
    Each αᵢ and C are polynomials in E only.
    """
    expanded = phi.expand()
    anticommutator = expanded + expanded.shift_m(1)
    casimir = anticommutator.m_coefficient(0)
    alphas = [BivarPoly({}, phi.radicand)]
    for power in range(1, anticommutator.deg_m() + 1):
        alphas.append(-anticommutator.m_coefficient(power))
    return alphas, casimir


def reconstruct_casimir(phi: FactoredPoly, alphas: List[BivarPoly]) -> BivarPoly:
    """expand(φ(m) + φ(m+1) + Σαᵢmⁱ); equals the Casimir exactly if the split is consistent."""
    expanded = phi.expand()
    total = expanded + expanded.shift_m(1)
    for power, alpha in enumerate(alphas):
        total = total + alpha * BivarPoly.monomial(power, 0, 1, phi.radicand)
    return total


def eval_poly(p: Union[BivarPoly, FactoredPoly], m: Union[AlgScalar, Rational],
              E: Union[AlgScalar, Rational]) -> AlgScalar:
    """Exact evaluation; factored polynomials are evaluated factor by factor."""
    return p.evaluate(m, E)

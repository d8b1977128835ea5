"""Closed forms from the literature, transcribed as printed and reduced to ħ = m = ω₀ = 1.

None of these are used to compute anything; they only serve as cross-checks for the derived structure functions,
Casimirs and families. Where a printed form disagrees with the derivation, `discrepancy_ledger` records the mismatch and,
where one exists, the reading that reconciles both (exchanged frequencies or flipped index signs).
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from algebra import core, poly, spectrum
from algebra.core import AlgScalar
from algebra.poly import BivarPoly, LinearFactor

F = Fraction


def _product(factors: Sequence[LinearFactor], radicand: Fraction) -> BivarPoly:
    return poly.FactoredPoly(AlgScalar.rational(1, radicand), tuple(factors)).expand()


def _energy_poly(coefficients: Sequence[Fraction], radicand: Fraction = 1) -> BivarPoly:
    """Σ cₖ·Eᵏ for a coefficient list in ascending powers."""
    return BivarPoly({(0, power): coefficient for power, coefficient in enumerate(coefficients)}, radicand)


def _aniso_products(sys: core.SystemSpec, sign: int) -> BivarPoly:
    # sign = +1: the J₊J₋ product, sign = -1: the J₋J₊ product
    l1, l2 = sys.l1, sys.l2
    first = [LinearFactor(l2, F(1, 2 * l1), sys.scalar(F(-l2, 4 * l1) - sign * i + (F(3, 4) if sign > 0 else F(-1, 4))))
             for i in range(1, l2 + 1)]
    second = [LinearFactor(-l1, F(1, 2 * l2), sys.scalar(F(-l1, 4 * l2) + sign * j + (F(-1, 4) if sign > 0 else F(3, 4))))
              for j in range(1, l1 + 1)]
    return _product(first + second, sys.radicand)


def published_anisotropic_commutator(sys: core.SystemSpec) -> BivarPoly:
    """∏ᵢ((2H−ω₂)/(4ω₁) + l₂J₀ − i + 3/4)·∏ⱼ((2H−ω₁)/(4ω₂) − l₁J₀ + j − 1/4) minus the mirrored product."""
    _require_kind(sys, core.SystemKind.Anisotropic)
    return _aniso_products(sys, +1) - _aniso_products(sys, -1)


def published_anisotropic_casimir(sys: core.SystemSpec) -> BivarPoly:
    _require_kind(sys, core.SystemKind.Anisotropic)
    return _aniso_products(sys, +1).at_m(0) + _aniso_products(sys, -1).at_m(0)


def published_quartic_commutator() -> BivarPoly:
    """4(Ê² − 3)·J₀ − 64·J₀³ for the isotropic oscillator with quartic ladder, Ê = H/(ħω) = E/2."""
    e_hat = BivarPoly.monomial(0, 1, F(1, 2))
    m = BivarPoly.monomial(1, 0)
    return 4 * (e_hat * e_hat - 3) * m - 64 * m ** 3


def published_quartic_casimir() -> BivarPoly:
    """Ê⁴/8 − 5Ê²/4 + 9/8, again with Ê = E/2."""
    return _energy_poly([F(9, 8), 0, F(-5, 4), 0, F(1, 8)]).scale_e(F(1, 2))


def published_fl_commutator(omega1: Fraction = 3, omega2: Fraction = 1) -> BivarPoly:
    """The explicit cubic of the 3:1 (Fokas-Lagerstrom) oscillator, as a polynomial in (J₀, H)."""
    w1, w2 = F(omega1), F(omega2)
    c0 = _energy_poly([w1 ** 4 + 6 * w1 ** 3 * w2 + 68 * w1 ** 2 * w2 ** 2 - 6 * w1 * w2 ** 3 - 69 * w2 ** 4,
                       -2 * (3 * w1 ** 3 + 3 * w1 ** 2 * w2 + 77 * w1 * w2 ** 2 - 51 * w2 ** 3),
                       12 * (w1 ** 2 - 4 * w1 * w2 + 3 * w2 ** 2),
                       -8 * (w1 - 9 * w2)]) * F(1, 64 * w1 * w2 ** 3)
    c1 = _energy_poly([3 * w1 ** 3 + 3 * w1 ** 2 * w2 + 41 * w1 * w2 ** 2 + 9 * w2 ** 3,
                       -12 * w1 * (w1 - w2),
                       12 * (w1 - 3 * w2)]) * F(3, 8 * w1 * w2 ** 2)
    c2 = _energy_poly([w1 ** 2 - w2 ** 2, -2 * w1 + 2 * w2]) * F(81, 4 * w1 * w2)
    m = BivarPoly.monomial(1, 0)
    return c0 + c1 * m + c2 * m ** 2 + 108 * m ** 3


def published_fl_casimir(omega1: Fraction = 3, omega2: Fraction = 1) -> BivarPoly:
    w1, w2 = F(omega1), F(omega2)
    bracket = _energy_poly([w1 ** 4 + 32 * w1 ** 3 * w2 + 26 * w1 ** 2 * w2 ** 2 + 88 * w1 * w2 ** 3 + 93 * w2 ** 4,
                            -4 * (w1 ** 3 + 33 * w1 ** 2 * w2 - 33 * w1 * w2 ** 2 - w2 ** 3),
                            16 * (9 * w1 - 23 * w2) * w2,
                            16 * (w1 - w2),
                            -16])
    return bracket * F(-1, 128 * w1 * w2 ** 3)


def published_fl_families(*, swapped: bool = False) -> List[spectrum.EnergyFamily]:
    """The three explicit 3:1 families. The second one is printed without its "+", we read it as a sum.

    With `swapped` the roles of ω₁ and ω₂ are exchanged in the base terms.
    """
    w1, w2 = (F(1), F(3)) if swapped else (F(3), F(1))
    bases = [F(1, 2) * w1 + F(1, 2) * w2, F(3, 2) * w1 + F(1, 2) * w2, F(5, 2) * w1 + F(1, 2) * w2]
    return [spectrum.EnergyFamily(AlgScalar.rational(base), F(3), -1, -1, (idx + 1, 1, ""))
            for idx, base in enumerate(bases)]


def _sw_index(index: int, flip: bool) -> int:
    return -index if flip else index


def published_sw_commutator(sys: core.SystemSpec, *, flip_index_sign: bool = False) -> BivarPoly:
    """The SW-deformed commutator product in terms of Ẽ = E/(l₁+l₂).

    With `flip_index_sign` every occurrence of the summation indices i, j enters with the opposite sign.
    """
    _require_kind(sys, core.SystemKind.SWDeformed)
    l1, l2, e_scale = sys.l1, sys.l2, F(1, sys.l1 + sys.l2)
    half_s = sys.s() * F(1, 2)
    raising, lowering = [], []
    for i in range(l2):
        idx = _sw_index(i, flip_index_sign)
        raising += [LinearFactor(2 * l2, e_scale, sys.scalar(2 * idx - F(1, 2))),
                    LinearFactor(2 * l2, e_scale, sys.scalar(2 * idx - F(3, 2)))]
        lowering += [LinearFactor(2 * l2, e_scale, sys.scalar(-(2 * idx - F(3, 2)))),
                     LinearFactor(2 * l2, e_scale, sys.scalar(-(2 * idx - F(1, 2))))]
    for j in range(l1):
        idx = _sw_index(j, flip_index_sign)
        raising += [LinearFactor(-2 * l1, e_scale, sys.scalar(-(2 * idx - 1)) - half_s),
                    LinearFactor(-2 * l1, e_scale, sys.scalar(-(2 * idx - 1)) + half_s)]
        lowering += [LinearFactor(-2 * l1, e_scale, sys.scalar(2 * idx - 1) - half_s),
                     LinearFactor(-2 * l1, e_scale, sys.scalar(2 * idx - 1) + half_s)]
    return _product(raising, sys.radicand) - _product(lowering, sys.radicand)


def published_sw_casimir(sys: core.SystemSpec, *, flip_index_sign: bool = False) -> BivarPoly:
    _require_kind(sys, core.SystemKind.SWDeformed)
    radicand, kappa = sys.radicand, sys.kappa
    e_tilde = BivarPoly.monomial(0, 1, F(1, sys.l1 + sys.l2), radicand)

    def _quadratic(index: int, sign: int, shift: Fraction) -> BivarPoly:
        return e_tilde * e_tilde + sign * 2 * (2 * index - 1) * e_tilde + (4 * index * (index - 1) + F(3, 4) - shift)

    first, second = BivarPoly.constant(1, radicand), BivarPoly.constant(1, radicand)
    for i in range(sys.l2):
        idx = _sw_index(i, flip_index_sign)
        first = first * _quadratic(idx, +1, F(0))
        second = second * _quadratic(idx, -1, F(0))
    for j in range(sys.l1):
        idx = _sw_index(j, flip_index_sign)
        first = first * _quadratic(idx, -1, kappa)
        second = second * _quadratic(idx, +1, kappa)
    return first + second


def published_sw_families(sys: core.SystemSpec, *, flip_index_sign: bool = False) -> List[spectrum.EnergyFamily]:
    """The four SW families 2l₁l₂n − l₁(2i − c) − l₂(2j − 1) ∓ l₂s/2 with c ∈ {1/2, 3/2}."""
    _require_kind(sys, core.SystemKind.SWDeformed)
    l1, l2 = sys.l1, sys.l2
    half_s = sys.s() * F(l2, 2)
    families = []
    for i in range(l2):
        for j in range(l1):
            idx_i, idx_j = _sw_index(i, flip_index_sign), _sw_index(j, flip_index_sign)
            for parity, offset in (("even", F(1, 2)), ("odd", F(3, 2))):
                rational = sys.scalar(-l1 * (2 * idx_i - offset) - l2 * (2 * idx_j - 1))
                for sector, base in (("-", rational - half_s), ("+", rational + half_s)):
                    families.append(spectrum.EnergyFamily(base, F(2 * l1 * l2), -1, -1, (i, j, parity + sector)))
    return sorted(families, key=spectrum.EnergyFamily.sort_key)


def _require_kind(sys: core.SystemSpec, kind: core.SystemKind) -> None:
    if sys.kind != kind:
        raise spectrum.UnsupportedSystem(sys)


@dataclass(frozen=True)
class LedgerEntry:
    name: str
    status: str  # "match", "mismatch" or "reconciled"
    detail: str = ""

    def __json__(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


def _compare(name: str, printed: object, derived: object, *, alternative: Optional[Callable[[], object]] = None,
             alternative_reading: str = "") -> LedgerEntry:
    if printed == derived:
        return LedgerEntry(name, "match", "printed form agrees with the derivation")
    if alternative is not None and alternative() == derived:
        return LedgerEntry(name, "reconciled", f"printed form disagrees, {alternative_reading} agrees")
    return LedgerEntry(name, "mismatch", "printed form disagrees with the derivation")


def discrepancy_ledger(sys: core.SystemSpec) -> List[LedgerEntry]:
    """Compares every applicable published closed form against the derived one."""
    phi = poly.structure_function(sys)
    commutator = poly.commutator_polynomial(phi)
    _, casimir = poly.casimir_split(phi)
    families = spectrum.family_signature(spectrum.solve_families(phi, sys))
    entries = []

    if sys.kind == core.SystemKind.Anisotropic:
        entries.append(_compare("published_commutator", published_anisotropic_commutator(sys), commutator))
        entries.append(_compare("published_casimir", published_anisotropic_casimir(sys), casimir))
        if (sys.l1, sys.l2) == (2, 2):
            entries.append(_compare("published_quartic_commutator", published_quartic_commutator(), commutator))
            entries.append(_compare("published_quartic_casimir", published_quartic_casimir(), casimir))
        if (sys.l1, sys.l2) == (3, 1):
            entries.append(_compare("published_fl_commutator", published_fl_commutator(), commutator))
            entries.append(_compare("published_fl_casimir", published_fl_casimir(), casimir))
            entries.append(_compare("published_fl_families",
                                    spectrum.family_signature(published_fl_families()), families,
                                    alternative=lambda: spectrum.family_signature(published_fl_families(swapped=True)),
                                    alternative_reading="exchanging omega1 and omega2"))
        return entries

    flipped = "flipping the sign of the indices i, j"
    entries.append(_compare("published_sw_commutator", published_sw_commutator(sys), commutator,
                            alternative=lambda: published_sw_commutator(sys, flip_index_sign=True),
                            alternative_reading=flipped))
    entries.append(_compare("published_sw_casimir", published_sw_casimir(sys), casimir,
                            alternative=lambda: published_sw_casimir(sys, flip_index_sign=True),
                            alternative_reading=flipped))
    entries.append(_compare("published_sw_families", spectrum.family_signature(published_sw_families(sys)), families,
                            alternative=lambda: spectrum.family_signature(
                                published_sw_families(sys, flip_index_sign=True)),
                            alternative_reading=flipped))
    return entries

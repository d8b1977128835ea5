"""Bound-state method: energy families from the linear factors of φ and their assembly into physical levels.

A finite ladder |m̲⟩, …, |m̲+n⟩ exists iff J₋ annihilates its lowest state, φ(m̲, E) = 0, and J₊ annihilates its highest
state, φ(m̲+n+1, E) = 0. Since φ factors completely into affine forms, every ordered pair of factors yields two linear
equations in (m̲, E), which we solve for E as an affine function of n.
"""
import collections
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from algebra import core, poly, util
from algebra.core import AlgScalar, Rational

POSITIVITY_SAMPLES = 8


class DegenerateFactorPair(ValueError):
    def __init__(self, lower: int, upper: int):
        self.lower, self.upper = lower, upper
        super().__init__(f"Factors {lower} and {upper} are parallel in (m, E), the ladder system is singular")


class NoFamilies(util.StateError):
    def __init__(self, msg: str = ""):
        super().__init__(msg if msg else "No factor pair produced a physical energy family, φ is inconsistent")


class UnsupportedSystem(ValueError):
    def __init__(self, sys: core.SystemSpec = None, msg: str = ""):
        msg = msg if msg else f"Operation not supported for system {sys}"
        self.sys = sys
        super().__init__(msg)


@dataclass(frozen=True)
class EnergyFamily:
    """The arithmetic progression E(n) = base + step·n, each level carrying an (n+1)-dimensional ladder.

    `lowest_m` and `lowest_m_step` describe the position of the lowest state m̲(n) = lowest_m + lowest_m_step·n.
    """
    base: AlgScalar
    step: Fraction
    lower_factor_id: int
    upper_factor_id: int
    label: Optional[Tuple[int, int, str]] = None
    lowest_m: Optional[AlgScalar] = None
    lowest_m_step: Fraction = Fraction(0)

    def energy(self, n: int) -> AlgScalar:
        return self.base + self.step * n

    def lowest_state(self, n: int) -> AlgScalar:
        return self.lowest_m + self.lowest_m_step * n

    @staticmethod
    def degeneracy(n: int) -> int:
        return n + 1

    def reduced_base(self) -> AlgScalar:
        """The base reduced modulo the step, with the rational part taken from [0, step)."""
        return AlgScalar(self.base.a % self.step, self.base.b, self.base.radicand)

    def sort_key(self) -> tuple:
        return self.base, self.step, self.lower_factor_id, self.upper_factor_id

    def label_text(self) -> Optional[str]:
        if not self.label:
            return None
        i, j, sector = self.label
        return f"i={i},j={j}" + (f",{sector}" if sector else "")

    def __json__(self) -> dict:
        return {"base": self.base, "step": util.format_rational(self.step), "label": self.label_text(),
                "lower_factor_id": self.lower_factor_id, "upper_factor_id": self.upper_factor_id}

    def __str__(self) -> str:
        return f"E(n) = {self.base} + {util.format_rational(self.step)}*n"


@dataclass(frozen=True)
class SpectrumLevel:
    energy: Union[AlgScalar, float]
    total_degeneracy: int
    contributors: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)

    @property
    def value(self) -> float:
        return float(self.energy)

    def is_exact(self) -> bool:
        return isinstance(self.energy, AlgScalar)

    def __json__(self) -> dict:
        energy = self.energy if self.is_exact() else {"exact": None, "value": util.round_float(self.energy)}
        return {"energy": energy, "degeneracy": self.total_degeneracy,
                "contributors": [list(contributor) for contributor in self.contributors]}

    def __str__(self) -> str:
        return f"E = {self.energy} (degeneracy {self.total_degeneracy})"


def solve_factor_pair(phi: poly.FactoredPoly, lower_id: int, upper_id: int) -> EnergyFamily:
    """Solves F_lower(m̲, E) = 0 and F_upper(m̲+n+1, E) = 0 for E(n) and m̲(n).

    Writing F = cm·m + cE·E + c0, Cramer's rule with D = cm_a·cE_b − cE_a·cm_b yields
    E(n) = (cm_b·c0_a − cm_a·c0_b − cm_a·cm_b·(n+1)) / D and
    m̲(n) = (cE_a·(c0_b + cm_b·(n+1)) − cE_b·c0_a) / D.
    """
    lower, upper = phi.factors[lower_id], phi.factors[upper_id]
    determinant = lower.cm * upper.cE - lower.cE * upper.cm
    if determinant == 0:
        raise DegenerateFactorPair(lower_id, upper_id)
    step = -lower.cm * upper.cm / determinant
    base = (lower.c0 * upper.cm - upper.c0 * lower.cm - lower.cm * upper.cm) / determinant
    lowest_m = (lower.cE * (upper.c0 + upper.cm) - lower.c0 * upper.cE) / determinant
    lowest_m_step = lower.cE * upper.cm / determinant
    return EnergyFamily(base, step, lower_id, upper_id, _family_label(phi, lower_id, upper_id), lowest_m,
                        lowest_m_step)


def _family_label(phi: poly.FactoredPoly, lower_id: int, upper_id: int) -> Optional[Tuple[int, int, str]]:
    lower_tag, upper_tag = phi.tags[lower_id], phi.tags[upper_id]
    if not lower_tag or not upper_tag or lower_tag.mode != 1 or upper_tag.mode != 2:
        return None
    return lower_tag.index, upper_tag.index, lower_tag.sector + upper_tag.sector


def _interior_positive(phi: poly.FactoredPoly, family: EnergyFamily, samples: int) -> bool:
    for n in range(samples + 1):
        energy, lowest = family.energy(n), family.lowest_state(n)
        for offset in range(1, n + 1):
            if phi.evaluate(lowest + offset, energy).sign() <= 0:
                return False
    return True


def solve_families(phi: poly.FactoredPoly, sys: core.SystemSpec, *, samples: int = POSITIVITY_SAMPLES,
                   verbose: bool = False, trace: bool = False) -> List[EnergyFamily]:
    """Derives all physical energy families of φ.

    A factor pair is kept iff its energy grows with n (the branches running to negative infinity are unphysical), φ is
    strictly positive on the interior ladder points for n ≤ `samples`, and the pair is not an exact duplicate of an
    already accepted pair. Parallel factor pairs cannot bound a ladder and are skipped.
    """
    logger = util.make_logger(verbose or trace)
    accepted: Dict[tuple, EnergyFamily] = {}
    skipped_parallel = 0

    for lower_id, upper_id in itertools.product(range(len(phi)), repeat=2):
        try:
            family = solve_factor_pair(phi, lower_id, upper_id)
        except DegenerateFactorPair:
            skipped_parallel += 1
            continue

        if family.step <= 0:
            if trace:
                logger("Dropping descending branch", lower_id, upper_id, "::", family)
            continue
        if not _interior_positive(phi, family, samples):
            if trace:
                logger("Dropping non-positive ladder", lower_id, upper_id, "::", family)
            continue

        dedup_key = (phi.factors[lower_id], phi.factors[upper_id], family.reduced_base().canonical_key(),
                     family.step)
        if dedup_key in accepted:
            logger("Duplicate family for factors", lower_id, upper_id, "::", family)
            continue
        accepted[dedup_key] = family

    if not accepted:
        raise NoFamilies()

    families = sorted(accepted.values(), key=EnergyFamily.sort_key)
    logger(f"System {sys}: {len(families)} families from {len(phi)} factors "
           f"({skipped_parallel} parallel pairs skipped)")
    return families


def paper_families(sys: core.SystemSpec) -> List[EnergyFamily]:
    """Closed-form families E_{i,j}(n) = l₁(i − 1/2) + l₂(j − 1/2) + l₁l₂·n of the anisotropic oscillator.

    Only meant to cross-check `solve_families`, hence factor ids are left at -1.
    """
    if sys.kind != core.SystemKind.Anisotropic:
        raise UnsupportedSystem(sys, "Closed-form families are only available for anisotropic systems")
    families = []
    for i in range(1, sys.l2 + 1):
        for j in range(1, sys.l1 + 1):
            base = sys.scalar(sys.l1 * (i - Fraction(1, 2)) + sys.l2 * (j - Fraction(1, 2)))
            families.append(EnergyFamily(base, Fraction(sys.l1 * sys.l2), -1, -1, (i, j, "")))
    return sorted(families, key=EnergyFamily.sort_key)


def family_signature(families: Sequence[EnergyFamily]) -> List[Tuple[AlgScalar, Fraction]]:
    """The sorted multiset of (base, step) pairs, i.e. the families stripped of their provenance."""
    return sorted((family.base, family.step) for family in families)


def assemble_levels(families: Sequence[EnergyFamily], e_max: Union[Rational, AlgScalar]) -> List[SpectrumLevel]:
    """Merges all family members with E ≤ e_max into physical levels, summing their ladder dimensions."""
    if not families:
        raise ValueError("No families to assemble")
    contributions = []
    for family_idx, family in enumerate(families):
        n = 0
        while family.energy(n) <= e_max:
            contributions.append((family.energy(n), (family_idx, n)))
            n += 1

    levels = []
    for energy, contributors in util.dict_generate_multi(contributions).items():
        contributors = tuple(sorted(contributors))
        degeneracy = sum(EnergyFamily.degeneracy(n) for _, n in contributors)
        levels.append(SpectrumLevel(energy, degeneracy, contributors))
    return sorted(levels, key=lambda level: level.energy)


def degeneracy_histogram(levels: Sequence[SpectrumLevel]) -> Dict[int, int]:
    """How many levels carry each total degeneracy."""
    return dict(sorted(collections.Counter(level.total_degeneracy for level in levels).items()))

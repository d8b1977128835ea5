"""Independent spectra: brute-force lattice enumeration, the exact SW sector formula and finite-difference eigenvalues."""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg

from algebra import core, spectrum, util
from algebra.core import AlgScalar
from numerics import grid as fdgrid

DEFAULT_EMAX = 40
MAX_FD_LEVELS = 10
RICHARDSON_POINTS = 500

SECTORS = ("+", "-")


class ConvergenceFailure(RuntimeError):
    def __init__(self, msg: str = ""):
        super().__init__(msg if msg else "Eigensolver did not converge")


def sector_energy(sys_or_l2: Union[core.SystemSpec, int], kappa: Optional[core.Rational], k: int,
                  sector: str = "+") -> AlgScalar:
    """Exact single-mode level l₂(2k + 1 ± s/2) of the singular mode, with ν(ν−1) = κ and ν = (1 ± s)/2."""
    if isinstance(sys_or_l2, core.SystemSpec):
        l2, radicand = sys_or_l2.l2, sys_or_l2.radicand
    else:
        l2, radicand = sys_or_l2, 1 + 4 * core.validate_kappa(kappa)
    if sector not in SECTORS:
        raise ValueError("Unknown sector: '{}'".format(sector))
    half_s = AlgScalar.radical(radicand) * Fraction(1, 2)
    offset = half_s if sector == "+" else -half_s
    return (offset + 2 * k + 1) * l2


def sector_energies(l2: int, kappa: core.Rational, count: int, sector: str = "+") -> List[AlgScalar]:
    return [sector_energy(l2, kappa, k, sector) for k in range(count)]


def _group_levels(contributions: List[Tuple[AlgScalar, tuple]]) -> List[spectrum.SpectrumLevel]:
    levels = [spectrum.SpectrumLevel(energy, len(contributors), tuple(sorted(contributors)))
              for energy, contributors in util.dict_generate_multi(contributions).items()]
    return sorted(levels, key=lambda level: level.energy)


def enumerate_spectrum(sys: core.SystemSpec, e_max: core.Rational = DEFAULT_EMAX) -> List[spectrum.SpectrumLevel]:
    """All states of the separable Hamiltonian with E ≤ e_max, grouped into exactly degenerate levels.

    Anisotropic states are labelled (n₁, n₂), SW-deformed ones (n₁, k, sector).
    """
    if e_max <= 0:
        raise ValueError(f"Energy cutoff must be positive, got {e_max}")
    l1, l2 = sys.l1, sys.l2
    contributions = []

    n1 = 0
    while sys.scalar(l1 * (n1 + Fraction(1, 2))) <= e_max:
        mode1 = sys.scalar(l1 * (n1 + Fraction(1, 2)))
        if sys.kind == core.SystemKind.Anisotropic:
            n2 = 0
            while mode1 + l2 * (n2 + Fraction(1, 2)) <= e_max:
                contributions.append((mode1 + l2 * (n2 + Fraction(1, 2)), (n1, n2)))
                n2 += 1
        else:
            for sector in SECTORS:
                k = 0
                while mode1 + sector_energy(sys, None, k, sector) <= e_max:
                    contributions.append((mode1 + sector_energy(sys, None, k, sector), (n1, k, sector)))
                    k += 1
        n1 += 1

    if not contributions:
        return []
    return _group_levels(contributions)


def lattice_count(sys: core.SystemSpec, e_max: core.Rational) -> int:
    """Number of occupation pairs (n₁, n₂) with l₁(n₁+½) + l₂(n₂+½) ≤ e_max, counted independently of the grouping."""
    count = 0
    for n1 in range(int(Fraction(e_max) / sys.l1) + 1):
        remainder = Fraction(e_max) - sys.l1 * (n1 + Fraction(1, 2)) - Fraction(sys.l2, 2)
        if remainder >= 0:
            count += math.floor(remainder / sys.l2) + 1
    return count


def fd_eigenvalues(l2: int, kappa: core.Rational, grid: Optional[fdgrid.GridSpec] = None,
                   count: int = 3) -> List[float]:
    """Lowest `count` eigenvalues of the discretised H₂, ascending. Only the regular "+" sector is resolved."""
    if not 1 <= count <= MAX_FD_LEVELS:
        raise ValueError(f"Between 1 and {MAX_FD_LEVELS} levels can be requested, not {count}")
    diagonal, off_diagonal = fdgrid.regular_sector_tridiagonal(l2, kappa, grid)
    try:
        energies = scipy.linalg.eigh_tridiagonal(diagonal, off_diagonal, eigvals_only=True, select="i",
                                                 select_range=(0, count - 1))
    except (np.linalg.LinAlgError, ValueError) as e:
        raise ConvergenceFailure(f"Eigensolver failed for l2={l2}, kappa={kappa}: {e}") from e
    return [float(energy) for energy in energies]


def richardson_ratios(l2: int, kappa: core.Rational, count: int = 3,
                      grid: Optional[fdgrid.GridSpec] = None) -> List[float]:
    """(ε(h) − ε(h/2)) / (ε(h/2) − ε(h/4)) for each of the lowest levels. Second order schemes yield ratios near 4."""
    grid = grid if grid is not None else fdgrid.default_grid(l2, RICHARDSON_POINTS)
    coarse = np.array(fd_eigenvalues(l2, kappa, grid, count))
    medium = np.array(fd_eigenvalues(l2, kappa, grid.refined(), count))
    fine = np.array(fd_eigenvalues(l2, kappa, grid.refined().refined(), count))
    return [float(ratio) for ratio in (coarse - medium) / (medium - fine)]


Entry = Tuple[Union[AlgScalar, float], int]


@dataclass
class SpectrumDiff:
    missing_in_a: List[Entry] = field(default_factory=list)
    missing_in_b: List[Entry] = field(default_factory=list)
    degeneracy_mismatches: List[Tuple[Union[AlgScalar, float], int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.missing_in_a and not self.missing_in_b and not self.degeneracy_mismatches

    def __json__(self) -> dict:
        return {"missing_in_a": [list(entry) for entry in self.missing_in_a],
                "missing_in_b": [list(entry) for entry in self.missing_in_b],
                "degeneracy_mismatches": [list(entry) for entry in self.degeneracy_mismatches],
                "pass": self.passed}

    def __str__(self) -> str:
        if self.passed:
            return "Spectra agree"
        return (f"{len(self.missing_in_a)} levels missing in a, {len(self.missing_in_b)} missing in b, "
                f"{len(self.degeneracy_mismatches)} degeneracy mismatches")


def _same_energy(first: Union[AlgScalar, float], second: Union[AlgScalar, float], tol: float) -> bool:
    if isinstance(first, AlgScalar) and isinstance(second, AlgScalar):
        return first == second
    return abs(float(first) - float(second)) <= tol


def compare_spectra(a: Sequence[spectrum.SpectrumLevel], b: Sequence[spectrum.SpectrumLevel],
                    tol: float = 1e-9) -> SpectrumDiff:
    """Merges two ascending level lists. Exact energies must be equal, float energies agree within `tol`."""
    diff = SpectrumDiff()
    a_idx, b_idx = 0, 0
    while a_idx < len(a) and b_idx < len(b):
        level_a, level_b = a[a_idx], b[b_idx]
        if _same_energy(level_a.energy, level_b.energy, tol):
            if level_a.total_degeneracy != level_b.total_degeneracy:
                diff.degeneracy_mismatches.append((level_a.energy, level_a.total_degeneracy,
                                                   level_b.total_degeneracy))
            a_idx += 1
            b_idx += 1
        elif level_a.value < level_b.value:
            diff.missing_in_b.append((level_a.energy, level_a.total_degeneracy))
            a_idx += 1
        else:
            diff.missing_in_a.append((level_b.energy, level_b.total_degeneracy))
            b_idx += 1

    diff.missing_in_b.extend((level.energy, level.total_degeneracy) for level in a[a_idx:])
    diff.missing_in_a.extend((level.energy, level.total_degeneracy) for level in b[b_idx:])
    return diff

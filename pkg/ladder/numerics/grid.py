"""Half-line finite-difference realization of the singular mode H₂ = p²/2 + l₂²x²/2 + κ/(2x²).

Interior points xₖ = k·h, k = 1..M with h = x_max/(M+1) and Dirichlet walls at 0 and x_max. The lowering operator of the
su(1,1) structure is A₂ = a₂² − V/l₂ with V = κ/(2x²) and a₂ = √(l₂/2)·x + D₁/√(2l₂). Dirichlet at the origin only selects
the regular "+" sector, whose states vanish like x^((1+s)/2).

The plain stencil loses its second order near the origin once κ ≠ 0, so eigenvalues are computed from the weighted
operator of `regular_sector_tridiagonal` instead. The commutator residuals stay on the plain stencil.
"""
import math
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
import scipy.linalg
import scipy.sparse

from algebra import core, util

DEFAULT_POINTS = 2000
MIN_POINTS = 64
RESIDUAL_POINTS = 239
X_MAX_SCALE = 12

# the residual window excludes the 1/x² singularity and the far wall, in units of the oscillator length 1/√l₂
RESIDUAL_WINDOW = (0.5, 5.0)


class GridTooCoarse(ValueError):
    def __init__(self, points: int, minimum: int = MIN_POINTS):
        self.points = points
        super().__init__(f"Grid with {points} points is too coarse, at least {minimum} are required")


@dataclass(frozen=True)
class GridSpec:
    x_max: float
    points: int

    @property
    def h(self) -> float:
        return self.x_max / (self.points + 1)

    def x(self) -> np.ndarray:
        return np.arange(1, self.points + 1) * self.h

    def refined(self) -> "GridSpec":
        """Same domain at half the spacing."""
        return GridSpec(self.x_max, 2 * self.points + 1)

    def __json__(self) -> dict:
        return {"x_max": util.round_float(self.x_max), "points": self.points}

    def __str__(self) -> str:
        return f"Grid(x_max={self.x_max:.6g}, M={self.points})"


def default_grid(l2: int, points: int = DEFAULT_POINTS) -> GridSpec:
    return GridSpec(X_MAX_SCALE / math.sqrt(l2), points)


def residual_grid(l2: int) -> GridSpec:
    return default_grid(l2, RESIDUAL_POINTS)


@dataclass(frozen=True)
class GridOperator:
    """A banded M×M matrix on the interior points of a grid."""
    matrix: scipy.sparse.csr_matrix
    grid: GridSpec

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", scipy.sparse.csr_matrix(self.matrix, dtype=float))

    def _check_grid(self, other: "GridOperator") -> None:
        if self.grid != other.grid:
            raise ValueError(f"Operators live on different grids: {self.grid} vs. {other.grid}")

    def tridiagonal(self) -> Tuple[np.ndarray, np.ndarray]:
        """Main and first off diagonal of a symmetric tridiagonal operator."""
        return self.matrix.diagonal(0), self.matrix.diagonal(1)

    def apply(self, vector: np.ndarray) -> np.ndarray:
        return self.matrix @ vector

    def __matmul__(self, other: "GridOperator") -> "GridOperator":
        self._check_grid(other)
        return GridOperator(self.matrix @ other.matrix, self.grid)

    def __add__(self, other: "GridOperator") -> "GridOperator":
        self._check_grid(other)
        return GridOperator(self.matrix + other.matrix, self.grid)

    def __sub__(self, other: "GridOperator") -> "GridOperator":
        self._check_grid(other)
        return GridOperator(self.matrix - other.matrix, self.grid)

    def __mul__(self, factor: float) -> "GridOperator":
        return GridOperator(self.matrix * float(factor), self.grid)

    __rmul__ = __mul__


class ModeTwoOperators(NamedTuple):
    H2: GridOperator
    A2: GridOperator
    A2dag: GridOperator


def _validate(l2: int, grid: GridSpec) -> None:
    if not isinstance(l2, int) or l2 < 1:
        raise core.NonPositiveMultiplier(f"Frequency multiplier must be a positive integer, got l2={l2}")
    if grid.points < MIN_POINTS:
        raise GridTooCoarse(grid.points)
    if grid.x_max <= 0:
        raise ValueError(f"Grid extent must be positive, got x_max={grid.x_max}")


def grid_mode2(l2: int, kappa: core.Rational, grid: Optional[GridSpec] = None) -> ModeTwoOperators:
    grid = grid if grid is not None else default_grid(l2)
    _validate(l2, grid)
    kappa = float(core.validate_kappa(kappa))
    x, h, points = grid.x(), grid.h, grid.points

    second_diff = scipy.sparse.diags([1.0, -2.0, 1.0], [-1, 0, 1], shape=(points, points)) / h ** 2
    first_diff = scipy.sparse.diags([-1.0, 1.0], [-1, 1], shape=(points, points)) / (2 * h)
    position = scipy.sparse.diags(x)
    potential = scipy.sparse.diags(kappa / (2 * x ** 2))

    hamiltonian = -0.5 * second_diff + scipy.sparse.diags(0.5 * l2 ** 2 * x ** 2) + potential
    lower = math.sqrt(l2 / 2) * position + first_diff / math.sqrt(2 * l2)
    raise_ = math.sqrt(l2 / 2) * position - first_diff / math.sqrt(2 * l2)
    a2 = lower @ lower - potential / l2
    a2dag = raise_ @ raise_ - potential / l2
    return ModeTwoOperators(GridOperator(hamiltonian, grid), GridOperator(a2, grid), GridOperator(a2dag, grid))


def ground_state(hamiltonian: GridOperator) -> Tuple[float, np.ndarray]:
    """Lowest eigenpair, with the state normalised to h·Σψ² = 1."""
    diagonal, off_diagonal = hamiltonian.tridiagonal()
    energies, vectors = scipy.linalg.eigh_tridiagonal(diagonal, off_diagonal, select="i", select_range=(0, 0))
    state = vectors[:, 0] / math.sqrt(hamiltonian.grid.h)
    # fix the overall sign so that results do not depend on the solver
    if state[np.argmax(np.abs(state))] < 0:
        state = -state
    return float(energies[0]), state


class GridResiduals(NamedTuple):
    grid: GridSpec
    lowering: float
    closure: float


def _window_norm(values: np.ndarray, grid: GridSpec, l2: int) -> float:
    x = grid.x()
    lower, upper = (bound / math.sqrt(l2) for bound in RESIDUAL_WINDOW)
    window = (x >= lower) & (x <= upper)
    return math.sqrt(grid.h * float(np.sum(values[window] ** 2)))


def grid_commutator_residuals(l2: int, kappa: core.Rational, grid: Optional[GridSpec] = None) -> GridResiduals:
    """Discrete L² norms of ([H₂,A₂] + 2l₂A₂)ψ₀ and ([A₂,A₂†] − 4H₂/l₂)ψ₀ on the FD ground state ψ₀.

    Both vanish in the continuum limit and are measured on the window 0.5/√l₂ ≤ x ≤ 5/√l₂ only.
    """
    grid = grid if grid is not None else residual_grid(l2)
    h2, a2, a2dag = grid_mode2(l2, kappa, grid)
    _, psi = ground_state(h2)
    lowering = (h2 @ a2 - a2 @ h2) + a2 * (2 * l2)
    closure = (a2 @ a2dag - a2dag @ a2) - h2 * (4 / l2)
    return GridResiduals(grid, _window_norm(lowering.apply(psi), grid, l2), _window_norm(closure.apply(psi), grid, l2))


class ResidualStudy(NamedTuple):
    residuals: List[GridResiduals]
    lowering_ratios: List[float]
    closure_ratios: List[float]


def _ratios(values: List[float]) -> List[float]:
    return [coarse / fine if fine else math.inf for coarse, fine in zip(values, values[1:])]


def residual_convergence(l2: int, kappa: core.Rational, grid: Optional[GridSpec] = None, *, refinements: int = 2,
                         verbose: bool = False) -> ResidualStudy:
    """Residuals on a grid and its successive halvings. Second order convergence shows up as ratios close to 4."""
    logger = util.make_logger(verbose)
    grid = grid if grid is not None else residual_grid(l2)
    residuals = []
    for _ in range(refinements + 1):
        residuals.append(grid_commutator_residuals(l2, kappa, grid))
        logger(f"{grid}: lowering residual {residuals[-1].lowering:.4e}, closure residual {residuals[-1].closure:.4e}")
        grid = grid.refined()
    return ResidualStudy(residuals, _ratios([res.lowering for res in residuals]),
                         _ratios([res.closure for res in residuals]))


def regular_sector_tridiagonal(l2: int, kappa: core.Rational,
                               grid: Optional[GridSpec] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Symmetric (diagonal, off diagonal) pair whose eigenvalues are the "+" sector levels of H₂.

    The regular solutions behave like x^ν with ν = (1+s)/2, so ψ = x^ν·u leaves a smooth, even u that solves
    −(w u')'/2 + l₂²x²·w u/2 = E·w u with weight w = x^(1+s). The 1/x² term drops out. The weighted problem is
    discretised by finite volumes on the cells [(k−1)h, kh]: fluxes use the exact face weights (w = 0 at the origin),
    the mass of each cell is the exact cell average of w, and u is pinned to zero one cell beyond the last. Scaling by
    the square root of the masses yields a symmetric tridiagonal matrix whose eigenvalues converge at second order.
    """
    grid = grid if grid is not None else default_grid(l2)
    _validate(l2, grid)
    power = 1 + math.sqrt(1 + 4 * float(core.validate_kappa(kappa)))
    h, points = grid.h, grid.points

    faces = np.arange(points + 1) * h
    centres = (np.arange(1, points + 1) - 0.5) * h
    face_weights = faces ** power
    masses = np.diff(faces ** (power + 1)) / ((power + 1) * h)

    stiffness = 0.5 * (face_weights[:-1] + face_weights[1:]) / h ** 2
    diagonal = stiffness / masses + 0.5 * l2 ** 2 * centres ** 2
    off_diagonal = -0.5 * face_weights[1:-1] / (h ** 2 * np.sqrt(masses[:-1] * masses[1:]))
    return diagonal, off_diagonal

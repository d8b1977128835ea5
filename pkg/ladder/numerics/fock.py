"""Truncated two-mode Fock space, on which the ladder identities are checked as sparse matrix identities.

States |n₁, n₂⟩ with 0 ≤ nᵢ ≤ nᵢ_max are indexed row-major, i.e. index = n₁·(n₂_max+1) + n₂. Truncation only corrupts
columns whose images leave the box, hence every identity check is restricted to an interior mask.
"""
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple, Union

import numpy as np
import scipy.sparse
import scipy.sparse.linalg

from algebra import core, poly, spectrum, util

DEFAULT_SIZE_CAP = 10 ** 6

Shift = Tuple[int, int]


class SizeOverflow(ValueError):
    def __init__(self, dimension: int, cap: int):
        self.dimension, self.cap = dimension, cap
        super().__init__(f"Basis of dimension {dimension} exceeds the size cap of {cap}")


class EmptyMask(ValueError):
    def __init__(self, msg: str = ""):
        super().__init__(msg if msg else "Margins exhaust the basis, no interior state is left")


class DimensionMismatch(ValueError):
    def __init__(self, first: int, second: int):
        super().__init__(f"Operators act on different spaces: {first} vs. {second}")


@dataclass(frozen=True)
class FockBasis:
    n1_max: int
    n2_max: int

    @property
    def dimension(self) -> int:
        return (self.n1_max + 1) * (self.n2_max + 1)

    def index(self, n1: int, n2: int) -> int:
        if not (0 <= n1 <= self.n1_max and 0 <= n2 <= self.n2_max):
            raise IndexError(f"State |{n1},{n2}> outside of basis {self}")
        return n1 * (self.n2_max + 1) + n2

    def occupation(self, index: int) -> Tuple[int, int]:
        if not 0 <= index < self.dimension:
            raise IndexError(f"Index {index} outside of basis {self}")
        return divmod(index, self.n2_max + 1)

    def occupations(self) -> Tuple[np.ndarray, np.ndarray]:
        """Occupation numbers (n₁, n₂) of all states, as arrays in basis order."""
        indices = np.arange(self.dimension)
        return indices // (self.n2_max + 1), indices % (self.n2_max + 1)

    def __len__(self) -> int:
        return self.dimension

    def __str__(self) -> str:
        return f"Fock({self.n1_max},{self.n2_max})"


def build_basis(n1_max: int, n2_max: int, *, size_cap: int = DEFAULT_SIZE_CAP) -> FockBasis:
    if n1_max < 1 or n2_max < 1:
        raise ValueError(f"Cutoffs must be at least 1, got ({n1_max}, {n2_max})")
    basis = FockBasis(n1_max, n2_max)
    if basis.dimension > size_cap:
        raise SizeOverflow(basis.dimension, size_cap)
    return basis


def _combine_shifts(first: Optional[Shift], second: Optional[Shift]) -> Optional[Shift]:
    if first is None or second is None:
        return None
    return first[0] + second[0], first[1] + second[1]


@dataclass(frozen=True)
class SparseOperator:
    """A real sparse matrix on a Fock basis.

    `shift` is the change (Δn₁, Δn₂) a monomial operator applies to every state it does not annihilate. Sums of
    operators with different shifts have no shift (`None`).
    """
    matrix: scipy.sparse.csr_matrix
    shift: Optional[Shift] = None

    def __post_init__(self) -> None:
        matrix = scipy.sparse.csr_matrix(self.matrix, dtype=float)
        matrix.sum_duplicates()
        if not np.all(np.isfinite(matrix.data)):
            raise ValueError("Operator contains non-finite entries")
        object.__setattr__(self, "matrix", matrix)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def _check_dimension(self, other: "SparseOperator") -> None:
        if self.dimension != other.dimension:
            raise DimensionMismatch(self.dimension, other.dimension)

    def adjoint(self) -> "SparseOperator":
        shift = (-self.shift[0], -self.shift[1]) if self.shift is not None else None
        return SparseOperator(self.matrix.transpose().tocsr(), shift)

    def magnitude(self) -> "SparseOperator":
        """The entry-wise absolute value |A|."""
        return SparseOperator(abs(self.matrix), self.shift)

    def power(self, exponent: int) -> "SparseOperator":
        result = identity_operator(self.dimension)
        for _ in range(exponent):
            result = result @ self
        return result

    def diagonal(self) -> np.ndarray:
        return self.matrix.diagonal()

    def column_norms(self, columns: np.ndarray) -> np.ndarray:
        return scipy.sparse.linalg.norm(self.matrix[:, columns], axis=0)

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        self._check_dimension(other)
        return SparseOperator(self.matrix @ other.matrix, _combine_shifts(self.shift, other.shift))

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        self._check_dimension(other)
        shift = self.shift if self.shift == other.shift else None
        return SparseOperator(self.matrix + other.matrix, shift)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        return self + (-other)

    def __neg__(self) -> "SparseOperator":
        return SparseOperator(-self.matrix, self.shift)

    def __mul__(self, factor: Union[float, Fraction]) -> "SparseOperator":
        return SparseOperator(self.matrix * float(factor), self.shift)

    __rmul__ = __mul__

    def __truediv__(self, divisor: Union[float, Fraction]) -> "SparseOperator":
        return self * (1 / float(divisor))


def identity_operator(dimension: int) -> SparseOperator:
    return SparseOperator(scipy.sparse.identity(dimension, format="csr"), (0, 0))


def zero_operator(dimension: int) -> SparseOperator:
    return SparseOperator(scipy.sparse.csr_matrix((dimension, dimension)), None)


def diagonal_operator(values: np.ndarray) -> SparseOperator:
    return SparseOperator(scipy.sparse.diags(np.asarray(values, dtype=float), format="csr"), (0, 0))


def _single_mode(n_max: int, kind: str) -> Tuple[scipy.sparse.csr_matrix, int]:
    entries = np.sqrt(np.arange(1, n_max + 1))
    lower = scipy.sparse.csr_matrix((entries, (np.arange(0, n_max), np.arange(1, n_max + 1))),
                                    shape=(n_max + 1, n_max + 1))
    if kind == "lower":
        return lower, -1
    elif kind == "raise":
        return lower.transpose().tocsr(), +1
    elif kind == "number":
        return scipy.sparse.diags(np.arange(n_max + 1, dtype=float), format="csr"), 0
    raise ValueError("Unknown operator kind: '{}'".format(kind))


def mode_operator(basis: FockBasis, mode: int, kind: str) -> SparseOperator:
    """The single-mode operator a, a† or N (`kind` = "lower", "raise" or "number") of mode 1 or 2, lifted to the
    two-mode basis."""
    if mode == 1:
        single, delta = _single_mode(basis.n1_max, kind)
        matrix = scipy.sparse.kron(single, scipy.sparse.identity(basis.n2_max + 1), format="csr")
        return SparseOperator(matrix, (delta, 0))
    elif mode == 2:
        single, delta = _single_mode(basis.n2_max, kind)
        matrix = scipy.sparse.kron(scipy.sparse.identity(basis.n1_max + 1), single, format="csr")
        return SparseOperator(matrix, (0, delta))
    raise ValueError("Unknown mode: '{}'".format(mode))


class LadderTriple(NamedTuple):
    J0: SparseOperator
    Jplus: SparseOperator
    Jminus: SparseOperator
    H: SparseOperator


def _require_anisotropic(sys: core.SystemSpec) -> None:
    if sys.kind != core.SystemKind.Anisotropic:
        raise spectrum.UnsupportedSystem(sys, "Fock-space ladder operators are only available for anisotropic systems")


def ladder_triple(sys: core.SystemSpec, basis: FockBasis) -> LadderTriple:
    """J₊ = (a₁†)^l₂·(a₂)^l₁, J₋ = J₊†, J₀ = (N₁/l₂ − N₂/l₁)/2 and H = l₁(N₁+½) + l₂(N₂+½)."""
    _require_anisotropic(sys)
    l1, l2 = sys.l1, sys.l2
    jplus = mode_operator(basis, 1, "raise").power(l2) @ mode_operator(basis, 2, "lower").power(l1)
    n1, n2 = mode_operator(basis, 1, "number"), mode_operator(basis, 2, "number")
    identity = identity_operator(basis.dimension)
    j0 = (n1 / l2 - n2 / l1) * 0.5
    hamiltonian = (n1 + identity * 0.5) * l1 + (n2 + identity * 0.5) * l2
    return LadderTriple(j0, jplus, jplus.adjoint(), hamiltonian)


def state_quantum_numbers(sys: core.SystemSpec, basis: FockBasis) -> List[Tuple[Fraction, Fraction]]:
    """The exact eigenvalues (m, E) of (J₀, H) on every basis state, in basis order."""
    _require_anisotropic(sys)
    labels = []
    for n1, n2 in itertools.product(range(basis.n1_max + 1), range(basis.n2_max + 1)):
        m = (Fraction(n1, sys.l2) - Fraction(n2, sys.l1)) / 2
        energy = sys.l1 * (n1 + Fraction(1, 2)) + sys.l2 * (n2 + Fraction(1, 2))
        labels.append((m, energy))
    return labels


def polynomial_operator(p: Union[poly.BivarPoly, poly.FactoredPoly], sys: core.SystemSpec,
                        basis: FockBasis, *, m_shift: int = 0) -> SparseOperator:
    """p(J₀ + m_shift, H) as a diagonal matrix. The entries are evaluated exactly and rounded only once."""
    values = [float(p.evaluate(m + m_shift, energy)) for m, energy in state_quantum_numbers(sys, basis)]
    return diagonal_operator(np.array(values))


def interior_mask(basis: FockBasis, margin1: int, margin2: int) -> np.ndarray:
    """Indices of all states with nᵢ ≤ nᵢ_max − marginᵢ, i.e. those whose images stay inside the truncation."""
    if margin1 < 0 or margin2 < 0:
        raise ValueError(f"Margins must be non-negative, got ({margin1}, {margin2})")
    n1, n2 = basis.occupations()
    mask = np.flatnonzero((n1 <= basis.n1_max - margin1) & (n2 <= basis.n2_max - margin2))
    if not len(mask):
        raise EmptyMask(f"Margins ({margin1}, {margin2}) exhaust basis {basis}")
    return mask


def commutator(first: SparseOperator, second: SparseOperator) -> SparseOperator:
    return first @ second - second @ first


def anticommutator(first: SparseOperator, second: SparseOperator) -> SparseOperator:
    return first @ second + second @ first


def product_magnitude(first: SparseOperator, second: SparseOperator) -> SparseOperator:
    """|AB| + |BA|, the size of the terms that cancel in a commutator."""
    return (first @ second).magnitude() + (second @ first).magnitude()


@dataclass(frozen=True)
class IdentityReport:
    max_residual: float
    passed: bool
    worst_state: Optional[Tuple[int, int]] = None
    checked_states: int = 0

    def __json__(self) -> dict:
        return {"max_residual": util.round_float(self.max_residual), "pass": self.passed,
                "worst_state": list(self.worst_state) if self.worst_state else None,
                "checked_states": self.checked_states}


def check_identity(lhs: SparseOperator, rhs: SparseOperator, mask: np.ndarray, tol: float, *,
                   reference: Optional[SparseOperator] = None, basis: Optional[FockBasis] = None,
                   verbose: bool = False) -> IdentityReport:
    """Compares two operators column by column on the masked states.

    The residual of column c is ‖(lhs − rhs)e_c‖ / max(1, ‖lhs e_c‖, ‖rhs e_c‖, ‖reference e_c‖), which reduces to the
    absolute residual for O(1) columns. `reference` should carry the magnitude of terms that cancel inside lhs or rhs.
    """
    lhs._check_dimension(rhs)
    if reference is not None:
        lhs._check_dimension(reference)
    logger = util.make_logger(verbose)
    mask = np.asarray(mask)
    if not len(mask):
        raise EmptyMask()

    scale = np.maximum(1.0, np.maximum(lhs.column_norms(mask), rhs.column_norms(mask)))
    if reference is not None:
        scale = np.maximum(scale, reference.column_norms(mask))
    residuals = (lhs - rhs).column_norms(mask) / scale

    worst_column = int(np.argmax(residuals))
    max_residual = float(residuals[worst_column])
    worst_state = basis.occupation(int(mask[worst_column])) if basis is not None else None
    logger(f"Identity check on {len(mask)} states: max residual {max_residual:.3e} at state {worst_state}")
    return IdentityReport(max_residual, max_residual < tol, worst_state, len(mask))



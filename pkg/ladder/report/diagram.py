"""Level-diagram datasets: one row per lattice state, states of equal energy form one degenerate level."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

import pandas as pd

from algebra import core, poly, spectrum, util
from algebra.core import AlgScalar


@dataclass(frozen=True)
class DiagramRow:
    n1: int
    n2: int
    energy: AlgScalar
    family_label: str

    @property
    def parity(self) -> str:
        """Parity of n₁ + n₂. For 2:2 the family label refines it: (1,1) and (2,2) are even, (1,2) and (2,1) odd."""
        return "even" if (self.n1 + self.n2) % 2 == 0 else "odd"

    def __json__(self) -> dict:
        return {"n1": self.n1, "n2": self.n2, "energy": util.round_float(float(self.energy)),
                "exact": str(self.energy), "family_label": self.family_label, "parity": self.parity}


def emit_level_diagram(sys: core.SystemSpec, e_max: core.Rational) -> List[DiagramRow]:
    """Assigns every state |n₁, n₂⟩ with E ≤ e_max to the family ladder it belongs to.

    State (n₁, n₂) sits in family (i, j) = (n₁ mod l₂ + 1, n₂ mod l₁ + 1) at ladder index n = ⌊n₁/l₂⌋ + ⌊n₂/l₁⌋. The
    assignment is cross-checked against the derived family energies.
    """
    if sys.kind != core.SystemKind.Anisotropic:
        raise spectrum.UnsupportedSystem(sys, "Level diagrams are only available for anisotropic systems")
    families: Dict[Tuple[int, int], spectrum.EnergyFamily] = {
        family.label[:2]: family for family in spectrum.solve_families(poly.structure_function(sys), sys)}

    rows = []
    e_max = Fraction(e_max)
    for n1 in range(int(e_max / sys.l1) + 1):
        for n2 in range(int(e_max / sys.l2) + 1):
            energy = sys.scalar(sys.l1 * (n1 + Fraction(1, 2)) + sys.l2 * (n2 + Fraction(1, 2)))
            if energy > e_max:
                continue
            label = (n1 % sys.l2 + 1, n2 % sys.l1 + 1)
            family = families[label]
            if family.energy(n1 // sys.l2 + n2 // sys.l1) != energy:
                raise util.StateError(f"State |{n1},{n2}> does not lie on family {family}")
            rows.append(DiagramRow(n1, n2, energy, f"{label[0]},{label[1]}"))
    return sorted(rows, key=lambda row: (row.energy, row.n1, row.n2))


def diagram_frame(rows: List[DiagramRow]) -> pd.DataFrame:
    return pd.DataFrame([row.__json__() for row in rows], columns=["n1", "n2", "energy", "exact", "family_label",
                                                                 "parity"])

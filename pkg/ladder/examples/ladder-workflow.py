#!/usr/bin/env python3

# make sure to run this example script from within the examples/ directory in order to have all paths setup correctly

import sys

sys.path.append("../")
from algebra import core, poly, published, spectrum, util  # noqa: E402
from numerics import oracle  # noqa: E402


# ===
# The 3:1 oscillator is the default, other systems can be supplied as "l1 l2" or "l1 l2 kappa" on the command line
args = sys.argv[1:]
if len(args) >= 3:
    system = core.make_system("sw", int(args[0]), int(args[1]), util.parse_rational(args[2]))
elif len(args) == 2:
    system = core.make_system("aniso", int(args[0]), int(args[1]))
else:
    system = core.make_system("fokas-lagerstrom")
e_max = 20
print("System:", system)
print()


# ===
# The structure function phi(m, E) is the eigenvalue of J+J- and is fully factored into affine forms in (m, E)
phi = poly.structure_function(system)
print("phi(m, E) =", phi)
print()


# ===
# Its difference yields the commutator [J+, J-] as a polynomial in J0, the energy enters as a parameter
commutator = poly.commutator_polynomial(phi)
alphas, casimir = poly.casimir_split(phi)
print("P(m; E) =", commutator)
print("deg_m =", commutator.deg_m())
print("C(E) =", casimir)
print()


# ===
# Each ordered pair of factors closes a finite ladder, which yields one arithmetic family of energy levels
families = spectrum.solve_families(phi, system)
print(len(families), "energy families:")
for family in families:
    print(" ", family, f"[{family.label_text()}]")
print()


# ===
# Adding up the ladder dimensions of all families that pass through an energy yields the physical degeneracy
levels = spectrum.assemble_levels(families, e_max)
for level in levels:
    print(" ", level)
print()


# ===
# Brute-force lattice enumeration provides an independent spectrum to compare against
diff = oracle.compare_spectra(levels, oracle.enumerate_spectrum(system, e_max))
print("Solver vs. enumeration:", diff)
print()


# ===
# Finally, the closed forms from the literature are compared against the derived ones
for entry in published.discrepancy_ledger(system):
    print(f"  {entry.name}: {entry.status} ({entry.detail})")

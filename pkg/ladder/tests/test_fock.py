import math
import pathlib
import sys
import unittest

import numpy as np

sys.path.append(str(pathlib.Path(__file__).resolve().parent.parent))
from algebra import core, poly, spectrum  # noqa: E402
from numerics import fock  # noqa: E402


class FockBasisTests(unittest.TestCase):
    def test_dimensions(self):
        self.assertEqual(fock.build_basis(1, 1).dimension, 4)
        self.assertEqual(fock.build_basis(40, 40).dimension, 1681)

    def test_index_round_trip(self):
        basis = fock.build_basis(3, 5)
        self.assertEqual(basis.occupation(basis.index(2, 4)), (2, 4))
        with self.assertRaises(IndexError):
            basis.index(4, 0)

    def test_invalid_cutoffs(self):
        with self.assertRaises(ValueError):
            fock.build_basis(0, 5)
        with self.assertRaises(fock.SizeOverflow):
            fock.build_basis(40, 40, size_cap=1000)


class ModeOperatorTests(unittest.TestCase):
    def setUp(self):
        self.basis = fock.build_basis(5, 5)

    def test_lowering_annihilates_vacuum(self):
        vacuum = np.zeros(self.basis.dimension)
        vacuum[self.basis.index(0, 0)] = 1.0
        for mode in (1, 2):
            lowered = fock.mode_operator(self.basis, mode, "lower").matrix @ vacuum
            self.assertEqual(np.count_nonzero(lowered), 0)

    def test_raising_matrix_element(self):
        raising = fock.mode_operator(self.basis, 1, "raise")
        self.assertAlmostEqual(raising.matrix[self.basis.index(3, 0), self.basis.index(2, 0)], math.sqrt(3))
        self.assertEqual(raising.shift, (1, 0))

    def test_number_operator_is_diagonal(self):
        number = fock.mode_operator(self.basis, 2, "number")
        _, n2 = self.basis.occupations()
        np.testing.assert_array_equal(number.diagonal(), n2)
        self.assertEqual(number.matrix.nnz, np.count_nonzero(n2))

    def test_unknown_kind(self):
        with self.assertRaises(ValueError):
            fock.mode_operator(self.basis, 1, "squeeze")
        with self.assertRaises(ValueError):
            fock.mode_operator(self.basis, 3, "lower")

    def test_dimension_mismatch(self):
        with self.assertRaises(fock.DimensionMismatch):
            fock.identity_operator(4) @ fock.identity_operator(9)


class LadderTripleTests(unittest.TestCase):
    def test_ladder_shift(self):
        triple = fock.ladder_triple(core.make_system("aniso", 3, 1), fock.build_basis(6, 6))
        self.assertEqual(triple.Jplus.shift, (1, -3))
        self.assertEqual(triple.Jminus.shift, (-1, 3))

    def test_j0_eigenvalues(self):
        basis = fock.build_basis(4, 4)
        triple = fock.ladder_triple(core.make_system("aniso", 2, 2), basis)
        n1, n2 = basis.occupations()
        np.testing.assert_allclose(triple.J0.diagonal(), (n1 - n2) / 4)
        np.testing.assert_allclose(triple.H.diagonal(), 2 * (n1 + n2 + 1))

    def test_sw_has_no_fock_triple(self):
        with self.assertRaises(spectrum.UnsupportedSystem):
            fock.ladder_triple(core.make_system("sw", 1, 1, 0), fock.build_basis(4, 4))


class InteriorMaskTests(unittest.TestCase):
    def test_mask_sizes(self):
        basis = fock.build_basis(10, 10)
        self.assertEqual(len(fock.interior_mask(basis, 2, 2)), 81)
        self.assertEqual(len(fock.interior_mask(basis, 0, 0)), 121)

    def test_mask_respects_margins(self):
        basis = fock.build_basis(10, 10)
        for index in fock.interior_mask(basis, 3, 1):
            n1, n2 = basis.occupation(int(index))
            self.assertLessEqual(n1, 7)
            self.assertLessEqual(n2, 9)

    def test_exhausted_basis(self):
        with self.assertRaises(fock.EmptyMask):
            fock.interior_mask(fock.build_basis(10, 10), 11, 0)


class IdentityCheckTests(unittest.TestCase):
    def test_ladder_commutator(self):
        sys_spec = core.make_system("fokas-lagerstrom")
        basis = fock.build_basis(20, 20)
        j0, jplus, _, _ = fock.ladder_triple(sys_spec, basis)
        mask = fock.interior_mask(basis, sys_spec.l2, sys_spec.l1)
        report = fock.check_identity(fock.commutator(j0, jplus), jplus, mask, 1e-10,
                                     reference=fock.product_magnitude(j0, jplus), basis=basis)
        self.assertTrue(report.passed, report.max_residual)
        self.assertEqual(report.checked_states, len(mask))

    def test_structure_identity(self):
        sys_spec = core.make_system("aniso", 2, 2)
        basis = fock.build_basis(20, 20)
        _, jplus, jminus, _ = fock.ladder_triple(sys_spec, basis)
        commutator = poly.commutator_polynomial(poly.structure_function(sys_spec))
        mask = fock.interior_mask(basis, 4, 4)
        report = fock.check_identity(fock.commutator(jplus, jminus),
                                     fock.polynomial_operator(commutator, sys_spec, basis), mask, 1e-9,
                                     reference=fock.product_magnitude(jplus, jminus), basis=basis)
        self.assertTrue(report.passed, report.max_residual)

    def test_phi_is_product_of_ladders(self):
        sys_spec = core.make_system("aniso", 2, 1)
        basis = fock.build_basis(12, 12)
        _, jplus, jminus, _ = fock.ladder_triple(sys_spec, basis)
        phi = poly.structure_function(sys_spec)
        mask = fock.interior_mask(basis, 1, 2)
        report = fock.check_identity(jplus @ jminus, fock.polynomial_operator(phi, sys_spec, basis), mask, 1e-9)
        self.assertTrue(report.passed, report.max_residual)

    def test_injected_fault_is_detected(self):
        sys_spec = core.make_system("aniso", 2, 2)
        basis = fock.build_basis(20, 20)
        _, jplus, jminus, _ = fock.ladder_triple(sys_spec, basis)
        commutator = poly.commutator_polynomial(poly.structure_function(sys_spec))
        fault = np.zeros(basis.dimension)
        fault[basis.index(0, 0)] = 1e-3
        rhs = fock.polynomial_operator(commutator, sys_spec, basis) + fock.diagonal_operator(fault)
        report = fock.check_identity(fock.commutator(jplus, jminus), rhs, fock.interior_mask(basis, 4, 4), 1e-9,
                                     reference=fock.product_magnitude(jplus, jminus), basis=basis)
        self.assertFalse(report.passed)
        self.assertAlmostEqual(report.max_residual, 1e-3, places=9)
        self.assertEqual(report.worst_state, (0, 0))
        self.assertFalse(report.__json__()["pass"])

    def test_empty_mask(self):
        identity = fock.identity_operator(4)
        with self.assertRaises(fock.EmptyMask):
            fock.check_identity(identity, identity, np.array([], dtype=int), 1e-9)


if __name__ == "__main__":
    unittest.main()

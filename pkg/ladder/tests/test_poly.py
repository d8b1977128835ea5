import pathlib
import sys
import unittest
from fractions import Fraction

import numpy as np

sys.path.append(str(pathlib.Path(__file__).resolve().parent.parent))
from algebra import core, poly  # noqa: E402
from algebra.core import AlgScalar  # noqa: E402
from algebra.poly import BivarPoly, LinearFactor  # noqa: E402
from tests import regression_suite  # noqa: E402

F = Fraction


class BivarPolyTests(unittest.TestCase):
    def test_zero_coefficients_are_dropped(self):
        p = BivarPoly({(1, 0): 2, (0, 1): 0})
        self.assertEqual(list(p.coefficients), [(1, 0)])
        self.assertEqual(BivarPoly({}).deg_m(), -1)

    def test_shift_m_binomial(self):
        m = BivarPoly.monomial(1, 0)
        shifted = (m ** 3).shift_m(1)
        regression_suite.assert_poly_equal(shifted, regression_suite.poly_from_terms({(3, 0): 1, (2, 0): 3,
                                                                                      (1, 0): 3, (0, 0): 1}))

    def test_scale_e(self):
        e_hat = BivarPoly.monomial(0, 2, 1)
        regression_suite.assert_poly_equal(e_hat.scale_e(F(1, 2)), regression_suite.poly_from_terms({(0, 2): F(1, 4)}))

    def test_exact_evaluation(self):
        p = regression_suite.poly_from_terms({(2, 0): 1, (0, 1): F(1, 2), (0, 0): -3})
        self.assertEqual(poly.eval_poly(p, F(1, 2), 4), F(1, 4) + 2 - 3)

    def test_rendering(self):
        p = regression_suite.poly_from_terms({(3, 0): -64, (1, 2): 1, (1, 0): -12})
        self.assertEqual(str(p), "-64*m^3 + m*E^2 - 12*m")
        self.assertEqual(str(BivarPoly({})), "0")


class LinearFactorTests(unittest.TestCase):
    def test_evaluate_and_shift(self):
        factor = LinearFactor(2, F(1, 2), AlgScalar.rational(F(-3, 2)))
        self.assertEqual(factor.evaluate(1, 3), 2)
        self.assertEqual(factor.shift_m(1).evaluate(0, 3), 2)

    def test_parallel_factors(self):
        first = LinearFactor(2, F(1, 3), AlgScalar.rational(0))
        self.assertTrue(first.is_parallel(LinearFactor(4, F(2, 3), AlgScalar.rational(1))))
        self.assertFalse(first.is_parallel(LinearFactor(-2, F(1, 3), AlgScalar.rational(1))))


class StructureFunctionTests(unittest.TestCase):
    def test_su2_commutator(self):
        phi = poly.structure_function(core.make_system("aniso", 1, 1))
        regression_suite.assert_poly_equal(poly.commutator_polynomial(phi), regression_suite.poly_from_terms({(1, 0): 2}))
        alphas, casimir = poly.casimir_split(phi)
        regression_suite.assert_poly_equal(casimir, regression_suite.poly_from_terms({(0, 2): F(1, 2), (0, 0): F(-1, 2)}))
        regression_suite.assert_poly_equal(alphas[2], regression_suite.poly_from_terms({(0, 0): 2}))
        self.assertTrue(alphas[0].is_zero())

    def test_quartic_ladder_golden(self):
        # with E = 2Ê: 4(Ê² − 3)m − 64m³ and Ê⁴/8 − 5Ê²/4 + 9/8
        phi = poly.structure_function(core.make_system("aniso", 2, 2))
        expected = regression_suite.poly_from_terms({(1, 2): 1, (1, 0): -12, (3, 0): -64})
        regression_suite.assert_poly_equal(poly.commutator_polynomial(phi), expected)
        _, casimir = poly.casimir_split(phi)
        expected_casimir = regression_suite.poly_from_terms({(0, 4): F(1, 128), (0, 2): F(-5, 16), (0, 0): F(9, 8)})
        regression_suite.assert_poly_equal(casimir, expected_casimir)

    def test_three_to_one_golden(self):
        phi = poly.structure_function(core.make_system("aniso", 3, 1))
        commutator = poly.commutator_polynomial(phi)
        expected = regression_suite.poly_from_terms({(3, 0): 108,
                                                     (2, 0): 54, (2, 1): -27,
                                                     (1, 0): 30, (1, 1): -9,
                                                     (0, 3): F(1, 4), (0, 1): -3, (0, 0): 4})
        regression_suite.assert_poly_equal(commutator, expected)
        self.assertEqual(commutator.leading_m_coefficient(), regression_suite.poly_from_terms({(0, 0): 108}))

        _, casimir = poly.casimir_split(phi)
        expected_casimir = regression_suite.poly_from_terms({(0, 4): F(1, 24), (0, 3): F(-1, 12), (0, 2): F(-1, 6),
                                                             (0, 1): F(7, 3), (0, 0): -4})
        regression_suite.assert_poly_equal(casimir, expected_casimir)

    def test_casimir_roots(self):
        # (E − 2)(E + 4)(E² − 4E + 12)/24 vanishes at the ground state energy E = 2
        _, casimir = poly.casimir_split(poly.structure_function(core.make_system("fokas-lagerstrom")))
        self.assertEqual(casimir.evaluate(0, 2), 0)
        self.assertEqual(casimir.evaluate(0, -4), 0)

    def test_anisotropic_order(self):
        for l1 in range(1, 6):
            for l2 in range(1, 6):
                commutator = poly.commutator_polynomial(poly.structure_function(core.make_system("aniso", l1, l2)))
                self.assertEqual(commutator.deg_m(), l1 + l2 - 1, f"({l1},{l2})")

    def test_sw_order(self):
        for kappa in (F(-1, 5), F(1, 5), F(1, 3)):
            for l1, l2 in ((1, 1), (1, 2), (2, 1)):
                sys_spec = core.make_system("sw", l1, l2, kappa)
                commutator = poly.commutator_polynomial(poly.structure_function(sys_spec))
                self.assertEqual(commutator.deg_m(), 2 * (l1 + l2) - 1, str(sys_spec))

    def test_sw_factor_count_and_tags(self):
        phi = poly.structure_function(core.make_system("sw", 2, 1, F(1, 3)))
        self.assertEqual(len(phi), 2 * (2 + 1))
        self.assertEqual(sorted({tag.sector for tag in phi.tags}), ["+", "-", "even", "odd"])

    def test_sw_reduces_to_rationals_at_kappa_zero(self):
        phi = poly.structure_function(core.make_system("sw", 1, 2, 0))
        self.assertTrue(all(coefficient.is_rational() for coefficient in phi.expand().coefficients.values()))

    def test_casimir_split_consistency(self):
        for sys_spec in (core.make_system("aniso", 3, 2), core.make_system("sw", 1, 2, F(1, 5))):
            phi = poly.structure_function(sys_spec)
            alphas, casimir = poly.casimir_split(phi)
            expanded = phi.expand()
            regression_suite.assert_poly_equal(poly.reconstruct_casimir(phi, alphas), casimir, str(sys_spec))
            regression_suite.assert_poly_equal(expanded.at_m(0) + expanded.at_m(1), casimir, str(sys_spec))
            self.assertTrue(all(alpha.deg_m() <= 0 for alpha in alphas))

    def test_factored_and_expanded_evaluation_agree(self):
        rng = np.random.default_rng(1729)
        for sys_spec in (core.make_system("sw", 1, 1, F(1, 3)), core.make_system("aniso", 3, 2),
                         core.make_system("sw", 2, 1, F(-1, 5))):
            phi = poly.structure_function(sys_spec)
            expanded = phi.expand()
            for _ in range(20):
                m = F(int(rng.integers(-12, 13)), int(rng.integers(1, 5)))
                energy = sys_spec.s() * F(int(rng.integers(-3, 4)), 2) + F(int(rng.integers(0, 41)), 2)
                self.assertEqual(poly.eval_poly(phi, m, energy), poly.eval_poly(expanded, m, energy),
                                 f"{sys_spec} at m={m}, E={energy}")

    def test_commutator_telescopes(self):
        rng = np.random.default_rng(31)
        for sys_spec in (core.make_system("aniso", 3, 1), core.make_system("sw", 1, 2, F(1, 5))):
            phi = poly.structure_function(sys_spec)
            commutator = poly.commutator_polynomial(phi)
            for _ in range(10):
                low = int(rng.integers(-6, 4))
                high = low + int(rng.integers(0, 8))
                energy = sys_spec.s() * F(int(rng.integers(-2, 3)), 2) + F(int(rng.integers(1, 31)), 3)
                total = sum((poly.eval_poly(commutator, m, energy) for m in range(low, high + 1)),
                            sys_spec.scalar(0))
                self.assertEqual(total, poly.eval_poly(phi, low, energy) - poly.eval_poly(phi, high + 1, energy),
                                 f"{sys_spec} for m in [{low}, {high}]")


if __name__ == "__main__":
    unittest.main()

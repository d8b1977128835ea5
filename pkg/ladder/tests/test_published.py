import pathlib
import sys
import unittest
from fractions import Fraction

sys.path.append(str(pathlib.Path(__file__).resolve().parent.parent))
from algebra import core, poly, published, spectrum  # noqa: E402
from tests import regression_suite  # noqa: E402

F = Fraction


def ledger_statuses(sys_spec: core.SystemSpec) -> dict:
    return {entry.name: entry.status for entry in published.discrepancy_ledger(sys_spec)}


class AnisotropicFormTests(unittest.TestCase):
    def test_general_forms_match(self):
        for l1, l2 in ((1, 1), (2, 1), (3, 2), (2, 3)):
            statuses = ledger_statuses(core.make_system("aniso", l1, l2))
            self.assertEqual(statuses["published_commutator"], "match", f"({l1},{l2})")
            self.assertEqual(statuses["published_casimir"], "match", f"({l1},{l2})")

    def test_quartic_forms(self):
        sys_spec = core.make_system("aniso", 2, 2)
        phi = poly.structure_function(sys_spec)
        regression_suite.assert_poly_equal(published.published_quartic_commutator(), poly.commutator_polynomial(phi))
        statuses = ledger_statuses(sys_spec)
        self.assertEqual(statuses["published_quartic_commutator"], "match")
        self.assertEqual(statuses["published_quartic_casimir"], "match")

    def test_three_to_one_forms(self):
        statuses = ledger_statuses(core.make_system("fokas-lagerstrom"))
        self.assertEqual(statuses["published_fl_commutator"], "match")
        self.assertEqual(statuses["published_fl_casimir"], "match")
        # printed bases 2, 5, 8 only agree once the two frequencies are exchanged
        self.assertEqual(statuses["published_fl_families"], "reconciled")

    def test_swapped_three_to_one_families(self):
        derived = spectrum.solve_families(poly.structure_function(core.make_system("fokas-lagerstrom")),
                                          core.make_system("fokas-lagerstrom"))
        self.assertEqual(spectrum.family_signature(published.published_fl_families(swapped=True)),
                         spectrum.family_signature(derived))
        self.assertNotEqual(spectrum.family_signature(published.published_fl_families()),
                            spectrum.family_signature(derived))

    def test_special_entries_only_where_applicable(self):
        statuses = ledger_statuses(core.make_system("aniso", 3, 2))
        self.assertEqual(sorted(statuses), ["published_casimir", "published_commutator"])


class SWFormTests(unittest.TestCase):
    def test_general_ratios_need_flipped_indices(self):
        for l1, l2, kappa in ((1, 2, F(1, 5)), (2, 1, F(-1, 5))):
            sys_spec = core.make_system("sw", l1, l2, kappa)
            statuses = ledger_statuses(sys_spec)
            self.assertEqual(statuses, {"published_sw_commutator": "reconciled", "published_sw_casimir": "reconciled",
                                        "published_sw_families": "reconciled"}, str(sys_spec))

    def test_holt_ratio_matches_as_printed(self):
        statuses = ledger_statuses(core.make_system("sw", 1, 1, F(1, 3)))
        self.assertTrue(all(status == "match" for status in statuses.values()), statuses)

    def test_flipped_commutator_equals_derivation(self):
        sys_spec = core.make_system("sw", 1, 2, F(1, 5))
        derived = poly.commutator_polynomial(poly.structure_function(sys_spec))
        regression_suite.assert_poly_equal(published.published_sw_commutator(sys_spec, flip_index_sign=True), derived)

    def test_kind_is_enforced(self):
        with self.assertRaises(spectrum.UnsupportedSystem):
            published.published_sw_commutator(core.make_system("aniso", 1, 2))
        with self.assertRaises(spectrum.UnsupportedSystem):
            published.published_anisotropic_casimir(core.make_system("sw", 1, 1, F(1, 3)))

    def test_ledger_entries_serialize(self):
        entry = published.discrepancy_ledger(core.make_system("sw", 1, 1, F(1, 3)))[0]
        self.assertEqual(set(entry.__json__()), {"name", "status", "detail"})


if __name__ == "__main__":
    unittest.main()

import io
import json
import pathlib
import sys
import tempfile
import unittest

import pandas as pd

sys.path.append(str(pathlib.Path(__file__).resolve().parent.parent))
from algebra import core  # noqa: E402
from report import cli, diagram  # noqa: E402
from tests import regression_suite  # noqa: E402


def run_json(*argv: str) -> dict:
    code, stdout, stderr = cli.run_captured(list(argv) + ["--format", "json"])
    if code != cli.EXIT_OK:
        raise AssertionError(f"Command {argv} exited with {code}: {stderr}")
    return cli.validate_payload(json.loads(stdout))


class StructureCommandTests(unittest.TestCase):
    def test_commutator_order(self):
        self.assertEqual(run_json("structure", "--l1", "2", "--l2", "2")["deg_m"], 3)
        self.assertEqual(run_json("structure", "--system", "sw", "--l1", "1", "--l2", "2", "--kappa", "1/5")["deg_m"],
                         5)

    def test_su2_commutator_text(self):
        payload = run_json("structure", "--l1", "1", "--l2", "1")
        self.assertEqual(payload["commutator"]["text"], "2*m")
        self.assertEqual(payload["system"]["kind"], "Anisotropic")

    def test_csv_and_table(self):
        code, stdout, _ = cli.run_captured(["structure", "--system", "fokas-lagerstrom", "--format", "csv"])
        self.assertEqual(code, cli.EXIT_OK)
        frame = pd.read_csv(io.StringIO(stdout))
        self.assertEqual(list(frame.columns), ["part", "deg_m", "deg_E", "a", "b"])
        self.assertIn("casimir", set(frame["part"]))

        code, stdout, _ = cli.run_captured(["structure", "--system", "fokas-lagerstrom"])
        self.assertEqual(code, cli.EXIT_OK)
        self.assertIn("deg_m = 3", stdout)


class SpectrumCommandTests(unittest.TestCase):
    def test_three_to_one_levels(self):
        payload = run_json("spectrum", "--l1", "3", "--l2", "1", "--emax", "8")
        levels = [(level["energy"]["exact"], level["degeneracy"]) for level in payload["levels"]]
        expected = [(str(energy), degeneracy) for energy, degeneracy
                    in regression_suite.load_golden_levels("aniso_3_1_emax_8")]
        self.assertEqual(levels, expected)
        self.assertEqual(len(payload["families"]), 3)

    def test_kappa_zero_matches_anisotropic(self):
        sw = run_json("spectrum", "--system", "sw", "--l1", "1", "--l2", "2", "--kappa", "0", "--emax", "20")
        aniso = run_json("spectrum", "--l1", "1", "--l2", "2", "--emax", "20")
        self.assertEqual([(level["energy"]["exact"], level["degeneracy"]) for level in sw["levels"]],
                         [(level["energy"]["exact"], level["degeneracy"]) for level in aniso["levels"]])

    def test_csv_output(self):
        code, stdout, _ = cli.run_captured(["spectrum", "--system", "holt", "--kappa", "1/3", "--emax", "10",
                                            "--format", "csv"])
        self.assertEqual(code, cli.EXIT_OK)
        frame = pd.read_csv(io.StringIO(stdout))
        self.assertEqual(list(frame.columns), cli.SPECTRUM_CSV_COLUMNS)
        families = frame[frame["part"] == "family"]
        levels = frame[frame["part"] == "level"]
        self.assertEqual(len(families), 8)
        self.assertTrue(families["step"].notna().all())
        self.assertTrue(levels["energy"].is_monotonic_increasing)
        self.assertEqual(len(families) + len(levels), len(frame))

    def test_output_is_deterministic(self):
        argv = ["spectrum", "--system", "sw", "--l1", "2", "--l2", "1", "--kappa=-1/5", "--format", "json"]
        self.assertEqual(cli.run_captured(argv), cli.run_captured(argv))

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as tmp_dir:
            out = pathlib.Path(tmp_dir) / "levels.json"
            code, stdout, _ = cli.run_captured(["spectrum", "--l1", "1", "--l2", "1", "--emax", "3", "--format", "json",
                                                "--out", str(out)])
            self.assertEqual((code, stdout), (cli.EXIT_OK, ""))
            with open(out, "r", encoding="utf-8") as out_file:
                self.assertEqual(json.load(out_file)["command"], "spectrum")


class VerifyCommandTests(unittest.TestCase):
    def test_anisotropic_verify(self):
        payload = run_json("verify", "--system", "fokas-lagerstrom", "--ncut", "24")
        self.assertTrue(payload["pass"])
        statuses = {check["name"]: check["status"] for check in payload["checks"]}
        self.assertEqual(statuses["structure_identity"], "pass")
        self.assertEqual(statuses["paper_casimir_match"], "pass")

    def test_verify_table_summary(self):
        code, stdout, _ = cli.run_captured(["verify", "--l1", "2", "--l2", "2", "--ncut", "16"])
        self.assertEqual(code, cli.EXIT_OK)
        self.assertIn("Overall: PASS", stdout)

    def test_sw_verify_passes(self):
        for l1, l2, kappa in (("1", "1", "1/3"), ("1", "2", "1/5"), ("2", "1", "-1/5")):
            code, stdout, stderr = cli.run_captured(["verify", "--system", "sw", "--l1", l1, "--l2", l2,
                                                     f"--kappa={kappa}", "--format", "json"])
            self.assertEqual(code, cli.EXIT_OK, stderr)
            payload = cli.validate_payload(json.loads(stdout))
            self.assertTrue(payload["pass"])
            statuses = {check["name"]: check["status"] for check in payload["checks"]}
            for name in ("fd_sector_match", "fd_richardson", "kappa_zero_limit"):
                self.assertEqual(statuses[name], "pass", f"{name} for ({l1},{l2},{kappa})")


class DiagramCommandTests(unittest.TestCase):
    def test_three_to_one_top_level(self):
        payload = run_json("diagram", "--system", "fokas-lagerstrom", "--emax", "8")
        top = sorted([row["n1"], row["n2"]] for row in payload["rows"] if row["exact"] == "8")
        self.assertEqual(top, sorted(regression_suite.load_fixture("golden_levels.json")["diagram_3_1_emax_8_top"]))
        self.assertEqual(len(payload["rows"]), 12)

    def test_quartic_level_six(self):
        rows = diagram.emit_level_diagram(core.make_system("aniso", 2, 2), 10)
        level = sorted([row.n1, row.n2] for row in rows if row.energy == 6)
        self.assertEqual(level, sorted(regression_suite.load_fixture("golden_levels.json")["diagram_2_2_emax_10_e6"]))
        self.assertEqual({row.family_label for row in rows}, {"1,1", "1,2", "2,1", "2,2"})
        parities = {(row.family_label, row.parity) for row in rows}
        self.assertEqual(parities, {("1,1", "even"), ("2,2", "even"), ("1,2", "odd"), ("2,1", "odd")})

    def test_parity_column(self):
        code, stdout, _ = cli.run_captured(["diagram", "--l1", "2", "--l2", "2", "--emax", "10", "--format", "csv"])
        self.assertEqual(code, cli.EXIT_OK)
        frame = pd.read_csv(io.StringIO(stdout))
        self.assertEqual(list(frame.columns), ["n1", "n2", "energy", "exact", "family_label", "parity"])
        self.assertTrue(((frame["n1"] + frame["n2"]) % 2 == frame["parity"].map({"even": 0, "odd": 1})).all())


class ExitCodeTests(unittest.TestCase):
    def test_invalid_input(self):
        for argv in (["spectrum", "--system", "sw", "--l1", "1", "--l2", "1", "--kappa", "0.25"],
                     ["spectrum", "--l1", "0", "--l2", "1"],
                     ["spectrum", "--system", "pendulum"],
                     ["spectrum", "--system", "sw", "--l1", "1", "--l2", "1"]):
            code, _, _ = cli.run_captured(argv)
            self.assertEqual(code, cli.EXIT_INPUT, argv)

    def test_sw_diagram_is_a_computation_error(self):
        code, _, stderr = cli.run_captured(["diagram", "--system", "sw", "--l1", "1", "--l2", "1", "--kappa", "1/3"])
        self.assertEqual(code, cli.EXIT_FAILURE)
        self.assertIn("UnsupportedSystem", stderr)


if __name__ == "__main__":
    unittest.main()

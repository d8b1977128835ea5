"""Command line interface: structure, spectrum, verify and diagram.

Exit codes: 0 on success, 1 on computation errors or failed checks and 2 on invalid input.
"""
import argparse
import contextlib
import io
import json
import pathlib
import sys
import textwrap
from fractions import Fraction
from typing import Any, List, Optional

import jsonschema
import natsort
import numpy as np
import pandas as pd

from algebra import core, poly, spectrum, util
from numerics import oracle
from report import checks, diagram

SCHEMA_PATH = pathlib.Path(__file__).resolve().parent / "schema" / "report.schema.json"
FORMATS = ["table", "json", "csv"]

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2


def load_schema() -> dict:
    with open(SCHEMA_PATH, "r", encoding="utf-8") as schema_file:
        return json.load(schema_file)


def validate_payload(payload: Any) -> dict:
    """Converts a report object to plain JSON data and validates it against the shipped schema."""
    data = util.read_json(util.to_json(payload))
    jsonschema.validate(data, load_schema())
    return data


def _rational_arg(raw: str) -> Fraction:
    try:
        return util.parse_rational(raw)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _system_from_args(args: argparse.Namespace) -> core.SystemSpec:
    return core.make_system(args.system, args.l1, args.l2, args.kappa)


# structure


def structure_payload(system: core.SystemSpec) -> dict:
    phi = poly.structure_function(system)
    commutator = poly.commutator_polynomial(phi)
    alphas, casimir = poly.casimir_split(phi)
    return {"command": "structure", "system": system, "factors": [str(factor) for factor in phi.factors],
            "phi": phi.expand(), "commutator": commutator, "deg_m": commutator.deg_m(), "casimir": casimir,
            "alphas": alphas}


def _polynomial_rows(part: str, polynomial: poly.BivarPoly) -> List[dict]:
    return [dict(part=part, **term) for term in polynomial.terms()]


def cmd_structure(args: argparse.Namespace) -> int:
    sys_spec = _system_from_args(args)
    payload = structure_payload(sys_spec)

    if args.format == "json":
        _emit(args, validate_payload(payload))
    elif args.format == "csv":
        rows = (_polynomial_rows("phi", payload["phi"]) + _polynomial_rows("commutator", payload["commutator"])
                + _polynomial_rows("casimir", payload["casimir"]))
        for power, alpha in enumerate(payload["alphas"]):
            rows += _polynomial_rows(f"alpha_{power}", alpha)
        _emit(args, pd.DataFrame(rows, columns=["part", "deg_m", "deg_E", "a", "b"]))
    else:
        lines = [f"System: {sys_spec}", "", ".. Factors of phi(m, E):"]
        lines += [f"  {factor}" for factor in payload["factors"]]
        lines += ["", ".. Commutator P(m; E):", f"  {payload['commutator']}", f"  deg_m = {payload['deg_m']}",
                  "", ".. Casimir C(E):", f"  {payload['casimir']}", "", ".. Casimir split alpha_i(E):"]
        lines += [f"  alpha_{power} = {alpha}" for power, alpha in enumerate(payload["alphas"])]
        _emit(args, "\n".join(lines))
    return EXIT_OK


# spectrum


def spectrum_payload(system: core.SystemSpec, e_max: Fraction, *, verbose: bool = False) -> dict:
    families = spectrum.solve_families(poly.structure_function(system), system, verbose=verbose)
    levels = spectrum.assemble_levels(families, e_max)
    return {"command": "spectrum", "system": system, "e_max": util.format_rational(e_max), "families": families,
            "levels": levels}


def families_frame(families: List[spectrum.EnergyFamily]) -> pd.DataFrame:
    return pd.DataFrame([{"base": str(family.base), "base_value": util.round_float(float(family.base)),
                          "step": util.format_rational(family.step), "label": family.label_text()}
                         for family in families], columns=["base", "base_value", "step", "label"])


def levels_frame(levels: List[spectrum.SpectrumLevel]) -> pd.DataFrame:
    return pd.DataFrame([{"energy": util.round_float(level.value), "exact": str(level.energy),
                          "degeneracy": level.total_degeneracy, "contributors": len(level.contributors)}
                         for level in levels], columns=["energy", "exact", "degeneracy", "contributors"])


SPECTRUM_CSV_COLUMNS = ["part", "label", "base", "base_value", "step", "energy", "exact", "degeneracy",
                        "contributors"]


def cmd_spectrum(args: argparse.Namespace) -> int:
    sys_spec = _system_from_args(args)
    payload = spectrum_payload(sys_spec, args.emax, verbose=args.verbose)

    if args.format == "json":
        _emit(args, validate_payload(payload))
    elif args.format == "csv":
        families_df = families_frame(payload["families"]).assign(part="family")
        levels_df = levels_frame(payload["levels"]).assign(part="level")
        _emit(args, pd.concat([families_df, levels_df], ignore_index=True)[SPECTRUM_CSV_COLUMNS])
    else:
        families_df = families_frame(payload["families"])
        labels = families_df["label"].fillna("")
        families_df.sort_values(by="label", key=lambda _: np.argsort(natsort.index_natsorted(labels)), inplace=True)
        text = "\n".join([f"System: {sys_spec}", "", ".. Energy families:", families_df.to_string(index=False), "",
                          f".. Levels up to E = {payload['e_max']}:",
                          levels_frame(payload["levels"]).to_string(index=False)])
        _emit(args, text)
    return EXIT_OK


# verify


def checks_frame(report: checks.VerificationReport) -> pd.DataFrame:
    return pd.DataFrame([check.__json__() for check in report.checks],
                        columns=["name", "status", "max_residual", "detail"])


def cmd_verify(args: argparse.Namespace) -> int:
    sys_spec = _system_from_args(args)
    report = checks.run_suite(sys_spec, ncut=args.ncut, tol=args.tol, e_max=args.emax, workers=args.workers,
                              verbose=args.verbose)

    if args.format == "table":
        summary = "PASS" if report.passed else "FAIL"
        _emit(args, "\n".join([f"System: {sys_spec}", "", checks_frame(report).to_string(index=False), "",
                               f"Overall: {summary}"]))
    elif args.format == "csv":
        _emit(args, checks_frame(report))
    else:
        _emit(args, validate_payload(report))

    if not report.passed:
        util.print_stderr("Verification failed:", ", ".join(check.name for check in report.checks
                                                              if check.failed()))
    return EXIT_OK if report.passed else EXIT_FAILURE


# diagram


def cmd_diagram(args: argparse.Namespace) -> int:
    sys_spec = _system_from_args(args)
    rows = diagram.emit_level_diagram(sys_spec, args.emax)

    if args.format == "json":
        _emit(args, validate_payload({"command": "diagram", "system": sys_spec,
                                      "e_max": util.format_rational(args.emax), "rows": rows}))
    elif args.format == "csv":
        _emit(args, diagram.diagram_frame(rows))
    else:
        _emit(args, diagram.diagram_frame(rows).to_string(index=False))
    return EXIT_OK


def _emit(args: argparse.Namespace, content: Any) -> None:
    """Writes JSON data, data frames (CSV) or plain text to stdout or the --out file."""
    if isinstance(content, pd.DataFrame):
        text = content.to_csv(index=False)
    elif isinstance(content, (dict, list)):
        text = json.dumps(content, indent=2) + "\n"
    else:
        text = str(content) + "\n"

    if args.out:
        with open(args.out, "w", encoding="utf-8") as out_file:
            out_file.write(text)
    else:
        sys.stdout.write(text)


def make_parser() -> argparse.ArgumentParser:
    description = """Polynomial ladder algebras of two-dimensional oscillators.

    Derives the structure function, commutator polynomial and Casimir of the ladder algebra of l1:l2 anisotropic
    oscillators and of their Smorodinsky-Winternitz deformation, solves the bound-state problem for the energy
    spectrum and verifies everything against truncated Fock-space matrices, lattice enumeration and finite
    differences."""

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--system", action="store", default="aniso",
                        choices=["aniso", "sw"] + sorted(core.SYSTEM_ALIASES), help="System kind or named special case")
    common.add_argument("--l1", action="store", type=int, default=None, help="Frequency multiplier of mode 1")
    common.add_argument("--l2", action="store", type=int, default=None, help="Frequency multiplier of mode 2")
    common.add_argument("--kappa", action="store", type=_rational_arg, default=None, help="Coupling of the 1/x^2 "
                        "term as an exact rational p/q (SW-deformed systems only)")
    common.add_argument("--emax", action="store", type=_rational_arg, default=Fraction(oracle.DEFAULT_EMAX),
                        help="Energy cutoff in units of hbar*omega0")
    common.add_argument("--format", action="store", choices=FORMATS, default="table", help="Output format")
    common.add_argument("--out", "-o", action="store", default="", help="File to write the output to instead of "
                        "stdout")
    common.add_argument("--verbose", "-v", action="store_true", help="Log progress information to stderr")

    parser = argparse.ArgumentParser(description=textwrap.dedent(description),
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    commands = parser.add_subparsers(dest="command", required=True)

    structure_cmd = commands.add_parser("structure", parents=[common], help="Structure function, commutator "
                                        "polynomial and Casimir")
    structure_cmd.set_defaults(handler=cmd_structure)

    spectrum_cmd = commands.add_parser("spectrum", parents=[common], help="Energy families and assembled levels")
    spectrum_cmd.set_defaults(handler=cmd_spectrum)

    verify_cmd = commands.add_parser("verify", parents=[common], help="Run the verification suite")
    verify_cmd.add_argument("--ncut", action="store", type=int, default=checks.DEFAULT_NCUT, help="Per-mode cutoff "
                            "of the truncated Fock basis")
    verify_cmd.add_argument("--tol", action="store", type=float, default=checks.DEFAULT_TOL, help="Tolerance of the "
                            "operator identity checks")
    verify_cmd.add_argument("--workers", action="store", type=int, default=1, help="Number of threads to run "
                            "independent checks on")
    verify_cmd.set_defaults(handler=cmd_verify)

    diagram_cmd = commands.add_parser("diagram", parents=[common], help="Level diagram dataset (anisotropic only)")
    diagram_cmd.set_defaults(handler=cmd_diagram)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_INPUT

    try:
        _system_from_args(args)
    except ValueError as e:
        util.print_stderr(f"Invalid input: {e}")
        return EXIT_INPUT

    try:
        return args.handler(args)
    except Exception as e:
        util.print_stderr(f"Computation failed: {type(e).__name__} ({e})")
        return EXIT_FAILURE


def run_captured(argv: List[str]) -> tuple:
    """Runs the CLI in-process and provides (exit code, stdout, stderr)."""
    stdout, stderr = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
        code = main(argv)
    return code, stdout.getvalue(), stderr.getvalue()

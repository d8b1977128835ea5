#!/usr/bin/env python3

import argparse
import functools
import sys
import warnings
from fractions import Fraction

import natsort
import numpy as np
import pandas as pd

from algebra import core, util
from report import checks


def eprint(*args, **kwargs):
    print(*args, file=sys.stderr, **kwargs)


def read_system(data: pd.Series) -> core.SystemSpec:
    kappa = data.get("kappa", "")
    kappa = util.parse_rational(str(kappa)) if isinstance(kappa, str) and kappa.strip() else None
    return core.make_system(data["system"], int(data["l1"]), int(data["l2"]), kappa)


def verify_system(data: pd.Series, *, ncut: int, tol: float, e_max: Fraction) -> pd.Series:
    label = data.get("label", "")
    try:
        report = checks.run_suite(read_system(data), ncut=ncut, tol=tol, e_max=e_max)
        failed = [check.name for check in report.checks if check.failed()]
        return pd.Series({"passed": report.passed, "failed_checks": " ".join(failed), "checks": len(report.checks)})
    except ValueError as err:
        warnings.warn(f"Could not verify system with label {label} (index {data.name}): {err}")
        return pd.Series({"passed": False, "failed_checks": f"invalid system: {err}", "checks": 0})


def main():
    parser = argparse.ArgumentParser(description="Utility to run the verification suite on a batch of systems and "
                                     "report regressions.")
    parser.add_argument("input", action="store", help="CSV file with columns label, system, l1, l2 and an optional "
                        "kappa column (p/q strings, empty for anisotropic systems)")
    parser.add_argument("--ncut", action="store", type=int, default=checks.DEFAULT_NCUT, help="Per-mode cutoff of "
                        "the truncated Fock basis")
    parser.add_argument("--tol", action="store", type=float, default=checks.DEFAULT_TOL, help="Tolerance of the "
                        "operator identity checks")
    parser.add_argument("--emax", action="store", default="40", help="Energy cutoff as an exact rational")
    parser.add_argument("--out", "-o", action="store", default="", help="File write the results to")

    args = parser.parse_args()
    df = pd.read_csv(args.input, dtype={"kappa": str, "system": str, "label": str}, keep_default_na=False)
    if "label" in df.columns:
        df.sort_values(by="label", key=lambda _: np.argsort(natsort.index_natsorted(df["label"])), inplace=True)

    runner = functools.partial(verify_system, ncut=args.ncut, tol=args.tol, e_max=util.parse_rational(args.emax))
    eprint("Verifying", len(df), "systems")
    df[["passed", "failed_checks", "checks"]] = df.apply(runner, axis="columns")

    regressions = not df["passed"].all()
    if regressions:
        eprint("Found regressions on", len(df[~df.passed]), "systems")
    else:
        eprint("No regressions were found")

    if args.out:
        df.to_csv(args.out, index=False)
    sys.exit(1 if regressions else 0)


if __name__ == "__main__":
    main()

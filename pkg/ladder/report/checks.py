"""The verification suite behind `verify`: every identity, spectrum and closed form is checked against an independent
oracle and collected into a single report."""
import concurrent.futures
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Union

from algebra import core, poly, published, spectrum, util
from algebra.poly import BivarPoly
from numerics import fock, grid, oracle

DEFAULT_NCUT = 40
DEFAULT_TOL = 1e-9
FLOAT_DIGITS = util.FLOAT_DIGITS

FD_LEVELS = 3
FD_TOL = 1e-3
RICHARDSON_BAND = (3.5, 4.5)
LOWERING_MIN_RATIO = 3.5
CLOSURE_MIN_RATIO = 3.5

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_SKIPPED = "skipped"
STATUS_INFO = "informational"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    max_residual: Optional[float] = None
    detail: str = ""

    @staticmethod
    def judge(name: str, passed: bool, max_residual: Optional[float] = None, detail: str = "") -> "CheckResult":
        return CheckResult(name, STATUS_PASS if passed else STATUS_FAIL, max_residual, detail)

    def failed(self) -> bool:
        return self.status == STATUS_FAIL

    def __json__(self) -> dict:
        return {"name": self.name, "status": self.status, "max_residual": util.round_float(self.max_residual),
                "detail": self.detail}


@dataclass
class VerificationReport:
    system: core.SystemSpec
    checks: List[CheckResult] = field(default_factory=list)
    environment: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not any(check.failed() for check in self.checks)

    def check(self, name: str) -> CheckResult:
        matches = [check for check in self.checks if check.name == name]
        if not matches:
            raise KeyError(f"No check named '{name}'")
        return util.head(matches)

    def __json__(self) -> dict:
        return {"command": "verify", "system": self.system, "checks": self.checks, "environment": self.environment,
                "pass": self.passed}


@dataclass
class SuiteContext:
    """Everything the individual checks share. It is fully assembled before any check runs."""
    sys: core.SystemSpec
    ncut: int
    tol: float
    e_max: Fraction
    verbose: bool = False
    phi: poly.FactoredPoly = None
    commutator: BivarPoly = None
    alphas: List[BivarPoly] = None
    casimir: BivarPoly = None
    families: List[spectrum.EnergyFamily] = None
    basis: Optional[fock.FockBasis] = None
    triple: Optional[fock.LadderTriple] = None

    def __post_init__(self) -> None:
        self.phi = poly.structure_function(self.sys)
        self.commutator = poly.commutator_polynomial(self.phi)
        self.alphas, self.casimir = poly.casimir_split(self.phi)
        self.families = spectrum.solve_families(self.phi, self.sys, verbose=self.verbose)
        if self.sys.kind == core.SystemKind.Anisotropic:
            self.basis = fock.build_basis(self.ncut, self.ncut)
            self.triple = fock.ladder_triple(self.sys, self.basis)


CheckFn = Callable[[SuiteContext], Union[CheckResult, List[CheckResult]]]


def _identity_result(name: str, reports: List[fock.IdentityReport], tol: float) -> CheckResult:
    worst = max(reports, key=lambda report: report.max_residual)
    detail = f"worst state {worst.worst_state} of {worst.checked_states} interior states"
    return CheckResult.judge(name, worst.max_residual < tol, worst.max_residual, detail)


def check_ladder_comm(ctx: SuiteContext) -> CheckResult:
    j0, jplus, jminus, _ = ctx.triple
    mask = fock.interior_mask(ctx.basis, ctx.sys.l2, ctx.sys.l1)
    reports = [fock.check_identity(fock.commutator(j0, jplus), jplus, mask, ctx.tol,
                                   reference=fock.product_magnitude(j0, jplus), basis=ctx.basis),
               fock.check_identity(fock.commutator(j0, jminus), -jminus, mask, ctx.tol,
                                   reference=fock.product_magnitude(j0, jminus), basis=ctx.basis)]
    return _identity_result("ladder_comm", reports, ctx.tol)


def check_hamiltonian_comm(ctx: SuiteContext) -> CheckResult:
    _, jplus, jminus, hamiltonian = ctx.triple
    mask = fock.interior_mask(ctx.basis, ctx.sys.l2, ctx.sys.l1)
    zero = fock.zero_operator(ctx.basis.dimension)
    reports = [fock.check_identity(fock.commutator(hamiltonian, ladder), zero, mask, ctx.tol,
                                   reference=fock.product_magnitude(hamiltonian, ladder), basis=ctx.basis)
               for ladder in (jplus, jminus)]
    return _identity_result("hamiltonian_comm", reports, ctx.tol)


def check_structure_identity(ctx: SuiteContext) -> CheckResult:
    _, jplus, jminus, _ = ctx.triple
    mask = fock.interior_mask(ctx.basis, 2 * ctx.sys.l2, 2 * ctx.sys.l1)
    rhs = fock.polynomial_operator(ctx.commutator, ctx.sys, ctx.basis)
    report = fock.check_identity(fock.commutator(jplus, jminus), rhs, mask, ctx.tol,
                                 reference=fock.product_magnitude(jplus, jminus), basis=ctx.basis,
                                 verbose=ctx.verbose)
    return _identity_result("structure_identity", [report], ctx.tol)


def check_phi_diagonal(ctx: SuiteContext) -> CheckResult:
    _, jplus, jminus, _ = ctx.triple
    mask = fock.interior_mask(ctx.basis, ctx.sys.l2, ctx.sys.l1)
    rhs = fock.polynomial_operator(ctx.phi, ctx.sys, ctx.basis)
    report = fock.check_identity(jplus @ jminus, rhs, mask, ctx.tol, basis=ctx.basis)
    return _identity_result("phi_diagonal", [report], ctx.tol)


def _alpha_polynomial(alphas: List[BivarPoly], radicand: Fraction) -> BivarPoly:
    total = BivarPoly({}, radicand)
    for power, alpha in enumerate(alphas):
        total = total + alpha * BivarPoly.monomial(power, 0, 1, radicand)
    return total


def check_casimir_scalar(ctx: SuiteContext) -> CheckResult:
    """{J₊,J₋} + Σαᵢ(H)J₀ⁱ must act as C(H) on every interior state."""
    _, jplus, jminus, _ = ctx.triple
    mask = fock.interior_mask(ctx.basis, 2 * ctx.sys.l2, 2 * ctx.sys.l1)
    alpha_term = fock.polynomial_operator(_alpha_polynomial(ctx.alphas, ctx.sys.radicand), ctx.sys, ctx.basis)
    lhs = fock.anticommutator(jplus, jminus) + alpha_term
    rhs = fock.polynomial_operator(ctx.casimir, ctx.sys, ctx.basis)
    reference = fock.product_magnitude(jplus, jminus) + alpha_term.magnitude()
    report = fock.check_identity(lhs, rhs, mask, ctx.tol, reference=reference, basis=ctx.basis)
    return _identity_result("casimir_scalar", [report], ctx.tol)


def check_spectrum_vs_oracle(ctx: SuiteContext) -> CheckResult:
    levels = spectrum.assemble_levels(ctx.families, ctx.e_max)
    enumerated = oracle.enumerate_spectrum(ctx.sys, ctx.e_max)
    diff = oracle.compare_spectra(levels, enumerated)
    return CheckResult.judge("spectrum_vs_oracle", diff.passed, None,
                             f"{len(levels)} levels up to E={util.format_rational(ctx.e_max)}: {diff}")


def check_family_count(ctx: SuiteContext) -> CheckResult:
    expected = ctx.sys.l1 * ctx.sys.l2 * (4 if ctx.sys.is_sw() else 1)
    return CheckResult.judge("family_count", len(ctx.families) == expected, None,
                             f"{len(ctx.families)} families, expected {expected}")


def check_paper_families(ctx: SuiteContext) -> CheckResult:
    closed_form = spectrum.family_signature(spectrum.paper_families(ctx.sys))
    derived = spectrum.family_signature(ctx.families)
    return CheckResult.judge("paper_families_match", closed_form == derived, None,
                             f"{len(closed_form)} closed-form families vs. {len(derived)} derived")


def check_paper_casimir(ctx: SuiteContext) -> CheckResult:
    candidates = [("general", published.published_anisotropic_casimir(ctx.sys))]
    if (ctx.sys.l1, ctx.sys.l2) == (2, 2):
        candidates.append(("quartic", published.published_quartic_casimir()))
    mismatches = [label for label, casimir in candidates if casimir != ctx.casimir]
    detail = ("closed forms agree: " + ", ".join(label for label, _ in candidates) if not mismatches
              else "closed forms disagree: " + ", ".join(mismatches))
    return CheckResult.judge("paper_casimir_match", not mismatches, None, detail)


def check_commutator_order(ctx: SuiteContext) -> CheckResult:
    expected = 2 * (ctx.sys.l1 + ctx.sys.l2) - 1 if ctx.sys.is_sw() else ctx.sys.l1 + ctx.sys.l2 - 1
    degree = ctx.commutator.deg_m()
    return CheckResult.judge("commutator_order", degree == expected, None, f"deg_m = {degree}, expected {expected}")


def check_casimir_reconstruction(ctx: SuiteContext) -> CheckResult:
    expanded = ctx.phi.expand()
    reconstructed = poly.reconstruct_casimir(ctx.phi, ctx.alphas)
    factored = expanded.at_m(0) + expanded.at_m(1)
    passed = reconstructed == ctx.casimir and factored == ctx.casimir
    return CheckResult.judge("casimir_reconstruction", passed, None, "C(E) = phi(0, E) + phi(1, E)")


def check_kappa_zero_limit(ctx: SuiteContext) -> CheckResult:
    limit = ctx.sys.with_kappa(0)
    anisotropic = core.make_system(core.SystemKind.Anisotropic, ctx.sys.l1, ctx.sys.l2)
    reference = oracle.enumerate_spectrum(anisotropic, ctx.e_max)
    enumerated = oracle.compare_spectra(oracle.enumerate_spectrum(limit, ctx.e_max), reference)
    limit_families = spectrum.solve_families(poly.structure_function(limit), limit)
    solved = oracle.compare_spectra(spectrum.assemble_levels(limit_families, ctx.e_max), reference)
    return CheckResult.judge("kappa_zero_limit", enumerated.passed and solved.passed, None,
                             f"oracle: {enumerated}, solver: {solved}")


def check_fd_sector(ctx: SuiteContext) -> CheckResult:
    numeric = oracle.fd_eigenvalues(ctx.sys.l2, ctx.sys.kappa, grid.default_grid(ctx.sys.l2), FD_LEVELS)
    exact = oracle.sector_energies(ctx.sys.l2, ctx.sys.kappa, FD_LEVELS, "+")
    deviation = max(abs(value - float(energy)) for value, energy in zip(numeric, exact))
    return CheckResult.judge("fd_sector_match", deviation < FD_TOL, deviation,
                             f"lowest {FD_LEVELS} '+' sector levels within {FD_TOL}")


def check_fd_richardson(ctx: SuiteContext) -> CheckResult:
    ratios = oracle.richardson_ratios(ctx.sys.l2, ctx.sys.kappa, FD_LEVELS)
    lower, upper = RICHARDSON_BAND
    passed = all(lower <= ratio <= upper for ratio in ratios)
    return CheckResult.judge("fd_richardson", passed, None,
                             "ratios " + ", ".join(f"{util.round_float(ratio, 6)}" for ratio in ratios))


def _residual_checks(ctx: SuiteContext) -> List[CheckResult]:
    study = grid.residual_convergence(ctx.sys.l2, ctx.sys.kappa, verbose=ctx.verbose)
    results = []
    for name, residuals, ratios, minimum in (
            ("grid_lowering_residual", [res.lowering for res in study.residuals], study.lowering_ratios,
             LOWERING_MIN_RATIO),
            ("grid_closure_residual", [res.closure for res in study.residuals], study.closure_ratios,
             CLOSURE_MIN_RATIO)):
        passed = all(ratio >= minimum for ratio in ratios)
        detail = "halving ratios " + ", ".join(f"{util.round_float(ratio, 6)}" for ratio in ratios)
        results.append(CheckResult.judge(name, passed, residuals[-1], detail))
    return results


def _ledger_checks(ctx: SuiteContext) -> List[CheckResult]:
    return [CheckResult(f"ledger:{entry.name}", STATUS_INFO, None, f"{entry.status}: {entry.detail}")
            for entry in published.discrepancy_ledger(ctx.sys)]


ANISOTROPIC_SUITE: List[CheckFn] = [check_ladder_comm, check_hamiltonian_comm, check_structure_identity,
                                    check_phi_diagonal, check_casimir_scalar, check_commutator_order,
                                    check_spectrum_vs_oracle, check_family_count, check_paper_families,
                                    check_paper_casimir, _ledger_checks]

SW_SUITE: List[CheckFn] = [check_commutator_order, check_casimir_reconstruction, check_family_count,
                           check_spectrum_vs_oracle, check_kappa_zero_limit, check_fd_sector, check_fd_richardson,
                           _residual_checks, _ledger_checks]


def _run_check(check: CheckFn, ctx: SuiteContext) -> List[CheckResult]:
    try:
        return util.enlist(check(ctx))
    except Exception as e:
        name = check.__name__.lstrip("_").replace("check_", "", 1)
        return [CheckResult(name, STATUS_FAIL, None, f"{type(e).__name__}: {e}")]


def run_suite(sys: core.SystemSpec, *, ncut: int = DEFAULT_NCUT, tol: float = DEFAULT_TOL,
              e_max: core.Rational = oracle.DEFAULT_EMAX, workers: int = 1,
              verbose: bool = False) -> VerificationReport:
    """Runs every check applicable to the system kind.

    Checks may run on multiple threads, the report lists them in suite order regardless.
    """
    logger = util.make_logger(verbose)
    ctx = SuiteContext(sys, ncut, tol, Fraction(e_max), verbose)
    suite = SW_SUITE if sys.is_sw() else ANISOTROPIC_SUITE

    with concurrent.futures.ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        futures = [executor.submit(_run_check, check, ctx) for check in suite]
        results = util.flatten([future.result() for future in futures])

    for result in results:
        logger(f"[{util.timestamp()}] {result.name}: {result.status}")

    environment = {"tol": tol, "e_max": util.format_rational(ctx.e_max)}
    if sys.is_sw():
        environment.update({"grid": grid.default_grid(sys.l2), "residual_grid": grid.residual_grid(sys.l2),
                            "fd_tol": FD_TOL})
    else:
        environment["basis"] = [ncut, ncut]
    return VerificationReport(sys, results, environment)

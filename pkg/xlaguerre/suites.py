"""Verification suites behind `xlaguerre verify`.

A suite is a list of named checks. Each check is a zero-argument callable returning
(ok, details); the runner turns it into a CheckRecord, catching library errors as
failures. Checks run on a thread pool; the report is sorted by check name so the output
does not depend on completion order.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Any

import yaml

from . import classical, exceptional, numerics, ode, spectral
from .config import settings
from .core import XPoly, format_xpoly, parse_xpoly, substitute_alpha
from .errors import DomainError, XLaguerreError
from .exceptional import DegreeSet, Family
from .metrics import record_check
from .schemas import CheckRecord, CheckStatus, Report

logger = logging.getLogger("xlaguerre.suites")

SUITES = ("identities", "norms", "gram", "spectral", "roots", "appendix")
EXCEPTIONAL = (Family.TYPE_I, Family.TYPE_II, Family.TYPE_III)

Outcome = tuple[bool, dict[str, Any]]
Check = tuple[str, Callable[[], Outcome]]


@dataclass(frozen=True)
class SuiteParams:
    """Parameter grid of the suites. The defaults are the full verification grid.

    k_values drives the root checks; identity and eigen checks use the k values up to
    identity_k_max and eigen_k_max. Norm and Gram degrees run to m + degrees_above_m
    unless n_max sets an absolute cap.
    """

    families: tuple[Family, ...] = EXCEPTIONAL
    m_values: tuple[int, ...] = (1, 2, 3)
    k_values: tuple[int, ...] = tuple(range(1, 21))
    alphas: tuple[float, ...] = ()
    n_max: int | None = None
    degrees_above_m: int = 8
    identity_k_max: int = 10
    eigen_k_max: int = 12
    monomial_degree: int = 8
    projection_j_max: int = 6
    projection_terms: int = 12
    projection_ms: tuple[int, ...] = (1, 2)
    projection_alpha: float = -0.5

    def degree_cap(self, m: int) -> int:
        return self.n_max if self.n_max is not None else m + self.degrees_above_m

    def identity_ks(self) -> list[int]:
        return [k for k in self.k_values if k <= self.identity_k_max]

    def eigen_ks(self) -> list[int]:
        return [k for k in self.k_values if k <= self.eigen_k_max]

    def alphas_for(self, family: Family, m: int) -> list[float]:
        if self.alphas:
            return list(self.alphas)
        if family is Family.TYPE_I:
            return [0.5, 1.5]
        if family is Family.TYPE_II:
            return [m - 0.5, m + 0.5]
        if family is Family.TYPE_III:
            return [-0.75, -0.5, -0.25]
        return [0.5]

    def ms_for(self, family: Family) -> list[int]:
        return [m for m in self.m_values if m >= family.min_m()]


def _admissible(family: Family, m: int, a: float) -> bool:
    try:
        family.check_alpha(m, a)
    except DomainError:
        return False
    return True


def _fam(family: Family) -> str:
    return family.value


# ---------------------------------------------------------------------------
# Suite builders
# ---------------------------------------------------------------------------


def identity_checks(params: SuiteParams) -> list[Check]:
    checks: list[Check] = []
    n_top = max(params.m_values, default=0) + max(params.identity_ks(), default=0)
    for n in range(n_top + 1):
        checks.append(
            (
                f"identities/classical/derivative/n={n:02d}",
                lambda n=n: (classical.laguerre_derivative_identity_check(n), {}),
            )
        )
        checks.append(
            (
                f"identities/classical/explicit/n={n:02d}",
                lambda n=n: (classical.laguerre(n) == classical.laguerre_explicit(n), {}),
            )
        )
        checks.append(
            (
                f"identities/classical/eigen/n={n:02d}",
                lambda n=n: (classical.classical_eigen_residual(n).is_zero, {}),
            )
        )
    for family in params.families:
        if family is Family.CLASSICAL:
            continue
        for m in params.ms_for(family):
            tag = f"{_fam(family)}/m={m}"
            checks.append(
                (
                    f"identities/factorization/{tag}",
                    lambda f=family, m=m: (ode.factorization_identity_check(f, m, params.monomial_degree), {}),
                )
            )
            checks.append((f"identities/darboux/{tag}", lambda f=family, m=m: _darboux(f, m)))
            checks.append(
                (f"identities/adjoint/{tag}", lambda f=family, m=m: (ode.adjoint_relation_check(f, m), {}))
            )
            a = params.alphas_for(family, m)[0]
            if _admissible(family, m, a):
                checks.append(
                    (
                        f"identities/symmetric_form/{tag}/a={a}",
                        lambda f=family, m=m, a=a: (ode.symmetric_form_check(f, m, a, [0.5, 1.5, 3.0]), {}),
                    )
                )
            for k in params.eigen_ks():
                n = m + k
                checks.append(
                    (
                        f"identities/eigen/{tag}/n={n:02d}",
                        lambda f=family, m=m, n=n: (ode.eigen_residual(f, m, n).is_zero, {}),
                    )
                )
            for k in params.identity_ks():
                n = m + k
                if family is not Family.TYPE_III:
                    checks.append(
                        (f"identities/operator/{tag}/n={n:02d}", lambda f=family, m=m, n=n: _operator_form(f, m, n))
                    )
    if Family.TYPE_III in params.families:
        checks.extend(_type3_identity_checks(params))
    for m in params.m_values:
        for tag in ode.SeedTag:
            checks.append(
                (
                    f"identities/seed/{tag.value}/m={m}",
                    lambda t=tag, m=m: (ode.seed_eigenvalue_check(ode.seed_function(t, m)), {}),
                )
            )
    return checks


def _type3_identity_checks(params: SuiteParams) -> list[Check]:
    checks: list[Check] = []
    for m in params.ms_for(Family.TYPE_III):
        tag = f"III/m={m}"
        checks.append((f"identities/gauge/m={m}", lambda m=m: (ode.gauge_check(m, params.monomial_degree), {})))
        checks.append((f"identities/ground_state/m={m}", lambda m=m: (ode.ground_state_check(m), {})))
        checks.append(
            (
                f"identities/shifted_eigen/{tag}",
                lambda m=m: (ode.eigen_residual(Family.TYPE_III, m, m + 1, True).is_zero, {}),
            )
        )
        for j in range(3):
            checks.append(
                (
                    f"identities/subspace/{tag}/j={j}",
                    lambda m=m, j=j: (exceptional.type3_subspace_check(m, XPoly.monomial(j), Fraction(-1, 2)), {}),
                )
            )
        for k in params.identity_ks():
            n = m + k
            checks.append((f"identities/lemma1/{tag}/k={k:02d}", lambda m=m, k=k: (exceptional.lemma1_check(m, k), {})))
            checks.append((f"identities/lemma2/{tag}/k={k:02d}", lambda m=m, k=k: (exceptional.lemma2_check(m, k), {})))
            checks.append(
                (
                    f"identities/critical_factor/{tag}/k={k:02d}",
                    lambda m=m, k=k: (exceptional.critical_factor_check(m, k), {}),
                )
            )
            checks.append((f"identities/representations/{tag}/n={n:02d}", lambda m=m, n=n: _representations(m, n)))
            checks.append(
                (f"identities/s_operator/{tag}/n={n:02d}", lambda m=m, n=n: (ode.s_operator_eigen_check(m, n), {}))
            )
            for a in params.alphas_for(Family.TYPE_III, m):
                if _admissible(Family.TYPE_III, m, a):
                    checks.append(
                        (
                            f"identities/negative_at_zero/{tag}/k={k:02d}/a={a}",
                            lambda m=m, k=k, a=a: (exceptional.negativity_at_zero_check(m, k, Fraction(a)), {}),
                        )
                    )
    return checks


def _darboux(family: Family, m: int) -> Outcome:
    result = ode.darboux_family_check(family, m)
    offset = str(result.a0_offset) if result.a0_offset is not None else None
    return result.passed, {"seed": result.seed.value, "a0_offset": offset}


def _operator_form(family: Family, m: int, n: int) -> Outcome:
    if family is Family.TYPE_I:
        return exceptional.type1_from_operator(m, n) == exceptional.xlag1(m, n), {}
    return exceptional.type2_from_operator(m, n) == exceptional.xlag2(m, n), {}


def _representations(m: int, n: int) -> Outcome:
    found = exceptional.representation_check(m, n)
    return all(found.values()), found


def norm_checks(params: SuiteParams, tol: float = 1e-8) -> list[Check]:
    checks: list[Check] = []
    for family in params.families:
        ms = [0] if family is Family.CLASSICAL else params.ms_for(family)
        for m in ms:
            for a in params.alphas_for(family, m):
                if not _admissible(family, m, a):
                    continue
                for n in DegreeSet(family, m).up_to(params.degree_cap(m)):
                    checks.append(
                        (
                            f"norms/{_fam(family)}/m={m}/a={a}/n={n:02d}",
                            lambda f=family, m=m, n=n, a=a: _norm(f, m, n, a, tol),
                        )
                    )
    return checks


def _norm(family: Family, m: int, n: int, a: float, tol: float) -> Outcome:
    result = numerics.norm_comparison(family, m, n, a)
    details = {"closed_form": result.closed_form, "quadrature": result.quadrature.value, "rel_error": result.rel_error}
    return result.rel_error <= tol, details


def gram_checks(params: SuiteParams, tol: float = 1e-8) -> list[Check]:
    checks: list[Check] = []
    for family in params.families:
        if family is Family.CLASSICAL:
            continue
        for m in params.ms_for(family):
            for a in params.alphas_for(family, m):
                if not _admissible(family, m, a):
                    continue
                degrees = DegreeSet(family, m).up_to(params.degree_cap(m))
                checks.append(
                    (f"gram/{_fam(family)}/m={m}/a={a}", lambda f=family, m=m, a=a, d=degrees: _gram(f, m, a, d, tol))
                )
    if Family.TYPE_III in params.families:
        a = params.projection_alpha
        projected = [m for m in params.projection_ms if m in params.ms_for(Family.TYPE_III)]
        for m in projected:
            for j in range(params.projection_j_max + 1):
                checks.append(
                    (
                        f"gram/completeness/m={m}/a={a}/j={j}",
                        lambda m=m, a=a, j=j, n=params.projection_terms: _projection(m, a, j, n),
                    )
                )
    return checks


def _gram(family: Family, m: int, a: float, degrees: list[int], tol: float) -> Outcome:
    result = numerics.gram_matrix(family, m, a, degrees)
    details = {
        "degrees": degrees,
        "max_offdiag_rel": result.max_offdiag_rel,
        "max_diag_rel": float(result.diag_rel_errors.max()),
    }
    return result.passed(tol), details


def _projection(m: int, a: float, j: int, n_max: int) -> Outcome:
    residuals = numerics.projection_residuals(m, a, j, n_max)
    slack = 1e-10 * max(residuals[0], 1.0)
    ok = all(b <= a_ + slack for a_, b in zip(residuals, residuals[1:], strict=False))
    return ok, {"residuals": residuals}


def spectral_checks(params: SuiteParams) -> list[Check]:
    checks: list[Check] = []
    for family in params.families:
        if family is Family.CLASSICAL:
            continue
        for m in params.ms_for(family):
            for a in params.alphas_for(family, m):
                if not _admissible(family, m, a):
                    continue
                tag = f"{_fam(family)}/m={m}/a={a}"
                checks.append((f"spectral/classify/{tag}", lambda f=family, m=m, a=a: _classify(f, m, a)))
                checks.append((f"spectral/growth/{tag}", lambda f=family, m=m, a=a: _growth(f, m, a)))
                if spectral.classify(family, m, a)[2].plus:
                    checks.append((f"spectral/boundary/{tag}", lambda f=family, m=m, a=a: _boundary(f, m, a)))
                op = spectral.OperatorTag(f"T_{family.value}")
                checks.append((f"spectral/spectrum/{tag}", lambda op=op, m=m, a=a: _spectrum(op, m, a)))
                if family is Family.TYPE_I and 0 < a < 1:
                    checks.append((f"spectral/s_boundary/m={m}/a={a}", lambda m=m, a=a: _s_boundary(m, a)))
    return checks


def _classify(family: Family, m: int, a: float) -> Outcome:
    zero, _, deficiency = spectral.classify(family, m, a)
    both = spectral.l2_membership_probe(family, m, a, 0.0) and spectral.l2_membership_probe(family, m, a, -a)
    lc = zero.kind is spectral.EndpointKind.LIMIT_CIRCLE
    return lc == both, {"zero": zero.kind.value, "deficiency": str(deficiency)}


def _growth(family: Family, m: int, a: float) -> Outcome:
    # starts at 10: on [5, 10] the x^{-a-2} factor of Types I/II outweighs e^{5/2} once a exceeds about 1.6
    probe = spectral.second_solution_growth_probe(family, m, a, [10.0, 20.0, 30.0, 40.0])
    return probe.passed and probe.first_solution_decays, {"second_weighted": probe.second_weighted}


def _boundary(family: Family, m: int, a: float) -> Outcome:
    kind = spectral.BoundaryKind.X_POWER_DERIVATIVE
    limits = {}
    ok = True
    for n in DegreeSet(family, m).first(3):
        f = spectral.PowerTimesPoly.of(substitute_alpha(exceptional.exceptional_polynomial(family, m, n), a, "exact"))
        result = spectral.boundary_functional(kind, a, f)
        limits[f"n={n}"] = result.limit
        ok = ok and result.passed
    singular = spectral.boundary_functional(kind, a, spectral.PowerTimesPoly.monomial(-a))
    limits["x^-a"] = singular.limit
    return ok and not singular.passed, limits


def _s_boundary(m: int, a: float) -> Outcome:
    kind = spectral.BoundaryKind.XFPRIME_PLUS_ALPHA_F
    limits = {}
    ok = True
    for n in DegreeSet(Family.TYPE_III, m).first(3):
        q = substitute_alpha(exceptional.xlag3(m, n), -a, "exact")
        result = spectral.boundary_functional(kind, a, spectral.PowerTimesPoly(-a, q))
        limits[f"n={n}"] = result.limit
        ok = ok and result.passed
    return ok, limits


def _spectrum(op: spectral.OperatorTag, m: int, a: float) -> Outcome:
    spec = spectral.spectrum(op, m, a, 5)
    if op is spectral.OperatorTag.T_III:
        expected = [n - m + a for n in spec.degrees]
    else:
        expected = [float(i) for i in range(5)]
    ok = all(abs(x - y) < 1e-12 for x, y in zip(spec.values, expected, strict=True))
    return ok, {"eigenvalues": spec.values}


def root_checks(params: SuiteParams) -> list[Check]:
    checks: list[Check] = []
    for family in params.families:
        if family is Family.CLASSICAL:
            continue
        for m in params.ms_for(family):
            for a in params.alphas_for(family, m):
                if not _admissible(family, m, a):
                    continue
                for k in params.k_values:
                    tag = f"{_fam(family)}/m={m}/a={a}/k={k:02d}"
                    checks.append((f"roots/{tag}", lambda f=family, m=m, a=a, k=k: _roots(f, m, k, a)))
                    if family is Family.TYPE_III:
                        checks.append(
                            (
                                f"roots/critical/{tag}",
                                lambda m=m, k=k, a=a: (numerics.critical_points_check(m, k, a), {}),
                            )
                        )
    return checks


def _roots(family: Family, m: int, k: int, a: float) -> Outcome:
    if family is Family.TYPE_III:
        report = numerics.interlacing_check(m, k, a)
    elif family is Family.TYPE_I:
        report = numerics.type1_root_report(m, k, a)
    else:
        report = numerics.type2_root_report(m, m + k, a)
    return report.verdict, {"positive": len(report.positive_roots), "negative": len(report.negative_roots)}


def load_appendix() -> list[dict[str, Any]]:
    text = resources.files("xlaguerre").joinpath("data/appendix.yaml").read_text(encoding="utf-8")
    return yaml.safe_load(text)["entries"]


def appendix_checks(params: SuiteParams) -> list[Check]:
    return [
        (f"appendix/m={e['m']}/n={e['n']:02d}", lambda e=e: _appendix_entry(e["m"], e["n"], e["poly"]))
        for e in load_appendix()
    ]


def _appendix_entry(m: int, n: int, text: str) -> Outcome:
    built = exceptional.xlag3(m, n)
    ok = built == parse_xpoly(text)
    details = {} if ok else {"built": format_xpoly(built), "published": text}
    return ok, details


_BUILDERS: dict[str, Callable[[SuiteParams], list[Check]]] = {
    "identities": identity_checks,
    "norms": norm_checks,
    "gram": gram_checks,
    "spectral": spectral_checks,
    "roots": root_checks,
    "appendix": appendix_checks,
}


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------


def _run_one(suite: str, check: Check) -> CheckRecord:
    name, func = check
    start = time.perf_counter()
    try:
        ok, details = func()
        record = CheckRecord.from_bool(name, ok, **details)
    except XLaguerreError as e:
        logger.warning("check_errored", extra={"check": name, "error": str(e)})
        record = CheckRecord(name=name, status=CheckStatus.FAIL, details={"error": f"{type(e).__name__}: {e}"})
    record_check(suite, record.status.value, time.perf_counter() - start)
    return record


def run_checks(suite: str, checks: Iterable[Check], max_workers: int | None = None) -> list[CheckRecord]:
    checks = list(checks)
    workers = max_workers or settings.max_workers
    if workers <= 1 or len(checks) <= 1:
        records = [_run_one(suite, c) for c in checks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(lambda c: _run_one(suite, c), checks))
    return sorted(records, key=lambda r: r.name)


def run_suite(
    suite: str, params: SuiteParams | None = None, max_workers: int | None = None, command: str = "verify"
) -> Report:
    """Run one suite, or every suite for "all"; records come back sorted by name."""
    params = params or SuiteParams()
    names = SUITES if suite == "all" else (suite,)
    unknown = [n for n in names if n not in _BUILDERS]
    if unknown:
        raise ValueError(f"unknown suite {unknown[0]!r}; expected one of {', '.join((*SUITES, 'all'))}")
    records: list[CheckRecord] = []
    for name in names:
        records.extend(run_checks(name, _BUILDERS[name](params), max_workers))
    report = Report(command=command, parameters={"suite": suite}, records=records).sorted()
    counts = report.counts()
    logger.info("suite_finished", extra={"suite": suite, "failed": counts["fail"], "passed": counts["pass"]})
    return report

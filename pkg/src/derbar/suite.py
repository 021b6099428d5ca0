"""Verification suites driven by the CLI."""

from __future__ import annotations

from .bar import (bar_term_basis, d3_block_signs, euler_identity, generators_check, linearity_check,
                  poincare_coefficients, verify_bar)
from .coker import (build_U, coker_descent_check, derivation_columns_check, golod_condition_module,
                    highlighted_minor_check, verify_dg_module)
from .determinantal import build_generic, check_identities
from .hilbert_burch import golod_condition_ring, verify_dga
from .homological import (VerificationReport, be_condition_one, compose_check, minimality_check,
                          rank_probe)
from .poly import DEFAULT_PRIME


def rank_report(n: int, name: str, matrix, expected: int, prime: int, trials: int, seed: int) -> tuple:
    per_trial: list[int] = []
    rank = rank_probe(matrix, prime, trials, seed, per_trial)
    rep = VerificationReport(f"rank {name}", {"n": n, "expected": expected, "probed": rank, "trials": per_trial,
                                              "prime": prime}, seed=seed)
    rep.params["certified"] = all(r == expected for r in per_trial)
    if not rep.params["certified"]:
        rep.fail({"expected": expected, "per_trial": per_trial})
    return rep, rank


def betti_report(n: int, degree: int) -> VerificationReport:
    coeffs = poincare_coefficients(n, degree)
    g = build_generic(n)
    ranks = [len(bar_term_basis(r + 2, g)) for r in range(degree + 1)]
    rep = VerificationReport("betti", {"n": n, "poincare": coeffs, "bar_ranks": ranks})
    for r, (b, k) in enumerate(zip(coeffs, ranks)):
        if b != k:
            rep.fail({"r": r, "series": b, "rank B_r+2": k})
    return rep


def structure_suite(n: int, prime: int = DEFAULT_PRIME, trials: int = 5, seed: int = 0,
                    module_axioms: bool = True) -> list[VerificationReport]:
    """Everything about A and U for one n."""
    g = build_generic(n)
    U = build_U(g)
    A = U.A
    reports = [check_identities(g), compose_check(A.complex), compose_check(U.complex),
               minimality_check(A.complex), minimality_check(U.complex), verify_dga(A),
               golod_condition_ring(A), golod_condition_module(U), coker_descent_check(g),
               derivation_columns_check(U)]
    if module_axioms:
        reports.append(verify_dg_module(U))
    r_phi1 = rank_report(n, "phi1", A.complex.d(1), 1, prime, trials, seed)
    r_phi2 = rank_report(n, "phi2", A.complex.d(2), n, prime, trials, seed)
    r_jt = rank_report(n, "J^T", U.complex.d(1), n + 1, prime, trials, seed)
    r_d2 = rank_report(n, "partial2", U.complex.d(2), (n - 1) * (n + 1), prime, trials, seed)
    reports += [r[0] for r in (r_phi1, r_phi2, r_jt, r_d2)]
    reports.append(be_condition_one(A.complex, [r_phi1[1], r_phi2[1]]))
    reports.append(be_condition_one(U.complex, [r_jt[1], r_d2[1]]))
    reports.append(highlighted_minor_check(U, prime=prime, trials=trials, seed=seed))
    return reports


def bar_suite(n: int, degree: int, prime: int = DEFAULT_PRIME, seed: int = 0,
              points: int = 20) -> list[VerificationReport]:
    g = build_generic(n)
    reports = [verify_bar(max(degree, 2), g, prime, points, seed), d3_block_signs(g),
               betti_report(n, degree), generators_check(g), euler_identity(g)]
    if n == 2:
        reports.append(linearity_check(g, max(degree, 2)))
    return reports


def run_suite(n: int, degree: int, prime: int = DEFAULT_PRIME, trials: int = 5,
              seed: int = 0) -> list[VerificationReport]:
    return structure_suite(n, prime, trials, seed) + bar_suite(n, degree, prime, seed)


def full_suite(prime: int = DEFAULT_PRIME, trials: int = 5, seed: int = 0) -> list[VerificationReport]:
    """The desk-scale suite: n = 2 through degree 5, n = 3 through degree 4, n = 4 and 5 partially."""
    reports = run_suite(2, 5, prime, trials, seed)
    reports += run_suite(3, 4, prime, trials, seed)
    reports += structure_suite(4, prime, trials, seed)
    for n in (4, 5):
        g = build_generic(n)
        reports += [generators_check(g), euler_identity(g)]
    return reports

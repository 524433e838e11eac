"""Acceptance criteria, one test per criterion, at their stated tolerances.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line per
criterion together with the measured worst-case numbers.
"""

import math
import time

import pytest

from ptscatter import (
    PhiAngle,
    SingularSystem,
    build_pt_delta_pair,
    build_ultralocal,
    cf_m1,
    cf_m2,
    cf_m3,
    cf_ultralocal,
    cf_ultralocal_prob_sum,
    default_coupling_grid,
    default_phi_grid,
    solve_matching,
    solve_transfer_matrix,
    transfer_matching_agreement,
)
from ptscatter.cli import main

X_GRID = default_coupling_grid()          # {-0.9, -0.8, ..., 0.9}
PHI_GRID = default_phi_grid(50)           # 50 angles strictly inside (0.05, pi - 0.05)


def _report(number: int, title: str, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")
    assert ok, f"criterion {number} failed: {detail}"


def test_criterion_1_closed_form_reproduction_m1():
    start = time.perf_counter()
    worst = 0.0
    for x in X_GRID:
        win = build_pt_delta_pair(1, x)
        for phi in PHI_GRID:
            num = solve_matching(win, phi).amplitudes
            cf = cf_m1(x, phi)
            worst = max(worst, abs(num.R - cf.R), abs(num.T - cf.T))
    elapsed = time.perf_counter() - start
    _report(
        1,
        "closed-form reproduction, separation 1",
        worst <= 1e-10 and elapsed < 1.0,
        f"worst |delta| {worst:.3e} (tol 1e-10), {elapsed:.2f}s (< 1s)",
    )


def test_criterion_2_closed_form_reproduction_m2_m3():
    start = time.perf_counter()
    worst = 0.0
    for m_sep, form in ((2, cf_m2), (3, cf_m3)):
        for x in X_GRID:
            if abs(x) < 1e-3:
                continue
            win = build_pt_delta_pair(m_sep, x)
            for phi in PHI_GRID:
                num = solve_matching(win, phi).amplitudes
                cf = form(x, phi)
                worst = max(worst, abs(num.R - cf.R), abs(num.T - cf.T))
    elapsed = time.perf_counter() - start
    _report(
        2,
        "closed-form reproduction, separations 2 and 3 (|x| >= 1e-3)",
        worst <= 1e-10 and elapsed < 2.0,
        f"worst |delta| {worst:.3e} (tol 1e-10), {elapsed:.2f}s (< 2s)",
    )


def test_criterion_3_probability_conservation_through_m8():
    start = time.perf_counter()
    worst = 0.0
    for m_sep in range(1, 9):
        for x in X_GRID:
            win = build_pt_delta_pair(m_sep, x)
            for phi in PHI_GRID:
                worst = max(worst, abs(solve_matching(win, phi).amplitudes.defect))
                worst = max(worst, abs(solve_transfer_matrix(win, phi).amplitudes.defect))
    elapsed = time.perf_counter() - start
    _report(
        3,
        "conservation |R|^2+|T|^2 = 1, separations 1..8, both solvers",
        worst <= 1e-10 and elapsed < 10.0,
        f"worst |defect| {worst:.3e} (tol 1e-10), {elapsed:.2f}s (< 10s)",
    )


def test_criterion_4_ultralocal_anomaly():
    worst_amp = 0.0
    worst_sum = 0.0
    sign_ok = True
    for a in X_GRID:
        win = build_ultralocal(a)
        for phi in PHI_GRID:
            cf = cf_ultralocal(a, phi)
            num = solve_matching(win, phi).amplitudes
            worst_amp = max(worst_amp, abs(cf.R - num.R), abs(cf.T - num.T))
            direct = cf_ultralocal_prob_sum(a, phi)
            worst_sum = max(worst_sum, abs(direct - cf.prob_sum))
            if a != 0.0:
                sign_ok = sign_ok and (math.copysign(1.0, direct - 1.0) == -math.copysign(1.0, a))
    spot = cf_ultralocal_prob_sum(0.5, PhiAngle(math.pi / 2))
    spot_ok = abs(spot - 0.346939) <= 1e-5
    ok = worst_amp <= 1e-10 and worst_sum <= 1e-12 and spot_ok and sign_ok
    _report(
        4,
        "ultralocal anomaly",
        ok,
        f"worst amp delta {worst_amp:.3e} (tol 1e-10), worst sum delta {worst_sum:.3e} (tol 1e-12), "
        f"sum(0.5, pi/2) = {spot:.6f} (0.346939 +/- 1e-5), sign(defect) = -sign(a): {sign_ok}",
    )


def test_criterion_5_oracle_triangle_on_random_windows():
    start = time.perf_counter()
    result = transfer_matching_agreement(n_windows=500, angles_per_window=20, tol=1e-9)
    elapsed = time.perf_counter() - start
    worst = max(result.worst_delta_r, result.worst_delta_t)
    _report(
        5,
        "matching vs transfer on 500 random tridiagonal windows x 20 angles",
        result.passed and elapsed < 10.0,
        f"worst |delta| {worst:.3e} (tol 1e-9), {elapsed:.2f}s (< 10s)",
    )


def test_criterion_6_unimodularity_and_evenness():
    worst_uni = 0.0
    worst_even = 0.0
    for m_sep in range(1, 9):
        for x in X_GRID:
            win = build_pt_delta_pair(m_sep, x)
            for phi in PHI_GRID:
                amps = solve_matching(win, phi).amplitudes
                worst_uni = max(worst_uni, abs(abs(amps.T - amps.R) - 1.0))
        for x in (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9):
            plus_win = build_pt_delta_pair(m_sep, x)
            minus_win = build_pt_delta_pair(m_sep, -x)
            for phi in PHI_GRID:
                plus = solve_matching(plus_win, phi).amplitudes
                minus = solve_matching(minus_win, phi).amplitudes
                worst_even = max(worst_even, abs(plus.R - minus.R), abs(plus.T - minus.T))
    ok = worst_uni <= 1e-10 and worst_even <= 1e-10
    _report(
        6,
        "unimodular difference and evenness in the coupling, separations 1..8",
        ok,
        f"worst | |T-R| - 1 | {worst_uni:.3e}, worst evenness delta {worst_even:.3e} (tol 1e-10)",
    )


def test_criterion_7_singular_set_is_always_rejected():
    checked = 0
    for m_sep in range(1, 9):
        for x in (1.0, -1.0):
            win = build_pt_delta_pair(m_sep, x)
            for phi in (PhiAngle(0.3), PhiAngle(1.0), PhiAngle(2.7)):
                for solve in (solve_matching, solve_transfer_matrix):
                    with pytest.raises(SingularSystem):
                        solve(win, phi)
                    checked += 1
    _report(
        7,
        "singular set |x| = 1 raises SingularSystem, never a silent answer",
        True,
        f"{checked} (separation, coupling, angle, solver) combinations all raised",
    )


def test_criterion_8_sweep_determinism(tmp_path):
    args = [
        "sweep", "--model", "pt-pair", "--M-list", "1,2,3",
        "--x-range=-0.9:0.9:0.3", "--phi-range", "0.2:2.9:0.3", "--solver", "all",
    ]
    first, second = tmp_path / "first.csv", tmp_path / "second.csv"
    assert main(args + ["--out", str(first)]) == 0
    assert main(args + ["--out", str(second)]) == 0
    identical = first.read_bytes() == second.read_bytes()
    _report(
        8,
        "sweep rerun with identical flags is byte-identical CSV",
        identical,
        f"{len(first.read_bytes())} bytes compared",
    )

"""
Batch computations over parameter grids.

``run_sweep`` evaluates a model family over coupling/angle grids with one or
more solver routes and collects the results into a flat, deterministically
ordered table (sorted by separation, coupling, angle, solver tag).  Singular
grid points become error records instead of aborting the sweep.  Grid points
are independent pure evaluations, so they may be computed by a thread pool;
the SCATTER_THREADS environment variable sets the worker count (absent or 1
means serial).  Results are reassembled in grid order either way, so the
table is identical no matter how it was scheduled.

``cross_validate`` closes the oracle triangle for the delta-pair family:
closed forms against both solvers where a closed form exists (separations
1..3), solver against solver beyond that, plus the probability-sum defect.
``transfer_matching_agreement`` does the same for randomly generated
tridiagonal windows, where no closed form is available at all.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._version import __version__
from .closedforms import closed_form_amplitudes
from .core import (
    CUSTOM,
    PT_PAIR,
    ULTRALOCAL,
    InteractionWindow,
    LatticeConvention,
    ModelFamily,
    PhiAngle,
    ScatteringAmplitudes,
    energy_from_phi,
)
from .errors import SingularSystem, SolverError
from .solver import PHI_EDGE_GUARD, SolveReport, solve_matching, solve_transfer_matrix

SOLVER_MATCHING = "matching"
SOLVER_TRANSFER = "transfer"
SOLVER_CLOSED_FORM = "closed-form"
ALL_SOLVERS = (SOLVER_CLOSED_FORM, SOLVER_MATCHING, SOLVER_TRANSFER)

ENV_THREADS = "SCATTER_THREADS"


def default_coupling_grid() -> tuple[float, ...]:
    """x in {-0.9, -0.8, ..., 0.9}: the regular grid excluding the singular |x| = 1 set."""
    return tuple(float(v) for v in np.linspace(-0.9, 0.9, 19))


def default_phi_grid(count: int = 50) -> tuple[PhiAngle, ...]:
    """Uniform angles strictly inside (0.05, pi - 0.05)."""
    lo, hi = 0.05, math.pi - 0.05
    return tuple(PhiAngle(lo + (hi - lo) * (k + 0.5) / count) for k in range(count))


@dataclass(frozen=True)
class SweepSpec:
    """Grid description for one sweep.

    ``model`` supplies the family variant (and the window, for custom
    models); ``couplings`` and ``m_list`` parameterize it per grid point.
    For ultralocal models the couplings are the a values and ``m_list`` is
    ignored; for custom windows both are ignored.
    """

    model: ModelFamily
    couplings: tuple[float, ...] = ()
    phis: tuple[PhiAngle, ...] = ()
    m_list: tuple[int, ...] = (1,)
    solvers: tuple[str, ...] = (SOLVER_MATCHING,)

    def __post_init__(self) -> None:
        if not self.phis:
            raise ValueError("empty phi grid")
        if self.model.kind != CUSTOM and not self.couplings:
            raise ValueError("empty coupling grid")
        if self.model.kind == PT_PAIR and not self.m_list:
            raise ValueError("empty separation list")
        for phi in self.phis:
            if phi.phi < PHI_EDGE_GUARD or phi.phi > math.pi - PHI_EDGE_GUARD:
                raise ValueError(f"phi={phi.phi!r} is inside the band-edge guard")
        for tag in self.solvers:
            if tag not in ALL_SOLVERS:
                raise ValueError(f"unknown solver tag {tag!r}")


@dataclass(frozen=True)
class SweepRow:
    model: str
    m_sep: int
    coupling: float
    phi: float
    energy: float
    amplitudes: ScatteringAmplitudes
    solver: str
    residual: float

    @property
    def prob_sum(self) -> float:
        return self.amplitudes.prob_sum

    @property
    def defect(self) -> float:
        return self.amplitudes.defect


@dataclass(frozen=True)
class SweepError:
    model: str
    m_sep: int
    coupling: float
    phi: float
    solver: str
    reason: str


@dataclass(frozen=True)
class SweepTable:
    meta: dict[str, str]
    rows: tuple[SweepRow, ...]
    errors: tuple[SweepError, ...]


def _table_meta() -> dict[str, str]:
    return {
        "tool": "ptscatter",
        "version": __version__,
        "convention": "zero-diagonal kinetic term, h=1, E=-2*cos(phi); left incidence anchored at window edges",
        "success_residual_rtol": "1e-10",
        "pivot_rtol": "1e-14",
    }


def _worker_count() -> int:
    raw = os.environ.get(ENV_THREADS)
    if raw is None:
        return 1
    try:
        count = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_THREADS} must be a positive integer, got {raw!r}") from None
    if count < 1:
        raise ValueError(f"{ENV_THREADS} must be a positive integer, got {raw!r}")
    return count


def _evaluate_point(
    model: ModelFamily, win: InteractionWindow, phi: PhiAngle, solver: str
) -> tuple[ScatteringAmplitudes, float]:
    if solver == SOLVER_CLOSED_FORM:
        return closed_form_amplitudes(model, phi), 0.0
    report: SolveReport
    if solver == SOLVER_MATCHING:
        report = solve_matching(win, phi)
    else:
        report = solve_transfer_matrix(win, phi)
    return report.amplitudes, report.residual_max


def run_sweep(spec: SweepSpec) -> SweepTable:
    """Evaluate the grid and return one row per (point, solver), sorted."""
    template = spec.model
    if template.kind == PT_PAIR:
        variants = [(m, x) for m in sorted(set(spec.m_list)) for x in sorted(set(spec.couplings))]
        make = lambda m, c: ModelFamily.pt_delta_pair(m, c)
    elif template.kind == ULTRALOCAL:
        variants = [(0, a) for a in sorted(set(spec.couplings))]
        make = lambda m, c: ModelFamily.ultralocal(c)
    else:
        variants = [(0, 0.0)]
        make = lambda m, c: template

    solvers = tuple(sorted(set(spec.solvers)))
    phis = tuple(sorted(set(spec.phis), key=lambda p: p.phi))
    conv = LatticeConvention()

    points: list[tuple[ModelFamily, InteractionWindow, PhiAngle, str]] = []
    for m_sep, coupling in variants:
        model = make(m_sep, coupling)
        win = model.window()
        for phi in phis:
            for tag in solvers:
                points.append((model, win, phi, tag))

    def evaluate(point):
        model, win, phi, tag = point
        try:
            return _evaluate_point(model, win, phi, tag)
        except (SolverError, ValueError) as exc:
            return exc

    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(evaluate, points))
    else:
        outcomes = [evaluate(p) for p in points]

    rows: list[SweepRow] = []
    errors: list[SweepError] = []
    for (model, _win, phi, tag), outcome in zip(points, outcomes):
        m_sep = model.m_sep or 0
        coupling = model.coupling
        if math.isnan(coupling):
            coupling = 0.0
        if isinstance(outcome, Exception):
            errors.append(
                SweepError(
                    model=model.kind,
                    m_sep=m_sep,
                    coupling=coupling,
                    phi=phi.phi,
                    solver=tag,
                    reason=f"{type(outcome).__name__}: {outcome}",
                )
            )
            continue
        amplitudes, residual = outcome
        rows.append(
            SweepRow(
                model=model.kind,
                m_sep=m_sep,
                coupling=coupling,
                phi=phi.phi,
                energy=energy_from_phi(phi, conv),
                amplitudes=amplitudes,
                solver=tag,
                residual=residual,
            )
        )
    return SweepTable(meta=_table_meta(), rows=tuple(rows), errors=tuple(errors))


@dataclass(frozen=True)
class ModelDefectStats:
    rows: int
    max_abs_defect: float
    mean_abs_defect: float
    violations: int
    defect_sign_opposes_coupling: bool | None


@dataclass(frozen=True)
class UnitarityReport:
    tol: float
    per_model: dict[str, ModelDefectStats]

    @property
    def total_violations(self) -> int:
        return sum(stats.violations for stats in self.per_model.values())


def unitarity_report(table: SweepTable, tol: float = 1e-9) -> UnitarityReport:
    """Per-model defect statistics and the defect-vs-coupling sign pattern."""
    if not table.rows:
        raise ValueError("cannot summarize an empty table")
    per_model: dict[str, ModelDefectStats] = {}
    for tag in sorted({row.model for row in table.rows}):
        rows = [row for row in table.rows if row.model == tag]
        defects = np.array([row.defect for row in rows])
        signed = [
            row for row in rows if abs(row.defect) > tol and row.coupling != 0.0 and not math.isnan(row.coupling)
        ]
        if signed:
            opposes: bool | None = all(
                (row.defect < 0.0) == (row.coupling > 0.0) for row in signed
            )
        else:
            opposes = None
        per_model[tag] = ModelDefectStats(
            rows=len(rows),
            max_abs_defect=float(np.max(np.abs(defects))),
            mean_abs_defect=float(np.mean(np.abs(defects))),
            violations=int(np.sum(np.abs(defects) > tol)),
            defect_sign_opposes_coupling=opposes,
        )
    return UnitarityReport(tol=tol, per_model=per_model)


@dataclass(frozen=True)
class CrossValidation:
    passed: bool
    tol: float
    m_max: int
    points_checked: int
    worst_closed_vs_matching: float
    worst_closed_vs_transfer: float
    worst_matching_vs_transfer: float
    worst_abs_defect: float
    singular_points: tuple[tuple[int, float], ...]

    @property
    def worst_delta(self) -> float:
        return max(
            self.worst_closed_vs_matching,
            self.worst_closed_vs_transfer,
            self.worst_matching_vs_transfer,
        )


def _amp_delta(a: ScatteringAmplitudes, b: ScatteringAmplitudes) -> float:
    return max(abs(a.R - b.R), abs(a.T - b.T))


def cross_validate(
    m_max: int,
    tol: float = 1e-9,
    x_values: Sequence[float] | None = None,
    phi_values: Sequence[PhiAngle] | None = None,
) -> CrossValidation:
    """Close the oracle triangle for the delta-pair family up to separation m_max.

    Separations 1..3 compare the closed forms against both numeric solvers;
    larger separations compare the two solvers against each other.  The
    probability-sum defect is checked everywhere.  Grid points where the
    solvers report a singular system (|x| = 1 and the like) are recorded and
    excluded from pass/fail.
    """
    if m_max < 1:
        raise ValueError(f"m_max must be >= 1, got {m_max!r}")
    xs = tuple(x_values) if x_values is not None else default_coupling_grid()
    phis = tuple(phi_values) if phi_values is not None else default_phi_grid()

    worst_cm = worst_ct = worst_mt = worst_defect = 0.0
    singular: list[tuple[int, float]] = []
    points = 0
    for m_sep in range(1, m_max + 1):
        for x in xs:
            model = ModelFamily.pt_delta_pair(m_sep, x)
            win = model.window()
            for phi in phis:
                try:
                    rm = solve_matching(win, phi)
                    rt = solve_transfer_matrix(win, phi)
                except SingularSystem:
                    if (m_sep, x) not in singular:
                        singular.append((m_sep, x))
                    break
                points += 1
                worst_mt = max(worst_mt, _amp_delta(rm.amplitudes, rt.amplitudes))
                worst_defect = max(
                    worst_defect, abs(rm.amplitudes.defect), abs(rt.amplitudes.defect)
                )
                if m_sep <= 3:
                    cf = closed_form_amplitudes(model, phi)
                    worst_cm = max(worst_cm, _amp_delta(cf, rm.amplitudes))
                    worst_ct = max(worst_ct, _amp_delta(cf, rt.amplitudes))

    passed = max(worst_cm, worst_ct, worst_mt, worst_defect) <= tol
    return CrossValidation(
        passed=passed,
        tol=tol,
        m_max=m_max,
        points_checked=points,
        worst_closed_vs_matching=worst_cm,
        worst_closed_vs_transfer=worst_ct,
        worst_matching_vs_transfer=worst_mt,
        worst_abs_defect=worst_defect,
        singular_points=tuple(singular),
    )


@dataclass(frozen=True)
class OracleAgreement:
    passed: bool
    tol: float
    windows: int
    angles_per_window: int
    worst_delta_r: float
    worst_delta_t: float


def random_tridiagonal_window(rng: np.random.Generator, width: int, lo: int) -> InteractionWindow:
    """Random real tridiagonal window with entries uniform in [-0.9, 0.9]."""
    hi = lo + width - 1
    entries: dict[tuple[int, int], complex] = {}
    for i in range(lo, hi + 1):
        for j in (i - 1, i, i + 1):
            if lo <= j <= hi:
                entries[(i, j)] = float(rng.uniform(-0.9, 0.9))
    return InteractionWindow(lo=lo, hi=hi, entries=entries)


def transfer_matching_agreement(
    n_windows: int = 500,
    angles_per_window: int = 20,
    tol: float = 1e-9,
    seed: int = 20260809,
) -> OracleAgreement:
    """Compare the two solvers on random tridiagonal windows.

    Window widths are uniform in 2..15 sites with a random placement on the
    chain; the entries stay in [-0.9, 0.9], so all total couplings are
    bounded away from zero.
    """
    rng = np.random.default_rng(seed)
    worst_r = worst_t = 0.0
    for _ in range(n_windows):
        width = int(rng.integers(2, 16))
        lo = int(rng.integers(-10, 11 - width))
        win = random_tridiagonal_window(rng, width, lo)
        for _ in range(angles_per_window):
            phi = PhiAngle(float(rng.uniform(0.05, math.pi - 0.05)))
            rm = solve_matching(win, phi).amplitudes
            rt = solve_transfer_matrix(win, phi).amplitudes
            worst_r = max(worst_r, abs(rm.R - rt.R))
            worst_t = max(worst_t, abs(rm.T - rt.T))
    return OracleAgreement(
        passed=max(worst_r, worst_t) <= tol,
        tol=tol,
        windows=n_windows,
        angles_per_window=angles_per_window,
        worst_delta_r=worst_r,
        worst_delta_t=worst_t,
    )

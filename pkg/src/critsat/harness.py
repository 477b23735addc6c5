"""Experiment harness: seeded, worker-invariant Monte Carlo studies.

Four experiments share one trial layout:

* fixed-variables sweep: P(SAT after fixing floor(n^q) variables) over a
  grid of (n, q), with an unfixed baseline cell per n;
* critical-window study: P(SAT) of the raw formula across densities;
* trajectory study: per-round unit-clause counts of the propagation
  process at a single (n, q);
* distribution check: clause-category counts under a fixed set of known
  size against their multinomial law.

Every trial owns the RNG stream derived from (master_seed, cell << 32 |
trial).  Results are written into preallocated arrays indexed by trial, so
tables are bit-identical across worker counts; merging is by index, never
by completion order.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import stats as _scipy_stats

from . import _engine
from .errors import InvalidSpec
from .formula import fixed_set
from .oracles import BudgetRegime, clause_category_probs, rounds_budget
from .propagation import propagate
from .sampling import RngStream, SampleSpec, sample_formula, _sample_clause_pairs, _sample_fixed_lits
from .solve import solve_2sat

CSV_COLUMNS = (
    "experiment_id", "n", "alpha", "q", "f",
    "trials", "sat_count", "p_hat", "stderr", "seed",
)


def default_workers() -> int:
    """Worker threads used when a config leaves workers=None."""
    raw = os.environ.get("CRITSAT_WORKERS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def f_of(n: int, q: float) -> int:
    """Number of variables fixed at exponent q: floor(n^q)."""
    if n < 1:
        raise InvalidSpec("n must be positive")
    if q < 0:
        raise InvalidSpec("q must be nonnegative")
    return min(int(math.floor(n ** q + 1e-12)), n)


def _clause_count(n: int, alpha: float) -> int:
    # floor(alpha * n), with a guard against float artifacts on decimal grids
    return int(math.floor(alpha * n + 1e-9))


@dataclass(frozen=True, slots=True)
class SweepRow:
    """One cell of an exported results table."""

    experiment_id: str
    n: int
    alpha: float
    q: float | None
    f: int
    trials: int
    sat_count: int
    seed: int

    @property
    def p_hat(self) -> float:
        return self.sat_count / self.trials

    @property
    def stderr(self) -> float:
        p = self.p_hat
        return math.sqrt(p * (1.0 - p) / self.trials)

    def as_record(self) -> dict:
        return {
            "experiment_id": self.experiment_id,
            "n": self.n,
            "alpha": self.alpha,
            "q": self.q,
            "f": self.f,
            "trials": self.trials,
            "sat_count": self.sat_count,
            "p_hat": self.p_hat,
            "stderr": self.stderr,
            "seed": self.seed,
        }


@dataclass(frozen=True, slots=True)
class SweepTable:
    rows: tuple[SweepRow, ...]

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def row_for(self, n: int, q: float | None) -> SweepRow:
        for row in self.rows:
            if row.n == n and _q_equal(row.q, q):
                return row
        raise KeyError(f"no row with n={n}, q={q}")

    def baseline_for(self, n: int) -> SweepRow:
        """The unfixed (f = 0) cell for this n."""
        for row in self.rows:
            if row.n == n and row.f == 0:
                return row
        raise KeyError(f"no baseline row for n={n}")


def _q_equal(a: float | None, b: float | None) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return abs(a - b) < 1e-12


@dataclass(frozen=True, slots=True)
class SweepConfig:
    """Grid for the fixed-variables sweep.

    fix_mode "uniform" samples the fixed set per trial; "canonical" fixes
    the topmost variables positively, which by the relabeling coupling
    leaves every cell's SAT law unchanged.  mode "proof-faithful" runs the
    padded, re-coupled process instead of plain propagation.
    """

    n_list: tuple[int, ...] = (1000, 10000, 100000)
    q_list: tuple[float, ...] = (0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50)
    alpha: float = 1.0
    trials: int = 2000
    master_seed: int = 0
    mode: str = "plain"
    fix_mode: str = "uniform"
    include_baseline: bool = True
    experiment_id: str = "figure2"
    workers: int | None = None
    audit: bool = True

    def __post_init__(self) -> None:
        if not self.n_list or any(n < 2 for n in self.n_list):
            raise InvalidSpec("n_list must be nonempty with n >= 2")
        if any(q < 0 or q > 1 for q in self.q_list):
            raise InvalidSpec("q values must lie in [0, 1]")
        if self.alpha <= 0:
            raise InvalidSpec("alpha must be positive")
        if self.trials < 1:
            raise InvalidSpec("trials must be >= 1")
        if self.mode not in ("plain", "proof-faithful"):
            raise InvalidSpec(f"unknown mode {self.mode!r}")
        if self.fix_mode not in ("uniform", "canonical"):
            raise InvalidSpec(f"unknown fix_mode {self.fix_mode!r}")


def _audit_trial(n, m, f, fix_mode, master_seed, stream_index, engine_sat) -> None:
    """Re-run one engine trial through the object layer and compare verdicts.

    Replays the exact stream, so the formula and fixing are the ones the
    engine saw.
    """
    gen = RngStream(master_seed, stream_index).generator
    pairs = _sample_clause_pairs(n, m, gen) if m > 0 else np.empty((0, 2), dtype=np.int64)
    formula = _pairs_to_formula(n, pairs)
    if f == 0:
        reference = solve_2sat(formula, want_witness=False).satisfiable
    else:
        if fix_mode == "uniform":
            lits = _sample_fixed_lits(n, f, gen)
        else:
            lits = np.arange(n - f + 1, n + 1, dtype=np.int64)
        fixing = fixed_set(int(x) for x in lits)
        trace = propagate(formula, fixing, solve_residual=True)
        reference = trace.overall_satisfiable
    if reference is None or bool(reference) != bool(engine_sat):
        raise _engine.AuditFailure(
            f"engine/reference mismatch at n={n} m={m} f={f} "
            f"stream={stream_index}: engine={engine_sat} reference={reference}"
        )


def _pairs_to_formula(n, pairs):
    from .formula import Clause, CnfFormula

    return CnfFormula(n, tuple(Clause((int(a), int(b))) for a, b in pairs))


def run_figure2_sweep(config: SweepConfig) -> SweepTable:
    """P(SAT) per (n, q) cell, plus one unfixed baseline cell per n.

    Cells are numbered in deterministic order (n major, baseline first,
    then the q grid), which pins every trial's RNG stream.
    """
    workers = config.workers if config.workers is not None else default_workers()
    rows: list[SweepRow] = []
    cell_index = 0
    audit_fn = _audit_trial if config.audit else None
    for n in config.n_list:
        m = _clause_count(n, config.alpha)
        cells: list[tuple[float | None, int]] = []
        if config.include_baseline:
            cells.append((None, 0))
        cells.extend((q, f_of(n, q)) for q in config.q_list)
        for q, f in cells:
            flags = _engine.run_sat_cell(
                n, m, f, config.mode, config.fix_mode,
                config.master_seed, cell_index, config.trials, workers,
                audit_reference=audit_fn,
            )
            rows.append(SweepRow(
                experiment_id=config.experiment_id,
                n=n, alpha=config.alpha, q=q, f=f,
                trials=config.trials, sat_count=int(flags.sum()),
                seed=config.master_seed,
            ))
            cell_index += 1
    return SweepTable(tuple(rows))


def run_window_study(
    n_list: Sequence[int],
    alpha_list: Sequence[float],
    trials: int = 2000,
    master_seed: int = 0,
    workers: int | None = None,
    experiment_id: str = "window",
) -> SweepTable:
    """P(SAT) of the raw formula over a density grid, no fixing at all."""
    if trials < 1:
        raise InvalidSpec("trials must be >= 1")
    if any(a <= 0 for a in alpha_list):
        raise InvalidSpec("alpha must be positive")
    if workers is None:
        workers = default_workers()
    rows: list[SweepRow] = []
    cell_index = 0
    for n in n_list:
        for alpha in alpha_list:
            m = _clause_count(n, alpha)
            flags = _engine.run_sat_cell(
                n, m, 0, "plain", "canonical",
                master_seed, cell_index, trials, workers,
                audit_reference=_audit_trial,
            )
            rows.append(SweepRow(
                experiment_id=experiment_id,
                n=n, alpha=alpha, q=None, f=0,
                trials=trials, sat_count=int(flags.sum()),
                seed=master_seed,
            ))
            cell_index += 1
    return SweepTable(tuple(rows))


@dataclass(frozen=True, slots=True)
class TrajectoryConfig:
    n: int = 100000
    q: float = 0.20
    alpha: float = 1.0
    trials: int = 2000
    master_seed: int = 0
    mode: str = "plain"
    fix_mode: str = "uniform"
    workers: int | None = None
    round_cap: int | None = None  # None: run to termination (cap n is unreachable)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidSpec("n must be >= 2")
        if self.q < 0 or self.q > 1:
            raise InvalidSpec("q must lie in [0, 1]")
        if self.trials < 1:
            raise InvalidSpec("trials must be >= 1")
        if self.mode not in ("plain", "proof-faithful"):
            raise InvalidSpec(f"unknown mode {self.mode!r}")
        if self.fix_mode not in ("uniform", "canonical"):
            raise InvalidSpec(f"unknown fix_mode {self.fix_mode!r}")


@dataclass(frozen=True, slots=True)
class TrajectoryStats:
    """Aggregated round telemetry for one (n, q) cell.

    Per-round arrays are indexed by round (entry 0 is round 1) and padded
    with zeros past a trial's termination, so each round aggregates over
    all trials.  Histogram keys are the terminating round; their counts
    plus `capped` sum to `trials`.
    """

    n: int
    q: float
    f: int
    alpha: float
    trials: int
    mode: str
    master_seed: int
    max_rounds: int
    mean_m1: tuple[float, ...]
    q10_m1: tuple[float, ...]
    q50_m1: tuple[float, ...]
    q90_m1: tuple[float, ...]
    mean_cumulative_fixed: tuple[float, ...]
    contradiction_hist: dict[int, int] = field(compare=False)
    extinction_hist: dict[int, int] = field(compare=False)
    capped: int = 0
    budget_over: int | None = None
    budget_under: int | None = None

    @property
    def clean_extinction_fraction(self) -> float:
        return sum(self.extinction_hist.values()) / self.trials

    @property
    def contradiction_fraction(self) -> float:
        return sum(self.contradiction_hist.values()) / self.trials

    def as_dict(self) -> dict:
        return {
            "n": self.n, "q": self.q, "f": self.f, "alpha": self.alpha,
            "trials": self.trials, "mode": self.mode,
            "master_seed": self.master_seed, "max_rounds": self.max_rounds,
            "mean_m1": list(self.mean_m1),
            "q10_m1": list(self.q10_m1),
            "q50_m1": list(self.q50_m1),
            "q90_m1": list(self.q90_m1),
            "mean_cumulative_fixed": list(self.mean_cumulative_fixed),
            "contradiction_hist": {str(k): v for k, v in sorted(self.contradiction_hist.items())},
            "extinction_hist": {str(k): v for k, v in sorted(self.extinction_hist.items())},
            "capped": self.capped,
            "clean_extinction_fraction": self.clean_extinction_fraction,
            "budget_over": self.budget_over,
            "budget_under": self.budget_under,
        }


def run_trajectory_study(config: TrajectoryConfig) -> TrajectoryStats:
    """Round-by-round unit counts of the propagation process at one (n, q).

    Trials run to natural termination (contradiction or clean extinction);
    the theoretical round budgets are attached as metadata, not enforced,
    because at reachable n the under-constrained budget floors to zero.
    """
    workers = config.workers if config.workers is not None else default_workers()
    f = f_of(config.n, config.q)
    m = _clause_count(config.n, config.alpha)
    cap = config.round_cap if config.round_cap is not None else config.n
    telemetry = _engine.run_trajectory_cell(
        config.n, m, f, config.mode, config.fix_mode,
        config.master_seed, 0, config.trials, workers, cap,
    )
    max_rounds = max((t.m1.size for t in telemetry), default=0)
    m1_mat = np.zeros((config.trials, max_rounds), dtype=np.int64)
    s_mat = np.zeros((config.trials, max_rounds), dtype=np.int64)
    contradiction_hist: dict[int, int] = {}
    extinction_hist: dict[int, int] = {}
    capped = 0
    for i, t in enumerate(telemetry):
        r = t.m1.size
        m1_mat[i, :r] = t.m1
        # Cumulative fixed count after each round: f plus the induced sets.
        s_mat[i, :r] = f + np.cumsum(t.mbar1)
        if r < max_rounds:
            s_mat[i, r:] = s_mat[i, r - 1] if r > 0 else f
        if t.contradiction_round:
            contradiction_hist[t.contradiction_round] = contradiction_hist.get(t.contradiction_round, 0) + 1
        elif t.extinction_round:
            extinction_hist[t.extinction_round] = extinction_hist.get(t.extinction_round, 0) + 1
        else:
            capped += 1
    quantiles = (
        np.quantile(m1_mat, [0.1, 0.5, 0.9], axis=0) if max_rounds else np.zeros((3, 0))
    )
    over = under = None
    if 0 < config.q <= 0.5 and config.n >= 3:
        over = rounds_budget(config.n, config.q, BudgetRegime.OVER).rounds
        under = rounds_budget(config.n, config.q, BudgetRegime.UNDER).rounds
    return TrajectoryStats(
        n=config.n, q=config.q, f=f, alpha=config.alpha,
        trials=config.trials, mode=config.mode, master_seed=config.master_seed,
        max_rounds=max_rounds,
        mean_m1=tuple(float(x) for x in m1_mat.mean(axis=0)),
        q10_m1=tuple(float(x) for x in quantiles[0]),
        q50_m1=tuple(float(x) for x in quantiles[1]),
        q90_m1=tuple(float(x) for x in quantiles[2]),
        mean_cumulative_fixed=tuple(float(x) for x in s_mat.mean(axis=0)),
        contradiction_hist=contradiction_hist,
        extinction_hist=extinction_hist,
        capped=capped,
        budget_over=over,
        budget_under=under,
    )


@dataclass(frozen=True, slots=True)
class CategoryCheck:
    name: str
    probability: float
    expected_mean: float
    observed_mean: float
    sigma_of_mean: float
    z_score: float
    observed_variance: float
    expected_variance: float


@dataclass(frozen=True, slots=True)
class DistributionReport:
    """Observed clause-category counts against their multinomial law."""

    n: int
    f: int
    m: int
    samples: int
    master_seed: int
    categories: tuple[CategoryCheck, ...]
    chisq_stat: float
    chisq_pvalue: float
    mean_tolerance_sigma: float = 4.0
    significance: float = 0.001

    @property
    def means_ok(self) -> bool:
        return all(abs(c.z_score) <= self.mean_tolerance_sigma for c in self.categories)

    @property
    def chisq_ok(self) -> bool:
        return self.chisq_pvalue >= self.significance

    @property
    def passed(self) -> bool:
        return self.means_ok and self.chisq_ok

    def as_dict(self) -> dict:
        return {
            "n": self.n, "f": self.f, "m": self.m,
            "samples": self.samples, "master_seed": self.master_seed,
            "categories": [
                {
                    "name": c.name,
                    "probability": c.probability,
                    "expected_mean": c.expected_mean,
                    "observed_mean": c.observed_mean,
                    "sigma_of_mean": c.sigma_of_mean,
                    "z_score": c.z_score,
                    "observed_variance": c.observed_variance,
                    "expected_variance": c.expected_variance,
                }
                for c in self.categories
            ],
            "chisq_stat": self.chisq_stat,
            "chisq_pvalue": self.chisq_pvalue,
            "means_ok": self.means_ok,
            "chisq_ok": self.chisq_ok,
            "passed": self.passed,
        }


_CATEGORY_NAMES = ("falsified", "unit", "untouched", "satisfied")
_DIST_CHUNK = 4096  # samples per RNG stream; fixed so results ignore workers


def run_distribution_check(
    n: int,
    f: int,
    m: int,
    samples: int,
    master_seed: int = 0,
    workers: int | None = None,
) -> DistributionReport:
    """Sample clause-category counts under the canonical size-f fixing and
    compare with Multinomial(m, p(n, f)): per-category means at 4 sigma and
    a pooled chi-square over total counts.

    All accumulators are integers, so the report is exactly reproducible
    for any worker count.
    """
    if samples < 1:
        raise InvalidSpec("samples must be >= 1")
    if m < 1:
        raise InvalidSpec("m must be >= 1")
    probs = clause_category_probs(n, f)
    if workers is None:
        workers = default_workers()
    threshold = n - f

    chunk_bounds = [(lo, min(lo + _DIST_CHUNK, samples)) for lo in range(0, samples, _DIST_CHUNK)]
    sums = np.zeros((len(chunk_bounds), 4), dtype=np.int64)
    sumsqs = np.zeros((len(chunk_bounds), 4), dtype=np.int64)

    def run_chunk(idx: int) -> None:
        lo, hi = chunk_bounds[idx]
        count = hi - lo
        gen = RngStream(master_seed, idx).generator
        pairs = _sample_clause_pairs(n, count * m, gen).reshape(count, m, 2)
        mag = np.abs(pairs)
        val = np.where(mag > threshold, np.sign(pairs), 0)
        v1, v2 = val[:, :, 0], val[:, :, 1]
        sat = (v1 > 0) | (v2 > 0)
        c0 = ~sat & (v1 < 0) & (v2 < 0)
        c1 = ~sat & ((v1 < 0) ^ (v2 < 0))
        code = np.full((count, m), 2, dtype=np.int64)  # untouched by default
        code[c0] = 0
        code[c1] = 1
        code[sat] = 3
        offsets = np.arange(count, dtype=np.int64)[:, None] * 4
        counts = np.bincount((code + offsets).ravel(), minlength=count * 4).reshape(count, 4)
        sums[idx] = counts.sum(axis=0)
        sumsqs[idx] = (counts.astype(np.int64) ** 2).sum(axis=0)

    _engine._run_ranges(run_chunk, list(range(len(chunk_bounds))), workers)

    total = sums.sum(axis=0)
    total_sq = sumsqs.sum(axis=0)
    p = np.array(probs.as_floats())
    mean_obs = total / samples
    var_obs = total_sq / samples - mean_obs**2
    mean_exp = m * p
    var_exp = m * p * (1.0 - p)
    sigma_mean = np.sqrt(np.maximum(var_exp, 0.0) / samples)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(sigma_mean > 0, (mean_obs - mean_exp) / sigma_mean, np.where(mean_obs == mean_exp, 0.0, np.inf))

    live = p > 0
    if live.sum() >= 2:
        stat, pvalue = _scipy_stats.chisquare(total[live], f_exp=samples * m * p[live])
        stat, pvalue = float(stat), float(pvalue)
    else:
        # Degenerate law: all mass on one category, nothing to test.
        exact = bool((total[~live] == 0).all())
        stat, pvalue = 0.0, 1.0 if exact else 0.0

    categories = tuple(
        CategoryCheck(
            name=_CATEGORY_NAMES[k],
            probability=float(p[k]),
            expected_mean=float(mean_exp[k]),
            observed_mean=float(mean_obs[k]),
            sigma_of_mean=float(sigma_mean[k]),
            z_score=float(z[k]),
            observed_variance=float(var_obs[k]),
            expected_variance=float(var_exp[k]),
        )
        for k in range(4)
    )
    return DistributionReport(
        n=n, f=f, m=m, samples=samples, master_seed=master_seed,
        categories=categories, chisq_stat=stat, chisq_pvalue=pvalue,
    )


# ---------------------------------------------------------------------------
# Table I/O


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def table_payload(table: SweepTable, fmt: str) -> str:
    """Serialize a results table to the CSV or JSON wire format."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in table.rows:
            rec = row.as_record()
            writer.writerow([_format_cell(rec[col]) for col in CSV_COLUMNS])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps({"rows": [r.as_record() for r in table.rows]}, indent=2) + "\n"
    raise InvalidSpec(f"unknown table format {fmt!r}")


def export_table(table: SweepTable, path: str, fmt: str | None = None) -> None:
    """Write a results table as CSV or JSON (inferred from the extension).

    Writes are atomic: the file appears complete or not at all.
    """
    _atomic_write(path, table_payload(table, fmt or _infer_format(path)))


def load_table(path: str, fmt: str | None = None) -> SweepTable:
    fmt = fmt or _infer_format(path)
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    rows: list[SweepRow] = []
    if fmt == "csv":
        reader = csv.DictReader(io.StringIO(text))
        if reader.fieldnames is None or tuple(reader.fieldnames) != CSV_COLUMNS:
            raise InvalidSpec(f"unexpected table header in {path}")
        for rec in reader:
            rows.append(SweepRow(
                experiment_id=rec["experiment_id"],
                n=int(rec["n"]),
                alpha=float(rec["alpha"]),
                q=float(rec["q"]) if rec["q"] != "" else None,
                f=int(rec["f"]),
                trials=int(rec["trials"]),
                sat_count=int(rec["sat_count"]),
                seed=int(rec["seed"]),
            ))
    elif fmt == "json":
        for rec in json.loads(text)["rows"]:
            rows.append(SweepRow(
                experiment_id=rec["experiment_id"],
                n=int(rec["n"]),
                alpha=float(rec["alpha"]),
                q=None if rec["q"] is None else float(rec["q"]),
                f=int(rec["f"]),
                trials=int(rec["trials"]),
                sat_count=int(rec["sat_count"]),
                seed=int(rec["seed"]),
            ))
    else:
        raise InvalidSpec(f"unknown table format {fmt!r}")
    return SweepTable(tuple(rows))


def _infer_format(path: str) -> str:
    lower = path.lower()
    if lower.endswith(".json"):
        return "json"
    if lower.endswith(".csv"):
        return "csv"
    raise InvalidSpec(f"cannot infer table format from {path!r}; pass fmt")


def _atomic_write(path: str, payload: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


# ---------------------------------------------------------------------------
# Plot


_PALETTE = ("#1f6fb2", "#d1495b", "#3a7d44", "#8e6c8a", "#c07830", "#4f4f4f")


def emit_plot(table: SweepTable, path: str) -> None:
    """Render a sweep table as a standalone SVG: one P(SAT) curve per n
    over q, baselines as dashed horizontal lines, and a dotted reference
    line at q = 1/3.  Deterministic output for identical tables.
    """
    curve_rows = [r for r in table.rows if r.q is not None]
    if not curve_rows:
        raise InvalidSpec("table has no q-indexed rows to plot")
    ns = sorted({r.n for r in curve_rows})
    qs = sorted({r.q for r in curve_rows})
    q_min, q_max = min(qs), max(qs)
    if q_max == q_min:
        q_max = q_min + 1e-9

    width, height = 640, 440
    left, right, top, bottom = 70, 620, 30, 380

    def sx(q: float) -> float:
        return left + (right - left) * (q - q_min) / (q_max - q_min)

    def sy(p: float) -> float:
        return bottom - (bottom - top) * p

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="Helvetica, Arial, sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" stroke="black"/>',
    ]
    for p in (0.0, 0.25, 0.5, 0.75, 1.0):
        y = sy(p)
        parts.append(f'<line x1="{left - 4}" y1="{y:.1f}" x2="{left}" y2="{y:.1f}" stroke="black"/>')
        parts.append(f'<text x="{left - 8}" y="{y + 4:.1f}" text-anchor="end">{p:g}</text>')
    for q in qs:
        x = sx(q)
        parts.append(f'<line x1="{x:.1f}" y1="{bottom}" x2="{x:.1f}" y2="{bottom + 4}" stroke="black"/>')
        parts.append(f'<text x="{x:.1f}" y="{bottom + 18}" text-anchor="middle">{q:g}</text>')
    parts.append(f'<text x="{(left + right) / 2:.1f}" y="{height - 14}" text-anchor="middle">q</text>')
    parts.append(
        f'<text x="18" y="{(top + bottom) / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {(top + bottom) / 2:.1f})">estimated P(SAT)</text>'
    )
    if q_min <= 1 / 3 <= q_max:
        x = sx(1 / 3)
        parts.append(
            f'<line x1="{x:.1f}" y1="{top}" x2="{x:.1f}" y2="{bottom}" '
            f'stroke="#888888" stroke-dasharray="2,4"/>'
        )
        parts.append(f'<text x="{x + 4:.1f}" y="{top + 12}" fill="#888888">q = 1/3</text>')
    for i, n in enumerate(ns):
        color = _PALETTE[i % len(_PALETTE)]
        pts = sorted(((r.q, r.p_hat) for r in curve_rows if r.n == n))
        coords = " ".join(f"{sx(q):.2f},{sy(p):.2f}" for q, p in pts)
        parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.8"/>')
        for q, p in pts:
            parts.append(f'<circle cx="{sx(q):.2f}" cy="{sy(p):.2f}" r="2.6" fill="{color}"/>')
        try:
            base = table.baseline_for(n)
        except KeyError:
            base = None
        if base is not None:
            y = sy(base.p_hat)
            parts.append(
                f'<line x1="{left}" y1="{y:.2f}" x2="{right}" y2="{y:.2f}" '
                f'stroke="{color}" stroke-dasharray="6,3" stroke-width="1"/>'
            )
        ly = top + 16 * i + 8
        parts.append(f'<line x1="{right - 110}" y1="{ly}" x2="{right - 86}" y2="{ly}" stroke="{color}" stroke-width="1.8"/>')
        parts.append(f'<text x="{right - 80}" y="{ly + 4}">n = {n}</text>')
    parts.append("</svg>")
    _atomic_write(path, "\n".join(parts) + "\n")


# ---------------------------------------------------------------------------
# Convenience wrappers used by the CLI and demos


def sample_formula_arrays(n: int, m: int, master_seed: int, stream_index: int = 0):
    """The (m, 2) literal array a harness trial would sample; exposed for
    demos and external checks of the trial layout."""
    gen = RngStream(master_seed, stream_index).generator
    return _sample_clause_pairs(n, m, gen)


def single_trial_via_objects(n: int, m: int, master_seed: int, stream_index: int = 0):
    """Object-layer view of one baseline trial (formula plus verdict)."""
    spec = SampleSpec(n=n, m=m)
    formula = sample_formula(spec, RngStream(master_seed, stream_index))
    return formula, solve_2sat(formula)

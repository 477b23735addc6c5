"""Acceptance checklist.

Eleven numbered guarantees, one test per criterion, covering the exact
clause-category law, solver and decomposition correctness, the relabel
coupling, the multinomial sampling law, the 1-SAT bound, the
fixed-variables sweep and the scaling window it sits on, critical
branching-process asymptotics, trajectory contrast across the cutoff,
and bitwise reproducibility across worker counts.

Each test prints one PASS/FAIL line with its measured quantities; run
`pytest -v -s tests/test_acceptance.py` to read the suite as a
checklist.  The full sweep runs once per session and is shared by the
criteria that consume it; expect roughly fifteen minutes for that
fixture alone.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest
from scipy import stats

from critsat.formula import evaluate, fixed_set
from critsat.harness import (
    SweepConfig,
    TrajectoryConfig,
    f_of,
    run_distribution_check,
    run_figure2_sweep,
    run_trajectory_study,
    run_window_study,
    table_payload,
)
from critsat.oracles import (
    clause_category_probs,
    enumerate_category_counts,
    gw_survival,
    one_sat_bound,
)
from critsat.propagation import (
    TraceVerdict,
    propagate,
    relabel_coupling,
    substitute_fixed,
)
from critsat.sampling import (
    RngStream,
    SampleSpec,
    canonical_fixed_set,
    sample_fixed_set,
    sample_formula,
)
from critsat.solve import brute_force_sat, solve_1sat, solve_2sat

_SEED = 0


def _check(num: int, name: str, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[{num:02d}] {name}: {status} ({detail})", flush=True)
    assert ok, f"criterion {num} ({name}): {detail}"


def _pooled_sigma(*rows) -> float:
    return math.sqrt(sum(r.stderr**2 for r in rows))


def _crossing_q(points: list[tuple[float, float]], level: float) -> float | None:
    """Leftmost q where the piecewise-linear p(q) drops through `level`."""
    for (q0, p0), (q1, p1) in zip(points, points[1:]):
        if p0 >= level >= p1:
            if p0 == p1:
                return q0
            return q0 + (p0 - level) * (q1 - q0) / (p0 - p1)
    return None


@pytest.fixture(scope="session")
def sweep_result():
    config = SweepConfig(trials=2000, master_seed=_SEED, workers=1)
    start = time.perf_counter()
    table = run_figure2_sweep(config)
    return config, table, time.perf_counter() - start


def test_01_exact_category_law():
    start = time.perf_counter()
    bad = []
    pairs = 0
    for n in range(2, 31):
        d_size = 2 * n * (n - 1)  # |D| = 4 * C(n, 2)
        for f in range(n + 1):
            probs = clause_category_probs(n, f).as_tuple()
            counts = enumerate_category_counts(n, f)
            if probs != tuple(Fraction(c, d_size) for c in counts):
                bad.append((n, f))
            pairs += 1
    elapsed = time.perf_counter() - start
    _check(1, "exact clause-category law", not bad and elapsed < 10.0,
           f"{pairs} (n, f) pairs rationally exact, {elapsed:.1f}s; mismatches: {bad}")


def test_02_solver_vs_brute_force():
    start = time.perf_counter()
    meta = np.random.default_rng(_SEED)
    disagreements = 0
    bad_witnesses = 0
    for i in range(10_000):
        n = int(meta.integers(2, 13))
        m = int(meta.integers(0, 31))
        formula = sample_formula(SampleSpec(n=n, m=m, k=2), RngStream(_SEED, i))
        verdict = solve_2sat(formula)
        if verdict.satisfiable != brute_force_sat(formula).satisfiable:
            disagreements += 1
        elif verdict.satisfiable and not evaluate(formula, verdict.witness):
            bad_witnesses += 1
    elapsed = time.perf_counter() - start
    _check(2, "solver agrees with brute force",
           disagreements == 0 and bad_witnesses == 0 and elapsed < 30.0,
           f"10000 formulas, {disagreements} disagreements, "
           f"{bad_witnesses} false witnesses, {elapsed:.1f}s")


def test_03_decomposition_exactness():
    meta = np.random.default_rng(_SEED + 1)
    disagreements = 0
    for i in range(10_000):
        n = int(meta.integers(2, 13))
        m = int(meta.integers(0, 31))
        f = int(meta.integers(0, n + 1))
        rng = RngStream(_SEED + 1, i)
        formula = sample_formula(SampleSpec(n=n, m=m, k=2), rng)
        fixing = sample_fixed_set(n, f, rng)
        trace = propagate(formula, fixing, solve_residual=True)
        reduced, falsified = substitute_fixed(formula, fixing)
        truth = falsified == 0 and brute_force_sat(reduced).satisfiable
        if trace.overall_satisfiable is not truth:
            disagreements += 1
    _check(3, "propagation verdict equals substituted-formula truth",
           disagreements == 0, f"10000 (formula, fixing) pairs, "
           f"{disagreements} disagreements")


def test_04_relabel_coupling():
    # per-instance satisfiability transport onto the canonical suffix fixing
    meta = np.random.default_rng(_SEED + 2)
    mismatches = 0
    for i in range(1000):
        n = int(meta.integers(2, 13))
        m = int(meta.integers(0, 31))
        f = int(meta.integers(0, n + 1))
        rng = RngStream(_SEED + 2, i)
        formula = sample_formula(SampleSpec(n=n, m=m, k=2), rng)
        fixing = sample_fixed_set(n, f, rng)
        coupled = relabel_coupling(formula, fixing)
        direct_reduced, direct_falsified = substitute_fixed(formula, fixing)
        direct = direct_falsified == 0 and brute_force_sat(direct_reduced).satisfiable
        canon_reduced, canon_falsified = substitute_fixed(
            coupled.formula, canonical_fixed_set(n, f))
        canon = canon_falsified == 0 and brute_force_sat(canon_reduced).satisfiable
        if direct is not canon:
            mismatches += 1

    # output law: clauses are mapped independently, so the clauses of one
    # large sampled formula are i.i.d. draws from the coupled output law
    samples = 100_000
    formula = sample_formula(SampleSpec(n=4, m=samples, k=2), RngStream(_SEED + 2, 10**6))
    coupled = relabel_coupling(formula, fixed_set([2, -4]))
    pair_index = {(1, 2): 0, (1, 3): 1, (1, 4): 2, (2, 3): 3, (2, 4): 4, (3, 4): 5}
    counts = np.zeros(24, dtype=np.int64)
    for clause in coupled.formula.clauses:
        l1, l2 = clause.literals
        cell = pair_index[(abs(l1), abs(l2))] * 4 + (l1 > 0) * 2 + (l2 > 0)
        counts[cell] += 1
    pvalue = float(stats.chisquare(counts).pvalue)
    _check(4, "relabel coupling preserves satisfiability and the clause law",
           mismatches == 0 and pvalue >= 0.001,
           f"1000 instances, {mismatches} mismatches; "
           f"uniformity p={pvalue:.3f} on {samples} coupled clauses")


def test_05_multinomial_category_law():
    start = time.perf_counter()
    report = run_distribution_check(n=100, f=10, m=100, samples=100_000,
                                    master_seed=_SEED)
    elapsed = time.perf_counter() - start
    worst_z = max(abs(c.z_score) for c in report.categories)
    _check(5, "sampled categories follow the multinomial law",
           report.means_ok and report.chisq_ok and elapsed < 120.0,
           f"max |z|={worst_z:.2f} (cap 4), pooled chi-square "
           f"p={report.chisq_pvalue:.3f} (floor 0.001), {elapsed:.1f}s")


def test_06_one_sat_lower_bound():
    trials = 10_000
    failures = []
    for n in (4, 8, 16):
        for m in range(1, n + 1):
            sat = 0
            for i in range(trials):
                formula = sample_formula(SampleSpec(n=n, m=m, k=1),
                                         RngStream(_SEED + 3, n * 10_000 + m * 100 + i))
                units = [c.literals[0] for c in formula.clauses]
                sat += solve_1sat(units).satisfiable
            p_hat = sat / trials
            bound = one_sat_bound(n, m)
            sigma = math.sqrt(max(bound * (1.0 - bound), 1e-12) / trials)
            if p_hat < bound - 3.0 * sigma:
                failures.append((n, m, p_hat, bound))

    sat = sum(
        solve_1sat([c.literals[0] for c in
                    sample_formula(SampleSpec(n=2, m=2, k=1),
                                   RngStream(_SEED + 4, i)).clauses]).satisfiable
        for i in range(trials))
    p_small = sat / trials
    _check(6, "1-SAT probability respects its lower bound",
           not failures and abs(p_small - 0.75) <= 0.02,
           f"28 grid cells above (1-m/n)^m - 3 sigma, violations: {failures}; "
           f"P(n=2, m=2) = {p_small:.3f} vs 0.75 +- 0.02")


def test_07_sweep_shape(sweep_result):
    config, table, elapsed = sweep_result
    problems = []

    # (a) within each n the curve may not rise beyond 3 sigma noise
    for n in config.n_list:
        rows = [table.row_for(n, q) for q in config.q_list]
        for left, right in zip(rows, rows[1:]):
            if right.p_hat > left.p_hat + 3.0 * _pooled_sigma(left, right):
                problems.append(f"rise at n={n}, q={left.q}->{right.q}")

    # (b) the transition width shrinks strictly as n grows
    widths = {}
    for n in config.n_list:
        baseline = table.baseline_for(n).p_hat
        points = [(q, table.row_for(n, q).p_hat) for q in config.q_list]
        upper = _crossing_q(points, 0.75 * baseline)
        lower = _crossing_q(points, 0.25 * baseline)
        if upper is None or lower is None:
            problems.append(f"no 0.75/0.25 crossing at n={n}")
        else:
            widths[n] = lower - upper
    if len(widths) == len(config.n_list):
        ordered = [widths[n] for n in sorted(widths)]
        if not all(a > b for a, b in zip(ordered, ordered[1:])):
            problems.append(f"widths not strictly shrinking: {widths}")

    # (c) separation on the far side of q = 1/3, none on the near side
    far_small = table.row_for(1000, 0.45)
    far_big = table.row_for(100_000, 0.45)
    sep = far_small.p_hat - far_big.p_hat
    sep_sigma = _pooled_sigma(far_small, far_big)
    if sep <= 3.0 * sep_sigma:
        problems.append(f"q=0.45 separation {sep:.4f} <= 3*{sep_sigma:.4f}")
    for n in config.n_list:
        near = table.row_for(n, 0.15)
        base = table.baseline_for(n)
        drift_z = (base.p_hat - near.p_hat) / _pooled_sigma(near, base)
        if abs(drift_z) > 3.0:
            problems.append(
                f"q=0.15 drifted from baseline at n={n} "
                f"({base.p_hat:.4f} -> {near.p_hat:.4f}, {drift_z:+.1f} sigma)")

    if elapsed >= 1800.0:
        problems.append(f"sweep took {elapsed:.0f}s")
    width_text = {n: round(w, 4) for n, w in widths.items()}
    _check(7, "sweep is monotone, steepening, and split across q=1/3",
           not problems,
           f"widths {width_text}, q=0.45 separation {sep / sep_sigma:.1f} sigma, "
           f"sweep {elapsed / 60:.1f} min; problems: {problems or 'none'}")


def test_08_scaling_window_nondegenerate(sweep_result):
    config, table, _ = sweep_result
    counts = {}
    ok = True
    for n in config.n_list:
        base = table.baseline_for(n)
        unsat = base.trials - base.sat_count
        counts[n] = (base.sat_count, unsat)
        ok = ok and base.sat_count >= 5 and unsat >= 5
    _check(8, "critical formulas stay mixed at every n",
           ok, f"(sat, unsat) at alpha=1: {counts}, floor 5 each")


def test_09_branching_process():
    deep = gw_survival(x0=1, gen=100, trials=1_000_000, seed=_SEED)
    scaled = deep.gen * deep.estimate
    one_gen = gw_survival(x0=1, gen=1, trials=100_000, seed=_SEED)
    p_extinct_now = 1.0 - one_gen.estimate
    _check(9, "critical branching survival scales like 2/t",
           1.7 <= scaled <= 2.3 and abs(p_extinct_now - math.exp(-1.0)) <= 0.005,
           f"gen*P(survive)={scaled:.3f} in [1.7, 2.3]; "
           f"P(extinct in one step)={p_extinct_now:.4f} vs 1/e +- 0.005")


def test_10_trajectory_contrast():
    below = run_trajectory_study(TrajectoryConfig(
        n=100_000, q=0.20, trials=2000, master_seed=_SEED, workers=1))
    above = run_trajectory_study(TrajectoryConfig(
        n=100_000, q=0.45, trials=2000, master_seed=_SEED, workers=1))
    p_lo, p_hi = below.clean_extinction_fraction, above.clean_extinction_fraction
    sigma = math.sqrt(p_lo * (1 - p_lo) / below.trials
                      + p_hi * (1 - p_hi) / above.trials)
    gap_ok = (p_lo - p_hi) > 3.0 * max(sigma, 1e-12)
    _check(10, "unit cascade dies cleanly below the cutoff",
           p_lo >= 0.9 and gap_ok,
           f"clean extinction {p_lo:.3f} at q=0.20 (floor 0.9) vs "
           f"{p_hi:.3f} at q=0.45, gap {(p_lo - p_hi) / max(sigma, 1e-12):.1f} sigma")


def test_11_reproducibility_across_workers():
    # The per-trial stream layout makes every experiment's output a pure
    # function of its seed, independent of scheduling, so worker-count
    # invariance is checked at reduced scale for each experiment family.
    diffs = []

    def payload_of(workers, mode, fix_mode):
        table = run_figure2_sweep(SweepConfig(
            n_list=(60,), q_list=(0.2, 0.4), trials=120, master_seed=11,
            mode=mode, fix_mode=fix_mode, workers=workers, audit=False))
        return table_payload(table, "csv")

    for mode, fix_mode in [("plain", "uniform"), ("plain", "canonical"),
                           ("proof-faithful", "uniform")]:
        if payload_of(1, mode, fix_mode) != payload_of(3, mode, fix_mode):
            diffs.append(f"sweep {mode}/{fix_mode}")

    window = [table_payload(run_window_study(
        n_list=(40,), alpha_list=(0.9, 1.1), trials=120, master_seed=12,
        workers=w), "csv") for w in (1, 3)]
    if window[0] != window[1]:
        diffs.append("window")

    traj = [run_trajectory_study(TrajectoryConfig(
        n=80, q=0.3, trials=100, master_seed=13, workers=w)).as_dict()
        for w in (1, 3)]
    if traj[0] != traj[1]:
        diffs.append("trajectory")

    dist = [run_distribution_check(n=50, f=7, m=40, samples=12_000,
                                   master_seed=14, workers=w).as_dict()
            for w in (1, 3)]
    if dist[0] != dist[1]:
        diffs.append("distcheck")

    gw = [gw_survival(x0=1, gen=30, trials=10_000, seed=15) for _ in range(2)]
    if gw[0] != gw[1]:
        diffs.append("gw rerun")

    _check(11, "identical tables for any worker count",
           not diffs, f"six experiment reruns byte-stable; diverged: {diffs or 'none'}")

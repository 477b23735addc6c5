import json
import math
import os

import pytest

from critsat import (
    InvalidSpec,
    SweepConfig,
    TrajectoryConfig,
    emit_plot,
    export_table,
    f_of,
    load_table,
    run_distribution_check,
    run_figure2_sweep,
    run_trajectory_study,
    run_window_study,
)
from critsat.harness import CSV_COLUMNS, SweepRow, SweepTable, table_payload


def small_sweep(**overrides):
    base = dict(
        n_list=(40, 120),
        q_list=(0.15, 0.35),
        trials=150,
        master_seed=77,
        workers=1,
    )
    base.update(overrides)
    return SweepConfig(**base)


@pytest.fixture(scope="module")
def sweep_table():
    return run_figure2_sweep(small_sweep())


class TestFOf:
    def test_values(self):
        assert f_of(1000, 0.0) == 1
        # 1000^(1/3) is exactly 10; the epsilon guard undoes the float dust
        assert f_of(1000, 1 / 3) == 10
        assert f_of(10**4, 1 / 3) == 21
        assert f_of(100000, 0.45) == 177
        assert f_of(8, 1.0) == 8

    def test_cube_root_grid(self):
        for n in (10**3, 10**4, 10**5):
            assert f_of(n, 0.5) == math.floor(math.sqrt(n) + 1e-9)


class TestSweep:
    def test_row_layout(self, sweep_table):
        # per n: one baseline row then the q grid, stable order
        assert [(r.n, r.q) for r in sweep_table.rows] == [
            (40, None), (40, 0.15), (40, 0.35),
            (120, None), (120, 0.15), (120, 0.35),
        ]

    def test_baseline_has_no_fixing(self, sweep_table):
        assert sweep_table.baseline_for(40).f == 0
        assert sweep_table.baseline_for(120).f == 0

    def test_f_matches_q(self, sweep_table):
        for row in sweep_table.rows:
            if row.q is not None:
                assert row.f == f_of(row.n, row.q)

    def test_p_hat_and_stderr(self, sweep_table):
        for row in sweep_table.rows:
            assert row.p_hat == row.sat_count / row.trials
            expected = math.sqrt(row.p_hat * (1 - row.p_hat) / row.trials)
            assert row.stderr == pytest.approx(expected)

    def test_worker_invariance(self, sweep_table):
        again = run_figure2_sweep(small_sweep(workers=5))
        assert again == sweep_table

    def test_seed_changes_results(self, sweep_table):
        other = run_figure2_sweep(small_sweep(master_seed=78))
        assert other != sweep_table

    def test_fixing_hurts_satisfiability(self, sweep_table):
        # more fixed variables cannot help, up to noise; at these sizes the
        # effect is large enough to show up reliably
        for n in (40, 120):
            base = sweep_table.baseline_for(n)
            worst = sweep_table.row_for(n, 0.35)
            assert worst.p_hat <= base.p_hat + 0.05

    def test_canonical_mode_runs(self):
        table = run_figure2_sweep(small_sweep(fix_mode="canonical", n_list=(40,)))
        assert len(table) == 3

    def test_proof_faithful_mode_runs(self):
        table = run_figure2_sweep(
            small_sweep(mode="proof-faithful", n_list=(40,), audit=False)
        )
        assert len(table) == 3

    def test_no_baseline(self):
        table = run_figure2_sweep(small_sweep(include_baseline=False, n_list=(40,)))
        assert [r.q for r in table.rows] == [0.15, 0.35]
        with pytest.raises(KeyError):
            table.baseline_for(40)

    def test_config_validation(self):
        with pytest.raises(InvalidSpec):
            SweepConfig(n_list=())
        with pytest.raises(InvalidSpec):
            SweepConfig(trials=0)
        with pytest.raises(InvalidSpec):
            SweepConfig(mode="fast")
        with pytest.raises(InvalidSpec):
            SweepConfig(q_list=(1.5,))


class TestWindow:
    def test_probability_decreases_in_alpha(self):
        table = run_window_study([150], [0.5, 1.0, 2.0], trials=300, master_seed=1)
        ps = [r.p_hat for r in table.rows]
        assert ps[0] > ps[1] > ps[2]

    def test_rows_keep_alpha(self):
        table = run_window_study([40], [0.7, 1.3], trials=50, master_seed=2)
        assert [r.alpha for r in table.rows] == [0.7, 1.3]
        assert all(r.q is None and r.f == 0 for r in table.rows)

    def test_worker_invariance(self):
        a = run_window_study([60], [0.9, 1.1], trials=200, master_seed=3, workers=1)
        b = run_window_study([60], [0.9, 1.1], trials=200, master_seed=3, workers=4)
        assert a == b


class TestTrajectory:
    def test_histograms_account_for_every_trial(self):
        stats = run_trajectory_study(
            TrajectoryConfig(n=300, q=0.25, trials=200, master_seed=5, workers=2)
        )
        total = (
            sum(stats.contradiction_hist.values())
            + sum(stats.extinction_hist.values())
            + stats.capped
        )
        assert total == 200
        assert stats.capped == 0  # natural termination always reached

    def test_quantiles_ordered(self):
        stats = run_trajectory_study(
            TrajectoryConfig(n=300, q=0.3, trials=150, master_seed=6)
        )
        for lo, mid, hi in zip(stats.q10_m1, stats.q50_m1, stats.q90_m1):
            assert lo <= mid <= hi

    def test_cumulative_fixed_monotone(self):
        stats = run_trajectory_study(
            TrajectoryConfig(n=300, q=0.3, trials=150, master_seed=7)
        )
        series = stats.mean_cumulative_fixed
        assert all(a <= b + 1e-9 for a, b in zip(series, series[1:]))
        assert series[0] >= stats.f

    def test_budgets_attached(self):
        stats = run_trajectory_study(
            TrajectoryConfig(n=1000, q=0.2, trials=50, master_seed=8)
        )
        assert stats.budget_over == math.floor(1000 ** 0.6 * math.log(1000))
        assert stats.budget_under == 0  # floors to zero at this scale

    def test_worker_invariance(self):
        a = run_trajectory_study(
            TrajectoryConfig(n=200, q=0.3, trials=120, master_seed=9, workers=1)
        )
        b = run_trajectory_study(
            TrajectoryConfig(n=200, q=0.3, trials=120, master_seed=9, workers=3)
        )
        assert a.as_dict() == b.as_dict()

    def test_round_cap(self):
        stats = run_trajectory_study(
            TrajectoryConfig(n=300, q=0.3, trials=100, master_seed=10, round_cap=1)
        )
        assert stats.max_rounds <= 1


class TestDistributionCheck:
    def test_passes_at_moderate_size(self):
        report = run_distribution_check(50, 5, 50, samples=20000, master_seed=4)
        assert report.passed
        assert report.means_ok and report.chisq_ok

    def test_category_bookkeeping(self):
        report = run_distribution_check(50, 5, 50, samples=5000, master_seed=4)
        total_mean = sum(c.observed_mean for c in report.categories)
        assert total_mean == pytest.approx(50.0)
        for c in report.categories:
            assert c.expected_mean == pytest.approx(50 * c.probability)

    def test_no_fixing_degenerate(self):
        report = run_distribution_check(50, 0, 30, samples=500, master_seed=1)
        assert report.passed
        assert report.chisq_pvalue == 1.0
        untouched = report.categories[2]
        assert untouched.observed_mean == 30.0

    def test_full_fixing(self):
        report = run_distribution_check(20, 20, 40, samples=20000, master_seed=2)
        assert report.categories[1].observed_mean == 0.0  # no unit clauses
        assert report.categories[2].observed_mean == 0.0
        assert report.passed

    def test_worker_invariance(self):
        a = run_distribution_check(60, 6, 60, samples=9000, master_seed=3, workers=1)
        b = run_distribution_check(60, 6, 60, samples=9000, master_seed=3, workers=5)
        assert a == b

    def test_as_dict_serializable(self):
        report = run_distribution_check(30, 3, 30, samples=1000, master_seed=5)
        json.dumps(report.as_dict())


class TestTableIO:
    def test_csv_roundtrip(self, sweep_table, tmp_path):
        path = str(tmp_path / "table.csv")
        export_table(sweep_table, path)
        assert load_table(path) == sweep_table

    def test_json_roundtrip(self, sweep_table, tmp_path):
        path = str(tmp_path / "table.json")
        export_table(sweep_table, path)
        assert load_table(path) == sweep_table

    def test_csv_header_exact(self, sweep_table, tmp_path):
        path = str(tmp_path / "table.csv")
        export_table(sweep_table, path)
        with open(path) as fh:
            header = fh.readline().strip()
        assert header == ",".join(CSV_COLUMNS)

    def test_baseline_q_blank_in_csv(self, sweep_table, tmp_path):
        path = str(tmp_path / "table.csv")
        export_table(sweep_table, path)
        with open(path) as fh:
            first_row = fh.readlines()[1].split(",")
        assert first_row[3] == ""  # q column empty for the baseline

    def test_unknown_extension_needs_fmt(self, sweep_table, tmp_path):
        with pytest.raises(InvalidSpec):
            export_table(sweep_table, str(tmp_path / "table.txt"))
        export_table(sweep_table, str(tmp_path / "table.txt"), fmt="csv")

    def test_payload_deterministic(self, sweep_table):
        assert table_payload(sweep_table, "csv") == table_payload(sweep_table, "csv")

    def test_load_rejects_foreign_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(InvalidSpec):
            load_table(str(path))

    def test_atomic_write_leaves_no_temp_files(self, sweep_table, tmp_path):
        path = str(tmp_path / "table.csv")
        export_table(sweep_table, path)
        assert os.listdir(tmp_path) == ["table.csv"]


class TestEmitPlot:
    def test_svg_written(self, sweep_table, tmp_path):
        path = str(tmp_path / "plot.svg")
        emit_plot(sweep_table, path)
        text = open(path).read()
        assert text.startswith("<svg")
        assert "q = 1/3" in text
        assert text.count("<polyline") == 2  # one curve per n

    def test_deterministic(self, sweep_table, tmp_path):
        a, b = str(tmp_path / "a.svg"), str(tmp_path / "b.svg")
        emit_plot(sweep_table, a)
        emit_plot(sweep_table, b)
        assert open(a).read() == open(b).read()

    def test_empty_table_rejected(self, tmp_path):
        bare = SweepTable(
            (
                SweepRow(
                    experiment_id="x", n=10, alpha=1.0, q=None, f=0,
                    trials=10, sat_count=5, seed=0,
                ),
            )
        )
        with pytest.raises(InvalidSpec):
            emit_plot(bare, str(tmp_path / "no.svg"))

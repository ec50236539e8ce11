import io

import pytest

from tournkit import (
    MAX,
    ExperimentConfig,
    ModelSpec,
    ResultRow,
    cell_seed,
    probability_matrix,
    read_csv,
    run_cell,
    run_grid,
    write_csv,
)
from tournkit.errors import InvalidConfig, IoFailure


def condorcet_matrix(n, p):
    return probability_matrix(ModelSpec("condorcet", p=p), n)


class TestRunCell:
    def test_degenerate_p0(self):
        m = condorcet_matrix(10, 0.0)
        for k in (2, 3, MAX):
            row = run_cell(m, k, 50, 123, model_label="condorcet", p_label=0.0)
            assert row.avg_pct == 100.0 / 10
            assert row.all_pct == 0.0
            assert row.stderr_pct == 0.0

    def test_determinism(self):
        m = condorcet_matrix(8, 0.3)
        a = run_cell(m, 2, 200, 9, model_label="condorcet", p_label=0.3)
        b = run_cell(m, 2, 200, 9, model_label="condorcet", p_label=0.3)
        assert a == b

    def test_seed_changes_results(self):
        m = condorcet_matrix(8, 0.3)
        a = run_cell(m, 2, 200, 9)
        b = run_cell(m, 2, 200, 10)
        assert a.avg_pct != b.avg_pct

    def test_king_fraction_bounds(self):
        m = condorcet_matrix(12, 0.2)
        row = run_cell(m, 3, 100, 5)
        assert 100.0 / 12 <= row.avg_pct <= 100.0
        assert 0.0 <= row.all_pct <= 100.0

    def test_monotone_in_k_same_seeds(self):
        m = condorcet_matrix(9, 0.15)
        rows = [run_cell(m, k, 150, 31) for k in (2, 3, 4, 8)]
        for earlier, later in zip(rows, rows[1:]):
            assert earlier.avg_pct <= later.avg_pct
            assert earlier.all_pct <= later.all_pct

    def test_all_pct_100_forces_avg_100(self):
        m = condorcet_matrix(6, 0.5)
        row = run_cell(m, MAX, 60, 2)
        if row.all_pct == 100.0:
            assert row.avg_pct == 100.0

    def test_invalid_trials(self):
        with pytest.raises(InvalidConfig):
            run_cell(condorcet_matrix(5, 0.2), 2, 0, 1)


class TestCellSeed:
    def test_stable(self):
        assert cell_seed(1, 10, 0.02, 0) == cell_seed(1, 10, 0.02, 0)

    def test_sensitive_to_fields(self):
        base = cell_seed(1, 10, 0.02, 0)
        assert cell_seed(2, 10, 0.02, 0) != base
        assert cell_seed(1, 11, 0.02, 0) != base
        assert cell_seed(1, 10, 0.04, 0) != base
        assert cell_seed(1, 10, 0.02, 3) != base


def small_config(**overrides):
    defaults = dict(
        model=ModelSpec("condorcet", p=0.0),
        p_values=[0.0, 0.5],
        n_values=[6],
        k_values=[2],
        trials=20,
        master_seed=77,
    )
    defaults.update(overrides)
    return ExperimentConfig(**defaults)


class TestRunGrid:
    def test_row_order_and_count(self):
        config = small_config(n_values=[6, 8], k_values=[2, 3])
        rows = run_grid(config)
        assert len(rows) == 8
        assert [(r.n, r.p, r.k) for r in rows] == [
            (6, 0.0, 2), (6, 0.0, 3), (6, 0.5, 2), (6, 0.5, 3),
            (8, 0.0, 2), (8, 0.0, 3), (8, 0.5, 2), (8, 0.5, 3),
        ]

    def test_deterministic_across_runs(self):
        config = small_config()
        assert run_grid(config) == run_grid(config)

    def test_workers_do_not_change_rows(self):
        config = small_config(n_values=[6, 8], k_values=[2, 3], trials=30)
        assert run_grid(config, workers=1) == run_grid(config, workers=3)

    def test_shared_mode_reuses_tournaments(self):
        """Default mode: same (n, p) cell seeds across k, so the monotone
        inclusion is exact."""
        config = small_config(p_values=[0.3], k_values=[2, 3, 4], trials=40)
        rows = run_grid(config)
        assert rows[0].seed == rows[1].seed == rows[2].seed
        assert rows[0].avg_pct <= rows[1].avg_pct <= rows[2].avg_pct
        assert rows[0].all_pct <= rows[1].all_pct <= rows[2].all_pct

    def test_fresh_per_k_changes_seeds(self):
        config = small_config(p_values=[0.3], k_values=[2, 3], fresh_per_k=True)
        rows = run_grid(config)
        assert rows[0].seed != rows[1].seed

    def test_validation(self):
        with pytest.raises(InvalidConfig):
            run_grid(small_config(trials=0))
        with pytest.raises(InvalidConfig):
            run_grid(small_config(k_values=[1]))
        with pytest.raises(InvalidConfig):
            run_grid(small_config(p_values=[0.7]))
        with pytest.raises(InvalidConfig):
            run_grid(small_config(n_values=[]))
        with pytest.raises(InvalidConfig):
            run_grid(small_config(metrics=("median",)))

    def test_uniform_model_p_fixed(self):
        config = small_config(model=ModelSpec("uniform"), p_values=[0.5])
        rows = run_grid(config)
        assert rows[0].model == "uniform"
        with pytest.raises(InvalidConfig):
            run_grid(small_config(model=ModelSpec("uniform"), p_values=[0.2]))


class TestCsv:
    def example_row(self):
        return ResultRow(
            model="condorcet", n=10, p=0.5, k=2, trials=10000, seed=42,
            avg_pct=72.41333333, all_pct=7.98, stderr_pct=0.151234567,
        )

    def test_empty_rows_header_only(self):
        buf = io.StringIO()
        write_csv([], buf)
        assert buf.getvalue() == "model,n,p,k,trials,seed,avg_pct,all_pct,stderr_pct\n"

    def test_single_row_layout(self):
        buf = io.StringIO()
        write_csv([self.example_row()], buf)
        lines = buf.getvalue().splitlines()
        assert lines[1] == "condorcet,10,0.500000,2,10000,42,72.4133,7.9800,0.1512"

    def test_max_token(self):
        row = ResultRow("uniform", 8, 0.5, MAX, 5, 1, 12.5, 0.0, 1.0)
        buf = io.StringIO()
        write_csv([row], buf)
        assert ",max," in buf.getvalue().splitlines()[1]
        parsed = read_csv(io.StringIO(buf.getvalue()))
        assert parsed[0].k is MAX

    def test_round_trip_is_stable(self):
        buf = io.StringIO()
        write_csv([self.example_row()], buf)
        first = buf.getvalue()
        parsed = read_csv(io.StringIO(first))
        buf2 = io.StringIO()
        write_csv(parsed, buf2)
        assert buf2.getvalue() == first
        assert parsed[0].avg_pct == 72.4133  # the printed value

    def test_file_write_and_read(self, tmp_path):
        path = tmp_path / "rows.csv"
        rows = run_grid(small_config())
        write_csv(rows, str(path))
        parsed = read_csv(str(path))
        assert len(parsed) == len(rows)
        assert path.read_text().endswith("\n")

    def test_bad_header_rejected(self):
        with pytest.raises(IoFailure):
            read_csv(io.StringIO("nope\n"))

    def test_unwritable_path(self):
        with pytest.raises(IoFailure):
            write_csv([], "/nonexistent-dir/rows.csv")

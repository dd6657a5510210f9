"""The benchmark harness: built-in tables, scenario runs, report rendering."""

import csv
import io
import json

import pytest

from vgpricer.bench import (
    BUILTIN_TABLES,
    CSV_HEADER,
    BenchReport,
    RowResult,
    ScenarioRow,
    builtin_table_rows,
    emit_report,
    np_seed_for_row,
    run_builtin_table,
    run_scenarios,
)

FAST = ("cgz", "mixture")


# ---------------------------------------------------------------------------
# built-in tables


def test_builtin_tables_inventory():
    sizes = {tid: len(rows.maturities) for tid, rows in BUILTIN_TABLES.items()}
    assert sizes == {"T1": 5, "T2": 5, "T3": 5, "T4": 5, "T5": 6, "T6": 8}
    for tb in BUILTIN_TABLES.values():
        assert len(tb.maturities) == len(tb.expected)
        assert all(a < b for a, b in zip(tb.maturities, tb.maturities[1:]))


def test_builtin_table_rows_carry_expected_prices():
    rows = builtin_table_rows("T1")
    assert [r.maturity for r in rows] == [0.2, 0.4, 0.6, 0.8, 1.0]
    assert rows[0].expected == 2.0107
    assert rows[0].spot == 18.0 and rows[0].strike == 20.0
    assert rows[0].sigma == 0.1 and rows[0].nu == 0.2
    t5 = builtin_table_rows("T5")
    assert t5[0].spot == 50.0 and t5[0].strike == 35.0
    assert t5[0].sigma == 0.2 and t5[0].nu == 0.25


def test_unknown_table_id():
    with pytest.raises(KeyError):
        builtin_table_rows("T9")


def test_run_builtin_table_prices_match_references():
    report = run_builtin_table("T1", methods=FAST)
    assert report.error_count == 0
    assert len(report.rows) == 5
    for r in report.rows:
        assert r.expected_dev() <= 5e-4
        assert r.max_pairwise_diff() <= 1e-7


# ---------------------------------------------------------------------------
# scenario rows and error capture


def test_scenario_row_validates_methods():
    with pytest.raises(ValueError):
        ScenarioRow("X", 0.5, 18.0, 20.0, 0.1, 0.2, methods=())
    with pytest.raises(ValueError):
        ScenarioRow("X", 0.5, 18.0, 20.0, 0.1, 0.2, methods=("cgz", "magic"))


def test_invalid_row_is_reported_not_raised():
    rows = [
        ScenarioRow("ok", 0.5, 18.0, 20.0, 0.1, 0.2, methods=FAST),
        ScenarioRow("bad", 0.5, 18.0, 20.0, 0.0, 0.2, methods=FAST),  # sigma = 0
    ]
    report = run_scenarios(rows)
    assert len(report.rows) == 2
    assert not report.rows[0].errors and report.rows[0].quotes
    assert report.rows[1].errors.get("*", "").startswith("ValueError")
    assert not report.rows[1].quotes
    assert report.error_count == 1


def test_per_method_failure_leaves_other_methods_alive():
    # t/nu = 100 exceeds the closed-form level cap; the mixture
    # integral has no such ceiling
    rows = [ScenarioRow("deep", 20.0, 18.0, 20.0, 0.1, 0.2, methods=FAST)]
    report = run_scenarios(rows)
    r = report.rows[0]
    assert "cgz" in r.errors and "ValueError" in r.errors["cgz"]
    assert "mixture" in r.quotes


def test_row_seeds_are_stable_and_distinct():
    assert np_seed_for_row(7, 0) == np_seed_for_row(7, 0)
    seeds = {np_seed_for_row(7, i) for i in range(64)}
    assert len(seeds) == 64
    assert np_seed_for_row(7, 0) != np_seed_for_row(8, 0)


def test_mc_rows_reproduce_for_a_fixed_seed():
    rows = builtin_table_rows("T1", methods=("mc",))[:2]
    a = run_scenarios(rows, seed=7, mc_paths=20_000)
    b = run_scenarios(rows, seed=7, mc_paths=20_000)
    c = run_scenarios(rows, seed=9, mc_paths=20_000)
    av = [r.quotes["mc"].value for r in a.rows]
    bv = [r.quotes["mc"].value for r in b.rows]
    cv = [r.quotes["mc"].value for r in c.rows]
    assert av == bv
    assert av != cv
    assert av[0] != av[1]  # rows use distinct substreams


def test_repetitions_report_median_timing():
    rows = builtin_table_rows("T1", methods=("cgz",))[:1]
    report = run_scenarios(rows, repetitions=3)
    q = report.rows[0].quotes["cgz"]
    assert q.elapsed > 0.0
    with pytest.raises(ValueError):
        run_scenarios(rows, repetitions=0)


# ---------------------------------------------------------------------------
# rendering


def _small_report() -> BenchReport:
    return run_builtin_table("T3", methods=FAST)


def test_csv_layout():
    text = emit_report(_small_report(), "csv")
    lines = text.strip().split("\n")
    assert lines[0] == CSV_HEADER
    assert len(lines) == 1 + 5 * len(FAST)  # one line per (row, method)
    reader = csv.DictReader(io.StringIO(text))
    for rec in reader:
        assert rec["table"] == "T3"
        assert float(rec["S"]) == 22.0
        assert rec["method"] in FAST
        assert float(rec["abs_diff"]) <= 5e-4
        assert int(rec["elapsed_ns"]) >= 0


def test_csv_error_rows_have_empty_price_cells():
    rows = [ScenarioRow("bad", 0.5, 18.0, 20.0, 0.0, 0.2, methods=("cgz",))]
    text = emit_report(run_scenarios(rows), "csv")
    lines = text.strip().split("\n")
    assert len(lines) == 2
    rec = next(csv.DictReader(io.StringIO(text)))
    assert rec["price"] == "" and rec["abs_diff"] == "" and rec["elapsed_ns"] == ""


def test_csv_is_deterministic_up_to_timing():
    def strip_elapsed(text: str) -> list[str]:
        return [line.rsplit(",", 1)[0] for line in text.strip().split("\n")]

    a = emit_report(run_builtin_table("T5", methods=("cgz",)), "csv")
    b = emit_report(run_builtin_table("T5", methods=("cgz",)), "csv")
    assert strip_elapsed(a) == strip_elapsed(b)


def test_empty_report_renders_headers_only():
    assert emit_report(BenchReport(rows=[]), "csv") == CSV_HEADER + "\n"
    json.loads(emit_report(BenchReport(rows=[]), "json"))


def test_json_round_trips_the_report_dict():
    report = _small_report()
    parsed = json.loads(emit_report(report, "json"))
    assert parsed == json.loads(json.dumps(report.to_dict()))
    assert parsed["summary"]["rows"] == 5
    assert parsed["summary"]["errors"] == 0
    assert parsed["summary"]["max_expected_dev"] <= 5e-4
    first = parsed["rows"][0]
    assert first["scenario"]["table"] == "T3"
    assert set(first["quotes"]) == set(FAST)


def test_text_rendering_mentions_rows_and_summary():
    text = emit_report(_small_report(), "text")
    assert "T3" in text
    assert "max deviation from expected" in text
    assert "cgz" in text and "mixture" in text


def test_text_rendering_marks_errors():
    rows = [ScenarioRow("bad", 0.5, 18.0, 20.0, 0.0, 0.2, methods=("cgz",))]
    text = emit_report(run_scenarios(rows), "text")
    assert "ERROR" in text
    assert "errors: 1" in text


def test_unknown_format_rejected():
    with pytest.raises(ValueError):
        emit_report(_small_report(), "yaml")


def test_row_result_aggregates():
    r = RowResult(scenario=ScenarioRow("x", 0.5, 18.0, 20.0, 0.1, 0.2))
    assert r.max_pairwise_diff() is None
    assert r.expected_dev() is None

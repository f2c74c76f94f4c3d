import math

import pytest

from flipred import kernel
from flipred.bench import (
    MAX_LENGTH,
    BenchCell,
    BenchRecord,
    compare_kernels,
    default_edges,
    fit_exponent,
    make_cells,
    render_table,
    run_bench,
    run_cell,
    summarize,
)
from flipred.triangulation import Setting


def test_fit_exponent_recovers_power_law():
    lengths = [100, 200, 400, 800]
    assert fit_exponent(lengths, [3e-6 * f**3 for f in lengths]) == pytest.approx(3.0)
    assert fit_exponent(lengths, [0.5 * f for f in lengths]) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        fit_exponent([100, 100], [1.0, 2.0])


def test_default_edges_leave_room():
    assert default_edges("convex", 2000, 1.1) == 4 * 1818 + 16
    assert default_edges("geometric", 100, 10) == 3 * 10 + 64
    assert default_edges("convex", 5, 5.0) == 64


def test_record_line_round_trip():
    rec = run_cell(BenchCell(Setting.CONVEX, 60, 2.0, 1))
    assert rec.status == "ok"
    assert rec.length == 60
    assert rec.final == rec.length - rec.gain
    assert BenchRecord.parse(rec.line()) == BenchRecord.parse(BenchRecord.parse(rec.line()).line())
    assert f"seed={rec.seed}" in rec.line()


def test_cells_are_reproducible():
    cells = make_cells(["convex", "combinatorial"], [50], [2.0], [0, 1])
    assert len(cells) == 4
    a = run_bench(cells)
    b = run_bench(cells, jobs=2)
    assert [(r.final, r.r_measured) for r in a] == [(r.final, r.r_measured) for r in b]


def test_oversized_cell_is_skipped():
    rec = run_cell(BenchCell(Setting.CONVEX, MAX_LENGTH + 1, 2.0, 0))
    assert rec.status == "skipped"
    table = render_table([rec])
    assert "1 cells skipped" in table


def test_summary_and_table():
    recs = run_bench(make_cells(["convex"], [40, 80], [2.0], [0, 1, 2]))
    rows = summarize(recs)
    assert [(s.length, s.runs) for s in rows] == [(40, 3), (80, 3)]
    assert rows[0].estimate_percent == pytest.approx(50.0)
    table = render_table(recs)
    assert "f(1-1/r) %" in table
    assert "48" in table  # reference column for r = 2


@pytest.mark.skipif(not kernel.compiled_available(), reason="compiled kernel not built")
def test_compare_kernels_agree():
    res = compare_kernels(make_cells(["convex"], [200], [2.0], [0]))
    assert res[0].identical
    assert res[0].speedup > 0
    assert not math.isnan(res[0].speedup)
    assert "identical=true" in res[0].line()

import math

import pytest

from parrondoq.engine import PayoffConvention
from parrondoq.figures import (CSV_HEADER, FIGURES, GRID_POINTS, SweepSetup,
                               figure_csv, figure_rows, rows_to_csv,
                               sweep_rows)

PI = math.pi


def small_setup(**overrides):
    base = dict(sequence="AAB", var="p", start=0.0, stop=1.0, count=3,
                channels=("ad", "none"), eps=1 / 168, delta=PI / 5,
                betas=(PI / 2, PI / 2, PI / 4, PI / 3))
    base.update(overrides)
    return SweepSetup(**base)


def test_sweep_setup_validation():
    with pytest.raises(ValueError):
        small_setup(var="theta")
    with pytest.raises(ValueError):
        small_setup(count=0)
    with pytest.raises(ValueError):
        small_setup(channels=("bad",))
    with pytest.raises(ValueError):
        small_setup(channels=())


def test_sweep_rows_order_grid_major():
    rows = sweep_rows(small_setup())
    assert len(rows) == 6
    assert [(r[1], r[2]) for r in rows] == [
        (0.0, "ad"), (0.0, "none"), (0.5, "ad"), (0.5, "none"),
        (1.0, "ad"), (1.0, "none")]
    assert all(r[0] == "p" for r in rows)


def test_sweep_none_channel_ignores_p():
    rows = sweep_rows(small_setup())
    none_payoffs = [r[3] for r in rows if r[2] == "none"]
    assert none_payoffs[0] == none_payoffs[1] == none_payoffs[2]
    ad_payoffs = [r[3] for r in rows if r[2] == "ad"]
    assert ad_payoffs[0] != ad_payoffs[2]


def test_sweep_beta_var_overrides_slot():
    # sweeping beta4 over a 2-point grid must change the payoff
    rows = sweep_rows(small_setup(var="beta4", start=0.0, stop=PI, count=2,
                                  channels=("pd",), p=0.5))
    assert rows[0][3] != rows[1][3]


def test_sweep_jobs_do_not_change_result():
    setup = small_setup()
    assert sweep_rows(setup, jobs=1) == sweep_rows(setup, jobs=4)


def test_jobs_env_override(monkeypatch):
    monkeypatch.setenv("PARRONDOQ_JOBS", "2")
    assert sweep_rows(small_setup()) == sweep_rows(small_setup(), jobs=1)
    monkeypatch.setenv("PARRONDOQ_JOBS", "0")
    with pytest.raises(ValueError):
        sweep_rows(small_setup())


def test_rows_to_csv_format():
    text = rows_to_csv([("p", 0.5, "ad", -0.012345678901234),
                        ("p", -0.0, "none", 1e-17)])
    lines = text.splitlines()
    assert lines[0] == CSV_HEADER
    assert lines[1] == "p,0.5,ad,-0.0123456789012"
    assert lines[2].startswith("p,0,none,")     # -0.0 normalized
    assert text.endswith("\n")


def test_figure_presets_cover_expected_setups():
    assert set(FIGURES) == {1, 2, 3, 4, 5, 6, 8, 9}
    assert FIGURES[1].var == "p" and FIGURES[1].sequence == "AAB"
    assert FIGURES[2].var == "delta"
    for n in (3, 4, 5, 6):
        assert FIGURES[n].var == f"beta{n - 2}"
    assert FIGURES[8].sequence == "BB" and FIGURES[9].sequence == "BBB"
    for n in (8, 9):
        assert FIGURES[n].assignment == "canonical"
        assert FIGURES[n].convention == PayoffConvention("all", "per_qubit")
        assert FIGURES[n].eps == pytest.approx(1 / 112)


def test_figure_rows_shapes():
    rows = figure_rows(7)
    assert len(rows) == GRID_POINTS * 4
    labels = {r[2] for r in rows}
    assert labels == {"ad:eps=1/168", "dp:eps=1/168",
                      "ad:eps=1/112", "dp:eps=1/112"}
    with pytest.raises(ValueError):
        figure_rows(10)
    with pytest.raises(ValueError):
        figure_rows(0)


def test_figure_csv_deterministic_and_anchored():
    text1 = figure_csv(1)
    text2 = figure_csv(1)
    assert text1 == text2
    lines = text1.splitlines()
    assert len(lines) == 1 + GRID_POINTS * 4
    # first grid point, amplitude damping: frozen reference value
    assert lines[1] == "p,0,ad,-0.0227287919225"
    # all four channels agree at p=0
    first = {line.split(",")[3] for line in lines[1:5]}
    assert len(first) == 1


def test_figure7_matches_series_form():
    rows = figure_rows(7)
    from parrondoq import oracle
    for var, value, label, payoff in rows[:8]:
        kind = label.split(":")[0]
        eps = 1 / 168 if label.endswith("1/168") else 1 / 112
        assert payoff == oracle.series_aab(kind, value, eps)

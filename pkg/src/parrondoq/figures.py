"""Parameter sweeps and the preset figure set, rendered as CSV text.

A sweep varies one quantity (decoherence strength, a bias offset, or a phase
angle) over a uniform grid, recalibrating the coins at every point, and
reports one payoff per (grid value, channel) pair. Rows are ordered
grid-major, channel-minor. Presets 1-9 pin the parameter choices for the
standard plots; preset 7 evaluates the repeated-sequence closed forms
instead of simulating.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import oracle
from .coins import calibrate_classical, max_payoff_phases
from .engine import DEFAULT_CONVENTION, PayoffConvention, play
from .noise import KINDS, NoiseSpec

SWEEP_VARS = ("p", "eps", "delta", "beta1", "beta2", "beta3", "beta4")
CSV_HEADER = "sweep_var,value,channel,payoff"
_PI = math.pi


@dataclass(frozen=True)
class SweepSetup:
    """One sweep: the varied quantity, its grid, and the fixed game knobs."""
    sequence: str
    var: str
    start: float
    stop: float
    count: int
    channels: tuple = ("none",)
    p: float = 0.0
    eps: float = 0.0
    gamma: float = 0.0
    delta: float = 0.0
    alphas: tuple = (0.0, 0.0, 0.0, 0.0)
    betas: tuple = (0.0, 0.0, 0.0, 0.0)
    max_phases: bool = False       # re-derive betas from delta at each point
    assignment: str = "printed"
    convention: PayoffConvention = DEFAULT_CONVENTION

    def __post_init__(self):
        if self.var not in SWEEP_VARS:
            raise ValueError(f"unknown sweep variable {self.var!r}")
        if self.count < 1:
            raise ValueError("grid needs at least one point")
        for ch in self.channels:
            if ch not in KINDS:
                raise ValueError(f"unknown channel {ch!r}")
        if not self.channels:
            raise ValueError("need at least one channel")


def _resolve_jobs(jobs: int | None) -> int | None:
    """Explicit argument beats the PARRONDOQ_JOBS variable beats the pool
    default."""
    if jobs is None:
        env = os.environ.get("PARRONDOQ_JOBS", "").strip()
        if env:
            jobs = int(env)
    if jobs is not None and jobs < 1:
        raise ValueError("jobs must be a positive integer")
    return jobs


def _point_payoff(setup: SweepSetup, value: float, channel: str) -> float:
    p, eps, delta = setup.p, setup.eps, setup.delta
    betas = list(setup.betas)
    if setup.var == "p":
        p = value
    elif setup.var == "eps":
        eps = value
    elif setup.var == "delta":
        delta = value
    else:
        betas[int(setup.var[-1]) - 1] = value
    if setup.max_phases:
        betas = max_payoff_phases(delta)
    cfg = calibrate_classical(eps, gamma=setup.gamma, delta=delta,
                              alphas=setup.alphas, betas=tuple(betas),
                              assignment=setup.assignment)
    spec = NoiseSpec("none", 0.0) if channel == "none" else NoiseSpec(channel, p)
    return play(setup.sequence, cfg, spec, setup.convention).payoff


def sweep_rows(setup: SweepSetup, jobs: int | None = None) -> list:
    """Evaluate a sweep; returns (var, value, channel, payoff) tuples."""
    grid = np.linspace(setup.start, setup.stop, setup.count)
    tasks = [(float(v), ch) for v in grid for ch in setup.channels]
    with ThreadPoolExecutor(max_workers=_resolve_jobs(jobs)) as pool:
        payoffs = list(pool.map(
            lambda t: _point_payoff(setup, t[0], t[1]), tasks))
    return [(setup.var, value, channel, payoff)
            for (value, channel), payoff in zip(tasks, payoffs)]


def _csv_num(x: float) -> str:
    return f"{x + 0.0:.12g}"        # + 0.0 folds -0.0 into 0


def rows_to_csv(rows) -> str:
    lines = [CSV_HEADER]
    for var, value, channel, payoff in rows:
        lines.append(f"{var},{_csv_num(value)},{channel},{_csv_num(payoff)}")
    return "\n".join(lines) + "\n"


GRID_POINTS = 51
_AAB_CHANNELS = ("ad", "dp", "pd", "none")
_CHAIN_CONVENTION = PayoffConvention("all", "per_qubit")

#: Presets 1-6 sweep a single AAB round (raw score sum, as the single-round
#: closed forms report it); 8-9 sweep B chains under the per-qubit
#: convention with the reversed probability order, phases at the
#: payoff-maximizing choice. A 0.0 in a swept beta slot is a placeholder.
FIGURES = {
    1: SweepSetup("AAB", "p", 0.0, 1.0, GRID_POINTS, _AAB_CHANNELS,
                  eps=1 / 168, delta=_PI / 5,
                  betas=(_PI / 2, _PI / 2, _PI / 4, _PI / 3)),
    2: SweepSetup("AAB", "delta", 0.0, 2 * _PI, GRID_POINTS, _AAB_CHANNELS,
                  p=0.5, eps=1 / 168,
                  betas=(_PI / 2, _PI / 3, _PI / 4, _PI / 3)),
    3: SweepSetup("AAB", "beta1", 0.0, 2 * _PI, GRID_POINTS, _AAB_CHANNELS,
                  p=0.5, eps=1 / 168, delta=_PI / 2,
                  betas=(0.0, _PI / 3, _PI / 2, _PI)),
    4: SweepSetup("AAB", "beta2", 0.0, 2 * _PI, GRID_POINTS, _AAB_CHANNELS,
                  p=0.5, eps=1 / 168, delta=_PI,
                  betas=(_PI / 2, 0.0, _PI, _PI / 2)),
    5: SweepSetup("AAB", "beta3", 0.0, 2 * _PI, GRID_POINTS, _AAB_CHANNELS,
                  p=0.5, eps=1 / 168, delta=_PI / 2,
                  betas=(2 * _PI, _PI / 6, 0.0, _PI)),
    6: SweepSetup("AAB", "beta4", 0.0, 2 * _PI, GRID_POINTS, _AAB_CHANNELS,
                  p=0.5, eps=1 / 168, delta=_PI / 2,
                  betas=(_PI / 4, _PI / 4, _PI / 4, 0.0)),
    8: SweepSetup("BB", "p", 0.0, 1.0, GRID_POINTS, ("ad", "dp"),
                  eps=1 / 112, max_phases=True, assignment="canonical",
                  convention=_CHAIN_CONVENTION),
    9: SweepSetup("BBB", "p", 0.0, 1.0, GRID_POINTS, ("ad", "dp"),
                  eps=1 / 112, max_phases=True, assignment="canonical",
                  convention=_CHAIN_CONVENTION),
}

#: Preset 7: repeated-AAB closed-form payoff vs p at two bias offsets.
_SERIES_PRESET = (("ad", 1 / 168, "ad:eps=1/168"),
                  ("dp", 1 / 168, "dp:eps=1/168"),
                  ("ad", 1 / 112, "ad:eps=1/112"),
                  ("dp", 1 / 112, "dp:eps=1/112"))


def figure_rows(number: int, jobs: int | None = None) -> list:
    if number == 7:
        grid = np.linspace(0.0, 1.0, GRID_POINTS)
        return [("p", float(v), label, oracle.series_aab(kind, float(v), eps))
                for v in grid for kind, eps, label in _SERIES_PRESET]
    try:
        setup = FIGURES[number]
    except KeyError:
        raise ValueError("figure number must be 1..9") from None
    return sweep_rows(setup, jobs)


def figure_csv(number: int, jobs: int | None = None) -> str:
    """CSV text for one preset; deterministic for a given number."""
    return rows_to_csv(figure_rows(number, jobs))

"""Game pipeline: entangled initial state -> channel -> unitary -> payoff.

The register starts in the n-qubit GHZ state. Decoherence acts once, before
any game is played. A basis state's score is the sum of +1 per |1> (win) and
-1 per |0> (loss) over the counted qubits; the payoff is the score expectation
over the final diagonal, under a configurable counting convention.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import oracle
from .coins import (GameConfig, SequencePlan, build_unitary,
                    calibrate_classical, max_payoff_phases, parse_sequence)
from .linalg import MAX_DIM, SizeLimitError
from .noise import NoiseSpec, apply_channel

MASKS = ("all", "results")
NORMALIZATIONS = ("total", "per_game", "per_qubit")


@dataclass(frozen=True)
class PayoffConvention:
    """Which qubits count and how the score sum is normalized.

    mask: "all" counts every register qubit (seeds included), "results"
    counts only game-result qubits. normalization: "total" leaves the raw
    sum, "per_game" divides by the number of games, "per_qubit" divides by
    the register size.
    """
    mask: str = "all"
    normalization: str = "total"

    def __post_init__(self):
        if self.mask not in MASKS:
            raise ValueError(f"unknown mask {self.mask!r}")
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f"unknown normalization {self.normalization!r}")

    @property
    def name(self) -> str:
        return f"{self.mask}-{self.normalization.replace('_', '')}"


DEFAULT_CONVENTION = PayoffConvention("all", "total")

#: CLI/config names for explicit conventions.
CONVENTION_NAMES = {
    "all-total": PayoffConvention("all", "total"),
    "all-pergame": PayoffConvention("all", "per_game"),
    "all-perqubit": PayoffConvention("all", "per_qubit"),
    "results-total": PayoffConvention("results", "total"),
    "results-pergame": PayoffConvention("results", "per_game"),
    "results-perqubit": PayoffConvention("results", "per_qubit"),
}


@dataclass(frozen=True)
class PayoffReport:
    payoff: float
    per_qubit: tuple[float, ...]   # +-1 expectation of every register qubit
    diagonal: tuple[float, ...]


class CalibrationError(Exception):
    """No counting convention reproduces the chain reference values.

    ``residuals`` maps candidate name -> {"seq:channel": max residual}.
    """

    def __init__(self, message: str, residuals: dict):
        super().__init__(message)
        self.residuals = residuals


@dataclass(frozen=True)
class ConventionFinding:
    """Result of the extended convention search."""
    convention: PayoffConvention
    assignment: str                # which probability-list order B's coins use
    residuals: dict                # candidate name -> row -> max residual
    anchor_rows: tuple[str, ...]   # rows the search matched on


def make_initial_state(n_qubits: int) -> np.ndarray:
    """GHZ density matrix: 1/2 at the four corners, 0 elsewhere."""
    if n_qubits < 1:
        raise ValueError("need at least one qubit")
    dim = 2 ** n_qubits
    if dim > MAX_DIM:
        raise SizeLimitError(f"register of {n_qubits} qubits exceeds limit")
    rho = np.zeros((dim, dim), dtype=np.complex128)
    for i in (0, dim - 1):
        for j in (0, dim - 1):
            rho[i, j] = 0.5
    return rho


def evolve(rho: np.ndarray, u: np.ndarray) -> np.ndarray:
    if rho.shape != u.shape:
        raise ValueError(f"shape mismatch: state {rho.shape}, unitary {u.shape}")
    return u @ rho @ u.conj().T


def payoff_report(rho: np.ndarray, plan: SequencePlan,
                  convention: PayoffConvention = DEFAULT_CONVENTION
                  ) -> PayoffReport:
    """Score expectation of the final diagonal under ``convention``."""
    n = plan.total_qubits
    diag = np.real(np.diag(rho))
    z = np.arange(2 ** n)
    per_qubit = tuple(
        float(np.sum((2.0 * ((z >> (n - 1 - q)) & 1) - 1.0) * diag))
        for q in range(n)
    )
    counted = range(n) if convention.mask == "all" else range(plan.seed_count, n)
    total = sum(per_qubit[q] for q in counted)
    if convention.normalization == "per_game":
        total /= len(plan.games)
    elif convention.normalization == "per_qubit":
        total /= n
    return PayoffReport(float(total), per_qubit, tuple(diag))


def play(sequence: str, cfg: GameConfig, noise: NoiseSpec,
         convention: PayoffConvention = DEFAULT_CONVENTION) -> PayoffReport:
    """Full pipeline for a sequence string such as "AAB" or "B^3"."""
    plan = parse_sequence(sequence)
    u = build_unitary(plan, cfg)
    rho = make_initial_state(plan.total_qubits)
    rho = apply_channel(rho, noise)
    rho = evolve(rho, u)
    return payoff_report(rho, plan, convention)


# ---------------------------------------------------------------------------
# Convention calibration against the chain reference values.

_CAL_PS = (0.0, 0.25, 0.5)
_CAL_EPS = (1 / 168, 1 / 112)
_CAL_SEQS = (("B", 1), ("BB", 2), ("BBB", 3))
_CAL_CHANNELS = ("ad", "dp", "pd")
#: chain_b3's printed coefficients are rounded to two decimals.
_CAL_TOL = {1: 1e-6, 2: 1e-6, 3: 5e-3}


def _chain_residuals(assignments, masks, normalizations) -> dict:
    """Max |simulated - reference| per candidate per (sequence, channel)."""
    cells = [(a, m, nn) for a in assignments for m in masks
             for nn in normalizations]
    table = {cell: {} for cell in cells}
    for assignment in assignments:
        for eps in _CAL_EPS:
            cfg = calibrate_classical(eps, betas=max_payoff_phases(0.0),
                                      assignment=assignment)
            for seq, n_games in _CAL_SEQS:
                plan = parse_sequence(seq)
                u = build_unitary(plan, cfg)
                ghz = make_initial_state(plan.total_qubits)
                for p in _CAL_PS:
                    for ch in _CAL_CHANNELS:
                        rho = evolve(apply_channel(ghz, NoiseSpec(ch, p)), u)
                        ref = oracle.chain_b(n_games, ch, p, eps)
                        for mask in masks:
                            for norm in normalizations:
                                rep = payoff_report(
                                    rho, plan, PayoffConvention(mask, norm))
                                row = f"{seq}:{ch}"
                                cell = (assignment, mask, norm)
                                r = abs(rep.payoff - ref)
                                if r > table[cell].get(row, 0.0):
                                    table[cell][row] = r
    return table


def _cell_name(cell: tuple[str, str, str]) -> str:
    assignment, mask, norm = cell
    return f"{assignment}/{mask}-{norm.replace('_', '')}"


def calibrate_convention() -> PayoffConvention:
    """Search mask x {total, per_game} for a convention that reproduces the
    chain reference values (printed probability order).

    Raises CalibrationError with the full residual table when none matches —
    which is the actual outcome here; see discover_convention for the
    extended search that does succeed.
    """
    table = _chain_residuals(("printed",), MASKS, ("total", "per_game"))
    named = {_cell_name(c): rows for c, rows in table.items()}
    for cell, rows in table.items():
        ok = all(
            r <= _CAL_TOL[len(row.split(":")[0])]
            for row, r in rows.items()
        )
        if ok:
            return PayoffConvention(cell[1], cell[2])
    raise CalibrationError(
        "no candidate convention reproduces the chain reference values; "
        "best residuals per candidate: "
        + ", ".join(f"{name}={max(rows.values()):.3g}"
                    for name, rows in sorted(named.items())),
        named,
    )


#: Rows used to anchor the extended search. The dp rows are excluded (the
#: reference dp rows assume a different channel scaling; verify classifies
#: this) and chain_b3's ad row is excluded (truncated printed cubic).
_ANCHOR_ROWS = ("B:ad", "B:pd", "BB:ad", "BB:pd", "BBB:pd")


def discover_convention() -> ConventionFinding:
    """Extended search: probability-list order x mask x normalization.

    Anchors on the amplitude-damping and phase-damping chain rows, which pin
    a unique candidate: canonical order, all qubits, per-qubit normalization.
    """
    table = _chain_residuals(("printed", "canonical"), MASKS, NORMALIZATIONS)
    named = {_cell_name(c): rows for c, rows in table.items()}
    winners = []
    for cell, rows in table.items():
        ok = all(
            rows[row] <= _CAL_TOL[len(row.split(":")[0])]
            for row in _ANCHOR_ROWS
        )
        if ok:
            winners.append(cell)
    if len(winners) != 1:
        raise CalibrationError(
            f"extended search found {len(winners)} matching conventions "
            "(expected exactly 1)", named)
    assignment, mask, norm = winners[0]
    return ConventionFinding(
        PayoffConvention(mask, norm), assignment, named, _ANCHOR_ROWS)

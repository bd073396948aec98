"""Single-qubit Kraus channels and their action on a register.

Kraus operators (probability p in [0, 1]):

    amplitude damping  {[[1,0],[0,sqrt(1-p)]], [[0,sqrt(p)],[0,0]]}
    depolarizing       {sqrt(1-3p/4) I, sqrt(p/4) sx, sqrt(p/4) sy, sqrt(p/4) sz}
    phase damping      {[[1,0],[0,sqrt(1-p)]], [[0,0],[0,sqrt(p)]]}
    none               {I}

The channel acts once, on the initial state, independently on every qubit.
``apply_channel`` does this one qubit at a time (cost O(4^n) per qubit);
``lift_enumerated`` builds the explicit n-qubit operator set instead and is
kept for cross-validation on small registers only.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .linalg import SizeLimitError, dagger, max_abs

KINDS = ("ad", "dp", "pd", "none")

_SX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_SY = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_SZ = np.array([[1, 0], [0, -1]], dtype=np.complex128)
_I2 = np.eye(2, dtype=np.complex128)

#: lift_enumerated is for validation only; beyond this it refuses.
MAX_ENUMERATED_QUBITS = 4


@dataclass(frozen=True)
class NoiseSpec:
    kind: str
    p: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p {self.p} outside [0, 1]")


def kraus_single(spec: NoiseSpec) -> list[np.ndarray]:
    """The single-qubit Kraus set for ``spec``."""
    p = spec.p
    if spec.kind == "none":
        return [_I2.copy()]
    if spec.kind == "ad":
        return [
            np.array([[1, 0], [0, np.sqrt(1 - p)]], dtype=np.complex128),
            np.array([[0, np.sqrt(p)], [0, 0]], dtype=np.complex128),
        ]
    if spec.kind == "pd":
        return [
            np.array([[1, 0], [0, np.sqrt(1 - p)]], dtype=np.complex128),
            np.array([[0, 0], [0, np.sqrt(p)]], dtype=np.complex128),
        ]
    # depolarizing
    return [
        np.sqrt(1 - 3 * p / 4) * _I2,
        np.sqrt(p / 4) * _SX,
        np.sqrt(p / 4) * _SY,
        np.sqrt(p / 4) * _SZ,
    ]


def completeness_defect(ops: list[np.ndarray]) -> float:
    """max-entry residual of sum_k E_k^dag E_k - I."""
    dim = ops[0].shape[0]
    acc = sum(dagger(e) @ e for e in ops)
    return max_abs(acc - np.eye(dim))


def lift_enumerated(spec: NoiseSpec, n_qubits: int) -> list[np.ndarray]:
    """All n-fold tensor products of the single-qubit set (k^n operators).

    Validation path only; raises SizeLimitError above MAX_ENUMERATED_QUBITS.
    """
    if n_qubits < 1:
        raise ValueError("need at least one qubit")
    if n_qubits > MAX_ENUMERATED_QUBITS:
        raise SizeLimitError(
            f"enumerated lift limited to {MAX_ENUMERATED_QUBITS} qubits, "
            f"got {n_qubits}")
    singles = kraus_single(spec)
    out = []
    for combo in product(singles, repeat=n_qubits):
        op = combo[0]
        for e in combo[1:]:
            op = np.kron(op, e)
        out.append(op)
    return out


def _apply_single(rho_t: np.ndarray, ops: list[np.ndarray],
                  q: int, n: int) -> np.ndarray:
    """Kraus-sum on qubit q of a (2,)*2n tensor (row axis q, col axis n+q)."""
    out = np.zeros_like(rho_t)
    for e in ops:
        t = np.tensordot(e, rho_t, axes=([1], [q]))
        t = np.moveaxis(t, 0, q)
        t = np.tensordot(t, e.conj(), axes=([n + q], [1]))
        out += np.moveaxis(t, -1, n + q)
    return out


def apply_channel(rho: np.ndarray, spec: NoiseSpec) -> np.ndarray:
    """Apply the channel to every qubit of a register density matrix."""
    dim = rho.shape[0]
    n = int(round(np.log2(dim)))
    if 2 ** n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    if spec.kind == "none" or spec.p == 0.0:
        return rho.copy()
    ops = kraus_single(spec)
    rho_t = rho.reshape((2,) * (2 * n))
    for q in range(n):
        rho_t = _apply_single(rho_t, ops, q, n)
    return rho_t.reshape(dim, dim)

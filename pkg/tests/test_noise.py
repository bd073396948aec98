import numpy as np
import pytest

from parrondoq.linalg import SizeLimitError, max_abs
from parrondoq.noise import (KINDS, MAX_ENUMERATED_QUBITS, NoiseSpec,
                             apply_channel, completeness_defect, kraus_single,
                             lift_enumerated)


def random_density(n_qubits, seed):
    rng = np.random.default_rng(seed)
    dim = 2 ** n_qubits
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = m @ m.conj().T
    return rho / np.trace(rho).real


def test_noise_spec_validation():
    with pytest.raises(ValueError):
        NoiseSpec("xx", 0.1)
    with pytest.raises(ValueError):
        NoiseSpec("ad", 1.5)
    with pytest.raises(ValueError):
        NoiseSpec("ad", -0.1)


def test_kraus_operator_shapes_and_counts():
    assert len(kraus_single(NoiseSpec("none", 0.0))) == 1
    assert len(kraus_single(NoiseSpec("ad", 0.3))) == 2
    assert len(kraus_single(NoiseSpec("pd", 0.3))) == 2
    assert len(kraus_single(NoiseSpec("dp", 0.3))) == 4


def test_amplitude_damping_entries():
    p = 0.36
    e0, e1 = kraus_single(NoiseSpec("ad", p))
    assert e0[0, 0] == 1 and e0[1, 1] == pytest.approx(np.sqrt(1 - p))
    assert e1[0, 1] == pytest.approx(np.sqrt(p))
    assert e1[0, 0] == e1[1, 0] == e1[1, 1] == 0


def test_phase_damping_entries():
    p = 0.36
    e0, e1 = kraus_single(NoiseSpec("pd", p))
    assert e0[1, 1] == pytest.approx(np.sqrt(1 - p))
    assert e1[1, 1] == pytest.approx(np.sqrt(p))
    assert e1[0, 0] == e1[0, 1] == e1[1, 0] == 0


def test_depolarizing_weights():
    p = 0.8
    ops = kraus_single(NoiseSpec("dp", p))
    assert ops[0][0, 0] == pytest.approx(np.sqrt(1 - 3 * p / 4))
    for e in ops[1:]:
        assert max_abs(e) == pytest.approx(np.sqrt(p / 4))


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("p", [0.0, 0.25, 0.5, 0.75, 1.0])
def test_completeness(kind, p):
    assert completeness_defect(kraus_single(NoiseSpec(kind, p))) < 1e-12


def test_lift_enumerated_counts_and_limit():
    assert len(lift_enumerated(NoiseSpec("ad", 0.3), 3)) == 8
    assert len(lift_enumerated(NoiseSpec("dp", 0.3), 2)) == 16
    with pytest.raises(SizeLimitError):
        lift_enumerated(NoiseSpec("ad", 0.3), MAX_ENUMERATED_QUBITS + 1)
    with pytest.raises(ValueError):
        lift_enumerated(NoiseSpec("ad", 0.3), 0)


@pytest.mark.parametrize("kind", ["ad", "dp", "pd"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_sequential_equals_enumerated(kind, n):
    rho = random_density(n, seed=100 + n)
    spec = NoiseSpec(kind, 0.37)
    seq = apply_channel(rho, spec)
    summed = sum(e @ rho @ e.conj().T
                 for e in lift_enumerated(spec, n))
    assert max_abs(seq - summed) < 1e-12


def test_apply_channel_preserves_trace_and_positivity():
    rho = random_density(3, seed=5)
    for kind in ("ad", "dp", "pd"):
        out = apply_channel(rho, NoiseSpec(kind, 0.6))
        assert np.trace(out).real == pytest.approx(1.0)
        assert np.linalg.eigvalsh(out)[0] > -1e-12


def test_p_zero_is_identity_channel():
    rho = random_density(2, seed=9)
    for kind in KINDS:
        out = apply_channel(rho, NoiseSpec(kind, 0.0))
        assert np.array_equal(out, rho)
        assert out is not rho        # a copy, not the same object


def test_amplitude_damping_full_strength_collapses_to_ground():
    rho = random_density(2, seed=3)
    out = apply_channel(rho, NoiseSpec("ad", 1.0))
    want = np.zeros_like(out)
    want[0, 0] = 1.0
    assert max_abs(out - want) < 1e-12


def test_depolarizing_full_strength_is_maximally_mixed():
    rho = random_density(2, seed=4)
    out = apply_channel(rho, NoiseSpec("dp", 1.0))
    assert max_abs(out - np.eye(4) / 4) < 1e-12


def test_phase_damping_keeps_diagonal_kills_coherence():
    rho = random_density(2, seed=6)
    out = apply_channel(rho, NoiseSpec("pd", 1.0))
    assert max_abs(np.diag(out) - np.diag(rho)) < 1e-15
    off = out - np.diag(np.diag(out))
    assert max_abs(off) < 1e-12


def test_apply_channel_rejects_bad_dimension():
    with pytest.raises(ValueError):
        apply_channel(np.eye(3, dtype=complex), NoiseSpec("ad", 0.5))

import math

import numpy as np
import pytest

import magnon_chain as mc


def test_encodings_listed():
    assert "vacuum-singlet" in mc.encodings()
    assert len(mc.encodings()) == 6


def test_propagator_identity_and_unitarity():
    p = mc.ChainParams(12)
    assert np.allclose(mc.propagator(p, 0.0), np.eye(12))
    f = mc.propagator(p, 7.5)
    assert np.allclose(f @ f.conj().T, np.eye(12), atol=1e-12)
    assert np.allclose(f, f.T)


def test_mode_energies():
    e = mc.mode_energies(mc.ChainParams(3, j=1.0, h=1.0))
    assert e[1] == pytest.approx(2.0)


def test_evolve_round_trip():
    p = mc.ChainParams(8)
    state = {(1,): 1 / math.sqrt(2), (2,): 1 / math.sqrt(2)}
    out = mc.evolve(p, state, 3.0)
    assert sum(abs(a) ** 2 for a in out.values()) == pytest.approx(1.0)
    back = mc.evolve(p, state, 0.0)
    assert back[(1,)] == pytest.approx(1 / math.sqrt(2))


def test_singlet_state():
    s = mc.logical_state("vacuum-singlet", 48, math.pi, at_end=True)
    assert s[(48,)] == pytest.approx(1 / math.sqrt(2))
    assert s[(46,)] == pytest.approx(-1 / math.sqrt(2))


def test_trace_and_peaks():
    times = np.arange(0.0, 40.0, 0.05).tolist()
    values, peaks = mc.fidelity_trace(mc.ChainParams(48), "vacuum-singlet", math.pi, times=times)
    assert len(values) == len(times)
    assert 24.0 < peaks[0][0] < 27.0


def test_average_fidelity_at_zero():
    assert mc.average_fidelity(mc.ChainParams(20), t=0.0) == 0.5


def test_sweep_shapes():
    r = mc.max_fidelity_vs_length(["two-qubit", "four-qubit"], [4, 5, 6], t_max=30.0)
    assert len(r["values"]) == 6
    assert r["axes"][0]["labels"] == ["two-qubit", "four-qubit"]
    assert r["values"][0] >= 0.98


def test_protocols():
    p = mc.ChainParams(6)
    fast = mc.dual_chain_protocol(p, math.pi / 2, t_wait=3.0)
    slow = mc.dual_chain_protocol(p, math.pi / 2, t_wait=3.0, exact=True)
    assert fast["p_confirm"] == pytest.approx(slow["p_confirm"], abs=1e-10)
    assert sum(fast["outcome_probabilities"]) == pytest.approx(1.0, abs=1e-10)
    mem = mc.memory_protocol(mc.ChainParams(48), "vacuum-singlet", math.pi, swap_times=[25.0, 75.0])
    assert mem["cumulative"][1] > mem["cumulative"][0]


def test_logical_x_unitary():
    x = mc.logical_x()
    assert np.allclose(x @ x.conj().T, np.eye(4), atol=1e-14)


def test_oracle_checks():
    assert all(c["passed"] for c in mc.verify_oracle(n=7, trials=5))


def test_validation_errors():
    with pytest.raises(mc.ValidationError):
        mc.ChainParams(0)
    with pytest.raises(mc.ValidationError):
        mc.transfer_fidelity(mc.ChainParams(3), "four-qubit", 0.0, t=1.0)

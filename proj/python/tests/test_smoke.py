# SPDX-License-Identifier: Apache-2.0
#
# relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
# ------------------------------------------------------------------------

import json

import numpy as np
import pytest

import relay_shaper as rs


def rayleigh(rng, r, c):
    return (rng.standard_normal((r, c)) + 1j * rng.standard_normal((r, c))) / np.sqrt(2)


def test_waterfill_worked_instance():
    out = rs.waterfill(np.array([4.0, 1.0]), budget=2.0, cap=10.0)
    assert np.allclose(out["powers"], [5 / 6, 7 / 6], atol=1e-12)
    capped = rs.waterfill(np.array([4.0, 1.0]), budget=2.0, cap=1.0)
    assert np.allclose(capped["powers"], [1.0, 1.0])
    assert max(capped["kkt_residuals"]) < 1e-9


def test_pure_shaping_saturates_eigenvalues():
    R = rs.shaping_exponential(np.array([0.4, 0.8, 1.2, 1.6]), 0.5)
    F = rs.pure_shaping(R, 4)
    assert np.allclose(F @ F.conj().T, R, atol=1e-12)
    F2 = rs.pure_shaping(R, 2)
    ev_R = np.sort(np.linalg.eigvalsh(R))[::-1]
    ev_F = np.sort(np.linalg.eigvalsh(F2 @ F2.conj().T))[::-1]
    assert np.allclose(ev_F[:2], ev_R[:2], atol=1e-12)
    assert np.linalg.eigvalsh(R - F2 @ F2.conj().T).min() > -1e-12


def test_joint_design_respects_constraints_and_matches_mse():
    rng = np.random.default_rng(1)
    H = [rayleigh(rng, 4, 4) for _ in range(3)]
    out = rs.design(H, streams=4, power=4.0, noise_variance=0.1, objective="a_schur_convex", tau_max=1.4)
    for F in out["F"]:
        ev = np.linalg.eigvalsh(F @ F.conj().T)
        assert ev.max() <= 1.4 + 1e-9
        assert ev.sum() <= 4.0 + 1e-9
    G = rs.lmmse_equalizer(H, [0.1] * 3, out["P"])
    assert np.allclose(G, out["G"], atol=1e-10)
    assert np.allclose(rs.mse(H, 0.1, out["P"], out["G"]), out["mse"], atol=1e-10)
    # A-Schur-convex design equalizes the MSE diagonal
    d = np.real(np.diag(out["mse"]))
    assert np.ptp(d) < 1e-8 * d.max()


def test_nonlinear_design_has_lower_triangular_feedback():
    rng = np.random.default_rng(2)
    H = [rayleigh(rng, 4, 4) for _ in range(2)]
    out = rs.design(H, 4, 4.0, 0.05, objective="m_schur_convex", tau_max=1.4)
    C = out["C"]
    assert np.allclose(np.triu(C, 1), 0)
    assert np.allclose(np.diag(C), 1)
    assert np.allclose(np.diag(out["mse"]), np.diag(out["mse"])[0], rtol=1e-8)


def test_mixed_constraints_are_rejected():
    with pytest.raises(ValueError):
        rs.design([np.eye(2)], 2, 2.0, 1.0, tau_max=1.0, shaping=[np.eye(2)])


def test_simulate_is_deterministic():
    a = rs.simulate("ber", [10.0, 20.0], trials=5, seed=3)
    b = rs.simulate("ber", [10.0, 20.0], trials=5, seed=3, threads=2)
    assert a["values"] == b["values"]
    assert a["values"][1] < a["values"][0]
    cap = rs.simulate("capacity", [10.0], trials=5)
    assert cap["values"][0] > 0


def test_cli_in_process(tmp_path):
    cfg = tmp_path / "wf.json"
    cfg.write_text(json.dumps({"waterfill": {"gains": [4, 1], "budget": 2, "cap": 10}}))
    code, out, _ = rs.run_cli(["waterfill", "--config", str(cfg)])
    assert code == 0
    assert json.loads(out)["powers"][0] == pytest.approx(5 / 6)
    code, _, _ = rs.run_cli(["waterfill", "--config", str(tmp_path / "missing.json")])
    assert code == 3

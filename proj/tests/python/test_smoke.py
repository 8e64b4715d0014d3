import math

import numpy as np
import pytest

import symldf


def test_reference_averages():
    avg = symldf.sector_averages(symldf.ModelParams())
    assert avg["q_S"] < 0
    assert abs(avg["q_A"]) < 1e-9
    # thermal two-level activity 2 Gamma n (n+1) / (2n+1)
    assert avg["a_A"] == pytest.approx(2 * 0.1 * 0.1 * 1.1 / 1.2, rel=1e-8)


def test_kappa_and_fluctuation_symmetry():
    p = symldf.ModelParams(n_bath=0.5)
    assert p.kappa == pytest.approx(math.log(0.5 / 1.5))
    for lam in (-1.0, 0.3):
        assert symldf.mu(p, lam, 0.2) == pytest.approx(symldf.mu(p, p.kappa - lam, 0.2), abs=1e-10)


def test_steady_state_is_a_density_matrix():
    rho = symldf.steady_state(symldf.ModelParams(), symldf.Sector.A)
    assert rho.shape == (8, 8)
    assert np.trace(rho).real == pytest.approx(1.0)
    assert np.allclose(rho, rho.conj().T)


def test_theta_kinks():
    p = symldf.ModelParams()
    grid = list(np.linspace(-4, 2, 601))
    found = symldf.kinks(grid, symldf.theta(p, grid))
    assert len(found) == 2
    assert found[0][0] == pytest.approx(p.kappa, abs=0.01)


def test_errors_surface_as_exceptions():
    with pytest.raises(symldf.SymldfError):
        symldf.ModelParams(gamma_bath=-1.0)
    with pytest.raises(symldf.SymldfError):
        symldf.sector_averages(symldf.ModelParams(gamma_dephase=0.01))


def test_run_command(tmp_path):
    code, files, log = symldf.run_command("spectrum", str(tmp_path))
    assert code == 0
    assert files[-1].endswith("run_manifest.txt")
    assert "2 null eigenvalue" in log

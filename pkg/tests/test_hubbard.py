import io
import math

import numpy as np
import pytest

from core.errors import DomainError
from components.hubbard.hamiltonian import HamiltonianParams, build_hamiltonian, matrix_element
from components.hubbard.logic import (
    CSV_COLUMNS, default_grid, evaluate_point, find_peak, ground_state, i12_symmetry_defect, level_sweep,
    psi_p_overlap, spectrum, sweep, sweep_frame, write_sweep_csv,
)


def test_reference_parameters(reference_params):
    assert reference_params.J == 1.0
    assert reference_params.K == pytest.approx(2.99507)
    assert reference_params.f == pytest.approx(5e-3)
    assert reference_params.p_up == -reference_params.p_down == pytest.approx(-5e-6)
    assert HamiltonianParams.reference(p=1e-6).p_up == pytest.approx(-1e-6)


def test_parameters_must_be_finite():
    with pytest.raises(DomainError):
        HamiltonianParams(J=math.inf)
    with pytest.raises(DomainError):
        HamiltonianParams(B=math.nan)


def test_ising_diagonal():
    params = HamiltonianParams(J=1.0)
    assert matrix_element(params, "uuu", "uuu") == pytest.approx(-3.0)
    assert matrix_element(params, "Du0", "Du0") == pytest.approx(0.0)
    assert matrix_element(HamiltonianParams(K=1.0), "Du0", "Du0") == pytest.approx(-1.0)


def test_field_favors_down():
    params = HamiltonianParams(B=1.0)
    assert matrix_element(params, "ddd", "ddd") == pytest.approx(-3.0)
    assert matrix_element(params, "uuu", "uuu") == pytest.approx(3.0)


def test_spin_flip_element():
    params = HamiltonianParams(f=0.25)
    assert abs(matrix_element(params, "dD0", "uD0")) == pytest.approx(0.25)
    assert matrix_element(params, "ddd", "uuu") == 0


def test_hamiltonian_is_hermitian(reference_params):
    h = build_hamiltonian(reference_params.with_field(1e-5))
    assert h.shape == (20, 20)
    np.testing.assert_allclose(h, h.conj().T, atol=1e-15)


def test_spectrum_of_diagonal_matrix():
    pairs = spectrum(np.diag(np.arange(20.0)[::-1]), 2)
    assert [energy for energy, _ in pairs] == pytest.approx([0.0, 1.0])
    ground = pairs[0][1]
    assert ground.amplitudes[19] == pytest.approx(1.0)


def test_spectrum_guards():
    with pytest.raises(DomainError):
        spectrum(np.eye(20), 0)
    with pytest.raises(DomainError):
        spectrum(np.eye(20), 21)
    with pytest.raises(DomainError):
        spectrum(np.eye(6), 1)


def test_zero_field_ground_level_is_degenerate(reference_params):
    _, gap, _ = ground_state(reference_params)
    assert gap < 1e-9


def test_entropy_in_paired_regime(reference_params):
    row = evaluate_point(reference_params.with_field(5e-6))
    assert row.entropy == pytest.approx(math.log(3), abs=1e-3)


def test_ground_state_tracks_paired_state(reference_params):
    _, _, low = ground_state(reference_params.with_field(1e-6))
    assert psi_p_overlap(low) > 0.999
    _, _, high = ground_state(reference_params.with_field(3e-5))
    assert psi_p_overlap(high) < 0.05


def test_degree_four_generators_are_opposite(reference_params):
    for B in (2e-6, 1.7e-5):
        _, _, state = ground_state(reference_params.with_field(B))
        assert i12_symmetry_defect(state) < 1e-6


def test_sweep_rows(reference_params):
    B_values = np.linspace(0.0, 3e-5, 31)
    rows = sweep(reference_params, B_values)
    assert [row.B for row in rows] == pytest.approx(list(B_values))
    assert max(row.measure_i12 for row in rows) <= 0.5 + 1e-6
    energies = [row.ground_energy for row in rows]
    assert all(later <= earlier + 1e-12 for earlier, later in zip(energies, energies[1:]))
    with pytest.raises(DomainError):
        sweep(reference_params, [])


def test_default_grid():
    grid = default_grid()
    assert len(grid) == 601
    assert grid[0] == 0.0 and grid[-1] == pytest.approx(3e-5)


def test_level_sweep(reference_params):
    levels = level_sweep(reference_params, [0.0, 1e-5, 2e-5], n_levels=4)
    assert levels.shape == (3, 4)
    assert levels[0, 0] == pytest.approx(0.0, abs=1e-12)
    assert np.all(np.diff(levels, axis=1) >= -1e-12)
    with pytest.raises(DomainError):
        level_sweep(reference_params, [0.0], n_levels=0)


def test_csv_layout(reference_params):
    rows = sweep(reference_params, [0.0, 1e-5])
    frame = sweep_frame(rows, level_sweep(reference_params, [0.0, 1e-5], n_levels=2))
    buffer = io.StringIO()
    write_sweep_csv(frame, buffer)
    lines = buffer.getvalue().split("\n")
    assert lines[0] == ",".join(CSV_COLUMNS + ["level_1", "level_2"])
    assert len([line for line in lines if line]) == 3
    assert "\r" not in buffer.getvalue()


def test_find_peak_guards(reference_params):
    with pytest.raises(DomainError):
        find_peak(reference_params, quantity="gap")
    with pytest.raises(DomainError):
        find_peak(reference_params, interval=(2e-5, 1e-5))


@pytest.mark.slow
def test_i12_peak(reference_params):
    result = find_peak(reference_params, quantity="i12")
    assert result.interior
    assert result.B_star == pytest.approx(1.7099e-5, rel=1e-3)
    assert result.value == pytest.approx(0.498, abs=5e-3)


@pytest.mark.slow
def test_tau_peak(reference_params):
    result = find_peak(reference_params, quantity="tau")
    assert result.B_star == pytest.approx(1.7139e-5, rel=1e-3)
    assert result.value == pytest.approx(9.578e-4, abs=2e-5)


@pytest.mark.slow
def test_entropy_peak(reference_params):
    result = find_peak(reference_params, quantity="entropy")
    assert result.B_star == pytest.approx(1.7097e-5, rel=1e-3)
    assert result.value == pytest.approx(1.251, abs=1e-3)

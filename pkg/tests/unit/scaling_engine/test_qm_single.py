"""
Tests for Single-Particle Quantum Mechanics with a Scaling Field

Covers packets, localization and reference translation, the covariant
operators, momentum kernels and Crank-Nicolson evolution.
"""

# pylint: disable=redefined-outer-name  # pytest fixtures

import sys
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent.parent.parent / "src"))

import numpy as np  # pylint: disable=import-error
import pytest  # pylint: disable=import-error

from numscale.scaling_engine.exceptions import (  # pylint: disable=import-error,wrong-import-position
    DimensionMismatchError,
    GridError,
    IntegrationError,
)
from numscale.scaling_engine.grid import (  # pylint: disable=import-error,wrong-import-position
    Grid1D,
    central_first,
    forward_dft,
    relative_residual,
)
from numscale.scaling_engine.models import PhysicalConstants  # pylint: disable=import-error,wrong-import-position
from numscale.scaling_engine.qm_single import (  # pylint: disable=import-error,wrong-import-position
    CrankNicolsonPropagator,
    LocalizedPacket,
    WavePacket,
    canonical_momentum_apply,
    convolve_momentum,
    covariant_derivative,
    evolve,
    free_gaussian_reference,
    gaussian_packet,
    hamiltonian_apply,
    hamiltonian_matrix,
    harmonic_ground_state,
    harmonic_potential,
    lattice_free_propagation,
    linearized_kernel,
    localization_commutes_check,
    localize_packet,
    momentum_kernel,
    momentum_representation,
    norm_history,
    plane_wave,
    translate_reference,
    transport_quotient_derivative,
)
from numscale.scaling_engine.scaling_field import (  # pylint: disable=import-error,wrong-import-position
    FieldSpec,
    Profile,
)


@pytest.fixture
def grid():
    return Grid1D.centered(256, 20.0)


@pytest.fixture
def field():
    return FieldSpec.closed_form(
        alpha=Profile(kind="gaussian", amplitude=0.3, width=1.5),
        beta=Profile(kind="sine", amplitude=0.2, wavenumber=2 * np.pi / 10),
    )


@pytest.fixture
def packet(grid):
    return gaussian_packet(grid, center=-0.5, width=1.2, k0=1.0)


class TestWavePacket:
    """Packet construction and builders."""

    def test_shape_must_match_grid(self, grid):
        with pytest.raises(DimensionMismatchError):
            WavePacket(np.zeros(grid.n + 1), grid)

    def test_amplitudes_must_be_finite(self, grid):
        amplitudes = np.zeros(grid.n, dtype=complex)
        amplitudes[0] = np.inf
        with pytest.raises(DimensionMismatchError):
            WavePacket(amplitudes, grid)

    def test_normalized_gaussian(self, packet):
        assert packet.norm_squared() == pytest.approx(1.0, abs=1e-14)

    def test_packets_on_different_grids_do_not_add(self, packet):
        other = gaussian_packet(packet.grid.refined())
        with pytest.raises(DimensionMismatchError):
            packet + other  # pylint: disable=pointless-statement

    def test_harmonic_ground_state_is_eigenvector(self, grid):
        c = PhysicalConstants()
        ground, energy = harmonic_ground_state(grid, omega=1.0, c=c)
        V = harmonic_potential(grid, 1.0, c)
        applied = hamiltonian_apply(ground, FieldSpec.zero(), V, c)

        assert energy == 0.5
        assert relative_residual(applied.amplitudes - energy * ground.amplitudes, ground.amplitudes, grid.dz) < 1e-2


class TestLocalization:
    """Localization into the fiber of a reference point."""

    def test_zero_field_is_identity(self, packet):
        localized = localize_packet(packet, FieldSpec.zero(), 0.0)
        assert np.array_equal(localized.amplitudes, packet.amplitudes)

    def test_reference_point_amplitude_unchanged(self, packet, field):
        x = packet.grid.z[100]
        localized = localize_packet(packet, field, x)

        assert localized.amplitudes[100] == packet.amplitudes[100]

    def test_reference_must_be_a_node(self, packet):
        with pytest.raises(GridError):
            LocalizedPacket(packet, 0.01, FieldSpec.zero())

    def test_translate_reference_matches_direct_localization(self, packet, field):
        x, w = packet.grid.z[90], packet.grid.z[150]
        translated = translate_reference(localize_packet(packet, field, x), w)
        direct = localize_packet(packet, field, w)

        assert translated.reference == w
        assert np.allclose(translated.amplitudes, direct.amplitudes, rtol=1e-14, atol=0)

    def test_potential_part_commutes(self, packet, field, grid):
        V = harmonic_potential(grid, 0.7)
        residual = localization_commutes_check(packet, field, V, 0.0, include_kinetic=False)
        assert residual < 1e-14

    def test_hamiltonian_commutation_is_second_order(self, field):
        def residual(g):
            psi = gaussian_packet(g, center=-0.5, width=1.2, k0=1.0)
            return localization_commutes_check(psi, field, harmonic_potential(g, 0.5), 0.0)

        coarse = Grid1D.centered(256, 20.0)
        assert residual(coarse) / residual(coarse.refined()) > 3.5


class TestOperators:
    """Covariant derivative, momentum and kinetic operators."""

    def test_zero_field_derivative_is_plain(self, packet):
        covariant = covariant_derivative(packet, FieldSpec.zero())
        assert np.array_equal(covariant.amplitudes, central_first(packet.amplitudes, packet.grid.dz))

    def test_plane_wave_momentum(self, grid):
        k = 2 * np.pi * 5 / grid.length
        psi = plane_wave(grid, k)
        expected = np.sin(k * grid.dz) / grid.dz * psi.amplitudes

        assert np.allclose(canonical_momentum_apply(psi, FieldSpec.zero()).amplitudes, expected, atol=1e-12)

    def test_transport_quotient_is_first_order(self, field):
        def difference(g):
            psi = gaussian_packet(g, width=1.2, k0=1.0)
            gap = transport_quotient_derivative(psi, field).amplitudes - covariant_derivative(psi, field).amplitudes
            return np.max(np.abs(gap))

        coarse = Grid1D.centered(512, 20.0)
        assert difference(coarse) / difference(coarse.refined()) == pytest.approx(2.0, rel=0.1)

    def test_zero_field_scaled_hamiltonian_is_plain(self, packet, grid):
        V = harmonic_potential(grid, 1.0)
        scaled = hamiltonian_apply(packet, FieldSpec.zero(), V, scaled=True)
        plain = hamiltonian_apply(packet, FieldSpec.zero(), V, scaled=False)

        assert np.array_equal(scaled.amplitudes, plain.amplitudes)

    def test_potential_shape_checked(self, packet):
        with pytest.raises(DimensionMismatchError):
            hamiltonian_apply(packet, FieldSpec.zero(), np.zeros(3))

    def test_matrix_matches_stencil(self, packet, field, grid):
        V = harmonic_potential(grid, 1.0)
        from_matrix = hamiltonian_matrix(grid, field, V) @ packet.amplitudes
        from_stencil = hamiltonian_apply(packet, field, V).amplitudes

        assert relative_residual(from_matrix - from_stencil, from_stencil, grid.dz) < 1e-13


class TestMomentumKernels:
    """Kernels of exp(gamma) on the lattice of momentum differences."""

    def test_zero_field_kernel_is_delta(self, grid):
        kernel = momentum_kernel(FieldSpec.zero(), grid)
        delta = np.zeros(2 * grid.n - 1, dtype=complex)
        delta[grid.n - 1] = grid.length

        assert kernel.shape == (2 * grid.n - 1,)
        assert np.allclose(kernel, delta, atol=1e-12)

    def test_convolution_reproduces_localized_transform(self, packet, field, grid):
        x = grid.z[120]
        localized_hat = momentum_representation(localize_packet(packet, field, x))
        gamma_x = field.gamma_on(grid)[120]
        convolved = np.exp(-gamma_x) * convolve_momentum(
            momentum_kernel(field, grid), forward_dft(packet.amplitudes, grid), grid
        )

        assert relative_residual(convolved - localized_hat, localized_hat, grid.dz) < 1e-10

    def test_convolution_holds_off_lattice_origin(self, field):
        grid = Grid1D(n=64, dz=0.3, origin=-9.55)
        psi = gaussian_packet(grid, width=1.0)
        expected = forward_dft(np.exp(field.gamma_on(grid)) * psi.amplitudes, grid)
        convolved = convolve_momentum(momentum_kernel(field, grid), forward_dft(psi.amplitudes, grid), grid)

        assert relative_residual(convolved - expected, expected, grid.dz) < 1e-10

    def test_linearized_kernel_error_is_quadratic(self, field, grid):
        def error(scale):
            weak = field.scaled(scale)
            return np.linalg.norm(momentum_kernel(weak, grid) - linearized_kernel(weak, grid))

        assert error(1e-2) / error(1e-3) == pytest.approx(100.0, rel=0.05)


class TestEvolution:
    """Crank-Nicolson time evolution."""

    def test_time_step_must_be_positive(self, grid):
        with pytest.raises(IntegrationError):
            CrankNicolsonPropagator(hamiltonian_matrix(grid, FieldSpec.zero(), None), 0.0)

    def test_hermitian_evolution_keeps_norm(self, packet, grid):
        norms = norm_history(packet, FieldSpec.zero(), harmonic_potential(grid, 1.0), PhysicalConstants(), 1e-2, 50)

        assert norms.shape == (51,)
        assert np.max(np.abs(norms - norms[0])) < 1e-12

    def test_free_reference_at_time_zero(self, grid):
        reference = free_gaussian_reference(grid, center=1.0, width=1.5, k0=0.5, t=0.0)
        packet = gaussian_packet(grid, center=1.0, width=1.5, k0=0.5, normalize=False)

        assert np.allclose(reference.amplitudes, packet.amplitudes, atol=1e-15)

    def test_free_gaussian_after_hundred_steps(self):
        grid = Grid1D.centered(512, 64.0)
        c = PhysicalConstants()
        psi = gaussian_packet(grid, center=0.0, width=4.0, k0=0.0, normalize=False)

        evolved = evolve(psi, FieldSpec.zero(), None, c, dt=1e-3, steps=100)
        reference = free_gaussian_reference(grid, center=0.0, width=4.0, k0=0.0, t=0.1, c=c)

        assert relative_residual(evolved.amplitudes - reference.amplitudes, reference.amplitudes, grid.dz) <= 1e-6

    def test_free_evolution_matches_lattice_propagation(self):
        grid = Grid1D.centered(128, 32.0)
        c = PhysicalConstants()
        psi = gaussian_packet(grid, width=2.0, k0=0.5)
        evolved = evolve(psi, FieldSpec.zero(), None, c, dt=1e-3, steps=50)
        exact = lattice_free_propagation(psi, 0.05, c)

        assert relative_residual(evolved.amplitudes - exact.amplitudes, exact.amplitudes, grid.dz) < 1e-6

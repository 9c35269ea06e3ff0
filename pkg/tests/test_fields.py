import numpy as np
import pytest

from slitlight import (
    FieldGeometry,
    PhysicsError,
    cartesian_coherence_matrix,
    cross_spectral_density,
    degree_of_coherence,
    field_density_matrix,
    mix,
    random_geometry,
    random_state,
    reduced_density_matrix,
    single_photon_state,
    slit_intensities,
    vacuum_state,
)


class TestFieldGeometry:
    def test_defaults_are_transverse_orthonormal(self):
        geom = FieldGeometry(slit_count=3)
        assert geom.intensity_scale == 1.0
        assert geom.slit_phase(1) == 0.0
        np.testing.assert_allclose(geom.polarization(2, 1), [1, 0, 0])

    def test_non_transverse_polarization_rejected(self):
        bad = np.array([[[0, 0, 1.0], [0, 1.0, 0]]], dtype=complex)
        with pytest.raises(ValueError, match="transverse"):
            FieldGeometry(slit_count=1, polarizations=bad)

    def test_non_orthonormal_polarization_rejected(self):
        bad = np.array([[[1.0, 0, 0], [1.0, 0, 0]]], dtype=complex)
        with pytest.raises(ValueError, match="orthonormal"):
            FieldGeometry(slit_count=1, polarizations=bad)

    def test_random_geometry_is_valid_and_seeded(self):
        a = random_geometry(5, 2)
        b = random_geometry(5, 2)
        np.testing.assert_array_equal(a.positions, b.positions)
        np.testing.assert_array_equal(a.polarizations, b.polarizations)
        assert 0.1 <= a.intensity_scale <= 10.0


class TestCartesianCoherenceMatrix:
    def test_vacuum_gives_zero(self, geometry_two_slits):
        got = cartesian_coherence_matrix(vacuum_state(4), geometry_two_slits, (1, 2))
        np.testing.assert_array_equal(got, 0.0)

    def test_single_photon_rank_one_polarization_matrix(self):
        geom = random_geometry(21, 2)
        state = single_photon_state(4, [1.0, 0, 0, 0])
        got = cartesian_coherence_matrix(state, geom, (1, 1))
        e = geom.polarization(1, 1)
        expected = geom.intensity_scale * np.outer(e.conj(), e)
        np.testing.assert_allclose(got, expected, atol=1e-13)

    def test_frobenius_norm_reduces_to_mode_blocks(self):
        geom = random_geometry(22, 2)
        for i in range(5):
            state = random_state(1100 + i, 4, [1, 2], components=2)
            got = cartesian_coherence_matrix(state, geom, (1, 2))
            total = sum(
                abs(cross_spectral_density(state, (s1,), (2 + s2,))) ** 2
                for s1 in (0, 1)
                for s2 in (0, 1)
            )
            assert np.linalg.norm(got) ** 2 == pytest.approx(
                geom.intensity_scale**2 * total, rel=1e-12
            )

    def test_blocks_recovered_from_field_matrix(self):
        geom = random_geometry(23, 2)
        state = random_state(1200, 4, [1, 2], components=3)
        fdm = field_density_matrix(state, geom, 1)
        for m1 in (1, 2):
            for m2 in (1, 2):
                cart = cartesian_coherence_matrix(state, geom, (m1, m2))
                block = fdm.matrix[2 * (m1 - 1) : 2 * m1, 2 * (m2 - 1) : 2 * m2]
                contracted = np.empty((2, 2), dtype=complex)
                for s1 in (0, 1):
                    for s2 in (0, 1):
                        contracted[s1, s2] = (
                            geom.polarization(m1, s1 + 1) @ cart @ geom.polarization(m2, s2 + 1).conj()
                        )
                np.testing.assert_allclose(contracted, block, atol=1e-12)


class TestFieldDensityMatrix:
    def test_trivial_geometry_transposes_the_reduced_matrix(self, geometry_two_slits):
        for order in (1, 2):
            state = random_state(1300 + order, 4, [1, 2], components=2)
            fdm = field_density_matrix(state, geometry_two_slits, order)
            rdm = reduced_density_matrix(state, order)
            np.testing.assert_allclose(fdm.matrix, rdm.matrix.T, atol=1e-13)

    def test_single_slit_occupied_gives_one_diagonal_block(self, geometry_two_slits):
        state = single_photon_state(4, [0.6, 0.8, 0, 0])
        fdm = field_density_matrix(state, geometry_two_slits, 1)
        np.testing.assert_allclose(fdm.matrix[2:, :], 0.0, atol=1e-15)
        np.testing.assert_allclose(fdm.matrix[:, 2:], 0.0, atol=1e-15)
        assert np.linalg.norm(fdm.matrix[:2, :2]) > 0

    def test_trace_scales_with_intensity(self):
        state = random_state(1400, 4, [1, 2], components=1)
        geom = FieldGeometry(slit_count=2, field_amplitude=3.0 - 4.0j)
        fdm = field_density_matrix(state, geom, 1)
        assert fdm.trace_value == pytest.approx(25.0 * state.mean_photon_number, rel=1e-12)
        np.testing.assert_allclose(np.trace(fdm.matrix).real, fdm.trace_value, rtol=1e-12)

    def test_spectra_invariant_under_phase_gauge(self):
        state = random_state(1500, 4, [1, 2, 3], components=3)
        base = FieldGeometry(slit_count=2)
        reference = np.linalg.eigvalsh(field_density_matrix(state, base, 1).matrix)
        rng = np.random.default_rng(1501)
        for _ in range(5):
            geom = FieldGeometry(
                slit_count=2,
                positions=rng.uniform(-3, 3, (2, 3)),
                times=rng.uniform(-3, 3, 2),
            )
            spectrum = np.linalg.eigvalsh(field_density_matrix(state, geom, 1).matrix)
            np.testing.assert_allclose(spectrum, reference, atol=1e-12)

    def test_purity_equality_under_random_geometries(self):
        for i in range(10):
            state = random_state(1600 + i, 4, [1, 2], components=1 + 2 * (i % 2))
            geom = random_geometry(1700 + i, 2)
            for order in (1, 2):
                fdm = field_density_matrix(state, geom, order)
                rdm = reduced_density_matrix(state, order)
                assert abs(fdm.purity - rdm.purity) < 1e-11

    def test_hermitian_psd(self):
        state = random_state(1800, 4, [1, 2], components=3)
        geom = random_geometry(1801, 2)
        fdm = field_density_matrix(state, geom, 2)
        scale = max(1.0, fdm.trace_value)
        assert np.max(np.abs(fdm.matrix - fdm.matrix.conj().T)) < 1e-12 * scale
        assert np.linalg.eigvalsh(fdm.matrix).min() > -1e-10 * scale


class TestDegreeOfCoherence:
    def test_even_same_polarization_superposition(self, geometry_two_slits, inv_sqrt2):
        state = single_photon_state(4, [inv_sqrt2, 0, inv_sqrt2, 0])
        assert degree_of_coherence(state, geometry_two_slits, (1, 2)) == pytest.approx(1.0, abs=1e-12)

    def test_incoherent_mixture(self, geometry_two_slits):
        state = mix(
            [
                (0.5, single_photon_state(4, [1, 0, 0, 0])),
                (0.5, single_photon_state(4, [0, 0, 1, 0])),
            ]
        )
        assert degree_of_coherence(state, geometry_two_slits, (1, 2)) == pytest.approx(0.0, abs=1e-12)

    def test_orthogonally_polarized_superposition_is_coherent(self, geometry_two_slits, inv_sqrt2):
        state = single_photon_state(4, [inv_sqrt2, 0, 0, inv_sqrt2])
        assert degree_of_coherence(state, geometry_two_slits, (1, 2)) == pytest.approx(1.0, abs=1e-12)

    def test_dark_slit_errors(self, geometry_two_slits):
        state = single_photon_state(4, [1, 0, 0, 0])
        with pytest.raises(PhysicsError, match="dark slit"):
            degree_of_coherence(state, geometry_two_slits, (1, 2))

    def test_bounded_and_gauge_invariant(self):
        for i in range(10):
            state = random_state(1900 + i, 4, [1, 2], components=1 + 2 * (i % 2))
            base = degree_of_coherence(state, FieldGeometry(slit_count=2), (1, 2))
            assert -1e-10 <= base <= 1.0 + 1e-10
            other = degree_of_coherence(state, random_geometry(2000 + i, 2), (1, 2))
            assert abs(base - other) < 1e-12

    def test_slit_intensities_sum_to_mean_photons(self):
        state = random_state(2100, 4, [1, 2, 3], components=2)
        geom = FieldGeometry(slit_count=2)
        values = slit_intensities(state, geom)
        assert values.sum() == pytest.approx(state.mean_photon_number, rel=1e-12)

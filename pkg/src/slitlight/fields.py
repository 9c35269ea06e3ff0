"""Slit geometry and field-side correlation objects.

The geometry fixes one plane-wave phase per slit and an orthonormal pair of
transverse polarization vectors per slit.  Field matrices carry those phases
as a diagonal unitary on top of the mode-side correlation data, so their
spectra, Frobenius norms and every normalized scalar built from them are
independent of positions, times, frequency and overall intensity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .correlations import cross_spectral_density, photon_index_tuples, reduced_density_matrix
from .errors import PhysicsError
from .fock import ensure_capacity

TRANSVERSALITY_TOL = 1e-12
ORTHONORMALITY_TOL = 1e-12
DARK_SLIT_TOL = 1e-12

HERMITIAN_TOL = 1e-12
PSD_FLOOR = -1e-10
TRACE_MATCH_TOL = 1e-10


def default_polarizations(slit_count):
    """Unit x/y polarization pair for every slit (wave vector along z)."""
    pair = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], dtype=complex)
    return np.tile(pair, (slit_count, 1, 1))


@dataclass(frozen=True, eq=False)
class FieldGeometry:
    """Per-slit plane-wave data: amplitude, wave vector, positions, times,
    and two orthonormal transverse polarization vectors per slit.

    Defaults put every slit at the origin at time zero with unit amplitude,
    wave vector 2*pi along z and x/y polarizations: the simplest gauge, since
    every derived scalar is phase-gauge invariant.
    """

    slit_count: int
    field_amplitude: complex = 1.0 + 0.0j
    angular_frequency: float = 2.0 * math.pi
    wave_vector: np.ndarray = field(default=None)
    positions: np.ndarray = field(default=None)
    times: np.ndarray = field(default=None)
    polarizations: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.slit_count < 1:
            raise ValueError(f"slit count must be >= 1, got {self.slit_count}")
        object.__setattr__(self, "field_amplitude", complex(self.field_amplitude))
        # Copy the inputs: the stored arrays are frozen read-only below.
        wave = np.array([0.0, 0.0, 2.0 * math.pi]) if self.wave_vector is None else np.array(self.wave_vector, dtype=float)
        pos = np.zeros((self.slit_count, 3)) if self.positions is None else np.array(self.positions, dtype=float)
        times = np.zeros(self.slit_count) if self.times is None else np.array(self.times, dtype=float)
        pol = default_polarizations(self.slit_count) if self.polarizations is None else np.array(self.polarizations, dtype=complex)
        if wave.shape != (3,):
            raise ValueError(f"wave vector must be a 3-vector, got shape {wave.shape}")
        if pos.shape != (self.slit_count, 3):
            raise ValueError(f"positions must have shape ({self.slit_count}, 3), got {pos.shape}")
        if times.shape != (self.slit_count,):
            raise ValueError(f"times must have shape ({self.slit_count},), got {times.shape}")
        if pol.shape != (self.slit_count, 2, 3):
            raise ValueError(f"polarizations must have shape ({self.slit_count}, 2, 3), got {pol.shape}")
        for m in range(self.slit_count):
            for s in range(2):
                if abs(np.dot(wave, pol[m, s])) > TRANSVERSALITY_TOL * max(1.0, np.linalg.norm(wave)):
                    raise ValueError(f"polarization (slit {m + 1}, s={s + 1}) is not transverse to the wave vector")
            gram = pol[m].conj() @ pol[m].T
            if np.max(np.abs(gram - np.eye(2))) > ORTHONORMALITY_TOL:
                raise ValueError(f"polarization pair at slit {m + 1} is not orthonormal")
        for name, arr in (("wave_vector", wave), ("positions", pos), ("times", times), ("polarizations", pol)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def intensity_scale(self):
        return abs(self.field_amplitude) ** 2

    def slit_phase(self, slit):
        """Plane-wave phase k.r - w*t at a slit (1-based)."""
        m = slit - 1
        if not 0 <= m < self.slit_count:
            raise ValueError(f"slit {slit} out of range for {self.slit_count} slits")
        return float(np.dot(self.wave_vector, self.positions[m]) - self.angular_frequency * self.times[m])

    def polarization(self, slit, s):
        """Polarization 3-vector of mode s in {1, 2} at a slit (1-based)."""
        if s not in (1, 2):
            raise ValueError(f"polarization index must be 1 or 2, got {s}")
        return self.polarizations[slit - 1, s - 1]


def random_geometry(seed, slit_count, intensity_range=(0.1, 10.0)):
    """Seeded random gauge draw for invariance checks.

    Draws positions, times, frequency, a random wave direction with a
    matching transverse basis, a random unitary polarization mix per slit,
    and an intensity scale inside ``intensity_range``.
    """
    rng = np.random.default_rng(seed)
    direction = rng.standard_normal(3)
    direction /= np.linalg.norm(direction)
    helper = np.array([1.0, 0.0, 0.0]) if abs(direction[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    u = np.cross(helper, direction)
    u /= np.linalg.norm(u)
    v = np.cross(direction, u)
    transverse = np.stack([u, v]).astype(complex)

    polarizations = np.empty((slit_count, 2, 3), dtype=complex)
    for m in range(slit_count):
        z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        q, r = np.linalg.qr(z)
        q = q * (np.diag(r) / np.abs(np.diag(r)))
        polarizations[m] = q @ transverse

    intensity = rng.uniform(*intensity_range)
    amplitude = math.sqrt(intensity) * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
    return FieldGeometry(
        slit_count=slit_count,
        field_amplitude=amplitude,
        angular_frequency=rng.uniform(1.0, 10.0),
        wave_vector=rng.uniform(1.0, 10.0) * direction,
        positions=rng.uniform(-5.0, 5.0, (slit_count, 3)),
        times=rng.uniform(-5.0, 5.0, slit_count),
        polarizations=polarizations,
    )


@dataclass(frozen=True, eq=False)
class FieldDensityMatrix:
    """n-th order field matrix over mode labels: (2L)^n square, Hermitian, PSD.

    ``trace_value`` equals the intensity scale to the n-th power times the
    n-th factorial moment.
    """

    order: int
    mode_count: int
    matrix: np.ndarray
    trace_value: float

    @property
    def dimension(self):
        return self.matrix.shape[0]

    @property
    def normalized(self):
        if self.trace_value <= 0:
            raise ValueError("cannot normalize a zero-trace matrix")
        return self.matrix / self.trace_value

    @property
    def purity(self):
        """Squared Frobenius norm of the trace-normalized matrix."""
        norm = self.normalized
        return float(np.vdot(norm, norm).real)


def _check_state_geometry(state, geometry):
    if state.mode_count != 2 * geometry.slit_count:
        raise ValueError(
            f"state has {state.mode_count} modes but the geometry's {geometry.slit_count} "
            f"slits need {2 * geometry.slit_count}"
        )


def field_density_matrix(state, geometry, order):
    """n-th order field matrix in the mode-label representation.

    Element ((k1..kn), (k'1..k'n)) is I0^n times the cross-spectral density
    with creation labels k and annihilation labels k', times a phase factor
    exp(-i phi) per row-side slit and exp(+i phi) per column-side slit.
    """
    _check_state_geometry(state, geometry)
    mode_count = state.mode_count
    dim = mode_count**order
    ensure_capacity(dim * dim, f"order-{order} field matrix of dimension {dim}")
    rdm = reduced_density_matrix(state, order)
    # The mode-side grid transposed is exactly the creation/annihilation grid.
    grid = rdm.matrix.T
    mode_phases = np.exp(
        -1j * np.array([geometry.slit_phase(m // 2 + 1) for m in range(mode_count)])
    )
    row_phase = np.ones(1, dtype=complex)
    for _ in range(order):
        row_phase = np.kron(row_phase, mode_phases)
    scale = geometry.intensity_scale**order
    matrix = scale * (row_phase[:, None] * grid * row_phase.conj()[None, :])
    fdm = FieldDensityMatrix(order, mode_count, matrix, scale * rdm.trace_value)
    _validate_field_matrix(fdm)
    return fdm


def _validate_field_matrix(fdm):
    matrix, trace = fdm.matrix, fdm.trace_value
    scale = max(1.0, abs(trace))
    if np.max(np.abs(matrix - matrix.conj().T)) > HERMITIAN_TOL * scale:
        raise ValueError(f"field matrix at order {fdm.order} is not Hermitian")
    if abs(np.trace(matrix).real - trace) > TRACE_MATCH_TOL * scale:
        raise ValueError(f"field matrix trace {np.trace(matrix)} does not match {trace}")
    if matrix.shape[0] > 1 and np.linalg.eigvalsh(matrix).min() < PSD_FLOOR * scale:
        raise ValueError(f"field matrix at order {fdm.order} is not positive semidefinite")


def cartesian_coherence_matrix(state, geometry, slits):
    """Correlation matrix at 2n slit points over Cartesian field components.

    ``slits`` lists 2n 1-based slit indices; the first n are the conjugated
    (row) side.  Returns a 3^n by 3^n complex matrix: the polarization-vector
    outer products weighted by the cross-spectral densities and slit phases.
    """
    _check_state_geometry(state, geometry)
    if len(slits) < 2 or len(slits) % 2 != 0:
        raise ValueError(f"need an even number (>= 2) of slit indices, got {len(slits)}")
    order = len(slits) // 2
    bra_slits, ket_slits = slits[:order], slits[order:]
    dim = 3**order
    matrix = np.zeros((dim, dim), dtype=complex)
    scale = geometry.intensity_scale**order
    bra_phase = np.exp(-1j * sum(geometry.slit_phase(m) for m in bra_slits))
    ket_phase = np.exp(1j * sum(geometry.slit_phase(m) for m in ket_slits))
    for bra_pols in photon_index_tuples(2, order):
        creation = tuple(2 * (m - 1) + s for m, s in zip(bra_slits, bra_pols))
        bra_vec = np.ones(1, dtype=complex)
        for m, s in zip(bra_slits, bra_pols):
            bra_vec = np.kron(bra_vec, geometry.polarization(m, s + 1).conj())
        for ket_pols in photon_index_tuples(2, order):
            annihilation = tuple(2 * (m - 1) + s for m, s in zip(ket_slits, ket_pols))
            w = cross_spectral_density(state, creation, annihilation)
            if w == 0:
                continue
            ket_vec = np.ones(1, dtype=complex)
            for m, s in zip(ket_slits, ket_pols):
                ket_vec = np.kron(ket_vec, geometry.polarization(m, s + 1))
            matrix += w * np.outer(bra_vec, ket_vec)
    return scale * bra_phase * ket_phase * matrix


def slit_intensities(state, geometry):
    """Per-slit intensities: trace of the equal-point coherence matrix."""
    _check_state_geometry(state, geometry)
    values = []
    for m in range(1, geometry.slit_count + 1):
        block = cartesian_coherence_matrix(state, geometry, (m, m))
        values.append(float(np.trace(block).real))
    return np.array(values)


def degree_of_coherence(state, geometry, slits):
    """Normalized Frobenius norm of the inter-slit coherence matrix.

    ``slits`` is a pair of 1-based slit indices.  Errors out when either
    slit is dark, where the ratio is undefined.
    """
    m1, m2 = slits
    cross = cartesian_coherence_matrix(state, geometry, (m1, m2))
    i1 = float(np.trace(cartesian_coherence_matrix(state, geometry, (m1, m1))).real)
    i2 = float(np.trace(cartesian_coherence_matrix(state, geometry, (m2, m2))).real)
    threshold = DARK_SLIT_TOL * geometry.intensity_scale
    if i1 <= threshold or i2 <= threshold:
        raise PhysicsError("degree of coherence undefined for dark slit")
    return float(np.linalg.norm(cross) / math.sqrt(i1 * i2))

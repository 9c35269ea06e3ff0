"""Stokes-parameter fringe curves for the superposed two-slit field.

The observation-screen field is modeled as the equal-weight sum of the two
slit-mode fields with a relative phase swept over a full period; this is a
modeling choice for a symmetric paraxial arrangement, not derived from the
slit geometry.  The 2x2 polarization matrix of the superposed field is
projected onto the first slit's polarization basis and its four Stokes
parameters are tabulated against the swept phase.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .correlations import cross_spectral_density
from .errors import PhysicsError


@dataclass(frozen=True, eq=False)
class FringeCurve:
    """Sampled Stokes parameters versus relative slit phase.

    ``stokes`` has one row per phase sample and columns s0..s3;
    ``visibilities`` holds the peak-to-trough modulation of each component
    relative to the intensity range, (max - min) / (max s0 + min s0).
    """

    phases: np.ndarray
    stokes: np.ndarray
    visibilities: np.ndarray


def fringe_curve(state, geometry, samples=64):
    """Sweep the relative slit phase and tabulate the screen Stokes parameters."""
    if geometry.slit_count != 2:
        raise ValueError(f"fringe curves are defined for two slits, got {geometry.slit_count}")
    if state.mode_count != 4:
        raise ValueError(f"state has {state.mode_count} modes, expected 4 for two slits")
    if samples < 2:
        raise ValueError(f"need at least 2 phase samples, got {samples}")

    # Phase-free Cartesian coherence blocks between slit pairs.
    blocks = {}
    for m1 in (1, 2):
        for m2 in (1, 2):
            block = np.zeros((3, 3), dtype=complex)
            for s1 in (1, 2):
                for s2 in (1, 2):
                    w = cross_spectral_density(state, (2 * (m1 - 1) + s1 - 1,), (2 * (m2 - 1) + s2 - 1,))
                    if w != 0:
                        block += w * np.outer(geometry.polarization(m1, s1).conj(), geometry.polarization(m2, s2))
            blocks[m1, m2] = geometry.intensity_scale * block

    screen_basis = np.stack([geometry.polarization(1, 1), geometry.polarization(1, 2)])
    phases = np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False)
    stokes = np.empty((samples, 4))
    for i, delta in enumerate(phases):
        cartesian = (
            blocks[1, 1]
            + blocks[2, 2]
            + blocks[1, 2] * np.exp(-1j * delta)
            + blocks[2, 1] * np.exp(1j * delta)
        )
        pol = screen_basis @ cartesian @ screen_basis.conj().T
        stokes[i, 0] = pol[0, 0].real + pol[1, 1].real
        stokes[i, 1] = pol[0, 0].real - pol[1, 1].real
        stokes[i, 2] = 2.0 * pol[0, 1].real
        stokes[i, 3] = 2.0 * pol[0, 1].imag

    s0_max, s0_min = stokes[:, 0].max(), stokes[:, 0].min()
    if s0_max + s0_min <= 0.0:
        raise PhysicsError("fringe curve undefined for vacuum")
    spans = stokes.max(axis=0) - stokes.min(axis=0)
    visibilities = spans / (s0_max + s0_min)
    return FringeCurve(phases=phases, stokes=stokes, visibilities=visibilities)

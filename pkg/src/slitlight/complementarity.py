"""Complementarity scalars and their identities, collected into reports.

The field purity is the rescaled Frobenius purity of the trace-normalized
field matrix; the particle entropy is the rescaled linear entropy of the
trace-normalized reduced photon matrix.  Their sum is one at every order.
For two slits with one active mode per slit the report also carries the
intensity distinguishability, the total visibility (intensity plus
polarization-state fringes) and the coherence degree, whose squares close
the triality identity with the particle entropy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .correlations import cross_spectral_density, reduced_density_matrix
from .errors import PhysicsError
from .fields import degree_of_coherence, field_density_matrix

RESIDUAL_TOL = 1e-10
TRIGGER_TOL = 1e-8
RANGE_SLACK = 1e-10
ACTIVE_MODE_TOL = 1e-12
VACUUM_TOL = 1e-12


@dataclass(frozen=True)
class ComplementarityReport:
    """Scalars and identity residuals for one state, geometry and order.

    ``complementarity_residual`` is field_purity + particle_entropy - 1 and
    must vanish to numerical precision for every valid report.  The triality
    fields are populated only for two slits with one active mode per slit.
    ``regimes`` names the limiting cases whose trigger condition holds:
    "coherent" (unit coherence), "incoherent" (zero coherence), "balanced"
    (equal slit intensities).
    """

    slit_count: int
    order: int
    mode_dimension: int
    mean_photon_number: float
    slit_photon_numbers: tuple[float, ...]
    field_purity: float
    particle_entropy: float
    complementarity_residual: float
    distinguishability: float | None = None
    visibility: float | None = None
    coherence: float | None = None
    triality_residual: float | None = None
    regimes: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()


def field_purity(field_matrix, mode_dimension):
    """Rescaled purity of the trace-normalized field matrix.

    Equals 1 only for a rank-one matrix and 0 when the matrix is maximally
    mixed over mode_dimension^order dimensions.
    """
    if mode_dimension < 2:
        raise ValueError(f"mode dimension must be >= 2, got {mode_dimension}")
    if field_matrix.trace_value <= 0:
        raise PhysicsError("field purity undefined for vacuum")
    weight = mode_dimension**field_matrix.order
    return weight / (weight - 1) * (field_matrix.purity - 1.0 / weight)


def particle_entropy(reduced, mode_dimension):
    """Rescaled linear entropy of the trace-normalized reduced photon matrix."""
    if mode_dimension < 2:
        raise ValueError(f"mode dimension must be >= 2, got {mode_dimension}")
    if reduced.trace_value <= 0:
        raise PhysicsError("particle entropy undefined for vacuum")
    weight = mode_dimension**reduced.order
    return weight / (weight - 1) * (1.0 - reduced.purity)


def slit_photon_numbers(state):
    """Mean photon number per slit, summed over the slit's two modes."""
    if state.mode_count % 2 != 0:
        raise ValueError(f"mode count must be even (two modes per slit), got {state.mode_count}")
    values = []
    for m in range(state.mode_count // 2):
        total = 0.0
        for s in (0, 1):
            mode = 2 * m + s
            total += cross_spectral_density(state, (mode,), (mode,)).real
        values.append(total)
    return np.array(values)


def active_modes(state, reduced=None):
    """Flat indices of modes whose single-photon row norms are non-negligible."""
    reduced = reduced if reduced is not None else reduced_density_matrix(state, 1)
    threshold = ACTIVE_MODE_TOL * max(state.mean_photon_number, VACUUM_TOL)
    row_norms = np.linalg.norm(reduced.matrix, axis=1)
    return tuple(int(k) for k in np.nonzero(row_norms > threshold)[0])


def active_mode_count(state):
    return len(active_modes(state))


def distinguishability(state):
    """Normalized slit-intensity imbalance |n1 - n2| / (n1 + n2), two slits only."""
    if state.mode_count != 4:
        raise ValueError(f"distinguishability is defined for two slits, got {state.mode_count // 2}")
    n1, n2 = slit_photon_numbers(state)
    if n1 + n2 <= VACUUM_TOL:
        raise PhysicsError("distinguishability undefined for vacuum")
    return abs(n1 - n2) / (n1 + n2)


def total_visibility(state, geometry):
    """Fringe visibility covering intensity and polarization-state modulation.

    2 sqrt(n1 n2) / (n1 + n2) times the degree of coherence.  With exactly
    one dark slit the product vanishes, so 0 is returned by convention
    instead of erroring on the undefined coherence.
    """
    if geometry.slit_count != 2:
        raise ValueError(f"total visibility is defined for two slits, got {geometry.slit_count}")
    n1, n2 = slit_photon_numbers(state)
    if n1 + n2 <= VACUUM_TOL:
        raise PhysicsError("total visibility undefined for vacuum")
    if min(n1, n2) <= VACUUM_TOL * max(n1, n2):
        return 0.0
    coherence = degree_of_coherence(state, geometry, (1, 2))
    return 2.0 * math.sqrt(n1 * n2) / (n1 + n2) * coherence


def _range_warnings(values):
    warnings = []
    for name, value in values:
        if value is None:
            continue
        if value < -RANGE_SLACK or value > 1.0 + RANGE_SLACK:
            warnings.append(f"{name}={value!r} outside [0, 1]")
    return warnings


def order_n_complementarity(state, geometry, order, mode_dimension=None):
    """Field purity and particle entropy at one order, with their residual.

    ``mode_dimension`` defaults to the full 2L; any value in {2, ..., 2L}
    is admissible since the identity is affine in the shared purity.
    """
    if state.mode_count != 2 * geometry.slit_count:
        raise ValueError(
            f"state has {state.mode_count} modes but the geometry's {geometry.slit_count} "
            f"slits need {2 * geometry.slit_count}"
        )
    kappa = 2 * geometry.slit_count if mode_dimension is None else int(mode_dimension)
    if not 2 <= kappa <= 2 * geometry.slit_count:
        raise ValueError(f"mode dimension must lie in [2, {2 * geometry.slit_count}], got {kappa}")
    reduced = reduced_density_matrix(state, order)
    if reduced.trace_value <= VACUUM_TOL:
        raise PhysicsError(f"order-{order} correlations vanish for this state")
    field_matrix = field_density_matrix(state, geometry, order)
    purity = field_purity(field_matrix, kappa)
    entropy = particle_entropy(reduced, kappa)
    warnings = _range_warnings([("field_purity", purity), ("particle_entropy", entropy)])
    return ComplementarityReport(
        slit_count=geometry.slit_count,
        order=order,
        mode_dimension=kappa,
        mean_photon_number=state.mean_photon_number,
        slit_photon_numbers=tuple(float(v) for v in slit_photon_numbers(state)),
        field_purity=float(purity),
        particle_entropy=float(entropy),
        complementarity_residual=float(purity + entropy - 1.0),
        warnings=tuple(warnings),
    )


def single_mode_per_slit(state):
    """True when no slit has more than one active mode."""
    per_slit = {}
    for mode in active_modes(state):
        per_slit[mode // 2] = per_slit.get(mode // 2, 0) + 1
    return all(count <= 1 for count in per_slit.values())


def triality_report(state, geometry):
    """First-order report with distinguishability, visibility and triality.

    Requires two slits with at most one active mode per slit; the purity and
    entropy are then taken at mode dimension 2.  With exactly one dark slit
    the visibility is 0 by convention and a warning is attached.
    """
    if geometry.slit_count != 2:
        raise ValueError(f"triality report needs two slits, got {geometry.slit_count}")
    if not single_mode_per_slit(state):
        raise ValueError(
            "triality report requires one active mode per slit; "
            "use order_n_complementarity for the general identity"
        )
    n1, n2 = slit_photon_numbers(state)
    if n1 + n2 <= VACUUM_TOL:
        raise PhysicsError("triality report undefined for vacuum")
    base = order_n_complementarity(state, geometry, 1, mode_dimension=2)
    dist = distinguishability(state)
    warnings = list(base.warnings)
    dark = min(n1, n2) <= VACUUM_TOL * max(n1, n2)
    if dark:
        visibility = 0.0
        coherence = None
        warnings.append("dark slit: visibility set to 0 and coherence undefined")
    else:
        coherence = degree_of_coherence(state, geometry, (1, 2))
        visibility = 2.0 * math.sqrt(n1 * n2) / (n1 + n2) * coherence
    warnings.extend(_range_warnings([("distinguishability", dist), ("visibility", visibility), ("coherence", coherence)]))

    regimes = []
    if coherence is not None and coherence >= 1.0 - TRIGGER_TOL:
        regimes.append("coherent")
    if coherence is not None and coherence <= TRIGGER_TOL:
        regimes.append("incoherent")
    if dist <= TRIGGER_TOL:
        regimes.append("balanced")

    return ComplementarityReport(
        slit_count=2,
        order=1,
        mode_dimension=2,
        mean_photon_number=base.mean_photon_number,
        slit_photon_numbers=base.slit_photon_numbers,
        field_purity=base.field_purity,
        particle_entropy=base.particle_entropy,
        complementarity_residual=base.complementarity_residual,
        distinguishability=float(dist),
        visibility=float(visibility),
        coherence=None if coherence is None else float(coherence),
        triality_residual=float(dist**2 + visibility**2 + base.particle_entropy - 1.0),
        regimes=tuple(regimes),
        warnings=tuple(warnings),
    )

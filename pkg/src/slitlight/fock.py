"""Occupation-number bases and ladder operators for K bosonic modes.

Everything works per photon-number sector: the basis of a sector is the set
of length-K occupation vectors with a fixed total, in ascending lexicographic
order.  The rank/unrank pair on that ordering is the indexing contract used
by every other module.  All functions are pure; cached arrays are returned
read-only and may be shared across threads.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapacityError

#: Default cap on element counts (vector lengths, matrix element counts).
DEFAULT_ELEMENT_CAP = 1_000_000

#: Environment variable overriding the element cap.
CAP_ENV_VAR = "SLITLIGHT_SIZE_CAP"

#: Amplitudes below this are zeroed when normalizing pure vectors.
PRUNE_TOL = 1e-14


def element_cap():
    """Current size cap, honoring the environment override."""
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_ELEMENT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{CAP_ENV_VAR} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"{CAP_ENV_VAR} must be positive, got {cap}")
    return cap


def ensure_capacity(elements, what):
    """Refuse objects larger than the configured cap, naming the offender."""
    cap = element_cap()
    if elements > cap:
        raise CapacityError(f"{what} needs {elements} elements, exceeding the size cap {cap}")


@dataclass(frozen=True)
class ModeLabel:
    """Slit/polarization address of a single field mode.

    Slits are numbered from 1; polarization is 1 or 2.  Flat indices are
    slit-major: ``flat_index = 2 * (slit - 1) + (polarization - 1)``.
    """

    slit: int
    polarization: int

    def __post_init__(self):
        if self.slit < 1:
            raise ValueError(f"slit must be >= 1, got {self.slit}")
        if self.polarization not in (1, 2):
            raise ValueError(f"polarization must be 1 or 2, got {self.polarization}")

    @property
    def flat_index(self):
        return 2 * (self.slit - 1) + (self.polarization - 1)

    @classmethod
    def from_flat(cls, index):
        if index < 0:
            raise ValueError(f"flat index must be >= 0, got {index}")
        return cls(slit=index // 2 + 1, polarization=index % 2 + 1)


def flat_index(mode, mode_count):
    """Normalize a mode given as ModeLabel or flat int, with range check."""
    idx = mode.flat_index if isinstance(mode, ModeLabel) else int(mode)
    if not 0 <= idx < mode_count:
        raise ValueError(f"mode index {idx} out of range for {mode_count} modes")
    return idx


def basis_dimension(mode_count, photon_count):
    """Number of ways to put ``photon_count`` photons into ``mode_count`` modes."""
    return math.comb(photon_count + mode_count - 1, mode_count - 1)


def _occupations(mode_count, total):
    # Ascending lexicographic by construction: first entry grows outermost.
    if mode_count == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _occupations(mode_count - 1, total - first):
            yield (first,) + rest


class BlockBasis:
    """Ordered basis of one photon-number sector with rank/unrank lookup."""

    def __init__(self, mode_count, photon_count):
        if mode_count < 1:
            raise ValueError(f"mode count must be >= 1, got {mode_count}")
        if photon_count < 0:
            raise ValueError(f"photon count must be >= 0, got {photon_count}")
        dim = basis_dimension(mode_count, photon_count)
        ensure_capacity(dim, f"basis of {photon_count} photons in {mode_count} modes (dimension {dim})")
        self.mode_count = mode_count
        self.photon_count = photon_count
        self.states = tuple(_occupations(mode_count, photon_count))
        self._rank = {occ: i for i, occ in enumerate(self.states)}

    @property
    def dimension(self):
        return len(self.states)

    def index(self, occupations):
        """Rank of an occupation vector in the lexicographic ordering."""
        occ = tuple(int(c) for c in occupations)
        try:
            return self._rank[occ]
        except KeyError:
            raise ValueError(
                f"{occ} is not a {self.photon_count}-photon occupation vector "
                f"over {self.mode_count} modes"
            ) from None

    def state(self, index):
        """Occupation vector at a given rank; inverse of :meth:`index`."""
        return self.states[index]


@lru_cache(maxsize=None)
def block_basis(mode_count, photon_count):
    return BlockBasis(mode_count, photon_count)


def enumerate_basis(mode_count, photon_count):
    """All occupation vectors of the sector, lexicographically sorted."""
    dim = basis_dimension(mode_count, photon_count)
    # Checked per call: the cached basis may predate a lowered cap.
    ensure_capacity(dim, f"basis of {photon_count} photons in {mode_count} modes (dimension {dim})")
    return block_basis(mode_count, photon_count).states


def apply_annihilation(mode_count, photon_count, amplitudes, mode):
    """Apply one annihilation operator to a sector amplitude vector.

    Each basis entry with count ``c`` in ``mode`` maps to the lowered entry
    scaled by sqrt(c).  The result lives in the (N-1)-photon sector and is
    not normalized.  The vacuum sector maps to the empty sector's zero
    vector (length 0) rather than raising.
    """
    idx = flat_index(mode, mode_count)
    src = block_basis(mode_count, photon_count)
    amplitudes = np.asarray(amplitudes, dtype=complex)
    if amplitudes.shape != (src.dimension,):
        raise ValueError(f"expected amplitude vector of length {src.dimension}, got shape {amplitudes.shape}")
    if photon_count == 0:
        return np.zeros(0, dtype=complex)
    dst = block_basis(mode_count, photon_count - 1)
    out = np.zeros(dst.dimension, dtype=complex)
    for i, occ in enumerate(src.states):
        c = occ[idx]
        if c == 0:
            continue
        lowered = occ[:idx] + (c - 1,) + occ[idx + 1 :]
        out[dst.index(lowered)] += math.sqrt(c) * amplitudes[i]
    return out


def apply_creation(mode_count, photon_count, amplitudes, mode):
    """Apply one creation operator; adjoint of :func:`apply_annihilation`."""
    idx = flat_index(mode, mode_count)
    src = block_basis(mode_count, photon_count)
    amplitudes = np.asarray(amplitudes, dtype=complex)
    if amplitudes.shape != (src.dimension,):
        raise ValueError(f"expected amplitude vector of length {src.dimension}, got shape {amplitudes.shape}")
    dst_dim = basis_dimension(mode_count, photon_count + 1)
    ensure_capacity(dst_dim, f"basis of {photon_count + 1} photons in {mode_count} modes (dimension {dst_dim})")
    dst = block_basis(mode_count, photon_count + 1)
    out = np.zeros(dst.dimension, dtype=complex)
    for i, occ in enumerate(src.states):
        raised = occ[:idx] + (occ[idx] + 1,) + occ[idx + 1 :]
        out[dst.index(raised)] += math.sqrt(occ[idx] + 1) * amplitudes[i]
    return out


@lru_cache(maxsize=None)
def annihilation_matrix(mode_count, photon_count, mode_index):
    """Dense matrix of one annihilation operator, (N-1)-sector by N-sector."""
    src = block_basis(mode_count, photon_count)
    if photon_count == 0:
        matrix = np.zeros((0, src.dimension), dtype=complex)
    else:
        dst = block_basis(mode_count, photon_count - 1)
        matrix = np.zeros((dst.dimension, src.dimension), dtype=complex)
        for i, occ in enumerate(src.states):
            c = occ[mode_index]
            if c == 0:
                continue
            lowered = occ[:mode_index] + (c - 1,) + occ[mode_index + 1 :]
            matrix[dst.index(lowered), i] = math.sqrt(c)
    matrix.flags.writeable = False
    return matrix


@lru_cache(maxsize=None)
def _annihilation_string_cached(mode_count, photon_count, labels):
    first, rest = labels[0], labels[1:]
    matrix = annihilation_matrix(mode_count, photon_count, first)
    for step, label in enumerate(rest, start=1):
        matrix = annihilation_matrix(mode_count, photon_count - step, label) @ matrix
    matrix = np.ascontiguousarray(matrix)
    matrix.flags.writeable = False
    return matrix


def annihilation_string(mode_count, photon_count, labels):
    """Matrix of a product of annihilation operators on one sector.

    Annihilators commute, so the result depends only on the label multiset;
    calls are cached on the sorted labels.  Strings longer than the photon
    count land in the empty sector (a 0-row matrix).
    """
    key = tuple(sorted(flat_index(m, mode_count) for m in labels))
    if not key:
        raise ValueError("annihilation string needs at least one label")
    if len(key) > photon_count:
        return np.zeros((0, basis_dimension(mode_count, photon_count)), dtype=complex)
    return _annihilation_string_cached(mode_count, photon_count, key)


def prune_small(vector, tol=PRUNE_TOL):
    """Zero out entries below ``tol`` in magnitude (round-off suppression)."""
    out = np.array(vector, dtype=complex)
    out[np.abs(out) < tol] = 0.0
    return out

"""Multiphoton state construction.

States are block-diagonal over total photon number: a probability and a
normalized density matrix per occupied sector.  The module also provides the
symmetric per-photon tensor expansion of pure sectors, which the brute-force
correlation oracle is built on, and seeded random states for property tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .fock import basis_dimension, block_basis, ensure_capacity, flat_index, prune_small

PROBABILITY_TOL = 1e-12
TRACE_TOL = 1e-10
HERMITIAN_TOL = 1e-10
PSD_FLOOR = -1e-10
NULL_NORM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class PhotonBlock:
    """One photon-number sector: its weight and unit-trace density matrix."""

    probability: float
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class MultiphotonState:
    """Block-diagonal density operator over photon-number sectors.

    ``blocks`` maps photon number N to a :class:`PhotonBlock`.  Probabilities
    sum to one; each block matrix is Hermitian, positive semidefinite and has
    unit trace.  Instances are validated on construction and treated as
    immutable.
    """

    mode_count: int
    blocks: dict[int, PhotonBlock]

    def __post_init__(self):
        _validate_state(self)

    def __eq__(self, other):
        if not isinstance(other, MultiphotonState):
            return NotImplemented
        if self.mode_count != other.mode_count or self.block_numbers() != other.block_numbers():
            return False
        return all(
            self.blocks[n].probability == other.blocks[n].probability
            and np.array_equal(self.blocks[n].matrix, other.blocks[n].matrix)
            for n in self.blocks
        )

    def block_numbers(self):
        return tuple(sorted(self.blocks))

    @property
    def mean_photon_number(self):
        return float(sum(n * blk.probability for n, blk in self.blocks.items()))

    def factorial_moment(self, order):
        """Sum of p_N * N!/(N-order)! over sectors with at least ``order`` photons."""
        return float(
            sum(blk.probability * math.perm(n, order) for n, blk in self.blocks.items() if n >= order)
        )


def _validate_state(state):
    if state.mode_count < 1:
        raise ValueError(f"mode count must be >= 1, got {state.mode_count}")
    if not state.blocks:
        raise ValueError("state needs at least one photon-number block")
    total = 0.0
    for n, blk in state.blocks.items():
        if n < 0:
            raise ValueError(f"photon number must be >= 0, got {n}")
        if blk.probability < -PROBABILITY_TOL:
            raise ValueError(f"block probability must be >= 0, got {blk.probability} at N={n}")
        total += blk.probability
        dim = basis_dimension(state.mode_count, n)
        matrix = blk.matrix
        if matrix.shape != (dim, dim):
            raise ValueError(f"block at N={n} must be {dim}x{dim}, got {matrix.shape}")
        if abs(np.trace(matrix) - 1.0) > TRACE_TOL:
            raise ValueError(f"block at N={n} must have unit trace, got {np.trace(matrix)}")
        if np.max(np.abs(matrix - matrix.conj().T)) > HERMITIAN_TOL:
            raise ValueError(f"block at N={n} is not Hermitian")
        if dim > 1 and np.linalg.eigvalsh(matrix).min() < PSD_FLOOR:
            raise ValueError(f"block at N={n} is not positive semidefinite")
    if abs(total - 1.0) > PROBABILITY_TOL:
        raise ValueError(f"block probabilities must sum to 1, got {total}")


def vacuum_state(mode_count):
    return MultiphotonState(mode_count, {0: PhotonBlock(1.0, np.ones((1, 1), dtype=complex))})


def pure_state(mode_count, photon_count, amplitudes):
    """Pure state of a single sector from amplitudes keyed by occupation vector.

    Unlisted occupation vectors carry amplitude zero; the vector is
    normalized.  An all-zero amplitude set is rejected as a null state.
    """
    basis = block_basis(mode_count, photon_count)
    vec = np.zeros(basis.dimension, dtype=complex)
    for occ, value in amplitudes.items():
        vec[basis.index(occ)] += complex(value)
    norm = np.linalg.norm(vec)
    if norm <= NULL_NORM_TOL:
        raise ValueError("null state")
    vec = prune_small(vec / norm)
    vec /= np.linalg.norm(vec)
    return MultiphotonState(mode_count, {photon_count: PhotonBlock(1.0, np.outer(vec, vec.conj()))})


def single_photon_state(mode_count, amplitudes_by_mode):
    """Single-photon pure state with one amplitude per flat mode index."""
    amplitudes_by_mode = list(amplitudes_by_mode)
    if len(amplitudes_by_mode) != mode_count:
        raise ValueError(f"expected {mode_count} amplitudes, got {len(amplitudes_by_mode)}")
    keyed = {}
    for k, value in enumerate(amplitudes_by_mode):
        occ = tuple(1 if j == k else 0 for j in range(mode_count))
        keyed[occ] = value
    return pure_state(mode_count, 1, keyed)


def two_photon_superposition(c1, c2, c3, slit_count=1):
    """Two-photon superposition c1|20> + c2|02> + c3|11> over two modes.

    With one slit the modes are its two polarizations; with two slits the
    pair is placed one mode per slit (polarization 1 in each).
    """
    if slit_count == 1:
        mode_a, mode_b, mode_count = 0, 1, 2
    elif slit_count == 2:
        mode_a, mode_b, mode_count = 0, 2, 4
    else:
        raise ValueError(f"two-photon superposition supports 1 or 2 slits, got {slit_count}")

    def occ(count_a, count_b):
        counts = [0] * mode_count
        counts[mode_a], counts[mode_b] = count_a, count_b
        return tuple(counts)

    return pure_state(mode_count, 2, {occ(2, 0): c1, occ(0, 2): c2, occ(1, 1): c3})


def mix(components):
    """Convex combination of states; weights are renormalized.

    Blocks sharing a photon number are merged with combined weights.
    """
    components = [(float(w), state) for w, state in components]
    if not components:
        raise ValueError("mixture needs at least one component")
    if any(w < 0 for w, _ in components):
        raise ValueError("mixture weights must be >= 0")
    total = sum(w for w, _ in components)
    if total <= 0:
        raise ValueError("mixture weights sum to zero")
    mode_count = components[0][1].mode_count
    if any(state.mode_count != mode_count for _, state in components):
        raise ValueError("all mixture components must share the mode count")

    probs = {}
    sums = {}
    for weight, state in components:
        for n, blk in state.blocks.items():
            share = weight / total * blk.probability
            if share == 0.0:
                continue
            probs[n] = probs.get(n, 0.0) + share
            if n in sums:
                sums[n] = sums[n] + share * blk.matrix
            else:
                sums[n] = share * blk.matrix
    blocks = {n: PhotonBlock(p, sums[n] / p) for n, p in probs.items()}
    return MultiphotonState(mode_count, blocks)


def _pure_vector(block):
    """Amplitude vector of a pure sector given as a vector or density matrix."""
    arr = np.asarray(block, dtype=complex)
    if arr.ndim == 1:
        return arr
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected an amplitude vector or square matrix, got shape {arr.shape}")
    evals, evecs = np.linalg.eigh(arr)
    if arr.shape[0] > 1 and evals[-2] > 1e-12:
        raise ValueError("first-quantized expansion requires a pure block")
    return evecs[:, -1] * math.sqrt(max(evals[-1], 0.0))


def to_first_quantized(mode_count, photon_count, block):
    """Symmetric per-photon amplitude tensor of a pure sector.

    Returns a complex tensor of shape (K,) * N whose entry at a mode
    sequence with occupation vector v is the sector amplitude times
    sqrt(prod(v!)/N!); the tensor is invariant under photon exchange and
    keeps the squared norm of the input.
    """
    vec = _pure_vector(block)
    basis = block_basis(mode_count, photon_count)
    if vec.shape != (basis.dimension,):
        raise ValueError(f"expected amplitude vector of length {basis.dimension}, got {vec.shape}")
    ensure_capacity(mode_count**photon_count, f"first-quantized tensor of {photon_count} photons in {mode_count} modes")
    tensor = np.zeros((mode_count,) * photon_count, dtype=complex)
    n_fact = math.factorial(photon_count)
    for i, occ in enumerate(basis.states):
        if vec[i] == 0:
            continue
        weight = vec[i] * math.sqrt(math.prod(math.factorial(c) for c in occ) / n_fact)
        modes = tuple(k for k, c in enumerate(occ) for _ in range(c))
        for seq in set(permutations(modes)):
            tensor[seq] = weight
    return tensor


def from_first_quantized(tensor):
    """Collapse a symmetric per-photon tensor back to sector amplitudes.

    Inverse of :func:`to_first_quantized`: each occupation vector's amplitude
    is the sum of the tensor over its distinct mode sequences, rescaled by
    sqrt(prod(v!)/N!).
    """
    tensor = np.asarray(tensor, dtype=complex)
    photon_count = tensor.ndim
    mode_count = tensor.shape[0] if photon_count else 1
    basis = block_basis(mode_count, photon_count)
    vec = np.zeros(basis.dimension, dtype=complex)
    n_fact = math.factorial(photon_count)
    for i, occ in enumerate(basis.states):
        modes = tuple(k for k, c in enumerate(occ) for _ in range(c))
        scale = math.sqrt(math.prod(math.factorial(c) for c in occ) / n_fact)
        vec[i] = scale * sum(tensor[seq] for seq in set(permutations(modes)))
    return vec


def random_state(seed, mode_count, support, components=1, active_modes=None):
    """Seeded random state with the given photon-number support.

    Block probabilities are drawn uniformly on the simplex over ``support``;
    each block is a convex combination of ``components`` amplitude vectors
    drawn uniformly on the unit sphere (normalized complex Gaussians) with
    simplex-uniform weights.  ``active_modes`` restricts the draw to a subset
    of flat mode indices.  The result is a deterministic function of the seed.
    """
    rng = np.random.default_rng(seed)
    support = sorted({int(n) for n in support})
    if not support:
        raise ValueError("support must be non-empty")
    if any(n < 0 for n in support):
        raise ValueError("support photon numbers must be >= 0")
    if components < 1:
        raise ValueError(f"components must be >= 1, got {components}")
    if active_modes is None:
        active = tuple(range(mode_count))
    else:
        active = tuple(sorted({flat_index(m, mode_count) for m in active_modes}))
        if not active:
            raise ValueError("active_modes must be non-empty")

    probabilities = rng.dirichlet(np.ones(len(support)))
    blocks = {}
    for n, p in zip(support, probabilities):
        sub_basis = block_basis(len(active), n)
        full_basis = block_basis(mode_count, n)
        dim = full_basis.dimension
        ensure_capacity(dim * dim, f"random {n}-photon block of dimension {dim}")
        weights = rng.dirichlet(np.ones(components))
        matrix = np.zeros((dim, dim), dtype=complex)
        for w in weights:
            sub = rng.standard_normal(sub_basis.dimension) + 1j * rng.standard_normal(sub_basis.dimension)
            sub /= np.linalg.norm(sub)
            vec = np.zeros(dim, dtype=complex)
            for i, occ in enumerate(sub_basis.states):
                full_occ = [0] * mode_count
                for slot, count in zip(active, occ):
                    full_occ[slot] = count
                vec[full_basis.index(full_occ)] = sub[i]
            matrix += w * np.outer(vec, vec.conj())
        blocks[n] = PhotonBlock(float(p), matrix)
    return MultiphotonState(mode_count, blocks)

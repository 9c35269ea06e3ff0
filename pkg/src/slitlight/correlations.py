"""Normally ordered cross-spectral densities and reduced n-photon matrices.

Two independent routes are provided.  The production route applies ladder
strings inside each photon-number sector:

    tr(rho adag_{k1}..adag_{kn} a_{k'1}..a_{k'n})
        = sum_N p_N tr(rho_N A(k)^dag A(k')),

with A the matrix of the corresponding annihilation string.  The oracle
route expands each sector over symmetric per-photon tensors, forms the
factorially rescaled per-photon matrix, and contracts the trailing photon
index pairs.  The two must agree elementwise; the test suite and the CLI
audit enforce that.

Reduced matrices are indexed row-major over photon-index tuples of flat
mode labels: row (i1..in), column (j1..jn) holds the expectation with
creation labels j and annihilation labels i.  Grid evaluation is sequential
in that fixed ordering, so results are reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .fock import ensure_capacity, flat_index, annihilation_string
from .states import to_first_quantized

HERMITIAN_TOL = 1e-12
PSD_FLOOR = -1e-10
TRACE_MATCH_TOL = 1e-12
ORACLE_EIGENVALUE_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class ReducedDensityMatrix:
    """Reduced n-photon matrix: K^n by K^n, Hermitian, PSD.

    ``trace_value`` is the n-th factorial moment of the photon-number
    distribution, which the matrix trace must reproduce.
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


def photon_index_tuples(mode_count, order):
    """Row-major ordering of photon-index tuples used by all n-th order grids."""
    return tuple(product(range(mode_count), repeat=order))


def _normalize_labels(labels, mode_count):
    return tuple(flat_index(m, mode_count) for m in labels)


def cross_spectral_density(state, creation, annihilation):
    """Normally ordered expectation with the given creation/annihilation labels.

    The operator string conserves photon number, so each sector contributes
    independently; sectors with fewer photons than the order give zero.
    """
    mode_count = state.mode_count
    creation = _normalize_labels(creation, mode_count)
    annihilation = _normalize_labels(annihilation, mode_count)
    if not creation or len(creation) != len(annihilation):
        raise ValueError(
            f"need equal, non-zero numbers of creation and annihilation labels, "
            f"got {len(creation)} and {len(annihilation)}"
        )
    order = len(creation)
    total = 0j
    for n in sorted(state.blocks):
        if n < order:
            continue
        blk = state.blocks[n]
        bra = annihilation_string(mode_count, n, creation)
        ket = annihilation_string(mode_count, n, annihilation)
        total += blk.probability * np.vdot(bra, ket @ blk.matrix)
    return complex(total)


def _validate_reduced(rdm, kind="reduced"):
    matrix, trace = rdm.matrix, rdm.trace_value
    scale = max(1.0, abs(trace))
    if np.max(np.abs(matrix - matrix.conj().T)) > HERMITIAN_TOL * scale:
        raise ValueError(f"{kind} matrix at order {rdm.order} is not Hermitian")
    if abs(np.trace(matrix).real - trace) > TRACE_MATCH_TOL * scale or abs(np.trace(matrix).imag) > TRACE_MATCH_TOL * scale:
        raise ValueError(
            f"{kind} matrix trace {np.trace(matrix)} does not match the factorial moment {trace}"
        )
    if matrix.shape[0] > 1 and np.linalg.eigvalsh(matrix).min() < PSD_FLOOR * scale:
        raise ValueError(f"{kind} matrix at order {rdm.order} is not positive semidefinite")


def reduced_density_matrix(state, order):
    """Reduced n-photon matrix via ladder strings (production route)."""
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    mode_count = state.mode_count
    dim = mode_count**order
    ensure_capacity(dim * dim, f"order-{order} reduced matrix of dimension {dim}")
    tuples = photon_index_tuples(mode_count, order)
    matrix = np.zeros((dim, dim), dtype=complex)
    for n in sorted(state.blocks):
        if n < order:
            continue
        blk = state.blocks[n]
        strings = [annihilation_string(mode_count, n, labels) for labels in tuples]
        stacked = np.stack([s.ravel() for s in strings])
        applied = np.stack([(s @ blk.matrix).ravel() for s in strings])
        matrix += blk.probability * (applied @ stacked.conj().T)
    rdm = ReducedDensityMatrix(order, mode_count, matrix, state.factorial_moment(order))
    _validate_reduced(rdm)
    return rdm


def reduced_density_matrix_oracle(state, order):
    """Reduced n-photon matrix via the symmetric-tensor expansion (oracle route).

    Each sector is split into pure components by eigendecomposition
    (eigenvalues below 1e-12 dropped), expanded into per-photon tensors,
    rescaled by N!/(N-n)!, and contracted over the trailing N-n photon
    indices.  Deliberately brute force: cost grows as K^N.
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    mode_count = state.mode_count
    dim = mode_count**order
    ensure_capacity(dim * dim, f"order-{order} reduced matrix of dimension {dim}")
    matrix = np.zeros((dim, dim), dtype=complex)
    for n in sorted(state.blocks):
        if n < order:
            continue
        blk = state.blocks[n]
        ensure_capacity(mode_count**n, f"first-quantized tensor with {mode_count}^{n} amplitudes")
        scale = math.perm(n, order)
        evals, evecs = np.linalg.eigh(blk.matrix)
        sector = np.zeros((dim, dim), dtype=complex)
        for r in range(len(evals)):
            if evals[r] < ORACLE_EIGENVALUE_FLOOR:
                continue
            tensor = to_first_quantized(mode_count, n, evecs[:, r])
            flat = tensor.reshape(dim, mode_count ** (n - order))
            sector += evals[r] * (flat @ flat.conj().T)
        matrix += blk.probability * scale * sector
    rdm = ReducedDensityMatrix(order, mode_count, matrix, state.factorial_moment(order))
    _validate_reduced(rdm, kind="oracle reduced")
    return rdm

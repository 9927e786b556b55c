"""Lift single-particle unitaries and observables to the n-particle sector.

The lifted unitary Gamma(V) acts on the (anti)symmetric subspace; its matrix
elements are determinants (fermions) or normalized permanents (bosons) of
submatrices of V built by repeating rows/columns according to occupation
multiplicities.  Rows are indexed by the output occupation vector, columns by
the input one, which is the orientation that makes Gamma a group homomorphism
with Gamma(V) = V on the one-particle sector.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .fock import FockBasis, Statistics, creation_matrix, enumerate_basis, occupation_factorial


def permanent(M: np.ndarray) -> complex:
    """Permanent via Ryser's formula with Gray-code subset updates.

    O(2^n n) — fine at desk scale (n <= 5 everywhere in this package).
    """
    M = np.asarray(M)
    n = M.shape[0]
    if M.shape != (n, n):
        raise DimensionMismatch(f"permanent needs a square matrix, got {M.shape}")
    if n == 0:
        return 1.0 + 0.0j
    row_sums = np.zeros(n, dtype=complex)
    total = 0.0 + 0.0j
    prev_gray = 0
    sign = 1.0
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        changed = gray ^ prev_gray
        j = changed.bit_length() - 1
        if gray & changed:
            row_sums += M[:, j]
        else:
            row_sums -= M[:, j]
        # popcount parity of the Gray code of k equals the parity of k
        sign = -sign
        total += sign * np.prod(row_sums)
        prev_gray = gray
    return complex(total if n % 2 == 0 else -total)


def _lift_two_particle(V: np.ndarray, basis: FockBasis) -> np.ndarray:
    # vectorized n=2 fast path: 2x2 dets/permanents in closed form
    occ = np.array(basis.states)
    r0, r1 = occ[:, 0], occ[:, 1]
    a = V[np.ix_(r0, r0)] * V[np.ix_(r1, r1)]
    b = V[np.ix_(r0, r1)] * V[np.ix_(r1, r0)]
    if basis.statistics is Statistics.FERMIONIC:
        return a - b
    w = np.array([occupation_factorial(o) for o in basis.states])
    return (a + b) / np.sqrt(np.outer(w, w))


def lift_unitary(V: np.ndarray, basis: FockBasis) -> np.ndarray:
    """Gamma(V): the n-particle image of the d x d unitary V.

    <l|Gamma(V)|k> = det V[l, k] for fermions, per V[l, k] normalized by
    sqrt(prod m_i(l)! prod m_j(k)!) for bosons, submatrices with rows/columns
    repeated by multiplicity.
    """
    V = np.asarray(V, dtype=complex)
    if V.shape != (basis.d, basis.d):
        raise DimensionMismatch(
            f"V has shape {V.shape}, basis has d={basis.d}"
        )
    if basis.n == 1:
        return V.copy()
    if basis.n == 2:
        return _lift_two_particle(V, basis)
    D = basis.size
    G = np.empty((D, D), dtype=complex)
    fermionic = basis.statistics is Statistics.FERMIONIC
    if fermionic:
        for i, row_occ in enumerate(basis.states):
            sub = V[list(row_occ), :]
            for j, col_occ in enumerate(basis.states):
                G[i, j] = np.linalg.det(sub[:, list(col_occ)])
    else:
        norms = np.array([math.sqrt(occupation_factorial(o)) for o in basis.states])
        for i, row_occ in enumerate(basis.states):
            sub = V[list(row_occ), :]
            for j, col_occ in enumerate(basis.states):
                G[i, j] = permanent(sub[:, list(col_occ)]) / (norms[i] * norms[j])
    return G


def lift_observable(M: np.ndarray, basis: FockBasis) -> np.ndarray:
    """Second-quantized one-body operator sum_ij M_ij a+_i a_j on the n-sector.

    Hermitian for Hermitian M; its eigenvalues are sums of n eigenvalues of M
    (with repetition rules set by the statistics).
    """
    M = np.asarray(M, dtype=complex)
    if M.shape != (basis.d, basis.d):
        raise DimensionMismatch(f"M has shape {M.shape}, basis has d={basis.d}")
    lower = enumerate_basis(basis.d, basis.n - 1, basis.statistics)
    create = [creation_matrix(i, lower, basis) for i in range(basis.d)]
    O = np.zeros((basis.size, basis.size), dtype=complex)
    for i in range(basis.d):
        for j in range(basis.d):
            if M[i, j] != 0:
                O += M[i, j] * (create[i] @ create[j].T)
    return O


@dataclass(frozen=True)
class HermitianGenerator:
    """Real chart for the unitary group: d diagonal entries followed by
    (re, im) pairs for the strictly upper-triangular part, row-major."""

    d: int
    params: np.ndarray

    def matrix(self) -> np.ndarray:
        return hermitian_from_parameters(self.params, self.d)


def hermitian_from_parameters(params: np.ndarray, d: int) -> np.ndarray:
    params = np.asarray(params, dtype=float)
    if params.shape != (d * d,):
        raise DimensionMismatch(f"need {d * d} parameters for d={d}, got {params.shape}")
    H = np.zeros((d, d), dtype=complex)
    H[np.diag_indices(d)] = params[:d]
    k = d
    for i in range(d):
        for j in range(i + 1, d):
            z = params[k] + 1j * params[k + 1]
            H[i, j] = z
            H[j, i] = z.conjugate()
            k += 2
    return H


def parameters_from_hermitian(H: np.ndarray) -> np.ndarray:
    H = np.asarray(H)
    d = H.shape[0]
    params = np.empty(d * d)
    params[:d] = np.real(np.diag(H))
    k = d
    for i in range(d):
        for j in range(i + 1, d):
            params[k] = H[i, j].real
            params[k + 1] = H[i, j].imag
            k += 2
    return params


def unitary_from_parameters(g: HermitianGenerator | np.ndarray, d: int | None = None) -> np.ndarray:
    """V = exp(i H) for the Hermitian matrix encoded by the parameter vector."""
    if isinstance(g, HermitianGenerator):
        H = g.matrix()
    else:
        if d is None:
            raise DimensionMismatch("raw parameter vectors need an explicit d")
        H = hermitian_from_parameters(g, d)
    w, U = np.linalg.eigh(H)
    return (U * np.exp(1j * w)) @ U.conj().T


def parameters_from_unitary(V: np.ndarray) -> np.ndarray:
    """Principal-branch inverse chart: parameters of -i log V, Hermitized.

    Exact inverse when V's eigenvalue phases avoid the branch cut; always a
    valid starting point for local search (unitary_from_parameters of the
    result reproduces V up to the usual eig degeneracies).
    """
    w, U = np.linalg.eig(np.asarray(V, dtype=complex))
    H = (U * np.angle(w)) @ np.linalg.inv(U)
    H = (H + H.conj().T) / 2
    return parameters_from_hermitian(H)


def haar_random_unitary(d: int, seed) -> np.ndarray:
    """Haar-distributed d x d unitary: QR of a complex Ginibre matrix with the
    R diagonal phase-fixed.  `seed` is an integer or a numpy Generator."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    Z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    Q, R = np.linalg.qr(Z)
    phases = np.diag(R).copy()
    phases /= np.abs(phases)
    return Q * phases

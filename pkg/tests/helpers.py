"""Shared test utilities, including an independent tensor-power construction
of the lifted unitary used as the oracle for the determinant/permanent route."""
import itertools
import math

import numpy as np

from qcorr import FockBasis, Statistics


def perm_parity(perm) -> int:
    perm = list(perm)
    par = 1
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            par = -par
    return par


def mult_fact(occ) -> int:
    out = 1
    for _, g in itertools.groupby(occ):
        out *= math.factorial(len(list(g)))
    return out


def symmetrized_isometry(basis: FockBasis) -> np.ndarray:
    """T: n-particle sector -> d^n product space; columns are normalized
    (anti)symmetrized tensors.  Defines the reference lift T+ V^(x)n T."""
    d, n = basis.d, basis.n
    fermionic = basis.statistics is Statistics.FERMIONIC
    T = np.zeros((d**n, basis.size), dtype=complex)
    for b, occ in enumerate(basis.states):
        vec = np.zeros(d**n, dtype=complex)
        for perm in itertools.permutations(range(n)):
            sgn = perm_parity(perm) if fermionic else 1.0
            idx = 0
            for p in perm:
                idx = idx * d + occ[p]
            vec[idx] += sgn
        norm = math.factorial(n) * (1 if fermionic else mult_fact(occ))
        T[:, b] = vec / math.sqrt(norm)
    return T


def tensor_power(V: np.ndarray, n: int) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for _ in range(n):
        out = np.kron(out, V)
    return out


def reference_lift(V: np.ndarray, basis: FockBasis) -> np.ndarray:
    """Independent construction of the lifted unitary: project V^(x)n onto the
    (anti)symmetric subspace."""
    T = symmetrized_isometry(basis)
    return T.conj().T @ tensor_power(V, basis.n) @ T


def random_density(D: int, rng, rank: int | None = None) -> np.ndarray:
    rank = D if rank is None else rank
    G = rng.standard_normal((D, rank)) + 1j * rng.standard_normal((D, rank))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real


def random_pure(D: int, rng) -> np.ndarray:
    v = rng.standard_normal(D) + 1j * rng.standard_normal(D)
    return v / np.linalg.norm(v)


def plus_minus_rotation() -> np.ndarray:
    """The d=2 rotation sending (|0> + i|1>)/sqrt(2) -> |0> and its orthogonal
    partner -> |1>; the optimal basis of the two-boson worked example."""
    s = 1 / math.sqrt(2)
    return np.array([[s, -1j * s], [s, 1j * s]])

"""
Why random sampling is a weak referee above d = 2
=================================================

The optimizer's result can be cross-checked by brute force: draw Haar-random
rotations, keep the smallest disturbance seen.  That bound converges like a
nearest-neighbour distance in the d^2 - d transverse directions of the search
space, so the budget needed for a fixed accuracy explodes with d.  Here we
print the sampling bound against the optimizer for growing budgets.
"""
import numpy as np

from qcorr import (
    OptimizerConfig,
    Statistics,
    enumerate_basis,
    quantumness,
    quantumness_oracle,
)

state_rng = np.random.default_rng(1)


def random_density(D, rng):
    A = rng.normal(size=(D, D)) + 1j * rng.normal(size=(D, D))
    rho = A @ A.conj().T
    return rho / np.trace(rho).real


budgets = [100, 1_000, 10_000, 100_000]

for d in (2, 3):
    basis = enumerate_basis(d, 2, Statistics.BOSONIC)
    rho = random_density(basis.size, state_rng)
    q = quantumness(rho, basis, OptimizerConfig(restarts=8, seed=0)).q_value
    print(f"\nd = {d} bosonic pair, optimizer Q = {q:.8f}")
    print(f"  {'samples':>8s}  {'sampling bound':>14s}  {'excess':>10s}")
    for m in budgets:
        bound = quantumness_oracle(rho, basis, m, seed=42)
        print(f"  {m:8d}  {bound:14.8f}  {bound - q:10.2e}")

print("\nAt d = 2 the bound closes quickly; at d = 3 even 1e5 draws sit far")
print("above the optimizer, which is why optimizer-vs-sampling comparisons")
print("need either d = 2 or a much larger budget to be sharp.")

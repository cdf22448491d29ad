"""Tour of the block decomposition of (C^2)^{x n} and (C^3)^{x n}.

The n-fold tensor power splits into orthogonal blocks labelled by
partitions of n.  Each block is a product of an SU(d) irrep and a
symmetric-group irrep, and every permutation-invariant measurement is
built from the block projectors.  This script prints the block table,
verifies the projector algebra numerically, and shows that three very
different ways of computing block probabilities give the same numbers.
"""

import numpy as np

from qvlcode import (
    block_prob_diagonal,
    block_prob_iid,
    block_prob_product,
    dim_sym_group,
    dim_unitary_group,
    young_indices,
    young_projectors,
)
from qvlcode.linalg import random_density

rng = np.random.default_rng(0)

print("=== block table for n = 5, d = 2 ===")
print(f"{'block':>10} {'dim SU':>7} {'dim Sn':>7} {'total':>6}")
total = 0
for lam in young_indices(5, 2):
    du, dv = dim_unitary_group(lam, 2), dim_sym_group(lam)
    total += du * dv
    print(f"{str(lam):>10} {du:>7} {dv:>7} {du * dv:>6}")
print(f"sum of block dimensions: {total} = 2^5 = {2**5}")

print()
print("=== projector algebra, n = 4, d = 3 ===")
projs = young_projectors(4, 3)
identity_residual = np.max(np.abs(sum(projs.values()) - np.eye(81)))
print(f"completeness residual  : {identity_residual:.2e}")
worst_idem = max(np.max(np.abs(p @ p - p)) for p in projs.values())
print(f"idempotency residual   : {worst_idem:.2e}")

print()
print("=== three routes to one block probability ===")
spec = np.array([0.6, 0.4])
rho = random_density(2, rng)
# rotate a diagonal state so the spectrum is (0.6, 0.4)
u, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
rho = u @ np.diag(spec) @ u.conj().T
rhon = rho
for _ in range(3):
    rhon = np.kron(rhon, rho)
print(f"{'block':>8} {'dense trace':>14} {'closed form':>14} {'product route':>14}")
for lam, p in young_projectors(4, 2).items():
    dense = np.trace(p @ rhon).real
    closed = block_prob_iid(lam, spec)
    product = block_prob_product(lam, [rho] * 4)
    print(f"{str(lam):>8} {dense:14.10f} {closed:14.10f} {product:14.10f}")

print()
print("=== diagonal route: basis vectors see exact rational weights ===")
print("for a basis vector with letter counts (3, 1):")
for lam in young_indices(4, 2):
    w = block_prob_diagonal(lam, (3, 1))
    print(f"  weight on block {lam}: {w:.6f}")
print("the dominant-block weight is 1 - n2/(n1+1) = 1 - 1/4 = 0.75")

print()
print("=== the closed form scales where matrices cannot ===")
for n in (100, 10_000, 1_000_000):
    lam = (int(0.75 * n), n - int(0.75 * n))
    from qvlcode.schur_weyl import log_block_prob_iid_two_level

    lg = log_block_prob_iid_two_level(lam[0], lam[1], 0.75, 0.25)
    print(f"n = {n:>9,}: log P(block at the typical shape) = {lg:10.4f}")

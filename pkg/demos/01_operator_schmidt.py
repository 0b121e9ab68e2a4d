"""Operator-Schmidt decompositions of bipartite states.

Any bipartite operator factors as rho = sum_i s_i X_i (x) Y_i with
orthonormal local operator frames.  The coefficients s_i are the singular
values of the realignment of rho; their number is the operator-Schmidt
rank, and their sum is the quantity every separable decomposition of rho
will later be measured against.
"""

import numpy as np

from minsep import (
    bell_state,
    max_entangled,
    normalized_form,
    operator_schmidt,
    product_state,
    random_density,
    reconstruct,
)

np.set_printoptions(precision=4, suppress=True)

# The Bell state has full operator-Schmidt rank with a flat spectrum.
bell = bell_state()
os_bell = operator_schmidt(bell)
print("Bell state:")
print("  rank D        =", os_bell.D)
print("  coefficients  =", np.asarray(os_bell.s))
print("  sum of s      =", os_bell.lambda_total)

# The local frames are Hermitian; scaled by sqrt(2) they are Pauli matrices.
print("  sqrt(2) X_1   =\n", np.sqrt(2) * os_bell.X[0])

# A product state has a single Schmidt term.
prod = product_state(np.eye(2) / 2, np.eye(2) / 2)
print("\nProduct state I/2 (x) I/2:")
print("  rank D =", operator_schmidt(prod).D, " s =", np.asarray(operator_schmidt(prod).s))

# Maximally entangled states in higher dimension: d^2 equal coefficients 1/d.
for d in (2, 3):
    os_d = operator_schmidt(max_entangled(d))
    print(f"\nmax_entangled({d}): D = {os_d.D}, all s = {os_d.s[0]:.4f}, total = {os_d.lambda_total:.4f}")

# Reconstruction is exact to numerical precision for any state.
state = random_density(seed=1, dA=2, dB=3)
os_rand = operator_schmidt(state)
residual = np.linalg.norm(reconstruct(os_rand) - state.rho)
print(f"\nrandom 2x3 state: D = {os_rand.D}, reconstruction residual = {residual:.2e}")

# Rewriting with weights p_i = s_i / sum(s) gives a separable-looking convex
# combination of (generally non-positive) local operators.
dec = normalized_form(os_bell)
print("\nNormalised convex form of the Bell state:")
print("  weights      =", np.asarray(dec.p))
print("  sum(weights) =", float(np.sum(dec.p)))
print("  A_2 (a Pauli operator, not a quantum state):\n", dec.A[1])

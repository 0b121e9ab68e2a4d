"""Shared helpers for building non-optimal decompositions and measuring how
far a decomposition sits from the proportionality structure of the optimal
family."""

import numpy as np

from minsep.decompositions import SeparableDecomposition


def random_mixed_decomposition(os, seed):
    """A valid but generically non-optimal decomposition of reconstruct(os).

    Takes a random invertible coefficient matrix F for the A side and solves
    for the B side so the weighted sum of coefficient outer products equals
    diag(s).  The result reconstructs the state exactly but violates the
    proportionality structure of cost-optimal decompositions.
    """
    rng = np.random.default_rng(seed)
    D = os.D
    while True:
        f = rng.normal(size=(D, D)) + 1j * rng.normal(size=(D, D))
        if np.linalg.cond(f) < 1e4:
            break
    p = rng.uniform(0.5, 1.5, size=D)
    p /= p.sum()
    # B coefficients solve  sum_k p_k a^k (b^k)^dag = diag(s).
    b_mat = np.diag(os.s) @ np.linalg.inv(f).conj().T @ np.diag(1.0 / p)
    a_coeff = tuple(f[:, k] for k in range(D))
    b_coeff = tuple(b_mat[:, k] for k in range(D))
    ops_a = tuple(sum(ai * x for ai, x in zip(a, os.X)) for a in a_coeff)
    ops_b = tuple(sum(np.conj(bi) * y for bi, y in zip(b, os.Y)) for b in b_coeff)
    return SeparableDecomposition(p, ops_a, ops_b, a_coeff, b_coeff)


def proportionality_violation(dec, scaling):
    """Largest relative distance of R^-1 b^k from the nonnegative ray of R a^k.

    Zero for every member of the cost-optimal family; positive otherwise.
    """
    worst = 0.0
    for a, b in zip(dec.a_coeff, dec.b_coeff):
        ra = scaling.apply(a)
        rb = scaling.apply_inverse(b)
        c = max(0.0, float(np.real(np.vdot(ra, rb))) / float(np.vdot(ra, ra).real))
        worst = max(worst, float(np.linalg.norm(rb - c * ra)) / max(np.linalg.norm(rb), 1e-300))
    return worst

import math

import numpy as np


def givens_orthogonal(n, rng, rounds=3):
    """Random orthogonal matrix as a product of plane rotations (no factorization routines)."""
    q = np.eye(n)
    for _ in range(rounds):
        for i in range(n - 1):
            for j in range(i + 1, n):
                th = rng.uniform(-math.pi, math.pi)
                c, s = math.cos(th), math.sin(th)
                qi, qj = q[:, i].copy(), q[:, j].copy()
                q[:, i] = c * qi - s * qj
                q[:, j] = s * qi + c * qj
    return q


def with_singular_values(m, n, sigma, seed):
    """A = Q1[:, :k] diag(sigma) Q2^T with Givens-built orthogonal factors."""
    rng = np.random.default_rng(seed)
    q1 = givens_orthogonal(m, rng)
    q2 = givens_orthogonal(n, rng)
    k = len(sigma)
    return (q1[:, :k] * np.asarray(sigma, float)) @ q2[:, :k].T

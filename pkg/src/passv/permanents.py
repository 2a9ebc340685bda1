"""Exact matrix permanents: a permutation-sum reference kernel and Ryser's method.

The permutation sum is the trusted oracle at factorial cost; the Ryser kernel
uses Gray-code subset iteration with running row sums for O(2^n * n) work and
is the one used by the samplers.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from .errors import SizeLimitError, ValidationError

NAIVE_LIMIT = 9
RYSER_LIMIT = 30


def _as_square(matrix) -> np.ndarray:
    arr = np.asarray(matrix)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"permanent needs a square matrix, got shape {arr.shape}")
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValidationError("matrix entries must be finite")
    return arr


def permanent_naive(matrix) -> complex:
    """Permanent by direct permutation sum. Guarded to n <= 9."""
    arr = _as_square(matrix)
    n = arr.shape[0]
    if n > NAIVE_LIMIT:
        raise SizeLimitError(
            f"permanent_naive is limited to n <= {NAIVE_LIMIT}; use permanent_ryser"
        )
    if n == 0:
        return complex(1.0)
    rows = [[complex(x) for x in row] for row in arr]
    total = 0j
    for sigma in permutations(range(n)):
        prod = complex(1.0)
        for i, j in enumerate(sigma):
            prod *= rows[i][j]
        total += prod
    return total


def permanent_ryser(matrix) -> complex:
    """Permanent via Ryser's inclusion-exclusion formula.

    Iterates column subsets in Gray-code order so each step updates the running
    row sums by a single column, giving O(2^n * n) arithmetic. Guarded to
    n <= 30; cost doubles per additional row.
    """
    arr = _as_square(matrix)
    n = arr.shape[0]
    if n > RYSER_LIMIT:
        raise SizeLimitError(f"permanent_ryser is limited to n <= {RYSER_LIMIT}")
    if n == 0:
        return complex(1.0)
    cols = [[complex(arr[i, j]) for i in range(n)] for j in range(n)]
    sums = [0j] * n
    total = 0j
    gray = 0
    subset_sign = 1  # (-1)^{|S|} for the current Gray-code subset S
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        bit = 1 << j
        gray ^= bit
        col = cols[j]
        if gray & bit:
            for i in range(n):
                sums[i] += col[i]
        else:
            for i in range(n):
                sums[i] -= col[i]
        subset_sign = -subset_sign
        prod = complex(1.0)
        for s in sums:
            prod *= s
        total += subset_sign * prod
    if n % 2:
        total = -total
    return total

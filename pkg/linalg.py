"""
Exact linear algebra over the coefficient field.

Operator matrices are numpy object arrays of Scalars. Ranks are computed by
fraction-free (Bareiss) elimination on rows whose denominators have been
cleared, so every intermediate entry is a polynomial and each division is
exact.
"""

from functools import reduce

import numpy as np

from scalars import coefficient_field


def zero_matrix(n, d):
    """d x d zero matrix over the rank-n field."""
    return np.full((d, d), coefficient_field(n).zero, dtype=object)


def identity_matrix(n, d, scale=None):
    """d x d identity (optionally times a Scalar)."""
    K = coefficient_field(n)
    matrix = zero_matrix(n, d)
    diagonal = K.one if scale is None else scale
    for i in range(d):
        matrix[i, i] = diagonal
    return matrix


def unit_matrix(n, d, i, j):
    """The matrix unit E_ij."""
    matrix = zero_matrix(n, d)
    matrix[i, j] = coefficient_field(n).one
    return matrix


def as_matrix(n, rows):
    """Build a square matrix from nested lists of Scalars / ints / strings."""
    K = coefficient_field(n)
    d = len(rows)
    matrix = zero_matrix(n, d)
    for i, row in enumerate(rows):
        if len(row) != d:
            raise ValueError(f"row {i} has {len(row)} entries, expected {d}")
        for j, value in enumerate(row):
            matrix[i, j] = K(value)
    return matrix


def commutator(a, b):
    return a @ b - b @ a


def is_zero_matrix(a):
    return not any(bool(x) for x in a.flat)


def matrices_equal(a, b):
    return a.shape == b.shape and is_zero_matrix(a - b)


def format_matrix(a):
    return [[str(x) for x in row] for row in a]


def _clear_row(row, ring):
    """Scale a row of Scalars by the lcm of its denominators; return polynomials."""
    denominators = [x.denom for x in row if x]
    if not denominators:
        return [ring.zero for _ in row]
    common = reduce(lambda p, q: p.lcm(q), denominators)
    return [x.numer * common.exquo(x.denom) if x else ring.zero for x in row]


def fraction_free_rank(rows, n):
    """
    Rank of a matrix over Q(mu, alpha, beta) by Bareiss elimination.

    Args:
        rows: List of equal-length lists of Scalars
        n: Rank of the coefficient field

    Returns:
        Rank as an int
    """
    if not rows:
        return 0
    ring = coefficient_field(n).ring
    matrix = [_clear_row(row, ring) for row in rows]
    num_rows, num_cols = len(matrix), len(matrix[0])
    rank = 0
    previous = ring.one
    for col in range(num_cols):
        if rank == num_rows:
            break
        pivot = next((r for r in range(rank, num_rows) if matrix[r][col]), None)
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        head = matrix[rank]
        for r in range(rank + 1, num_rows):
            row = matrix[r]
            lead = row[col]
            for c in range(col + 1, num_cols):
                row[c] = (head[col] * row[c] - lead * head[c]).exquo(previous)
            row[col] = ring.zero
        previous = head[col]
        rank += 1
    return rank

"""
Integer lattice Z^n indexing Gamma_mu via r -> mu.r.

Lattice points are plain tuples of ints. Python compares tuples
lexicographically, which is the PBW generator order.
"""

import itertools
import math
from enum import IntEnum

from scalars import coefficient_field


class Ordering(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def zero(n):
    return (0,) * n


def basis(n, i):
    """The i-th standard basis point epsilon_i (0-based)."""
    return tuple(1 if j == i else 0 for j in range(n))


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def neg(a):
    return tuple(-x for x in a)


def scale(c, a):
    return tuple(c * x for x in a)


def is_zero(a):
    return not any(a)


def mu_dot(m):
    """
    The linear form m -> mu.m as a Scalar.

    mu stays symbolic, so mu_dot(m) is zero only for m = 0.
    """
    K = coefficient_field(len(m))
    result = K.zero
    for mu_i, m_i in zip(K.mu, m):
        if m_i:
            result += m_i * mu_i
    return result


def lex_compare(a, b):
    """Total lexicographic order on lattice points."""
    if len(a) != len(b):
        raise ValueError(f"points of different rank: {a} vs {b}")
    if a < b:
        return Ordering.LT
    if a > b:
        return Ordering.GT
    return Ordering.EQ


def box(n, K):
    """All points of [-K, K]^n in lex order."""
    return list(itertools.product(range(-K, K + 1), repeat=n))


def multi_indices(n, degree):
    """All k in Z_+^n with |k| = degree, in lex order."""
    if n == 1:
        return [(degree,)]
    result = []
    for first in range(degree, -1, -1):
        for rest in multi_indices(n - 1, degree - first):
            result.append((first,) + rest)
    return sorted(result)


def factorial(k):
    """k! = k_1! ... k_n! for a multi-index k."""
    return math.prod(math.factorial(x) for x in k)


def monomial(s, k):
    """s^k = s_1^k_1 ... s_n^k_n for integer s."""
    return math.prod(x ** e for x, e in zip(s, k))


def parse_point(text, n=None):
    """
    Read a lattice point written as comma-separated integers, e.g. "2,-3".

    Args:
        text: The serialized point
        n: Expected rank (optional)
    """
    try:
        p = tuple(int(part) for part in text.replace(" ", "").split(","))
    except ValueError:
        raise ValueError(f"not a lattice point: {text!r}") from None
    if n is not None and len(p) != n:
        raise ValueError(f"expected {n} coordinates, got {text!r}")
    return p


def format_point(p):
    return ",".join(str(x) for x in p)

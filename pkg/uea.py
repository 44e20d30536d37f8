"""
Universal enveloping algebra U(W_mu) in PBW normal form.

Generators E_a (a in Z^n) are ordered lexicographically. A PBW monomial is a
non-decreasing word of generators; straightening uses
E_a E_b = E_b E_a + mu.(b - a) E_{a+b} whenever a > b.
"""

import logging
import math
from functools import lru_cache

import lattice
from combination import Combination
from errors import InvalidOrder
from lattice import mu_dot
from scalars import coefficient_field, format_scalar

logger = logging.getLogger(__name__)


class UEAElement(Combination):
    """
    A combination of PBW monomials (sorted tuples of lattice points).

    The empty word is the unit.
    """

    def format_key(self, key):
        if not key:
            return "1"
        return "*".join(f"E[{lattice.format_point(p)}]" for p in key)

    def __mul__(self, other):
        if isinstance(other, UEAElement):
            return uea_mul(self, other)
        return NotImplemented

    def degree(self):
        return max((len(word) for word in self.terms), default=0)


def uea_unit(n):
    return UEAElement(n, {(): 1})


def generator(a, coeff=1):
    """The PBW generator E_a as an element of U(W_mu)."""
    a = tuple(a)
    return UEAElement(len(a), {(a,): coeff})


def from_algebra(x):
    """Embed an element of W_mu into U(W_mu)."""
    return UEAElement(x.n, {(r,): c for r, c in x.terms.items()})


def _first_inversion(word):
    for i in range(len(word) - 1):
        if word[i] > word[i + 1]:
            return i
    return -1


@lru_cache(maxsize=200000)
def _normal_form(word, n):
    """
    Straighten a word into PBW form.

    Worklist rewriting; each rewrite either removes one inversion or
    shortens the word, so (length, inversions) decreases and the loop ends.

    Returns:
        Tuple of (sorted word, Scalar) pairs
    """
    K = coefficient_field(n)
    done = {}
    pending = {word: K.one}
    while pending:
        w, c = pending.popitem()
        i = _first_inversion(w)
        if i < 0:
            total = done.get(w, K.zero) + c
            if total:
                done[w] = total
            else:
                done.pop(w, None)
            continue
        a, b = w[i], w[i + 1]
        swapped = w[:i] + (b, a) + w[i + 2:]
        pending[swapped] = pending.get(swapped, K.zero) + c
        if not pending[swapped]:
            del pending[swapped]
        lam = mu_dot(lattice.sub(b, a))
        if lam:
            shorter = w[:i] + (lattice.add(a, b),) + w[i + 2:]
            pending[shorter] = pending.get(shorter, K.zero) + c * lam
            if not pending[shorter]:
                del pending[shorter]
    return tuple(sorted(done.items()))


def pbw_normalize(word, n=None):
    """
    Rewrite a word of generators into the PBW basis.

    Args:
        word: Sequence of lattice points E_{w_1} ... E_{w_k}
        n: Rank; required only for the empty word

    Returns:
        Canonical UEAElement
    """
    word = tuple(tuple(p) for p in word)
    if n is None:
        if not word:
            raise ValueError("rank n is required to normalize the empty word")
        n = len(word[0])
    return UEAElement(n, _normal_form(word, n))


def uea_mul(a, b):
    """Product in U(W_mu): concatenate words pairwise, normalize, collect."""
    if a.n != b.n:
        raise ValueError(f"rank mismatch: {a.n} vs {b.n}")
    result = UEAElement(a.n)
    for u, x in a.terms.items():
        for v, y in b.terms.items():
            for w, z in _normal_form(u + v, a.n):
                result._accumulate(w, x * y * z)
    return result


def commutator(a, b):
    return uea_mul(a, b) - uea_mul(b, a)


def anticommutator(a, b):
    """{a, b} = ab + ba."""
    return uea_mul(a, b) + uea_mul(b, a)


@lru_cache(maxsize=20000)
def differentiator(m, h, k, s):
    """
    The differentiator sum_{i=0}^m (-1)^i C(m, i) e_{k-ih} e_{s+ih} in PBW form.

    Args:
        m: Order (natural)
        h, k, s: Lattice points

    Returns:
        UEAElement
    """
    if m < 0:
        raise ValueError(f"differentiator order must be non-negative, got {m}")
    h, k, s = tuple(h), tuple(k), tuple(s)
    n = len(k)
    result = UEAElement(n)
    for i in range(m + 1):
        left = lattice.sub(k, lattice.scale(i, h))
        right = lattice.add(s, lattice.scale(i, h))
        sign = -1 if i % 2 else 1
        for w, z in _normal_form((left, right), n):
            result._accumulate(w, sign * math.comb(m, i) * z)
    return result


def omega_lhs(r, k, s, p, q, h):
    """Double binomial sum of anticommutator differences."""
    n = len(k)
    total = UEAElement(n)
    for i in range(r + 1):
        for j in range(r + 1):
            weight = (-1) ** (i + j) * math.comb(r, i) * math.comb(r, j)
            ih = lattice.scale(i, h)
            jh = lattice.scale(j, h)
            first = anticommutator(
                differentiator(r, h, lattice.sub(k, ih), lattice.sub(s, jh)),
                differentiator(r, h, lattice.add(q, ih), lattice.add(p, jh)))
            second = anticommutator(
                differentiator(r, h, lattice.sub(k, ih), lattice.sub(q, jh)),
                differentiator(r, h, lattice.add(s, ih), lattice.add(p, jh)))
            total = total + (first - second).scaled(weight)
    return total


def omega_rhs(r, k, s, p, q, h):
    """mu.(q - s) mu.(p - k + 2rh) times the order-4r differentiator."""
    two_rh = lattice.scale(2 * r, h)
    factor = mu_dot(lattice.sub(q, s)) * mu_dot(lattice.add(lattice.sub(p, k), two_rh))
    omega = differentiator(4 * r, h, lattice.add(lattice.add(k, p), two_rh),
                           lattice.sub(lattice.add(s, q), two_rh))
    return omega.scaled(factor)


def verify_omega_identity(r, k, s, p, q, h):
    """
    Check the fourfold differentiator identity for one tuple.

    Both sides are computed independently as canonical UEAElements and
    compared term by term.

    Args:
        r: Order, at least 2
        k, s, p, q, h: Lattice points

    Returns:
        Dict with 'equal', 'lhs_terms', 'rhs_terms' and the 'difference'

    Raises:
        InvalidOrder: When r < 2
    """
    if r < 2:
        raise InvalidOrder(f"the identity is stated for r >= 2, got r={r}")
    k, s, p, q, h = (tuple(x) for x in (k, s, p, q, h))
    lhs = omega_lhs(r, k, s, p, q, h)
    rhs = omega_rhs(r, k, s, p, q, h)
    difference = lhs - rhs
    if difference:
        logger.debug("omega identity fails at r=%d k=%s s=%s p=%s q=%s h=%s: %s",
                     r, k, s, p, q, h, difference)
    return {
        "equal": not difference,
        "lhs_terms": len(lhs),
        "rhs_terms": len(rhs),
        "difference": difference,
    }


def describe(u):
    """Short printable witness for a UEAElement."""
    if not u:
        return "0"
    head = list(u)[:3]
    text = " + ".join(f"({format_scalar(c)})*{u.format_key(w)}" for w, c in head)
    return text + (f" + ... ({len(u)} terms)" if len(u) > 3 else "")

"""
The solenoidal Lie algebra W_mu = A d_mu and the torus function algebra A.

A basis element t^r d_mu of W_mu is identified with e_{mu.r}; the bracket is
[t^r d_mu, t^s d_mu] = mu.(s - r) t^{r+s} d_mu.
"""

import random
from fractions import Fraction

import lattice
from combination import Combination
from lattice import mu_dot


class AlgebraElement(Combination):
    """
    An element sum_r c_r t^r d_mu of W_mu, keyed by lattice point r.

    d_mu itself is the term at r = 0.
    """

    def format_key(self, key):
        return f"e[{lattice.format_point(key)}]"


class TorusFunction(Combination):
    """
    A Laurent polynomial sum_r c_r t^r in A, keyed by lattice point r.

    The unit 1 is the term at r = 0.
    """

    def format_key(self, key):
        return f"t[{lattice.format_point(key)}]"


def e(r, coeff=1):
    """The basis element t^r d_mu (= e_{mu.r}), optionally scaled."""
    r = tuple(r)
    return AlgebraElement(len(r), {r: coeff})


def t(r, coeff=1):
    """The monomial t^r of A, optionally scaled."""
    r = tuple(r)
    return TorusFunction(len(r), {r: coeff})


def unit(n):
    return t(lattice.zero(n))


def bracket(x, y):
    """
    Lie bracket of W_mu, bilinear extension of
    [t^r d_mu, t^s d_mu] = mu.(s - r) t^{r+s} d_mu.
    """
    result = AlgebraElement(x.n)
    for r, a in x.terms.items():
        for s, b in y.terms.items():
            c = mu_dot(lattice.sub(s, r))
            if c:
                result._accumulate(lattice.add(r, s), a * b * c)
    return result


def a_action(f, x):
    """A-module structure of W_mu: t^g . (t^s d_mu) = t^{g+s} d_mu."""
    result = AlgebraElement(x.n)
    for g, a in f.terms.items():
        for s, b in x.terms.items():
            result._accumulate(lattice.add(g, s), a * b)
    return result


def derivation_action(x, f):
    """W_mu acting on A by derivations: (t^s d_mu) t^m = mu.m t^{m+s}."""
    result = TorusFunction(f.n)
    for s, a in x.terms.items():
        for m, b in f.terms.items():
            c = mu_dot(m)
            if c:
                result._accumulate(lattice.add(m, s), a * b * c)
    return result


def function_product(f, g):
    """Multiplication in A."""
    result = TorusFunction(f.n)
    for p, a in f.terms.items():
        for q, b in g.terms.items():
            result._accumulate(lattice.add(p, q), a * b)
    return result


class ElementGenerator:
    """Generate random lattice points, scalars and elements for property checks."""

    def __init__(self, seed=42):
        """
        Initialize the generator.

        Args:
            seed: Random seed for reproducibility
        """
        self.rng = random.Random(seed)

    def random_point(self, n, K=3):
        """Uniform lattice point in the box [-K, K]^n."""
        return tuple(self.rng.randint(-K, K) for _ in range(n))

    def random_nonzero_point(self, n, K=3):
        while True:
            p = self.random_point(n, K)
            if any(p):
                return p

    def random_rational(self, bound=5):
        """Small nonzero rational p/q with |p| <= bound, 1 <= q <= bound."""
        num = 0
        while num == 0:
            num = self.rng.randint(-bound, bound)
        return Fraction(num, self.rng.randint(1, bound))

    def random_element(self, n, num_terms=3, K=3):
        """Random element of W_mu with up to num_terms terms."""
        return AlgebraElement(n, [(self.random_point(n, K), self.random_rational())
                                  for _ in range(num_terms)])

    def random_homogeneous(self, n, K=3):
        return e(self.random_point(n, K), self.random_rational())

    def random_function(self, n, num_terms=2, K=3):
        """Random Laurent polynomial in A."""
        return TorusFunction(n, [(self.random_point(n, K), self.random_rational())
                                 for _ in range(num_terms)])

"""
Unit tests for the coefficient field and the lattice helpers.

Run with: python -m pytest test_scalars.py -v
or simply: python test_scalars.py
"""

import random
import unittest
from fractions import Fraction

from sympy.polys.orderings import grlex

import lattice
from errors import DivisionByZero, SpecializationPole
from lattice import Ordering
from scalars import (as_scalar, coefficient_field, divide, format_scalar, parse_scalar,
                     scalar_arith, specialize)


class TestCoefficientField(unittest.TestCase):
    """Test exact arithmetic in Q(m1..mn, a, b)."""

    def setUp(self):
        self.K = coefficient_field(2)
        self.m1, self.m2 = self.K.mu
        self.a, self.b = self.K.alpha, self.K.beta

    def test_field_is_cached(self):
        self.assertIs(coefficient_field(2), self.K)
        self.assertEqual(self.K.names, ["m1", "m2", "a", "b"])

    def test_arithmetic(self):
        x = scalar_arith(self.m1, self.m2, "add")
        self.assertEqual(scalar_arith(x, self.m2, "sub"), self.m1)
        self.assertEqual(scalar_arith(self.m1, self.a, "mul"), self.a * self.m1)
        self.assertEqual(divide(self.m1 * self.m2, self.m2), self.m1)

    def test_division_by_zero(self):
        with self.assertRaises(DivisionByZero):
            divide(self.m1, self.K.zero)
        with self.assertRaises(ZeroDivisionError):
            scalar_arith(self.a, self.a - self.a, "div")

    def test_unknown_operation(self):
        with self.assertRaises(ValueError):
            scalar_arith(self.a, self.b, "pow")

    def test_canonical_form(self):
        """Equal rational functions have identical printed forms."""
        x = parse_scalar("(m1**2 - 1)/(m1 - 1)", 2)
        self.assertEqual(x, self.m1 + 1)
        self.assertEqual(format_scalar(parse_scalar("1/(-a)", 2)),
                         format_scalar(parse_scalar("-1/a", 2)))

    def test_parse_format_roundtrip(self):
        x = parse_scalar("(2*m1 - 3*m2)/(a - 1)", 2)
        self.assertEqual(parse_scalar(format_scalar(x), 2), x)

    def test_parse_rejects_foreign_symbols(self):
        with self.assertRaises(ValueError):
            parse_scalar("z + 1", 2)
        with self.assertRaises(ValueError):
            parse_scalar("m1 +", 2)

    def test_as_scalar(self):
        self.assertEqual(as_scalar(Fraction(1, 2), 2) * 2, self.K.one)
        self.assertEqual(as_scalar("a", 2), self.a)
        self.assertIs(as_scalar(self.b, 2), self.b)
        with self.assertRaises(ValueError):
            as_scalar(coefficient_field(1).alpha, 2)

    def test_index_aliases(self):
        self.assertEqual(self.K.index("alpha"), self.K.index("a"))
        self.assertEqual(self.K.index("m2"), 1)
        with self.assertRaises(KeyError):
            self.K.index("m3")


def random_polynomial(rng, K, num_terms=3):
    gens = K.mu + [K.alpha, K.beta]
    result = K.zero
    for _ in range(num_terms):
        term = K.one * rng.randint(-3, 3)
        for g in gens:
            term = term * g ** rng.randint(0, 1)
        result = result + term
    return result


def random_scalar(rng, K):
    """A random nonzero rational function."""
    while True:
        numer, denom = random_polynomial(rng, K), random_polynomial(rng, K)
        if numer and denom:
            return numer / denom


class TestFieldLaws(unittest.TestCase):
    """Seeded checks of the field axioms and canonical form."""

    def setUp(self):
        self.K = coefficient_field(2)
        self.rng = random.Random(17)
        self.triples = [tuple(random_scalar(self.rng, self.K) for _ in range(3)) for _ in range(100)]

    def test_ring_laws(self):
        for x, y, z in self.triples:
            self.assertEqual((x + y) + z, x + (y + z))
            self.assertEqual((x * y) * z, x * (y * z))
            self.assertEqual(x * (y + z), x * y + x * z)
            self.assertEqual(x + y, y + x)
            self.assertEqual(x * y, y * x)

    def test_inverses(self):
        for x, _, _ in self.triples:
            self.assertFalse(scalar_arith(x, x, "sub"))
            self.assertEqual(divide(x, x), self.K.one)
            self.assertEqual(x * divide(self.K.one, x), self.K.one)

    def test_common_factor_cancels(self):
        for p, q, r in self.triples:
            self.assertEqual(divide(p * r, q * r), divide(p, q))
            self.assertEqual(format_scalar(divide(p * r, q * r)), format_scalar(divide(p, q)))

    def test_canonical_form_is_idempotent(self):
        for x, _, _ in self.triples:
            text = format_scalar(x)
            again = parse_scalar(text, 2)
            self.assertEqual(again, x)
            self.assertEqual(format_scalar(again), text)

    def test_graded_lex_order(self):
        self.assertEqual(self.K.ring.order, grlex)
        self.assertEqual(format_scalar(parse_scalar("m1 + a**2", 2)), "a**2 + m1")


class TestSpecialize(unittest.TestCase):
    """Test substitution of rationals for indeterminates."""

    def setUp(self):
        self.K = coefficient_field(1)
        self.m1, self.a = self.K.mu[0], self.K.alpha

    def test_partial_specialization(self):
        x = (self.m1 + self.a) / (self.a + 2)
        self.assertEqual(specialize(x, {"alpha": 2}), (self.m1 + 2) / 4)

    def test_full_specialization(self):
        x = self.m1 ** 2 - self.K.beta
        self.assertEqual(specialize(x, {"m1": 3, "b": Fraction(1, 2)}), as_scalar(Fraction(17, 2), 1))

    def test_pole(self):
        with self.assertRaises(SpecializationPole):
            specialize(1 / (self.a - 1), {"a": 1})


class TestLattice(unittest.TestCase):
    """Test lattice points, boxes and multi-indices."""

    def test_box(self):
        self.assertEqual(lattice.box(1, 1), [(-1,), (0,), (1,)])
        self.assertEqual(len(lattice.box(2, 2)), 25)
        points = lattice.box(2, 1)
        self.assertEqual(points, sorted(points))

    def test_lex_compare(self):
        self.assertEqual(lattice.lex_compare((0, 5), (1, -3)), Ordering.LT)
        self.assertEqual(lattice.lex_compare((1, 0), (1, 0)), Ordering.EQ)
        self.assertEqual(lattice.lex_compare((1, 1), (1, 0)), Ordering.GT)
        with self.assertRaises(ValueError):
            lattice.lex_compare((1,), (1, 0))

    def test_vector_helpers(self):
        self.assertEqual(lattice.add((1, 2), (3, -4)), (4, -2))
        self.assertEqual(lattice.sub((1, 2), (3, -4)), (-2, 6))
        self.assertEqual(lattice.scale(3, (1, -1)), (3, -3))
        self.assertEqual(lattice.neg((1, -1)), (-1, 1))
        self.assertEqual(lattice.basis(3, 1), (0, 1, 0))
        self.assertTrue(lattice.is_zero(lattice.zero(2)))

    def test_mu_dot(self):
        K = coefficient_field(2)
        self.assertEqual(lattice.mu_dot((1, -1)), K.mu[0] - K.mu[1])
        self.assertFalse(lattice.mu_dot((0, 0)))

    def test_multi_indices(self):
        self.assertEqual(lattice.multi_indices(2, 2), [(0, 2), (1, 1), (2, 0)])
        self.assertEqual(len(lattice.multi_indices(3, 2)), 6)
        self.assertEqual(lattice.factorial((2, 3)), 12)
        self.assertEqual(lattice.monomial((2, -1), (1, 2)), 2)

    def test_point_text(self):
        self.assertEqual(lattice.parse_point("2,-3"), (2, -3))
        self.assertEqual(lattice.parse_point(" 1, 0 ", 2), (1, 0))
        self.assertEqual(lattice.format_point((2, -3)), "2,-3")
        with self.assertRaises(ValueError):
            lattice.parse_point("1,x")
        with self.assertRaises(ValueError):
            lattice.parse_point("1,2", 3)


if __name__ == '__main__':
    unittest.main()

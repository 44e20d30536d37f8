"""
Unit tests for tensor modules, theta, annihilation order and window structure.

Run with: python -m pytest test_modules.py -v
or simply: python test_modules.py
"""

import unittest

import lattice
from errors import DegenerateInput, NotFound
from modules import (ModuleParams, ModuleVector, act, annihilates, basis_vector, classify_simple,
                     coefficient_degree, min_annihilation_order, tensor_act, tensor_coefficient,
                     theta_map, uea_act, window_structure)
from scalars import coefficient_field
from solalg import ElementGenerator, bracket
from uea import differentiator, generator, uea_mul


class TestModuleParams(unittest.TestCase):
    """Test module kinds and their parameters."""

    def test_kinds(self):
        self.assertEqual(ModuleParams.tensor(1).label(), "T(a,b)")
        self.assertEqual(ModuleParams.quotient(1).label(), "Tbar(0,0)")
        self.assertEqual(ModuleParams.trivial(2).label(), "trivial")
        with self.assertRaises(ValueError):
            ModuleParams(1, kind="dual")

    def test_offsets(self):
        self.assertEqual(len(ModuleParams.tensor(2).offsets(2)), 25)
        self.assertEqual(len(ModuleParams.quotient(2).offsets(2)), 24)
        self.assertEqual(ModuleParams.trivial(2).offsets(2), [(0, 0)])

    def test_beta_mode(self):
        self.assertEqual(ModuleParams.tensor(1, 0, 0).beta_mode, "integral")
        self.assertEqual(ModuleParams.tensor(1).beta_mode, "generic")


class TestTensorAction(unittest.TestCase):
    """Test e_k v_m = (beta + mu.m + alpha mu.k) v_{m+k}."""

    def test_coefficient(self):
        K = coefficient_field(2)
        params = ModuleParams.tensor(2)
        image = tensor_act((1, 0), basis_vector((0, 2)), params)
        expected = K.beta + 2 * K.mu[1] + K.alpha * K.mu[0]
        self.assertEqual(image, ModuleVector(2, {(1, 2): expected}))

    def test_quotient_drops_zero(self):
        params = ModuleParams.quotient(1)
        self.assertFalse(tensor_act((-1,), basis_vector((1,)), params))
        self.assertTrue(tensor_act((1,), basis_vector((1,)), params))

    def test_trivial_acts_by_zero(self):
        params = ModuleParams.trivial(1)
        self.assertFalse(tensor_act((1,), basis_vector((0,)), params))
        self.assertFalse(tensor_coefficient((0,), (0,), params))

    def test_module_axiom(self):
        gen = ElementGenerator(seed=21)
        for params in (ModuleParams.tensor(2), ModuleParams.tensor(2, 1, 0), ModuleParams.quotient(2),
                       ModuleParams.trivial(2)):
            for _ in range(30):
                x, y = gen.random_element(2, 2), gen.random_element(2, 2)
                v = ModuleVector(2, [(m, gen.random_rational()) for m in params.offsets(1)[:3]])
                lhs = act(x, act(y, v, params), params) - act(y, act(x, v, params), params)
                self.assertEqual(lhs, act(bracket(x, y), v, params))

    def test_uea_act_matches_repeated_action(self):
        params = ModuleParams.tensor(1)
        word = uea_mul(generator((2,)), generator((-1,)))
        v = basis_vector((1,))
        expected = tensor_act((2,), tensor_act((-1,), v, params), params)
        self.assertEqual(uea_act(word, v, params), expected)


class TestTheta(unittest.TestCase):
    """Test the intertwiner T(0, beta) -> T(1, beta)."""

    def test_intertwines(self):
        gen = ElementGenerator(seed=5)
        for beta in (None, 0):
            source = ModuleParams.tensor(2, 0, beta)
            target = ModuleParams.tensor(2, 1, beta)
            for _ in range(50):
                k, s = gen.random_point(2, 3), gen.random_point(2, 3)
                v = basis_vector(s)
                self.assertEqual(theta_map(tensor_act(k, v, source), beta),
                                 tensor_act(k, theta_map(v, beta), target))

    def test_kernel_in_integral_case(self):
        self.assertFalse(theta_map(basis_vector((0, 0)), 0))
        self.assertTrue(theta_map(basis_vector((0, 0))))


class TestAnnihilation(unittest.TestCase):
    """Test the least annihilating differentiator order."""

    def test_order_three_on_generic_tensor_module(self):
        gen = ElementGenerator(seed=9)
        for n, count in ((1, 50), (2, 10)):
            params = ModuleParams.tensor(n)
            for _ in range(count):
                h, k, s = gen.random_nonzero_point(n, 2), gen.random_point(n, 2), gen.random_point(n, 2)
                self.assertEqual(min_annihilation_order(h, k, s, params), 3)
                ok, witness = annihilates(2, h, k, s, params)
                self.assertFalse(ok)
                self.assertIsNotNone(witness)

    def test_coefficient_degree(self):
        self.assertEqual(coefficient_degree((1,), (2,), (0,), ModuleParams.tensor(1)), 2)
        self.assertEqual(coefficient_degree((1,), (2,), (0,), ModuleParams.tensor(1, 0)), 1)
        self.assertEqual(coefficient_degree((1,), (2,), (0,), ModuleParams.trivial(1)), -1)

    def test_special_alpha_lowers_the_order(self):
        for alpha in (0, 1):
            params = ModuleParams.tensor(1, alpha)
            self.assertEqual(min_annihilation_order((1,), (2,), (-1,), params), 2)

    def test_trivial_module(self):
        self.assertEqual(min_annihilation_order((1,), (0,), (0,), ModuleParams.trivial(1)), 0)

    def test_h_zero(self):
        with self.assertRaises(DegenerateInput):
            min_annihilation_order((0,), (1,), (1,), ModuleParams.tensor(1))
        with self.assertRaises(ValueError):
            min_annihilation_order((0, 0), (1, 0), (1, 0), ModuleParams.tensor(2))

    def test_search_bound(self):
        with self.assertRaises(NotFound):
            min_annihilation_order((1,), (1,), (1,), ModuleParams.tensor(1), m_max=2)

    def test_differentiator_acts_by_finite_difference(self):
        params = ModuleParams.tensor(1)
        zero = lattice.zero(1)
        image = uea_act(differentiator(3, (1,), (2,), (-1,)), basis_vector(zero), params)
        self.assertFalse(image)


class TestWindowStructure(unittest.TestCase):
    """Test reachability closures on windows."""

    def test_generic_is_cyclic(self):
        structure = window_structure(ModuleParams.tensor(2), 3)
        self.assertTrue(structure["cyclic"])
        self.assertEqual(structure["vanishing_steps"], 0)

    def test_alpha_zero_beta_zero_invariant_line(self):
        structure = window_structure(ModuleParams.tensor(1, 0, 0), 3)
        self.assertEqual(structure["invariant_subspaces"], [[(0,)]])

    def test_alpha_one_beta_zero_codimension_one(self):
        params = ModuleParams.tensor(1, 1, 0)
        structure = window_structure(params, 3)
        everything_but_zero = [m for m in params.offsets(3) if m != (0,)]
        self.assertEqual(structure["invariant_subspaces"], [everything_but_zero])

    def test_classification(self):
        for params in (ModuleParams.tensor(1), ModuleParams.tensor(1, 0, 0), ModuleParams.tensor(1, 1, 0),
                       ModuleParams.tensor(1, 0, 1), ModuleParams.quotient(1), ModuleParams.trivial(1)):
            result = classify_simple(params, 3)
            self.assertTrue(result["agrees"], params.label())
        self.assertFalse(classify_simple(ModuleParams.tensor(2, 1, 0), 2)["expected"]["simple"])

    def test_small_window_rejected(self):
        with self.assertRaises(ValueError):
            window_structure(ModuleParams.tensor(1), 1)


if __name__ == '__main__':
    unittest.main()

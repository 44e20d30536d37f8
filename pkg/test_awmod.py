"""
Unit tests for JetReps, AW-modules, polynomial fitting and the jet commutant.

Run with: python -m pytest test_awmod.py -v
or simply: python test_awmod.py
"""

import os
import unittest

import lattice
from awmod import (SAMPLE_REPS, AWModule, JetRep, OperatorPolynomial, alpha_rep, aw_construct,
                   commutant_check, compatibility_holds, dump_jet_rep, extract_D, fiber_vector,
                   fit_nodes, fit_polynomial, jet_bracket, load_jet_rep, module_axiom_holds,
                   nilpotent_rep, one_dim_reps, parse_jet_rep, quadratic_rep, random_aw_vector,
                   tensor_concordance, verify_deform, verify_jet_brackets)
from errors import DegenerateInput, FitMismatch, InvalidRep, RepFormatError, SolenoidError
from linalg import identity_matrix, matrices_equal, unit_matrix, zero_matrix
from scalars import coefficient_field
from solalg import ElementGenerator, e, t

REPS_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "reps")


def fitted(module, K=3):
    return fit_polynomial(lambda s: extract_D(module, s), module.n, module.dim, K,
                          module.rep.degree_bound)


class TestJetRep(unittest.TestCase):
    """Test the bracket relations of jet-algebra representations."""

    def test_sample_reps_are_valid(self):
        for n in (1, 2, 3):
            for name, factory in SAMPLE_REPS.items():
                rep = factory(n)
                self.assertEqual(rep.bracket_defects(), [], (name, n))

    def test_specialized_alpha(self):
        rep = alpha_rep(1, 0)
        self.assertEqual(rep.rho, {})
        self.assertEqual(rep.validate(), rep)

    def test_invalid_rep(self):
        rep = JetRep(1, 2, {(1,): unit_matrix(1, 2, 0, 1), (2,): unit_matrix(1, 2, 1, 0)}, 2)
        with self.assertRaises(InvalidRep):
            rep.validate()
        with self.assertRaises(InvalidRep):
            aw_construct(rep)

    def test_bad_shapes(self):
        with self.assertRaises(InvalidRep):
            JetRep(1, 2, {(1,): identity_matrix(1, 3)}, 1)
        with self.assertRaises(InvalidRep):
            JetRep(1, 1, {(3,): identity_matrix(1, 1)}, 2)
        with self.assertRaises(InvalidRep):
            JetRep(2, 1, {(0, 0): identity_matrix(2, 1)}, 1)

    def test_jet_bracket(self):
        m1, m2 = coefficient_field(2).mu
        self.assertEqual(jet_bracket((1, 0), (0, 1)), {(1, 0): m2, (0, 1): -m1})
        self.assertEqual(jet_bracket((1,), (1,)), {})


class TestAWModule(unittest.TestCase):
    """Test the module built from jet data."""

    def test_alpha_rep_is_tensor_module(self):
        K = coefficient_field(1)
        module = aw_construct(alpha_rep(1))
        image = module.act_basis((2,), fiber_vector((3,), 0))
        expected = 3 * K.mu[0] + K.beta + 2 * K.alpha * K.mu[0]
        self.assertEqual(image.coefficient(((5,), 0)), expected)

    def test_extract_D(self):
        K = coefficient_field(2)
        module = aw_construct(nilpotent_rep(2))
        s = (1, -2)
        weight = K.mu[0] - 2 * K.mu[1]
        expected = identity_matrix(2, 2, K.beta + K.alpha * weight) + unit_matrix(2, 2, 0, 1) * weight
        self.assertTrue(matrices_equal(extract_D(module, s), expected))
        self.assertTrue(matrices_equal(extract_D(module, (0, 0)), identity_matrix(2, 2, K.beta)))

    def test_beta_modes(self):
        rep = alpha_rep(1)
        self.assertEqual(aw_construct(rep, "integral").beta, coefficient_field(1).zero)
        self.assertEqual(aw_construct(rep, 3).beta, 3)
        self.assertEqual(aw_construct(rep).beta, coefficient_field(1).beta)

    def test_deform_identity(self):
        for n in (1, 2):
            window = lattice.box(n, 2)
            for factory in SAMPLE_REPS.values():
                module = aw_construct(factory(n))
                for s in window:
                    for m in window:
                        self.assertTrue(verify_deform(module, s, m), (module, s, m))

    def test_module_axiom_and_compatibility(self):
        gen = ElementGenerator(seed=31)
        for factory in SAMPLE_REPS.values():
            module = aw_construct(factory(2))
            for _ in range(100):
                x, y = gen.random_element(2, 2), gen.random_element(2, 2)
                f = gen.random_function(2)
                v = random_aw_vector(gen, 2, module.dim)
                self.assertTrue(module_axiom_holds(module, x, y, v))
                self.assertTrue(compatibility_holds(module, x, f, v))

    def test_function_action(self):
        module = aw_construct(nilpotent_rep(1))
        v = fiber_vector((1,), 1)
        self.assertEqual(module.act_function(t((2,)), v), fiber_vector((3,), 1))

    def test_invalid_module_breaks_the_axiom(self):
        rep = JetRep(1, 2, {(1,): unit_matrix(1, 2, 0, 1), (2,): unit_matrix(1, 2, 1, 0)}, 2)
        module = AWModule(rep)
        broken = [s for s in lattice.box(1, 2) for m in lattice.box(1, 2)
                  if not verify_deform(module, s, m)]
        self.assertTrue(broken)

    def test_tensor_concordance(self):
        for n in (1, 2):
            self.assertEqual(tensor_concordance(n, 3), [])
        self.assertEqual(tensor_concordance(1, 3, alpha=1, beta=0), [])


class TestFitting(unittest.TestCase):
    """Test recovery of D(s) as a polynomial and of rho from it."""

    def test_refit_recovers_rep(self):
        for n in (1, 2):
            for factory in SAMPLE_REPS.values():
                rep = factory(n)
                module = aw_construct(rep)
                poly = fitted(module)
                recovered = poly.to_jet_rep()
                for k in set(rep.rho) | set(recovered.rho):
                    self.assertTrue(matrices_equal(rep.matrix(k), recovered.matrix(k)), (rep, k))
                self.assertEqual(poly.beta(), module.beta)
                self.assertTrue(verify_jet_brackets(poly))
                self.assertTrue(matrices_equal(poly.evaluate((2,) * n), extract_D(module, (2,) * n)))

    def test_tensor_module_fit(self):
        K = coefficient_field(2)
        poly = fitted(aw_construct(alpha_rep(2)))
        self.assertEqual(poly.degree(), 1)
        for i in range(2):
            k = lattice.basis(2, i)
            self.assertTrue(matrices_equal(poly.derivative(k), identity_matrix(2, 1, K.alpha * K.mu[i])))

    def test_constant_samples(self):
        K = coefficient_field(1)
        constant = identity_matrix(1, 2, K.beta)
        poly = fit_polynomial(lambda s: constant, 1, 2, 2, 2)
        self.assertEqual(poly.degree(), 0)
        self.assertTrue(matrices_equal(poly.derivative((0,)), constant))

    def test_quadratic_plant(self):
        module = aw_construct(quadratic_rep(1))
        self.assertEqual(fitted(module).degree(), 2)
        with self.assertRaises(FitMismatch) as ctx:
            fit_polynomial(lambda s: extract_D(module, s), 1, 2, 3, 1)
        self.assertTrue(ctx.exception.mismatches)

    def test_box_too_small(self):
        with self.assertRaises(DegenerateInput):
            fit_polynomial(lambda s: zero_matrix(1, 1), 1, 1, 1, 3)
        with self.assertRaises(SolenoidError):
            fit_polynomial(lambda s: zero_matrix(1, 1), 1, 1, 2, 5)

    def test_fit_nodes(self):
        self.assertEqual(fit_nodes(3, 2), [-1, 0, 1])
        self.assertEqual(fit_nodes(2, 4), [-2, -1, 0, 1, 2])
        self.assertEqual(fit_nodes(1, 1), [0, 1])
        with self.assertRaises(DegenerateInput):
            fit_nodes(2, 5)

    def test_jet_bracket_violation(self):
        poly = OperatorPolynomial(1, 2, {(1,): unit_matrix(1, 2, 0, 1), (2,): unit_matrix(1, 2, 1, 0)})
        self.assertFalse(verify_jet_brackets(poly))

    def test_scalar_coefficients(self):
        K = coefficient_field(1)
        poly = OperatorPolynomial(1, 1, {(0,): identity_matrix(1, 1, K.beta),
                                         (1,): identity_matrix(1, 1, K.mu[0])})
        self.assertTrue(verify_jet_brackets(poly))

    def test_non_scalar_constant(self):
        poly = OperatorPolynomial(1, 2, {(0,): unit_matrix(1, 2, 0, 0)})
        with self.assertRaises(InvalidRep):
            poly.beta()


class TestCommutant(unittest.TestCase):
    """Test the bracket span of the truncated jet algebra."""

    def test_codimension_one(self):
        for n, p in ((1, 3), (2, 3), (3, 2)):
            report = commutant_check(n, p)
            self.assertEqual(report["codimension"], 1, (n, p))
            self.assertTrue(report["degree0_is_hyperplane"], (n, p))
            self.assertTrue(report["L0_Lj_full"], (n, p))

    def test_rank_one_details(self):
        report = commutant_check(1, 3)
        self.assertEqual(report["dim"], 3)
        self.assertEqual(report["degree0_rank"], 0)
        self.assertEqual(report["L0_Lj_rank"], {1: {"dim": 1, "rank": 1}, 2: {"dim": 1, "rank": 1}})

    def test_degree_zero_spanning_vector(self):
        report = commutant_check(2, 3)
        self.assertTrue(report["degree0_on_hyperplane"])
        self.assertEqual(report["degree0_rank"], 1)
        # one vector, up to sign: m1 x2 d_mu - m2 x1 d_mu
        self.assertIn(report["degree0_spanning"], (["(m1)*x2*d_mu + (-m2)*x1*d_mu"],
                                                   ["(-m1)*x2*d_mu + (m2)*x1*d_mu"]))

    def test_degree_zero_hyperplane_rank_three(self):
        report = commutant_check(3, 2)
        self.assertTrue(report["degree0_on_hyperplane"])
        self.assertEqual(report["degree0_rank"], 2)

    def test_degree_bound(self):
        with self.assertRaises(ValueError):
            commutant_check(1, 1)

    def test_one_dim_reps(self):
        for n, p in ((1, 3), (2, 2), (3, 2)):
            result = one_dim_reps(n, p)
            self.assertEqual(result["dimension"], 1)
            self.assertTrue(result["parametrized_by_alpha"])


class TestRepFiles(unittest.TestCase):
    """Test the JetRep text format."""

    def test_dump_then_parse(self):
        for rep in (nilpotent_rep(2), quadratic_rep(1), SAMPLE_REPS["jordan3"](1)):
            again = parse_jet_rep(dump_jet_rep(rep))
            self.assertEqual(again.dim, rep.dim)
            self.assertEqual(again.degree_bound, rep.degree_bound)
            self.assertEqual(set(again.rho), set(rep.rho))
            for k in rep.rho:
                self.assertTrue(matrices_equal(again.matrix(k), rep.matrix(k)))

    def test_shipped_files(self):
        nilpotent = load_jet_rep(os.path.join(REPS_DIR, "nilpotent_n2.txt"))
        self.assertEqual((nilpotent.n, nilpotent.dim), (2, 2))
        for k, matrix in nilpotent_rep(2).rho.items():
            self.assertTrue(matrices_equal(nilpotent.matrix(k), matrix))
        quadratic = load_jet_rep(os.path.join(REPS_DIR, "quadratic_n1.txt"))
        for k, matrix in quadratic_rep(1).rho.items():
            self.assertTrue(matrices_equal(quadratic.matrix(k), matrix))

    def test_format_errors(self):
        with self.assertRaises(RepFormatError):
            parse_jet_rep("degree_bound 1\nrho 1\n1\n")
        with self.assertRaises(RepFormatError):
            parse_jet_rep("dim 2\ndegree_bound 1\nrho 1\n1, 0\n")
        with self.assertRaises(RepFormatError):
            parse_jet_rep("dim 1\ndegree_bound 1\n")
        with self.assertRaises(RepFormatError):
            parse_jet_rep("dim x\n")
        with self.assertRaises(RepFormatError):
            parse_jet_rep("dim 1\ndegree_bound 1\nrho 1\nq + 1\n")
        with self.assertRaises(RepFormatError):
            parse_jet_rep("dim 1\ndegree_bound 1\nbogus\n")

    def test_invalid_matrices(self):
        text = "dim 2\ndegree_bound 2\nrho 1\n0, 1\n0, 0\nrho 2\n0, 0\n1, 0\n"
        with self.assertRaises(InvalidRep):
            parse_jet_rep(text)

    def test_comments_and_explicit_rank(self):
        rep = parse_jet_rep("# empty rep\ndim 1\ndegree_bound 1\nn 3  # rank\n")
        self.assertEqual(rep.n, 3)
        self.assertEqual(rep.rho, {})


if __name__ == '__main__':
    unittest.main()

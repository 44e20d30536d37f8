"""
Verification suites for the solenoidal engine.

Each suite draws its random inputs from one seeded ElementGenerator and
records named checks of the form {name, inputs, status, witness}.
"""

import logging

import lattice
from awmod import (SAMPLE_REPS, aw_construct, commutant_check, compatibility_holds,
                   extract_D, fit_polynomial, module_axiom_holds, one_dim_reps,
                   random_aw_vector, tensor_concordance, verify_deform, verify_jet_brackets)
from cover import (coinduced_eval, cover_a_act, cover_act, cover_equal, differentiator_relation,
                   evaluation_window, pi, pi_surjectivity_report, psi, psi_eval, weight_space_rank)
from errors import FitMismatch, InvalidOrder, SolenoidError
from linalg import matrices_equal
from modules import (ModuleParams, act, annihilates, basis_vector, classify_simple,
                     coefficient_degree, min_annihilation_order, tensor_act, theta_map)
from scalars import format_scalar
from solalg import ElementGenerator, bracket, derivation_action, e
from uea import (commutator, describe, from_algebra, generator, pbw_normalize,
                 verify_omega_identity)

logger = logging.getLogger(__name__)

# Sample counts per suite.
JACOBI_SAMPLES = 500
PBW_SAMPLES = 200
OMEGA_SAMPLES = {1: 200, 2: 50}
OMEGA_SLOW_ORDER = 3
OMEGA_SLOW_SAMPLES = 20
ANNIHILATION_SAMPLES = 50
THETA_SAMPLES = 50
AW_SAMPLES = 100
DEFORM_WINDOW = 2
CONCORDANCE_WINDOW = 3
COMMUTANT_DEGREE = {1: 3, 2: 3, 3: 2}
COVER_SAMPLES = 100
COVER_WEIGHTS = 3


def fp(p):
    return lattice.format_point(p)


class VerificationSuite:
    """Base class for verification suites."""

    def __init__(self, name):
        """
        Initialize the suite.

        Args:
            name: Registered suite name, used as the check-name prefix
        """
        self.name = name
        self.checks = []

    def run(self, config):
        """Run every check of the suite and return the recorded checks."""
        raise NotImplementedError

    def record(self, name, inputs, passed, witness=None):
        """Record a check. On a pass the witness carries the observed values, if any."""
        check = {
            "name": f"{self.name}/{name}",
            "inputs": inputs,
            "status": "pass" if passed else "fail",
            "witness": witness,
        }
        logger.debug("%s: %s", check["name"], check["status"])
        self.checks.append(check)
        return passed

    def attempt(self, name, inputs, func):
        """
        Run func() -> (passed, witness) and record it.

        An engine error inside func is recorded as a failure with the error text as witness.
        """
        try:
            passed, witness = func()
        except SolenoidError as exc:
            passed, witness = False, f"{type(exc).__name__}: {exc}"
        return self.record(name, inputs, passed, witness)

    def generator(self, config):
        return ElementGenerator(config.seed)


def _first_failure(cases, test):
    """Return (True, None) or (False, witness) for the first failing case."""
    for case in cases:
        witness = test(case)
        if witness is not None:
            return False, witness
    return True, None


class JacobiSuite(VerificationSuite):
    """Lie-algebra laws of the bracket and PBW soundness of the enveloping algebra."""

    def __init__(self):
        super().__init__("jacobi")

    def run(self, config):
        n = config.n
        gen = self.generator(config)
        triples = [(gen.random_element(n), gen.random_element(n), gen.random_element(n))
                   for _ in range(JACOBI_SAMPLES)]
        inputs = {"n": n, "samples": JACOBI_SAMPLES}

        def antisymmetry(triple):
            x, y, _ = triple
            if bracket(x, y) != -bracket(y, x):
                return {"x": str(x), "y": str(y)}
            return None

        def jacobi(triple):
            x, y, z = triple
            total = (bracket(x, bracket(y, z)) + bracket(y, bracket(z, x))
                     + bracket(z, bracket(x, y)))
            if total:
                return {"x": str(x), "y": str(y), "z": str(z), "sum": str(total)}
            return None

        self.attempt("antisymmetry", inputs, lambda: _first_failure(triples, antisymmetry))
        self.attempt("jacobi", inputs, lambda: _first_failure(triples, jacobi))

        def random_word():
            word = [gen.random_point(n, 2) for _ in range(gen.rng.randint(1, 2))]
            return pbw_normalize(word).scaled(gen.random_rational())

        words = [(random_word(), random_word(), random_word()) for _ in range(PBW_SAMPLES)]

        def associativity(triple):
            a, b, c = triple
            if (a * b) * c != a * (b * c):
                return {"a": describe(a), "b": describe(b), "c": describe(c)}
            return None

        self.attempt("pbw-associativity", {"n": n, "samples": PBW_SAMPLES},
                     lambda: _first_failure(words, associativity))

        half = 2 if n <= 2 else 1
        pairs = [(a, b) for a in lattice.box(n, half) for b in lattice.box(n, half)]

        def reproduces_bracket(pair):
            a, b = pair
            if commutator(generator(a), generator(b)) != from_algebra(bracket(e(a), e(b))):
                return {"a": fp(a), "b": fp(b)}
            return None

        self.attempt("pbw-commutator", {"n": n, "window": half},
                     lambda: _first_failure(pairs, reproduces_bracket))
        return self.checks


class OmegaSuite(VerificationSuite):
    """The fourfold differentiator identity on seeded tuples."""

    def __init__(self, name="omega", order=None, samples=None):
        super().__init__(name)
        self.order = order
        self.samples = samples

    def run(self, config):
        n = config.n
        r = self.order or config.r
        samples = self.samples or (OMEGA_SAMPLES.get(n, 20) if r <= 2 else OMEGA_SLOW_SAMPLES)
        gen = self.generator(config)
        tuples = [tuple(gen.random_point(n, 2) for _ in range(5)) for _ in range(samples)]

        def identities():
            lhs_terms = rhs_terms = 0
            for k, s, p, q, h in tuples:
                result = verify_omega_identity(r, k, s, p, q, h)
                if not result["equal"]:
                    return False, {"k": fp(k), "s": fp(s), "p": fp(p), "q": fp(q), "h": fp(h),
                                   "difference": describe(result["difference"])}
                lhs_terms += result["lhs_terms"]
                rhs_terms += result["rhs_terms"]
            return True, {"identities": {"checked": len(tuples), "lhs_terms": lhs_terms,
                                         "rhs_terms": rhs_terms}}

        self.attempt("identity", {"n": n, "r": r, "samples": samples}, identities)

        def order_guard():
            zero = lattice.zero(n)
            try:
                verify_omega_identity(1, zero, zero, zero, zero, lattice.basis(n, 0))
            except InvalidOrder:
                return True, None
            return False, "r=1 accepted"

        self.attempt("order-guard", {"r": 1}, order_guard)
        return self.checks


class AnnihilationSuite(VerificationSuite):
    """Least annihilating differentiator order on tensor modules."""

    def __init__(self):
        super().__init__("annihilation")

    def run(self, config):
        n = config.n
        params = config.tensor_params()
        gen = self.generator(config)
        cases = [(gen.random_nonzero_point(n, 2), gen.random_point(n, 2), gen.random_point(n, 2))
                 for _ in range(ANNIHILATION_SAMPLES)]
        inputs = {"module": params.label(), "samples": ANNIHILATION_SAMPLES}

        def order(case):
            h, k, s = case
            expected = coefficient_degree(h, k, s, params) + 1
            found = min_annihilation_order(h, k, s, params)
            if found != expected:
                return {"h": fp(h), "k": fp(k), "s": fp(s), "order": found, "expected": expected}
            if config.alpha is None and found != 3:
                return {"h": fp(h), "k": fp(k), "s": fp(s), "order": found, "expected": 3}
            ok, witness = annihilates(found - 1, h, k, s, params)
            if ok:
                return {"h": fp(h), "k": fp(k), "s": fp(s), "order": found,
                        "problem": f"order {found - 1} also annihilates"}
            return None

        self.attempt("min-order", inputs, lambda: _first_failure(cases, order))
        return self.checks


class TensorStructureSuite(VerificationSuite):
    """Window structure of tensor modules and the intertwiner theta."""

    def __init__(self):
        super().__init__("tensor-structure")

    def run(self, config):
        n, K = config.n, config.window
        modules = {
            "configured": config.tensor_params(),
            "alpha0-beta0": ModuleParams.tensor(n, 0, 0),
            "alpha1-beta0": ModuleParams.tensor(n, 1, 0),
            "quotient": ModuleParams.quotient(n),
            "trivial": ModuleParams.trivial(n),
        }
        for label, params in modules.items():
            def verdict(params=params):
                result = classify_simple(params, K)
                observed = result["observed"]
                return result["agrees"], {"expected": _jsonable(result["expected"]),
                                          "invariant": _jsonable(observed["invariant_subspaces"])}

            self.attempt(f"window/{label}", {"module": params.label(), "window": K}, verdict)

        gen = self.generator(config)
        beta = config.beta
        source = ModuleParams.tensor(n, 0, beta)
        target = ModuleParams.tensor(n, 1, beta)
        cases = [(gen.random_point(n, K), gen.random_point(n, K)) for _ in range(THETA_SAMPLES)]

        def intertwines(case):
            k, s = case
            v = basis_vector(s)
            lhs = theta_map(tensor_act(k, v, source), beta)
            rhs = tensor_act(k, theta_map(v, beta), target)
            if lhs != rhs:
                return {"k": fp(k), "s": fp(s), "lhs": str(lhs), "rhs": str(rhs)}
            return None

        self.attempt("theta-intertwines", {"beta": _bound(beta), "samples": THETA_SAMPLES},
                     lambda: _first_failure(cases, intertwines))

        def theta_kills_zero():
            image = theta_map(basis_vector(lattice.zero(n)), 0)
            return not image, str(image)

        self.attempt("theta-kernel", {"beta": "0"}, theta_kills_zero)
        return self.checks


class AWCalculusSuite(VerificationSuite):
    """AW-module construction, D(s) identities, fitting and re-extraction."""

    def __init__(self):
        super().__init__("aw-calculus")

    def run(self, config):
        n = config.n
        gen = self.generator(config)
        reps = [factory(n, config.alpha) for factory in SAMPLE_REPS.values()]
        extra = config.load_jet_rep()
        if extra is not None:
            reps.append(extra)
        beta_mode = "generic" if config.beta is None else config.beta
        for rep in reps:
            self._check_rep(rep, beta_mode, config, gen)

        def negative_control():
            module = aw_construct(SAMPLE_REPS["quadratic"](n, config.alpha), beta_mode)
            try:
                fit_polynomial(lambda s: extract_D(module, s), n, module.dim, config.window, 1)
            except FitMismatch as exc:
                return True, len(exc.mismatches)
            return False, "quadratic D(s) fitted with degree cap 1"

        self.attempt("fit-negative-control", {"rep": "quadratic", "degree_cap": 1}, negative_control)

        def concordance():
            mismatches = tensor_concordance(n, CONCORDANCE_WINDOW, config.alpha, config.beta)
            return not mismatches, [[fp(s), fp(m)] for s, m in mismatches[:5]]

        self.attempt("tensor-concordance", {"n": n, "window": CONCORDANCE_WINDOW}, concordance)
        return self.checks

    def _check_rep(self, rep, beta_mode, config, gen):
        n = config.n
        label = rep.name
        base = {"rep": label, "dim": rep.dim}
        try:
            module = aw_construct(rep, beta_mode)
        except SolenoidError as exc:
            self.record(f"{label}/construct", base, False, str(exc))
            return
        self.record(f"{label}/construct", base, True)
        cases = [(gen.random_element(n, 2), gen.random_element(n, 2), gen.random_function(n),
                  random_aw_vector(gen, n, rep.dim)) for _ in range(AW_SAMPLES)]

        def axiom(case):
            x, y, _, v = case
            return None if module_axiom_holds(module, x, y, v) else {"x": str(x), "y": str(y), "v": str(v)}

        def compatibility(case):
            x, _, f, v = case
            return None if compatibility_holds(module, x, f, v) else {"x": str(x), "f": str(f), "v": str(v)}

        samples = dict(base, samples=AW_SAMPLES)
        self.attempt(f"{label}/module-axiom", samples, lambda: _first_failure(cases, axiom))
        self.attempt(f"{label}/compatibility", samples, lambda: _first_failure(cases, compatibility))

        window = lattice.box(n, DEFORM_WINDOW)
        pairs = [(s, m) for s in window for m in window]

        def deform(pair):
            s, m = pair
            return None if verify_deform(module, s, m) else {"s": fp(s), "m": fp(m)}

        self.attempt(f"{label}/deform", dict(base, window=DEFORM_WINDOW),
                     lambda: _first_failure(pairs, deform))

        fitted = {}

        def refit():
            poly = fit_polynomial(lambda s: extract_D(module, s), n, rep.dim,
                                  config.window, rep.degree_bound)
            fitted["poly"] = poly
            recovered = poly.to_jet_rep()
            indices = set(rep.rho) | set(recovered.rho)
            wrong = [fp(k) for k in sorted(indices)
                     if not matrices_equal(rep.matrix(k), recovered.matrix(k))]
            if wrong:
                return False, {"mismatched_indices": wrong}
            if poly.beta() != module.beta:
                return False, {"constant": format_scalar(poly.beta())}
            return True, None

        self.attempt(f"{label}/refit", dict(base, degree_cap=rep.degree_bound), refit)

        def jet_brackets():
            poly = fitted.get("poly")
            if poly is None:
                return False, "no fitted polynomial"
            return verify_jet_brackets(poly), None

        self.attempt(f"{label}/jet-brackets", base, jet_brackets)


class JetCommutantSuite(VerificationSuite):
    """Codimension of the bracket span in the truncated jet algebra."""

    def __init__(self):
        super().__init__("jet-commutant")

    def run(self, config):
        n = config.n
        p = COMMUTANT_DEGREE.get(n, 2)
        inputs = {"n": n, "p": p}
        report = {}

        def codimension():
            report.update(commutant_check(n, p))
            return report["codimension"] == 1, {"dim": report["dim"], "rank": report["rank"]}

        self.attempt("codimension", inputs, codimension)
        if report:
            self.record("degree0-hyperplane", inputs, report["degree0_is_hyperplane"],
                        {"rank": report["degree0_rank"], "spanning": report["degree0_spanning"]})
            self.record("L0-Lj-full", inputs, report["L0_Lj_full"],
                        {str(j): v for j, v in report["L0_Lj_rank"].items()})

        def one_dim():
            result = one_dim_reps(n, p)
            return result["parametrized_by_alpha"], {"dimension": result["dimension"],
                                                     "line_solves": result["line_solves"]}

        self.attempt("one-dim-reps", inputs, one_dim)
        return self.checks


def expected_cover_rank(params):
    if params.kind == "trivial":
        return 0
    if params.alpha == 0 or params.alpha == 1:
        return 1
    return 2


def expected_pi_missed(params):
    """Offsets outside W_mu M: v_0 for T(1, 0) and the trivial module, none otherwise."""
    zero = lattice.zero(params.n)
    if params.kind == "trivial":
        return [zero]
    if params.kind == "tensor" and params.alpha == 1 and not params.beta:
        return [zero]
    return []


class CoverRankSuite(VerificationSuite):
    """Weight-space ranks, pi, and the two action routes on the A-cover."""

    def __init__(self):
        super().__init__("cover-rank")

    def run(self, config):
        n, K, K_eval = config.n, config.window, config.eval_window
        gen = self.generator(config)
        weights = [gen.random_point(n, 2) for _ in range(COVER_WEIGHTS)]
        modules = {
            "generic": config.tensor_params(),
            "alpha0": ModuleParams.tensor(n, 0, config.beta),
            "trivial": ModuleParams.trivial(n),
        }
        for label, params in modules.items():
            expected = expected_cover_rank(params)

            def ranks(params=params, expected=expected):
                found = {fp(lam): weight_space_rank(params, lam, K, K_eval)["rank"] for lam in weights}
                return all(r == expected for r in found.values()), {"ranks": found, "expected": expected}

            self.attempt(f"rank/{label}", {"module": params.label(), "window": K,
                                           "eval_window": K_eval,
                                           "weights": [fp(lam) for lam in weights]}, ranks)

        params = modules["generic"]
        cases = [(e(gen.random_point(n, 2), gen.random_rational()),
                  psi(e(gen.random_point(n, 2)), basis_vector(gen.random_point(n, 2))),
                  gen.random_function(n, 1, 2))
                 for _ in range(COVER_SAMPLES)]
        samples = {"module": params.label(), "samples": COVER_SAMPLES, "eval_window": K_eval}

        def equivariance(case):
            y, g, _ = case
            if pi(cover_act(y, g, params), params) != act(y, pi(g, params), params):
                return {"y": str(y), "generator": str(g)}
            return None

        def two_routes(case):
            y, g, _ = case
            acted = cover_act(y, g, params)
            for f in evaluation_window(n, K_eval):
                if psi_eval(acted, f, params) != coinduced_eval(y, g, f, params):
                    return {"y": str(y), "generator": str(g), "f": str(f)}
            return None

        def a_compatibility(case):
            y, g, f = case
            lhs = cover_act(y, cover_a_act(f, g), params)
            rhs = cover_a_act(derivation_action(y, f), g) + cover_a_act(f, cover_act(y, g, params))
            if not cover_equal(lhs, rhs, params, K_eval):
                return {"y": str(y), "generator": str(g), "f": str(f)}
            return None

        self.attempt("pi-equivariance", samples, lambda: _first_failure(cases, equivariance))
        self.attempt("two-routes", samples, lambda: _first_failure(cases, two_routes))
        self.attempt("a-compatibility", samples, lambda: _first_failure(cases, a_compatibility))

        surjectivity = {
            "generic": params,
            "alpha1-beta0": ModuleParams.tensor(n, 1, 0),
            "trivial": ModuleParams.trivial(n),
        }
        for label, module in surjectivity.items():
            missed = expected_pi_missed(module)

            def image(module=module, missed=missed):
                result = pi_surjectivity_report(module, K)
                return result["missed"] == missed, {"missed": [fp(m) for m in result["missed"]]}

            self.attempt(f"pi-image/{label}", {"module": module.label(), "window": K}, image)

        h, k, s = lattice.basis(n, 0), gen.random_point(n, 2), gen.random_point(n, 2)
        p = gen.random_point(n, 2)
        for m, vanishes in ((3, True), (2, expected_cover_rank(params) < 2)):
            def relation(m=m, vanishes=vanishes):
                result = differentiator_relation(params, m, h, k, s, p, K_eval)
                return result["vanishes"] == vanishes, result

            self.attempt(f"differentiator-relation/m={m}",
                         {"h": fp(h), "k": fp(k), "s": fp(s), "p": fp(p)}, relation)
        return self.checks


def _bound(value):
    return None if value is None else str(value)


def _jsonable(value):
    """Lattice points inside nested lists/dicts become 'a,b' strings."""
    if isinstance(value, tuple):
        return fp(value)
    if isinstance(value, list):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


SUITES = {
    "jacobi": JacobiSuite,
    "omega": OmegaSuite,
    "omega-slow": lambda: OmegaSuite("omega-slow", OMEGA_SLOW_ORDER, OMEGA_SLOW_SAMPLES),
    "annihilation": AnnihilationSuite,
    "tensor-structure": TensorStructureSuite,
    "aw-calculus": AWCalculusSuite,
    "jet-commutant": JetCommutantSuite,
    "cover-rank": CoverRankSuite,
}

# 'all' runs everything except the opt-in slow variant.
ALL_SUITES = [name for name in SUITES if name != "omega-slow"]

SUITE_NAMES = list(SUITES) + ["all"]


def make_suite(name):
    return SUITES[name]()

"""
Run configuration and suite execution.
"""

import logging
import time
from fractions import Fraction

from awmod import load_jet_rep
from errors import ConfigError
from modules import ModuleParams
from suites import ALL_SUITES, SUITE_NAMES, make_suite

logger = logging.getLogger(__name__)


class RunConfig:
    """
    Everything one verification run depends on.

    Attributes:
        n: Rank (number of mu components)
        seed: Seed of the run's random generator
        window: Window half-width K
        eval_window: Evaluation window half-width K' for the cover
        suite: Suite name or 'all'
        alpha: Fraction binding of alpha, or None to keep it symbolic
        beta: Fraction binding of beta, or None to keep it symbolic
        r: Order used by the omega suite
        out: Report path, or None for stdout
        jet_rep: Optional path to an extra JetRep file
        timing: Whether to fill in elapsed_ms
    """

    def __init__(self, n=1, seed=1, window=3, eval_window=2, suite="all", alpha=None, beta=None,
                 r=2, out=None, jet_rep=None, timing=False):
        self.n = n
        self.seed = seed
        self.window = window
        self.eval_window = eval_window
        self.suite = suite
        self.alpha = None if alpha is None else Fraction(alpha)
        self.beta = None if beta is None else Fraction(beta)
        self.r = r
        self.out = out
        self.jet_rep = jet_rep
        self.timing = timing
        self._loaded_rep = None

    def validate(self):
        """
        Check the configuration invariants.

        Raises:
            ConfigError: On the first violated invariant
        """
        if self.n < 1:
            raise ConfigError(f"n must be at least 1, got {self.n}")
        if self.window < 2:
            raise ConfigError(f"window must be at least 2, got {self.window}")
        if self.eval_window < 1:
            raise ConfigError(f"eval window must be at least 1, got {self.eval_window}")
        if self.suite not in SUITE_NAMES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITE_NAMES)}")
        if self.r < 2:
            raise ConfigError(f"omega order r must be at least 2, got {self.r}")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        return self

    def tensor_params(self):
        """T(alpha, beta) with this run's bindings."""
        return ModuleParams.tensor(self.n, self.alpha, self.beta)

    def load_jet_rep(self):
        """The extra JetRep named by jet_rep, loaded once."""
        if self.jet_rep is None:
            return None
        if self._loaded_rep is None:
            rep = load_jet_rep(self.jet_rep)
            if rep.n != self.n:
                raise ConfigError(f"{self.jet_rep} is a rank-{rep.n} JetRep, run has n={self.n}")
            if rep.degree_bound >= 2 * self.window + 1:
                raise ConfigError(f"{self.jet_rep} has degree bound {rep.degree_bound}; "
                                  f"window {self.window} can fit at most {2 * self.window}")
            self._loaded_rep = rep
        return self._loaded_rep

    def as_dict(self):
        return {
            "n": self.n,
            "seed": self.seed,
            "window": self.window,
            "eval_window": self.eval_window,
            "suite": self.suite,
            "alpha": None if self.alpha is None else str(self.alpha),
            "beta": None if self.beta is None else str(self.beta),
            "r": self.r,
            "jet_rep": None if self.jet_rep is None else str(self.jet_rep),
        }


def run_suite(config):
    """
    Run the configured suite (or all of them) and assemble the report.

    Args:
        config: Validated RunConfig

    Returns:
        Report dict: suite, config, checks (sorted by name), passed,
        first_failure and elapsed_ms (None unless timing is on)
    """
    names = ALL_SUITES if config.suite == "all" else [config.suite]
    start = time.perf_counter()
    checks = []
    for name in names:
        logger.info("running suite %s (n=%d, seed=%d)", name, config.n, config.seed)
        suite_checks = make_suite(name).run(config)
        failed = sum(1 for c in suite_checks if c["status"] != "pass")
        logger.info("suite %s: %d checks, %d failed", name, len(suite_checks), failed)
        checks.extend(suite_checks)
    elapsed = (time.perf_counter() - start) * 1000.0
    checks.sort(key=lambda c: c["name"])
    failures = [c for c in checks if c["status"] != "pass"]
    first = failures[0] if failures else None
    return {
        "suite": config.suite,
        "config": config.as_dict(),
        "checks": checks,
        "passed": not failures,
        "first_failure": None if first is None else {"name": first["name"], "inputs": first["inputs"]},
        "elapsed_ms": round(elapsed, 3) if config.timing else None,
    }

"""
The A-cover of a cuspidal W_mu-module.

Elements of the cover are functionals A -> M spanned by
psi(x, u): f -> (f x) u. A CoverElement is stored as a formal combination of
psi(e_k, v_m) keyed by (k, m); two elements are equal when they agree on the
monomials t^f of an evaluation window.
"""

import logging
import math

import lattice
from combination import Combination
from errors import RankUnstable
from linalg import fraction_free_rank
from modules import ModuleVector, act, basis_vector, tensor_act
from scalars import coefficient_field
from solalg import a_action, bracket, derivation_action, e, t, unit

logger = logging.getLogger(__name__)


class CoverElement(Combination):
    """A combination of psi(e_k, v_m), keyed by (k, m)."""

    def format_key(self, key):
        k, m = key
        return f"psi(e[{lattice.format_point(k)}], v[{lattice.format_point(m)}])"

    def weights(self):
        """Lattice weights k + m of the terms."""
        return {lattice.add(k, m) for k, m in self.terms}


class CoverGenerator:
    """
    psi(x, u) for homogeneous x = t^r d_mu and a homogeneous module vector u.

    Attributes:
        x: AlgebraElement with a single term
        u: ModuleVector with a single term
    """

    def __init__(self, x, u):
        if len(x) != 1 or len(u) != 1:
            raise ValueError("cover generators need homogeneous x and u")
        self.x = x
        self.u = u

    def weight(self):
        return lattice.add(next(iter(self.x.terms)), next(iter(self.u.terms)))

    def element(self):
        return psi(self.x, self.u)

    def __repr__(self):
        return f"CoverGenerator({self.x}, {self.u})"


def psi(x, u):
    """The cover element psi(x, u), bilinear in x and u."""
    result = CoverElement(x.n)
    for k, a in x.terms.items():
        for m, b in u.terms.items():
            result._accumulate((k, m), a * b)
    return result


def psi_eval(element, f, params):
    """
    Evaluate a cover element (or CoverGenerator) at a torus function.

    Args:
        element: CoverElement or CoverGenerator
        f: TorusFunction
        params: ModuleParams of M

    Returns:
        ModuleVector sum c (f e_k) v_m
    """
    if isinstance(element, CoverGenerator):
        element = element.element()
    result = ModuleVector(element.n)
    for (k, m), c in element.terms.items():
        shifted = a_action(f, e(k))
        result = result + act(shifted, basis_vector(m), params).scaled(c)
    return result


def pi(element, params):
    """pi(phi) = phi(1)."""
    return psi_eval(element, unit(element.n), params)


def cover_act(y, element, params):
    """W_mu action y psi(x, u) = psi([y, x], u) + psi(x, y u)."""
    result = CoverElement(element.n)
    for (k, m), c in element.terms.items():
        x = e(k)
        u = basis_vector(m)
        result = result + (psi(bracket(y, x), u) + psi(x, act(y, u, params))).scaled(c)
    return result


def cover_a_act(g, element):
    """A action g psi(x, u) = psi(g x, u)."""
    result = CoverElement(element.n)
    for (k, m), c in element.terms.items():
        result = result + psi(a_action(g, e(k)), basis_vector(m)).scaled(c)
    return result


def coinduced_eval(y, element, f, params):
    """The coinduced action evaluated pointwise: (y phi)(f) = y(phi(f)) - phi(y f)."""
    return (act(y, psi_eval(element, f, params), params)
            - psi_eval(element, derivation_action(y, f), params))


def evaluation_window(n, K_eval):
    return [t(f) for f in lattice.box(n, K_eval)]


def cover_equal(a, b, params, K_eval=2):
    """Functional equality on the monomials t^f, f in [-K_eval, K_eval]^n."""
    difference = a - b
    return all(not psi_eval(difference, f, params) for f in evaluation_window(a.n, K_eval))


def _evaluation_rows(params, lam, K, K_eval):
    field = coefficient_field(params.n)
    columns = lattice.box(params.n, K_eval)
    rows = []
    for w in params.offsets(K):
        generator = psi(e(lattice.sub(lam, w)), basis_vector(w))
        row = []
        for f in columns:
            image = psi_eval(generator, t(f), params)
            row.append(image.coefficient(lattice.add(f, lam)) if image else field.zero)
        rows.append(row)
    return rows


def weight_space_rank(params, lam, K=2, K_eval=2, cap=3):
    """
    Rank of the cover's weight space at offset lam.

    Generators psi(e_{lam-w}, v_w), w in [-K, K]^n, are evaluated at t^f for
    f in [-K_eval, K_eval]^n. The window grows until the rank is unchanged by
    one more step.

    Args:
        params: ModuleParams of M
        lam: Lattice offset of the weight
        K: Generator window
        K_eval: Initial evaluation window
        cap: Number of window enlargements allowed

    Returns:
        Dict with 'rank' and the 'eval_window' where it stabilized

    Raises:
        RankUnstable: When the rank still changes after cap enlargements
    """
    lam = tuple(lam)
    rank = fraction_free_rank(_evaluation_rows(params, lam, K, K_eval), params.n)
    for window in range(K_eval + 1, K_eval + cap + 1):
        grown = fraction_free_rank(_evaluation_rows(params, lam, K, window), params.n)
        if grown == rank:
            logger.debug("rank %d at weight %s of %s stable at K'=%d",
                         rank, lam, params.label(), window - 1)
            return {"rank": rank, "eval_window": window - 1}
        rank = grown
    raise RankUnstable(f"rank at weight {lam} of {params.label()} still changing "
                       f"at eval window {K_eval + cap}")


def pi_surjectivity_report(params, K=2):
    """
    Which window weights of M lie in pi(cover) = W_mu M.

    The weight spaces of M are one-dimensional, so a target v_t is reached
    iff pi(psi(e_{t-w}, v_w)) = e_{t-w} v_w is nonzero for some w.

    Returns:
        Dict with the targets checked, the 'missed' offsets and 'surjective'
    """
    offsets = params.offsets(K)
    missed = []
    for target in offsets:
        reached = params.has_offset(target) and any(
            pi(psi(e(lattice.sub(target, w)), basis_vector(w)), params).coefficient(target)
            for w in offsets)
        if not reached:
            missed.append(target)
    return {
        "module": params.label(),
        "window": K,
        "targets": len(offsets),
        "missed": missed,
        "surjective": not missed,
        "image_empty": len(missed) == len(offsets),
    }


def differentiator_relation(params, m, h, k, s, p, K_eval=2):
    """
    The cover element sum_i (-1)^i C(m, i) psi(e_{k-ih}, e_{s+ih} v_p) on the evaluation window.

    It vanishes once the order-m differentiators annihilate M.

    Returns:
        Dict with 'vanishes' and the first evaluation point where it does not
    """
    h, k, s, p = tuple(h), tuple(k), tuple(s), tuple(p)
    element = CoverElement(params.n)
    for i in range(m + 1):
        ih = lattice.scale(i, h)
        u = tensor_act(lattice.add(s, ih), basis_vector(p), params)
        sign = -1 if i % 2 else 1
        element = element + psi(e(lattice.sub(k, ih)), u).scaled(sign * math.comb(m, i))
    for f in lattice.box(params.n, K_eval):
        image = psi_eval(element, t(f), params)
        if image:
            return {"vanishes": False, "nonzero_at": lattice.format_point(f), "image": str(image)}
    return {"vanishes": True, "nonzero_at": None, "image": None}

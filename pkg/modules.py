"""
Cuspidal weight modules of W_mu with one-dimensional weight spaces.

Supported kinds:
    tensor   - T(alpha, beta), basis v_s, s in beta + Gamma_mu, e_k v_s = (s + alpha k) v_{s+k}
    quotient - Tbar(0, 0) = T(0, 0) / C v_0
    trivial  - the trivial one-dimensional module C v_0

A basis vector is addressed by its lattice offset m; its weight is beta + mu.m.
"""

import logging
from collections import deque

import lattice
from combination import Combination
from errors import DegenerateInput, NotFound
from lattice import mu_dot
from scalars import as_scalar, coefficient_field, format_scalar
from uea import differentiator, generator, uea_mul

logger = logging.getLogger(__name__)

MODULE_KINDS = ("tensor", "quotient", "trivial")


class ModuleParams:
    """
    Parameters of a cuspidal module.

    Attributes:
        n: Rank
        kind: 'tensor', 'quotient' or 'trivial'
        alpha: Scalar (the indeterminate a unless specialized)
        beta: Scalar (the indeterminate b unless specialized)
    """

    def __init__(self, n, alpha=None, beta=None, kind="tensor"):
        """
        Initialize module parameters.

        Args:
            n: Rank
            alpha: Specialization of alpha (None keeps it symbolic)
            beta: Specialization of beta (None keeps it symbolic; 0 is the integral coset)
            kind: Module kind
        """
        if kind not in MODULE_KINDS:
            raise ValueError(f"unknown module kind {kind!r}")
        K = coefficient_field(n)
        self.n = n
        self.kind = kind
        if kind == "quotient":
            alpha, beta = 0, 0
        elif kind == "trivial":
            beta = 0
        self.alpha = K.alpha if alpha is None else as_scalar(alpha, n)
        self.beta = K.beta if beta is None else as_scalar(beta, n)

    @classmethod
    def tensor(cls, n, alpha=None, beta=None):
        return cls(n, alpha, beta, "tensor")

    @classmethod
    def quotient(cls, n):
        return cls(n, kind="quotient")

    @classmethod
    def trivial(cls, n):
        return cls(n, kind="trivial")

    @property
    def beta_mode(self):
        """'integral' when the support is Gamma_mu itself, 'generic' otherwise."""
        return "integral" if not self.beta else "generic"

    def weight(self, m):
        """Weight beta + mu.m of the basis vector at offset m."""
        return self.beta + mu_dot(m)

    def has_offset(self, m):
        """Whether offset m carries a basis vector."""
        if self.kind == "trivial":
            return lattice.is_zero(m)
        if self.kind == "quotient":
            return not lattice.is_zero(m)
        return True

    def offsets(self, K):
        """Basis offsets inside the box [-K, K]^n."""
        return [m for m in lattice.box(self.n, K) if self.has_offset(m)]

    def generic_weight(self):
        """
        Parameters of the tensor module with the same alpha and symbolic beta.

        Coefficients of any element of U(W_mu) on v_m are polynomials in the
        weight, so vanishing here implies vanishing on every coset.
        """
        if self.kind == "trivial":
            return self
        return ModuleParams(self.n, self.alpha, None, "tensor")

    def label(self):
        if self.kind == "trivial":
            return "trivial"
        if self.kind == "quotient":
            return "Tbar(0,0)"
        return f"T({format_scalar(self.alpha)},{format_scalar(self.beta)})"

    def as_dict(self):
        return {"kind": self.kind, "alpha": format_scalar(self.alpha),
                "beta": format_scalar(self.beta)}

    def __repr__(self):
        return f"ModuleParams(n={self.n}, {self.label()})"


class ModuleVector(Combination):
    """A combination sum_m c_m v_{beta + mu.m}, keyed by lattice offset m."""

    def format_key(self, key):
        return f"v[{lattice.format_point(key)}]"


def basis_vector(m, coeff=1):
    m = tuple(m)
    return ModuleVector(len(m), {m: coeff})


def tensor_coefficient(k, m, params):
    """Coefficient of e_k v_m: beta + mu.m + alpha mu.k (zero on the trivial module)."""
    if params.kind == "trivial":
        return coefficient_field(params.n).zero
    return params.weight(m) + params.alpha * mu_dot(k)


def tensor_act(k, v, params):
    """
    Action of the basis element e_k = t^k d_mu on a module vector.

    Args:
        k: Lattice point
        v: ModuleVector
        params: ModuleParams

    Returns:
        ModuleVector
    """
    result = ModuleVector(v.n)
    if params.kind == "trivial":
        return result
    for m, c in v.terms.items():
        target = lattice.add(m, k)
        if not params.has_offset(target):
            continue
        coeff = tensor_coefficient(k, m, params)
        if coeff:
            result._accumulate(target, c * coeff)
    return result


def act(x, v, params):
    """Action of an arbitrary element of W_mu."""
    result = ModuleVector(v.n)
    for k, c in x.terms.items():
        result = result + tensor_act(k, v, params).scaled(c)
    return result


def uea_act(u, v, params):
    """Apply each PBW word right-to-left via tensor_act; linear in u and v."""
    result = ModuleVector(v.n)
    for word, c in u.terms.items():
        w = v
        for k in reversed(word):
            w = tensor_act(k, w, params)
            if not w:
                break
        if w:
            result = result + w.scaled(c)
    return result


def theta_map(v, beta=None):
    """
    The intertwiner T(0, beta) -> T(1, beta), v_s -> s v'_s.

    Args:
        v: ModuleVector of T(0, beta)
        beta: Specialization of beta (None keeps it symbolic)
    """
    params = ModuleParams.tensor(v.n, 0, beta)
    result = ModuleVector(v.n)
    for m, c in v.terms.items():
        result._accumulate(m, c * params.weight(m))
    return result


def _annihilates(omega, params, K):
    for p in params.offsets(K):
        image = uea_act(omega, basis_vector(p), params)
        if image:
            return False, p, image
    return True, None, None


def annihilates(m, h, k, s, params, K=2):
    """
    Whether the order-m differentiator kills the module.

    Checked twice: on a vector of symbolic weight (the tensor module with
    beta left free), and on every basis vector of the window [-K, K]^n of
    the module itself.

    Returns:
        (bool, witness) where witness names the first nonzero image, if any
    """
    omega = differentiator(m, h, k, s)
    generic = params.generic_weight()
    zero = lattice.zero(params.n)
    if generic.has_offset(zero):
        image = uea_act(omega, basis_vector(zero), generic)
        if image:
            return False, {"offset": "symbolic", "image": str(image)}
    ok, p, image = _annihilates(omega, params, K)
    if not ok:
        return False, {"offset": lattice.format_point(p), "image": str(image)}
    return True, None


def min_annihilation_order(h, k, s, params, m_max=6, K=2):
    """
    Least m <= m_max such that the differentiator of order m and step h annihilates the module.

    Args:
        h, k, s: Lattice points, h nonzero
        params: ModuleParams
        m_max: Search bound
        K: Window half-width for the per-offset check

    Raises:
        DegenerateInput: When h = 0
        NotFound: When no order up to m_max annihilates
    """
    h, k, s = tuple(h), tuple(k), tuple(s)
    if lattice.is_zero(h):
        raise DegenerateInput("h = 0 makes every differentiator of order >= 1 vanish")
    for m in range(m_max + 1):
        ok, _ = annihilates(m, h, k, s, params, K)
        if ok:
            return m
    raise NotFound(f"no differentiator of order <= {m_max} annihilates {params.label()} "
                   f"at h={h}, k={k}, s={s}")


def coefficient_degree(h, k, s, params, max_degree=6):
    """
    Degree in i of the coefficient c(i) with e_{k-ih} e_{s+ih} v = c(i) v'.

    v has symbolic weight. The m-th differentiator acts by the m-th finite
    difference of c, so it annihilates exactly when m exceeds this degree.

    Returns:
        Degree as an int, or -1 when c is identically zero
    """
    generic = params.generic_weight()
    zero = lattice.zero(params.n)
    K = coefficient_field(params.n)
    if not generic.has_offset(zero):
        return -1
    target = lattice.add(k, s)
    values = []
    for i in range(max_degree + 2):
        word = uea_mul(generator(lattice.sub(k, lattice.scale(i, h))),
                       generator(lattice.add(s, lattice.scale(i, h))))
        image = uea_act(word, basis_vector(zero), generic)
        values.append(image.coefficient(target) if image else K.zero)
    degree = -1
    diffs = values
    for order in range(len(values)):
        if any(diffs):
            degree = order
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    return degree


def _reachable(m, steps):
    """Offsets reachable from v_m by generator steps inside the box."""
    seen = {m}
    queue = deque([m])
    while queue:
        current = queue.popleft()
        for target in steps[current]:
            if target not in seen:
                seen.add(target)
                queue.append(target)
    return frozenset(seen)


def window_structure(params, K):
    """
    One-step reachability closure of the window [-K, K]^n under the generators.

    A step goes from v_m to v_{m+k} (k in the box, m + k in the box) when
    the coefficient of e_k v_m is nonzero. This reports what the window
    shows, not a simplicity proof.

    Returns:
        Dict with 'cyclic', 'invariant_subspaces' (sorted offset lists of the
        distinct proper closures) and 'non_generating' offsets
    """
    if K < 2:
        raise ValueError(f"window half-width must be at least 2, got {K}")
    offsets = params.offsets(K)
    inside = set(offsets)
    generators = lattice.box(params.n, K)
    steps = {}
    vanishing = []
    for m in offsets:
        targets = []
        for k in generators:
            if lattice.is_zero(k):
                continue
            target = lattice.add(m, k)
            if target not in inside:
                continue
            if tensor_coefficient(k, m, params):
                targets.append(target)
            else:
                vanishing.append((k, m))
        steps[m] = targets
    full = frozenset(offsets)
    closures = {m: _reachable(m, steps) for m in offsets}
    proper = sorted({c for c in closures.values() if c != full}, key=lambda c: (len(c), sorted(c)))
    logger.debug("window structure of %s at K=%d: %d proper closures", params.label(), K, len(proper))
    return {
        "module": params.label(),
        "window": K,
        "size": len(offsets),
        "cyclic": not proper,
        "invariant_subspaces": [sorted(c) for c in proper],
        "non_generating": sorted(m for m, c in closures.items() if c != full),
        "vanishing_steps": len(vanishing),
    }


def classify_simple(params, K=3):
    """
    Window-scale verdict on simplicity of a tensor module.

    T(alpha, beta) is simple unless alpha in {0, 1} on the integral coset;
    T(0, 0) has the invariant line C v_0 with simple quotient Tbar(0, 0),
    T(1, 0) has an invariant subspace of codimension 1 with trivial quotient.

    Returns:
        Dict with the 'expected' verdict, the 'observed' window structure and 'agrees'
    """
    structure = window_structure(params, K)
    zero = lattice.zero(params.n)
    everything_but_zero = sorted(m for m in params.offsets(K) if m != zero)
    alpha, integral = params.alpha, params.beta_mode == "integral"
    if params.kind != "tensor":
        expected = {"simple": True, "invariant": []}
    elif integral and not alpha:
        expected = {"simple": False, "invariant": [[zero]], "simple_quotient": "Tbar(0,0)"}
    elif integral and alpha == 1:
        expected = {"simple": False, "invariant": [everything_but_zero], "simple_quotient": "trivial"}
    else:
        expected = {"simple": True, "invariant": []}
    if params.kind == "trivial":
        observed_ok = structure["cyclic"]
    else:
        observed_ok = structure["invariant_subspaces"] == expected["invariant"]
    return {"expected": expected, "observed": structure, "agrees": observed_ok}

"""
AW_mu-modules and the D(s) calculus.

A cuspidal AW_mu-module is A (x) U for a finite-dimensional fiber U, with

    (t^s d_mu)(t^m (x) u) = t^{m+s} (x) ((mu.m + beta) Id + sum_{k != 0} s^k/k! rho(x^k d_mu)) u

where rho is a representation of the jet algebra L_+ (basis x^k d_mu,
k in Z_+^n, |k| >= 1). D(s) = t^{-s} o (t^s d_mu) is an End(U)-valued
polynomial in s with constant term beta Id.
"""

import itertools
import logging
import os
from fractions import Fraction

import lattice
from combination import Combination
from errors import DegenerateInput, FitMismatch, InvalidRep, RepFormatError
from lattice import factorial, mu_dot, multi_indices
from linalg import (as_matrix, commutator, format_matrix, fraction_free_rank, identity_matrix,
                    is_zero_matrix, matrices_equal, unit_matrix, zero_matrix)
from modules import ModuleParams, tensor_coefficient
from scalars import as_scalar, coefficient_field, format_scalar, parse_scalar
from solalg import bracket, derivation_action

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Jet algebra representations
# ---------------------------------------------------------------------------

def jet_indices(n, top):
    """All k in Z_+^n with 1 <= |k| <= top, by degree then lex."""
    return [k for degree in range(1, top + 1) for k in multi_indices(n, degree)]


def jet_bracket(k, r):
    """
    [x^k d_mu, x^r d_mu] = sum_i mu_i (r_i - k_i) x^{k+r-eps_i} d_mu.

    Returns:
        Dict mapping multi-index to Scalar
    """
    n = len(k)
    result = {}
    for i, mu_i in enumerate(coefficient_field(n).mu):
        c = r[i] - k[i]
        if c == 0:
            continue
        index = tuple(k[j] + r[j] - (1 if j == i else 0) for j in range(n))
        if min(index) < 0:
            continue
        total = result.get(index, 0) + c * mu_i
        if total:
            result[index] = total
        else:
            result.pop(index, None)
    return result


class JetRep:
    """
    A finite-dimensional representation of L_+ truncated above a degree bound.

    Attributes:
        n: Rank
        dim: Fiber dimension d
        degree_bound: p; rho(x^k d_mu) = 0 whenever |k| > p
        rho: Dict multi-index -> d x d matrix (missing indices act by zero)
        name: Label used in reports
    """

    def __init__(self, n, dim, rho, degree_bound, name="custom"):
        self.n = n
        self.dim = dim
        self.degree_bound = degree_bound
        self.name = name
        self.rho = {}
        for k, matrix in rho.items():
            k = tuple(k)
            if len(k) != n or min(k) < 0 or sum(k) < 1:
                raise InvalidRep(f"bad multi-index {k} for n={n}")
            if sum(k) > degree_bound:
                raise InvalidRep(f"rho{k} lies above the degree bound {degree_bound}")
            if matrix.shape != (dim, dim):
                raise InvalidRep(f"rho{k} has shape {matrix.shape}, expected {(dim, dim)}")
            if not is_zero_matrix(matrix):
                self.rho[k] = matrix

    def matrix(self, k):
        k = tuple(k)
        stored = self.rho.get(k)
        return stored if stored is not None else zero_matrix(self.n, self.dim)

    def bracket_defects(self):
        """Pairs (k, r) where the bracket relations fail."""
        defects = []
        indices = jet_indices(self.n, self.degree_bound)
        for a, k in enumerate(indices):
            for r in indices[a + 1:]:
                lhs = commutator(self.matrix(k), self.matrix(r))
                rhs = zero_matrix(self.n, self.dim)
                for index, c in jet_bracket(k, r).items():
                    if sum(index) <= self.degree_bound:
                        rhs = rhs + self.matrix(index) * c
                if not matrices_equal(lhs, rhs):
                    defects.append((k, r))
        return defects

    def validate(self):
        defects = self.bracket_defects()
        if defects:
            k, r = defects[0]
            raise InvalidRep(f"JetRep {self.name!r}: bracket relation fails for "
                             f"k={k}, r={r} ({len(defects)} failing pairs)")
        return self

    def __repr__(self):
        return f"JetRep({self.name!r}, n={self.n}, dim={self.dim}, p={self.degree_bound})"


def _jordan_block(n, d):
    matrix = zero_matrix(n, d)
    for i in range(d - 1):
        matrix[i, i + 1] = coefficient_field(n).one
    return matrix


def _linear_rep(n, d, nilpotent, alpha, name):
    K = coefficient_field(n)
    alpha = K.alpha if alpha is None else as_scalar(alpha, n)
    rho = {}
    for i, mu_i in enumerate(K.mu):
        rho[lattice.basis(n, i)] = identity_matrix(n, d, alpha * mu_i) + nilpotent * mu_i
    return JetRep(n, d, rho, 1, name)


def alpha_rep(n, alpha=None):
    """One-dimensional rep x_i d_mu -> alpha mu_i, L_j -> 0 for j >= 1."""
    return _linear_rep(n, 1, zero_matrix(n, 1), alpha, "alpha")


def nilpotent_rep(n, alpha=None):
    """Two-dimensional self-extension: x_i d_mu -> alpha mu_i Id + mu_i N."""
    return _linear_rep(n, 2, _jordan_block(n, 2), alpha, "nilpotent")


def jordan_rep(n, alpha=None, dim=3):
    """Single Jordan block of size dim: x_i d_mu -> alpha mu_i Id + mu_i N."""
    return _linear_rep(n, dim, _jordan_block(n, dim), alpha, f"jordan{dim}")


def quadratic_rep(n, alpha=None):
    """
    Two-dimensional rep with a nonzero degree-1 part:
    x_i d_mu -> alpha mu_i Id + mu_i E11, x^r d_mu -> mu^r E12 for |r| = 2.

    Its D(s) is quadratic in s.
    """
    K = coefficient_field(n)
    rep = _linear_rep(n, 2, unit_matrix(n, 2, 0, 0), alpha, "quadratic")
    rho = dict(rep.rho)
    for r in multi_indices(n, 2):
        mu_r = K.one
        for mu_i, e in zip(K.mu, r):
            mu_r = mu_r * mu_i ** e
        rho[r] = unit_matrix(n, 2, 0, 1) * mu_r
    return JetRep(n, 2, rho, 2, "quadratic")


SAMPLE_REPS = {
    "alpha": alpha_rep,
    "nilpotent": nilpotent_rep,
    "jordan3": jordan_rep,
    "quadratic": quadratic_rep,
}


# ---------------------------------------------------------------------------
# The module A (x) U
# ---------------------------------------------------------------------------

class AWVector(Combination):
    """A combination of t^m (x) u_j, keyed by (offset m, fiber index j)."""

    def format_key(self, key):
        m, j = key
        return f"t[{lattice.format_point(m)}]u{j}"


def fiber_vector(m, j, coeff=1):
    m = tuple(m)
    return AWVector(len(m), {(m, j): coeff})


class AWModule:
    """
    The AW_mu-module attached to a JetRep by the category correspondence.

    Attributes:
        rep: The JetRep
        beta: Scalar, support beta + Gamma_mu
    """

    def __init__(self, rep, beta=None):
        K = coefficient_field(rep.n)
        self.rep = rep
        self.n = rep.n
        self.dim = rep.dim
        self.beta = K.beta if beta is None else as_scalar(beta, rep.n)
        self._cache = {}

    def D(self, s):
        """(beta Id + sum_k s^k/k! rho(x^k d_mu)), the fiber operator at s."""
        s = tuple(s)
        matrix = self._cache.get(s)
        if matrix is None:
            matrix = identity_matrix(self.n, self.dim, self.beta)
            for k, rho_k in self.rep.rho.items():
                c = Fraction(lattice.monomial(s, k), factorial(k))
                if c:
                    matrix = matrix + rho_k * as_scalar(c, self.n)
            self._cache[s] = matrix
        return matrix

    def act_basis(self, s, v):
        """Action of t^s d_mu on an AWVector."""
        s = tuple(s)
        D = self.D(s)
        result = AWVector(self.n)
        for (m, j), c in v.terms.items():
            target = lattice.add(m, s)
            shift = mu_dot(m)
            for i in range(self.dim):
                coeff = D[i, j] + shift if i == j else D[i, j]
                if coeff:
                    result._accumulate((target, i), c * coeff)
        return result

    def act(self, x, v):
        """Action of an arbitrary element of W_mu."""
        result = AWVector(self.n)
        for s, c in x.terms.items():
            result = result + self.act_basis(s, v).scaled(c)
        return result

    def act_function(self, f, v):
        """A-action t^g (t^m (x) u) = t^{g+m} (x) u."""
        result = AWVector(self.n)
        for g, a in f.terms.items():
            for (m, j), c in v.terms.items():
                result._accumulate((lattice.add(g, m), j), a * c)
        return result

    def __repr__(self):
        return f"AWModule({self.rep.name}, beta={format_scalar(self.beta)})"


def aw_construct(rep, beta_mode="generic"):
    """
    Build the AW_mu-module A (x) U of a JetRep.

    Args:
        rep: JetRep
        beta_mode: 'generic' (beta symbolic), 'integral' (beta = 0) or a rational value

    Raises:
        InvalidRep: When rep violates the bracket relations
    """
    rep.validate()
    if beta_mode == "generic":
        beta = None
    elif beta_mode == "integral":
        beta = 0
    else:
        beta = beta_mode
    return AWModule(rep, beta)


def extract_D(module, s):
    """Read off D(s) by acting with t^s d_mu on t^0 (x) U and stripping t^s."""
    s = tuple(s)
    zero = lattice.zero(module.n)
    matrix = zero_matrix(module.n, module.dim)
    for j in range(module.dim):
        image = module.act_basis(s, fiber_vector(zero, j))
        for i in range(module.dim):
            matrix[i, j] = image.coefficient((s, i))
    return matrix


def verify_deform(module, s, m):
    """[D(s), D(m)] = mu.m (D(m+s) - D(m)) - mu.s (D(m+s) - D(s))."""
    s, m = tuple(s), tuple(m)
    Ds, Dm, Dsm = extract_D(module, s), extract_D(module, m), extract_D(module, lattice.add(s, m))
    lhs = commutator(Ds, Dm)
    rhs = (Dsm - Dm) * mu_dot(m) - (Dsm - Ds) * mu_dot(s)
    return matrices_equal(lhs, rhs)


def module_axiom_holds(module, x, y, v):
    """x(yv) - y(xv) = [x, y] v."""
    lhs = module.act(x, module.act(y, v)) - module.act(y, module.act(x, v))
    return lhs == module.act(bracket(x, y), v)


def compatibility_holds(module, x, f, v):
    """x(fv) = (xf)v + f(xv)."""
    lhs = module.act(x, module.act_function(f, v))
    rhs = module.act_function(derivation_action(x, f), v) + module.act_function(f, module.act(x, v))
    return lhs == rhs


def random_aw_vector(gen, n, dim, num_terms=2, K=3):
    """Random AWVector drawn from an ElementGenerator."""
    return AWVector(n, [((gen.random_point(n, K), gen.rng.randrange(dim)), gen.random_rational())
                        for _ in range(num_terms)])


def tensor_concordance(n, K=3, alpha=None, beta=None):
    """
    Compare the one-dimensional AW module of x_i d_mu -> alpha mu_i with T(alpha, beta).

    Returns:
        List of (s, m) pairs in [-K, K]^n x [-K, K]^n where the coefficients differ
    """
    module = AWModule(alpha_rep(n, alpha), beta)
    params = ModuleParams.tensor(n, alpha, beta)
    mismatches = []
    for s in lattice.box(n, K):
        for m in lattice.box(n, K):
            image = module.act_basis(s, fiber_vector(m, 0))
            if image.coefficient((lattice.add(m, s), 0)) != tensor_coefficient(s, m, params):
                mismatches.append((s, m))
    return mismatches


# ---------------------------------------------------------------------------
# Polynomial fitting of D(s)
# ---------------------------------------------------------------------------

class OperatorPolynomial:
    """
    D(s) = sum_k coeffs[k] s^k with d x d Scalar matrix coefficients.

    coeffs[k] equals the Taylor coefficient d^k D / k!.
    """

    def __init__(self, n, dim, coeffs):
        self.n = n
        self.dim = dim
        self.coeffs = {tuple(k): c for k, c in coeffs.items() if not is_zero_matrix(c)}

    def coefficient(self, k):
        k = tuple(k)
        stored = self.coeffs.get(k)
        return stored if stored is not None else zero_matrix(self.n, self.dim)

    def derivative(self, k):
        """The operator d^k D = k! coeffs[k]."""
        return self.coefficient(k) * factorial(k)

    def degree(self):
        return max((sum(k) for k in self.coeffs), default=0)

    def evaluate(self, s):
        s = tuple(s)
        result = zero_matrix(self.n, self.dim)
        for k, c in self.coeffs.items():
            value = lattice.monomial(s, k)
            if value:
                result = result + c * value
        return result

    def constant_term(self):
        return self.coefficient(lattice.zero(self.n))

    def beta(self):
        """beta, read from a constant term of the form beta Id."""
        constant = self.constant_term()
        beta = constant[0, 0]
        if not matrices_equal(constant, identity_matrix(self.n, self.dim, beta)):
            raise InvalidRep("constant term of D(s) is not a multiple of the identity")
        return beta

    def to_jet_rep(self, name="fitted"):
        """The JetRep rho(x^k d_mu) = d^k D, k != 0."""
        rho = {k: self.derivative(k) for k in self.coeffs if sum(k) > 0}
        return JetRep(self.n, self.dim, rho, max(self.degree(), 1), name)

    def __repr__(self):
        return f"OperatorPolynomial(n={self.n}, dim={self.dim}, degree={self.degree()})"


def _interpolate_axis(nodes, values, zero):
    """Monomial coefficients of the polynomial through (nodes[i], values[i])."""
    coef = list(values)
    count = len(nodes)
    for j in range(1, count):
        for i in range(count - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (nodes[i] - nodes[i - j])
    poly = [coef[-1]]
    for j in range(count - 2, -1, -1):
        shifted = [zero] + poly
        for p in range(len(poly)):
            shifted[p] = shifted[p] - poly[p] * nodes[j]
        shifted[0] = shifted[0] + coef[j]
        poly = shifted
    return poly


def fit_nodes(K, degree_cap):
    """
    degree_cap + 1 consecutive integers centred in [-K, K].

    Raises:
        DegenerateInput: When they do not fit, i.e. 2K + 1 <= degree_cap
    """
    low = -(degree_cap // 2)
    nodes = list(range(low, low + degree_cap + 1))
    if nodes[0] < -K or nodes[-1] > K:
        raise DegenerateInput(f"box side {2 * K + 1} must exceed the degree cap {degree_cap}")
    return nodes


def fit_polynomial(sample, n, dim, K, degree_cap, margin=2):
    """
    Fit an End(U)-valued polynomial of degree <= degree_cap in each variable.

    Interpolates along each axis in turn on degree_cap + 1 integer nodes,
    then re-checks every point of the enlarged box [-K-margin, K+margin]^n.

    Args:
        sample: Callable lattice point -> d x d matrix
        n: Rank
        dim: Fiber dimension
        K: Half-width of the sampling box
        degree_cap: Degree bound per variable
        margin: Enlargement of the verification box

    Raises:
        DegenerateInput: When 2K + 1 <= degree_cap
        FitMismatch: When the fit disagrees with the samples on the enlarged box
    """
    nodes = fit_nodes(K, degree_cap)
    zero = zero_matrix(n, dim)
    table = {point: sample(point) for point in itertools.product(nodes, repeat=n)}
    for axis in range(n):
        lines = {}
        for key, value in table.items():
            rest = key[:axis] + key[axis + 1:]
            lines.setdefault(rest, {})[key[axis]] = value
        table = {}
        for rest, line in lines.items():
            coefficients = _interpolate_axis(nodes, [line[x] for x in nodes], zero)
            for e, c in enumerate(coefficients):
                table[rest[:axis] + (e,) + rest[axis:]] = c
    poly = OperatorPolynomial(n, dim, table)
    mismatches = [point for point in lattice.box(n, K + margin)
                  if not matrices_equal(poly.evaluate(point), sample(point))]
    if mismatches:
        raise FitMismatch(f"fit of degree <= {degree_cap} disagrees with the samples at "
                          f"{len(mismatches)} points, first {mismatches[0]}", mismatches)
    logger.debug("fitted %r on box K=%d", poly, K)
    return poly


def verify_jet_brackets(D):
    """
    Check the structure constants of the Taylor coefficients:
    [d^k D, d^r D] = sum_i mu_i (r_i - k_i) d^{k+r-eps_i} D for k, r != 0,
    and 0 when k = 0 or r = 0.
    """
    top = D.degree()
    zero = lattice.zero(D.n)
    constant = D.derivative(zero)
    for k in jet_indices(D.n, max(top, 1)):
        if not is_zero_matrix(commutator(constant, D.derivative(k))):
            return False
    for k in jet_indices(D.n, top):
        for r in jet_indices(D.n, top):
            lhs = commutator(D.derivative(k), D.derivative(r))
            rhs = zero_matrix(D.n, D.dim)
            for index, c in jet_bracket(k, r).items():
                rhs = rhs + D.derivative(index) * c
            if not matrices_equal(lhs, rhs):
                return False
    return True


# ---------------------------------------------------------------------------
# Commutant of the truncated jet algebra
# ---------------------------------------------------------------------------

def _bracket_rows(n, p, pairs, columns):
    position = {k: i for i, k in enumerate(columns)}
    K = coefficient_field(n)
    rows = []
    for k, r in pairs:
        row = [K.zero] * len(columns)
        for index, c in jet_bracket(k, r).items():
            if sum(index) <= p:
                row[position[index]] = row[position[index]] + c
        if any(row):
            rows.append(row)
    return rows


def _monomial_name(k):
    parts = []
    for i, e in enumerate(k):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) + "*d_mu"


def commutant_check(n, p):
    """
    Commutant of L_+ / sum_{j >= p} L_j (basis x^k d_mu, 1 <= |k| <= p).

    Returns:
        Dict with the dimension, the rank of the bracket span, its codimension,
        per-degree ranks of [L_0, L_j], and the degree-0 commutant check
    """
    if p < 2:
        raise ValueError(f"degree bound must be at least 2, got {p}")
    K = coefficient_field(n)
    basis = jet_indices(n, p)
    pairs = [(k, r) for a, k in enumerate(basis) for r in basis[a + 1:]]
    rank = fraction_free_rank(_bracket_rows(n, p, pairs, basis), n)

    degree_zero = multi_indices(n, 1)
    zero_rows = _bracket_rows(n, p, [(k, r) for a, k in enumerate(degree_zero)
                                     for r in degree_zero[a + 1:]], degree_zero)
    # column x_i d_mu pairs with mu_i
    on_hyperplane = all(not sum((c * K.mu[k.index(1)] for c, k in zip(row, degree_zero)), K.zero)
                        for row in zero_rows)
    zero_rank = fraction_free_rank(zero_rows, n)
    spanning = [" + ".join(f"({format_scalar(c)})*{_monomial_name(k)}"
                           for c, k in zip(row, degree_zero) if c)
                for row in zero_rows]

    per_degree = {}
    for j in range(1, p):
        layer = multi_indices(n, j + 1)
        layer_rows = _bracket_rows(n, p, [(k, r) for k in degree_zero for r in layer], layer)
        per_degree[j] = {"dim": len(layer), "rank": fraction_free_rank(layer_rows, n)}

    return {
        "n": n,
        "p": p,
        "dim": len(basis),
        "rank": rank,
        "codimension": len(basis) - rank,
        "degree0_rank": zero_rank,
        "degree0_on_hyperplane": on_hyperplane,
        "degree0_is_hyperplane": on_hyperplane and zero_rank == n - 1,
        "degree0_spanning": spanning,
        "L0_Lj_rank": per_degree,
        "L0_Lj_full": all(v["rank"] == v["dim"] for v in per_degree.values()),
    }


def one_dim_reps(n, p):
    """
    One-dimensional representations of the truncated L_+.

    They are the linear functionals killing every bracket. The solution space
    is checked to be the line x_i d_mu -> alpha mu_i, L_j -> 0 for j >= 1.

    Returns:
        Dict with the solution-space dimension and whether the line solves the system
    """
    K = coefficient_field(n)
    basis = jet_indices(n, p)
    pairs = [(k, r) for a, k in enumerate(basis) for r in basis[a + 1:]]
    rows = _bracket_rows(n, p, pairs, basis)
    candidate = [K.mu[k.index(1)] if sum(k) == 1 else K.zero for k in basis]
    solves = all(not sum((c * v for c, v in zip(candidate, row)), K.zero) for row in rows)
    dimension = len(basis) - fraction_free_rank(rows, n)
    return {"n": n, "p": p, "dimension": dimension, "line_solves": solves,
            "parametrized_by_alpha": dimension == 1 and solves}


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def load_jet_rep(path, name=None):
    """
    Read a JetRep from a text file.

    Format (one item per line, '#' starts a comment):
        dim <d>
        degree_bound <p>
        [n <n>]
        rho <k_1,...,k_n>
        <d rows of d comma-separated entries: rationals or polynomials in m1..mn, a, b>
        ...

    Raises:
        RepFormatError: On malformed input
        InvalidRep: When the matrices violate the bracket relations
    """
    with open(path) as handle:
        text = handle.read()
    return parse_jet_rep(text, name or os.path.splitext(os.path.basename(path))[0])


def parse_jet_rep(text, name="custom"):
    lines = [line.split("#", 1)[0].strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    header = {}
    blocks = []
    i = 0
    while i < len(lines):
        word, _, rest = lines[i].partition(" ")
        if word in ("dim", "degree_bound", "n"):
            try:
                header[word] = int(rest)
            except ValueError:
                raise RepFormatError(f"{word} expects an integer, got {rest!r}") from None
            i += 1
        elif word == "rho":
            if "dim" not in header:
                raise RepFormatError("'dim' must precede the first rho block")
            d = header["dim"]
            try:
                k = lattice.parse_point(rest)
            except ValueError as exc:
                raise RepFormatError(str(exc)) from None
            rows = [row.split(",") for row in lines[i + 1:i + 1 + d]]
            if len(rows) != d or any(len(row) != d for row in rows):
                raise RepFormatError(f"rho {rest} needs {d} rows of {d} entries")
            blocks.append((k, rows))
            i += 1 + d
        else:
            raise RepFormatError(f"unexpected line {lines[i]!r}")
    for key in ("dim", "degree_bound"):
        if key not in header:
            raise RepFormatError(f"missing '{key}'")
    n = header.get("n", len(blocks[0][0]) if blocks else None)
    if n is None:
        raise RepFormatError("cannot infer n without rho blocks; add an 'n' line")
    rho = {}
    for k, rows in blocks:
        if len(k) != n:
            raise RepFormatError(f"multi-index {k} does not have {n} entries")
        try:
            rho[k] = as_matrix(n, [[parse_scalar(x.strip(), n) for x in row] for row in rows])
        except ValueError as exc:
            raise RepFormatError(str(exc)) from None
    return JetRep(n, header["dim"], rho, header["degree_bound"], name).validate()


def dump_jet_rep(rep):
    """Serialize a JetRep in the format read by parse_jet_rep."""
    lines = [f"dim {rep.dim}", f"degree_bound {rep.degree_bound}", f"n {rep.n}"]
    for k in sorted(rep.rho):
        lines.append(f"rho {lattice.format_point(k)}")
        lines.extend(", ".join(row) for row in format_matrix(rep.rho[k]))
    return "\n".join(lines) + "\n"

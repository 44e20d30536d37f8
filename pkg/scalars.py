"""
Exact arithmetic in the coefficient field Q(m1, ..., mn, a, b).

The indeterminates m1..mn stand for the components of the generic vector mu,
a for alpha and b for beta. Elements are sympy sparse rational functions
(``FracElement``) whose numerator and denominator are sparse polynomials
(``PolyElement``) over QQ in graded-lex order. sympy keeps every element
cancelled with a sign-normalized denominator, so two Scalars are equal iff
their representations are identical and zero-testing is ``not x``.
"""

import operator
from fractions import Fraction
from functools import lru_cache

from sympy import QQ, sympify
from sympy.polys.fields import FracElement, field
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement

from errors import DivisionByZero, SpecializationPole

# Aliases for the domain vocabulary used across the engine.
Scalar = FracElement
Polynomial = PolyElement

ALPHA_NAME = "a"
BETA_NAME = "b"


def mu_names(n):
    """Names of the mu indeterminates for rank n: m1, ..., mn."""
    return [f"m{i + 1}" for i in range(n)]


class CoefficientField:
    """
    The field Q(mu_1, ..., mu_n, alpha, beta) for a fixed rank n.

    Attributes:
        n: Number of mu indeterminates
        field: Underlying sympy FracField
        ring: Polynomial ring of numerators and denominators
        mu: List of the n generators mu_i
        alpha: Generator alpha
        beta: Generator beta
    """

    def __init__(self, n):
        if n < 1:
            raise ValueError(f"rank n must be at least 1, got {n}")
        self.n = n
        self.names = mu_names(n) + [ALPHA_NAME, BETA_NAME]
        self.field, *gens = field(",".join(self.names), QQ, grlex)
        self.ring = self.field.ring
        self.mu = gens[:n]
        self.alpha = gens[n]
        self.beta = gens[n + 1]
        self.zero = self.field.zero
        self.one = self.field.one

    def __call__(self, value):
        return as_scalar(value, self.n)

    def index(self, name):
        """Generator index of an indeterminate name ('m2', 'a', 'alpha', ...)."""
        name = {"alpha": ALPHA_NAME, "beta": BETA_NAME}.get(name, name)
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown indeterminate {name!r} for n={self.n}") from None

    def __repr__(self):
        return f"CoefficientField({', '.join(self.names)})"


@lru_cache(maxsize=None)
def coefficient_field(n):
    """Return the (cached) coefficient field for rank n."""
    return CoefficientField(n)


def field_of(a):
    """Recover the CoefficientField a Scalar lives in."""
    return coefficient_field(a.field.ngens - 2)


def _rational(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def as_scalar(value, n):
    """
    Lift a Python value into the coefficient field of rank n.

    Args:
        value: Scalar, int, Fraction, or a string in the canonical syntax

    Returns:
        Scalar
    """
    K = coefficient_field(n)
    if isinstance(value, FracElement):
        if value.field != K.field:
            raise ValueError("scalar belongs to a different coefficient field")
        return value
    if isinstance(value, str):
        return parse_scalar(value, n)
    return K.field.ground_new(_rational(value))


def parse_scalar(text, n):
    """Parse the canonical syntax, e.g. '(2*m1 - 3*m2)/(a - 1)'."""
    K = coefficient_field(n)
    try:
        return K.field.from_expr(sympify(text))
    except (ValueError, TypeError, SyntaxError) as exc:
        raise ValueError(f"cannot read {text!r} as an element of Q({', '.join(K.names)})") from exc


def format_scalar(a):
    """Canonical human-readable form of a Scalar."""
    return str(a)


_ARITH = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
}


def scalar_arith(a, b, op):
    """
    Exact field arithmetic.

    Args:
        a, b: Scalars of the same field
        op: One of 'add', 'sub', 'mul', 'div'

    Returns:
        The canonical result

    Raises:
        DivisionByZero: When op is 'div' and b is zero
    """
    if op == "div":
        if not b:
            raise DivisionByZero(f"division of {format_scalar(a)} by zero")
        return a / b
    try:
        return _ARITH[op](a, b)
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None


def divide(a, b):
    """Shorthand for scalar_arith(a, b, 'div')."""
    return scalar_arith(a, b, "div")


def _substitute(poly, pairs):
    for index, value in pairs:
        poly = poly.subs(index, value)
    return poly


def specialize(a, bindings):
    """
    Substitute rationals for some indeterminates; the rest stay symbolic.

    Args:
        a: Scalar
        bindings: Mapping from indeterminate name ('m1', 'a', 'alpha', 'b', ...) to a rational

    Returns:
        Scalar in the same field

    Raises:
        SpecializationPole: When the denominator vanishes under the bindings
    """
    K = field_of(a)
    pairs = [(K.index(name), _rational(value)) for name, value in sorted(bindings.items())]
    numer = _substitute(a.numer, pairs)
    denom = _substitute(a.denom, pairs)
    if not denom:
        shown = ", ".join(f"{name}={Fraction(value)}" for name, value in sorted(bindings.items()))
        raise SpecializationPole(f"{format_scalar(a)} has a pole at {shown}")
    return K.field.new(numer, denom)

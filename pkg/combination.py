"""
Finite linear combinations with exact Scalar coefficients.

Every element type of the engine (algebra elements, torus functions,
enveloping-algebra elements, module vectors) is a map from a hashable
basis key to a nonzero Scalar. This base class owns that invariant.
"""

from scalars import as_scalar, coefficient_field, format_scalar


class Combination:
    """
    A finite Scalar-weighted combination of basis keys.

    Attributes:
        n: Rank of the coefficient field
        terms: Dict mapping basis key to a nonzero Scalar
    """

    def __init__(self, n, terms=None):
        """
        Initialize a combination, dropping zero coefficients.

        Args:
            n: Rank of the coefficient field
            terms: Mapping (or iterable of pairs) from key to coefficient
        """
        self.n = n
        self.terms = {}
        items = terms.items() if hasattr(terms, "items") else (terms or ())
        for key, coeff in items:
            self._accumulate(key, as_scalar(coeff, n))

    @property
    def field(self):
        return coefficient_field(self.n)

    def _accumulate(self, key, coeff):
        if not coeff:
            return
        total = self.terms.get(key)
        total = coeff if total is None else total + coeff
        if total:
            self.terms[key] = total
        else:
            del self.terms[key]

    def _new(self, terms):
        """Build a combination of the same type and rank."""
        result = self.__class__.__new__(self.__class__)
        Combination.__init__(result, self.n, terms)
        result._copy_extra(self)
        return result

    def _copy_extra(self, other):
        """Hook for subclasses that carry more state than the terms."""

    def _check(self, other):
        if not isinstance(other, Combination) or type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"rank mismatch: {self.n} vs {other.n}")

    def coefficient(self, key):
        return self.terms.get(key, self.field.zero)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __add__(self, other):
        self._check(other)
        result = self._new(self.terms)
        for key, coeff in other.terms.items():
            result._accumulate(key, coeff)
        return result

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._new({key: -coeff for key, coeff in self.terms.items()})

    def scaled(self, c):
        """Multiply every coefficient by a Scalar (or int / Fraction)."""
        c = as_scalar(c, self.n)
        if not c:
            return self._new({})
        return self._new({key: c * coeff for key, coeff in self.terms.items()})

    def __rmul__(self, c):
        return self.scaled(c)

    def __eq__(self, other):
        if not isinstance(other, Combination) or type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((type(self).__name__, self.n, frozenset(self.terms)))

    def format_key(self, key):
        return str(key)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({format_scalar(c)})*{self.format_key(k)}" for k, c in self)

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, {self})"

"""Exact sparse univariate polynomials with arbitrary-precision integer coefficients."""

from __future__ import annotations

from fractions import Fraction

from .errors import DegreeBoundTooSmall, ZeroDenominator


class WeightPoly:
    """Sparse polynomial: map from exponent to integer coefficient.

    Invariants: exponents are non-negative ints, no stored coefficient is
    zero, and the zero polynomial is the empty map.  Instances are
    immutable by convention; operations return new polynomials.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[int, int] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                e = int(e)
                if e < 0:
                    raise ValueError(f"negative exponent {e}")
                c = clean.get(e, 0) + int(c)
                if c:
                    clean[e] = c
                else:
                    clean.pop(e, None)
        self.terms = clean

    @classmethod
    def zero(cls) -> "WeightPoly":
        return cls()

    @classmethod
    def one(cls) -> "WeightPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, exponent, coeff=1) -> "WeightPoly":
        return cls({exponent: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Largest exponent; -1 for the zero polynomial."""
        return max(self.terms) if self.terms else -1

    def min_exponent(self) -> int:
        return min(self.terms) if self.terms else -1

    def coefficient(self, exponent) -> int:
        return self.terms.get(exponent, 0)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, WeightPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, WeightPoly):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        res = WeightPoly.zero()
        res.terms = out
        return res

    def __neg__(self):
        res = WeightPoly.zero()
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if not isinstance(other, WeightPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, WeightPoly):
            return NotImplemented
        out: dict[int, int] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = ea + eb
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        res = WeightPoly.zero()
        res.terms = out
        return res

    def shift(self, d) -> "WeightPoly":
        """Multiply by x**d: every exponent increases by d (d >= 0)."""
        d = int(d)
        if d < 0:
            raise ValueError(f"shift must be non-negative, got {d}")
        res = WeightPoly.zero()
        res.terms = {e + d: c for e, c in self.terms.items()}
        return res

    def substitute_square(self) -> "WeightPoly":
        """Substitute x -> x**2: every exponent doubles."""
        res = WeightPoly.zero()
        res.terms = {2 * e: c for e, c in self.terms.items()}
        return res

    def reverse(self, degree_bound) -> "WeightPoly":
        """Map exponent e to degree_bound - e (coefficient reversal)."""
        degree_bound = int(degree_bound)
        if degree_bound < self.degree():
            raise DegreeBoundTooSmall(
                f"degree bound {degree_bound} < degree {self.degree()}"
            )
        res = WeightPoly.zero()
        res.terms = {degree_bound - e: c for e, c in self.terms.items()}
        return res

    def eval_f64(self, x) -> float:
        """Evaluate in float64, accumulating terms in ascending exponent order.

        The ordering is fixed so repeated runs are bit-identical.
        """
        x = float(x)
        acc = 0.0
        power = 1.0
        last = 0
        for e in sorted(self.terms):
            power *= x ** (e - last)
            last = e
            acc += float(self.terms[e]) * power
        return acc

    def eval_exact(self, num, den=1) -> Fraction:
        """Evaluate exactly at the rational num/den; returns a reduced Fraction."""
        if den == 0:
            raise ZeroDenominator("denominator must be non-zero")
        x = Fraction(num, den)
        acc = Fraction(0)
        power = Fraction(1)
        last = 0
        for e in sorted(self.terms):
            power *= x ** (e - last)
            last = e
            acc += self.terms[e] * power
        return acc

    def to_json_obj(self) -> dict:
        """JSON form: coefficients as decimal strings, sorted by exponent."""
        return {"terms": [[e, str(self.terms[e])] for e in sorted(self.terms)]}

    @classmethod
    def from_json_obj(cls, obj) -> "WeightPoly":
        return cls((int(e), int(c)) for e, c in obj["terms"])

    def __repr__(self):
        if not self.terms:
            return "WeightPoly(0)"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"x^{e}")
            else:
                parts.append(f"{c}*x^{e}")
        return "WeightPoly(" + " + ".join(parts) + ")"

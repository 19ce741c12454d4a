"""
Exact integer polynomials.

Thin immutable value type over ``sympy.Poly`` in ``ZZ``: coefficients are
stored ascending (the machine format), arithmetic and root counting are
delegated to sympy.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Tuple

from sympy import Poly, Rational, Symbol
from sympy.polys.domains import ZZ

from apps.core.exceptions import InternalInconsistencyError

X = Symbol('X')


def _rational(value):
    if value is None:
        return None
    value = Fraction(value)
    return Rational(value.numerator, value.denominator)


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'coeffs', _strip(int(c) for c in self.coeffs))

    # ----- construction -----

    @classmethod
    def from_poly(cls, poly):
        if poly.is_zero:
            return cls(())
        descending = []
        for c in poly.all_coeffs():
            c = Rational(c)
            if c.q != 1:
                raise InternalInconsistencyError(f"non integer coefficient {c} in {poly}")
            descending.append(int(c.p))
        return cls(tuple(reversed(descending)))

    @classmethod
    def from_descending(cls, descending):
        return cls(tuple(reversed(list(descending))))

    @classmethod
    def monomial(cls, degree, coefficient=1):
        return cls((0,) * degree + (coefficient,))

    @classmethod
    def from_terms(cls, terms):
        """``{degree: coefficient}``; repeated degrees are summed by the caller"""
        if not terms:
            return cls(())
        coeffs = [0] * (max(terms) + 1)
        for degree, coefficient in terms.items():
            coeffs[degree] += coefficient
        return cls(tuple(coeffs))

    @classmethod
    def parse(cls, text):
        """Ascending coefficient list ``"c0 c1 ... cn"``"""
        return cls(tuple(int(token) for token in text.replace(',', ' ').split()))

    @cached_property
    def poly(self):
        return Poly(list(reversed(self.coeffs)) or [0], X, domain=ZZ)

    # ----- structure -----

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def descending(self):
        return tuple(reversed(self.coeffs))

    def reciprocal(self):
        """X^d P(1/X)"""
        return IntPolynomial(tuple(reversed(self.coeffs)))

    def is_reciprocal(self):
        """True when P(X) = +/- X^d P(1/X)"""
        mirror = self.reciprocal()
        return mirror == self or mirror == -self

    # ----- arithmetic -----

    @staticmethod
    def _coerce(other):
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (size - len(self.coeffs))
        b = other.coeffs + (0,) * (size - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero or other.is_zero:
            return IntPolynomial(())
        return IntPolynomial.from_poly(self.poly * other.poly)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        return IntPolynomial.from_poly(self.poly ** exponent)

    def shift(self, k):
        """Multiply by X^k"""
        return IntPolynomial((0,) * k + self.coeffs) if self.coeffs else self

    def divmod(self, other):
        quotient, remainder = self.poly.div(other.poly)
        return IntPolynomial.from_poly(quotient), remainder

    def exact_div(self, other):
        quotient, remainder = self.divmod(other)
        if not remainder.is_zero:
            raise InternalInconsistencyError(
                f"{self} is not divisible by {other} (remainder {remainder.as_expr()})"
            )
        return quotient

    def rem(self, modulus):
        """Remainder modulo a monic polynomial; stays integral"""
        if modulus.leading not in (1, -1):
            raise InternalInconsistencyError(f"modulus {modulus} must be monic")
        return IntPolynomial.from_poly(self.poly.rem(modulus.poly))

    def gcd(self, other):
        return IntPolynomial.from_poly(self.poly.gcd(other.poly))

    def sqf_part(self):
        """Square-free part with positive leading coefficient"""
        part = IntPolynomial.from_poly(self.poly.sqf_part())
        return -part if part.leading < 0 else part

    # ----- evaluation -----

    def evaluate(self, x):
        value = Fraction(0) if isinstance(x, Fraction) else 0
        for c in reversed(self.coeffs):
            value = value * x + c
        return value

    def count_roots(self, lo=None, hi=None):
        """Real roots in the closed interval [lo, hi]; None is unbounded"""
        if self.is_zero:
            raise InternalInconsistencyError("zero polynomial has no isolated roots")
        return int(self.poly.count_roots(_rational(lo), _rational(hi)))

    # ----- rendering -----

    def ascending_str(self):
        return ' '.join(map(str, self.coeffs)) if self.coeffs else '0'

    def __str__(self):
        if self.is_zero:
            return '0'
        terms = []
        for degree in range(self.degree, -1, -1):
            c = self.coeffs[degree]
            if c == 0:
                continue
            magnitude = abs(c)
            if degree == 0:
                body = str(magnitude)
            else:
                power = 'X' if degree == 1 else f'X^{degree}'
                body = power if magnitude == 1 else f'{magnitude}{power}'
            sign = '-' if c < 0 else '+'
            if not terms:
                terms.append(body if c > 0 else f'-{body}')
            else:
                terms.append(f'{sign} {body}')
        return ' '.join(terms)


X_POLY = IntPolynomial((0, 1))
ONE = IntPolynomial((1,))

"""
Certified enclosures of largest real roots.

Every decision is exact: isolation and refinement run on rationals through
sympy's real root isolation, and two roots are declared equal only when the
gcd of their defining polynomials vanishes inside both isolating intervals.
"""
import logging
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from functools import cmp_to_key, lru_cache

from django.db import models
from sympy import Rational

from apps.core.exceptions import AmbiguousComparisonError, NoDominantRootError

from .polynomial import IntPolynomial

logger = logging.getLogger(__name__)

DEFAULT_WIDTH = Fraction(1, 10 ** 12)
DEFAULT_PRECISION_BITS = 1024


class Comparison(models.IntegerChoices):
    LESS = -1, 'less'
    EQUAL = 0, 'equal'
    GREATER = 1, 'greater'


def _fraction(value):
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def _sympy(value):
    return Rational(value.numerator, value.denominator)


@dataclass(frozen=True)
class RootEnclosure:
    """
    Isolating interval [lo, hi] of one real root of a square-free integer
    polynomial. ``lo == hi`` only for rational roots.
    """
    defining: IntPolynomial
    lo: Fraction
    hi: Fraction

    @classmethod
    def rational(cls, value):
        value = Fraction(value)
        defining = IntPolynomial((-value.numerator, value.denominator))
        return cls(defining, value, value)

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def is_exact(self):
        return self.lo == self.hi

    @property
    def midpoint(self):
        return (self.lo + self.hi) / 2

    def refine(self, width):
        """Enclosure of the same root no wider than ``width``"""
        width = Fraction(width)
        if self.is_exact or self.width <= width:
            return self
        lo, hi = self.defining.poly.refine_root(
            _sympy(self.lo), _sympy(self.hi), eps=_sympy(width), check_sqf=False,
        )
        return RootEnclosure(self.defining, _fraction(lo), _fraction(hi))

    def decimal(self, digits=14):
        """
        Midpoint rounded half-even to ``digits`` decimals after refinement.
        A root just below a decimal boundary can print at the boundary; the
        certified bounds are ``lo`` and ``hi``.
        """
        enclosure = self.refine(Fraction(1, 10 ** (digits + 2)))
        mid = enclosure.midpoint
        with localcontext() as context:
            context.prec = digits + 40
            value = Decimal(mid.numerator) / Decimal(mid.denominator)
            return str(value.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN))

    def log_decimal(self, digits=14):
        enclosure = self.refine(Fraction(1, 10 ** (digits + 2)))
        mid = enclosure.midpoint
        with localcontext() as context:
            context.prec = digits + 40
            value = (Decimal(mid.numerator) / Decimal(mid.denominator)).ln()
            return str(value.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN))

    def __float__(self):
        return float(self.midpoint)

    def __str__(self):
        return self.decimal()

    def as_dict(self, digits=14):
        return {
            'coefficients': list(self.defining.coeffs),
            'root': self.decimal(digits),
            'lo': str(self.lo),
            'hi': str(self.hi),
        }


def largest_real_root(polynomial, width=DEFAULT_WIDTH):
    """Enclosure of the largest real root of ``polynomial`` (any sign)"""
    defining = polynomial.sqf_part()
    if defining.degree < 1:
        raise NoDominantRootError(f"{polynomial} has no real roots")
    intervals = defining.poly.intervals()
    if not intervals:
        raise NoDominantRootError(f"{polynomial} has no real roots")
    (lo, hi), _ = max(intervals, key=lambda item: _fraction(item[0][1]))
    return RootEnclosure(defining, _fraction(lo), _fraction(hi)).refine(width)


@lru_cache(maxsize=4096)
def _perron_root(polynomial, width):
    defining = polynomial.sqf_part()
    if defining.degree < 1:
        raise NoDominantRootError(f"{polynomial} has no real root > 1")
    above_one = defining.count_roots(1, None) - (1 if defining.evaluate(1) == 0 else 0)
    if above_one <= 0:
        raise NoDominantRootError(f"{polynomial} has no real root > 1")
    return largest_real_root(defining, width)


def perron_root(polynomial, width=DEFAULT_WIDTH):
    """
    Certified enclosure of the largest real root of ``polynomial``, which
    must exceed 1. The square-free part is taken first.
    """
    return _perron_root(polynomial, Fraction(width))


def compare_roots(a, b, precision_bits=DEFAULT_PRECISION_BITS):
    """Exact order of the two enclosed roots"""
    floor = Fraction(1, 2 ** precision_bits)
    if a.hi < b.lo:
        return Comparison.LESS
    if b.hi < a.lo:
        return Comparison.GREATER
    common = a.defining.gcd(b.defining)
    if common.degree >= 1:
        lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
        if common.count_roots(lo, hi) > 0:
            return Comparison.EQUAL
    while True:
        width = max(a.width, b.width) / 4
        if width < floor:
            raise AmbiguousComparisonError(
                "roots could not be separated",
                branches=(str(a.defining), str(b.defining)),
            )
        a, b = a.refine(width), b.refine(width)
        if a.hi < b.lo:
            return Comparison.LESS
        if b.hi < a.lo:
            return Comparison.GREATER


def compare_to_rational(enclosure, value, precision_bits=DEFAULT_PRECISION_BITS):
    return compare_roots(enclosure, RootEnclosure.rational(value), precision_bits)


def sort_roots(items, key=lambda item: item, precision_bits=DEFAULT_PRECISION_BITS):
    """Sort ascending by enclosed root, exactly"""
    return sorted(
        items,
        key=cmp_to_key(lambda x, y: int(compare_roots(key(x), key(y), precision_bits))),
    )


def dedup_roots(items, key=lambda item: item, precision_bits=DEFAULT_PRECISION_BITS):
    """
    Sorted items with one representative per distinct root; the first
    item in input order wins among equals.
    """
    ordered = sort_roots(items, key, precision_bits)
    unique = []
    for item in ordered:
        if unique and compare_roots(key(unique[-1]), key(item), precision_bits) == Comparison.EQUAL:
            continue
        unique.append(item)
    logger.debug("dedup: %d items, %d distinct roots", len(ordered), len(unique))
    return unique

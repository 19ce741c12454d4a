"""
Exact arithmetic in Z[theta] for a Perron number theta.

Elements are integer polynomials reduced modulo the square-free defining
polynomial P of theta. Their signs are decided exactly: an element vanishes
iff gcd(q, P) has a root in theta's isolating interval, otherwise the
interval is refined until q has no root left in it.
"""
import logging
from fractions import Fraction

from apps.core.exceptions import AmbiguousComparisonError, InternalInconsistencyError

from .polynomial import ONE, X_POLY, IntPolynomial
from .roots import DEFAULT_PRECISION_BITS, perron_root

logger = logging.getLogger(__name__)


class ThetaField:
    def __init__(self, polynomial, enclosure=None, precision_bits=DEFAULT_PRECISION_BITS):
        modulus = polynomial.sqf_part()
        if modulus.leading != 1:
            raise InternalInconsistencyError(f"{polynomial} is not monic")
        if modulus.coeffs[0] not in (1, -1):
            raise InternalInconsistencyError(f"{polynomial}: theta is not a unit")
        self.modulus = modulus
        self.precision_bits = precision_bits
        self.enclosure = enclosure if enclosure is not None else perron_root(modulus)
        # theta * Q(theta) = -P(0)
        self._theta_inverse = IntPolynomial(modulus.coeffs[1:]) * (-modulus.coeffs[0])

    def __repr__(self):
        return f"ThetaField({self.modulus})"

    def element(self, polynomial):
        if isinstance(polynomial, int):
            polynomial = IntPolynomial((polynomial,))
        return ThetaElement(self, polynomial.rem(self.modulus))

    @property
    def zero(self):
        return ThetaElement(self, IntPolynomial(()))

    @property
    def one(self):
        return ThetaElement(self, ONE)

    @property
    def theta(self):
        return self.element(X_POLY)

    @property
    def theta_inverse(self):
        return self.element(self._theta_inverse)

    def _refine(self):
        floor = Fraction(1, 2 ** self.precision_bits)
        if self.enclosure.width <= floor:
            raise AmbiguousComparisonError(
                f"sign undecided within 2^-{self.precision_bits}",
                branches=('positive', 'negative'),
            )
        self.enclosure = self.enclosure.refine(self.enclosure.width / 16)

    def sign(self, polynomial):
        if polynomial.is_zero:
            return 0
        enclosure = self.enclosure
        if enclosure.is_exact:
            value = polynomial.evaluate(enclosure.lo)
            return (value > 0) - (value < 0)
        common = polynomial.gcd(self.modulus)
        if common.degree >= 1 and common.count_roots(enclosure.lo, enclosure.hi) > 0:
            return 0
        while polynomial.count_roots(self.enclosure.lo, self.enclosure.hi) > 0:
            self._refine()
        value = polynomial.evaluate(self.enclosure.lo)
        return 1 if value > 0 else -1


class ThetaElement:
    __slots__ = ('field', 'polynomial')
    __hash__ = None

    def __init__(self, field, polynomial):
        self.field = field
        self.polynomial = polynomial

    def _lift(self, other):
        if isinstance(other, ThetaElement):
            if other.field is not self.field:
                raise InternalInconsistencyError("elements of different fields")
            return other.polynomial
        if isinstance(other, int):
            return IntPolynomial((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ThetaElement(self.field, self.polynomial + other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ThetaElement(self.field, self.polynomial - other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return ThetaElement(self.field, -self.polynomial)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ThetaElement(self.field, (self.polynomial * other).rem(self.field.modulus))

    __rmul__ = __mul__

    def sign(self):
        return self.field.sign(self.polynomial)

    def is_zero(self):
        return self.sign() == 0

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __eq__(self, other):
        lifted = self._lift(other)
        if lifted is NotImplemented:
            return NotImplemented
        return (self - other).sign() == 0

    def __float__(self):
        return float(self.polynomial.evaluate(self.field.enclosure.midpoint))

    def __repr__(self):
        return f"ThetaElement({self.polynomial})"


def theta_sum(elements, field):
    total = field.zero
    for element in elements:
        total = total + element
    return total

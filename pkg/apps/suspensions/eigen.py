"""
Exact Perron eigenvectors of a primitive transition matrix.

With chi(x) = sum c_m x^m the characteristic polynomial of M, the
Faddeev recurrence B_{n-1} = I, B_{m-1} = M B_m + c_m I gives
adj(xI - M) = sum x^m B_m. At a simple eigenvalue the adjugate has rank one
and its nonzero columns are eigenvectors, so lambda (for theta) and tau (for
1/theta) come out as vectors of Z[theta] without any rounding. tau is
scaled by theta^(n-1), which keeps it in Z[theta] and does not change its
sign.
"""
import logging
from dataclasses import dataclass
from typing import Any, Optional, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from apps.core.exceptions import ConstructionError, NotPrimitiveError
from apps.matrices.transition import path_matrix
from apps.polynomials.polynomial import IntPolynomial
from apps.polynomials.roots import DEFAULT_PRECISION_BITS
from apps.polynomials.theta import ThetaField

from .suspension import HeightInterval, WeakSuspensionDatum, height_interval

logger = logging.getLogger(__name__)


def adjugate_terms(matrix, polynomial=None):
    """Integer matrices B_0 .. B_{n-1} with adj(xI - M) = sum x^m B_m"""
    n = matrix.n
    polynomial = polynomial or matrix.charpoly()
    coeffs = polynomial.coeffs
    identity = DomainMatrix.eye(n, ZZ)
    terms = [None] * n
    terms[n - 1] = identity
    for m in range(n - 1, 0, -1):
        scalar = DomainMatrix.from_list(
            [[coeffs[m] if i == j else 0 for j in range(n)] for i in range(n)], ZZ
        )
        terms[m - 1] = matrix.domain.matmul(terms[m]) + scalar
    return [[[int(value) for value in row] for row in term.to_list()] for term in terms]


def _column(field, terms, column, reverse=False):
    n = len(terms)
    vector = []
    for i in range(n):
        coeffs = [terms[m][i][column] for m in range(n)]
        if reverse:
            coeffs.reverse()
        vector.append(field.element(IntPolynomial(tuple(coeffs))))
    return tuple(vector)


def _first_nonzero_column(field, terms, reverse):
    for column in range(len(terms)):
        vector = _column(field, terms, column, reverse)
        if any(not value.is_zero() for value in vector):
            return vector
    raise ConstructionError("adjugate vanishes: eigenvalue is not simple")


@dataclass
class EigenData:
    matrix: Any
    field: ThetaField
    lengths: Tuple[Any, ...]
    tau: Tuple[Any, ...]
    interval: Optional[HeightInterval] = None
    tau_sign: int = 1

    @property
    def theta(self):
        return self.field.enclosure

    @property
    def polynomial(self):
        return self.field.modulus

    def normalized_lengths(self):
        """Lengths as floats summing to 1, for display"""
        values = [float(value) for value in self.lengths]
        total = sum(values)
        return [value / total for value in values]

    def datum(self, permutation):
        return WeakSuspensionDatum.build(permutation, self.lengths, self.tau)

    def as_dict(self):
        return {
            'theta': self.theta.as_dict(),
            'lengths': self.normalized_lengths(),
            'tau': [float(value) for value in self.tau],
            'tau_sign': self.tau_sign,
            'interval': self.interval.as_dict() if self.interval is not None else None,
        }


def perron_field(matrix, precision_bits=DEFAULT_PRECISION_BITS):
    if not matrix.is_primitive():
        raise NotPrimitiveError(f"matrix is not primitive:\n{matrix}")
    return ThetaField(matrix.charpoly(), precision_bits=precision_bits)


def _positive_column(field, terms):
    lengths = _first_nonzero_column(field, terms, reverse=False)
    if any(value.sign() < 0 for value in lengths):
        lengths = tuple(-value for value in lengths)
    if any(value.sign() <= 0 for value in lengths):
        raise ConstructionError("Perron eigenvector is not positive")
    return lengths


def perron_lengths(matrix, field=None, precision_bits=DEFAULT_PRECISION_BITS):
    """Positive eigenvector of theta, entries in Z[theta]"""
    field = field or perron_field(matrix, precision_bits)
    return field, _positive_column(field, adjugate_terms(matrix))


def eigen_data(matrix, permutation=None, precision_bits=DEFAULT_PRECISION_BITS):
    """
    theta, lambda and tau of a primitive matrix. When ``permutation`` is
    given, tau is sign-normalized so that its height interval over the
    permutation is nonempty.
    """
    field = perron_field(matrix, precision_bits)
    terms = adjugate_terms(matrix)
    lengths = _positive_column(field, terms)
    tau = _first_nonzero_column(field, terms, reverse=True)

    if permutation is None:
        return EigenData(matrix, field, lengths, tau)

    for sign in (1, -1):
        candidate = tau if sign == 1 else tuple(-value for value in tau)
        interval = height_interval(permutation, candidate)
        if not interval.is_empty:
            logger.debug("weak suspension over %s with tau sign %+d", permutation, sign)
            return EigenData(matrix, field, lengths, candidate, interval, sign)
    raise ConstructionError(
        f"no sign of tau gives a weak suspension over {permutation}",
        permutation=str(permutation),
    )


def path_eigen_data(path, case='auto', precision_bits=DEFAULT_PRECISION_BITS):
    return eigen_data(path_matrix(path, case), path.start, precision_bits)

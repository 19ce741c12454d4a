"""
Closed-form characteristic polynomials of the extremal paths.

Each polynomial is (X + 1) times the characteristic polynomial of the
matrix of gamma_{n,k} or gamma_{n,K_n,l}; the largest real roots are the
dilatations theta_{n,k} and theta_{n,K_n,l}.
"""
import logging
from math import gcd

from apps.core.exceptions import (
    InvalidSizeError,
    MustReduceError,
    OutOfRangeError,
    ReducibleCaseError,
)
from apps.permutations.words import k_max, l_max

from .polynomial import ONE, IntPolynomial
from .roots import DEFAULT_WIDTH, perron_root

logger = logging.getLogger(__name__)

X2_MINUS_1 = IntPolynomial((-1, 0, 1))


def _x(degree, coefficient=1):
    return IntPolynomial.monomial(degree, coefficient)


def _ceil_div(a, b):
    return -(-a // b)


def reduce_pair(n, k):
    """(n', k') with theta_{n,k} = theta_{n',k'} and gcd(n'-1, k') = 1"""
    d = gcd(n - 1, k)
    return (n - 1) // d + 1, k // d


def _check_size(n, minimum=4):
    if n < minimum:
        raise InvalidSizeError(f"closed forms need n >= {minimum}, got {n}")


def family_P_nk(n, k):
    """
    P_{n,k} = X^{n+1} - 2 sum_{i=2}^{n-1} X^i + 1
              + 2 sum_{i=1}^{k-1} (X^{c_i} + X^{c_i + 1}),  c_i = ceil(i(n-1)/k)
    """
    _check_size(n)
    if not 1 <= k <= k_max(n):
        raise OutOfRangeError(f"P_{{n,k}} needs 1 <= k <= {k_max(n)}, got k = {k}")
    if gcd(n - 1, k) > 1:
        raise MustReduceError(*reduce_pair(n, k))
    terms = {n + 1: 1, 0: 1}
    for i in range(2, n):
        terms[i] = -2
    for i in range(1, k):
        c = _ceil_div(i * (n - 1), k)
        terms[c] += 2
        terms[c + 1] += 2
    return IntPolynomial.from_terms(terms)


def family_P_nKl_even(n, l):
    """P_{n,K_n} - N_{n,l} / (X^2 - 1) for even n and 1 <= l <= L_n"""
    _check_size(n)
    if n % 2:
        raise OutOfRangeError(f"even family needs n even, got {n}")
    if not 1 <= l <= l_max(n):
        raise OutOfRangeError(f"even family needs 1 <= l <= {l_max(n)}, got l = {l}")
    numerator = (_x(n - 2 * l + 2) + _x(n - 2 * l + 4) + _x(n - 1, 2)
                 - _x(2 * l + 1) - _x(2 * l - 1) - _x(4, 2))
    return family_P_nk(n, k_max(n)) - numerator.exact_div(X2_MINUS_1)


def _s_polynomial(n):
    half = (n - 1) // 2
    return IntPolynomial.from_terms({
        0: 1,
        2: -3,
        half: -2,
        half + 2: 8,
        half + 4: -2,
        n + 1: -3,
        n + 3: 1,
    })


def family_P_nKl_odd(n, l):
    """
    (S_n + 2(X^{(n+7)/2-l} - X^l + X^{l+(n-1)/2} - X^{n+3-l})) / (X^2 - 1)
    for n = 3 mod 4 and odd l <= L_n.
    """
    _check_size(n, 7)
    if n % 4 != 3:
        raise OutOfRangeError(f"odd family needs n = 3 mod 4, got {n}")
    if not 1 <= l <= l_max(n):
        raise OutOfRangeError(f"odd family needs 1 <= l <= {l_max(n)}, got l = {l}")
    if l % 2 == 0:
        raise ReducibleCaseError((n + 1) // 2, l // 2)
    half = (n - 1) // 2
    numerator = _s_polynomial(n) + (
        _x((n + 7) // 2 - l) - _x(l) + _x(l + half) - _x(n + 3 - l)
    ) * 2
    return numerator.exact_div(X2_MINUS_1)


def systole_polynomial(n):
    _check_size(n)
    if n % 2 == 0:
        return _x(n + 1) - _x(n - 1, 2) - _x(2, 2) + ONE
    if n % 4 == 1:
        return _x(n + 1) - _x(n - 1, 2) - _x((n + 1) // 2, 2) - _x(2, 2) + ONE
    return (_x(n + 1) - _x(n - 1, 2) - _x((n + 3) // 2, 4)
            + _x((n - 1) // 2, 4) + _x(2, 2) - ONE)


def second_polynomial(n):
    """Second least dilatation for even n >= 18, n != 4 mod 6"""
    if n % 2 or n < 18 or n % 6 == 4:
        raise OutOfRangeError(
            f"second minimum is only known for even n >= 18 with n != 4 mod 6, got {n}"
        )
    return (_x(n + 1) - _x(n - 1, 2) - _x(_ceil_div(2 * n, 3), 2)
            - _x(n // 3 + 1, 2) - _x(2, 2) + ONE)


def family_polynomial(n, k=None, l=None):
    """
    Dispatch to the closed form of gamma_{n,k} (``l`` unset) or of
    gamma_{n,K_n,l}. ``k`` defaults to K_n.
    """
    k = k_max(n) if k is None else k
    if l is None:
        return family_P_nk(n, k)
    if k != k_max(n):
        raise OutOfRangeError(f"l-families exist for k = K_n = {k_max(n)} only")
    if n % 2 == 0:
        return family_P_nKl_even(n, l)
    if n % 4 == 3:
        return family_P_nKl_odd(n, l)
    raise OutOfRangeError(f"no l-family closed form for n = 1 mod 4 (n = {n})")


def family_root(n, k=None, l=None, width=DEFAULT_WIDTH):
    """
    Perron root of a family member, following the reduction rules when the
    pair must be reduced first.
    """
    try:
        return perron_root(family_polynomial(n, k, l), width)
    except MustReduceError as exc:
        logger.debug("theta_{%d,%s} reduces to theta_{%d,%d}", n, k, exc.n_prime, exc.k_prime)
        return family_root(exc.n_prime, exc.k_prime, None, width)
    except ReducibleCaseError as exc:
        logger.debug("theta_{%d,K,%s} reduces to theta_{%d,K,%d}", n, l, exc.n_prime, exc.l_prime)
        return family_root(exc.n_prime, None, exc.l_prime, width)

"""
Closed-form matrices of the extremal paths.

These reproduce the path-built matrices up to conjugation by a relabeling,
so they are compared with ``path_matrix`` through characteristic
polynomials. Indices below are 1-based, as in the displayed matrices.
"""
from apps.core.exceptions import OutOfRangeError, ReducibleCaseError
from apps.permutations.words import k_max, l_max

from .transition import TransitionMatrix


def _zeros(n):
    return [[0] * (n + 1) for _ in range(n + 1)]


def _freeze(grid):
    return TransitionMatrix(tuple(tuple(row[1:]) for row in grid[1:]))


def _A_nk(n):
    a = _zeros(n)
    for j in range(2, n - 1):
        a[1][j] = 2
        a[n][j] = 1
    a[1][n - 1] = a[1][n] = 1
    a[n][n] = 1
    for i in range(2, n - 1):
        a[i][i + 1] = 1
    a[n - 1][1] = 1
    return a


def _V_nk_grid(n, k):
    if n < 4 or not 1 <= k <= k_max(n):
        raise OutOfRangeError(f"V_{{n,k}} needs n >= 4 and 1 <= k <= K_n, got ({n}, {k})")
    v = _A_nk(n)
    for i in range(1, k):
        l = i * (n - 1) // k + 1
        v[1][l] -= 1
        v[1][l + 1] -= 2
        v[n][l] -= 1
        v[n][l + 1] -= 1
    return v


def V_nk(n, k):
    """A_n - B_{n,k}"""
    return _freeze(_V_nk_grid(n, k))


def V_nKl_even(n, l):
    """V_{n,K_n} + C_{n,l} for even n, 1 <= l <= L_n"""
    if n % 2 or n < 4 or not 1 <= l <= l_max(n):
        raise OutOfRangeError(f"even closed form needs even n >= 4, 1 <= l <= L_n, got ({n}, {l})")
    K = k_max(n)
    v = _V_nk_grid(n, K)
    v[2 * l][2] += 1
    v[2 * l][2 * l + 1] += 1
    for j in range(l, K):
        v[2 * l][2 * j + 3] += 2
    return _freeze(v)


def V_nKL2_even(n):
    """
    V_{n,K_n} + B_n, the matrix of gamma_{n,K_n,L_n+2} for even n. B_n has
    ones in rows 1 and n - 2 at the odd columns 3 .. 2K_n - 1 and at n.
    """
    if n % 2 or n < 6:
        raise OutOfRangeError(f"even closed form needs even n >= 6, got {n}")
    K = k_max(n)
    v = _V_nk_grid(n, K)
    for j in range(1, K):
        v[1][2 * j + 1] += 1
        v[n - 2][2 * j + 1] += 1
    v[1][n] += 1
    v[n - 2][n] += 1
    return _freeze(v)


def _check_odd(n):
    if n < 7 or n % 4 != 3:
        raise OutOfRangeError(f"odd closed form needs n = 3 mod 4, n >= 7, got {n}")


def _A_odd_grid(n):
    K = k_max(n)
    m = K + 1
    a = _zeros(n)
    for i in range(1, K + 1):
        a[i][K + i] = 1
        a[K + 2 + i][i] = 1
        a[m][i] = 1
    a[m][n - 2], a[m][n - 1], a[m][n] = 2, 2, 1
    a[K + 2][n - 1] = 1
    a[n][n - 2] = a[n][n - 1] = a[n][n] = 1
    return a


def A_odd(n):
    """Block matrix of gamma_{n,K_n} for n = 3 mod 4"""
    _check_odd(n)
    return _freeze(_A_odd_grid(n))


def V_nKl_odd(n, l):
    """A_n with row n - l rebuilt, for odd l <= L_n"""
    _check_odd(n)
    if not 1 <= l <= l_max(n):
        raise OutOfRangeError(f"odd closed form needs 1 <= l <= {l_max(n)}, got {l}")
    if l % 2 == 0:
        raise ReducibleCaseError((n + 1) // 2, l // 2)
    m = k_max(n) + 1
    a = _A_odd_grid(n)
    row = [0] * (n + 1)
    for j in range(1, m - l + 1):
        row[j] = 2
    row[n - 2] = 1
    row[n - 1] = 2
    a[n - l] = row
    return _freeze(a)


def V_nKL2_odd(n):
    """Block matrix of gamma_{n,K_n,L_n+2} for n = 3 mod 4"""
    _check_odd(n)
    K = k_max(n)
    m = K + 1
    a = _A_odd_grid(n)
    a[m] = [0] + [2] * K + [0] * K + [2, 3, 2]
    a[m + 1] = [0] + [1] * K + [0] * K + [0, 2, 1]
    return _freeze(a)

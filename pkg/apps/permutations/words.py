"""
Move words and the named extremal paths.

Words use ``t``/``b`` for right moves and ``T``/``B`` for left moves, either
spelled out (``bbt``) or in run-length form (``b^2 t``).
"""
import re
from itertools import groupby

from apps.core.exceptions import InvalidWordError, OutOfRangeError

from .permutation import MoveKind

_TOKEN = re.compile(r'\s*([tbTB])(?:\^(\d+))?\s*')


def parse_word(text):
    """Parse a move word into a tuple of MoveKind"""
    moves = []
    position = 0
    text = text or ''
    while position < len(text):
        match = _TOKEN.match(text, position)
        if match is None or match.end() == position:
            if text[position:].strip() == '':
                break
            raise InvalidWordError(f"unexpected {text[position:]!r} in word {text!r}")
        letter, count = match.group(1), match.group(2)
        moves.extend([MoveKind(letter)] * (int(count) if count is not None else 1))
        position = match.end()
    return tuple(moves)


def format_word(moves, run_length=True):
    """Inverse of parse_word; the empty word renders as an empty string"""
    letters = [MoveKind(move).value for move in moves]
    if not run_length:
        return ''.join(letters)
    parts = []
    for letter, run in groupby(letters):
        count = len(list(run))
        parts.append(letter if count == 1 else f"{letter}^{count}")
    return ' '.join(parts)


def runs(moves):
    """Run-length decomposition as (MoveKind, length) pairs"""
    return [(MoveKind(kind), len(list(run))) for kind, run in groupby(moves)]


def k_max(n):
    """K_n, the largest admissible start index on the central loop"""
    return n // 2 - 1


def l_max(n):
    """L_n = n - 2 - K_n"""
    return n - 2 - k_max(n)


def _power(kind, exponent):
    return [kind] * exponent


def gamma_word(n, k, l=None):
    """
    Move word of gamma_{n,k} (or gamma_{n,k,l}), read from the start
    ``central(n).t^k``.
    """
    t, b = MoveKind.RIGHT_T, MoveKind.RIGHT_B
    if n < 3 or not 1 <= k or n - 1 - 2 * k < 0:
        raise OutOfRangeError(f"gamma_{{n,k}} needs n >= 3 and 1 <= k <= (n-1)/2, got ({n}, {k})")
    if l is None:
        return tuple(_power(b, n - 1 - k) + _power(t, n - 1 - 2 * k))
    top = 2 * n - 2 - 3 * k
    if not 1 <= l <= top:
        raise OutOfRangeError(f"gamma_{{n,k,l}} needs 1 <= l <= {top}, got l = {l}")
    if l <= n - 2 - k:
        word = (_power(b, l) + _power(t, n - 1 - k - l)
                + _power(b, n - 1 - k - l) + _power(t, n - 1 - 2 * k))
    else:
        word = (_power(b, n - 1 - k) + _power(t, l - (n - 1 - k))
                + _power(b, 2 * (n - 1 - k) - l) + _power(t, top - l))
    return tuple(word)

"""
Transition matrices of Rauzy paths.

Matrices are square, nonnegative, integer and 1-indexed by letter in the
mathematical sense: row/column ``a - 1`` belongs to letter ``a``. Exact
linear algebra goes through ``sympy.polys.matrices.DomainMatrix`` over ZZ.
"""
import hashlib
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from apps.core.exceptions import (
    InvalidSizeError,
    InvalidTransvectionError,
    MembershipError,
    NotCandidatePathError,
)
from apps.permutations.permutation import LabeledPermutation, MoveKind
from apps.permutations.words import format_word, gamma_word, parse_word
from apps.polynomials.polynomial import IntPolynomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransitionMatrix:
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(value) for value in row) for row in self.rows)
        object.__setattr__(self, 'rows', rows)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise InvalidSizeError(f"matrix must be square and nonempty, got {len(rows)} rows")

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_domain(cls, matrix):
        return cls(tuple(tuple(int(value) for value in row) for row in matrix.to_list()))

    @classmethod
    def parse(cls, text):
        """Row-major integers, one row per line"""
        return cls(tuple(
            tuple(int(token) for token in line.split())
            for line in text.strip().splitlines() if line.strip()
        ))

    def __str__(self):
        return '\n'.join(' '.join(map(str, row)) for row in self.rows)

    @property
    def n(self):
        return len(self.rows)

    def entry(self, row, column):
        """1-indexed entry"""
        return self.rows[row - 1][column - 1]

    @cached_property
    def domain(self):
        return DomainMatrix.from_list([list(row) for row in self.rows], ZZ)

    def __matmul__(self, other):
        return TransitionMatrix.from_domain(self.domain.matmul(other.domain))

    def __add__(self, other):
        return TransitionMatrix.from_domain(self.domain + other.domain)

    def __sub__(self, other):
        return TransitionMatrix.from_domain(self.domain - other.domain)

    def __pow__(self, exponent):
        return TransitionMatrix.from_domain(self.domain ** exponent)

    def transvected(self, winner, loser):
        """self @ (I + E_{winner, loser}): column ``loser`` gains column ``winner``"""
        return TransitionMatrix(tuple(
            row[:loser - 1] + (row[loser - 1] + row[winner - 1],) + row[loser:]
            for row in self.rows
        ))

    def transpose(self):
        return TransitionMatrix(tuple(zip(*self.rows)))

    def det(self):
        return int(self.domain.det())

    def is_nonnegative(self):
        return all(value >= 0 for row in self.rows for value in row)

    def column_sums(self):
        return tuple(sum(column) for column in zip(*self.rows))

    def min_column_sum(self):
        """delta(M), a lower bound on the spectral radius of a nonnegative M"""
        return min(self.column_sums())

    def charpoly(self):
        return charpoly_exact(self)

    def is_primitive(self):
        return is_primitive(self)

    @cached_property
    def digest(self):
        return hashlib.sha1(repr(self.rows).encode()).hexdigest()[:20]


def elementary_matrix(winner, loser, n):
    """Transvection I + E_{winner, loser}"""
    if winner == loser:
        raise InvalidTransvectionError(f"winner and loser are both {winner}")
    if not (1 <= winner <= n and 1 <= loser <= n):
        raise InvalidTransvectionError(f"labels ({winner}, {loser}) outside 1..{n}")
    return TransitionMatrix(tuple(
        tuple(int(i == j or (i == winner and j == loser)) for j in range(1, n + 1))
        for i in range(1, n + 1)
    ))


def relabeling_matrix(mapping, n):
    """P with p_{a, g(a)} = 1 for the label bijection g"""
    return TransitionMatrix(tuple(
        tuple(int(mapping[a] == b) for b in range(1, n + 1)) for a in range(1, n + 1)
    ))


def charpoly_exact(matrix):
    """det(X I - M) over ZZ"""
    descending = [int(c) for c in matrix.domain.charpoly()]
    return IntPolynomial.from_descending(descending)


def _bool_product(a, b):
    result = []
    for row in a:
        acc = 0
        j = 0
        while row:
            if row & 1:
                acc |= b[j]
            row >>= 1
            j += 1
        result.append(acc)
    return result


def is_primitive(matrix):
    """
    Some power of the support is positive. Squares the boolean support
    until the exponent passes the Wielandt bound (n - 1)^2 + 1.
    """
    n = matrix.n
    full = (1 << n) - 1
    support = [sum(1 << j for j, value in enumerate(row) if value) for row in matrix.rows]
    bound = (n - 1) ** 2 + 1
    exponent = 1
    while exponent < bound:
        support = _bool_product(support, support)
        exponent *= 2
    return all(row == full for row in support)


class RauzyPath:
    """
    A start permutation and a word of moves. End, visited vertices and the
    winner/loser pairs are derived lazily.
    """

    def __init__(self, start, moves):
        self.start = start
        self.moves = tuple(MoveKind(move) for move in moves)

    @classmethod
    def build(cls, start, word):
        moves = parse_word(word) if isinstance(word, str) else tuple(word)
        return cls(start, moves)

    @classmethod
    def central_start(cls, n, k):
        """central(n).t^k"""
        permutation = LabeledPermutation.central(n)
        for _ in range(k):
            permutation = permutation.right_step(MoveKind.RIGHT_T).permutation
        return permutation

    @classmethod
    def from_central(cls, n, k, word):
        return cls.build(cls.central_start(n, k), word)

    @classmethod
    def gamma(cls, n, k, l=None):
        """gamma_{n,k} or gamma_{n,k,l}"""
        return cls(cls.central_start(n, k), gamma_word(n, k, l))

    def __repr__(self):
        return f"RauzyPath({self.start}, {format_word(self.moves) or '-'})"

    def __len__(self):
        return len(self.moves)

    def __eq__(self, other):
        return isinstance(other, RauzyPath) and (self.start, self.moves) == (other.start, other.moves)

    def __hash__(self):
        return hash((self.start, self.moves))

    @property
    def n(self):
        return self.start.n

    @property
    def word(self):
        return format_word(self.moves)

    @cached_property
    def steps(self):
        steps = []
        permutation = self.start
        for move in self.moves:
            step = permutation.step(move)
            steps.append(step)
            permutation = step.permutation
        return tuple(steps)

    @property
    def end(self):
        return self.steps[-1].permutation if self.steps else self.start

    @property
    def winners(self):
        return tuple(step.winner for step in self.steps)

    @property
    def losers(self):
        return tuple(step.loser for step in self.steps)

    def vertices(self):
        return (self.start,) + tuple(step.permutation for step in self.steps)

    def is_pure(self):
        """Never visits the central permutation"""
        central = LabeledPermutation.central(self.n).reduced()
        return all(vertex.reduced() != central for vertex in self.vertices())

    @property
    def is_closed(self):
        return self.end.reduced() == self.start.reduced()

    @property
    def is_symmetric(self):
        return self.end.reduced() == self.start.symmetric().reduced()

    def case(self):
        if self.is_closed:
            return 'closed'
        if self.is_symmetric:
            return 'symmetric'
        return None

    def extended(self, moves):
        return RauzyPath(self.start, self.moves + tuple(moves))

    def insert_loop(self, position, loop):
        """
        Insert the closed word ``loop`` at the vertex reached after
        ``position`` moves.
        """
        loop = parse_word(loop) if isinstance(loop, str) else tuple(loop)
        vertex = self.vertices()[position]
        probe = RauzyPath(vertex, loop)
        if not probe.is_closed:
            raise MembershipError(f"{format_word(loop)} is not a closed loop at {vertex}")
        return RauzyPath(self.start, self.moves[:position] + loop + self.moves[position:])


def tilde_matrix(path):
    """Ordered product of the transvections of the path's steps"""
    n = path.n
    columns = [[int(i == j) for i in range(n)] for j in range(n)]
    for step in path.steps:
        winner, loser = columns[step.winner - 1], columns[step.loser - 1]
        for i in range(n):
            loser[i] += winner[i]
    return TransitionMatrix(tuple(zip(*columns)))


def path_matrix(path, case='auto'):
    """
    V = V~ P. ``case`` is 'closed', 'symmetric' or 'auto' (closed first).
    """
    if case == 'auto':
        case = path.case()
        if case is None:
            raise NotCandidatePathError(
                f"{path}: end {path.end} matches neither the start nor its symmetric"
            )
    if case == 'closed':
        if not path.is_closed:
            raise NotCandidatePathError(f"{path}: end {path.end} differs from the start (closed case)")
        mapping = path.end.relabeling_to(path.start)
    elif case == 'symmetric':
        if not path.is_symmetric:
            raise NotCandidatePathError(
                f"{path}: end {path.end} differs from the symmetric of the start (symmetric case)"
            )
        mapping = path.end.symmetric().relabeling_to(path.start)
    else:
        raise NotCandidatePathError(f"unknown case {case!r}")
    return tilde_matrix(path) @ relabeling_matrix(mapping, path.n)


def insert_loop(path, position, loop):
    return path.insert_loop(position, loop)

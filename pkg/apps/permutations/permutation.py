"""
Labeled two-row permutations and the combinatorial Rauzy moves.

A permutation on n letters is stored as its two rows: ``top[i]`` is the
label at position i+1 of the top row, ``bottom[i]`` likewise for the
bottom row. Labels are always the integers 1..n.
"""
from dataclasses import dataclass
from typing import NamedTuple, Tuple

from django.db import models

from apps.core.exceptions import (
    InvalidPermutationError,
    InvalidSizeError,
    UndefinedMoveError,
)


class MoveKind(models.TextChoices):
    RIGHT_T = 't', 'right t'
    RIGHT_B = 'b', 'right b'
    LEFT_T = 'T', 'left t'
    LEFT_B = 'B', 'left b'

    @property
    def is_left(self):
        return self.value.isupper()

    @property
    def right_part(self):
        """The right move this move conjugates by the symmetric involution"""
        return MoveKind(self.value.lower())

    @property
    def opposite(self):
        """Same side, other type"""
        return MoveKind({'t': 'b', 'b': 't', 'T': 'B', 'B': 'T'}[self.value])


class RauzyStep(NamedTuple):
    permutation: 'LabeledPermutation'
    winner: int
    loser: int


@dataclass(frozen=True)
class LabeledPermutation:
    top: Tuple[int, ...]
    bottom: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'top', tuple(self.top))
        object.__setattr__(self, 'bottom', tuple(self.bottom))
        n = len(self.top)
        if n < 2:
            raise InvalidSizeError(f"need at least 2 letters, got {n}")
        alphabet = list(range(1, n + 1))
        if sorted(self.top) != alphabet or sorted(self.bottom) != alphabet:
            raise InvalidPermutationError(
                f"rows {self.top} / {self.bottom} are not permutations of 1..{n}"
            )

    @classmethod
    def central(cls, n):
        """The fully reversing permutation (1 .. n / n .. 1)"""
        if n < 2:
            raise InvalidSizeError(f"central permutation needs n >= 2, got {n}")
        return cls(tuple(range(1, n + 1)), tuple(range(n, 0, -1)))

    @classmethod
    def parse(cls, text):
        """
        Parse ``"1 2 3 4 / 4 3 2 1"``; rows may also sit on two lines.
        """
        rows = [row for row in text.replace('\n', '/').split('/') if row.strip()]
        if len(rows) != 2:
            raise InvalidPermutationError(f"expected two rows, got {text!r}")
        try:
            top, bottom = (tuple(int(token) for token in row.split()) for row in rows)
        except ValueError as exc:
            raise InvalidPermutationError(f"non integer label in {text!r}") from exc
        if len(top) != len(bottom):
            raise InvalidPermutationError("rows have different lengths")
        return cls(top, bottom)

    def __str__(self):
        return f"{' '.join(map(str, self.top))} / {' '.join(map(str, self.bottom))}"

    @property
    def n(self):
        return len(self.top)

    def reduced(self):
        """
        Position permutation: for each top position, the bottom position of
        the same label. Equal for two labeled permutations iff they agree up
        to relabeling.
        """
        position = {label: index for index, label in enumerate(self.bottom)}
        return tuple(position[label] for label in self.top)

    def symmetric(self):
        return LabeledPermutation(tuple(reversed(self.bottom)), tuple(reversed(self.top)))

    def swapped(self):
        """Top and bottom rows exchanged"""
        return LabeledPermutation(self.bottom, self.top)

    def relabeling_to(self, other):
        """
        Label bijection sending this permutation onto ``other`` position by
        position; both must share the same reduced permutation.
        """
        if self.reduced() != other.reduced():
            raise InvalidPermutationError(f"{self} and {other} differ beyond relabeling")
        return dict(zip(self.top, other.top))

    def relabeled(self, mapping):
        return LabeledPermutation(
            tuple(mapping[label] for label in self.top),
            tuple(mapping[label] for label in self.bottom),
        )

    def right_step(self, kind):
        """
        One right Rauzy move of type t (top row wins) or b (bottom row wins).
        The loser letter is inserted right after the winner in the losing row.
        """
        top, bottom = self.top, self.bottom
        if top[-1] == bottom[-1]:
            raise UndefinedMoveError(f"{self}: both rows end with {top[-1]}")
        if kind == MoveKind.RIGHT_T:
            winner, loser = top[-1], bottom[-1]
            k = bottom.index(winner)
            bottom = bottom[:k + 1] + (loser,) + bottom[k + 1:-1]
        elif kind == MoveKind.RIGHT_B:
            winner, loser = bottom[-1], top[-1]
            k = top.index(winner)
            top = top[:k + 1] + (loser,) + top[k + 1:-1]
        else:
            raise UndefinedMoveError(f"{kind!r} is not a right move")
        return RauzyStep(LabeledPermutation(top, bottom), winner, loser)

    def step(self, kind):
        """
        Right or left move with its winner and loser. Left moves are the
        right moves conjugated by the symmetric involution.
        """
        kind = MoveKind(kind)
        if not kind.is_left:
            return self.right_step(kind)
        inner = self.symmetric().right_step(kind.right_part)
        return RauzyStep(inner.permutation.symmetric(), inner.winner, inner.loser)


def central_permutation(n):
    return LabeledPermutation.central(n)


def rauzy_move(permutation, kind):
    """Apply one move; returns the (permutation, winner, loser) step"""
    return permutation.step(kind)


def symmetric(permutation):
    return permutation.symmetric()

"""
Interval exchange states and the dynamic Rauzy induction.

Lengths are indexed by label (``lengths[a - 1]`` is the length of letter a)
and may be Fractions or exact ThetaElements. A step compares the lengths of
the two last letters; the longer one wins and gives up the loser's length.
Left steps are the right steps of the symmetric permutation.
"""
import logging
from dataclasses import dataclass
from typing import Any, NamedTuple, Tuple

from django.db import models

from apps.core.exceptions import AmbiguousComparisonError, BudgetExceededError
from apps.permutations.permutation import LabeledPermutation, MoveKind

logger = logging.getLogger(__name__)


class Side(models.TextChoices):
    RIGHT = 'right', 'right'
    LEFT = 'left', 'left'


def _sign(value):
    if hasattr(value, 'sign'):
        return value.sign()
    return (value > 0) - (value < 0)


@dataclass(frozen=True)
class IetState:
    permutation: LabeledPermutation
    lengths: Tuple[Any, ...]

    def __post_init__(self):
        object.__setattr__(self, 'lengths', tuple(self.lengths))
        if len(self.lengths) != self.permutation.n:
            raise ValueError(
                f"{len(self.lengths)} lengths for {self.permutation.n} letters"
            )

    def length(self, label):
        return self.lengths[label - 1]

    def total(self):
        total = 0
        for value in self.lengths:
            total = total + value
        return total

    def is_positive(self):
        return all(_sign(value) > 0 for value in self.lengths)

    def symmetric(self):
        return IetState(self.permutation.symmetric(), self.lengths)

    def swapped(self):
        return IetState(self.permutation.swapped(), self.lengths)

    def relabeled(self, mapping):
        """Carry lengths along the label bijection ``mapping``"""
        lengths = [None] * len(self.lengths)
        for label, value in enumerate(self.lengths, start=1):
            lengths[mapping[label] - 1] = value
        return IetState(self.permutation.relabeled(mapping), tuple(lengths))


class DynamicStep(NamedTuple):
    state: IetState
    kind: MoveKind
    winner: int
    loser: int


def step_type(state, side=Side.RIGHT):
    """Move decided by the lengths; ties raise AmbiguousComparisonError"""
    side = Side(side)
    permutation = state.permutation if side == Side.RIGHT else state.permutation.symmetric()
    top_last, bottom_last = permutation.top[-1], permutation.bottom[-1]
    order = _sign(state.length(top_last) - state.length(bottom_last))
    if order == 0:
        raise AmbiguousComparisonError(
            f"{state.permutation}: letters {top_last} and {bottom_last} have equal length",
            branches=('t', 'b'),
        )
    kind = MoveKind.RIGHT_T if order > 0 else MoveKind.RIGHT_B
    if side == Side.LEFT:
        kind = MoveKind(kind.value.upper())
    return kind


def rauzy_step_dynamic(state, side=Side.RIGHT):
    kind = step_type(state, side)
    step = state.permutation.step(kind)
    lengths = list(state.lengths)
    lengths[step.winner - 1] = lengths[step.winner - 1] - lengths[step.loser - 1]
    return DynamicStep(IetState(step.permutation, tuple(lengths)), kind, step.winner, step.loser)


def induce_until_loses(state, letter, side=Side.RIGHT, budget=10_000):
    """
    Steps on ``side`` up to and including the first one ``letter`` loses.
    Returns the final state and the list of DynamicStep.
    """
    steps = []
    while len(steps) < budget:
        step = rauzy_step_dynamic(state, side)
        steps.append(step)
        state = step.state
        if step.loser == letter:
            return state, steps
    raise BudgetExceededError(f"letter {letter} still winning after {budget} {side} steps")


def replay(state, moves):
    """Apply the dynamic induction and check it follows ``moves``"""
    steps = []
    for expected in moves:
        side = Side.LEFT if MoveKind(expected).is_left else Side.RIGHT
        step = rauzy_step_dynamic(state, side)
        if step.kind != expected:
            break
        steps.append(step)
        state = step.state
    return state, steps

"""
Weak suspension data over a labeled permutation.

A vector tau (indexed by label) together with a height h is a weak
suspension datum for pi when

    i.   h + sum of tau over the first k top letters    > 0, k = 1 .. n-1
    ii.  h + sum of tau over the first k bottom letters < 0, k = 1 .. n-1
    iii. if top[0] == bottom[-1]: sum of tau over the other letters < 0
    iv.  if top[-1] == bottom[0]: sum of tau over the other letters > 0

Clauses iii and iv do not involve h, so the admissible heights form the
open interval (-min top sums, -max bottom sums), emptied when a corner
clause fails. Values may be ints, Fractions or ThetaElements.
"""
import logging
from dataclasses import dataclass
from typing import Any, Optional, Tuple

logger = logging.getLogger(__name__)


def _partial_sums(row, tau):
    sums = []
    total = 0
    for label in row[:-1]:
        total = total + tau[label - 1]
        sums.append(total)
    return sums


def _total(tau):
    total = 0
    for value in tau:
        total = total + value
    return total


def _corner_clauses(permutation, tau):
    top, bottom = permutation.top, permutation.bottom
    total = None
    top_corner = bottom_corner = None
    if top[0] == bottom[-1]:
        total = _total(tau)
        top_corner = (total - tau[top[0] - 1]) < 0
    if top[-1] == bottom[0]:
        total = total if total is not None else _total(tau)
        bottom_corner = (total - tau[bottom[0] - 1]) > 0
    return top_corner, bottom_corner


@dataclass(frozen=True)
class HeightInterval:
    """
    Open interval of admissible heights. ``top_corner`` and
    ``bottom_corner`` are the outcomes of clauses iii and iv, None when the
    corner condition does not apply.
    """
    lo: Any
    hi: Any
    top_corner: Optional[bool] = None
    bottom_corner: Optional[bool] = None

    @property
    def is_empty(self):
        if self.top_corner is False or self.bottom_corner is False:
            return True
        return not self.lo < self.hi

    def __bool__(self):
        return not self.is_empty

    def contains(self, h):
        return not self.is_empty and self.lo < h < self.hi

    def as_dict(self):
        return {
            'lo': float(self.lo),
            'hi': float(self.hi),
            'empty': self.is_empty,
            'top_corner': self.top_corner,
            'bottom_corner': self.bottom_corner,
        }


def height_interval(permutation, tau):
    """Admissible heights h for (permutation, tau); may be empty"""
    if len(tau) != permutation.n:
        raise ValueError(f"tau has {len(tau)} entries for {permutation.n} letters")
    tops = _partial_sums(permutation.top, tau)
    bottoms = _partial_sums(permutation.bottom, tau)
    top_corner, bottom_corner = _corner_clauses(permutation, tau)
    return HeightInterval(-min(tops), -max(bottoms), top_corner, bottom_corner)


def satisfies_clauses(permutation, tau, h):
    """Direct evaluation of clauses i-iv at height h"""
    if any(not (h + value > 0) for value in _partial_sums(permutation.top, tau)):
        return False
    if any(not (h + value < 0) for value in _partial_sums(permutation.bottom, tau)):
        return False
    top_corner, bottom_corner = _corner_clauses(permutation, tau)
    return top_corner is not False and bottom_corner is not False


@dataclass(frozen=True)
class WeakSuspensionDatum:
    permutation: Any
    lengths: Tuple[Any, ...]
    tau: Tuple[Any, ...]
    interval: HeightInterval

    @classmethod
    def build(cls, permutation, lengths, tau):
        return cls(permutation, tuple(lengths), tuple(tau), height_interval(permutation, tau))

    @property
    def is_valid(self):
        return not self.interval.is_empty

    def is_suspension(self):
        """h = 0 is admissible, i.e. a suspension in the usual sense"""
        return self.interval.contains(0)

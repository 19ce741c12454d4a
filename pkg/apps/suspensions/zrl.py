"""
ZRL: the right-left acceleration of Rauzy induction on symmetric paths.

One step starts from a pure path gamma from pi to s(pi) and its exact Perron
lengths. Right induction runs until alpha = bottom[-1] loses (a word b^l t),
then left induction until beta = top[0] loses (B^m T with the left letters
of this package). The right induction from the resulting state, stopped
when the total length has shrunk by theta, is the new path gamma'. Its
start is put back on the t-first side of the diagram by exchanging the two
rows when needed.
"""
import dataclasses
import hashlib
import logging
from dataclasses import dataclass
from typing import List, Tuple

from apps.core.exceptions import (
    BudgetExceededError,
    ConstructionError,
    InternalInconsistencyError,
    NotCandidatePathError,
    NotPureError,
)
from apps.matrices.transition import RauzyPath, path_matrix
from apps.permutations.diagram import PathCoordinates, build_diagram
from apps.permutations.permutation import MoveKind
from apps.permutations.words import format_word
from apps.polynomials.roots import DEFAULT_PRECISION_BITS, Comparison, compare_roots, perron_root

from .eigen import perron_lengths
from .iet import IetState, Side, induce_until_loses, rauzy_step_dynamic

logger = logging.getLogger(__name__)

DEFAULT_STEP_BUDGET = 10_000


def _swap_moves(moves):
    return tuple(MoveKind(move).opposite for move in moves)


def theta_digest(polynomial):
    return hashlib.sha1(' '.join(map(str, polynomial.coeffs)).encode()).hexdigest()[:12]


@dataclass
class ZrlStep:
    index: int
    path: RauzyPath
    lengths: tuple
    right_moves: Tuple[MoveKind, ...]
    left_moves: Tuple[MoveKind, ...]
    coordinates: PathCoordinates
    swapped: bool
    digest: str
    winners: frozenset = frozenset()
    losers: frozenset = frozenset()

    @property
    def right_word(self):
        return format_word(self.right_moves)

    @property
    def left_word(self):
        return format_word(self.left_moves)

    def trace_line(self):
        """step index, right word, left word, new coordinates, swap flag, theta digest"""
        return (
            f"{self.index}\t{self.right_word}\t{self.left_word}\t"
            f"{' '.join(map(str, self.coordinates.parts))}\t"
            f"{'swap' if self.swapped else '-'}\t{self.digest}"
        )

    def as_dict(self):
        return {
            'index': self.index,
            'right_word': self.right_word,
            'left_word': self.left_word,
            'coordinates': list(self.coordinates.parts),
            'swapped': self.swapped,
            'start': str(self.path.start),
            'word': self.path.word,
            'digest': self.digest,
        }


@dataclass
class ZrlOrbit:
    initial: RauzyPath
    path: RauzyPath
    steps: List[ZrlStep] = dataclasses.field(default_factory=list)
    swapped_initially: bool = False

    @property
    def iterations(self):
        return len(self.steps)

    def letters_involved(self):
        involved = set()
        for step in self.steps:
            involved |= step.winners | step.losers
        return involved


def _check_symmetric_pure(path):
    if not path.is_pure():
        raise NotPureError(f"{path} visits the central permutation")
    if not path.is_symmetric:
        raise NotCandidatePathError(f"{path} does not end at the symmetric of its start")


def conventional(path):
    """
    The path with rows exchanged when the shortest word to its start begins
    with b. Lengths are per label and need no change.
    """
    coordinates = build_diagram(path.n).coordinates(path.start)
    if coordinates.first == MoveKind.RIGHT_T:
        return path, False
    return RauzyPath(path.start.swapped(), _swap_moves(path.moves)), True


def is_normalized(path):
    """Start on the central loop and first move b"""
    parts = build_diagram(path.n).coordinates(path.start).parts
    return len(parts) <= 2 and bool(path.moves) and path.moves[0] == MoveKind.RIGHT_B


def _rebuild(state, total, field, budget):
    """Right induction from ``state`` until theta * total length equals ``total``"""
    start = state.permutation
    moves = []
    while len(moves) < budget:
        step = rauzy_step_dynamic(state, Side.RIGHT)
        moves.append(step.kind)
        state = step.state
        if (field.theta * state.total() - total).is_zero():
            return RauzyPath(start, moves), state
    raise BudgetExceededError(f"no return of the total length within {budget} steps")


def zrl_step(path, lengths=None, field=None, index=1,
             precision_bits=DEFAULT_PRECISION_BITS, budget=DEFAULT_STEP_BUDGET):
    """
    One ZRL step. ``lengths`` must be the Perron vector of V(path) in
    ``field``; both are computed when omitted.
    """
    _check_symmetric_pure(path)
    matrix = path_matrix(path, 'symmetric')
    if lengths is None:
        field, lengths = perron_lengths(matrix, field, precision_bits)

    state = IetState(path.start, lengths)
    alpha = path.start.bottom[-1]
    state, right = induce_until_loses(state, alpha, Side.RIGHT, budget)
    beta = state.permutation.top[0]
    state, left = induce_until_loses(state, beta, Side.LEFT, budget)

    new_path, end_state = _rebuild(state, state.total(), field, budget)
    start = state.permutation
    if not new_path.is_pure():
        raise ConstructionError(f"induced path {new_path} visits the central permutation")
    if not new_path.is_symmetric:
        raise ConstructionError(f"induced path {new_path} does not end at the symmetric of {start}")
    mapping = new_path.end.symmetric().relabeling_to(start)
    for label in range(1, path.n + 1):
        if not (field.theta * end_state.length(label) - state.length(mapping[label])).is_zero():
            raise ConstructionError(f"induced lengths of {new_path} are not a rescaled copy")

    new_path, swapped = conventional(new_path)
    new_polynomial = path_matrix(new_path, 'symmetric').charpoly()
    if compare_roots(perron_root(matrix.charpoly()), perron_root(new_polynomial),
                     precision_bits) != Comparison.EQUAL:
        raise InternalInconsistencyError(f"ZRL changed the dilatation of {path}")

    induced = right + left
    result = ZrlStep(
        index=index,
        path=new_path,
        lengths=state.lengths,
        right_moves=tuple(step.kind for step in right),
        left_moves=tuple(step.kind for step in left),
        coordinates=build_diagram(path.n).coordinates(new_path.start),
        swapped=swapped,
        digest=theta_digest(field.modulus),
        winners=frozenset(step.winner for step in induced),
        losers=frozenset(step.loser for step in induced),
    )
    logger.debug("zrl %d: %s | %s -> %s", index, result.right_word, result.left_word, result.coordinates)
    return result, field


def zrl_normalize(path, max_iterations=10_000, precision_bits=DEFAULT_PRECISION_BITS,
                  budget=DEFAULT_STEP_BUDGET, min_iterations=0):
    """
    Iterate ZRL until the start lies on the central loop and the first move
    is b. ``min_iterations`` forces extra steps, e.g. to follow an orbit.
    """
    _check_symmetric_pure(path)
    current, swapped = conventional(path)
    orbit = ZrlOrbit(initial=path, path=current, swapped_initially=swapped)
    field, lengths = perron_lengths(path_matrix(current, 'symmetric'), precision_bits=precision_bits)
    while orbit.iterations < min_iterations or not is_normalized(current):
        if orbit.iterations >= max_iterations:
            raise BudgetExceededError(
                f"{path} not normalized after {max_iterations} ZRL steps",
                iterations=orbit.iterations,
            )
        step, field = zrl_step(current, lengths, field, orbit.iterations + 1, precision_bits, budget)
        orbit.steps.append(step)
        current, lengths = step.path, step.lengths
    orbit.path = current
    logger.info("%s normalized to %s after %d ZRL steps", path, current, orbit.iterations)
    return orbit


def _merge(parts):
    """Drop zero runs: interior zeros join their neighbours, end zeros vanish"""
    merged = []
    pending_join = False
    for part in parts:
        if part == 0:
            pending_join = bool(merged)
            continue
        if pending_join:
            merged[-1] += part
            pending_join = False
        else:
            merged.append(part)
    return tuple(merged)


def _right_replacements(a, b):
    yield (a + 1, b - 1)
    yield (a, b - 1, 1)
    for r in range(1, b - 1):
        yield (a, r, 1, b - 1 - r)


def _left_replacements(a, b):
    yield (a - 1, b + 1)
    yield (1, a - 1, b)
    for r in range(1, a - 1):
        yield (a - 1 - r, 1, r, b)


def zrl_coding_successors(coordinates):
    """
    Every coding the start of ZRL(gamma) may have. Codings with fewer than
    four parts belong to the central loop and have no successors here.
    """
    parts = coordinates.parts if isinstance(coordinates, PathCoordinates) else tuple(coordinates)
    if len(parts) < 4:
        return set()
    middle = parts[2:-2]
    successors = set()
    for left in _left_replacements(parts[0], parts[1]):
        for right in _right_replacements(parts[-2], parts[-1]):
            successors.add(_merge(left + middle + right))
    return successors


def random_admissible_path(n, rng, attempts=200, walk_length=None):
    """
    A random pure path from pi to s(pi) with primitive matrix: a random walk
    avoiding the central permutation closed by the shortest completion.
    Returns None when every attempt fails.
    """
    diagram = build_diagram(n)
    walk_length = walk_length or 2 * n
    candidates = [i for i in range(len(diagram)) if i != diagram.central_index]
    for _ in range(attempts):
        source = rng.choice(candidates)
        target = diagram.symmetric_index(source)
        moves = []
        vertex = source
        for _ in range(rng.randint(0, walk_length)):
            kind = rng.choice((MoveKind.RIGHT_T, MoveKind.RIGHT_B))
            following = diagram.move(vertex, kind).target
            if following == diagram.central_index:
                continue
            moves.append(kind)
            vertex = following
        completion = diagram.completion(vertex, target)
        if completion is None or not moves + list(completion):
            continue
        path = RauzyPath(diagram.vertices[source], tuple(moves) + completion)
        if not path.is_symmetric or not path.is_pure():
            continue
        if path_matrix(path, 'symmetric').is_primitive():
            return path
    return None


def zrl_trace(orbit) -> List[str]:
    return [step.trace_line() for step in orbit.steps]


def zrl_orbit_summary(orbit) -> dict:
    return {
        'initial': {'start': str(orbit.initial.start), 'word': orbit.initial.word},
        'normalized': {'start': str(orbit.path.start), 'word': orbit.path.word},
        'iterations': orbit.iterations,
        'swapped_initially': orbit.swapped_initially,
        'steps': [step.as_dict() for step in orbit.steps],
    }


def transitions(orbit) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Consecutive (coding, next coding) pairs along the orbit"""
    diagram = build_diagram(orbit.initial.n)
    codings = []
    previous = diagram.coordinates(orbit.initial.start).parts
    for step in orbit.steps:
        codings.append((previous, step.coordinates.parts))
        previous = step.coordinates.parts
    return codings

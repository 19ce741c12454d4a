"""
Branch-and-bound enumeration of pure admissible symmetric paths.

One depth-first search per start central(n).t^k, k = 1..K_n. Every path
begins with b, never enters the central permutation and is a candidate each
time it reaches the vertex of s(start). A node with prefix rho at vertex v
is bounded below by the matrix of rho followed by the shortest completion
v -> s(start); the subtree is cut when that matrix already has spectral
radius >= bound.

Starts are independent, so they are handed to a multiprocessing pool; the
final sort makes the output independent of the schedule.
"""
import logging
import time
from dataclasses import dataclass, field, fields
from fractions import Fraction
from multiprocessing import Pool
from typing import List, Optional, Tuple

from apps.core.exceptions import InternalInconsistencyError, InvalidSizeError, OutOfRangeError
from apps.matrices.transition import RauzyPath, TransitionMatrix, relabeling_matrix
from apps.permutations.diagram import build_diagram
from apps.permutations.permutation import MoveKind
from apps.permutations.words import format_word, gamma_word, k_max, l_max
from apps.polynomials.polynomial import IntPolynomial
from apps.polynomials.roots import DEFAULT_WIDTH

logger = logging.getLogger(__name__)

COMPLETENESS_BOUND = Fraction(2)


def default_depth(n):
    return 6 * (n - 1)


@dataclass(frozen=True)
class SearchConfig:
    n: int
    bound: Fraction = COMPLETENESS_BOUND
    max_depth: Optional[int] = None
    width: Fraction = DEFAULT_WIDTH
    threads: int = 1
    time_budget: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, 'bound', Fraction(self.bound))
        object.__setattr__(self, 'width', Fraction(self.width))
        if self.n < 4:
            raise InvalidSizeError(f"the search needs n >= 4, got {self.n}")
        if self.bound <= 1:
            raise OutOfRangeError(f"bound must exceed 1, got {self.bound}")
        if self.depth < self.minimum_depth:
            raise OutOfRangeError(
                f"max_depth {self.depth} is shorter than gamma_{{n,K_n,L_n}} ({self.minimum_depth})"
            )
        if self.threads < 1:
            raise OutOfRangeError(f"threads must be positive, got {self.threads}")

    @classmethod
    def from_engine(cls, n, engine, bound=COMPLETENESS_BOUND, width=None):
        return cls(
            n=n,
            bound=bound,
            max_depth=engine.max_depth,
            width=width if width is not None else engine.dedup_width,
            threads=engine.threads,
            time_budget=engine.time_budget,
        )

    @property
    def depth(self):
        return self.max_depth if self.max_depth is not None else default_depth(self.n)

    @property
    def minimum_depth(self):
        return len(gamma_word(self.n, k_max(self.n), l_max(self.n)))

    @property
    def symmetric_only(self):
        """Above 2 the closed-loop pseudo-Anosovs are missing from the census"""
        return self.bound > COMPLETENESS_BOUND


@dataclass(frozen=True)
class Candidate:
    """An emitted path: start central(n).t^k, its moves, V and chi(V)"""
    n: int
    k: int
    moves: Tuple[MoveKind, ...]
    rows: Tuple[Tuple[int, ...], ...]
    coefficients: Tuple[int, ...]

    @property
    def word(self):
        return format_word(self.moves)

    @property
    def matrix(self):
        return TransitionMatrix(self.rows)

    @property
    def polynomial(self):
        return IntPolynomial(self.coefficients)

    def path(self):
        return RauzyPath(RauzyPath.central_start(self.n, self.k), self.moves)

    def sort_key(self):
        return (self.k, len(self.moves), self.word)


@dataclass
class SearchStats:
    nodes: int = 0
    emitted: int = 0
    non_primitive: int = 0
    pruned_dead: int = 0
    pruned_delta: int = 0
    pruned_root: int = 0
    depth_capped: int = 0
    timed_out: bool = False

    def merge(self, other):
        for item in fields(self):
            if item.name == 'timed_out':
                self.timed_out = self.timed_out or other.timed_out
            else:
                setattr(self, item.name, getattr(self, item.name) + getattr(other, item.name))
        return self

    @property
    def pruned(self):
        return self.pruned_dead + self.pruned_delta + self.pruned_root

    def as_dict(self):
        payload = {item.name: getattr(self, item.name) for item in fields(self)}
        payload['pruned'] = self.pruned
        return payload


@dataclass
class StartResult:
    k: int
    candidates: List[Candidate] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)
    elapsed: float = 0.0


@dataclass
class SearchResult:
    config: SearchConfig
    candidates: List[Candidate]
    stats: SearchStats
    warnings: List[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def complete(self):
        return self.stats.depth_capped == 0 and not self.stats.timed_out


class _StartSearch:
    """DFS below one start; holds the per-start caches"""

    def __init__(self, config, k, deadline=None):
        self.config = config
        self.k = k
        self.deadline = deadline
        self.diagram = build_diagram(config.n)
        self.source = self.diagram.central_loop()[k]
        self.target = self.diagram.symmetric_index(self.source)
        start = self.diagram.vertices[self.source]
        mapping = self.diagram.vertices[self.target].symmetric().relabeling_to(start)
        self.relabeling = relabeling_matrix(mapping, config.n)
        self.suffixes = {}
        self.verdicts = {}
        self.result = StartResult(k)

    def suffix(self, vertex):
        """V~(shortest completion from vertex) P, or None when s(start) is unreachable"""
        if vertex not in self.suffixes:
            word = self.diagram.completion(vertex, self.target)
            if word is None:
                self.suffixes[vertex] = None
            else:
                product = TransitionMatrix.identity(self.config.n)
                for edge in self.diagram.walk(vertex, word):
                    product = product.transvected(edge.winner, edge.loser)
                self.suffixes[vertex] = product @ self.relabeling
        return self.suffixes[vertex]

    def _reaches_bound(self, matrix):
        key = matrix.digest
        if key not in self.verdicts:
            self.verdicts[key] = matrix.charpoly().count_roots(self.config.bound, None) > 0
        return self.verdicts[key]

    def bound_matrix(self, vertex, tilde):
        """
        Lower bound matrix of the node, or None when the node is cut. The
        counters of the cut are updated here.
        """
        stats = self.result.stats
        suffix = self.suffix(vertex)
        if suffix is None:
            stats.pruned_dead += 1
            return None
        matrix = tilde @ suffix
        if matrix.min_column_sum() >= self.config.bound:
            stats.pruned_delta += 1
            return None
        if self._reaches_bound(matrix):
            stats.pruned_root += 1
            return None
        return matrix

    def children(self, vertex, moves, tilde):
        for kind in (MoveKind.RIGHT_T, MoveKind.RIGHT_B):
            edge = self.diagram.move(vertex, kind)
            if edge.target == self.diagram.central_index:
                continue
            yield edge.target, moves + (kind,), tilde.transvected(edge.winner, edge.loser)

    def emit(self, moves, matrix):
        polynomial = matrix.charpoly()
        if not polynomial.is_reciprocal():
            raise InternalInconsistencyError(
                f"charpoly of {format_word(moves)} from central.t^{self.k} is not reciprocal",
                polynomial=str(polynomial),
            )
        self.result.candidates.append(Candidate(
            n=self.config.n, k=self.k, moves=moves,
            rows=matrix.rows, coefficients=polynomial.coeffs,
        ))
        self.result.stats.emitted += 1
        logger.debug("emit k=%d %s", self.k, format_word(moves))

    def _live_child(self, vertex, moves, tilde):
        return any(
            self.bound_matrix(child, child_tilde) is not None
            for child, _, child_tilde in self.children(vertex, moves, tilde)
        )

    def run(self):
        begun = time.monotonic()
        stats = self.result.stats
        identity = TransitionMatrix.identity(self.config.n)
        first = self.diagram.move(self.source, MoveKind.RIGHT_B)
        stack = []
        if first.target != self.diagram.central_index:
            stack.append((first.target, (MoveKind.RIGHT_B,), identity.transvected(first.winner, first.loser)))

        while stack:
            if self.deadline is not None and stats.nodes % 256 == 0 and time.time() > self.deadline:
                stats.timed_out = True
                logger.warning("k=%d: time budget exhausted with %d open nodes", self.k, len(stack))
                break
            vertex, moves, tilde = stack.pop()
            stats.nodes += 1
            matrix = self.bound_matrix(vertex, tilde)
            if matrix is None:
                continue
            if vertex == self.target:
                if matrix.is_primitive():
                    self.emit(moves, matrix)
                else:
                    stats.non_primitive += 1
            if len(moves) >= self.config.depth:
                if self._live_child(vertex, moves, tilde):
                    stats.depth_capped += 1
                continue
            # reversed so that t is expanded first
            stack.extend(reversed(list(self.children(vertex, moves, tilde))))

        self.result.elapsed = time.monotonic() - begun
        logger.info(
            "n=%d k=%d: %d nodes, %d pruned, %d emitted in %.2fs",
            self.config.n, self.k, stats.nodes, stats.pruned, stats.emitted, self.result.elapsed,
        )
        return self.result


def search_start(config, k, deadline=None):
    return _StartSearch(config, k, deadline).run()


def _search_task(task):
    return search_start(*task)


def enumerate_admissible(config) -> SearchResult:
    """
    Every pure admissible path from a central-loop start with k <= K_n,
    first move b and dilatation < bound, sorted by (k, length, word).
    """
    begun = time.monotonic()
    deadline = time.time() + config.time_budget if config.time_budget else None
    tasks = [(config, k, deadline) for k in range(1, k_max(config.n) + 1)]
    if config.threads > 1 and len(tasks) > 1:
        with Pool(processes=min(config.threads, len(tasks))) as pool:
            results = list(pool.imap(_search_task, tasks))
    else:
        results = [_search_task(task) for task in tasks]

    stats = SearchStats()
    candidates = []
    warnings = []
    for result in results:
        stats.merge(result.stats)
        candidates.extend(result.candidates)
        if result.stats.depth_capped:
            warnings.append(
                f"k={result.k}: {result.stats.depth_capped} live branches at depth {config.depth}"
            )
        if result.stats.timed_out:
            warnings.append(f"k={result.k}: time budget of {config.time_budget}s exhausted")
    if config.symmetric_only:
        warnings.append(f"bound {config.bound} > 2: symmetric-construction-only results")
    candidates.sort(key=Candidate.sort_key)

    search = SearchResult(config, candidates, stats, warnings, time.monotonic() - begun)
    for warning in warnings:
        logger.warning("n=%d: %s", config.n, warning)
    return search

"""
Hyperelliptic Rauzy diagrams D_n.

The diagram is the closure of the central permutation under the two right
moves. Vertices are kept in breadth-first order, so the parent links give
the unique shortest word from the central permutation to every vertex;
path coordinates are read off those words.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, NamedTuple, Optional, Tuple

import networkx as nx

from apps.core.exceptions import (
    InternalInconsistencyError,
    InvalidSizeError,
    MembershipError,
)

from .permutation import LabeledPermutation, MoveKind
from .words import runs

logger = logging.getLogger(__name__)

RIGHT_MOVES = (MoveKind.RIGHT_T, MoveKind.RIGHT_B)


class Edge(NamedTuple):
    source: int
    target: int
    kind: MoveKind
    winner: int
    loser: int


@dataclass(frozen=True)
class PathCoordinates:
    """
    Run lengths of the shortest word from the central permutation, padded
    so that they sum to n - 1. ``first`` is the type of the first run.
    """
    parts: Tuple[int, ...]
    first: MoveKind = MoveKind.RIGHT_T

    def __post_init__(self):
        object.__setattr__(self, 'parts', tuple(self.parts))
        if not self.parts or any(part <= 0 for part in self.parts):
            raise MembershipError(f"coordinates must be positive, got {self.parts}")

    def reversed(self):
        return tuple(reversed(self.parts))

    def __str__(self):
        return f"({', '.join(map(str, self.parts))})"


@dataclass
class RauzyDiagram:
    n: int
    vertices: Tuple[LabeledPermutation, ...]
    edges: Tuple[Dict[MoveKind, Edge], ...]
    words: Tuple[Tuple[MoveKind, ...], ...]
    index: Dict[LabeledPermutation, int]
    reduced_index: Dict[tuple, int]
    _completions: Dict[int, Dict[int, list]] = field(default_factory=dict, repr=False)

    central_index = 0

    def __len__(self):
        return len(self.vertices)

    @property
    def central(self):
        return self.vertices[self.central_index]

    def vertex_index(self, permutation, labeled=False):
        """
        Index of ``permutation``; up to relabeling unless ``labeled``.
        """
        if labeled:
            found = self.index.get(permutation)
        else:
            found = self.reduced_index.get(permutation.reduced()) if permutation.n == self.n else None
        if found is None:
            raise MembershipError(f"{permutation} is not a vertex of D_{self.n}")
        return found

    def __contains__(self, permutation):
        return permutation.n == self.n and permutation.reduced() in self.reduced_index

    def move(self, source, kind):
        return self.edges[source][MoveKind(kind)]

    def walk(self, source, moves):
        """Edges followed by a word of right moves from vertex ``source``"""
        taken = []
        for kind in moves:
            edge = self.move(source, kind)
            taken.append(edge)
            source = edge.target
        return taken

    def symmetric_index(self, source):
        return self.vertex_index(self.vertices[source].symmetric())

    def central_loop(self):
        """Indices of central.t^k for k = 0 .. n-2"""
        loop = [self.central_index]
        for _ in range(self.n - 2):
            loop.append(self.move(loop[-1], MoveKind.RIGHT_T).target)
        return loop

    def coordinates(self, permutation):
        word = self.words[self.vertex_index(permutation)]
        if not word:
            return PathCoordinates((self.n - 1,))
        decomposition = runs(word)
        parts = [length for _, length in decomposition]
        parts.append(self.n - 1 - sum(parts))
        return PathCoordinates(tuple(parts), decomposition[0][0])

    def permutation_from_coordinates(self, coordinates, first=MoveKind.RIGHT_T):
        if not isinstance(coordinates, PathCoordinates):
            coordinates = PathCoordinates(tuple(coordinates), MoveKind(first))
        if sum(coordinates.parts) != self.n - 1:
            raise MembershipError(
                f"coordinates {coordinates} must sum to {self.n - 1}"
            )
        kind = coordinates.first
        source = self.central_index
        for length in coordinates.parts[:-1]:
            for _ in range(length):
                source = self.move(source, kind).target
            kind = kind.opposite
        return self.vertices[source]

    def _arrows(self):
        return (edge for outgoing in self.edges for edge in outgoing.values())

    @cached_property
    def graph(self):
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(range(len(self.vertices)))
        graph.add_edges_from(
            (edge.source, edge.target, edge.kind.value, {'winner': edge.winner, 'loser': edge.loser})
            for edge in self._arrows()
        )
        return graph

    @cached_property
    def central_free(self):
        """Plain digraph of the right moves with the central vertex removed"""
        central = self.central_index
        graph = nx.DiGraph()
        graph.add_nodes_from(i for i in range(len(self.vertices)) if i != central)
        graph.add_edges_from(
            (edge.source, edge.target) for edge in self._arrows()
            if central not in (edge.source, edge.target)
        )
        return graph

    def without_central(self):
        return self.central_free

    def completion(self, source, target):
        """
        Shortest word of right moves from ``source`` to ``target`` avoiding
        the central permutation, or None when there is none.
        """
        paths = self._completions.get(target)
        if paths is None:
            paths = nx.single_target_shortest_path(self.central_free, target)
            self._completions[target] = paths
        nodes = paths.get(source)
        if nodes is None:
            return None
        word = []
        for u, v in zip(nodes, nodes[1:]):
            word.append(next(kind for kind in RIGHT_MOVES if self.edges[u][kind].target == v))
        return tuple(word)

    def stats(self):
        return {
            'n': self.n,
            'vertices': len(self.vertices),
            'edges': self.graph.number_of_edges(),
            'expected_vertices': 2 ** (self.n - 1) - 1,
            'strongly_connected': nx.is_strongly_connected(self.graph),
            'components_without_central': nx.number_strongly_connected_components(
                self.without_central()
            ),
            'central_loop': len(set(self.central_loop())),
        }


@lru_cache(maxsize=2)
def build_diagram(n):
    """Breadth-first closure of central(n) under the right moves"""
    if n < 2:
        raise InvalidSizeError(f"diagram needs n >= 2, got {n}")
    central = LabeledPermutation.central(n)
    vertices = [central]
    index = {central: 0}
    words = [()]
    edges = []
    queue = deque([0])
    while queue:
        source = queue.popleft()
        outgoing = {}
        for kind in RIGHT_MOVES:
            step = vertices[source].right_step(kind)
            target = index.get(step.permutation)
            if target is None:
                target = len(vertices)
                index[step.permutation] = target
                vertices.append(step.permutation)
                words.append(words[source] + (kind,))
                queue.append(target)
            outgoing[kind] = Edge(source, target, kind, step.winner, step.loser)
        edges.append(outgoing)

    reduced_index = {permutation.reduced(): i for i, permutation in enumerate(vertices)}
    if len(reduced_index) != len(vertices):
        raise InternalInconsistencyError(
            f"D_{n}: labeled and reduced diagrams differ "
            f"({len(vertices)} labeled, {len(reduced_index)} reduced)"
        )
    logger.debug("built D_%d with %d vertices", n, len(vertices))
    return RauzyDiagram(
        n=n,
        vertices=tuple(vertices),
        edges=tuple(edges),
        words=tuple(words),
        index=index,
        reduced_index=reduced_index,
    )


def coordinates(permutation, diagram: Optional[RauzyDiagram] = None):
    diagram = diagram or build_diagram(permutation.n)
    return diagram.coordinates(permutation)


def permutation_from_coordinates(parts, first=MoveKind.RIGHT_T):
    n = sum(parts) + 1
    return build_diagram(n).permutation_from_coordinates(tuple(parts), first)

"""
Characteristic polynomials through a rome.

A rome R is a vertex set meeting every cycle of the support graph. With
A_R(y) the R x R matrix of first-return path generating functions
(weights times y^length, intermediate vertices outside R),

    det(X I - M) = (-1)^r X^n det(A_R(1/X) - I).
"""
import logging

import networkx as nx
from sympy import Poly, Symbol
from sympy.polys.matrices import DomainMatrix

from apps.core.exceptions import NotARomeError
from apps.polynomials.polynomial import IntPolynomial

logger = logging.getLogger(__name__)

Y = Symbol('y')


def support_graph(matrix):
    """Edge a -> b of weight M[a][b] for every positive entry, 1-indexed"""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(1, matrix.n + 1))
    for a, row in enumerate(matrix.rows, start=1):
        for b, value in enumerate(row, start=1):
            if value:
                graph.add_edge(a, b, weight=value)
    return graph


def is_rome(matrix, rome):
    graph = support_graph(matrix)
    outside = graph.subgraph(v for v in graph if v not in set(rome))
    return nx.is_directed_acyclic_graph(outside)


def first_return_matrix(matrix, rome):
    """A_R(y) as sympy expressions, rows and columns ordered like ``rome``"""
    graph = support_graph(matrix)
    members = set(rome)
    outside = graph.subgraph(v for v in graph if v not in members)
    if not nx.is_directed_acyclic_graph(outside):
        cycle = nx.find_cycle(outside)
        raise NotARomeError(f"{sorted(members)} misses the cycle {[edge[0] for edge in cycle]}")
    order = list(nx.topological_sort(outside))
    position = {vertex: i for i, vertex in enumerate(rome)}
    rows = []
    for source in rome:
        weight = {v: 0 for v in graph}
        for target, data in graph[source].items():
            weight[target] += data['weight'] * Y
        for vertex in order:
            if weight[vertex] == 0:
                continue
            for target, data in graph[vertex].items():
                weight[target] += weight[vertex] * data['weight'] * Y
        row = [0] * len(rome)
        for target in rome:
            row[position[target]] = weight[target]
        rows.append(row)
    return rows


def rome_charpoly(matrix, rome):
    """det(X I - M) from the first-return matrix of the rome ``rome``"""
    rome = list(dict.fromkeys(rome))
    if not rome or any(not 1 <= v <= matrix.n for v in rome):
        raise NotARomeError(f"rome {rome} must be a nonempty subset of 1..{matrix.n}")
    rows = first_return_matrix(matrix, rome)
    r = len(rome)
    for i in range(r):
        rows[i][i] -= 1
    shifted = DomainMatrix.from_list_sympy(r, r, rows)
    determinant = Poly(shifted.domain.to_sympy(shifted.det()), Y)
    n = matrix.n
    sign = -1 if r % 2 else 1
    coefficients = [0] * (n + 1)
    for (power,), value in determinant.terms():
        coefficients[n - power] += sign * int(value)
    logger.debug("rome %s: %d first-return entries", rome, r * r)
    return IntPolynomial(tuple(coefficients))

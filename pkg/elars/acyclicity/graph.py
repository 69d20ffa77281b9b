"""Predicate-position dependency graphs and the weak-acyclicity test."""
import logging
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

log = logging.getLogger(__name__)


class Position(NamedTuple):
    pred: str
    index: int

    def __str__(self):
        return '%s[%d]' % (self.pred, self.index)


class Edge(NamedTuple):
    source: Position
    target: Position
    special: bool

    def __str__(self):
        return '%s %s %s' % (self.source, '->*' if self.special else '->', self.target)

    def as_dict(self):
        return {'from': str(self.source), 'to': str(self.target), 'special': self.special}


@dataclass(frozen=True)
class DependencyGraph:
    nodes: frozenset
    normal: frozenset
    special: frozenset

    def edges(self):
        for source, target in sorted(self.normal):
            yield Edge(source, target, False)
        for source, target in sorted(self.special):
            yield Edge(source, target, True)


class WaVerdict(NamedTuple):
    acyclic: bool
    witness: tuple = None

    def __bool__(self):
        return self.acyclic


def _positions(atoms, var):
    return [Position(atom.pred, i) for atom in atoms
            for i, term in enumerate(atom.args, 1) if term == var]


def dependency_graph(rules):
    """Normal and special edges of ``rules`` read as single-sorted existential rules."""
    nodes, normal, special = set(), set(), set()
    for rule in rules:
        body = rule.body_atoms()
        for atom in body + tuple(rule.head):
            nodes.update(Position(atom.pred, i) for i in range(1, atom.arity + 1))
        targets = [p for z in rule.existentials for p in _positions(rule.head, z)]
        for var in rule.frontier:
            head_positions = _positions(rule.head, var)
            for source in _positions(body, var):
                normal.update((source, target) for target in head_positions)
                special.update((source, target) for target in targets)
    return DependencyGraph(frozenset(nodes), frozenset(normal), frozenset(special))


def _path(adjacency, start, goal, component, labels):
    """Shortest edge path from ``start`` to ``goal`` inside one strong component."""
    if start == goal:
        return []
    parent = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for succ, edge in adjacency.get(node, ()):
            if succ in parent or labels[succ] != component:
                continue
            parent[succ] = (node, edge)
            if succ == goal:
                path = []
                while parent[succ] is not None:
                    succ, edge = parent[succ]
                    path.append(edge)
                return path[::-1]
            queue.append(succ)
    return None


def is_weakly_acyclic(graph_or_rules):
    """No special edge lies on a cycle, i.e. inside one strongly connected component."""
    graph = graph_or_rules
    if not isinstance(graph, DependencyGraph):
        graph = dependency_graph(graph_or_rules)
    if not graph.special:
        return WaVerdict(True)

    order = sorted(graph.nodes)
    ids = {node: i for i, node in enumerate(order)}
    edges = list(graph.edges())
    rows = np.array([ids[e.source] for e in edges], dtype=np.int64)
    cols = np.array([ids[e.target] for e in edges], dtype=np.int64)
    matrix = csr_matrix((np.ones(len(edges), dtype=np.int8), (rows, cols)), shape=(len(order), len(order)))
    _, labels = connected_components(matrix, directed=True, connection='strong')

    adjacency = {}
    for edge in edges:
        adjacency.setdefault(ids[edge.source], []).append((ids[edge.target], edge))

    for edge in edges:
        if not edge.special:
            continue
        source, target = ids[edge.source], ids[edge.target]
        if labels[source] != labels[target]:
            continue
        back = _path(adjacency, target, source, labels[source], labels)
        witness = (edge,) + tuple(back)
        log.debug('special edge %s lies on a cycle', edge)
        return WaVerdict(False, witness)
    return WaVerdict(True)


def validate_witness(graph, witness):
    """Replay a witness cycle against ``graph``."""
    if not witness or not any(edge.special for edge in witness):
        return False
    for edge in witness:
        pool = graph.special if edge.special else graph.normal
        if (edge.source, edge.target) not in pool:
            return False
    for previous, current in zip(witness, witness[1:] + witness[:1]):
        if previous.target != current.source:
            return False
    return True

"""Graph-theoretic anatomy of a chain: communicating classes, condensation,
recurrent/transient states, and periods.

A transition matrix induces a directed graph with an edge (i, j) whenever
entry (i, j) is positive.  Communicating classes are the strongly connected
components of that graph; collapsing them gives an acyclic condensation
whose leaf classes (no outgoing edges) are exactly the closed sets.  States
in leaf classes are recurrent, all others transient.
"""

from dataclasses import dataclass
from math import gcd, inf

import numpy as np

from .stochastic import MatrixFamily, NotSquareError, require_square


@dataclass(frozen=True)
class TransitionGraph:
    """Directed positivity graph of a square matrix."""

    vertex_count: int
    edges: frozenset

    def adjacency(self):
        a = np.zeros((self.vertex_count, self.vertex_count), dtype=bool)
        for i, j in self.edges:
            a[i, j] = True
        return a

    def successors(self, i):
        return sorted(j for (u, j) in self.edges if u == i)


@dataclass(frozen=True)
class Condensation:
    """Strongly connected classes and the DAG between them."""

    classes: tuple            # tuple of sorted state tuples
    dag_edges: frozenset      # edges between class indices, no self-edges
    leaf_classes: tuple       # indices of classes with no outgoing dag edge

    def class_of(self, state):
        for ci, members in enumerate(self.classes):
            if state in members:
                return ci
        raise KeyError(state)


@dataclass(frozen=True)
class StateClassification:
    """Per-state recurrent/transient labels and periods (inf = no return)."""

    recurrent: tuple
    periods: tuple


@dataclass(frozen=True)
class ChainAnalysis:
    condensation: Condensation
    classification: StateClassification

    def __iter__(self):
        # allows: condensation, classification = analyze(p)
        return iter((self.condensation, self.classification))

    @property
    def is_irreducible(self):
        return len(self.condensation.classes) == 1

    @property
    def is_indecomposable(self):
        return len(self.condensation.leaf_classes) <= 1

    @property
    def is_aperiodic(self):
        return all(d == 1 for d in self.classification.periods)

    @property
    def recurrent_aperiodic(self):
        """True when every recurrent state has period 1.

        This is the aperiodicity that controls convergence of powers;
        transient states with no return path (period inf) do not obstruct
        the limit.
        """
        return all(d == 1
                   for d, rec in zip(self.classification.periods,
                                     self.classification.recurrent)
                   if rec)


def graph_of(p, zero_threshold=0.0):
    """Positivity graph of a square matrix: edge (i, j) iff p[i, j] > threshold."""
    a = require_square(p)
    if zero_threshold < 0:
        raise ValueError("zero_threshold must be nonnegative")
    edges = frozenset((int(i), int(j)) for i, j in np.argwhere(a > zero_threshold))
    return TransitionGraph(a.shape[0], edges)


def _strongly_connected_components(adj):
    """Tarjan's algorithm, iterative.  Returns components as sorted tuples."""
    n = adj.shape[0]
    succ = [np.flatnonzero(adj[i]).tolist() for i in range(n)]
    index = [None] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    comps = []
    counter = [0]

    for root in range(n):
        if index[root] is not None:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            while pi < len(succ[v]):
                w = succ[v][pi]
                pi += 1
                if index[w] is None:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(tuple(sorted(comp)))
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    return comps


def _condense(adj, comps):
    n = adj.shape[0]
    class_of = [0] * n
    for ci, comp in enumerate(comps):
        for s in comp:
            class_of[s] = ci
    dag = set()
    for i, j in zip(*np.nonzero(adj)):
        ci, cj = class_of[int(i)], class_of[int(j)]
        if ci != cj:
            dag.add((ci, cj))
    outgoing = {ci for (ci, _) in dag}
    leaves = tuple(ci for ci in range(len(comps)) if ci not in outgoing)
    return Condensation(tuple(comps), frozenset(dag), leaves), class_of


def _class_periods(adj, comp):
    """Common period of a strongly connected class via BFS level sets.

    The gcd of (level(u) + 1 - level(v)) over intra-class edges (u, v)
    equals the gcd of all cycle lengths through the class.  A class with no
    internal edge (an isolated transient state without a self-loop) has no
    return path at all.
    """
    members = list(comp)
    pos = {s: k for k, s in enumerate(members)}
    internal = [(u, v) for u in members for v in np.flatnonzero(adj[u]) if int(v) in pos]
    if not internal:
        return inf
    level = {members[0]: 0}
    frontier = [members[0]]
    while frontier:
        nxt = []
        for u in frontier:
            for v in np.flatnonzero(adj[u]):
                v = int(v)
                if v in pos and v not in level:
                    level[v] = level[u] + 1
                    nxt.append(v)
        frontier = nxt
    d = 0
    for u, v in internal:
        d = gcd(d, level[u] + 1 - level[int(v)])
    return abs(d) if d else inf


def analyze(p, zero_threshold=0.0):
    """Full structural analysis of a square stochastic matrix.

    Returns a :class:`ChainAnalysis`; unpacking it yields the condensation
    and the per-state classification.  Predicates ``is_irreducible``,
    ``is_indecomposable`` (at most one leaf class) and ``is_aperiodic``
    (every period equal to 1) hang off the result.
    """
    a = require_square(p)
    adj = a > zero_threshold
    comps = _strongly_connected_components(adj)
    condensation, class_of = _condense(adj, comps)
    leaf_set = set(condensation.leaf_classes)
    recurrent = tuple(class_of[s] in leaf_set for s in range(a.shape[0]))
    class_period = [_class_periods(adj, comp) for comp in condensation.classes]
    periods = tuple(class_period[class_of[s]] for s in range(a.shape[0]))
    return ChainAnalysis(condensation, StateClassification(recurrent, periods))


def analyze_pattern(adj):
    """Analyze a boolean adjacency pattern directly (no matrix values)."""
    adj = np.asarray(adj, dtype=bool)
    if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
        raise NotSquareError(f"expected a square pattern, got {adj.shape}")
    comps = _strongly_connected_components(adj)
    condensation, class_of = _condense(adj, comps)
    leaf_set = set(condensation.leaf_classes)
    recurrent = tuple(class_of[s] in leaf_set for s in range(adj.shape[0]))
    class_period = [_class_periods(adj, comp) for comp in condensation.classes]
    periods = tuple(class_period[class_of[s]] for s in range(adj.shape[0]))
    return ChainAnalysis(condensation, StateClassification(recurrent, periods))


def union_graph(family, zero_threshold=0.0):
    """Union of the members' positivity graphs over a shared vertex set."""
    if not isinstance(family, MatrixFamily):
        family = MatrixFamily(family)
    family.require_square()
    edges = set()
    for m in family.members:
        edges |= graph_of(m, zero_threshold).edges
    return TransitionGraph(family.shape[0], frozenset(edges))


def one_leaf_connected(family, zero_threshold=0.0):
    """Union-graph criterion: condensation weakly connected with one leaf.

    This is the structural test for almost-sure consensus of products drawn
    from the family.
    """
    g = union_graph(family, zero_threshold)
    analysis = analyze_pattern(g.adjacency())
    cond = analysis.condensation
    if len(cond.leaf_classes) != 1:
        return False
    # weak connectivity of the condensation
    k = len(cond.classes)
    if k == 1:
        return True
    neighbours = {ci: set() for ci in range(k)}
    for ci, cj in cond.dag_edges:
        neighbours[ci].add(cj)
        neighbours[cj].add(ci)
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for v in neighbours[u]:
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return len(seen) == k

import functools
import logging
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from corrkit._internal.constraints import BudgetExceededError, max_iso_vertices
from corrkit._internal.models import FactorReport, RigidityReport

logger = logging.getLogger(__name__)

# sorted vertex names
VertexSet = tuple[str, ...]


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class SimpleGraph:
    """
    Finite simple graph. Vertices are opaque strings ordered as strings; edges are
    unordered pairs of distinct vertices.

    Attributes:
        vertices: sorted vertex names
        edges: set of two-element frozensets
    """

    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    def __post_init__(self) -> None:
        vertices = tuple(sorted(set(self.vertices)))
        if len(vertices) != len(self.vertices):
            raise GraphError(f"duplicate vertices in {list(self.vertices)}")
        for vertex in vertices:
            if not isinstance(vertex, str) or vertex == "":
                raise GraphError(f"vertex names must be nonempty strings, got {vertex!r}")
        known = set(vertices)
        edges = frozenset(frozenset(edge) for edge in self.edges)
        for edge in edges:
            if len(edge) != 2:
                raise GraphError(f"self-loop or malformed edge {sorted(edge)}")
            for end in edge:
                if end not in known:
                    raise GraphError(f"edge endpoint {end!r}: vertex not in graph")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(
        cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]] = ()
    ) -> "SimpleGraph":
        """
        Build a graph, rejecting self-loops and repeated edges.
        """
        vertices = tuple(vertices)
        seen: set[frozenset[str]] = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u!r}")
            edge = frozenset((u, v))
            if edge in seen:
                raise GraphError(f"duplicate edge {u!r}-{v!r}")
            seen.add(edge)
        return cls(vertices, frozenset(seen))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "SimpleGraph":
        return cls.from_edges(
            (str(v) for v in graph.nodes), ((str(u), str(v)) for u, v in graph.edges)
        )

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(tuple(sorted(edge)) for edge in self.edges)
        return graph

    @functools.cached_property
    def _adjacency(self) -> dict[str, frozenset[str]]:
        neighbours: dict[str, set[str]] = {v: set() for v in self.vertices}
        for edge in self.edges:
            u, v = tuple(edge)
            neighbours[u].add(v)
            neighbours[v].add(u)
        return {v: frozenset(ns) for v, ns in neighbours.items()}

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, vertex: object) -> bool:
        return vertex in self._adjacency

    def adjacent(self, s: str, t: str) -> bool:
        return t in self._adjacency[s]

    def neighbours(self, s: str) -> frozenset[str]:
        self._check_vertex(s)
        return self._adjacency[s]

    def degree(self, s: str) -> int:
        return len(self.neighbours(s))

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(tuple(sorted(edge)) for edge in self.edges)

    def _check_vertex(self, s: str) -> None:
        if s not in self._adjacency:
            raise GraphError(f"{s!r}: vertex not in graph")


def link(g: SimpleGraph, s: str) -> VertexSet:
    """
    Returns:
        the neighbours of `s`, sorted
    """
    return tuple(sorted(g.neighbours(s)))


def star(g: SimpleGraph, s: str) -> VertexSet:
    return tuple(sorted(g.neighbours(s) | {s}))


def link_of_set(g: SimpleGraph, subset: Iterable[str]) -> VertexSet:
    """
    Intersection of the links of the members of `subset`. The empty intersection is the
    full vertex set.
    """
    result = set(g.vertices)
    for u in subset:
        result &= g.neighbours(u)
    return tuple(sorted(result))


def is_rigid(g: SimpleGraph) -> RigidityReport:
    for s in g.vertices:
        second = link_of_set(g, link(g, s))
        if second != (s,):
            logger.debug("Graph is not rigid at %s: link(link s) = %s", s, second)
            return RigidityReport(rigid=False, witness=s, link_of_link=second)
    return RigidityReport(rigid=True)


def is_complete(g: SimpleGraph) -> bool:
    n = len(g)
    return len(g.edges) == n * (n - 1) // 2


def cone_vertices(g: SimpleGraph) -> VertexSet:
    """
    Returns:
        vertices whose star is the whole vertex set
    """
    return tuple(s for s in g.vertices if g.degree(s) == len(g) - 1)


def normalizer_support(g: SimpleGraph, subset: Iterable[str]) -> VertexSet:
    """
    `S0 ∪ link(S0)`: the vertices spanning the normalizer of the subalgebra over a
    nonempty `S0`.
    """
    subset = set(subset)
    if not subset:
        raise GraphError("normalizer support needs a nonempty vertex set")
    for u in subset:
        g._check_vertex(u)
    return tuple(sorted(subset | set(link_of_set(g, subset))))


def is_factor(g: SimpleGraph, factor_flags: Mapping[str, bool]) -> FactorReport:
    """
    A graph product of tracial von Neumann algebras is a factor iff every vertex whose
    star is the whole graph carries a factor.

    Args:
        g: the graph
        factor_flags: vertex -> whether its vertex algebra is a factor
    """
    missing = [s for s in g.vertices if s not in factor_flags]
    if missing:
        raise GraphError(f"factor flags missing for vertices {missing}")
    cones = cone_vertices(g)
    offending = tuple(s for s in cones if not factor_flags[s])
    return FactorReport(factor=not offending, cone_vertices=cones, offending=offending)


def induced_subgraph(g: SimpleGraph, subset: Iterable[str]) -> SimpleGraph:
    subset = set(subset)
    for u in subset:
        g._check_vertex(u)
    edges = frozenset(edge for edge in g.edges if edge <= subset)
    return SimpleGraph(tuple(subset), edges)


def disjoint_union(graphs: Iterable[SimpleGraph]) -> SimpleGraph:
    vertices: list[str] = []
    edges: set[frozenset[str]] = set()
    for graph in graphs:
        overlap = set(vertices) & set(graph.vertices)
        if overlap:
            raise GraphError(f"vertex names clash in disjoint union: {sorted(overlap)}")
        vertices.extend(graph.vertices)
        edges |= graph.edges
    return SimpleGraph(tuple(vertices), frozenset(edges))


def complete_graph(names: Iterable[str]) -> SimpleGraph:
    names = tuple(names)
    return SimpleGraph.from_edges(
        names, ((u, v) for i, u in enumerate(names) for v in names[i + 1 :])
    )


def cycle_graph(n: int) -> SimpleGraph:
    """
    Cycle 1-2-...-n-1 on vertices named "1".."n".
    """
    if n < 3:
        raise GraphError(f"a simple cycle needs at least 3 vertices, got {n}")
    return SimpleGraph.from_networkx(nx.relabel_nodes(nx.cycle_graph(n), lambda i: i + 1))


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_networkx(nx.relabel_nodes(nx.path_graph(n), lambda i: i + 1))


def petersen_graph() -> SimpleGraph:
    return SimpleGraph.from_networkx(nx.petersen_graph())


def graphs_isomorphic(
    g1: SimpleGraph,
    g2: SimpleGraph,
    labels1: Optional[Mapping[str, str]] = None,
    labels2: Optional[Mapping[str, str]] = None,
    *,
    max_vertices: Optional[int] = None,
) -> Optional[dict[str, str]]:
    """
    Exhaustive search for a label-preserving graph isomorphism.

    Vertices of `g1` are assigned in vertex order and candidates of `g2` are tried in vertex
    order, so the first bijection found is the lexicographically least one.

    Args:
        g1: first graph
        g2: second graph
        labels1: optional vertex labels of `g1`; labels are compared only if both are given
        labels2: optional vertex labels of `g2`
        max_vertices: size guard on the larger graph, checked before any comparison;
            `CORRKIT_MAX_ISO_VERTICES` or 12 if not specified

    Returns:
        mapping from vertices of `g1` to vertices of `g2`, or `None`
    """
    use_labels = labels1 is not None and labels2 is not None
    if use_labels:
        for g, labels in ((g1, labels1), (g2, labels2)):
            missing = [s for s in g.vertices if s not in labels]
            if missing:
                raise GraphError(f"labels missing for vertices {missing}")

    def label_of(labels: Optional[Mapping[str, str]], s: str) -> Optional[str]:
        return labels[s] if use_labels else None

    limit = max_vertices if max_vertices is not None else max_iso_vertices()
    size = max(len(g1), len(g2))
    if size > limit:
        raise BudgetExceededError(
            f"graph too large for exhaustive isomorphism search ({size} > {limit} vertices)"
        )

    if len(g1) != len(g2) or len(g1.edges) != len(g2.edges):
        return None
    signature1 = Counter((g1.degree(s), label_of(labels1, s)) for s in g1.vertices)
    signature2 = Counter((g2.degree(t), label_of(labels2, t)) for t in g2.vertices)
    if signature1 != signature2:
        return None

    order = g1.vertices
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def extend(position: int) -> bool:
        if position == len(order):
            return True
        s = order[position]
        for t in g2.vertices:
            if t in used:
                continue
            if g1.degree(s) != g2.degree(t):
                continue
            if label_of(labels1, s) != label_of(labels2, t):
                continue
            if any(g1.adjacent(s, u) != g2.adjacent(t, mapping[u]) for u in order[:position]):
                continue
            mapping[s] = t
            used.add(t)
            if extend(position + 1):
                return True
            del mapping[s]
            used.discard(t)
        return False

    if extend(0):
        return dict(mapping)
    return None

import logging
from collections.abc import Hashable, Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Optional, Union

import numpy as np

from corrkit._internal.constraints import BudgetExceededError, EnumerationBudget
from corrkit._internal.graphs import SimpleGraph, is_complete, is_rigid, link, star
from corrkit._internal.models import CosetActionReport, PhiInjectivityReport, VertexGroupSpec
from corrkit._internal.traces import lex_normal_form, reduce_word
from corrkit._internal.utils import parse_syllables
from corrkit.groups import AbstractVertexGroup, from_spec
from corrkit.groups.free import FreeGroup, Word
from corrkit.groups.subgroup import FiniteIndexSubgroupSpec, SubgroupVertexGroup

logger = logging.getLogger(__name__)

GroupLike = Union[str, VertexGroupSpec, AbstractVertexGroup]


class GraphProductError(ValueError):
    pass


@dataclass(frozen=True)
class Syllable:
    vertex: str
    element: Hashable


RawSyllable = Union[Syllable, tuple[str, Any]]


def as_vertex_group(value: GroupLike) -> AbstractVertexGroup:
    if isinstance(value, AbstractVertexGroup):
        return value
    try:
        return from_spec(VertexGroupSpec.cast(value))
    except ValueError as e:
        raise GraphProductError(str(e)) from e


def _vertex(syllable: Syllable) -> str:
    return syllable.vertex


@dataclass(frozen=True)
class GraphProduct:
    """
    Graph product of groups: the free product of the vertex groups modulo the relations
    that groups on adjacent vertices commute.

    Attributes:
        graph: the underlying simple graph
        groups: `(vertex, group)` pairs in vertex order, one per vertex
    """

    graph: SimpleGraph
    groups: tuple[tuple[str, AbstractVertexGroup], ...]

    def __post_init__(self) -> None:
        groups = tuple(sorted(dict(self.groups).items(), key=lambda item: item[0]))
        names = [vertex for vertex, _ in groups]
        missing = [v for v in self.graph.vertices if v not in set(names)]
        if missing:
            raise GraphProductError(f"vertices without a vertex group: {', '.join(missing)}")
        unknown = [v for v in names if v not in self.graph]
        if unknown:
            raise GraphProductError(f"vertex groups for unknown vertices: {', '.join(unknown)}")
        object.__setattr__(self, "groups", groups)

    @classmethod
    def build(
        cls,
        graph: SimpleGraph,
        groups: Optional[Mapping[str, GroupLike]] = None,
        default: Optional[GroupLike] = None,
    ) -> "GraphProduct":
        """
        Args:
            groups: vertex -> vertex group, its spec or a label such as "F2", "Z" or "Z/3"
            default: group for vertices absent from `groups`
        """
        groups = dict(groups or {})
        if default is not None:
            for vertex in graph.vertices:
                groups.setdefault(vertex, default)
        return cls(graph, tuple((v, as_vertex_group(g)) for v, g in groups.items()))

    @cached_property
    def _group_map(self) -> dict[str, AbstractVertexGroup]:
        return dict(self.groups)

    def group(self, vertex: str) -> AbstractVertexGroup:
        try:
            return self._group_map[vertex]
        except KeyError:
            raise GraphProductError(f"{vertex!r}: vertex not in graph") from None

    def labels(self) -> dict[str, str]:
        return {vertex: group.label for vertex, group in self.groups}

    def syllable(self, vertex: str, element: Any) -> Syllable:
        group = self.group(vertex)
        if isinstance(element, str):
            try:
                element = group.parse(element)
            except ValueError as e:
                raise GraphProductError(f"syllable at {vertex!r}: {e}") from e
        if not group.contains(element):
            raise GraphProductError(
                f"syllable at {vertex!r}: {element!r} is not an element of {group.label}"
            )
        if group.is_identity(element):
            raise GraphProductError(f"syllable at {vertex!r} carries the identity")
        return Syllable(vertex, element)

    def _coerce(self, item: RawSyllable) -> Syllable:
        if isinstance(item, Syllable):
            return self.syllable(item.vertex, item.element)
        vertex, element = item
        return self.syllable(vertex, element)

    def _merge(self, x: Syllable, y: Syllable) -> Optional[Syllable]:
        group = self._group_map[x.vertex]
        element = group.multiply(x.element, y.element)
        if group.is_identity(element):
            return None
        return Syllable(x.vertex, element)

    def _element(self, reduced: Iterable[Syllable]) -> "GPElement":
        # syllables on one vertex never commute, so ordering by vertex alone is canonical
        return GPElement(self, tuple(lex_normal_form(reduced, _vertex, self.graph.adjacent)))

    def normal_form(self, raw: Iterable[RawSyllable]) -> "GPElement":
        syllables = [self._coerce(item) for item in raw]
        return self._element(reduce_word(syllables, _vertex, self.graph.adjacent, self._merge))

    def parse(self, text: str) -> "GPElement":
        """
        Normal form of a whitespace-separated syllable list such as "u:a v:bB u:A".
        """
        try:
            raw = parse_syllables(text)
        except ValueError as e:
            raise GraphProductError(str(e)) from e
        return self.normal_form(raw)

    def _check_member(self, x: "GPElement") -> None:
        if x.product is not self and x.product != self:
            raise GraphProductError("element belongs to a different graph product")

    def identity(self) -> "GPElement":
        return GPElement(self, ())

    def multiply(self, x: "GPElement", y: "GPElement") -> "GPElement":
        self._check_member(x)
        self._check_member(y)
        reduced = reduce_word(
            y.syllables, _vertex, self.graph.adjacent, self._merge, start=list(x.syllables)
        )
        return self._element(reduced)

    def inverse(self, x: "GPElement") -> "GPElement":
        self._check_member(x)
        return self._element(
            Syllable(s.vertex, self._group_map[s.vertex].inverse(s.element))
            for s in reversed(x.syllables)
        )

    @cached_property
    def _generators(self) -> tuple["GPElement", ...]:
        return tuple(
            GPElement(self, (Syllable(vertex, g),))
            for vertex, group in self.groups
            for g in group.generators()
        )

    def generators(self) -> tuple["GPElement", ...]:
        """
        Standard generators of every vertex group and their inverses, as one-syllable
        elements in vertex order.
        """
        return self._generators

    def syllable_length(self, x: "GPElement") -> int:
        return len(x.syllables)

    def format(self, x: "GPElement") -> list[list[str]]:
        return [[s.vertex, self._group_map[s.vertex].format(s.element)] for s in x.syllables]


@dataclass(frozen=True)
class GPElement:
    product: GraphProduct = field(repr=False)
    syllables: tuple[Syllable, ...]

    def __mul__(self, other: "GPElement") -> "GPElement":
        return self.product.multiply(self, other)

    def inverse(self) -> "GPElement":
        return self.product.inverse(self)

    def is_identity(self) -> bool:
        return not self.syllables

    def __len__(self) -> int:
        return len(self.syllables)

    def to_list(self) -> list[list[str]]:
        return self.product.format(self)

    def __str__(self) -> str:
        return " ".join(f"{v}:{e}" for v, e in self.to_list()) or "1"


def gp_normal_form(
    graph: SimpleGraph, groups: Mapping[str, GroupLike], raw: Iterable[RawSyllable]
) -> GPElement:
    return GraphProduct.build(graph, groups).normal_form(raw)


def gp_multiply(x: GPElement, y: GPElement) -> GPElement:
    return x.product.multiply(x, y)


def iter_ball(
    product: GraphProduct, radius: int, budget: Optional[EnumerationBudget] = None
) -> Iterator[GPElement]:
    """
    Distinct elements of word length at most `radius` in `product.generators()`, in
    breadth-first order.

    Raises:
        BudgetExceededError: once the budget is exhausted, after yielding what fit in it
    """
    if radius < 0:
        raise GraphProductError(f"radius must be non-negative, got {radius}")
    budget = budget if budget is not None else EnumerationBudget()
    identity = product.identity()
    budget.charge()
    yield identity
    seen = {identity.syllables}
    frontier = [identity]
    generators = product.generators()
    for _ in range(radius):
        next_frontier = []
        for x in frontier:
            for g in generators:
                y = product.multiply(x, g)
                if y.syllables in seen:
                    continue
                budget.charge()
                seen.add(y.syllables)
                next_frontier.append(y)
                yield y
        frontier = next_frontier


@dataclass(frozen=True)
class GammaPrimeConstruction:
    """
    The index-k graph Γ′ of a graph product G = G_Γ together with an embedding
    φ: G′ = G′_Γ′ -> G onto a subgroup of index k.

    Γ′ keeps `star s1` and puts k copies `(i,s)` of every other vertex s; copies on the
    same sheet i are joined like the originals, and every copy is joined to the star
    vertices the original is joined to. The vertex group at s1 becomes H, every other
    vertex keeps the group of its original.

    Attributes:
        source: the graph product over Γ
        s1: the vertex whose group is replaced by H
        subgroup: H as a finite-index subgroup of the group at s1
        product: the graph product over Γ′
        projection: `(r, π(r))` pairs of the projection S′ -> S
        sheets: `(r, i)` pairs for the copied vertices `r = (i,s)`
    """

    source: GraphProduct
    s1: str
    subgroup: FiniteIndexSubgroupSpec
    product: GraphProduct
    projection: tuple[tuple[str, str], ...]
    sheets: tuple[tuple[str, int], ...]

    @property
    def graph(self) -> SimpleGraph:
        return self.product.graph

    @property
    def index(self) -> int:
        return self.subgroup.index

    @cached_property
    def _projection(self) -> dict[str, str]:
        return dict(self.projection)

    @cached_property
    def _sheets(self) -> dict[str, int]:
        return dict(self.sheets)

    @cached_property
    def _conjugators(self) -> tuple[tuple[Word, Word], ...]:
        # g_i⁻¹ = t_i, so g_i⁻¹ w g_i = t_i w t_i⁻¹
        ambient = self.subgroup.ambient
        return tuple((t, ambient.inverse(t)) for t in self.subgroup.transversal())

    def project(self, vertex: str) -> str:
        try:
            return self._projection[vertex]
        except KeyError:
            raise GraphProductError(f"{vertex!r}: vertex not in Γ′") from None

    def sheet(self, vertex: str) -> Optional[int]:
        return self._sheets.get(vertex)

    def coset_representatives(self) -> tuple[Word, ...]:
        return self.subgroup.coset_representatives()

    def dict(self) -> dict[str, Any]:
        ambient = self.subgroup.ambient
        return {
            "s1": self.s1,
            "k": self.index,
            "vertex_count": len(self.graph),
            "expected_vertex_count": len(star(self.source.graph, self.s1))
            + self.index * (len(self.source.graph) - len(star(self.source.graph, self.s1))),
            "graph": {
                "vertices": list(self.graph.vertices),
                "edges": [list(edge) for edge in self.graph.sorted_edges()],
            },
            "labels": self.product.labels(),
            "coset_representatives": [ambient.format(g) for g in self.coset_representatives()],
            "subgroup": self.subgroup.dict(),
            "source_rigid": is_rigid(self.source.graph).rigid,
            "rigid": is_rigid(self.graph).rigid,
        }


def sheet_vertex(i: int, s: str) -> str:
    return f"({i},{s})"


def construct_gamma_prime(
    graph: SimpleGraph,
    labels: Mapping[str, GroupLike],
    s1: str,
    sub: FiniteIndexSubgroupSpec,
) -> GammaPrimeConstruction:
    if s1 not in graph:
        raise GraphProductError(f"s1 = {s1!r} is not a vertex of the graph")
    source = GraphProduct.build(graph, labels)
    if source.group(s1) != sub.ambient:
        raise GraphProductError(
            f"label mismatch: the group at {s1!r} is {source.group(s1).label},"
            f" the subgroup is taken in {sub.ambient.label}"
        )
    core = star(graph, s1)
    in_core = set(core)
    outside = [s for s in graph.vertices if s not in in_core]
    k = sub.index
    copies = {(i, s): sheet_vertex(i, s) for i in range(1, k + 1) for s in outside}
    clash = sorted(set(copies.values()) & set(graph.vertices))
    if clash:
        raise GraphProductError(f"vertex names clash with copied vertices: {', '.join(clash)}")

    edges = []
    for u, v in graph.sorted_edges():
        if u in in_core and v in in_core:
            edges.append((u, v))
        elif u in in_core or v in in_core:
            center, other = (u, v) if u in in_core else (v, u)
            edges.extend((center, copies[i, other]) for i in range(1, k + 1))
        else:
            edges.extend((copies[i, u], copies[i, v]) for i in range(1, k + 1))
    graph_prime = SimpleGraph.from_edges([*core, *copies.values()], edges)

    groups: dict[str, AbstractVertexGroup] = {}
    for s in core:
        groups[s] = SubgroupVertexGroup(sub) if s == s1 else source.group(s)
    for (_, s), name in copies.items():
        groups[name] = source.group(s)
    product = GraphProduct(graph_prime, tuple(groups.items()))

    projection = tuple(sorted([(s, s) for s in core] + [(n, s) for (_, s), n in copies.items()]))
    sheets = tuple(sorted((n, i) for (i, _), n in copies.items()))
    logger.info(
        "Built Γ′ with %d vertices and %d edges from %d vertices, s1=%s, k=%d",
        len(graph_prime),
        len(graph_prime.edges),
        len(graph),
        s1,
        k,
    )
    return GammaPrimeConstruction(source, s1, sub, product, projection, sheets)


def phi_apply(c: GammaPrimeConstruction, x: GPElement) -> GPElement:
    """
    φ fixes syllables on star s1 (H sits inside the group at s1) and sends a syllable w
    on the copy (i,s) to g_i⁻¹ w g_i with w read in the group at s.
    """
    if x.product is not c.product and x.product != c.product:
        raise GraphProductError("element is not an element of the graph product over Γ′")
    raw = []
    for syllable in x.syllables:
        i = c.sheet(syllable.vertex)
        if i is None:
            raw.append(syllable)
            continue
        left, right = c._conjugators[i - 1]
        if left:
            raw.append(Syllable(c.s1, left))
        raw.append(Syllable(c.project(syllable.vertex), syllable.element))
        if right:
            raw.append(Syllable(c.s1, right))
    return c.source.normal_form(raw)


def verify_phi_injective_on_ball(
    c: GammaPrimeConstruction, radius: int, budget: Optional[EnumerationBudget] = None
) -> PhiInjectivityReport:
    """
    Compare φ-images of all elements of the radius ball of G′. Distinct elements are
    enumerated by normal form, so any repeated image is a violation.
    """
    images: dict[tuple[Syllable, ...], GPElement] = {}
    report = PhiInjectivityReport(radius=radius, checked=0)
    try:
        for x in iter_ball(c.product, radius, budget):
            image = phi_apply(c, x)
            earlier = images.setdefault(image.syllables, x)
            if earlier is not x:
                report.violations.append((earlier.to_list(), x.to_list()))
            report.checked += 1
    except BudgetExceededError as e:
        logger.warning("Ball of radius %d truncated after %s elements", radius, e.partial_count)
        report.complete = False
    logger.info(
        "Checked φ on %d elements of the radius %d ball, %d violations",
        report.checked,
        radius,
        len(report.violations),
    )
    return report


def verify_phi_homomorphism(
    c: GammaPrimeConstruction,
    radius: int = 2,
    samples: int = 200,
    seed: int = 0,
    budget: Optional[EnumerationBudget] = None,
) -> int:
    """
    Returns:
        the number of sampled pairs (x, y) from the radius ball with φ(xy) ≠ φ(x)φ(y)
    """
    ball = list(iter_ball(c.product, radius, budget))
    rng = np.random.default_rng(seed)
    residual = 0
    for i, j in rng.integers(0, len(ball), size=(samples, 2)):
        x, y = ball[i], ball[j]
        if phi_apply(c, x * y) != phi_apply(c, x) * phi_apply(c, y):
            residual += 1
    return residual


def _act_on_point(c: GammaPrimeConstruction, point: int, x: GPElement) -> int:
    for syllable in x.syllables:
        if syllable.vertex == c.s1:
            point = c.subgroup.act(point, syllable.element)
    return point


def coset_action(c: GammaPrimeConstruction) -> CosetActionReport:
    """
    Action of G on the cosets of φ(G′) through the quotient of the group at s1; the other
    vertex groups act trivially.
    """
    k = c.index
    trivial = tuple(range(1, k + 1))
    action = {}
    for vertex, group in c.source.groups:
        for g in group.standard_generators():
            name = f"{vertex}:{group.format(g)}"
            action[name] = c.subgroup.permutation(g) if vertex == c.s1 else trivial

    orbit = {1}
    frontier = [1]
    while frontier:
        point = frontier.pop()
        for perm in action.values():
            if perm[point - 1] not in orbit:
                orbit.add(perm[point - 1])
                frontier.append(perm[point - 1])

    stabilized = all(
        _act_on_point(c, 1, phi_apply(c, g)) == 1 for g in c.product.generators()
    )
    return CosetActionReport(
        action=action,
        index=k,
        transitive=len(orbit) == k,
        basepoint_stabilized=stabilized,
    )


def fg_subgroup_membership(sub: FiniteIndexSubgroupSpec, w: Union[Word, str]) -> bool:
    if isinstance(w, str):
        try:
            w = sub.ambient.parse(w)
        except ValueError as e:
            raise GraphProductError(str(e)) from e
    return sub.contains(w)


def verify_projection(c: GammaPrimeConstruction) -> tuple[str, ...]:
    """
    Returns:
        vertices r of Γ′ with π(link r) ≠ link π(r), or lying on an edge that π does not
        map to an edge; empty when π is a well-behaved projection
    """
    source = c.source.graph
    offending = set()
    for r in c.graph.vertices:
        image = {c.project(u) for u in link(c.graph, r)}
        if image != set(link(source, c.project(r))):
            offending.add(r)
    for u, v in c.graph.sorted_edges():
        if not source.adjacent(c.project(u), c.project(v)):
            offending.update((u, v))
    return tuple(sorted(offending))


def counterexample_construction(
    graph: SimpleGraph, s1: Optional[str] = None
) -> GammaPrimeConstruction:
    """
    Every vertex labelled F2 and H the index 2 subgroup of the group at s1 cut out by
    a ↦ (1 2), b ↦ id. H is free of rank 3, and when `graph` is rigid so is Γ′.
    """
    if is_complete(graph):
        raise GraphProductError("a complete graph has no vertex outside the star of s1")
    if s1 is None:
        s1 = next(s for s in graph.vertices if len(star(graph, s)) < len(graph))
    elif len(star(graph, s1)) == len(graph):
        raise GraphProductError(f"the star of {s1!r} is the whole graph, Γ′ would equal Γ")
    sub = FiniteIndexSubgroupSpec.from_mapping(2, {"a": [2, 1], "b": [1, 2]})
    labels = {vertex: FreeGroup(2) for vertex in graph.vertices}
    return construct_gamma_prime(graph, labels, s1, sub)

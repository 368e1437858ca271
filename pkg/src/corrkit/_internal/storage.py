import csv
import dataclasses
import json
from collections.abc import Mapping, Sequence
from typing import IO, Optional, TypeVar, Union

import networkx as nx
import pydot
from pydantic import BaseModel, Field, ValidationError
from typing_extensions import TypedDict

from corrkit._internal.graphs import GraphError, SimpleGraph

T = TypeVar("T")

Labels = dict[str, str]


class DocumentError(ValueError):
    pass


class GraphDocument(BaseModel):
    vertices: list[str]
    edges: list[tuple[str, str]] = Field(default_factory=list)
    labels: Optional[dict[str, str]] = None

    class Config:
        extra = "forbid"


class ConstructionDocument(BaseModel):
    """
    Descriptor of a Γ′ construction: the graph inline or as a path or corpus name, vertex
    group labels (missing ones default to F2), the vertex s1 and the quotient map of the
    free group at s1 onto a transitive permutation group of degree k.
    """

    graph: Union[GraphDocument, str]
    labels: Optional[dict[str, str]] = None
    s1: str
    k: int
    quotient: dict[str, list[int]]

    class Config:
        extra = "forbid"


class GraphJSON(TypedDict, total=False):
    vertices: list[str]
    edges: list[list[str]]
    labels: Labels


def _graph_from_document(document: GraphDocument) -> tuple[SimpleGraph, Optional[Labels]]:
    try:
        graph = SimpleGraph.from_edges(document.vertices, document.edges)
    except GraphError as e:
        raise DocumentError(str(e)) from e
    labels = document.labels
    if labels is not None:
        unknown = sorted(set(labels) - set(graph.vertices))
        if unknown:
            raise DocumentError(f"labels for unknown vertices: {', '.join(unknown)}")
    return graph, labels


def loads_graph(text: str) -> tuple[SimpleGraph, Optional[Labels]]:
    """
    Parse `{"vertices": [...], "edges": [[u, v], ...], "labels": {...}}`.
    """
    try:
        document = GraphDocument.parse_raw(text)
    except ValidationError as e:
        raise DocumentError(f"malformed graph JSON: {e}") from e
    return _graph_from_document(document)


def _strip_quotes(value: str) -> str:
    if len(value) >= 2 and value[0] == value[-1] == '"':
        return value[1:-1]
    return value


def loads_dot(text: str) -> tuple[SimpleGraph, Optional[Labels]]:
    """
    Parse an undirected DOT graph. Node attributes `label` become vertex labels.
    """
    try:
        parsed = pydot.graph_from_dot_data(text)
    except Exception as e:
        raise DocumentError(f"malformed DOT: {e}") from e
    if not parsed:
        raise DocumentError("malformed DOT: no graph found")
    if len(parsed) > 1:
        raise DocumentError(f"expected a single DOT graph, got {len(parsed)}")
    dot = parsed[0]
    if dot.get_type() != "graph":
        raise DocumentError("only undirected DOT graphs are accepted")
    multigraph = nx.nx_pydot.from_pydot(dot)
    if nx.number_of_selfloops(multigraph):
        raise DocumentError("self-loops are not allowed in a simple graph")
    edges = []
    for u, v in multigraph.edges():
        if multigraph.number_of_edges(u, v) > 1:
            raise DocumentError(f"duplicate edge {u!r}-{v!r}")
        edges.append((str(u), str(v)))
    labels = {
        str(node): _strip_quotes(str(data["label"]))
        for node, data in multigraph.nodes(data=True)
        if "label" in data
    }
    try:
        graph = SimpleGraph.from_edges((str(v) for v in multigraph.nodes), edges)
    except GraphError as e:
        raise DocumentError(str(e)) from e
    return graph, labels or None


def load_graph(path: str) -> tuple[SimpleGraph, Optional[Labels]]:
    with open(path) as f:
        text = f.read()
    if path.endswith((".dot", ".gv")):
        return loads_dot(text)
    return loads_graph(text)


def dumps_graph(graph: SimpleGraph, labels: Optional[Mapping[str, str]] = None) -> str:
    payload: GraphJSON = {
        "vertices": list(graph.vertices),
        "edges": [list(edge) for edge in graph.sorted_edges()],
    }
    if labels is not None:
        payload["labels"] = {v: labels[v] for v in graph.vertices if v in labels}
    return json.dumps(payload, sort_keys=True)


def loads_construction(text: str) -> ConstructionDocument:
    try:
        document = ConstructionDocument.parse_raw(text)
    except ValidationError as e:
        raise DocumentError(f"malformed construction JSON: {e}") from e
    for letter, images in document.quotient.items():
        if len(images) != document.k:
            raise DocumentError(
                f"image of {letter!r} has {len(images)} entries, expected k = {document.k}"
            )
    return document


def load_construction(path: str) -> ConstructionDocument:
    with open(path) as f:
        return loads_construction(f.read())


def construction_graph(
    document: ConstructionDocument,
) -> Optional[tuple[SimpleGraph, Optional[Labels]]]:
    """
    The inline graph of a construction descriptor, `None` if it references one by name.
    """
    if isinstance(document.graph, GraphDocument):
        return _graph_from_document(document.graph)
    return None


def dump_rows(rows: Sequence[T], stream: IO[str], *, cls: type[T]) -> None:
    writer = csv.DictWriter(
        stream, fieldnames=[field.name for field in dataclasses.fields(cls)], lineterminator="\n"
    )
    writer.writeheader()
    for row in rows:
        writer.writerow(row.dict())

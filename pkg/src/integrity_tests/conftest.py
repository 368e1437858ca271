import os

import networkx as nx
import pytest

from corrkit._internal.graphs import SimpleGraph, cycle_graph, petersen_graph


def small_graphs(max_vertices: int = 4) -> list[SimpleGraph]:
    """
    Every simple graph on 1..max_vertices vertices up to isomorphism, from the networkx atlas.
    """
    return [
        SimpleGraph.from_networkx(g)
        for g in nx.graph_atlas_g()
        if 1 <= g.number_of_nodes() <= max_vertices
    ]


def graph_id(graph: SimpleGraph) -> str:
    edges = ",".join(f"{u}{v}" for u, v in graph.sorted_edges())
    return f"n{len(graph)}[{edges}]"


@pytest.fixture(params=small_graphs(), ids=graph_id)
def small_graph(request) -> SimpleGraph:
    return request.param


@pytest.fixture(params=[5, 6], ids=lambda n: f"c{n}")
def cycle(request) -> SimpleGraph:
    return cycle_graph(request.param)


@pytest.fixture
def petersen() -> SimpleGraph:
    return petersen_graph()


@pytest.fixture
def ball_radius() -> int:
    return int(os.environ.get("CORRKIT_INTEGRITY_RADIUS", "3"))

import functools
import logging
import re
from typing import Callable

from corrkit._internal.graphs import (
    GraphError,
    SimpleGraph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    path_graph,
    petersen_graph,
)

logger = logging.getLogger(__name__)

_PATTERNS: list[tuple[re.Pattern, Callable[[int], SimpleGraph]]] = [
    (re.compile(r"^c(\d+)$"), cycle_graph),
    (re.compile(r"^p(\d+)$"), path_graph),
    (re.compile(r"^k(\d+)$"), lambda n: complete_graph(str(i) for i in range(1, n + 1))),
]

_FIXED: dict[str, Callable[[], SimpleGraph]] = {
    "petersen": petersen_graph,
    # two commuting involutions
    "two_adjacent": lambda: SimpleGraph.from_edges(["s", "t"], [("s", "t")]),
    # infinite dihedral group
    "two_free": lambda: SimpleGraph.from_edges(["s", "t"]),
    "k2+k3": lambda: disjoint_union(
        [complete_graph(["a1", "a2"]), complete_graph(["b1", "b2", "b3"])]
    ),
}


@functools.lru_cache
def named_graph(name: str) -> SimpleGraph:
    """
    Graphs of the built-in corpus: `c<n>` cycles, `p<n>` paths and `k<n>` complete graphs on
    vertices "1".."n", plus "petersen", "two_adjacent", "two_free" and "k2+k3".
    """
    key = name.lower()
    if key in _FIXED:
        return _FIXED[key]()
    for pattern, build in _PATTERNS:
        m = pattern.match(key)
        if m:
            logger.debug("Building corpus graph %s", key)
            return build(int(m.group(1)))
    raise GraphError(f"unknown graph name {name!r}, expected one of {', '.join(corpus_names())}")


def corpus_names() -> list[str]:
    return ["c<n>", "p<n>", "k<n>", *_FIXED]

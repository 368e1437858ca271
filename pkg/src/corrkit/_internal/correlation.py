"""
Class-level consequences of the classification theorems for graph products and tensor
products of nonamenable stably solid II₁ factors.

Factors are represented only by opaque class labels; two labels are correlated iff they are
equal. Verdicts are never positive: either an invariant differs, which rules correlation
out, or the invariant cannot tell the inputs apart.
"""

import logging
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Optional

from corrkit._internal.graphs import (
    SimpleGraph,
    complete_graph,
    disjoint_union,
    graphs_isomorphic,
    is_rigid,
    link,
)
from corrkit._internal.models import CorrelationReport, Verdict

logger = logging.getLogger(__name__)

FactorClassLabel = str

GF_LABEL: FactorClassLabel = "F2"


class CorrelationError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TensorSignature:
    """
    Multiset of class labels of the factors of a tensor product, stored sorted.
    Signatures order by size first, then lexicographically.
    """

    size: int
    labels: tuple[FactorClassLabel, ...]

    @classmethod
    def of(cls, labels: Iterable[FactorClassLabel]) -> "TensorSignature":
        labels = tuple(sorted(labels))
        for label in labels:
            _check_label(label)
        return cls(len(labels), labels)

    def __str__(self) -> str:
        return "⟨" + ",".join(self.labels) + "⟩"


@dataclass(frozen=True)
class LinkInvariant:
    """
    Multiset over the vertices of a rigid labelled graph of the signatures of their links.
    """

    entries: tuple[TensorSignature, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(sorted(self.entries)))

    def serialize(self) -> list[list[str]]:
        return [list(entry.labels) for entry in self.entries]


def _check_label(label: FactorClassLabel) -> None:
    if not isinstance(label, str) or not label:
        raise CorrelationError(f"class labels must be nonempty strings, got {label!r}")


def _check_labels(g: SimpleGraph, labels: Mapping[str, FactorClassLabel]) -> None:
    missing = [s for s in g.vertices if s not in labels]
    if missing:
        raise CorrelationError(f"unlabelled vertices: {', '.join(missing)}")
    for s in g.vertices:
        _check_label(labels[s])


def _check_rigid(g: SimpleGraph) -> None:
    report = is_rigid(g)
    if not report:
        raise CorrelationError(
            "link invariant defined only for rigid graphs"
            f" (link(link {report.witness}) = {list(report.link_of_link)})"
        )


def link_signatures(
    g: SimpleGraph, labels: Mapping[str, FactorClassLabel]
) -> dict[str, TensorSignature]:
    _check_rigid(g)
    _check_labels(g, labels)
    return {s: TensorSignature.of(labels[t] for t in link(g, s)) for s in g.vertices}


def link_invariant(g: SimpleGraph, labels: Mapping[str, FactorClassLabel]) -> LinkInvariant:
    return LinkInvariant(tuple(link_signatures(g, labels).values()))


def gf_graph(family: Iterable[int]) -> SimpleGraph:
    """
    Disjoint union of complete graphs K_n over n in `family`, with vertices "K<n>.<j>".
    """
    family = sorted(set(family))
    if not family:
        raise CorrelationError("the family must be nonempty")
    small = [n for n in family if n < 2]
    if small:
        raise CorrelationError(
            f"family entries must be at least 2, got {small}: a K_1 component breaks rigidity"
        )
    return disjoint_union(complete_graph(f"K{n}.{j}" for j in range(1, n + 1)) for n in family)


def gf_labels(g: SimpleGraph) -> dict[str, FactorClassLabel]:
    return {s: GF_LABEL for s in g.vertices}


def gf_distinguish(family: Iterable[int], other: Iterable[int]) -> CorrelationReport:
    g, h = gf_graph(family), gf_graph(other)
    invariant_a = link_invariant(g, gf_labels(g))
    invariant_b = link_invariant(h, gf_labels(h))
    verdict = Verdict.INDISTINGUISHABLE if invariant_a == invariant_b else Verdict.NOT_CORRELATED
    return CorrelationReport(verdict, invariant_a.serialize(), invariant_b.serialize())


def tensor_correlated(a: Sequence[FactorClassLabel], b: Sequence[FactorClassLabel]) -> bool:
    """
    Tensor products of nonamenable stably solid factors are correlated iff there are as many
    factors on both sides and they match up to a permutation.
    """
    return TensorSignature.of(a) == TensorSignature.of(b)


def tensor_match(
    a: Sequence[FactorClassLabel], b: Sequence[Sequence[FactorClassLabel]]
) -> Optional[tuple[tuple[int, ...], ...]]:
    """
    Partition positions 1..n of `a` into blocks S_1, ..., S_r with the labels of `a` on S_k
    equal to the signature `b[k]` as multisets.

    Returns:
        the blocks as sorted 1-based tuples, or `None` if no such partition exists. Among all
        solutions, the one assigning every position to the least possible block in turn
    """
    for label in a:
        _check_label(label)
    signatures = [TensorSignature.of(block) for block in b]
    if not signatures:
        raise CorrelationError("at least one target signature is required")
    if any(signature.size == 0 for signature in signatures):
        raise CorrelationError("target signatures must be nonempty, blocks are nonempty")
    if len(signatures) > len(a):
        raise CorrelationError(
            f"cannot split {len(a)} factors into {len(signatures)} nonempty blocks"
        )
    total: Counter = Counter()
    for signature in signatures:
        total.update(signature.labels)
    if total != Counter(a):
        return None
    # with matching totals every partial assignment extends, so the greedy choice is the
    # first solution of the depth-first search
    remaining = [Counter(signature.labels) for signature in signatures]
    blocks: list[list[int]] = [[] for _ in signatures]
    for position, label in enumerate(a, start=1):
        k = next(k for k, counts in enumerate(remaining) if counts[label] > 0)
        remaining[k][label] -= 1
        blocks[k].append(position)
    return tuple(tuple(block) for block in blocks)


def link_matching(
    g: SimpleGraph,
    labels: Mapping[str, FactorClassLabel],
    h: SimpleGraph,
    labels_h: Mapping[str, FactorClassLabel],
) -> CorrelationReport:
    """
    If the graph products over rigid `g` and `h` are correlated, every vertex on either side
    has a vertex on the other side whose link carries a correlated tensor product.
    """
    signatures_g = link_signatures(g, labels)
    signatures_h = link_signatures(h, labels_h)

    def partners(
        source: dict[str, TensorSignature], target: dict[str, TensorSignature]
    ) -> dict[str, list[str]]:
        return {
            s: [t for t, other in target.items() if other == signature]
            for s, signature in source.items()
        }

    a_to_b = partners(signatures_g, signatures_h)
    b_to_a = partners(signatures_h, signatures_g)
    unmatched = [s for s, ts in a_to_b.items() if not ts]
    unmatched += [t for t, ss in b_to_a.items() if not ss]
    if unmatched:
        logger.info("Vertices without a partner link: %s", ", ".join(unmatched))
    verdict = Verdict.NOT_CORRELATED if unmatched else Verdict.INDISTINGUISHABLE
    return CorrelationReport(
        verdict,
        LinkInvariant(tuple(signatures_g.values())).serialize(),
        LinkInvariant(tuple(signatures_h.values())).serialize(),
        matching={"a_to_b": a_to_b, "b_to_a": b_to_a},
    )


def stable_isomorphism_verdict(
    g: SimpleGraph,
    labels: Mapping[str, FactorClassLabel],
    h: SimpleGraph,
    labels_h: Mapping[str, FactorClassLabel],
    *,
    max_vertices: Optional[int] = None,
) -> CorrelationReport:
    """
    Stably isomorphic graph products over rigid graphs have isomorphic labelled graphs.
    """
    invariant_a = link_invariant(g, labels)
    invariant_b = link_invariant(h, labels_h)
    mapping = graphs_isomorphic(g, h, labels, labels_h, max_vertices=max_vertices)
    verdict = Verdict.INDISTINGUISHABLE if mapping is not None else Verdict.NOT_STABLY_ISOMORPHIC
    return CorrelationReport(verdict, invariant_a.serialize(), invariant_b.serialize())

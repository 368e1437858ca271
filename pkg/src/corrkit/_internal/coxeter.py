import logging
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Optional

from corrkit._internal.constraints import BudgetExceededError, EnumerationBudget
from corrkit._internal.graphs import SimpleGraph
from corrkit._internal.traces import is_reduced_word, lex_normal_form, reduce_word

logger = logging.getLogger(__name__)


class CoxeterError(ValueError):
    pass


@dataclass(frozen=True)
class CoxeterWord:
    """
    Word in the generators of the right-angled Coxeter group of `graph`.
    """

    graph: SimpleGraph
    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        letters = tuple(self.letters)
        for letter in letters:
            if letter not in self.graph:
                raise CoxeterError(f"letter {letter!r} is not a vertex of the graph")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(self.letters) or "e"


@dataclass(frozen=True)
class CoxeterElement:
    """
    Element of the right-angled Coxeter group, stored as its ShortLex-least reduced word.
    Construct with `normal_form`.
    """

    graph: SimpleGraph
    normal_form: CoxeterWord

    @property
    def letters(self) -> tuple[str, ...]:
        return self.normal_form.letters

    @property
    def length(self) -> int:
        return len(self.normal_form)

    def is_identity(self) -> bool:
        return not self.normal_form.letters

    def __str__(self) -> str:
        return str(self.normal_form)


def _word(graph: SimpleGraph, letters: Iterable[str]) -> CoxeterWord:
    return CoxeterWord(graph, tuple(letters))


def is_reduced(w: CoxeterWord) -> bool:
    return is_reduced_word(w.letters, _identity, w.graph.adjacent)


def _identity(letter: str) -> str:
    return letter


def _cancel(_: str, __: str) -> Optional[str]:
    # generators are involutions
    return None


def _canonical_letters(graph: SimpleGraph, letters: Iterable[str]) -> tuple[str, ...]:
    reduced = reduce_word(letters, _identity, graph.adjacent, _cancel)
    return tuple(lex_normal_form(reduced, _identity, graph.adjacent))


def normal_form(w: CoxeterWord) -> CoxeterElement:
    """
    Reduce `w` by deleting pairs `s ... s` whose separating letters all commute with `s`,
    then move commuting letters into the lexicographically least order.
    """
    letters = _canonical_letters(w.graph, w.letters)
    return CoxeterElement(w.graph, _word(w.graph, letters))


def element(graph: SimpleGraph, letters: Iterable[str]) -> CoxeterElement:
    return normal_form(_word(graph, letters))


def identity(graph: SimpleGraph) -> CoxeterElement:
    return CoxeterElement(graph, _word(graph, ()))


def _check_same_graph(graph1: SimpleGraph, graph2: SimpleGraph) -> None:
    if graph1 != graph2:
        raise CoxeterError("words live over different graphs")


def equal(w1: CoxeterWord, w2: CoxeterWord) -> bool:
    _check_same_graph(w1.graph, w2.graph)
    return normal_form(w1).letters == normal_form(w2).letters


def multiply(g: CoxeterElement, h: CoxeterElement) -> CoxeterElement:
    _check_same_graph(g.graph, h.graph)
    return element(g.graph, g.letters + h.letters)


def inverse(g: CoxeterElement) -> CoxeterElement:
    return element(g.graph, reversed(g.letters))


def length(g: CoxeterElement) -> int:
    return g.length


def support(g: CoxeterElement) -> tuple[str, ...]:
    """
    Letters occurring in `g`; the same for every reduced representative.
    """
    return tuple(sorted(set(g.letters)))


def descent_sets(g: CoxeterElement) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """
    Returns:
        (left, right) descent sets: generators `s` with |sg| = |g| - 1, resp. |gs| = |g| - 1
    """
    graph = g.graph
    left = tuple(
        s for s in graph.vertices if len(_canonical_letters(graph, (s, *g.letters))) < g.length
    )
    right = tuple(
        s for s in graph.vertices if len(_canonical_letters(graph, (*g.letters, s))) < g.length
    )
    return left, right


def in_L(g: CoxeterElement, s: str) -> bool:
    """
    Whether |sg| = 1 + |g|.
    """
    if s not in g.graph:
        raise CoxeterError(f"{s!r} is not a vertex of the graph")
    left, _ = descent_sets(g)
    return s not in left


def in_J(g: CoxeterElement, left_set: Iterable[str], right_set: Iterable[str]) -> bool:
    """
    Whether |s₁g| = 1 + |g| = |gs₂| for all s₁ in `left_set` and s₂ in `right_set`.
    """
    left, right = descent_sets(g)
    return not (set(left) & set(left_set)) and not (set(right) & set(right_set))


def enumerate_elements(
    graph: SimpleGraph,
    max_length: int,
    budget: Optional[EnumerationBudget] = None,
) -> list[list[CoxeterElement]]:
    """
    All elements of length at most `max_length`, grouped by length, each group sorted by
    normal form.

    Raises:
        BudgetExceededError: if more elements than the budget allows would be produced;
            `partial_count` holds the number produced so far
    """
    if max_length < 0:
        raise CoxeterError(f"max_length must be non-negative, got {max_length}")
    budget = budget if budget is not None else EnumerationBudget()
    budget.charge()
    levels: list[list[tuple[str, ...]]] = [[()]]
    for ell in range(max_length):
        seen: set[tuple[str, ...]] = set()
        for letters in levels[-1]:
            for s in graph.vertices:
                longer = _canonical_letters(graph, (*letters, s))
                if len(longer) == ell + 1 and longer not in seen:
                    budget.charge()
                    seen.add(longer)
        levels.append(sorted(seen))
        logger.debug("Length %d: %d elements", ell + 1, len(seen))
        if not seen:
            # finite group exhausted
            levels.extend([] for _ in range(max_length - ell - 1))
            break
    return [[CoxeterElement(graph, _word(graph, w)) for w in level] for level in levels]


def growth_counts(
    graph: SimpleGraph, max_length: int, budget: Optional[EnumerationBudget] = None
) -> list[int]:
    try:
        return [len(level) for level in enumerate_elements(graph, max_length, budget)]
    except BudgetExceededError as e:
        logger.warning("Growth enumeration stopped after %s elements", e.partial_count)
        raise

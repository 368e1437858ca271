"""
Rewriting in partially commutative settings.

Both the right-angled Coxeter group of a graph and a graph product of groups are
quotients of a free product by "letters on adjacent vertices commute". Their words
are sequences of items carrying a vertex; two items commute iff their vertices are
adjacent (in particular, items on the same vertex never commute).
"""

from collections.abc import Iterable
from typing import Callable, Optional, TypeVar

T = TypeVar("T")


def append_reduced(
    word: list[T],
    item: T,
    vertex: Callable[[T], str],
    commute: Callable[[str, str], bool],
    merge: Callable[[T, T], Optional[T]],
) -> None:
    """
    Append `item` to a reduced `word` in place, keeping it reduced.

    Scans backwards over items that commute with `item`. If an item on the same vertex is
    reached, the two are merged (`merge` returns `None` when they cancel). Removing a
    cancelled item never creates a new reducible pair, since everything after it commutes
    with it.
    """
    v = vertex(item)
    for position in range(len(word) - 1, -1, -1):
        w = vertex(word[position])
        if w == v:
            merged = merge(word[position], item)
            if merged is None:
                del word[position]
            else:
                word[position] = merged
            return
        if not commute(w, v):
            break
    word.append(item)


def reduce_word(
    items: Iterable[T],
    vertex: Callable[[T], str],
    commute: Callable[[str, str], bool],
    merge: Callable[[T, T], Optional[T]],
    start: Optional[list[T]] = None,
) -> list[T]:
    word = list(start) if start is not None else []
    for item in items:
        append_reduced(word, item, vertex, commute, merge)
    return word


def lex_normal_form(
    items: Iterable[T],
    vertex: Callable[[T], str],
    commute: Callable[[str, str], bool],
) -> list[T]:
    """
    Lexicographically least rearrangement of `items` by commuting adjacent items, with
    items compared by vertex name.

    At every step the least vertex among the items that can be moved to the front is
    taken. Only one item per vertex can be movable, so the choice is unique.
    """
    remaining = list(items)
    result = []
    while remaining:
        best = None
        for position, item in enumerate(remaining):
            v = vertex(item)
            if best is not None and v >= vertex(remaining[best]):
                continue
            if all(commute(vertex(prev), v) for prev in remaining[:position]):
                best = position
        result.append(remaining.pop(best))
    return result


def is_reduced_word(
    items: Iterable[T],
    vertex: Callable[[T], str],
    commute: Callable[[str, str], bool],
) -> bool:
    """
    A word is reduced iff no two items on the same vertex are separated only by items that
    commute with that vertex.
    """
    word = list(items)
    for i, item in enumerate(word):
        v = vertex(item)
        for later in word[i + 1 :]:
            w = vertex(later)
            if w == v:
                return False
            if not commute(w, v):
                break
    return True

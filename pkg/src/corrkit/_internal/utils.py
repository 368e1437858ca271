from typing import Callable, Optional, TypeVar

T = TypeVar("T")


def split_list(value: Optional[str], loader: Callable[[str], T] = str, sep: str = ",") -> list[T]:
    """
    >>> split_list("2, 3,4", int)
    [2, 3, 4]
    >>> split_list("")
    []
    """
    if value is None:
        return []
    return [loader(part.strip()) for part in value.split(sep) if part.strip()]


def parse_word(value: str) -> tuple[str, ...]:
    """
    Split a whitespace-separated word into its letters (vertex names).

    >>> parse_word("s t  s")
    ('s', 't', 's')
    >>> parse_word("")
    ()
    """
    return tuple(value.split())


def parse_syllables(value: str) -> list[tuple[str, str]]:
    """
    >>> parse_syllables("u:a v:bB u:A")
    [('u', 'a'), ('v', 'bB'), ('u', 'A')]
    """
    result = []
    for token in value.split():
        vertex, sep, element = token.rpartition(":")
        if not sep or not vertex or not element:
            raise ValueError(f"Malformed syllable {token!r}, expected vertex:element")
        result.append((vertex, element))
    return result


def format_permutation(images: tuple[int, ...]) -> str:
    """
    Cycle notation of a permutation given by 1-based images.

    >>> format_permutation((2, 1, 3))
    '(1 2)'
    >>> format_permutation((1, 2))
    'id'
    """
    seen = set()
    cycles = []
    for start in range(1, len(images) + 1):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        nxt = images[start - 1]
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = images[nxt - 1]
        if len(cycle) > 1:
            cycles.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(cycles) or "id"

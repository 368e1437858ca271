import string
from dataclasses import dataclass
from typing import Any

from corrkit.groups import AbstractVertexGroup

Word = tuple[int, ...]


@dataclass(frozen=True)
class FreeGroup(AbstractVertexGroup):
    """
    Free group on the letters a, b, c, ... Elements are freely reduced words stored as
    tuples of nonzero integers, `i` for the i-th letter and `-i` for its inverse. In text,
    inverses are upper case: "aB" is a·b⁻¹ and "1" is the identity.
    """

    NAME = "free"

    rank: int

    def __post_init__(self) -> None:
        if not 1 <= self.rank <= 26:
            raise ValueError(f"free group rank must be between 1 and 26, got {self.rank}")

    @property
    def label(self) -> str:
        return f"F{self.rank}"

    def identity(self) -> Word:
        return ()

    def multiply(self, x: Word, y: Word) -> Word:
        result = list(x)
        for letter in y:
            if result and result[-1] == -letter:
                result.pop()
            else:
                result.append(letter)
        return tuple(result)

    def inverse(self, x: Word) -> Word:
        return tuple(-letter for letter in reversed(x))

    def contains(self, x: Any) -> bool:
        if not isinstance(x, tuple):
            return False
        for i, letter in enumerate(x):
            if not isinstance(letter, int) or letter == 0 or abs(letter) > self.rank:
                return False
            if i and x[i - 1] == -letter:
                return False
        return True

    def standard_generators(self) -> list[Word]:
        return [(i,) for i in range(1, self.rank + 1)]

    def reduce(self, letters: Word) -> Word:
        return self.multiply((), letters)

    def parse(self, text: str) -> Word:
        text = text.strip()
        if text in ("", "1"):
            return ()
        letters = []
        for char in text:
            if char.isspace():
                continue
            index = string.ascii_lowercase.find(char.lower()) + 1
            if index == 0 or index > self.rank:
                raise ValueError(f"{char!r} is not a letter of {self.label}")
            letters.append(-index if char.isupper() else index)
        return self.reduce(tuple(letters))

    def format(self, x: Word) -> str:
        if not x:
            return "1"
        return "".join(
            string.ascii_lowercase[abs(letter) - 1].upper()
            if letter < 0
            else string.ascii_lowercase[letter - 1]
            for letter in x
        )

    def letter_name(self, index: int) -> str:
        return string.ascii_lowercase[index - 1]

from dataclasses import dataclass
from typing import Any

from corrkit.groups import AbstractVertexGroup


@dataclass(frozen=True)
class Integers(AbstractVertexGroup):
    NAME = "integers"

    @property
    def label(self) -> str:
        return "Z"

    def identity(self) -> int:
        return 0

    def multiply(self, x: int, y: int) -> int:
        return x + y

    def inverse(self, x: int) -> int:
        return -x

    def contains(self, x: Any) -> bool:
        return isinstance(x, int) and not isinstance(x, bool)

    def standard_generators(self) -> list[int]:
        return [1]

    def parse(self, text: str) -> int:
        try:
            return int(text)
        except ValueError:
            raise ValueError(f"{text!r} is not an integer") from None

    def format(self, x: int) -> str:
        return str(x)

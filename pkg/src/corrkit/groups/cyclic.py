from dataclasses import dataclass
from typing import Any

from corrkit.groups import AbstractVertexGroup


@dataclass(frozen=True)
class CyclicGroup(AbstractVertexGroup):
    """
    Z/n with elements stored as residues 0..n-1.
    """

    NAME = "cyclic"

    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError(f"cyclic group modulus must be at least 2, got {self.modulus}")

    @property
    def label(self) -> str:
        return f"Z/{self.modulus}"

    def identity(self) -> int:
        return 0

    def multiply(self, x: int, y: int) -> int:
        return (x + y) % self.modulus

    def inverse(self, x: int) -> int:
        return (-x) % self.modulus

    def contains(self, x: Any) -> bool:
        return isinstance(x, int) and not isinstance(x, bool) and 0 <= x < self.modulus

    def standard_generators(self) -> list[int]:
        return [1]

    def parse(self, text: str) -> int:
        try:
            return int(text) % self.modulus
        except ValueError:
            raise ValueError(f"{text!r} is not a residue modulo {self.modulus}") from None

    def format(self, x: int) -> str:
        return str(x)

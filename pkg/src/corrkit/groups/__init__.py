from abc import ABC, abstractmethod
from collections.abc import Hashable
from typing import Any

from corrkit._internal.models import VertexGroupSpec


class AbstractVertexGroup(ABC):
    NAME: str = "abstract"

    @abstractmethod
    def identity(self) -> Hashable:
        pass

    @abstractmethod
    def multiply(self, x: Any, y: Any) -> Hashable:
        pass

    @abstractmethod
    def inverse(self, x: Any) -> Hashable:
        pass

    @abstractmethod
    def contains(self, x: Any) -> bool:
        pass

    @abstractmethod
    def standard_generators(self) -> list[Hashable]:
        """
        Generators without their inverses, in a fixed order.
        """
        pass

    @abstractmethod
    def parse(self, text: str) -> Hashable:
        pass

    @abstractmethod
    def format(self, x: Any) -> str:
        pass

    @property
    @abstractmethod
    def label(self) -> str:
        pass

    def is_identity(self, x: Any) -> bool:
        return x == self.identity()

    def generators(self) -> list[Hashable]:
        """
        Standard generators interleaved with their inverses, without repetitions.
        """
        result = []
        for g in self.standard_generators():
            for h in (g, self.inverse(g)):
                if h not in result:
                    result.append(h)
        return result


def vertex_group_classes() -> list[type[AbstractVertexGroup]]:
    from corrkit.groups.cyclic import CyclicGroup
    from corrkit.groups.free import FreeGroup
    from corrkit.groups.integers import Integers

    return [FreeGroup, Integers, CyclicGroup]


def from_spec(spec: VertexGroupSpec) -> AbstractVertexGroup:
    spec = VertexGroupSpec.cast(spec)
    for cls in vertex_group_classes():
        if cls.NAME == spec.kind.value:
            return cls() if spec.parameter is None else cls(spec.parameter)
    raise ValueError(f"Cannot build a vertex group from {spec}")

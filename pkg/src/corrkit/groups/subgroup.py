import logging
from collections import deque
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from corrkit._internal.utils import format_permutation
from corrkit.groups import AbstractVertexGroup
from corrkit.groups.free import FreeGroup, Word

logger = logging.getLogger(__name__)

Permutation = tuple[int, ...]


@dataclass(frozen=True)
class FiniteIndexSubgroupSpec:
    """
    Finite-index subgroup H of a free group, given as the stabilizer of the point 1 under a
    right action of the free group on {1, ..., k}.

    Attributes:
        ambient: the free group containing H
        quotient: image of every generator of `ambient` (in letter order) as 1-based images,
            `quotient[0][p - 1]` is the image of point p under the letter `a`
    """

    ambient: FreeGroup
    quotient: tuple[Permutation, ...]
    basepoint: int = field(default=1, init=False)

    def __post_init__(self) -> None:
        quotient = tuple(tuple(perm) for perm in self.quotient)
        object.__setattr__(self, "quotient", quotient)
        if len(quotient) != self.ambient.rank:
            raise ValueError(
                f"expected {self.ambient.rank} permutations, one per generator of"
                f" {self.ambient.label}, got {len(quotient)}"
            )
        index = len(quotient[0])
        for letter, perm in enumerate(quotient, start=1):
            if sorted(perm) != list(range(1, index + 1)):
                raise ValueError(
                    f"image of {self.ambient.letter_name(letter)!r} is not a permutation"
                    f" of 1..{index}: {list(perm)}"
                )
        if len(self._orbit_of_basepoint()) != index:
            raise ValueError(
                "quotient permutations do not act transitively, so the index is not"
                f" {index}"
            )

    @classmethod
    def from_mapping(
        cls, rank: int, quotient: Mapping[str, Sequence[int]]
    ) -> "FiniteIndexSubgroupSpec":
        """
        >>> FiniteIndexSubgroupSpec.from_mapping(2, {"a": [2, 1], "b": [1, 2]}).index
        2
        """
        ambient = FreeGroup(rank)
        perms = []
        for letter in range(1, rank + 1):
            name = ambient.letter_name(letter)
            if name not in quotient:
                raise ValueError(f"quotient map has no image for generator {name!r}")
            perms.append(tuple(quotient[name]))
        unknown = sorted(set(quotient) - {ambient.letter_name(i) for i in range(1, rank + 1)})
        if unknown:
            raise ValueError(f"quotient map names unknown generators: {', '.join(unknown)}")
        return cls(ambient, tuple(perms))

    @property
    def index(self) -> int:
        return len(self.quotient[0])

    @cached_property
    def _inverse_quotient(self) -> tuple[Permutation, ...]:
        inverses = []
        for perm in self.quotient:
            inverse = [0] * len(perm)
            for point, image in enumerate(perm, start=1):
                inverse[image - 1] = point
            inverses.append(tuple(inverse))
        return tuple(inverses)

    def _orbit_of_basepoint(self) -> set[int]:
        orbit = {self.basepoint}
        queue = deque([self.basepoint])
        while queue:
            point = queue.popleft()
            for perm in self.quotient:
                image = perm[point - 1]
                if image not in orbit:
                    orbit.add(image)
                    queue.append(image)
        return orbit

    def act_letter(self, point: int, letter: int) -> int:
        if letter > 0:
            return self.quotient[letter - 1][point - 1]
        return self._inverse_quotient[-letter - 1][point - 1]

    def act(self, point: int, word: Word) -> int:
        """
        Image of `point` under `word`, reading the letters left to right.
        """
        for letter in word:
            point = self.act_letter(point, letter)
        return point

    def permutation(self, word: Word) -> Permutation:
        return tuple(self.act(point, word) for point in range(1, self.index + 1))

    def contains(self, word: Word) -> bool:
        return self.act(self.basepoint, word) == self.basepoint

    @cached_property
    def _representatives(self) -> dict[int, Word]:
        # breadth-first search in letter order visits points in ShortLex order of their words
        reps: dict[int, Word] = {self.basepoint: ()}
        queue = deque([self.basepoint])
        while queue:
            point = queue.popleft()
            for letter in self.ambient.generators():
                (x,) = letter
                image = self.act_letter(point, x)
                if image not in reps:
                    reps[image] = reps[point] + (x,)
                    queue.append(image)
        return reps

    def transversal(self) -> tuple[Word, ...]:
        """
        ShortLex-least words `t_1, ..., t_k` with `1 · t_i = i`. The coset H·t_i consists of
        the words sending 1 to i; the set is closed under taking prefixes.
        """
        return tuple(self._representatives[point] for point in range(1, self.index + 1))

    def coset_representatives(self) -> tuple[Word, ...]:
        """
        Left coset representatives `g_i = t_i⁻¹`, so that `g_i H` are the k distinct cosets
        and `g_1` is the identity.
        """
        return tuple(self.ambient.inverse(t) for t in self.transversal())

    def representative_of(self, word: Word) -> Word:
        return self._representatives[self.act(self.basepoint, word)]

    @cached_property
    def _schreier_generators(self) -> tuple[Word, ...]:
        result = []
        for t in self.transversal():
            for (x,) in self.ambient.standard_generators():
                tx = self.ambient.multiply(t, (x,))
                generator = self.ambient.multiply(
                    tx, self.ambient.inverse(self.representative_of(tx))
                )
                if generator and generator not in result:
                    result.append(generator)
        logger.debug(
            "Schreier generators of an index %d subgroup of %s: %s",
            self.index,
            self.ambient.label,
            ", ".join(self.ambient.format(g) for g in result),
        )
        return tuple(result)

    def schreier_generators(self) -> tuple[Word, ...]:
        """
        Free basis of H: the nontrivial words `t·x·rep(t·x)⁻¹` over transversal words `t` and
        generators `x`.
        """
        return self._schreier_generators

    @property
    def rank(self) -> int:
        return len(self._schreier_generators)

    def dict(self) -> dict[str, Any]:
        return {
            "ambient": self.ambient.label,
            "index": self.index,
            "quotient": {
                self.ambient.letter_name(letter): format_permutation(perm)
                for letter, perm in enumerate(self.quotient, start=1)
            },
            "rank": self.rank,
            "schreier_generators": [self.ambient.format(g) for g in self.schreier_generators()],
        }


@dataclass(frozen=True)
class SubgroupVertexGroup(AbstractVertexGroup):
    """
    The subgroup H itself as a vertex group. Elements are words of the ambient free group;
    the Schreier generators serve as standard generators.
    """

    NAME = "subgroup"

    spec: FiniteIndexSubgroupSpec

    @property
    def label(self) -> str:
        return f"F{self.spec.rank}"

    @property
    def ambient(self) -> FreeGroup:
        return self.spec.ambient

    def identity(self) -> Word:
        return ()

    def multiply(self, x: Word, y: Word) -> Word:
        return self.ambient.multiply(x, y)

    def inverse(self, x: Word) -> Word:
        return self.ambient.inverse(x)

    def contains(self, x: Any) -> bool:
        return self.ambient.contains(x) and self.spec.contains(x)

    def standard_generators(self) -> list[Word]:
        return list(self.spec.schreier_generators())

    def parse(self, text: str) -> Word:
        word = self.ambient.parse(text)
        if not self.spec.contains(word):
            raise ValueError(f"{text!r} does not lie in the subgroup")
        return word

    def format(self, x: Word) -> str:
        return self.ambient.format(x)


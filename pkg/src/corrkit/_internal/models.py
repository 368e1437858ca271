import enum
import re
from dataclasses import asdict, dataclass, field
from typing import Optional, Union


class VertexGroupKind(enum.Enum):
    FREE = "free"
    INTEGERS = "integers"
    CYCLIC = "cyclic"
    SUBGROUP = "subgroup"

    @classmethod
    def cast(cls, value: Union["VertexGroupKind", str]) -> "VertexGroupKind":
        if isinstance(value, VertexGroupKind):
            return value
        return cls(value.lower())


class Verdict(enum.Enum):
    NOT_CORRELATED = "not W*-correlated"
    NOT_STABLY_ISOMORPHIC = "not stably isomorphic"
    INDISTINGUISHABLE = "indistinguishable by this invariant"

    @classmethod
    def cast(cls, value: Union["Verdict", str]) -> "Verdict":
        if isinstance(value, Verdict):
            return value
        return cls(value)


_FREE_LABEL = re.compile(r"^F(\d+)$")
_CYCLIC_LABEL = re.compile(r"^Z/(\d+)$")


@dataclass(frozen=True)
class VertexGroupSpec:
    """
    Attributes:
        kind: family of the vertex group
        parameter: rank of a free group, modulus of a cyclic group, unused for the integers
    """

    kind: VertexGroupKind
    parameter: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", VertexGroupKind.cast(self.kind))
        if self.kind == VertexGroupKind.FREE:
            if self.parameter is None or self.parameter < 1:
                raise ValueError(f"free group rank must be at least 1, got {self.parameter}")
            if self.parameter > 26:
                raise ValueError(f"free group rank is limited to 26 letters, got {self.parameter}")
        elif self.kind == VertexGroupKind.CYCLIC:
            if self.parameter is None or self.parameter < 2:
                raise ValueError(f"cyclic group modulus must be at least 2, got {self.parameter}")
        elif self.kind == VertexGroupKind.INTEGERS:
            if self.parameter is not None:
                raise ValueError("the integers take no parameter")
        else:
            raise ValueError(f"{self.kind.value} groups cannot be declared by a label")

    @classmethod
    def cast(cls, value: Union["VertexGroupSpec", str]) -> "VertexGroupSpec":
        """
        >>> VertexGroupSpec.cast("F2")
        VertexGroupSpec(kind=<VertexGroupKind.FREE: 'free'>, parameter=2)
        >>> VertexGroupSpec.cast("Z/3").label
        'Z/3'
        """
        if isinstance(value, VertexGroupSpec):
            return value
        text = value.strip()
        if text == "Z":
            return cls(VertexGroupKind.INTEGERS)
        if m := _FREE_LABEL.match(text):
            return cls(VertexGroupKind.FREE, int(m.group(1)))
        if m := _CYCLIC_LABEL.match(text):
            return cls(VertexGroupKind.CYCLIC, int(m.group(1)))
        raise ValueError(f"Unknown vertex group label: {value!r} (expected F<k>, Z or Z/<n>)")

    @property
    def label(self) -> str:
        if self.kind == VertexGroupKind.FREE:
            return f"F{self.parameter}"
        if self.kind == VertexGroupKind.CYCLIC:
            return f"Z/{self.parameter}"
        return "Z"


@dataclass(frozen=True)
class RigidityReport:
    """
    Attributes:
        rigid: whether link(link s) = {s} for every vertex s
        witness: first vertex (in vertex order) violating the condition
        link_of_link: link(link witness), sorted
    """

    rigid: bool
    witness: Optional[str] = None
    link_of_link: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.rigid

    def dict(self) -> dict:
        if self.rigid:
            return {"rigid": True}
        return {"rigid": False, "witness": self.witness, "link_of_link": list(self.link_of_link)}


@dataclass(frozen=True)
class FactorReport:
    factor: bool
    cone_vertices: tuple[str, ...]
    offending: tuple[str, ...] = ()


@dataclass
class PhiInjectivityReport:
    """
    Attributes:
        radius: radius of the ball in the generators of G'
        checked: number of distinct elements of G' whose image was computed
        violations: pairs of distinct elements (as syllable lists) with equal images
        complete: `False` if the enumeration stopped at the budget
    """

    radius: int
    checked: int
    violations: list[tuple[list, list]] = field(default_factory=list)
    complete: bool = True

    @property
    def passed(self) -> bool:
        return not self.violations

    def dict(self) -> dict:
        return {
            "radius": self.radius,
            "checked": self.checked,
            "violations": [list(v) for v in self.violations],
            "complete": self.complete,
            "passed": self.passed,
        }


@dataclass
class CosetActionReport:
    """
    Attributes:
        action: generator name (`vertex:letter`) -> permutation of [k] as 1-based images
        index: k
        transitive: whether the action of all generators is transitive on [k]
        basepoint_stabilized: whether the image under phi of every generator of G' fixes 1
    """

    action: dict[str, tuple[int, ...]]
    index: int
    transitive: bool
    basepoint_stabilized: bool

    @property
    def passed(self) -> bool:
        return self.transitive and self.basepoint_stabilized

    def dict(self) -> dict:
        return {
            "action": {name: list(perm) for name, perm in self.action.items()},
            "index": self.index,
            "transitive": self.transitive,
            "basepoint_stabilized": self.basepoint_stabilized,
        }


@dataclass
class CorrelationReport:
    """
    Attributes:
        verdict: a theorem-backed negative or "indistinguishable by this invariant"
        invariant_a: serialized invariant of the first input, canonically ordered
        invariant_b: serialized invariant of the second input
        matching: for link matching, `{"a_to_b": ..., "b_to_a": ...}` sending each vertex to
            the vertices of the other graph with an equal link signature
    """

    verdict: Verdict
    invariant_a: list
    invariant_b: list
    matching: Optional[dict[str, dict[str, list[str]]]] = None

    def dict(self) -> dict:
        result = {
            "verdict": self.verdict.value,
            "invariant_a": self.invariant_a,
            "invariant_b": self.invariant_b,
        }
        if self.matching is not None:
            result["matching"] = self.matching
        return result


@dataclass
class TnRow:
    q: float
    n: int
    dim: int
    min_eig: float
    max_eig: float

    def dict(self) -> dict[str, Union[int, float]]:
        return asdict(self)


@dataclass
class MomentRow:
    q: float
    power: int
    moment: float
    oracle: float
    diff: float

    def dict(self) -> dict[str, Union[int, float]]:
        return asdict(self)


@dataclass
class DecayRow:
    """
    Attributes:
        band_mass: largest off-band q-norm over the sampled tensors at level n
        violated: the band property failed at level n, or the ratio decayed slower than
            |q|^k from level n - 1
    """

    q: float
    k: int
    n: int
    ratio: float
    fitted_c: float
    band_mass: float = 0.0
    violated: bool = False

    def dict(self) -> dict[str, Union[int, float]]:
        return asdict(self)


@dataclass
class DeformRow:
    t: float
    n: int
    min_sv: float
    max_sv: float
    expected: float

    def dict(self) -> dict[str, Union[int, float]]:
        return asdict(self)

"""
Truncated q-deformed Fock space over a finite-dimensional real Hilbert space.

Vectors are stored densely per tensor level 0..cap in the undeformed basis, level n in
C order (the first tensor factor is the most significant index). The q-deformation only
enters through the Gram matrices T_n = Σ_σ q^{inv σ} π_σ. Only real vectors of H_ℝ are
accepted, which keeps ξ̄ = ξ and all matrices real.

Operators are dense block matrices over the whole truncated space. Each operator records
up to which input level it agrees with its untruncated counterpart.
"""

import functools
import itertools
import logging
import math
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor, wait
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from corrkit._internal.constraints import (
    DECAY_SLACK,
    EXACT_TOLERANCE,
    check_matrix_size,
    is_between,
)
from corrkit._internal.models import DecayRow, DeformRow, MomentRow, TnRow

logger = logging.getLogger(__name__)

Scalar = Union[int, float]
VectorLike = Union[Sequence[float], np.ndarray]

FIRST_SUMMAND = "first-summand"


class FockError(ValueError):
    pass


@dataclass(frozen=True)
class Splitting:
    """
    Orthogonal splitting L_ℝ = H_ℝ ⊕ K_ℝ by coordinates: H_ℝ spans `[0, first)`,
    K_ℝ spans `[first, first + second)`.
    """

    first: int
    second: int

    def __post_init__(self) -> None:
        if self.first < 1 or self.second < 1:
            raise FockError(
                f"both summands must be nonzero, got first={self.first}, second={self.second}"
            )

    @property
    def dim(self) -> int:
        return self.first + self.second

    def first_projection(self) -> np.ndarray:
        return np.diag([1.0] * self.first + [0.0] * self.second)

    def in_first(self, xi: np.ndarray) -> bool:
        return bool(np.all(np.abs(xi[self.first :]) <= EXACT_TOLERANCE))

    def in_second(self, xi: np.ndarray) -> bool:
        return bool(np.all(np.abs(xi[: self.first]) <= EXACT_TOLERANCE))


@dataclass(frozen=True)
class DeformationParams:
    t: float
    splitting: Splitting

    def rotation(self) -> np.ndarray:
        """
        R_t(ξ ⊕ μ) = (cos t ξ − sin t μ) ⊕ (sin t ξ + cos t μ)
        """
        if self.splitting.first != self.splitting.second:
            raise FockError(
                "the rotation needs two summands of equal dimension, got"
                f" {self.splitting.first} and {self.splitting.second}"
            )
        c, s = math.cos(self.t), math.sin(self.t)
        eye = np.eye(self.splitting.first)
        return np.block([[c * eye, -s * eye], [s * eye, c * eye]])


def inversions(perm: Sequence[int]) -> int:
    """
    Number of pairs i < j with perm[i] > perm[j]. Accepts permutations of 0..n-1 or 1..n.

    >>> inversions((2, 1, 3))
    1
    """
    perm = list(perm)
    n = len(perm)
    if sorted(perm) not in (list(range(n)), list(range(1, n + 1))):
        raise FockError(f"not a permutation: {perm}")
    return sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])


def build_Tn(dim: int, n: int, q: float) -> np.ndarray:
    """
    T_n = Σ_{σ ∈ S_n} q^{inv σ} π_σ on (R^dim)^{⊗n}, with π_σ permuting tensor factors.

    Raises:
        BudgetExceededError: if the dim^n x dim^n matrix exceeds the matrix byte cap
    """
    if dim < 1 or n < 0:
        raise FockError(f"invalid tensor power: dim={dim}, n={n}")
    size = dim**n
    check_matrix_size(size, size, what=f"T_{n}")
    index = np.arange(size).reshape((dim,) * n)
    columns = np.arange(size)
    result = np.zeros((size, size))
    for perm in itertools.permutations(range(n)):
        coefficient = q ** inversions(perm)
        if coefficient == 0:
            continue
        result[index.transpose(perm).ravel(), columns] += coefficient
    return result


def _level_indices(dim: int, n: int, width: int) -> np.ndarray:
    # flat indices of the basis tensors at level n with every coordinate below `width`
    return np.arange(dim**n).reshape((dim,) * n)[(slice(0, width),) * n].ravel()


class FockSpace:
    """
    Levels 0..cap of the q-Fock space of R^dim. Built once, never mutated.

    Args:
        q: deformation parameter in [-1, 1]
        dim: dimension of the real one-particle space
        cap: highest tensor level kept
        splitting: optional decomposition of R^dim into two summands
    """

    def __init__(self, q: float, dim: int, cap: int, splitting: Optional[Splitting] = None):
        if not is_between(q, -1.0, 1.0):
            raise FockError(f"q must lie in [-1, 1], got {q}")
        if dim < 1:
            raise FockError(f"dim must be at least 1, got {dim}")
        if cap < 0:
            raise FockError(f"cap must be non-negative, got {cap}")
        if splitting is not None and splitting.dim != dim:
            raise FockError(f"splitting covers {splitting.dim} coordinates, dim is {dim}")
        if abs(q) == 1 and cap >= 2:
            logger.warning("q = %s: T_n is singular for n >= 2, q-norms are only seminorms", q)
        self.q = float(q)
        self.dim = dim
        self.cap = cap
        self.splitting = splitting
        self.level_dims = tuple(dim**n for n in range(cap + 1))
        self.size = sum(self.level_dims)
        check_matrix_size(self.size, self.size, what="Fock space operator")
        self._offsets = tuple(itertools.accumulate(self.level_dims, initial=0))
        self._grams = tuple(build_Tn(dim, n, self.q) for n in range(cap + 1))
        for gram in self._grams:
            gram.setflags(write=False)
        logger.info(
            "Built q-Fock space q=%s dim=%d cap=%d, total dimension %d",
            self.q,
            dim,
            cap,
            self.size,
        )

    def __repr__(self) -> str:
        return f"FockSpace(q={self.q}, dim={self.dim}, cap={self.cap})"

    def level_slice(self, n: int) -> slice:
        if not 0 <= n <= self.cap:
            raise FockError(f"level {n} outside 0..{self.cap}")
        return slice(self._offsets[n], self._offsets[n + 1])

    def gram(self, n: int) -> np.ndarray:
        self.level_slice(n)
        return self._grams[n]

    @functools.cached_property
    def gram_matrix(self) -> np.ndarray:
        result = np.zeros((self.size, self.size))
        for n, gram in enumerate(self._grams):
            sl = self.level_slice(n)
            result[sl, sl] = gram
        result.setflags(write=False)
        return result

    def check_vector(self, xi: VectorLike) -> np.ndarray:
        """
        Validate a one-particle vector: real coordinates, length `dim`.
        """
        arr = np.asarray(xi)
        if np.iscomplexobj(arr):
            if np.any(arr.imag != 0):
                raise FockError("complex input: only real one-particle vectors are supported")
            arr = arr.real
        arr = arr.astype(float)
        if arr.shape != (self.dim,):
            raise FockError(f"expected a vector of length {self.dim}, got shape {arr.shape}")
        return arr

    def require_splitting(self) -> Splitting:
        if self.splitting is None:
            raise FockError("no splitting declared for this Fock space")
        return self.splitting

    def vector(self, n: int, coefficients: VectorLike) -> "FockVector":
        """
        Vector concentrated on level n.
        """
        coefficients = np.asarray(coefficients, dtype=float).ravel()
        sl = self.level_slice(n)
        if coefficients.size != self.level_dims[n]:
            raise FockError(
                f"level {n} has dimension {self.level_dims[n]}, got {coefficients.size}"
                " coefficients"
            )
        result = np.zeros(self.size)
        result[sl] = coefficients
        return FockVector(self, result)

    def vacuum(self) -> "FockVector":
        return self.vector(0, [1.0])

    def simple_tensor(self, vectors: Sequence[VectorLike]) -> "FockVector":
        factors = [self.check_vector(v) for v in vectors]
        return self.vector(len(factors), functools.reduce(np.kron, factors, np.ones(1)))

    def zero(self) -> "FockVector":
        return FockVector(self, np.zeros(self.size))


def _check_same_space(a: FockSpace, b: FockSpace) -> None:
    if a is not b:
        raise FockError("operands live in different Fock spaces")


@dataclass(frozen=True, eq=False)
class FockVector:
    space: FockSpace
    coefficients: np.ndarray

    def __post_init__(self) -> None:
        coefficients = np.array(self.coefficients, dtype=float)
        if coefficients.shape != (self.space.size,):
            raise FockError(
                f"expected {self.space.size} coefficients, got shape {coefficients.shape}"
            )
        coefficients.setflags(write=False)
        object.__setattr__(self, "coefficients", coefficients)

    def level(self, n: int) -> np.ndarray:
        return self.coefficients[self.space.level_slice(n)]

    def __add__(self, other: "FockVector") -> "FockVector":
        _check_same_space(self.space, other.space)
        return FockVector(self.space, self.coefficients + other.coefficients)

    def __sub__(self, other: "FockVector") -> "FockVector":
        _check_same_space(self.space, other.space)
        return FockVector(self.space, self.coefficients - other.coefficients)

    def __mul__(self, scalar: Scalar) -> "FockVector":
        return FockVector(self.space, float(scalar) * self.coefficients)

    __rmul__ = __mul__

    def __neg__(self) -> "FockVector":
        return FockVector(self.space, -self.coefficients)

    def level_norms(self) -> list[float]:
        """
        q-norm of every level component.
        """
        result = []
        for n in range(self.space.cap + 1):
            x = self.level(n)
            result.append(math.sqrt(max(float(x @ self.space.gram(n) @ x), 0.0)))
        return result

    def q_norm(self) -> float:
        return math.sqrt(sum(norm**2 for norm in self.level_norms()))


def q_inner(space: FockSpace, x: FockVector, y: FockVector) -> float:
    """
    ⟨x, y⟩_q = Σ_n ⟨T_n x_n, y_n⟩
    """
    _check_same_space(space, x.space)
    _check_same_space(space, y.space)
    return float(sum(x.level(n) @ space.gram(n) @ y.level(n) for n in range(space.cap + 1)))


@dataclass(frozen=True, eq=False)
class FockOperator:
    """
    Attributes:
        space: the truncated Fock space
        matrix: block matrix over all levels
        exact_level: largest input level on which truncation changes nothing
        raise_by: largest increase of the tensor level, negative if the level always drops
    """

    space: FockSpace
    matrix: np.ndarray
    exact_level: int
    raise_by: int

    def __post_init__(self) -> None:
        if self.matrix.shape != (self.space.size, self.space.size):
            raise FockError(
                f"operator matrix must be {self.space.size}x{self.space.size},"
                f" got {self.matrix.shape}"
            )

    def block(self, m: int, n: int) -> np.ndarray:
        """
        Component mapping level n to level m.
        """
        return self.matrix[self.space.level_slice(m), self.space.level_slice(n)]

    def __matmul__(self, other):
        if isinstance(other, FockOperator):
            _check_same_space(self.space, other.space)
            return FockOperator(
                self.space,
                self.matrix @ other.matrix,
                exact_level=min(other.exact_level, self.exact_level - other.raise_by),
                raise_by=self.raise_by + other.raise_by,
            )
        if isinstance(other, FockVector):
            _check_same_space(self.space, other.space)
            return FockVector(self.space, self.matrix @ other.coefficients)
        return NotImplemented

    def _combine(self, other: "FockOperator", matrix: np.ndarray) -> "FockOperator":
        return FockOperator(
            self.space,
            matrix,
            exact_level=min(self.exact_level, other.exact_level),
            raise_by=max(self.raise_by, other.raise_by),
        )

    def __add__(self, other: "FockOperator") -> "FockOperator":
        _check_same_space(self.space, other.space)
        return self._combine(other, self.matrix + other.matrix)

    def __sub__(self, other: "FockOperator") -> "FockOperator":
        _check_same_space(self.space, other.space)
        return self._combine(other, self.matrix - other.matrix)

    def __mul__(self, scalar: Scalar) -> "FockOperator":
        return FockOperator(
            self.space, float(scalar) * self.matrix, self.exact_level, self.raise_by
        )

    __rmul__ = __mul__

    def __neg__(self) -> "FockOperator":
        return -1.0 * self


def identity(space: FockSpace) -> FockOperator:
    return FockOperator(space, np.eye(space.size), exact_level=space.cap, raise_by=0)


def creation(space: FockSpace, xi: VectorLike) -> FockOperator:
    """
    ℓ_q(ξ)μ = ξ ⊗ μ. The top level is mapped to zero.
    """
    if space.cap < 1:
        raise FockError("creation operators need cap >= 1")
    xi = space.check_vector(xi)
    result = np.zeros((space.size, space.size))
    for n in range(space.cap):
        block = np.kron(xi[:, None], np.eye(space.level_dims[n]))
        result[space.level_slice(n + 1), space.level_slice(n)] = block
    return FockOperator(space, result, exact_level=space.cap - 1, raise_by=1)


def annihilation(space: FockSpace, xi: VectorLike) -> FockOperator:
    """
    ℓ_q(ξ)*(μ_1 ⊗ ... ⊗ μ_n) = Σ_k q^{k-1} ⟨μ_k, ξ⟩ μ_1 ⊗ ... μ̂_k ... ⊗ μ_n
    """
    if space.cap < 1:
        raise FockError("annihilation operators need cap >= 1")
    xi = space.check_vector(xi)
    dim = space.dim
    result = np.zeros((space.size, space.size))
    for n in range(1, space.cap + 1):
        size = space.level_dims[n]
        basis = np.eye(size).reshape((dim,) * n + (size,))
        block = np.zeros((space.level_dims[n - 1], size))
        for k in range(n):
            contracted = np.tensordot(basis, xi, axes=([k], [0]))
            block += space.q**k * contracted.reshape(space.level_dims[n - 1], size)
        result[space.level_slice(n - 1), space.level_slice(n)] = block
    return FockOperator(space, result, exact_level=space.cap, raise_by=-1)


def field_operator(space: FockSpace, xi: VectorLike) -> FockOperator:
    """
    s_q(ξ) = ℓ_q(ξ) + ℓ_q(ξ)*, for real ξ.
    """
    xi = space.check_vector(xi)
    return creation(space, xi) + annihilation(space, xi)


class _WickWords:
    """
    Wick words of tensors of the given one-particle vectors, memoized by position tuples.

    W(ξ ⊗ v) = s(ξ) W(v) − Σ_k q^{k-1} ⟨v_k, ξ⟩ W(v without v_k), W(empty) = 1
    """

    def __init__(self, space: FockSpace, vectors: Sequence[np.ndarray]):
        self.space = space
        self.fields = [field_operator(space, v) for v in vectors]
        self.inner = np.array([[float(v @ w) for w in vectors] for v in vectors])
        self._cache: dict[tuple[int, ...], FockOperator] = {(): identity(space)}

    def word(self, positions: tuple[int, ...]) -> FockOperator:
        if positions in self._cache:
            return self._cache[positions]
        first, rest = positions[0], positions[1:]
        result = self.fields[first] @ self.word(rest)
        for k, position in enumerate(rest):
            coefficient = self.space.q**k * self.inner[position, first]
            if coefficient != 0:
                result = result - coefficient * self.word(rest[:k] + rest[k + 1 :])
        self._cache[positions] = result
        return result


def _check_wick_level(space: FockSpace, n: int) -> None:
    if n > space.cap:
        raise FockError(f"a Wick word of level {n} requires cap >= {n}, got cap={space.cap}")


def _check_defining_property(operator: FockOperator, expected: FockVector) -> None:
    produced = operator @ expected.space.vacuum()
    error = float(np.max(np.abs(produced.coefficients - expected.coefficients), initial=0.0))
    scale = max(1.0, float(np.max(np.abs(expected.coefficients), initial=0.0)))
    if error > EXACT_TOLERANCE * scale:
        raise FockError(f"Wick word does not reproduce its tensor on the vacuum (error {error})")


def wick(space: FockSpace, tensor: Sequence[VectorLike]) -> FockOperator:
    """
    The Wick word W_q(ξ_1 ⊗ ... ⊗ ξ_n): the operator with W_q(ξ)Ω = ξ_1 ⊗ ... ⊗ ξ_n.
    """
    vectors = [space.check_vector(v) for v in tensor]
    n = len(vectors)
    _check_wick_level(space, n)
    result = _WickWords(space, vectors).word(tuple(range(n)))
    _check_defining_property(result, space.simple_tensor(vectors))
    return result


def wick_vector(space: FockSpace, n: int, coefficients: VectorLike) -> FockOperator:
    """
    Wick word of an arbitrary level-n vector, linear in its coefficients.
    """
    _check_wick_level(space, n)
    target = space.vector(n, coefficients)
    words = _WickWords(space, list(np.eye(space.dim)))
    result = FockOperator(
        space, np.zeros((space.size, space.size)), exact_level=space.cap - n, raise_by=n
    )
    level = target.level(n)
    for flat in np.flatnonzero(level):
        positions = tuple(int(i) for i in np.unravel_index(flat, (space.dim,) * n)) if n else ()
        result = result + level[flat] * words.word(positions)
    _check_defining_property(result, target)
    return result


def vacuum_moment(space: FockSpace, xi: VectorLike, power: int) -> float:
    """
    ⟨Ω, s_q(ξ)^power Ω⟩_q for a unit vector ξ. Odd moments vanish.
    """
    if power < 0:
        raise FockError(f"power must be non-negative, got {power}")
    if power % 2:
        return 0.0
    xi = space.check_vector(xi)
    if abs(float(np.linalg.norm(xi)) - 1.0) > EXACT_TOLERANCE:
        raise FockError(f"xi must be a unit vector, has norm {np.linalg.norm(xi)}")
    if power > space.cap:
        raise FockError(f"moment of order {power} requires cap >= {power}, got {space.cap}")
    if power == 0:
        return 1.0
    field = field_operator(space, xi)
    vector = space.vacuum()
    for _ in range(power):
        vector = field @ vector
    return q_inner(space, space.vacuum(), vector)


def all_pairings(items: Sequence[int]) -> Iterable[list[tuple[int, int]]]:
    """
    Yields all partitions of `items` into pairs.
    """
    items = list(items)
    if not items:
        yield []
        return
    first = items.pop(0)
    for i, item in enumerate(items):
        for pairing in all_pairings(items[:i] + items[i + 1 :]):
            yield [(first, item)] + pairing


def crossings(pairing: Sequence[tuple[int, int]]) -> int:
    count = 0
    for (a, b), (c, d) in itertools.combinations(pairing, 2):
        a, b = sorted((a, b))
        c, d = sorted((c, d))
        if a < c < b < d or c < a < d < b:
            count += 1
    return count


def pair_partition_oracle(q: float, power: int) -> float:
    """
    Σ over pair partitions π of {1, ..., power} of q^{crossings(π)}.
    """
    if power < 0:
        raise FockError(f"power must be non-negative, got {power}")
    if power % 2:
        return 0.0
    return float(sum(q ** crossings(p) for p in all_pairings(range(power))))


def second_quantize(space: FockSpace, a: np.ndarray) -> FockOperator:
    """
    Γ(A) = ⊕_n A^{⊗n} for a contraction A of the one-particle space.
    """
    a = np.asarray(a, dtype=float)
    if a.shape != (space.dim, space.dim):
        raise FockError(f"expected a {space.dim}x{space.dim} matrix, got shape {a.shape}")
    norm = float(np.linalg.norm(a, 2))
    if norm > 1.0 + EXACT_TOLERANCE:
        raise FockError(f"second quantization needs a contraction, got norm {norm}")
    result = np.zeros((space.size, space.size))
    power = np.ones((1, 1))
    for n in range(space.cap + 1):
        sl = space.level_slice(n)
        result[sl, sl] = power
        power = np.kron(a, power)
    return FockOperator(space, result, exact_level=space.cap, raise_by=0)


def rotation_deformation(space: FockSpace, t: float) -> FockOperator:
    return second_quantize(space, DeformationParams(t, space.require_splitting()).rotation())


def conditional_projection(space: FockSpace, onto: str = FIRST_SUMMAND) -> FockOperator:
    """
    ⊕_n P_1^{⊗n}, with P_1 the projection onto the first summand.
    """
    if onto != FIRST_SUMMAND:
        raise FockError(f"can only project onto {FIRST_SUMMAND!r}, got {onto!r}")
    return second_quantize(space, space.require_splitting().first_projection())


def is_q_isometry(space: FockSpace, op: FockOperator, tolerance: float = EXACT_TOLERANCE) -> bool:
    gram = space.gram_matrix
    residual = op.matrix.T @ gram @ op.matrix - gram
    return float(np.max(np.abs(residual), initial=0.0)) <= tolerance * max(
        1.0, float(np.max(np.abs(gram)))
    )


@dataclass(frozen=True, eq=False)
class PhiMapReport:
    """
    Attributes:
        image: Φ_{x,y}(a)Ω
        band: the levels [n - (n1 + n2), n + (n1 + n2)] the image should be confined to
        band_mass: q-norm of the image outside the band
        ratio: ‖Φ_{x,y}(a)Ω‖_q / ‖aΩ‖_q
        k: the membership threshold that x and y were checked against
    """

    image: FockVector
    band: tuple[int, int]
    band_mass: float
    ratio: float
    k: int


def _check_membership(space: FockSpace, tensor: Sequence[np.ndarray], k: int, name: str) -> None:
    splitting = space.require_splitting()
    in_second = sum(1 for v in tensor if splitting.in_second(v))
    if in_second < k:
        raise FockError(
            f"{name} has {in_second} factors in the second summand, needs at least {k}"
        )


def _phi_image(
    space: FockSpace,
    x: FockOperator,
    y: FockOperator,
    n1: int,
    n2: int,
    n: int,
    a: VectorLike,
    k: int,
) -> PhiMapReport:
    splitting = space.require_splitting()
    a_vector = space.vector(n, a)
    support = np.zeros(space.level_dims[n], dtype=bool)
    support[_level_indices(space.dim, n, splitting.first)] = True
    if np.any(np.abs(a_vector.level(n)[~support]) > EXACT_TOLERANCE):
        raise FockError("a must be a tensor over the first summand")
    a_op = wick_vector(space, n, a_vector.level(n))
    image = conditional_projection(space) @ (x @ (a_op @ (y @ space.vacuum())))
    low, high = max(n - (n1 + n2), 0), n + n1 + n2
    norms = image.level_norms()
    band_mass = math.sqrt(sum(v**2 for m, v in enumerate(norms) if not low <= m <= high))
    a_norm = a_vector.q_norm()
    if a_norm == 0:
        raise FockError("a must be nonzero")
    return PhiMapReport(image, (low, high), band_mass, image.q_norm() / a_norm, k)


def phi_map(
    space: FockSpace,
    x: Sequence[VectorLike],
    y: Sequence[VectorLike],
    n: int,
    a: VectorLike,
    *,
    k: int = 1,
) -> PhiMapReport:
    """
    Φ_{x,y}(a)Ω = E(x a y)Ω for Wick words x = W_q(x_1 ⊗ ... ⊗ x_{n1}) and
    y = W_q(y_1 ⊗ ... ⊗ y_{n2}) with at least k factors each in the second summand, and
    a = W_q(a) for a level-n tensor `a` over the first summand.
    """
    if not abs(space.q) < 1:
        raise FockError(f"phi_map needs |q| < 1, got q={space.q}")
    x_vectors = [space.check_vector(v) for v in x]
    y_vectors = [space.check_vector(v) for v in y]
    _check_membership(space, x_vectors, k, "x")
    _check_membership(space, y_vectors, k, "y")
    n1, n2 = len(x_vectors), len(y_vectors)
    required = n1 + n + n2
    if space.cap < required:
        raise FockError(f"phi_map requires cap >= {required}, got cap={space.cap}")
    return _phi_image(space, wick(space, x_vectors), wick(space, y_vectors), n1, n2, n, a, k)


def decay_profile(
    q: float,
    k: int,
    n_max: int,
    dim_h: int = 1,
    dim_k: int = 1,
    samples: int = 8,
    seed: int = 0,
) -> list[DecayRow]:
    """
    Empirical decay of Φ_{x,y} with x = y = W_q(f^{⊗k}) for a unit vector f of the second
    summand. For every level n in 1..n_max the ratio ‖Φ(a)‖ / ‖a‖ is maximized over
    `samples` random level-n tensors a over the first summand.

    The fitted constant is max_n ratio(n) / |q|^{kn}, reported on every row.
    """
    if k < 1 or n_max < 1 or samples < 1:
        raise FockError(f"need k, n_max and samples >= 1, got {k}, {n_max}, {samples}")
    if not abs(q) < 1:
        raise FockError(f"decay_profile needs |q| < 1, got q={q}")
    space = FockSpace(q, dim_h + dim_k, n_max + 2 * k, splitting=Splitting(dim_h, dim_k))
    f = np.zeros(space.dim)
    f[dim_h] = 1.0
    x = wick(space, [f] * k)
    rng = np.random.default_rng(seed)
    ratios = []
    band_masses = []
    violated = []
    for n in range(1, n_max + 1):
        indices = _level_indices(space.dim, n, dim_h)
        best = 0.0
        mass = 0.0
        for _ in range(samples):
            a = np.zeros(space.level_dims[n])
            a[indices] = rng.standard_normal(len(indices))
            report = _phi_image(space, x, x, k, k, n, a, k)
            best = max(best, report.ratio)
            mass = max(mass, report.band_mass)
        bad = mass > EXACT_TOLERANCE
        if bad:
            logger.warning("Band violated at n=%d: off-band mass %s", n, mass)
        if n > 1 and ratios[-1] > 0 and best / ratios[-1] > abs(q) ** k + DECAY_SLACK:
            logger.warning("Decay slower than |q|^k between levels %d and %d", n - 1, n)
            bad = True
        ratios.append(best)
        band_masses.append(mass)
        violated.append(bad)
        logger.debug("q=%s k=%d n=%d ratio=%s", q, k, n, best)
    bounds = [abs(q) ** (k * n) for n in range(1, n_max + 1)]
    fitted = [r / b for r, b in zip(ratios, bounds) if b > 0]
    fitted_c = max(fitted) if fitted else math.nan
    return [
        DecayRow(
            q=q,
            k=k,
            n=n,
            ratio=ratio,
            fitted_c=fitted_c,
            band_mass=mass,
            violated=bad,
        )
        for n, (ratio, mass, bad) in enumerate(zip(ratios, band_masses, violated), start=1)
    ]


def deformation_profile(space: FockSpace, t: float, n: int) -> list[DeformRow]:
    """
    Singular values of E∘Γ(R_t) on first-summand tensors of levels 0..n, next to the
    expected (cos t)^m.
    """
    splitting = space.require_splitting()
    if n > space.cap:
        raise FockError(f"level {n} requires cap >= {n}, got cap={space.cap}")
    op = conditional_projection(space) @ rotation_deformation(space, t)
    rows = []
    for m in range(n + 1):
        indices = _level_indices(space.dim, m, splitting.first)
        block = op.block(m, m)[np.ix_(indices, indices)]
        singular_values = np.linalg.svd(block, compute_uv=False)
        rows.append(
            DeformRow(
                t=t,
                n=m,
                min_sv=float(singular_values.min()),
                max_sv=float(singular_values.max()),
                expected=math.cos(t) ** m,
            )
        )
    return rows


def _tn_row(q: float, n: int, dim: int) -> TnRow:
    eigenvalues = np.linalg.eigvalsh(build_Tn(dim, n, q))
    return TnRow(q=q, n=n, dim=dim, min_eig=float(eigenvalues[0]), max_eig=float(eigenvalues[-1]))


def tn_sweep(qs: Iterable[float], ns: Iterable[int], dims: Iterable[int]) -> list[TnRow]:
    """
    Extreme eigenvalues of T_n over a parameter grid, in (q, n, dim) order.
    """
    grid = list(itertools.product(qs, ns, dims))
    with ThreadPoolExecutor(max_workers=8) as executor:
        futures = [executor.submit(_tn_row, q, n, dim) for q, n, dim in grid]
        wait(futures)
    return [f.result() for f in futures]


def _moment_rows(q: float, powers: Sequence[int]) -> list[MomentRow]:
    space = FockSpace(q, 1, max(powers))
    rows = []
    for power in powers:
        moment = vacuum_moment(space, [1.0], power)
        oracle = pair_partition_oracle(q, power)
        rows.append(
            MomentRow(q=q, power=power, moment=moment, oracle=oracle, diff=abs(moment - oracle))
        )
    return rows


def moment_table(qs: Iterable[float], powers: Iterable[int]) -> list[MomentRow]:
    powers = list(powers)
    if not powers:
        return []
    with ThreadPoolExecutor(max_workers=8) as executor:
        futures = [executor.submit(_moment_rows, q, powers) for q in qs]
        wait(futures)
    return [row for f in futures for row in f.result()]

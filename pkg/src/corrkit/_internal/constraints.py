import logging
import os
import threading
from dataclasses import dataclass, field
from typing import Optional, TypeVar, Union

logger = logging.getLogger(__name__)

DEFAULT_MAX_MATRIX_BYTES = 256 * 1024 * 1024
DEFAULT_MAX_ISO_VERTICES = 12
DEFAULT_MAX_ELEMENTS = 200_000

# Floating point identities that hold exactly in real arithmetic
EXACT_TOLERANCE = 1e-10
# T_n is positive semidefinite up to this slack
PSD_TOLERANCE = 1e-10
# Slack on the empirical decay ratio, the constant C_{x,y} is only existential
DECAY_SLACK = 5e-2


class BudgetExceededError(Exception):
    """
    Raised when a computation would exceed a resource cap.

    Attributes:
        partial_count: number of items produced before the cap was hit, if meaningful
    """

    def __init__(self, message: str, partial_count: Optional[int] = None):
        super().__init__(message)
        self.partial_count = partial_count


Comparable = TypeVar("Comparable", bound=Union[int, float])


def is_between(value: Comparable, left: Optional[Comparable], right: Optional[Comparable]) -> bool:
    if is_below(value, left) or is_above(value, right):
        return False
    return True


def is_below(value: Comparable, limit: Optional[Comparable]) -> bool:
    if limit is not None and value < limit:
        return True
    return False


def is_above(value: Comparable, limit: Optional[Comparable]) -> bool:
    if limit is not None and value > limit:
        return True
    return False


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        parsed = int(value)
    except ValueError:
        logger.warning("Ignoring non-integer %s=%r, using %d", name, value, default)
        return default
    if parsed <= 0:
        logger.warning("Ignoring non-positive %s=%r, using %d", name, value, default)
        return default
    return parsed


def max_matrix_bytes() -> int:
    """
    Returns:
        cap on the size of a single dense matrix, overridable with `CORRKIT_MAX_MATRIX_BYTES`
    """
    return _env_int("CORRKIT_MAX_MATRIX_BYTES", DEFAULT_MAX_MATRIX_BYTES)


def max_iso_vertices() -> int:
    return _env_int("CORRKIT_MAX_ISO_VERTICES", DEFAULT_MAX_ISO_VERTICES)


def max_elements() -> int:
    return _env_int("CORRKIT_MAX_ELEMENTS", DEFAULT_MAX_ELEMENTS)


def check_matrix_size(rows: int, columns: int, *, what: str = "matrix") -> None:
    """
    Raise `BudgetExceededError` if a float64 matrix of the given shape exceeds the byte cap.
    """
    nbytes = rows * columns * 8
    limit = max_matrix_bytes()
    if nbytes > limit:
        raise BudgetExceededError(
            f"{what} of shape {rows}x{columns} needs {nbytes} bytes, limit is {limit}"
            " (set CORRKIT_MAX_MATRIX_BYTES to raise it)"
        )


@dataclass
class EnumerationBudget:
    """
    Cooperative budget for enumerations.

    Attributes:
        max_elements: maximum number of elements an enumeration may produce.
            If not specified, `CORRKIT_MAX_ELEMENTS` or the built-in default is used
        cancel: event that, once set, stops the enumeration at the next charge
    """

    max_elements: Optional[int] = None
    cancel: Optional[threading.Event] = None
    used: int = field(default=0, init=False)

    def __post_init__(self) -> None:
        if self.max_elements is None:
            self.max_elements = max_elements()
        if self.max_elements <= 0:
            raise ValueError(f"max_elements must be positive, got {self.max_elements}")

    def charge(self, count: int = 1) -> None:
        if self.cancel is not None and self.cancel.is_set():
            raise BudgetExceededError("enumeration cancelled", partial_count=self.used)
        if self.used + count > self.max_elements:
            raise BudgetExceededError(
                f"enumeration exceeded {self.max_elements} elements", partial_count=self.used
            )
        self.used += count

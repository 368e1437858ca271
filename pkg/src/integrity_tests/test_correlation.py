import itertools
from collections import Counter

import numpy as np
import pytest

from corrkit._internal.correlation import gf_distinguish, tensor_match
from corrkit._internal.models import Verdict

FAMILY_ENTRIES = (2, 3, 4, 5)
LABELS = ("x", "y", "z")


def nonempty_subsets(items) -> list[tuple[int, ...]]:
    return [
        subset
        for size in range(1, len(items) + 1)
        for subset in itertools.combinations(items, size)
    ]


@pytest.mark.parametrize("family", nonempty_subsets(FAMILY_ENTRIES), ids=str)
def test_gf_separates_families(family: tuple[int, ...]):
    for other in nonempty_subsets(FAMILY_ENTRIES):
        report = gf_distinguish(family, other)
        if set(family) == set(other):
            assert report.verdict == Verdict.INDISTINGUISHABLE
            assert report.invariant_a == report.invariant_b
        else:
            assert report.verdict == Verdict.NOT_CORRELATED, (family, other)


def brute_force_match(a: list[str], b: list[list[str]]):
    targets = [Counter(block) for block in b]
    for assignment in itertools.product(range(len(b)), repeat=len(a)):
        blocks = [Counter() for _ in b]
        for label, k in zip(a, assignment):
            blocks[k][label] += 1
        if blocks == targets:
            return tuple(
                tuple(position for position, k in enumerate(assignment, start=1) if k == block)
                for block in range(len(b))
            )
    return None


def random_case(rng) -> tuple[list[str], list[list[str]]]:
    n = int(rng.integers(1, 6))
    a = [LABELS[i] for i in rng.integers(0, len(LABELS), size=n)]
    r = int(rng.integers(1, n + 1))
    cuts = sorted(rng.choice(np.arange(1, n), size=r - 1, replace=False)) if r > 1 else []
    shuffled = [a[i] for i in rng.permutation(n)]
    b = [shuffled[i:j] for i, j in zip([0, *cuts], [*cuts, n])]
    if rng.random() < 0.3:
        block = b[int(rng.integers(0, r))]
        block[int(rng.integers(0, len(block)))] = LABELS[int(rng.integers(0, len(LABELS)))]
    return a, b


def test_tensor_match_brute_force():
    rng = np.random.default_rng(0)
    for _ in range(500):
        a, b = random_case(rng)
        assert tensor_match(a, b) == brute_force_match(a, b), (a, b)

import math

import numpy as np
import pytest

from corrkit._internal.constraints import PSD_TOLERANCE
from corrkit._internal.qfock import (
    FockSpace,
    Splitting,
    build_Tn,
    decay_profile,
    deformation_profile,
    pair_partition_oracle,
    vacuum_moment,
)

QS = [-0.9, -0.5, 0.0, 0.3, 0.5, 0.9]
ENDPOINT_QS = [-1.0, *QS, 1.0]


def q_factorial(k: int, q: float) -> float:
    return math.prod(sum(q**i for i in range(j)) for j in range(1, k + 1))


@pytest.mark.parametrize("q", ENDPOINT_QS)
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("dim", [1, 2, 3])
def test_tn_positive(q: float, n: int, dim: int):
    tn = build_Tn(dim, n, q)
    eigenvalues = np.linalg.eigvalsh(tn)
    if abs(q) < 1:
        assert eigenvalues.min() > 0
    else:
        assert eigenvalues.min() >= -PSD_TOLERANCE
    assert eigenvalues.max() <= q_factorial(n, abs(q)) + 1e-9
    # e_1^{⊗n} is symmetric
    assert tn[0, 0] == pytest.approx(q_factorial(n, q), abs=1e-12)


@pytest.mark.parametrize("q", ENDPOINT_QS)
def test_two_particle_spectrum(q: float):
    eigenvalues = np.linalg.eigvalsh(build_Tn(3, 2, q))
    assert eigenvalues == pytest.approx(sorted([1 + q] * 6 + [1 - q] * 3), abs=1e-12)


@pytest.mark.parametrize("q", QS)
def test_single_mode_is_q_factorial(q: float):
    for n in range(1, 6):
        assert build_Tn(1, n, q)[0, 0] == pytest.approx(q_factorial(n, q))


@pytest.mark.parametrize("q", QS)
def test_moments_match_pair_partitions(q: float):
    space = FockSpace(q, 2, 8)
    xi = np.array([0.6, 0.8])
    for power in range(0, 9):
        assert vacuum_moment(space, xi, power) == pytest.approx(
            pair_partition_oracle(q, power), abs=1e-9
        )


@pytest.mark.parametrize("q", [-0.5, 0.3, 0.5, 0.8])
@pytest.mark.parametrize("k", [1, 2])
def test_decay_constant(q: float, k: int):
    rows = decay_profile(q, k, 3, samples=3)
    assert [row.n for row in rows] == [1, 2, 3]
    for row in rows:
        assert row.ratio == pytest.approx(abs(q) ** (k * row.n) * abs(q_factorial(k, q)))
        assert row.fitted_c == pytest.approx(abs(q_factorial(k, q)))
        assert row.band_mass <= 1e-9
        assert not row.violated


@pytest.mark.parametrize("t", [0.0, 0.4, 1.2, math.pi / 2])
def test_deformation_contracts(t: float):
    space = FockSpace(0.5, 4, 3, splitting=Splitting(2, 2))
    for row in deformation_profile(space, t, 3):
        assert row.max_sv == pytest.approx(abs(math.cos(t)) ** row.n, abs=1e-12)
        assert row.min_sv == pytest.approx(abs(math.cos(t)) ** row.n, abs=1e-12)

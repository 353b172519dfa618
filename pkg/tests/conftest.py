import random
from pathlib import Path

import pytest

from eaqec import CheckMatrix, make_field, reduce_matrix
from eaqec.linalg import rank_mod_p
from eaqec.reduction import NORMALIZED

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text()


@pytest.fixture
def fixture_path():
    return lambda name: str(FIXTURES / name)


F5_ROWS = (
    ((3, 1, 1, 0), (1, 2, 0, 2)),
    ((0, 3, 0, 4), (2, 4, 1, 3)),
    ((1, 1, 0, 2), (3, 1, 1, 2)),
    ((2, 3, 1, 0), (4, 0, 1, 3)),
)

F7_ROWS = (
    ((2, 1, 0, 4, 3), (6, 1, 5, 1, 2)),
    ((1, 2, 1, 2, 2), (3, 2, 1, 4, 1)),
    ((0, 2, 4, 1, 0), (2, 1, 4, 5, 2)),
    ((4, 2, 1, 0, 5), (0, 1, 0, 3, 2)),
)


@pytest.fixture
def f5_matrix():
    return CheckMatrix.from_rows(make_field(5), F5_ROWS)


@pytest.fixture
def f7_matrix():
    return CheckMatrix.from_rows(make_field(7), F7_ROWS)


def random_instance(rng: random.Random, p: int, max_n: int = 6) -> CheckMatrix:
    """Independent random generator rows over F_p."""
    field = make_field(p)
    n = rng.randint(1, max_n)
    r = rng.randint(1, min(2 * n, n + 2))
    while True:
        rows = [
            (tuple(rng.randrange(p) for _ in range(n)),
             tuple(rng.randrange(p) for _ in range(n)))
            for _ in range(r)
        ]
        if rank_mod_p([list(x) + list(z) for x, z in rows], p) == r:
            return CheckMatrix.from_rows(field, rows, n=n)


@pytest.fixture(scope="session")
def reduced_corpus():
    """100 reduced random instances per p in {2, 3, 5, 7} (normalized mode)."""
    corpus = []
    for p in (2, 3, 5, 7):
        rng = random.Random(9000 + p)
        for _ in range(100):
            matrix = random_instance(rng, p)
            corpus.append(reduce_matrix(matrix, NORMALIZED))
    return corpus

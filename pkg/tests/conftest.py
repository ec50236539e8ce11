import pytest

from tournkit import ModelSpec, RngStream, Tournament, probability_matrix, sample

# The worked five-alternative example: a beats b, c, e; b beats c, d, e;
# c beats d, e; d beats a, e. Outdegrees (3, 3, 2, 2, 0).
FIG1_EDGES = [
    (0, 1), (0, 2), (3, 0), (0, 4),
    (1, 2), (1, 3), (1, 4),
    (2, 3), (2, 4),
    (3, 4),
]
A, B, C, D, E = range(5)


def tournament_from_edges(n, edges):
    rows = [[0] * n for _ in range(n)]
    for i, j in edges:
        rows[i][j] = 1
    return Tournament.from_matrix(n, rows)


@pytest.fixture
def fig1():
    return tournament_from_edges(5, FIG1_EDGES)


@pytest.fixture
def fig2_completion():
    """Eight alternatives a..h = 0..7; the specified upsets on top of the
    alphabetical order: b>a, f>e, h>g, c>b, h>f (c>d and c>h are already
    alphabetical)."""
    edges = []
    overrides = {(0, 1): (1, 0), (4, 5): (5, 4), (6, 7): (7, 6),
                 (1, 2): (2, 1), (5, 7): (7, 5)}
    for i in range(8):
        for j in range(i + 1, 8):
            edges.append(overrides.get((i, j), (i, j)))
    return tournament_from_edges(8, edges)


def random_tournament(n, seed, substream=0, kind="uniform", p=None):
    matrix = probability_matrix(ModelSpec(kind, p=p), n)
    return sample(matrix, RngStream(seed, substream))

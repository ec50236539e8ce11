"""Random tournament generators with a deterministic substreamed RNG contract.

Four models are supported: uniform coin flips, the linear-order model with a
constant upset probability p, the gap model whose upset probability shrinks
with rank distance, and arbitrary consistent per-pair probability matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import Tournament
from .errors import BadMatrix, FormatError, InvalidP

_CONSISTENCY_TOL = 1e-12

UNIFORM = "uniform"
CONDORCET = "condorcet"
GAP = "gap"
GENERALIZED = "generalized"
_KINDS = (UNIFORM, CONDORCET, GAP, GENERALIZED)


@dataclass(frozen=True, eq=False)
class ModelSpec:
    """Description of a random model; expands to an n x n probability matrix."""

    kind: str
    p: float | None = None
    matrix: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InvalidP(f"unknown model kind {self.kind!r}")
        if self.kind == UNIFORM and self.p not in (None, 0.5):
            raise InvalidP(f"uniform model fixes p = 0.5, got {self.p!r}")
        if self.kind in (CONDORCET, GAP):
            if self.p is None or not 0.0 <= self.p <= 0.5:
                raise InvalidP(
                    f"{self.kind} model requires 0 <= p <= 0.5, got {self.p!r}"
                )
        if self.kind == GENERALIZED:
            if self.matrix is None:
                raise BadMatrix("generalized model requires a probability matrix")
            _validate_matrix(np.asarray(self.matrix, dtype=float))

    def with_p(self, p: float) -> "ModelSpec":
        if self.kind == GENERALIZED:
            return self
        if self.kind == UNIFORM:
            return self
        return ModelSpec(self.kind, p=p)


@dataclass(frozen=True)
class RngStream:
    """Seeded deterministic randomness; one substream per Monte Carlo trial.

    Identical (master_seed, substream_index) pairs produce identical draw
    sequences; distinct substream indices are statistically independent.
    """

    master_seed: int
    substream_index: int

    def generator(self) -> np.random.Generator:
        seed = np.random.SeedSequence(
            entropy=(self.master_seed & 0xFFFFFFFFFFFFFFFF,
                     self.substream_index & 0xFFFFFFFFFFFFFFFF)
        )
        return np.random.Generator(np.random.PCG64(seed))


def _validate_matrix(matrix: np.ndarray) -> np.ndarray:
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise BadMatrix(f"probability matrix must be square, got shape {matrix.shape}")
    n = matrix.shape[0]
    if n < 2:
        raise BadMatrix("probability matrix needs at least 2 alternatives")
    off = ~np.eye(n, dtype=bool)
    if np.any(matrix[off] < 0.0) or np.any(matrix[off] > 1.0):
        raise BadMatrix("probabilities must lie in [0, 1]")
    asym = np.abs(matrix + matrix.T - 1.0)
    if np.any(asym[off] > _CONSISTENCY_TOL):
        i, j = np.unravel_index(np.argmax(asym * off), asym.shape)
        raise BadMatrix(
            f"matrix[{i}][{j}] + matrix[{j}][{i}] = {matrix[i, j] + matrix[j, i]!r}, expected 1"
        )
    return matrix


def probability_matrix(spec: ModelSpec, n: int) -> np.ndarray:
    """Entry [i][j] is the probability that alternative i dominates j."""
    if n < 2:
        raise BadMatrix(f"need n >= 2 alternatives, got {n}")
    if spec.kind == GENERALIZED:
        matrix = np.asarray(spec.matrix, dtype=float)
        if matrix.shape[0] != n:
            raise BadMatrix(
                f"generalized matrix is {matrix.shape[0]}x{matrix.shape[0]}, requested n={n}"
            )
        return _validate_matrix(matrix.copy())
    out = np.zeros((n, n), dtype=float)
    idx = np.arange(n)
    upper = idx[:, None] < idx[None, :]  # i < j
    if spec.kind == UNIFORM:
        out[upper] = 0.5
    elif spec.kind == CONDORCET:
        out[upper] = 1.0 - spec.p
    else:  # gap: upset probability shrinks linearly with rank distance
        dist = (idx[None, :] - idx[:, None]).astype(float)
        upset = 0.5 - (0.5 - spec.p) * dist / (n - 1)
        out[upper] = 1.0 - upset[upper]
    out = out + np.tril((1.0 - out).T, k=-1)
    np.fill_diagonal(out, 0.0)
    return out


@lru_cache(maxsize=64)
def _pair_indices(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, k=1)


def sample(matrix: np.ndarray, stream: RngStream) -> Tournament:
    """Draw one tournament; pair (i, j), i < j, uses the (i, j)-th uniform.

    Pairs are consumed in lexicographic order so the tournament is a pure
    function of (matrix, stream).
    """
    matrix = _validate_matrix(np.asarray(matrix, dtype=float))
    n = matrix.shape[0]
    iu, ju = _pair_indices(n)
    u = stream.generator().random(iu.shape[0])
    forward = u < matrix[iu, ju]
    adjacency = np.zeros((n, n), dtype=bool)
    adjacency[iu[forward], ju[forward]] = True
    adjacency[ju[~forward], iu[~forward]] = True
    packed = np.packbits(adjacency, axis=1, bitorder="little")
    row_bytes = packed.tobytes()
    width = packed.shape[1]
    rows = [
        int.from_bytes(row_bytes[i * width:(i + 1) * width], "little")
        for i in range(n)
    ]
    return Tournament._from_rows_unchecked(n, rows)


def load_probability_matrix(path) -> np.ndarray:
    """Read a generalized-model matrix: line 1 = n, then n rows of n decimals."""
    with open(path, "r", encoding="ascii") as fh:
        tokens = fh.read().split()
    if not tokens:
        raise FormatError("empty probability matrix file")
    try:
        n = int(tokens[0])
    except ValueError:
        raise FormatError(f"first token must be n, got {tokens[0]!r}") from None
    values = tokens[1:]
    if len(values) != n * n:
        raise BadMatrix(f"expected {n * n} entries for n={n}, got {len(values)}")
    try:
        data = np.array([float(v) for v in values], dtype=float).reshape(n, n)
    except ValueError:
        raise FormatError("matrix entries must be decimal numbers") from None
    return _validate_matrix(data)

"""Immutable tournament representation.

A tournament on n alternatives (ids 0..n-1) is a complete orientation: for
every pair exactly one of i -> j, j -> i is present, where an edge i -> j
means alternative i dominates alternative j.

Adjacency is stored as one bit-packed integer per row so dominance queries
are O(1) and row-level set operations are word-parallel; this is the hot
representation the Monte Carlo harness runs on.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    DuplicateId,
    EmptySubset,
    FormatError,
    NotAntisymmetric,
    OutOfRange,
    SamePair,
    SelfLoop,
)


class Tournament:
    """Complete dominance relation on n alternatives, immutable after construction."""

    __slots__ = ("n", "_rows", "_full")

    def __init__(self, n: int, rows: Sequence[int], _trusted: bool = False):
        if not _trusted:
            raise TypeError(
                "use Tournament.from_matrix / from_rows / transitive / path_worstcase"
            )
        self.n = n
        self._rows = tuple(rows)
        self._full = (1 << n) - 1

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, n: int, rows: Sequence[int]) -> "Tournament":
        """Build from bit rows (bit j of rows[i] set iff i dominates j).

        Validates antisymmetry and completeness over all pairs.
        """
        if n < 1 or len(rows) != n:
            raise DimensionMismatch(f"expected {n} rows, got {len(rows)}")
        full = (1 << n) - 1
        for i, row in enumerate(rows):
            if row & ~full:
                raise DimensionMismatch(f"row {i} has bits beyond column {n - 1}")
            if row >> i & 1:
                raise SelfLoop(f"alternative {i} dominates itself")
        for i in range(n):
            for j in range(i + 1, n):
                fwd = rows[i] >> j & 1
                bwd = rows[j] >> i & 1
                if fwd == bwd:
                    which = "both" if fwd else "neither"
                    raise NotAntisymmetric(f"pair ({i}, {j}): {which} directions set")
        return cls(n, rows, _trusted=True)

    @classmethod
    def _from_rows_unchecked(cls, n: int, rows: Sequence[int]) -> "Tournament":
        """Trusted constructor for generators that guarantee the invariants."""
        return cls(n, rows, _trusted=True)

    @classmethod
    def from_matrix(cls, n: int, rows: Iterable[Iterable[object]]) -> "Tournament":
        """Build from an n x n boolean matrix; rejects invalid relations."""
        rows = list(rows)
        if len(rows) != n:
            raise DimensionMismatch(f"expected {n} rows, got {len(rows)}")
        bit_rows = []
        for i, row in enumerate(rows):
            row = list(row)
            if len(row) != n:
                raise DimensionMismatch(f"row {i} has {len(row)} entries, expected {n}")
            bits = 0
            for j, cell in enumerate(row):
                if cell:
                    bits |= 1 << j
            bit_rows.append(bits)
        return cls.from_rows(n, bit_rows)

    @classmethod
    def transitive(cls, n: int) -> "Tournament":
        """Linear-order tournament: i dominates j iff i < j."""
        if n < 1:
            raise DimensionMismatch("transitive() requires n >= 1")
        full = (1 << n) - 1
        rows = [(full >> (i + 1)) << (i + 1) for i in range(n)]
        return cls(n, rows, _trusted=True)

    @classmethod
    def path_worstcase(cls, n: int) -> "Tournament":
        """Orientation where i dominates j iff i - j >= 2 or j - i = 1.

        Alternative 0 reaches everything but needs a path of length n-1 to
        reach alternative n-1.
        """
        if n < 2:
            raise DimensionMismatch("path_worstcase() requires n >= 2")
        rows = []
        for i in range(n):
            bits = 0
            for j in range(n):
                if i - j >= 2 or j - i == 1:
                    bits |= 1 << j
            rows.append(bits)
        return cls(n, rows, _trusted=True)

    # -- queries ------------------------------------------------------------

    def _check_id(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise OutOfRange(f"alternative {i} outside [0, {self.n})")

    def dominates(self, i: int, j: int) -> bool:
        """True iff i beats j."""
        self._check_id(i)
        self._check_id(j)
        if i == j:
            raise SamePair(f"dominates({i}, {i}) is undefined")
        return bool(self._rows[i] >> j & 1)

    def outdegree(self, i: int) -> int:
        self._check_id(i)
        return self._rows[i].bit_count()

    def indegree(self, i: int) -> int:
        self._check_id(i)
        return self.n - 1 - self._rows[i].bit_count()

    def out_row(self, i: int) -> int:
        """Bitmask of alternatives that i dominates."""
        self._check_id(i)
        return self._rows[i]

    def dominators_mask(self, i: int) -> int:
        """Bitmask of alternatives that dominate i."""
        self._check_id(i)
        mask = 0
        for j in range(self.n):
            if self._rows[j] >> i & 1:
                mask |= 1 << j
        return mask

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def full_mask(self) -> int:
        return self._full

    def restrict(self, subset: Sequence[int]) -> tuple["Tournament", dict[int, int]]:
        """Subtournament on the given alternatives, plus the old -> new index map."""
        subset = list(subset)
        if not subset:
            raise EmptySubset("restrict() requires a non-empty subset")
        if len(set(subset)) != len(subset):
            raise DuplicateId(f"duplicate ids in {subset}")
        for v in subset:
            self._check_id(v)
        index_map = {old: new for new, old in enumerate(subset)}
        rows = []
        for old_i in subset:
            bits = 0
            src = self._rows[old_i]
            for new_j, old_j in enumerate(subset):
                if src >> old_j & 1:
                    bits |= 1 << new_j
            rows.append(bits)
        return Tournament(len(subset), rows, _trusted=True), index_map

    # -- text format ----------------------------------------------------------
    # line 1: n; lines 2..n+1: n characters '0'/'1', row i column j = '1' iff
    # i dominates j; diagonal '0'; trailing newline.

    def to_text(self) -> str:
        lines = [str(self.n)]
        for row in self._rows:
            lines.append("".join("1" if row >> j & 1 else "0" for j in range(self.n)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Tournament":
        lines = text.splitlines()
        if not lines:
            raise FormatError("empty tournament text")
        try:
            n = int(lines[0].strip())
        except ValueError:
            raise FormatError(f"first line must be n, got {lines[0]!r}") from None
        if n < 1:
            raise FormatError(f"n must be positive, got {n}")
        body = lines[1:]
        if len(body) != n:
            raise DimensionMismatch(f"expected {n} matrix lines, got {len(body)}")
        rows = []
        for i, line in enumerate(body):
            line = line.strip()
            if len(line) != n:
                raise DimensionMismatch(
                    f"line {i + 2} has {len(line)} characters, expected {n}"
                )
            if set(line) - {"0", "1"}:
                raise FormatError(f"line {i + 2} contains characters other than 0/1")
            bits = 0
            for j, ch in enumerate(line):
                if ch == "1":
                    bits |= 1 << j
            rows.append(bits)
        return cls.from_rows(n, rows)

    # -- dunder ---------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tournament):
            return NotImplemented
        return self.n == other.n and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.n, self._rows))

    def __repr__(self) -> str:
        return f"Tournament(n={self.n})"


def transitive(n: int) -> Tournament:
    return Tournament.transitive(n)


def path_worstcase(n: int) -> Tournament:
    return Tournament.path_worstcase(n)


def from_matrix(n: int, rows: Iterable[Iterable[object]]) -> Tournament:
    return Tournament.from_matrix(n, rows)

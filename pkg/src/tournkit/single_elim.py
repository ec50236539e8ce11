"""Single-elimination brackets: playout, superkings, winning-bracket synthesis.

A bracket assigns the n = 2^r alternatives to the leaves of a balanced
binary tree; adjacent survivors meet each round and matches are decided by
the tournament's dominance relation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Tournament
from .errors import (
    ConstructionFailed,
    InvalidPermutation,
    NotPowerOfTwo,
    NotSuperking,
    OutOfRange,
    TooLarge,
)
from .models import RngStream

try:
    from numba import njit as _njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

    def _njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


@dataclass(frozen=True)
class Bracket:
    """Leaf order of a balanced single-elimination tree.

    leaves[2m] plays leaves[2m+1] in round 1; winners re-pair adjacently.
    """

    leaves: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "leaves", tuple(self.leaves))

    def to_text(self) -> str:
        return " ".join(str(v) for v in self.leaves) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Bracket":
        try:
            leaves = tuple(int(tok) for tok in text.split())
        except ValueError:
            raise InvalidPermutation(f"bracket tokens must be integers: {text!r}") from None
        return cls(leaves)


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def validate_bracket(bracket: Bracket, n: int) -> bool:
    """True iff leaves is a permutation of 0..n-1 and n is a power of two."""
    if not _is_power_of_two(n):
        return False
    leaves = bracket.leaves
    return len(leaves) == n and sorted(leaves) == list(range(n))


def playout(t: Tournament, bracket: Bracket) -> int:
    """Recursive match winner of the bracket under t's dominance relation."""
    if not _is_power_of_two(t.n):
        raise NotPowerOfTwo(f"playout requires a power-of-two field, got n={t.n}")
    if not validate_bracket(bracket, t.n):
        raise InvalidPermutation(
            f"bracket is not a permutation of 0..{t.n - 1}: {bracket.leaves}"
        )
    survivors = list(bracket.leaves)
    while len(survivors) > 1:
        survivors = [
            a if t.rows[a] >> b & 1 else b
            for a, b in zip(survivors[::2], survivors[1::2])
        ]
    return survivors[0]


# -- superkings ---------------------------------------------------------------


def is_superking(t: Tournament, x: int) -> bool:
    """True iff every dominator of x is beaten by at least log2(n) alternatives
    that x beats.

    The count comparison is done in exact integer form: count >= log2(n)
    iff 2**count >= n.
    """
    if not 0 <= x < t.n:
        raise OutOfRange(f"alternative {x} outside [0, {t.n})")
    beats = t.rows[x]
    for y in range(t.n):
        if y == x or not t.rows[y] >> x & 1:
            continue
        middle = beats & t.dominators_mask(y)
        if (1 << middle.bit_count()) < t.n:
            return False
    return True


def _kuhn_matching(adjacency: list[list[int]], n_right: int) -> list[int]:
    """Maximum bipartite matching; returns match_left (index into right side or -1)."""
    match_left = [-1] * len(adjacency)
    match_right = [-1] * n_right

    def try_augment(u: int, seen: list[bool]) -> bool:
        for v in adjacency[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] == -1 or try_augment(match_right[v], seen):
                match_left[u] = v
                match_right[v] = u
                return True
        return False

    for u in range(len(adjacency)):
        try_augment(u, [False] * n_right)
    return match_left


def _pair_round_for(t: Tournament, x: int, survivors: list[int]) -> list[tuple[int, int]]:
    """Pair survivors for one round so that x survives and as many of its
    dominators as possible are eliminated by alternatives x dominates."""
    alive = [v for v in survivors if v != x]
    a_side = [v for v in alive if t.rows[x] >> v & 1]
    b_side = [v for v in alive if not t.rows[x] >> v & 1]
    adjacency = [
        [ai for ai, a in enumerate(a_side) if t.rows[a] >> b & 1] for b in b_side
    ]
    match = _kuhn_matching(adjacency, len(a_side))
    used_a = {m for m in match if m != -1}
    if a_side and len(used_a) == len(a_side):
        # free one dominated alternative so x keeps a beatable opponent
        for bi in range(len(b_side) - 1, -1, -1):
            if match[bi] != -1:
                used_a.discard(match[bi])
                match[bi] = -1
                break
    partner = next((a for ai, a in enumerate(a_side) if ai not in used_a), None)
    if partner is None:
        # every surviving alternative dominates x; x cannot win this round
        raise ConstructionFailed(
            f"alternative {x} has no dominated survivor left to play"
        )
    pairs: list[tuple[int, int]] = [(x, partner)]
    paired: set[int] = {x, partner}
    for bi, ai in enumerate(match):
        if ai != -1:
            pairs.append((a_side[ai], b_side[bi]))
            paired.update((a_side[ai], b_side[bi]))
    leftovers = [v for v in survivors if v not in paired]
    for lo, hi in zip(leftovers[::2], leftovers[1::2]):
        pairs.append((lo, hi))
    return pairs


def _bracket_for_rounds(t: Tournament, x: int, survivors: list[int]) -> list[int]:
    if len(survivors) == 1:
        return [survivors[0]]
    pairs = _pair_round_for(t, x, survivors)
    winners = [a if t.rows[a] >> b & 1 else b for a, b in pairs]
    by_winner = {w: pair for w, pair in zip(winners, pairs)}
    upper = _bracket_for_rounds(t, x, winners)
    leaves: list[int] = []
    for w in upper:
        leaves.extend(by_winner[w])
    return leaves


def superking_bracket(t: Tournament, x: int) -> Bracket:
    """Winning bracket for a superking, built round by round.

    Each round pairs as many dominators of x as possible against distinct
    alternatives x dominates (maximum matching), pairs x with a remaining
    dominated alternative, and pairs leftovers lowest-index-first. The result
    is playout-verified before returning.
    """
    if not 0 <= x < t.n:
        raise OutOfRange(f"alternative {x} outside [0, {t.n})")
    if not _is_power_of_two(t.n) or t.n < 2:
        raise NotPowerOfTwo(f"need a power-of-two n >= 2, got {t.n}")
    if not is_superking(t, x):
        raise NotSuperking(f"alternative {x} is not a superking")
    leaves = _bracket_for_rounds(t, x, list(range(t.n)))
    bracket = Bracket(tuple(leaves))
    if playout(t, bracket) != x:
        raise ConstructionFailed(
            f"superking construction for {x} failed playout verification"
        )
    return bracket


# -- exhaustive oracle --------------------------------------------------------


def _se_table_kernel(rows: np.ndarray, n: int) -> np.ndarray:
    """Subset DP: winners[mask] is the bitmask of alternatives that can win a
    single-elimination tournament among exactly the alternatives in mask."""
    size = 1 << n
    winners = np.zeros(size, dtype=np.int64)
    for v in range(n):
        winners[1 << v] = 1 << v
    for mask in range(3, size):
        pc = 0
        m = mask
        while m:
            m &= m - 1
            pc += 1
        if pc < 2 or pc & (pc - 1):
            continue
        half = pc >> 1
        low = mask & (-mask)
        res = 0
        sub = (mask - 1) & mask
        while sub:
            if sub & low:
                spc = 0
                s = sub
                while s:
                    s &= s - 1
                    spc += 1
                if spc == half:
                    other = mask ^ sub
                    w1 = winners[sub]
                    w2 = winners[other]
                    for v in range(n):
                        bit = 1 << v
                        if w1 & bit and rows[v] & w2:
                            res |= bit
                        elif w2 & bit and rows[v] & w1:
                            res |= bit
            sub = (sub - 1) & mask
        winners[mask] = res
    return winners


if _HAVE_NUMBA:
    _se_table_jit = _njit(cache=True)(_se_table_kernel)
else:  # pragma: no cover
    _se_table_jit = _se_table_kernel


def _se_table(t: Tournament) -> np.ndarray:
    rows = np.array(t.rows, dtype=np.int64)
    return _se_table_jit(rows, t.n)


def _check_oracle_size(t: Tournament) -> None:
    if not _is_power_of_two(t.n):
        raise NotPowerOfTwo(f"exhaustive search needs a power of two, got n={t.n}")
    if t.n > 16:
        raise TooLarge(f"exhaustive search is limited to n <= 16, got n={t.n}")


def se_winners_exhaustive(t: Tournament) -> set[int]:
    """Exact single-elimination winner set via subset dynamic programming."""
    _check_oracle_size(t)
    if t.n == 1:
        return {0}
    table = _se_table(t)
    full = t.full_mask
    return {v for v in range(t.n) if table[full] >> v & 1}


def _extract_bracket(t: Tournament, table: np.ndarray, mask: int, x: int) -> list[int]:
    if mask == 1 << x:
        return [x]
    pc = mask.bit_count()
    half = pc >> 1
    low = mask & (-mask)
    sub = (mask - 1) & mask
    while sub:
        if sub & low and sub.bit_count() == half:
            for s1, s2 in ((sub, mask ^ sub), (mask ^ sub, sub)):
                if not int(table[s1]) >> x & 1:
                    continue
                w2 = int(table[s2])
                beatable = t.rows[x] & w2
                if not beatable:
                    continue
                y = (beatable & -beatable).bit_length() - 1
                return _extract_bracket(t, table, s1, x) + _extract_bracket(
                    t, table, s2, y
                )
        sub = (sub - 1) & mask
    raise ConstructionFailed(f"no winning split for {x} in mask {mask:#x}")


def winning_bracket_exhaustive(t: Tournament, x: int) -> Bracket | None:
    """Exact winning bracket for x (n <= 16), or None if x cannot win."""
    _check_oracle_size(t)
    if not 0 <= x < t.n:
        raise OutOfRange(f"alternative {x} outside [0, {t.n})")
    if t.n == 1:
        return Bracket((0,))
    table = _se_table(t)
    if not int(table[t.full_mask]) >> x & 1:
        return None
    leaves = _extract_bracket(t, table, t.full_mask, x)
    return Bracket(tuple(leaves))


# -- constructive winning bracket ----------------------------------------------


def _subtournament_bracket(t: Tournament, members: list[int], target: int):
    """Winning bracket for target within members, or None.

    Tries the superking construction first and falls back to exhaustive
    search when the block is small enough.
    """
    if len(members) == 1:
        return [target]
    sub, index_map = t.restrict(members)
    local = index_map[target]
    bracket = None
    if is_superking(sub, local):
        try:
            bracket = superking_bracket(sub, local)
        except ConstructionFailed:
            bracket = None
    if bracket is None and sub.n <= 16:
        bracket = winning_bracket_exhaustive(sub, local)
    if bracket is None:
        return None
    return [members[v] for v in bracket.leaves]


def _build_partition(
    t: Tournament, x: int, ys: list[int], rng: np.random.Generator | None
) -> list[list[int]]:
    """Partition everything except x into blocks of size 1, 2, ..., n/2 so
    block i holds ys[i] plus alternatives it preferably dominates."""
    n = t.n
    r = len(ys)
    available = [v for v in range(n) if v != x and v not in ys]
    if rng is not None:
        rng.shuffle(available)
    blocks: list[list[int]] = []
    use_large_quota = n >= 128
    for i in range(1, r + 1):
        y = ys[i - 1]
        size = 1 << (i - 1)
        if use_large_quota and i >= r - 2:
            quota = min(size, max(int(0.091 * n), 1)) - 1
        else:
            quota = size - 1
        block = [y]
        rest = []
        for v in available:
            if len(block) - 1 < quota and t.rows[y] >> v & 1:
                block.append(v)
            else:
                rest.append(v)
        available = rest
        while len(block) < size:
            block.append(available.pop(0))
        blocks.append(block)
    assert not available
    return blocks


def winning_bracket(
    t: Tournament,
    x: int,
    stream: RngStream | None = None,
    retries: int = 32,
) -> Bracket | None:
    """Constructive winning bracket for x, or None when this method fails.

    Selects round opponents y_1..y_r among the alternatives x dominates
    (preferring high outdegree), partitions the rest into power-of-two blocks
    each won by its y_i, and composes so x meets y_i in round i. A None
    return does not certify that x cannot win; only the exhaustive oracle
    (n <= 16) can do that.
    """
    if not _is_power_of_two(t.n):
        raise NotPowerOfTwo(f"need a power-of-two n, got {t.n}")
    if not 0 <= x < t.n:
        raise OutOfRange(f"alternative {x} outside [0, {t.n})")
    n = t.n
    if n == 1:
        return Bracket((0,))
    r = n.bit_length() - 1  # log2 n
    dominated = [v for v in range(n) if t.rows[x] >> v & 1]
    if len(dominated) < r:
        return None  # x cannot fill its r round opponents
    by_strength = sorted(dominated, key=lambda v: (-t.rows[v].bit_count(), v))
    rng = RngStream(0, x).generator() if stream is None else stream.generator()
    for attempt in range(max(1, retries)):
        if attempt == 0:
            chosen = by_strength[:r]
        else:
            pool = by_strength[: min(len(by_strength), max(r + attempt, 2 * r))]
            chosen = list(rng.choice(len(pool), size=r, replace=False))
            chosen = [pool[i] for i in chosen]
        # stronger opponents take the larger blocks
        ys = sorted(chosen, key=lambda v: (t.rows[v].bit_count(), v))
        blocks = _build_partition(t, x, ys, rng if attempt else None)
        leaves = [x]
        ok = True
        for y, block in zip(ys, blocks):
            sub_leaves = _subtournament_bracket(t, block, y)
            if sub_leaves is None:
                ok = False
                break
            leaves.extend(sub_leaves)
        if not ok:
            continue
        bracket = Bracket(tuple(leaves))
        if playout(t, bracket) == x:
            return bracket
    return None

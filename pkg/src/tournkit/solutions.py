"""Exact tournament solutions: k-kings, top cycle, dominating sets.

The k-king solver is the harness hot loop: it raises the reflexive reach
matrix to the k-th power by square-and-multiply on bit-packed rows, so one
boolean matrix product costs O(n^2 / wordsize) word operations per set bit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Tournament
from .errors import InvalidK, InvalidR, OutOfRange


class _MaxK:
    """Sentinel for the symbolic k = n - 1 (top cycle) setting."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "MAX"


MAX = _MaxK()


@dataclass(frozen=True)
class KingSet:
    """Alternatives that reach every other one via a path of length <= k."""

    k: object  # int >= 2 or MAX
    members: frozenset[int]


@dataclass(frozen=True)
class DominatingSet:
    """Set whose complement is dominated by at least r of its members."""

    r: int
    members: frozenset[int]


# -- reachability -----------------------------------------------------------


def reach_within(t: Tournament, src: int, k: int) -> set[int]:
    """Alternatives reachable from src by a directed path of length <= k.

    src itself is included (path of length 0).
    """
    if not 0 <= src < t.n:
        raise OutOfRange(f"alternative {src} outside [0, {t.n})")
    if k < 0:
        raise InvalidK(f"path length bound must be >= 0, got {k}")
    rows = t.rows
    visited = 1 << src
    frontier = visited
    for _ in range(k):
        grown = visited
        f = frontier
        while f:
            low = f & -f
            grown |= rows[low.bit_length() - 1]
            f ^= low
        frontier = grown & ~visited
        visited = grown
        if not frontier:
            break
    return {i for i in range(t.n) if visited >> i & 1}


def _bool_square(rows: list[int]) -> list[int]:
    """Boolean matrix product R * R on bit rows (each row includes itself)."""
    out = []
    for row in rows:
        acc = 0
        r = row
        while r:
            low = r & -r
            acc |= rows[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return out


def _bool_mul(left: list[int], right: list[int]) -> list[int]:
    out = []
    for row in left:
        acc = 0
        r = row
        while r:
            low = r & -r
            acc |= right[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return out


def _reach_rows(t: Tournament, k: int) -> list[int]:
    """Rows of (I | A)^k: bit j of row i set iff i reaches j in <= k steps."""
    n = t.n
    base = [t.rows[i] | (1 << i) for i in range(n)]
    if k >= n - 1:
        # the reflexive power saturates at the transitive closure by n-1
        reach = base
        steps = 1
        while steps < n - 1:
            nxt = _bool_square(reach)
            if nxt == reach:
                return reach
            reach = nxt
            steps *= 2
        return reach
    # square-and-multiply for small exponents
    result = None
    power = base
    e = k
    while e:
        if e & 1:
            result = power if result is None else _bool_mul(result, power)
        e >>= 1
        if e:
            power = _bool_square(power)
    return result if result is not None else [1 << i for i in range(n)]


def k_kings(t: Tournament, k) -> KingSet:
    """Alternatives reaching all others within k steps; k is an int >= 2 or MAX."""
    if k is MAX:
        k_eff = max(t.n - 1, 0)
    else:
        if not isinstance(k, int) or k < 2:
            raise InvalidK(f"k must be an integer >= 2 or MAX, got {k!r}")
        k_eff = k
    full = t.full_mask
    reach = _reach_rows(t, k_eff)
    members = frozenset(i for i in range(t.n) if reach[i] == full)
    return KingSet(k=k, members=members)


def top_cycle(t: Tournament) -> KingSet:
    """The (n-1)-kings, computed as the source component of the condensation.

    In a tournament every member of the source SCC beats every non-member, so
    its outdegree exceeds every outsider's; the source SCC is therefore the
    smallest outdegree-descending prefix that setwise beats its complement.
    """
    n = t.n
    order = sorted(range(n), key=lambda v: (-t.rows[v].bit_count(), v))
    prefix_mask = 0
    common = t.full_mask
    for m, v in enumerate(order, start=1):
        prefix_mask |= 1 << v
        common &= t.rows[v] | (1 << v)
        outside = t.full_mask & ~prefix_mask
        if common & outside == outside:
            members = frozenset(order[:m])
            return KingSet(k=MAX, members=members)
    return KingSet(k=MAX, members=frozenset(range(n)))


# -- dominating sets ----------------------------------------------------------


def dominating_set_greedy(t: Tournament) -> set[int]:
    """Dominating set of size <= ceil(log2 n) for n >= 2 (size 1 for n = 1).

    Repeatedly picks a maximum-outdegree alternative of the residual
    subtournament (lowest index on ties) and removes it with everything it
    dominates.
    """
    return _greedy_round(t, t.full_mask)


def _greedy_round(t: Tournament, allowed: int) -> set[int]:
    rows = t.rows
    chosen: set[int] = set()
    remaining = allowed
    while remaining:
        best = -1
        best_deg = -1
        r = remaining
        while r:
            low = r & -r
            v = low.bit_length() - 1
            deg = (rows[v] & remaining).bit_count()
            if deg > best_deg:
                best, best_deg = v, deg
            r ^= low
        chosen.add(best)
        remaining &= ~(rows[best] | (1 << best))
    return chosen


def is_r_dominating(t: Tournament, members, r: int) -> bool:
    """True iff every alternative outside members is beaten by >= r members."""
    member_mask = 0
    for v in members:
        if not 0 <= v < t.n:
            raise OutOfRange(f"alternative {v} outside [0, {t.n})")
        member_mask |= 1 << v
    for x in range(t.n):
        if member_mask >> x & 1:
            continue
        count = 0
        for v in members:
            if t.rows[v] >> x & 1:
                count += 1
        if count < r:
            return False
    return True


def r_dominating_set(t: Tournament, r: int) -> DominatingSet:
    """r rounds of the greedy dominating set on the residual alternatives.

    Round i covers V minus everything chosen so far, so each uncovered
    alternative picks up one distinct dominator per round.
    """
    if not 1 <= r <= t.n:
        raise InvalidR(f"r must satisfy 1 <= r <= {t.n}, got {r}")
    chosen_mask = 0
    members: set[int] = set()
    for _ in range(r):
        allowed = t.full_mask & ~chosen_mask
        if not allowed:
            break
        round_set = _greedy_round(t, allowed)
        members |= round_set
        for v in round_set:
            chosen_mask |= 1 << v
    return DominatingSet(r=r, members=frozenset(members))


def middle_vertex(t: Tournament) -> int:
    """An alternative whose indegree and outdegree both exceed n/4 - 1.

    Takes position floor(n/2) (1-indexed) of the stable nondecreasing
    outdegree order; ties break by ascending original index.
    """
    order = sorted(range(t.n), key=lambda v: (t.rows[v].bit_count(), v))
    pos = max(1, t.n // 2)
    return order[pos - 1]

"""Balls in prefilled bins.

``m(a; b; N)`` is the least product ``y_1 * ... * y_n`` over integer
distributions with ``b_i <= y_i <= a_i`` and ``sum(y) == N``. Below the
prefill total it is defined as ``prod(b)``; above the capacity total no
distribution exists and an ``InfeasibleError`` is raised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .errors import CapExceededError, DomainError, InfeasibleError

DEFAULT_CAP = 2**24
# int64 DP is used while every feasible product stays below this
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class BinProfile:
    capacities: tuple[int, ...]
    prefills: tuple[int, ...]
    total: int

    def __post_init__(self):
        caps = tuple(int(a) for a in self.capacities)
        pre = tuple(int(b) for b in self.prefills)
        if not caps:
            raise DomainError("need at least one bin")
        if len(caps) != len(pre):
            raise DomainError("capacities and prefills differ in length")
        for a, b in zip(caps, pre):
            if not 1 <= b <= a:
                raise DomainError(f"prefill {b} outside [1, {a}]")
        object.__setattr__(self, "capacities", caps)
        object.__setattr__(self, "prefills", pre)
        object.__setattr__(self, "total", int(self.total))

    @classmethod
    def unit(cls, capacities: Sequence[int], total: int) -> "BinProfile":
        return cls(tuple(capacities), (1,) * len(capacities), total)

    @property
    def n(self) -> int:
        return len(self.capacities)

    @property
    def prefill_total(self) -> int:
        return sum(self.prefills)

    @property
    def capacity_total(self) -> int:
        return sum(self.capacities)


def _non_increasing(xs: Sequence[int]) -> bool:
    return all(x >= y for x, y in zip(xs, xs[1:]))


def greedy_distribution(profile: BinProfile) -> tuple[int, ...]:
    """Prefill, then fill bins completely from left to right."""
    if profile.total > profile.capacity_total:
        raise InfeasibleError(f"{profile.total} balls exceed capacity {profile.capacity_total}")
    if profile.total < profile.prefill_total:
        raise DomainError("fewer balls than the prefill")
    y = list(profile.prefills)
    left = profile.total - profile.prefill_total
    for i, a in enumerate(profile.capacities):
        add = min(left, a - y[i])
        y[i] += add
        left -= add
    return tuple(y)


_NUMPY_MIN_BALLS = 256


@lru_cache(maxsize=8192)
def _dp_tables(caps: tuple[int, ...], pre: tuple[int, ...]) -> tuple[list, ...]:
    """Suffix tables: ``tab[i][r]`` = least product of bins i.. holding r balls.

    Infeasible entries are ``None``. ``tab[n] == [1]``.
    """
    n = len(caps)
    # numpy pays off only once the tables are long; tiny profiles stay in plain ints
    if sum(caps) > _NUMPY_MIN_BALLS and math.prod(caps) < _INT64_SAFE:
        inf = np.int64(_INT64_SAFE)
        cur = np.array([1], dtype=np.int64)
        tabs = [cur]
        for a, b in zip(reversed(caps), reversed(pre)):
            new = np.full(len(cur) + a, inf, dtype=np.int64)
            for y in range(b, a + 1):
                seg = new[y:y + len(cur)]
                cand = np.where(cur < inf, cur * y, inf)
                np.minimum(seg, cand, out=seg)
            cur = new
            tabs.append(cur)
        tabs.reverse()
        return tuple([int(v) if v < inf else None for v in t] for t in tabs)
    # arbitrary precision path for long/large profiles
    cur: list = [1]
    tabs = [cur]
    for a, b in zip(reversed(caps), reversed(pre)):
        new: list = [None] * (len(cur) + a)
        for r_old, v in enumerate(cur):
            if v is None:
                continue
            for y in range(b, a + 1):
                c = v * y
                if new[r_old + y] is None or c < new[r_old + y]:
                    new[r_old + y] = c
        cur = new
        tabs.append(cur)
    tabs.reverse()
    assert len(tabs) == n + 1
    return tuple(tabs)


def min_product_table(capacities: Sequence[int], prefills: Sequence[int] | None = None) -> list[int]:
    """``m(a; b; N)`` for every ``N`` in ``0..sum(a)`` (index = N)."""
    prefills = (1,) * len(capacities) if prefills is None else prefills
    BinProfile(tuple(capacities), tuple(prefills), 0)  # validation only
    caps, pre = tuple(capacities), tuple(prefills)
    top = _dp_tables(caps, pre)[0]
    floor = math.prod(pre)
    s = sum(pre)
    return [floor if N < s else top[N] for N in range(sum(caps) + 1)]


def min_product(profile: BinProfile) -> int:
    """``m(a; b; N)`` computed exactly."""
    N = profile.total
    if N > profile.capacity_total:
        raise InfeasibleError(f"{N} balls exceed capacity {profile.capacity_total}")
    if N <= profile.prefill_total:
        return math.prod(profile.prefills)
    if _non_increasing(profile.capacities) and _non_increasing(profile.prefills):
        return math.prod(greedy_distribution(profile))
    return _dp_tables(profile.capacities, profile.prefills)[0][N]


def min_product_witness(profile: BinProfile) -> tuple[int, tuple[int, ...]]:
    """Value and the lexicographically smallest argmin distribution.

    Requires ``sum(b) <= N <= sum(a)``.
    """
    N = profile.total
    if N > profile.capacity_total:
        raise InfeasibleError(f"{N} balls exceed capacity {profile.capacity_total}")
    if N < profile.prefill_total:
        raise DomainError("fewer balls than the prefill: no distribution exists")
    tabs = _dp_tables(profile.capacities, profile.prefills)
    best = tabs[0][N]
    y = []
    left, target = N, best
    for i, (a, b) in enumerate(zip(profile.capacities, profile.prefills)):
        rest = tabs[i + 1]
        for yi in range(b, a + 1):
            r = left - yi
            if 0 <= r < len(rest) and rest[r] is not None and yi * rest[r] == target:
                y.append(yi)
                left, target = r, rest[r]
                break
        else:  # pragma: no cover - table inconsistency
            raise AssertionError("argmin reconstruction failed")
    return best, tuple(y)


def min_product_closed_equal(a: int, n: int, N: int) -> int:
    """Closed form for equal capacities ``a`` and unit prefills."""
    if a < 2:
        raise DomainError("closed form needs a >= 2")
    if n < 1 or not n <= N <= n * a:
        raise DomainError(f"N={N} outside [{n}, {n * a}]")
    q, r = divmod(N - n, a - 1)
    return (r + 1) * a**q


def min_product_structured(a: Sequence[int], N: int) -> int:
    """Closed form for non-increasing capacities and unit prefills."""
    a = list(a)
    n = len(a)
    if n == 0 or min(a) < 1:
        raise DomainError("capacities must be positive")
    if not _non_increasing(a):
        raise DomainError("capacities must be non-increasing")
    if not n <= N <= sum(a):
        raise DomainError(f"N={N} outside [{n}, {sum(a)}]")
    rem, j = N - n, 0
    while j < n - 1 and rem >= a[j] - 1:
        rem -= a[j] - 1
        j += 1
    return (rem + 1) * math.prod(a[:j])


def brute_force_min_product(profile: BinProfile, cap: int = DEFAULT_CAP) -> tuple[int, tuple[int, ...]]:
    """Enumerate every feasible distribution; first argmin in lex order."""
    N = profile.total
    if not profile.prefill_total <= N <= profile.capacity_total:
        raise DomainError("brute force needs sum(b) <= N <= sum(a)")
    size = math.prod(a - b + 1 for a, b in zip(profile.capacities, profile.prefills))
    if size > cap:
        raise CapExceededError(f"{size} distributions exceed cap {cap}")
    ranges = [range(b, a + 1) for a, b in zip(profile.capacities, profile.prefills)]
    best, arg = None, None
    for y in product(*ranges):
        if sum(y) != N:
            continue
        p = math.prod(y)
        if best is None or p < best:
            best, arg = p, y
    return best, arg


def brute_force_table(capacities: Sequence[int], prefills: Sequence[int],
                      cap: int = DEFAULT_CAP) -> list[int | None]:
    """Enumerate all distributions at once; least product per ball count.

    Entry N is None where no distribution has N balls.
    """
    size = math.prod(a - b + 1 for a, b in zip(capacities, prefills))
    if size > cap:
        raise CapExceededError(f"{size} distributions exceed cap {cap}")
    sums = np.zeros(1, dtype=np.int64)
    prods = np.ones(1, dtype=np.int64)
    for a, b in zip(capacities, prefills):
        ys = np.arange(b, a + 1, dtype=np.int64)
        sums = (sums[:, None] + ys).ravel()
        prods = (prods[:, None] * ys).ravel()
    total = sum(capacities)
    big = np.iinfo(np.int64).max
    out = np.full(total + 1, big, dtype=np.int64)
    np.minimum.at(out, sums, prods)
    return [None if v == big else int(v) for v in out]


def saturation_test(profile: BinProfile) -> bool:
    """True iff the minimum equals the prefill product."""
    return min_product(profile) == math.prod(profile.prefills)


def m(capacities: Sequence[int], total: int, prefills: Sequence[int] | None = None) -> int:
    """Shorthand for ``min_product``; unit prefills by default."""
    prefills = (1,) * len(capacities) if prefills is None else tuple(prefills)
    return min_product(BinProfile(tuple(capacities), prefills, total))

"""Affine and projective spaces over GF(q): covers, holes, blocking sets, tangents.

Point sets and hyperplane families are handled as Python int bitmasks over a
fixed point enumeration, which keeps the exhaustive searches short and exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from .bins import BinProfile, min_product, min_product_witness
from .errors import BoundViolationError, CapExceededError, DomainError
from .poly import DEFAULT_CAP, GridSpec
from .ring import GF, Ring

Vector = tuple[int, ...]


def normalize(ring: Ring, v: Sequence[int]) -> Vector:
    """Scale so the first nonzero coordinate is 1."""
    v = tuple(int(x) for x in v)
    lead = next((x for x in v if x), None)
    if lead is None:
        raise DomainError("the zero vector is not a projective point")
    inv = ring.inv(lead)
    return tuple(ring.mul(inv, x) for x in v)


def _normalized_vectors(q: int, length: int) -> list[Vector]:
    return [v for v in product(range(q), repeat=length) if any(v) and next(x for x in v if x) == 1]


@dataclass(frozen=True)
class Space:
    kind: str  # "AG" or "PG"
    n: int
    q: int

    def __post_init__(self):
        if self.kind not in ("AG", "PG"):
            raise DomainError(f"space must be AG or PG, got {self.kind!r}")
        if self.n < 1:
            raise DomainError("dimension must be >= 1")
        GF(self.q)  # validates q

    @cached_property
    def ring(self) -> Ring:
        return GF(self.q)

    @property
    def num_points(self) -> int:
        if self.kind == "AG":
            return self.q**self.n
        return (self.q**(self.n + 1) - 1) // (self.q - 1)

    @property
    def num_hyperplanes(self) -> int:
        if self.kind == "AG":
            return self.q * (self.q**self.n - 1) // (self.q - 1)
        return self.num_points

    @cached_property
    def points(self) -> list[Vector]:
        if self.kind == "AG":
            return list(product(range(self.q), repeat=self.n))
        return _normalized_vectors(self.q, self.n + 1)

    @cached_property
    def hyperplanes(self) -> list:
        """PG: normalized dual vectors. AG: ``(c, r)`` for ``c . t + r = 0`` with ``c`` normalized."""
        if self.kind == "PG":
            return list(self.points)
        return [(c, r) for c in _normalized_vectors(self.q, self.n) for r in range(self.q)]

    @cached_property
    def point_index(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    @cached_property
    def incidence(self) -> np.ndarray:
        """Boolean matrix ``hyperplanes x points``."""
        ring = self.ring
        P = np.array(self.points, dtype=np.int64)
        if self.kind == "PG":
            H = np.array(self.hyperplanes, dtype=np.int64)
            return ring.matmul(H, P.T) == 0
        C = np.array([c for c, _ in self.hyperplanes], dtype=np.int64)
        R = np.array([r for _, r in self.hyperplanes], dtype=np.int64)
        return ring.add_arr(ring.matmul(C, P.T), R[:, None]) == 0

    @cached_property
    def hyperplane_masks(self) -> list[int]:
        return [_mask(np.flatnonzero(row)) for row in self.incidence]

    def check_cap(self, cap: int):
        if max(self.num_points, self.num_hyperplanes) > cap:
            raise CapExceededError(f"{self} has more than {cap} points or hyperplanes")

    def point(self, v: Sequence[int]) -> Vector:
        v = tuple(int(x) for x in v)
        if self.kind == "PG":
            if len(v) != self.n + 1:
                raise DomainError(f"projective points of PG({self.n},{self.q}) need {self.n + 1} coordinates")
            return normalize(self.ring, v)
        if len(v) != self.n or not all(0 <= x < self.q for x in v):
            raise DomainError(f"{v} is not a point of {self}")
        return v

    def hyperplane(self, v: Sequence[int]):
        """PG: dual vector. AG: ``(c_1, ..., c_n, r)``, scaled so ``c`` leads with 1."""
        v = tuple(int(x) for x in v)
        if len(v) != self.n + 1:
            raise DomainError(f"hyperplanes of {self} need {self.n + 1} coordinates")
        if self.kind == "PG":
            return normalize(self.ring, v)
        if not any(v[:-1]):
            raise DomainError("affine hyperplanes need a nonzero coefficient vector")
        w = normalize(self.ring, v[:-1] + (0,))
        inv = self.ring.inv(next(x for x in v[:-1] if x))
        return w[:-1], self.ring.mul(inv, v[-1])

    def mask_of(self, pts: Iterable[Sequence[int]]) -> int:
        m = 0
        for p in pts:
            m |= 1 << self.point_index[self.point(p)]
        return m

    def points_of(self, mask: int) -> list[Vector]:
        return [p for i, p in enumerate(self.points) if mask >> i & 1]

    def __str__(self):
        return f"{self.kind}({self.n},{self.q})"


def _mask(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def enumerate_space(space: Space, cap: int = DEFAULT_CAP) -> tuple[list, list]:
    space.check_cap(cap)
    return space.points, space.hyperplanes


def incident(point: Sequence[int], hyperplane: Sequence[int], ring: Ring) -> bool:
    """Projective incidence: dot product zero. Symmetric in its two arguments."""
    acc = 0
    for x, c in zip(point, hyperplane):
        acc = ring.add(acc, ring.mul(x, c))
    return acc == 0


def embed_point(ring: Ring, x: Sequence[int]) -> Vector:
    """AG(n,q) point ``x`` as the PG(n,q) point ``(1, x)``."""
    return (ring.one,) + tuple(x)


def embed_hyperplane(c: Sequence[int], r: int) -> Vector:
    """AG hyperplane ``c . t + r = 0`` as the PG hyperplane ``(r, c)``."""
    return (int(r),) + tuple(c)


def hyperplane_at_infinity(n: int) -> Vector:
    return (1,) + (0,) * n


# ---------------------------------------------------------------------------
# covers and holes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverSpec:
    space: Space
    hyperplanes: tuple = ()

    def __post_init__(self):
        hs = tuple(self.space.hyperplane(h) if not (self.space.kind == "AG" and len(h) == 2
                                                     and isinstance(h[0], tuple)) else h
                   for h in self.hyperplanes)
        if len(set(hs)) != len(hs):
            raise DomainError("cover hyperplanes must be distinct")
        object.__setattr__(self, "hyperplanes", hs)

    @property
    def mask(self) -> int:
        idx = {h: i for i, h in enumerate(self.space.hyperplanes)}
        covered = 0
        for h in self.hyperplanes:
            covered |= self.space.hyperplane_masks[idx[h]]
        return covered


def holes(cover: CoverSpec) -> list[Vector]:
    full = (1 << cover.space.num_points) - 1
    return cover.space.points_of(full & ~cover.mask)


def holes_lower_bound(n: int, q: int, k: int) -> int:
    """``m(q, ..., q; nq - k + 1)`` holes for a partial cover by ``k`` hyperplanes of PG(n,q)."""
    if k < 1:
        raise DomainError("cover size must be >= 1")
    value = min_product(BinProfile.unit((q,) * n, n * q - k + 1))
    if n >= 2 and q <= k < 2 * q:
        a = k - q
        special = q**(n - 1) - a * q**(n - 2)
        if special != value:
            raise BoundViolationError(f"specialised hole count {special} != {value}")
    return value


def _check_hole_bound(cover: CoverSpec) -> int:
    found = len(holes(cover))
    if cover.space.kind == "PG" and found:
        bound = holes_lower_bound(cover.space.n, cover.space.q, len(cover.hyperplanes))
        if found < bound:
            raise BoundViolationError(f"{found} holes < bound {bound}")
    return found


def missing_hyperplanes(space: Space, S: Iterable[Sequence[int]]) -> tuple[int, int]:
    """Hyperplanes of AG(n,q) disjoint from ``S``, counted through the PG embedding."""
    if space.kind != "AG":
        raise DomainError("missing_hyperplanes works on AG(n,q)")
    pts = sorted({space.point(p) for p in S})
    if not pts:
        raise DomainError("point set must be nonempty")
    ring = space.ring
    emb = [embed_point(ring, p) for p in pts]
    count = 0
    for c, r in space.hyperplanes:
        h = embed_hyperplane(c, r)
        if not any(incident(p, h, ring) for p in emb):
            count += 1
    n, q = space.n, space.q
    N = n * q - len(pts) + 1
    bound = (min_product(BinProfile.unit((q,) * n, N)) - 1) if N >= 0 else 0
    if count < bound:
        raise BoundViolationError(f"{count} missed hyperplanes < bound {bound}")
    return count, bound


# ---------------------------------------------------------------------------
# blocking sets
# ---------------------------------------------------------------------------

def is_blocking_mask(space: Space, mask: int) -> bool:
    return all(h & mask for h in space.hyperplane_masks)


def is_blocking_set(space: Space, B: Iterable[Sequence[int]]) -> bool:
    return is_blocking_mask(space, space.mask_of(B))


def _tangents(space: Space, mask: int, i: int) -> int:
    bit = 1 << i
    return sum(1 for h in space.hyperplane_masks if h & mask == bit)


def essential_points(space: Space, B: Iterable[Sequence[int]]) -> list[Vector]:
    mask = space.mask_of(B)
    if not is_blocking_mask(space, mask):
        raise DomainError("not a blocking set")
    out = []
    for i, p in enumerate(space.points):
        if not mask >> i & 1:
            continue
        essential = not is_blocking_mask(space, mask & ~(1 << i))
        if essential != (_tangents(space, mask, i) > 0):
            raise BoundViolationError(f"essential/tangent mismatch at {p}")
        if essential:
            out.append(p)
    return out


def tangent_count(space: Space, B: Iterable[Sequence[int]], x: Sequence[int]) -> tuple[int, int]:
    """Hyperplanes meeting ``B`` exactly in ``x``, and the lower bound ``m(q..q; nq - #B + 2)``."""
    B = [space.point(p) for p in B]
    mask = space.mask_of(B)
    x = space.point(x)
    i = space.point_index[x]
    if not is_blocking_mask(space, mask):
        raise DomainError("not a blocking set")
    if not mask >> i & 1:
        raise DomainError(f"{x} is not in the set")
    count = _tangents(space, mask, i)
    if count == 0:
        raise DomainError(f"{x} is not essential")
    n, q, size = space.n, space.q, bin(mask).count("1")
    N = n * q - size + 2
    if N > n * q:
        bound = 0
    else:
        bound = min_product(BinProfile.unit((q,) * n, N))
    if count < bound:
        raise BoundViolationError(f"{count} tangents < bound {bound}")
    if space.kind == "PG":
        a = size - q - 1
        if n >= 2 and 0 <= a < q:
            special = q**(n - 1) - a * q**(n - 2)
            if special != bound:
                raise BoundViolationError(f"specialised tangent count {special} != {bound}")
        s = 2 * q - size
        if n == 2 and s >= 0 and count < s + 1:
            raise BoundViolationError(f"{count} tangent lines < s + 1 = {s + 1}")
    return count, bound


@dataclass
class BlockingSearch:
    size: int | None
    witness: list[Vector] | None
    checked: dict[int, int] = field(default_factory=dict)


def min_blocking_search(space: Space, max_size: int, cap: int = DEFAULT_CAP) -> BlockingSearch:
    """Smallest blocking set of size ``<= max_size`` by lexicographic subset search."""
    N = space.num_points
    total = sum(math.comb(N, k) for k in range(1, max_size + 1))
    if total > cap:
        raise CapExceededError(f"{total} subsets exceed cap {cap}")
    hyps = space.hyperplane_masks
    result = BlockingSearch(None, None)
    for k in range(1, max_size + 1):
        n_checked = 0
        for combo in combinations(range(N), k):
            n_checked += 1
            m = _mask(combo)
            if all(h & m for h in hyps):
                result.checked[k] = n_checked
                result.size, result.witness = k, [space.points[i] for i in combo]
                return result
        result.checked[k] = n_checked
    return result


def coordinate_cross(n: int, q: int) -> list[Vector]:
    """Union of the coordinate axes of AG(n,q): ``n(q-1)+1`` points."""
    pts = {(0,) * n}
    for i in range(n):
        for x in range(1, q):
            pts.add(tuple(x if j == i else 0 for j in range(n)))
    return sorted(pts)


# ---------------------------------------------------------------------------
# covering ring grids by hyperplanes
# ---------------------------------------------------------------------------

def _grid_hyperplane_masks(A: GridSpec, cap: int) -> list[int]:
    """Distinct nonempty zero sets on ``A`` of ``c . t + r`` with leading coefficient 1."""
    ring = A.ring
    count = A.n * ring.size**A.n
    if count > cap or A.size > cap:
        raise CapExceededError(f"{count} hyperplanes exceed cap {cap}")
    P = A.point_array
    masks = set()
    for c in product(range(ring.size), repeat=A.n):
        if not any(c) or next(x for x in c if x) != ring.one:
            continue
        vals = ring.matmul(np.array([c], dtype=np.int64), P.T)[0]
        for r in range(ring.size):
            zero = ring.add_arr(vals, np.full_like(vals, r)) == 0
            if zero.any():
                masks.add(_mask(np.flatnonzero(zero)))
    return sorted(masks)


def grid_cover_min(A: GridSpec, cap: int = DEFAULT_CAP) -> int:
    """Least number of affine hyperplanes covering every point of ``A``."""
    masks = _grid_hyperplane_masks(A, cap)
    full = (1 << A.size) - 1
    upper = min(A.sizes)  # parallel hyperplanes t_i = x, x in A_i
    budget = cap
    for k in range(1, upper):
        budget -= math.comb(len(masks), k)
        if budget < 0:
            raise CapExceededError(f"cover search beyond cap {cap}")
        for combo in combinations(masks, k):
            acc = 0
            for m in combo:
                acc |= m
            if acc == full:
                return k
    return upper


def axis_cover(A: GridSpec, d: int) -> list[tuple[int, int]]:
    """``d`` hyperplanes ``t_i = x`` leaving exactly ``m(a; sum(a) - d)`` points uncovered.

    Returned as ``(coordinate, element)`` pairs; coordinate ``i`` receives the
    first ``a_i - y_i`` elements of ``A_i`` for the least argmin ``y``.
    """
    a = A.sizes
    if not 0 <= d <= sum(x - 1 for x in a):
        raise DomainError(f"need 0 <= d <= {sum(x - 1 for x in a)}")
    _, y = min_product_witness(BinProfile.unit(a, sum(a) - d))
    return [(i, x) for i, (s, yi) in enumerate(zip(A.sets, y)) for x in s.elements[:len(s) - yi]]


def axis_cover_holes(A: GridSpec, cover: Sequence[tuple[int, int]]) -> int:
    P = A.point_array
    hit = np.zeros(len(P), dtype=bool)
    for i, x in cover:
        hit |= P[:, i] == x
    return int((~hit).sum())


def load_vectors(text: str) -> list[list[int]]:
    """Parse a JSON list of coordinate vectors."""
    data = json.loads(text)
    if not isinstance(data, list) or not all(isinstance(v, list) for v in data):
        raise DomainError("expected a JSON list of coordinate vectors")
    return [[int(x) for x in v] for v in data]

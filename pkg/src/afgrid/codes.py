"""Evaluation codes on grids: generalized Reed-Muller and (generalized) affine grid codes.

A code is the set of value tables, on a Condition (D) grid, of polynomials
with ``deg_{t_i} <= a_i - b_i`` and total degree ``<= d``. Minimum weight is
available from the balls-in-bins formula and from exhaustive enumeration
(direct over messages, or over the dual code followed by the MacWilliams
transform when the code is over a field).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Sequence

import numpy as np

from .bins import BinProfile, min_product
from .bounds import klp_min_weight, lrmv_min_weight
from .errors import BoundViolationError, CapExceededError, DomainError
from .poly import DEFAULT_CAP, GridSpec, Monomial, monomial_values
from .ring import GF, Ring

# low-part table of the meet-in-the-middle enumeration holds at most this many entries
_TABLE_BUDGET = 2**22


@dataclass(frozen=True)
class CodeSpec:
    grid: GridSpec
    order: int
    prefills: tuple[int, ...] = ()
    kind: str = "gagc"

    def __post_init__(self):
        b = tuple(self.prefills) or (1,) * self.grid.n
        if len(b) != self.grid.n:
            raise DomainError("one prefill per coordinate required")
        for x, a in zip(b, self.grid.sizes):
            if not 1 <= x <= a:
                raise DomainError(f"prefill {x} outside [1, {a}]")
        object.__setattr__(self, "prefills", b)
        room = sum(a - x for a, x in zip(self.grid.sizes, b))
        if not 0 <= self.order <= room:
            raise DomainError(f"order {self.order} outside [0, {room}]")
        if not self.grid.satisfies_d:
            raise DomainError("code grids must satisfy Condition (D)")

    @property
    def ring(self) -> Ring:
        return self.grid.ring

    @property
    def length(self) -> int:
        return self.grid.size

    @property
    def caps(self) -> tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.grid.sizes, self.prefills))


def grm(q: int, n: int, d: int) -> CodeSpec:
    return CodeSpec(GridSpec.full(GF(q), n), d, (), "grm")


def agc(grid: GridSpec, d: int) -> CodeSpec:
    return CodeSpec(grid, d, (), "agc")


def gagc(grid: GridSpec, d: int, prefills: Sequence[int]) -> CodeSpec:
    return CodeSpec(grid, d, tuple(prefills), "gagc")


def monomial_basis(spec: CodeSpec) -> list[Monomial]:
    """Exponent vectors with ``i_j <= a_j - b_j`` and ``sum <= d``, graded lex order."""
    monos = [m for m in product(*(range(c + 1) for c in spec.caps)) if sum(m) <= spec.order]
    return sorted(monos, key=lambda m: (sum(m), m))


def dimension(spec: CodeSpec) -> int:
    return len(monomial_basis(spec))


@dataclass
class GeneratorMatrix:
    rows: np.ndarray
    basis: list[Monomial]
    points: list[tuple[int, ...]] = field(repr=False)

    def to_csv(self, ring: Ring) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["monomial"] + ["(" + ",".join(ring.format_element(x) for x in p) + ")"
                                   for p in self.points])
        for mono, row in zip(self.basis, self.rows):
            w.writerow([_mono_str(mono)] + [ring.format_element(int(v)) for v in row])
        return buf.getvalue()


def _mono_str(mono: Monomial) -> str:
    parts = [f"t{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(mono) if e]
    return "*".join(parts) or "1"


def generator_matrix(spec: CodeSpec, cap: int = DEFAULT_CAP) -> GeneratorMatrix:
    if spec.length > cap:
        raise CapExceededError(f"code length {spec.length} exceeds cap {cap}")
    basis = monomial_basis(spec)
    rows = monomial_values(basis, spec.grid)
    pts = [tuple(int(v) for v in p) for p in spec.grid.point_array]
    return GeneratorMatrix(rows, basis, pts)


def encode(spec: CodeSpec, message: Sequence, gen: GeneratorMatrix | None = None) -> tuple[int, ...]:
    gen = gen or generator_matrix(spec)
    if len(message) != len(gen.basis):
        raise DomainError(f"message length {len(message)} != dimension {len(gen.basis)}")
    ring = spec.ring
    msg = [m if isinstance(m, int) and 0 <= m < ring.size else ring.parse_element(m) for m in message]
    word = ring.matmul(np.array([msg], dtype=np.int64).reshape(1, -1), gen.rows)[0]
    return tuple(int(v) for v in word)


# ---------------------------------------------------------------------------
# linear algebra over a field
# ---------------------------------------------------------------------------

def rref(ring: Ring, M) -> tuple[list[list[int]], list[int]]:
    if not ring.is_field:
        raise DomainError(f"row reduction needs a field, got {ring}")
    A = [[int(v) for v in row] for row in np.asarray(M)]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = ring.inv(A[r][c])
        A[r] = [ring.mul(inv, v) for v in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(ring: Ring, M) -> int:
    return len(rref(ring, M)[1])


def nullspace(ring: Ring, M) -> np.ndarray:
    """Basis (as rows) of ``{y : M y = 0}``."""
    M = np.asarray(M)
    cols = M.shape[1]
    R, pivots = rref(ring, M)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = ring.neg(R[r][fc])
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)


# ---------------------------------------------------------------------------
# enumeration of all codewords spanned by a matrix
# ---------------------------------------------------------------------------

def _lex_messages(q: int, length: int) -> np.ndarray:
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.meshgrid(*([np.arange(q, dtype=np.int64)] * length), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _leading_is_one(msgs: np.ndarray) -> np.ndarray:
    nz = msgs != 0
    has = nz.any(axis=1)
    first = np.argmax(nz, axis=1)
    lead = msgs[np.arange(len(msgs)), first]
    return has & (lead == 1)


def _scan(ring: Ring, G: np.ndarray, normalized: bool):
    """Yield ``(messages, weights)`` chunks covering the span of ``G``'s rows.

    Messages come in lexicographic order (first row most significant). With
    ``normalized`` only messages whose first nonzero entry is 1 are produced
    and the zero message is skipped.
    """
    k, N = G.shape
    q = ring.size
    low = k
    while low > 0 and q**low * max(N, 1) > _TABLE_BUDGET:
        low -= 1
    high = k - low
    low_msgs = _lex_messages(q, low)
    low_words = ring.matmul(low_msgs, G[high:]) if low else np.zeros((1, N), dtype=np.int64)
    low_norm = _leading_is_one(low_msgs) if normalized else None
    for hm in product(range(q), repeat=high):
        hm_arr = np.array(hm, dtype=np.int64)
        if any(hm):
            if normalized and hm[next(i for i, v in enumerate(hm) if v)] != 1:
                continue
            hw = ring.matmul(hm_arr.reshape(1, -1), G[:high])
            words = ring.add_arr(low_words, hw)
            msgs_low = low_msgs
        else:
            words, msgs_low = low_words, low_msgs
            if normalized:
                words, msgs_low = words[low_norm], msgs_low[low_norm]
        if len(msgs_low) == 0:
            continue
        weights = np.count_nonzero(words, axis=1)
        msgs = np.concatenate([np.broadcast_to(hm_arr, (len(msgs_low), high)), msgs_low], axis=1)
        yield msgs, weights, words


def _direct_min(ring: Ring, G: np.ndarray):
    best, best_msg, best_word = None, None, None
    for msgs, weights, words in _scan(ring, G, normalized=ring.is_field):
        if not ring.is_field:
            keep = msgs.any(axis=1)
            msgs, weights, words = msgs[keep], weights[keep], words[keep]
            if len(weights) == 0:
                continue
        i = int(np.argmin(weights))
        if best is None or weights[i] < best:
            best, best_msg, best_word = int(weights[i]), msgs[i].copy(), words[i].copy()
    return best, best_msg, best_word


def _span_distribution(ring: Ring, G: np.ndarray) -> list[int]:
    N = G.shape[1]
    dist = np.zeros(N + 1, dtype=object)
    if ring.is_field:
        for _, weights, _ in _scan(ring, G, normalized=True):
            dist += np.bincount(weights, minlength=N + 1).astype(object) * (ring.size - 1)
        dist[0] += 1
    else:
        for _, weights, _ in _scan(ring, G, normalized=False):
            dist += np.bincount(weights, minlength=N + 1).astype(object)
    return [int(v) for v in dist]


def krawtchouk(j: int, i: int, N: int, q: int) -> int:
    return sum((-1)**s * (q - 1)**(j - s) * math.comb(i, s) * math.comb(N - i, j - s)
               for s in range(j + 1))


def macwilliams(dual_dist: Sequence[int], q: int) -> list[int]:
    """Weight distribution of a code from that of its dual."""
    N = len(dual_dist) - 1
    size = sum(dual_dist)
    out = []
    for j in range(N + 1):
        num = sum(B * krawtchouk(j, i, N, q) for i, B in enumerate(dual_dist) if B)
        if num % size:
            raise AssertionError("MacWilliams transform is not integral")
        out.append(num // size)
    return out


@dataclass(frozen=True)
class BruteForceResult:
    weight: int
    witness: tuple[int, ...] | None
    message: tuple[int, ...] | None
    method: str


def _choose_route(spec: CodeSpec, k: int, cap: int) -> str:
    q, N = spec.ring.size, spec.length
    if q**k <= cap:
        return "direct"
    if spec.ring.is_field and q**(N - k) <= cap:
        return "dual"
    raise CapExceededError(f"{q}^{k} messages and {q}^{N - k} dual messages both exceed cap {cap}")


def min_weight_bruteforce(spec: CodeSpec, cap: int = DEFAULT_CAP, method: str = "auto") -> BruteForceResult:
    """Exhaustive minimum Hamming weight.

    ``direct`` enumerates every nonzero message (up to scalars over a field)
    and returns the first minimum-weight codeword in enumeration order.
    ``dual`` enumerates the dual code and applies MacWilliams; it yields no
    witness.
    """
    gen = generator_matrix(spec, cap)
    k = len(gen.basis)
    ring = spec.ring
    route = _choose_route(spec, k, cap) if method == "auto" else method
    if route == "direct":
        if ring.size**k > cap:
            raise CapExceededError(f"{ring.size}^{k} messages exceed cap {cap}")
        w, msg, word = _direct_min(ring, gen.rows)
        return BruteForceResult(w, tuple(int(v) for v in word), tuple(int(v) for v in msg), "direct")
    if route == "dual":
        dist = weight_distribution(spec, cap, method="dual", gen=gen)
        w = next(i for i, A in enumerate(dist) if i > 0 and A > 0)
        return BruteForceResult(w, None, None, "dual")
    raise DomainError(f"unknown method {method!r}")


def weight_distribution(spec: CodeSpec, cap: int = DEFAULT_CAP, method: str = "auto",
                        gen: GeneratorMatrix | None = None) -> list[int]:
    """Number of codewords of each Hamming weight ``0..N`` (reported, not a theorem)."""
    gen = gen or generator_matrix(spec, cap)
    k = len(gen.basis)
    ring = spec.ring
    route = _choose_route(spec, k, cap) if method == "auto" else method
    if route == "direct":
        if ring.size**k > cap:
            raise CapExceededError(f"{ring.size}^{k} messages exceed cap {cap}")
        return _span_distribution(ring, gen.rows)
    if route == "dual":
        if not ring.is_field:
            raise DomainError("the dual route needs a field")
        H = nullspace(ring, gen.rows)
        if ring.size**len(H) > cap:
            raise CapExceededError(f"{ring.size}^{len(H)} dual messages exceed cap {cap}")
        if len(H) == 0:
            dual = [1] + [0] * spec.length
        else:
            dual = _span_distribution(ring, H)
        return macwilliams(dual, ring.size)
    raise DomainError(f"unknown method {method!r}")


def min_weight_formula(spec: CodeSpec) -> int:
    """``m(a; b; sum(a) - d)``, cross-checked against the piecewise and KLP forms."""
    a = spec.grid.sizes
    value = min_product(BinProfile(a, spec.prefills, sum(a) - spec.order))
    if all(b == 1 for b in spec.prefills):
        other = lrmv_min_weight(sorted(a, reverse=True), spec.order)
        if other != value:
            raise BoundViolationError(f"piecewise form {other} != {value} for {spec}")
    if spec.kind == "grm" and spec.order >= 1:
        other = klp_min_weight(spec.grid.n, spec.ring.size, spec.order).value
        if other != value:
            raise BoundViolationError(f"KLP form {other} != {value}")
    return value


# ---------------------------------------------------------------------------
# exact minimum weight beyond the enumeration cap
# ---------------------------------------------------------------------------

def _information_sets(ring: Ring, G: np.ndarray) -> list[tuple[np.ndarray, int]]:
    """Row-reduced generators on disjoint column blocks, with their ranks.

    In the j-th matrix the first ``r_j`` rows carry unit pivots inside block j,
    so a message of weight ``u`` yields at least ``u - (k - r_j)`` nonzeros there.
    """
    k, N = G.shape
    remaining = list(range(N))
    out = []
    while remaining:
        rest = set(remaining)
        order = remaining + [c for c in range(N) if c not in rest]
        R, piv = rref(ring, G[:, order])
        inside = [order[p] for p in piv if p < len(remaining)]
        if not inside:
            break
        Gs = np.zeros_like(G)
        Gs[:, order] = np.array(R, dtype=np.int64)
        out.append((Gs, len(inside)))
        taken = set(inside)
        remaining = [c for c in remaining if c not in taken]
    return out


def _weight_level(ring: Ring, Gs: np.ndarray, w: int):
    """Yield ``(weights, words)`` for all messages of Hamming weight ``w`` with leading entry 1."""
    k, N = Gs.shape
    q = ring.size
    units = np.arange(1, q, dtype=np.int64)
    if w == 1:
        yield np.count_nonzero(Gs, axis=1), Gs
        return
    # pair table: rows i < j with coefficients (c_i, c_j), grouped by i
    scaled = ring.mul_arr(units[None, :, None], Gs[:, None, :])  # k x (q-1) x N
    pair_first, pair_words, pair_lead1 = [], [], []
    for i in range(k - 1):
        a = scaled[i][:, None, None, :]                 # ci
        b = scaled[i + 1:][None, :, :, :]               # j, cj
        words = ring.add_arr(a, b).reshape(-1, N)
        pair_words.append(words)
        pair_first.append(np.full(len(words), i))
        lead = np.repeat(units, (k - 1 - i) * (q - 1)) == 1
        pair_lead1.append(lead)
    if not pair_words:
        return
    pw = np.concatenate(pair_words)
    pf = np.concatenate(pair_first)
    pl = np.concatenate(pair_lead1)
    if w == 2:
        yield np.count_nonzero(pw[pl], axis=1), pw[pl]
        return
    starts = np.searchsorted(pf, np.arange(k + 1))
    s = w - 2
    for prefix in combinations(range(k), s):
        lo = starts[prefix[-1] + 1]
        if lo >= len(pw):
            continue
        # prefix sums with first coefficient 1
        acc = Gs[prefix[0]][None, :]
        for r in prefix[1:]:
            acc = ring.add_arr(acc[:, None, :], scaled[r][None, :, :]).reshape(-1, N)
        words = ring.add_arr(acc[:, None, :], pw[lo:][None, :, :]).reshape(-1, N)
        yield np.count_nonzero(words, axis=1), words


def _infoset_min(ring: Ring, G: np.ndarray, cap: int):
    """Brouwer-Zimmermann search; returns (weight, codeword) or raises past ``cap``."""
    k, N = G.shape
    sets = _information_sets(ring, G)
    best, witness = N + 1, None
    for w in range(1, k + 1):
        count = math.comb(k, w) * (ring.size - 1)**(w - 1)
        if count > cap:
            raise CapExceededError(f"weight-{w} level has {count} messages per set, cap {cap}")
        for Gs, _ in sets:
            for weights, words in _weight_level(ring, Gs, w):
                i = int(np.argmin(weights))
                if weights[i] < best:
                    best, witness = int(weights[i]), words[i].copy()
        lower = sum(max(0, w + 1 - (k - r)) for _, r in sets)
        if lower >= best:
            return best, witness
    return best, witness


def _is_full_space(grid: GridSpec) -> bool:
    q = grid.ring.size
    return all(tuple(s.elements) == tuple(range(q)) for s in grid.sets)


class _Eliminator:
    """Incremental Gaussian elimination of parity-check columns.

    Over fields where addition is XOR of element indices (characteristic 2)
    a vector is packed into one Python int; otherwise it is a tuple reduced
    through lookup tables. A basis is a list of ``(pivot, multiples)`` with
    ``multiples[c] = c * b`` for the normalised vector ``b``.
    """

    def __init__(self, ring: Ring):
        q = ring.size
        self.ring = ring
        self.xor = all(ring.add(x, y) == x ^ y for x in range(q) for y in range(q))
        self.bits = max(1, (q - 1).bit_length())
        self.mask = (1 << self.bits) - 1
        self.mul = [[ring.mul(a, b) for b in range(q)] for a in range(q)]
        self.sub = [[ring.sub(a, b) for b in range(q)] for a in range(q)]

    def encode(self, col):
        col = [int(x) for x in col]
        if not self.xor:
            return tuple(col)
        return sum(x << (self.bits * i) for i, x in enumerate(col))

    def is_zero(self, v) -> bool:
        return v == 0 if self.xor else not any(v)

    def _unpack(self, v, m):
        return [(v >> (self.bits * i)) & self.mask for i in range(m)]

    def reduce(self, basis, v):
        if self.xor:
            b, mk = self.bits, self.mask
            for p, mults in basis:
                c = (v >> (b * p)) & mk
                if c:
                    v ^= mults[c]
            return v
        sub = self.sub
        for p, mults in basis:
            c = v[p]
            if c:
                v = tuple([sub[x][y] for x, y in zip(v, mults[c])])
        return v

    def push(self, basis, v, m: int):
        vals = self._unpack(v, m) if self.xor else list(v)
        p = next(i for i, x in enumerate(vals) if x)
        inv = self.ring.inv(vals[p])
        unit = [self.mul[inv][x] for x in vals]
        mults = [self.encode([self.mul[c][x] for x in unit]) for c in range(self.ring.size)]
        return basis + [(p, mults)]


def _frame_search(ring: Ring, spec: CodeSpec, G: np.ndarray, cap: int):
    """Least dependent set of parity-check columns, up to affine equivalence.

    The code is invariant under affine substitutions of GF(q)^n, so the
    support of a minimum-weight word can be moved to contain the frame
    ``0, e_1, ..., e_r`` of its affine span. Sets are grown by iterative
    deepening; the first dependent set found has minimum size.
    """
    n = spec.grid.n
    H = nullspace(ring, G)
    pts = [tuple(int(v) for v in p) for p in spec.grid.point_array]
    m = len(H)
    el = _Eliminator(ring)
    col = {p: el.encode(H[:, i]) for i, p in enumerate(pts)}
    reduce = el.reduce

    def push(basis, v):
        return el.push(basis, v, m)

    def frames():
        for r in range(n + 1):
            frame = [tuple(1 if j == i else 0 for j in range(n)) for i in range(r)]
            frame = [tuple([0] * n)] + frame
            fs = set(frame)
            flat = [p for p in pts if all(x == 0 for x in p[r:]) and p not in fs]
            yield frame, flat

    visited = 0
    for size in range(1, m + 2):
        for frame, flat in frames():
            if len(frame) > size:
                continue
            basis, dep = [], None
            for idx, p in enumerate(frame):
                v = reduce(basis, col[p])
                if el.is_zero(v):
                    dep = frame[:idx + 1]
                    break
                basis = push(basis, v)
            if dep is not None:
                if len(dep) == size:
                    return size, _support_word(ring, H, pts, dep)
                continue
            need = size - len(frame)
            stack = [(0, basis, [])]
            while stack:
                start, bas, chosen = stack.pop()
                for j in range(len(flat) - 1, start - 1, -1):
                    if need - len(chosen) - 1 > len(flat) - j - 1:
                        continue
                    visited += 1
                    if visited > cap:
                        raise CapExceededError(f"frame search visited more than {cap} sets")
                    v = reduce(bas, col[flat[j]])
                    if el.is_zero(v):
                        if len(chosen) + 1 == need:
                            S = frame + chosen + [flat[j]]
                            return size, _support_word(ring, H, pts, S)
                        continue
                    if len(chosen) + 1 < need:
                        stack.append((j + 1, push(bas, v), chosen + [flat[j]]))
    raise AssertionError("no dependent set found")  # pragma: no cover


def _preserves(ring: Ring, G: np.ndarray, perm: np.ndarray) -> bool:
    return rank(ring, np.vstack([G, G[:, perm]])) == len(G)


def _automorphisms(ring: Ring, spec: CodeSpec, G: np.ndarray, cap: int) -> np.ndarray:
    """Coordinate permutations induced by grid-preserving affine substitutions.

    Generators: ``t_i -> a t_i + c`` mapping ``A_i`` onto itself, swaps of
    coordinates with equal sets and caps, and shears ``t_i -> t_i + c t_j``
    when ``A_i`` is the whole field. Each generator is kept only if it maps
    the code onto itself; the closure is returned as a ``(|G|, N)`` array.
    """
    grid = spec.grid
    n, q = grid.n, ring.size
    pts = [tuple(int(v) for v in p) for p in grid.point_array]
    index = {p: i for i, p in enumerate(pts)}
    sets = [frozenset(s.elements) for s in grid.sets]
    maps = []
    for i in range(n):
        for a in range(1, q):
            for c in range(q):
                if (a, c) != (1, 0) and {ring.add(ring.mul(a, x), c) for x in sets[i]} == sets[i]:
                    maps.append(lambda p, i=i, a=a, c=c: p[:i] + (ring.add(ring.mul(a, p[i]), c),) + p[i + 1:])
    for i, j in combinations(range(n), 2):
        if sets[i] == sets[j] and spec.caps[i] == spec.caps[j]:
            maps.append(lambda p, i=i, j=j: tuple(p[j] if k == i else p[i] if k == j else x
                                                  for k, x in enumerate(p)))
    for i in range(n):
        if len(sets[i]) != q:
            continue
        for j in range(n):
            if j != i:
                for c in range(1, q):
                    maps.append(lambda p, i=i, j=j, c=c: p[:i] + (ring.add(p[i], ring.mul(c, p[j])),) + p[i + 1:])
    ident = np.arange(len(pts), dtype=np.int16)
    seen = {ident.tobytes()}
    group, gens = [ident], []
    for f in maps:
        perm = np.array([index[f(p)] for p in pts], dtype=np.int16)
        if perm.tobytes() in seen or not _preserves(ring, G, perm):
            continue
        gens.append(perm)
        # re-close: every element is a word in the kept generators
        frontier = list(group)
        while frontier:
            nxt = []
            for g in frontier:
                for h in gens:
                    gh = g[h]
                    key = gh.tobytes()
                    if key not in seen:
                        seen.add(key)
                        group.append(gh)
                        nxt.append(gh)
                        if len(group) > cap:
                            raise CapExceededError(f"automorphism group larger than cap {cap}")
            frontier = nxt
    return np.array(group)


def _orbit_search(ring: Ring, spec: CodeSpec, G: np.ndarray, cap: int):
    """Least dependent set of parity-check columns, pruned by code automorphisms.

    A support containing the points chosen so far can be moved by their
    pointwise stabilizer so that its next point is an orbit representative;
    once the stabilizer is trivial the remaining points are plain
    combinations. Sizes grow one at a time, so the first dependent set is a
    minimum-weight support.
    """
    H = nullspace(ring, G)
    pts = [tuple(int(v) for v in p) for p in spec.grid.point_array]
    N, m = len(pts), len(H)
    el = _Eliminator(ring)
    cols = [el.encode(H[:, i]) for i in range(N)]
    group = _automorphisms(ring, spec, G, cap)
    visited = 0
    reduce = el.reduce

    def push(basis, v):
        return el.push(basis, v, m)

    def plain(size, chosen, basis):
        nonlocal visited
        rest = [i for i in range(N) if i not in set(chosen)]
        stack = [(0, basis, chosen)]
        while stack:
            start, bas, ch = stack.pop()
            need = size - len(ch)
            for j in range(len(rest) - 1, start - 1, -1):
                if need - 1 > len(rest) - j - 1:
                    continue
                visited += 1
                if visited > cap:
                    raise CapExceededError(f"orbit search visited more than {cap} sets")
                v = reduce(bas, cols[rest[j]])
                if el.is_zero(v):
                    if need == 1:
                        return ch + [rest[j]]
                    continue
                if need > 1:
                    stack.append((j + 1, push(bas, v), ch + [rest[j]]))
        return None

    def extend(size, chosen, basis, stab):
        nonlocal visited
        if len(stab) == 1:
            return plain(size, chosen, basis)
        need = size - len(chosen)
        taken = set(chosen)
        lows = stab.min(axis=0)
        for p in range(N):
            if p in taken or lows[p] != p:
                continue
            visited += 1
            if visited > cap:
                raise CapExceededError(f"orbit search visited more than {cap} sets")
            v = reduce(basis, cols[p])
            if el.is_zero(v):
                if need == 1:
                    return chosen + [p]
                continue
            if need > 1:
                hit = extend(size, chosen + [p], push(basis, v), stab[stab[:, p] == p])
                if hit:
                    return hit
        return None

    for size in range(1, m + 2):
        S = extend(size, [], [], group)
        if S:
            return size, _support_word(ring, H, pts, [pts[i] for i in S])
    raise AssertionError("no dependent set found")  # pragma: no cover


def _support_word(ring: Ring, H: np.ndarray, pts, S) -> np.ndarray:
    index = {p: i for i, p in enumerate(pts)}
    cols = [index[p] for p in S]
    vals = nullspace(ring, H[:, cols])[0]
    word = np.zeros(len(pts), dtype=np.int64)
    word[cols] = vals
    return word


def min_weight_exact(spec: CodeSpec, cap: int = DEFAULT_CAP) -> BruteForceResult:
    """Exact minimum weight by the cheapest formula-free route that fits ``cap``.

    Tries, in order: direct enumeration, dual enumeration with MacWilliams,
    an information-set (Brouwer-Zimmermann) search, then a dependent-column
    search up to affine equivalence: the frame search on the whole of
    GF(q)^n, the automorphism-pruned orbit search on other grids.
    """
    gen = generator_matrix(spec, cap)
    ring = spec.ring
    k = len(gen.basis)
    try:
        _choose_route(spec, k, cap)
        return min_weight_bruteforce(spec, cap)
    except CapExceededError:
        if not ring.is_field:
            raise
    try:
        w, word = _infoset_min(ring, gen.rows, cap)
        return BruteForceResult(w, tuple(int(v) for v in word), None, "infoset")
    except CapExceededError:
        pass
    if spec.kind in ("grm", "agc") and _is_full_space(spec.grid):
        w, word = _frame_search(ring, spec, gen.rows, cap)
        return BruteForceResult(w, tuple(int(v) for v in word), None, "frame")
    w, word = _orbit_search(ring, spec, gen.rows, cap)
    return BruteForceResult(w, tuple(int(v) for v in word), None, "orbit")

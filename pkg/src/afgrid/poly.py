"""Sparse multivariate polynomials over a finite ring, and finite grids.

Variables are ``t1..tn`` in text and 0-based indices in code. A polynomial
stores a dict from exponent tuples to nonzero ring indices; the zero
polynomial has no terms and total degree ``NEG_INF``.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .bins import BinProfile, min_product_witness
from .errors import CapExceededError, DomainError, MixedRingError
from .ring import CoordinateSet, Ring, parse_ring

NEG_INF = float("-inf")
INF = math.inf
DEFAULT_CAP = 2**24

Monomial = tuple[int, ...]


class SparsePoly:
    __slots__ = ("ring", "nvars", "terms", "_hash")

    def __init__(self, ring: Ring, nvars: int, terms: Mapping[Monomial, int] | None = None):
        if nvars < 0:
            raise DomainError("negative variable count")
        clean: dict[Monomial, int] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars or min(mono, default=0) < 0:
                raise DomainError(f"exponent vector {mono} does not fit {nvars} variables")
            if not 0 <= c < ring.size:
                raise DomainError(f"coefficient {c} is not a canonical element of {ring}")
            if c:
                clean[mono] = c
        self.ring = ring
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ring: Ring, nvars: int) -> "SparsePoly":
        return cls(ring, nvars)

    @classmethod
    def constant(cls, ring: Ring, nvars: int, c: int = 1) -> "SparsePoly":
        return cls(ring, nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, ring: Ring, exps: Sequence[int], c: int = 1) -> "SparsePoly":
        return cls(ring, len(exps), {tuple(exps): c})

    @classmethod
    def variable(cls, ring: Ring, nvars: int, i: int) -> "SparsePoly":
        e = [0] * nvars
        e[i] = 1
        return cls(ring, nvars, {tuple(e): 1})

    @classmethod
    def linear_factor(cls, ring: Ring, nvars: int, i: int, x: int) -> "SparsePoly":
        """``t_i - x``."""
        return cls.variable(ring, nvars, i) - cls.constant(ring, nvars, x)

    @classmethod
    def from_literals(cls, ring: Ring, nvars: int, terms: Mapping[Monomial, object]) -> "SparsePoly":
        out: dict[Monomial, int] = {}
        for mono, lit in terms.items():
            c = ring.parse_element(lit)
            mono = tuple(mono)
            out[mono] = ring.add(out.get(mono, 0), c)
        return cls(ring, nvars, out)

    # -- basics ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "SparsePoly"):
        if not isinstance(other, SparsePoly):
            raise TypeError("expected SparsePoly")
        if other.ring != self.ring:
            raise MixedRingError(f"polynomials over {self.ring} and {other.ring}")
        if other.nvars != self.nvars:
            raise DomainError(f"{self.nvars} vs {other.nvars} variables")

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.ring == other.ring and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        self._check(other)
        add = self.ring.add
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = add(out.get(mono, 0), c)
        return SparsePoly(self.ring, self.nvars, out)

    def __neg__(self) -> "SparsePoly":
        neg = self.ring.neg
        return SparsePoly(self.ring, self.nvars, {m: neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        self._check(other)
        ring = self.ring
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                out[mono] = ring.add(out.get(mono, 0), ring.mul(c1, c2))
        return SparsePoly(ring, self.nvars, out)

    def scale(self, c: int) -> "SparsePoly":
        mul = self.ring.mul
        return SparsePoly(self.ring, self.nvars, {m: mul(c, v) for m, v in self.terms.items()})

    def __pow__(self, e: int) -> "SparsePoly":
        result = SparsePoly.constant(self.ring, self.nvars)
        for _ in range(e):
            result = result * self
        return result

    def coefficient(self, mono: Sequence[int]) -> int:
        return self.terms.get(tuple(mono), 0)

    @property
    def total_degree(self):
        return degrees(self)[0]

    def __repr__(self):
        return f"SparsePoly({self.ring}, {self.nvars}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


# ---------------------------------------------------------------------------
# grids
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    """A finite grid ``A_1 x ... x A_n`` over one ring.

    Points are enumerated with the last coordinate varying fastest.
    """

    ring: Ring
    sets: tuple[CoordinateSet, ...]

    def __post_init__(self):
        sets = tuple(s if isinstance(s, CoordinateSet) else CoordinateSet(self.ring, tuple(s))
                     for s in self.sets)
        if not sets:
            raise DomainError("a grid needs at least one coordinate")
        for s in sets:
            if s.ring != self.ring:
                raise MixedRingError("coordinate sets over different rings")
        object.__setattr__(self, "sets", sets)

    @classmethod
    def from_lists(cls, ring: Ring, lists: Iterable[Iterable]) -> "GridSpec":
        return cls(ring, tuple(CoordinateSet(ring, tuple(ring.parse_element(e) if not isinstance(e, int)
                                                         else e for e in lst)) for lst in lists))

    @classmethod
    def full(cls, ring: Ring, n: int) -> "GridSpec":
        return cls(ring, tuple(CoordinateSet(ring, tuple(ring.elements())) for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.sets)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sets)

    @property
    def size(self) -> int:
        return math.prod(self.sizes)

    @cached_property
    def condition_d(self) -> tuple[bool, ...]:
        return tuple(s.condition_d for s in self.sets)

    @property
    def satisfies_d(self) -> bool:
        return all(self.condition_d)

    def points(self):
        return product(*(s.elements for s in self.sets))

    @cached_property
    def point_array(self) -> np.ndarray:
        """``(#A, n)`` array of points in grid order."""
        mesh = np.meshgrid(*[np.array(s.elements, dtype=np.int64) for s in self.sets], indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)

    def to_json(self) -> dict:
        return {"ring": str(self.ring),
                "sets": [[self.ring.to_json(x) for x in s.elements] for s in self.sets]}

    def __str__(self):
        return json.dumps(self.to_json(), separators=(",", ":"))


def grid_from_json(obj, limit: int | None = None) -> GridSpec:
    """Build a grid from ``{"ring": "...", "sets": [[...], ...]}`` (dict or text)."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        ring_text, sets = obj["ring"], obj["sets"]
    except (KeyError, TypeError):
        raise DomainError("grid JSON needs 'ring' and 'sets'") from None
    ring = parse_ring(ring_text) if limit is None else parse_ring(ring_text, limit)
    return GridSpec.from_lists(ring, [[ring.parse_element(e) for e in s] for s in sets])


# ---------------------------------------------------------------------------
# degrees and evaluation
# ---------------------------------------------------------------------------

def degrees(f: SparsePoly):
    """``(total degree, per-variable degrees)``; ``NEG_INF`` markers for zero."""
    if f.is_zero:
        return NEG_INF, (NEG_INF,) * f.nvars
    total = max(sum(m) for m in f.terms)
    per = tuple(max(m[i] for m in f.terms) for i in range(f.nvars))
    return total, per


def _as_index(ring: Ring, x) -> int:
    return x if isinstance(x, int) else ring.parse_element(x)


def evaluate(f: SparsePoly, x: Sequence) -> int:
    """Value of ``f`` at the point ``x`` (cached powers per variable)."""
    if len(x) != f.nvars:
        raise DomainError(f"point has {len(x)} coordinates, polynomial has {f.nvars} variables")
    ring = f.ring
    x = [_as_index(ring, xi) for xi in x]
    if f.is_zero:
        return 0
    per = degrees(f)[1]
    powers = []
    for xi, d in zip(x, per):
        pw = [1]
        for _ in range(d):
            pw.append(ring.mul(pw[-1], xi))
        powers.append(pw)
    acc = 0
    for mono, c in f.terms.items():
        v = c
        for i, e in enumerate(mono):
            if e:
                v = ring.mul(v, powers[i][e])
        acc = ring.add(acc, v)
    return acc


def _check_grid(f: SparsePoly, A: GridSpec):
    if f.ring != A.ring:
        raise MixedRingError(f"polynomial over {f.ring}, grid over {A.ring}")
    if f.nvars != A.n:
        raise DomainError(f"polynomial has {f.nvars} variables, grid has {A.n} coordinates")


def _power_columns(ring: Ring, col: np.ndarray, d: int) -> list[np.ndarray]:
    out = [np.ones_like(col)]
    for _ in range(d):
        out.append(ring.mul_arr(out[-1], col))
    return out


def monomial_values(monos: Sequence[Monomial], A: GridSpec) -> np.ndarray:
    """``(len(monos), #A)`` matrix of monomial values on the grid."""
    ring = A.ring
    pts = A.point_array
    maxe = [max((m[i] for m in monos), default=0) for i in range(A.n)]
    pw = [_power_columns(ring, pts[:, i], maxe[i]) for i in range(A.n)]
    rows = []
    for mono in monos:
        v = np.ones(len(pts), dtype=np.int64)
        for i, e in enumerate(mono):
            if e:
                v = ring.mul_arr(v, pw[i][e])
        rows.append(v)
    return np.array(rows, dtype=np.int64).reshape(len(monos), len(pts))


def evaluate_on_grid(f: SparsePoly, A: GridSpec, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Values of ``f`` at every grid point, in grid order."""
    _check_grid(f, A)
    if A.size > cap:
        raise CapExceededError(f"grid of {A.size} points exceeds cap {cap}")
    if f.is_zero:
        return np.zeros(A.size, dtype=np.int64)
    monos = list(f.terms)
    coeffs = np.array([[f.terms[m] for m in monos]], dtype=np.int64)
    return f.ring.matmul(coeffs, monomial_values(monos, A))[0]


@dataclass(frozen=True)
class Census:
    zeros: int
    nonzeros: int
    zero_points: tuple | None = None


def zero_census(f: SparsePoly, A: GridSpec, collect_points: bool = False,
                cap: int = DEFAULT_CAP) -> Census:
    vals = evaluate_on_grid(f, A, cap)
    mask = vals == 0
    zeros = int(mask.sum())
    pts = None
    if collect_points:
        arr = A.point_array[mask]
        pts = tuple(tuple(int(v) for v in row) for row in arr)
    return Census(zeros, A.size - zeros, pts)


# ---------------------------------------------------------------------------
# univariate helpers (dense, low degree first)
# ---------------------------------------------------------------------------

def _umul(ring: Ring, a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = ring.add(out[i + j], ring.mul(x, y))
    return out


def vanishing_poly(ring: Ring, elems: Iterable[int]) -> list[int]:
    """Dense coefficients of ``prod (t - x)``; monic."""
    out = [1]
    for x in elems:
        out = _umul(ring, out, [ring.neg(x), 1])
    return out


def _power_remainders(ring: Ring, phi: list[int], top: int) -> list[list[int]]:
    """``t^e mod phi`` for ``e = 0..top`` (phi monic), as dense lists of length deg phi."""
    a = len(phi) - 1
    rems = []
    cur = [0] * a
    if a == 0:
        return [[] for _ in range(top + 1)]
    cur[0] = 1
    for e in range(top + 1):
        rems.append(list(cur))
        # multiply by t and reduce t^a = -(phi - t^a)
        lead = cur[-1]
        nxt = [0] + cur[:-1]
        if lead:
            for j in range(a):
                nxt[j] = ring.sub(nxt[j], ring.mul(lead, phi[j]))
        cur = nxt
    return rems


def grid_reduce(f: SparsePoly, A: GridSpec, order: Sequence[int] | None = None) -> SparsePoly:
    """The A-reduced representative of ``f`` modulo ``<phi_1, ..., phi_n>``.

    Divides by the monic ``phi_i = prod_{x in A_i} (t_i - x)`` one variable at
    a time (``order`` defaults to ``0..n-1``).
    """
    _check_grid(f, A)
    ring = f.ring
    order = range(A.n) if order is None else order
    cur = dict(f.terms)
    for i in order:
        a = A.sizes[i]
        top = max((m[i] for m in cur), default=0)
        if top < a:
            continue
        rems = _power_remainders(ring, vanishing_poly(ring, A.sets[i].elements), top)
        nxt: dict[Monomial, int] = {}
        for mono, c in cur.items():
            e = mono[i]
            if e < a:
                nxt[mono] = ring.add(nxt.get(mono, 0), c)
                continue
            for j, r in enumerate(rems[e]):
                if r:
                    m2 = mono[:i] + (j,) + mono[i + 1:]
                    nxt[m2] = ring.add(nxt.get(m2, 0), ring.mul(c, r))
        cur = {m: c for m, c in nxt.items() if c}
    return SparsePoly(ring, f.nvars, cur)


def is_reduced(f: SparsePoly, A: GridSpec) -> bool:
    return all(m[i] < A.sizes[i] for m in f.terms for i in range(A.n))


def vanishes_on_grid(f: SparsePoly, A: GridSpec, cap: int = DEFAULT_CAP) -> bool:
    """``f(x) == 0`` for every ``x`` in ``A``.

    On Condition (D) grids this is the test ``grid_reduce(f, A) == 0``;
    otherwise every point is evaluated.
    """
    _check_grid(f, A)
    if A.satisfies_d:
        return grid_reduce(f, A).is_zero
    return zero_census(f, A, cap=cap).nonzeros == 0


# ---------------------------------------------------------------------------
# Hasse derivatives and multiplicities
# ---------------------------------------------------------------------------

def multi_binom(I: Sequence[int], J: Sequence[int]) -> int:
    return math.prod(math.comb(i, j) for i, j in zip(I, J))


def hasse_derivative(f: SparsePoly, J: Sequence[int]) -> SparsePoly:
    """``D^J f`` with ``D^J t^I = binom(I, J) t^(I-J)``."""
    J = tuple(J)
    if len(J) != f.nvars or min(J, default=0) < 0:
        raise DomainError(f"derivative index {J} does not fit {f.nvars} variables")
    ring = f.ring
    out: dict[Monomial, int] = {}
    for I, c in f.terms.items():
        if any(j > i for i, j in zip(I, J)):
            continue
        b = ring.from_int(multi_binom(I, J))
        if not b:
            continue
        mono = tuple(i - j for i, j in zip(I, J))
        out[mono] = ring.add(out.get(mono, 0), ring.mul(c, b))
    return SparsePoly(ring, f.nvars, out)


def taylor_shift(f: SparsePoly, x: Sequence) -> SparsePoly:
    """``f(t + x)``; its ``t^J`` coefficient is ``D^J(f)(x)``."""
    if len(x) != f.nvars:
        raise DomainError("point dimension mismatch")
    ring = f.ring
    x = [_as_index(ring, xi) for xi in x]
    out: dict[Monomial, int] = {}
    for I, c in f.terms.items():
        for J in product(*(range(i + 1) for i in I)):
            b = ring.from_int(multi_binom(I, J))
            if not b:
                continue
            v = ring.mul(c, b)
            for xi, i, j in zip(x, I, J):
                if i > j:
                    v = ring.mul(v, ring.pow(xi, i - j))
            if v:
                out[J] = ring.add(out.get(J, 0), v)
    return SparsePoly(ring, f.nvars, out)


def multiplicity(f: SparsePoly, x: Sequence):
    """Least ``|J|`` with ``D^J(f)(x) != 0``; ``INF`` for the zero polynomial."""
    if f.is_zero:
        if len(x) != f.nvars:
            raise DomainError("point dimension mismatch")
        return INF
    shifted = taylor_shift(f, x)
    # nonzero f has a nonzero top-degree Hasse coefficient, so shifted != 0
    return min(sum(J) for J in shifted.terms)


def _derivative_indices(n: int, level: int):
    if n == 0:
        if level == 0:
            yield ()
        return
    if n == 1:
        yield (level,)
        return
    for first in range(level, -1, -1):
        for rest in _derivative_indices(n - 1, level - first):
            yield (first,) + rest


def multiplicities_on_grid(f: SparsePoly, A: GridSpec, cap: int = DEFAULT_CAP) -> np.ndarray:
    """``m(f, x)`` for every grid point, in grid order (f nonzero)."""
    _check_grid(f, A)
    if f.is_zero:
        raise DomainError("multiplicity of the zero polynomial is infinite everywhere")
    if A.size > cap:
        raise CapExceededError(f"grid of {A.size} points exceeds cap {cap}")
    out = np.full(A.size, -1, dtype=np.int64)
    top = degrees(f)[0]
    for level in range(top + 1):
        for J in _derivative_indices(f.nvars, level):
            g = hasse_derivative(f, J)
            if g.is_zero:
                continue
            hit = (evaluate_on_grid(g, A, cap) != 0) & (out < 0)
            out[hit] = level
        if (out >= 0).all():
            break
    assert (out >= 0).all()
    return out


def multiplicity_sum(f: SparsePoly, A: GridSpec, cap: int = DEFAULT_CAP) -> int:
    if f.is_zero:
        raise DomainError("multiplicity sum of the zero polynomial is infinite")
    return int(multiplicities_on_grid(f, A, cap).sum())


def restrict_to_line(f: SparsePoly, a: Sequence, b: Sequence) -> SparsePoly:
    """The univariate polynomial ``f(a + t*b)``."""
    if len(a) != f.nvars or len(b) != f.nvars:
        raise DomainError("line data dimension mismatch")
    ring = f.ring
    a = [_as_index(ring, v) for v in a]
    b = [_as_index(ring, v) for v in b]
    cache: dict[tuple[int, int], list[int]] = {}

    def lin_pow(i: int, e: int) -> list[int]:
        key = (i, e)
        if key not in cache:
            cache[key] = [1] if e == 0 else _umul(ring, lin_pow(i, e - 1), [a[i], b[i]])
        return cache[key]

    acc: list[int] = []
    for mono, c in f.terms.items():
        term = [c]
        for i, e in enumerate(mono):
            if e:
                term = _umul(ring, term, lin_pow(i, e))
        if len(term) > len(acc):
            acc += [0] * (len(term) - len(acc))
        for j, v in enumerate(term):
            acc[j] = ring.add(acc[j], v)
    return SparsePoly(ring, 1, {(j,): v for j, v in enumerate(acc) if v})


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def extremal_distribution(A: GridSpec, var_caps: Sequence[int], d: int) -> tuple[int, tuple[int, ...]]:
    caps = tuple(int(c) for c in var_caps)
    if len(caps) != A.n:
        raise DomainError("one degree cap per coordinate required")
    for c, a in zip(caps, A.sizes):
        if not 0 <= c <= a - 1:
            raise DomainError(f"degree cap {c} outside [0, {a - 1}]")
    if not 0 <= d <= sum(caps):
        raise DomainError(f"degree {d} outside [0, {sum(caps)}]")
    prefills = tuple(a - c for a, c in zip(A.sizes, caps))
    return min_product_witness(BinProfile(A.sizes, prefills, sum(A.sizes) - d))


def extremal_polylinear(A: GridSpec, var_caps: Sequence[int], d: int) -> SparsePoly:
    """Product of ``t_i - x`` over the first ``a_i - y_i`` elements of each ``A_i``.

    ``y`` is the lexicographically least argmin of ``m(a; a - caps; sum(a) - d)``,
    so the result has degree ``d``, ``deg_{t_i} <= caps[i]`` and exactly
    ``prod(y)`` nonzeros on ``A``.
    """
    _, y = extremal_distribution(A, var_caps, d)
    ring = A.ring
    f = SparsePoly.constant(ring, A.n)
    for i, (s, yi) in enumerate(zip(A.sets, y)):
        for x in s.elements[:len(s) - yi]:
            f = f * SparsePoly.linear_factor(ring, A.n, i, x)
    return f


@dataclass(frozen=True)
class Chain:
    """Degrees ``d_1..d_n`` and polynomials ``f_1..f_n`` (``f_n = f``)."""

    degrees: tuple[int, ...]
    polys: tuple[SparsePoly, ...]


def leading_coeff_chain(f: SparsePoly) -> Chain:
    """Peel off leading coefficients in ``t_n``, then ``t_{n-1}``, ...

    ``d_i = deg_{t_i} f_i`` and ``f_{i-1}`` is the coefficient of ``t_i^{d_i}``
    in ``f_i``.
    """
    if f.is_zero:
        raise DomainError("chain of the zero polynomial is undefined")
    n = f.nvars
    ds = [0] * n
    polys: list[SparsePoly] = [f] * n
    cur = dict(f.terms)
    for i in range(n - 1, -1, -1):
        polys[i] = SparsePoly(f.ring, n, cur)
        d = max(m[i] for m in cur)
        ds[i] = d
        cur = {m[:i] + (0,) + m[i + 1:]: c for m, c in cur.items() if m[i] == d}
    return Chain(tuple(ds), tuple(polys))


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\[[^\]]*\])|(\d+)|t(\d+)|(\^)|(\*)|(\+)|(-))")


def parse_poly(text: str, ring: Ring, nvars: int | None = None) -> SparsePoly:
    """Parse ``c*t1^e1*t2^e2 + ...``; unit coefficients and exponents optional."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise DomainError(f"cannot parse polynomial near {text[pos:]!r}")
        pos = m.end()
        kind = m.lastindex
        tokens.append((kind, m.group(kind)))
    if not tokens:
        raise DomainError("empty polynomial")
    terms: list[tuple[int, dict[int, int]]] = []
    i = 0
    sign = 1

    def expect_factor(i):
        if i >= len(tokens):
            raise DomainError("polynomial ends unexpectedly")
        return tokens[i]

    while i < len(tokens):
        kind, val = tokens[i]
        if kind in (6, 7):  # leading or separating sign
            sign = sign if kind == 6 else -sign
            i += 1
            continue
        coeff = ring.one
        exps: dict[int, int] = {}
        while True:
            kind, val = expect_factor(i)
            if kind in (1, 2):
                coeff = ring.mul(coeff, ring.parse_element(val))
                i += 1
            elif kind == 3:
                var = int(val)
                if var < 1:
                    raise DomainError("variables are numbered from t1")
                i += 1
                e = 1
                if i < len(tokens) and tokens[i][0] == 4:
                    k2, v2 = expect_factor(i + 1)
                    if k2 != 2:
                        raise DomainError("exponent must be a nonnegative integer")
                    e = int(v2)
                    i += 2
                exps[var] = exps.get(var, 0) + e
            else:
                raise DomainError(f"unexpected token {val!r}")
            if i < len(tokens) and tokens[i][0] == 5:
                i += 1
                continue
            break
        if sign < 0:
            coeff = ring.neg(coeff)
        terms.append((coeff, exps))
        sign = 1
        if i < len(tokens) and tokens[i][0] not in (6, 7):
            raise DomainError(f"expected '+' or '-' before {tokens[i][1]!r}")
    top = max((v for _, e in terms for v in e), default=0)
    if nvars is None:
        nvars = max(top, 1)
    elif top > nvars:
        raise DomainError(f"t{top} used but only {nvars} variables")
    out: dict[Monomial, int] = {}
    for c, e in terms:
        mono = tuple(e.get(v, 0) for v in range(1, nvars + 1))
        out[mono] = ring.add(out.get(mono, 0), c)
    return SparsePoly(ring, nvars, out)


def format_poly(f: SparsePoly) -> str:
    if f.is_zero:
        return "0"
    parts = []
    for mono in sorted(f.terms, key=lambda m: (sum(m), m), reverse=True):
        c = f.terms[mono]
        factors = []
        if c != 1 or not any(mono):
            factors.append(f.ring.format_element(c))
        for i, e in enumerate(mono):
            if e == 1:
                factors.append(f"t{i + 1}")
            elif e > 1:
                factors.append(f"t{i + 1}^{e}")
        parts.append("*".join(factors))
    return " + ".join(parts)

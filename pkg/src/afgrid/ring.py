"""Finite commutative rings: GF(p), GF(p^k) and Z/m.

Elements are plain ``int`` indices in ``range(ring.size)``. For Z/m and GF(p)
the index is the usual residue. For GF(p^k) the index of
``c0 + c1*x + ... + c_{k-1}*x^(k-1)`` is ``c0 + c1*p + ... + c_{k-1}*p^(k-1)``;
ring enumeration order is increasing index.

The numeric code paths (grids, codes, oracles) work on these ints directly.
``RingElement`` wraps an index together with its ring for callers that want
operator syntax and mixed-ring checking.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceededError, DomainError, MixedRingError

DEFAULT_RING_LIMIT = 2**20
# full add/mul tables are built only for rings at most this large
TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k`` or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return None


# ---------------------------------------------------------------------------
# dense polynomials over GF(p), low-degree-first coefficient lists
# ---------------------------------------------------------------------------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _gfp_rem(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    m = _trim([x % p for x in m])
    if not m:
        raise ZeroDivisionError("division by zero polynomial")
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Irreducibility over GF(p) by exhaustive trial division.

    ``coeffs`` is low-degree-first and must have a nonzero leading entry.
    """
    f = _trim([c % p for c in coeffs])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    for deg in range(1, k // 2 + 1):
        for low in product(range(p), repeat=deg):
            if _gfp_rem(f, list(low) + [1], p) == []:
                return False
    return True


def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible of degree ``k`` over GF(p).

    Candidates are ordered by the integer ``c0 + c1*p + ... + c_{k-1}*p^(k-1)``,
    so e.g. ``x^3+x+1`` precedes ``x^3+x^2+1`` over GF(2). Returned
    low-degree-first with the trailing 1.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if k < 1:
        raise DomainError("degree must be >= 1")
    if k == 1:
        return (0, 1)
    for v in range(p**k):
        low = [(v // p**i) % p for i in range(k)]
        if low[0] == 0:
            continue  # divisible by x
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------
# rings
# ---------------------------------------------------------------------------

_KINDS = ("prime", "ext", "mod")


@dataclass(frozen=True)
class Ring:
    """A finite commutative ring.

    kind is ``"prime"`` (GF(p), ``base`` = p), ``"ext"`` (GF(p^k) with an
    explicit monic irreducible ``modulus``, low-degree-first) or ``"mod"``
    (Z/m, ``base`` = m).
    """

    kind: str
    base: int
    k: int = 1
    modulus: tuple[int, ...] = ()
    limit: int = field(default=DEFAULT_RING_LIMIT, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown ring kind {self.kind!r}")
        if self.kind == "mod":
            if self.base < 2:
                raise DomainError("Z/m needs m >= 2")
        elif not is_prime(self.base):
            raise DomainError(f"GF characteristic {self.base} is not prime")
        if self.kind == "ext":
            if self.k < 2:
                raise DomainError("extension degree must be >= 2 (use GF:p)")
            mod = tuple(c % self.base for c in self.modulus)
            if len(mod) != self.k + 1 or mod[-1] != 1:
                raise DomainError("modulus must be monic of degree k")
            if not is_irreducible(mod, self.base):
                raise DomainError(f"modulus {mod} is reducible over GF({self.base})")
            object.__setattr__(self, "modulus", mod)
        elif self.k != 1 or self.modulus:
            raise DomainError("only extension fields carry k/modulus")
        if self.size > self.limit:
            raise CapExceededError(f"ring of size {self.size} exceeds limit {self.limit}")

    # -- descriptors -------------------------------------------------------

    @property
    def size(self) -> int:
        return self.base**self.k

    @property
    def characteristic(self) -> int:
        return self.base

    @property
    def is_field(self) -> bool:
        return self.kind != "mod" or is_prime(self.base)

    def __str__(self) -> str:
        if self.kind == "prime":
            return f"GF:{self.base}"
        if self.kind == "mod":
            return f"Z:{self.base}"
        return f"GF:{self.base}^{self.k}:" + ",".join(map(str, self.modulus))

    def elements(self) -> range:
        return range(self.size)

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    # -- scalar arithmetic on indices -------------------------------------

    def _digits(self, x: int) -> list[int]:
        p = self.base
        return [(x // p**i) % p for i in range(self.k)]

    def _undigits(self, c: Iterable[int]) -> int:
        p = self.base
        return sum((ci % p) * p**i for i, ci in enumerate(c))

    def add(self, x: int, y: int) -> int:
        if self.kind != "ext":
            return (x + y) % self.base
        if self.base == 2:
            return x ^ y
        t = self._tables
        if t is not None:
            return t[0][x][y]
        return self._undigits(a + b for a, b in zip(self._digits(x), self._digits(y)))

    def neg(self, x: int) -> int:
        if self.kind != "ext":
            return (-x) % self.base
        if self.base == 2:
            return x
        return self._undigits(-a for a in self._digits(x))

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.kind != "ext":
            return (x * y) % self.base
        t = self._tables
        if t is not None:
            return t[1][x][y]
        return self._ext_mul(x, y)

    def _ext_mul(self, x: int, y: int) -> int:
        p, k = self.base, self.k
        a, b = self._digits(x), self._digits(y)
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        return self._undigits(_gfp_rem(prod, self.modulus, p))

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(x), -e)
        result, base = 1, x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def from_int(self, n: int) -> int:
        """The image of the integer ``n`` (i.e. ``n * 1``)."""
        return n % self.base

    def is_unit(self, x: int) -> bool:
        if self.kind == "mod":
            return math.gcd(x, self.base) == 1
        return x != 0

    def inv(self, x: int) -> int:
        if not self.is_unit(x):
            raise DomainError(f"{self.format_element(x)} is not invertible in {self}")
        if self.kind != "ext":
            return pow(x, -1, self.base)
        return self.pow(x, self.size - 2)

    def is_zero_divisor(self, x: int) -> bool:
        """True iff ``x == 0`` or ``x*y == 0`` for some ``y != 0``."""
        if x == 0:
            return True
        if self.kind == "mod":
            return math.gcd(x, self.base) > 1
        return False

    # -- tables and vectorised arithmetic ---------------------------------

    @cached_property
    def _tables(self):
        if self.kind != "ext" or self.size > TABLE_LIMIT:
            return None
        q = self.size
        add = [[self._undigits(a + b for a, b in zip(self._digits(x), self._digits(y)))
                for y in range(q)] for x in range(q)]
        mul = [[self._ext_mul(x, y) for y in range(q)] for x in range(q)]
        return add, mul

    @cached_property
    def _np_tables(self):
        if self.kind != "ext":
            return None
        if self._tables is None:
            raise CapExceededError(f"vectorised arithmetic over {self} needs tables (size > {TABLE_LIMIT})")
        add, mul = self._tables
        neg = [self.neg(x) for x in range(self.size)]
        return (np.array(add, dtype=np.int64), np.array(mul, dtype=np.int64),
                np.array(neg, dtype=np.int64))

    def add_arr(self, x, y):
        if self.kind != "ext":
            return (np.asarray(x) + np.asarray(y)) % self.base
        if self.base == 2:
            return np.bitwise_xor(x, y)
        return self._np_tables[0][x, y]

    def mul_arr(self, x, y):
        if self.kind != "ext":
            return (np.asarray(x) * np.asarray(y)) % self.base
        return self._np_tables[1][x, y]

    def neg_arr(self, x):
        if self.kind != "ext":
            return (-np.asarray(x)) % self.base
        return self._np_tables[2][x]

    def matmul(self, c, m):
        """Ring product of index matrices ``c`` (b x k) and ``m`` (k x N)."""
        c = np.asarray(c, dtype=np.int64)
        m = np.asarray(m, dtype=np.int64)
        if self.kind != "ext":
            # entries < base <= 2**20, so k*base**2 stays far below 2**63 for k < 2**20
            return (c @ m) % self.base
        out = np.zeros((c.shape[0], m.shape[1]), dtype=np.int64)
        for j in range(c.shape[1]):
            out = self.add_arr(out, self.mul_arr(c[:, j, None], m[None, j, :]))
        return out

    # -- literals ----------------------------------------------------------

    def coeffs(self, x: int) -> list[int]:
        """Coefficient sequence of an extension-field element, low degree first."""
        return self._digits(x)

    def from_coeffs(self, c: Sequence[int]) -> int:
        if self.kind != "ext":
            raise DomainError(f"coefficient-list literal not valid in {self}")
        if len(c) > self.k:
            raise DomainError(f"literal {list(c)} longer than extension degree {self.k}")
        return self._undigits(c)

    def format_element(self, x: int) -> str:
        if self.kind == "ext":
            return "[" + ",".join(map(str, self._digits(x))) + "]"
        return str(x)

    def to_json(self, x: int):
        return self._digits(x) if self.kind == "ext" else x

    def parse_element(self, value) -> int:
        """Parse ``3``, ``"3"``, ``"[1,2]"`` or ``[1, 2]`` into an index.

        Plain integers denote ``n*1``; bracketed lists are extension-field
        coefficient sequences (low degree first).
        """
        if isinstance(value, RingElement):
            if value.ring != self:
                raise MixedRingError(f"element of {value.ring} used in {self}")
            return value.value
        if isinstance(value, bool):
            raise DomainError(f"bad ring literal {value!r}")
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, (list, tuple)):
            return self.from_coeffs([int(v) for v in value])
        if isinstance(value, str):
            s = value.strip()
            if s.startswith("["):
                if not s.endswith("]"):
                    raise DomainError(f"bad ring literal {value!r}")
                body = s[1:-1].strip()
                parts = [int(v) for v in body.split(",")] if body else []
                return self.from_coeffs(parts)
            try:
                return self.from_int(int(s))
            except ValueError:
                raise DomainError(f"bad ring literal {value!r}") from None
        raise DomainError(f"bad ring literal {value!r}")

    def element(self, value) -> "RingElement":
        return RingElement(self, self.parse_element(value))


def prime_field(p: int, limit: int = DEFAULT_RING_LIMIT) -> Ring:
    return Ring("prime", p, limit=limit)


def extension_field(p: int, k: int, modulus: Sequence[int] | None = None,
                    limit: int = DEFAULT_RING_LIMIT) -> Ring:
    if k == 1:
        return prime_field(p, limit)
    if p**k > limit:
        raise CapExceededError(f"GF({p}^{k}) exceeds ring limit {limit}")
    if modulus is None:
        modulus = find_irreducible(p, k)
    return Ring("ext", p, k, tuple(modulus), limit=limit)


def integers_mod(m: int, limit: int = DEFAULT_RING_LIMIT) -> Ring:
    return Ring("mod", m, limit=limit)


def GF(q: int, limit: int = DEFAULT_RING_LIMIT) -> Ring:
    """The field with ``q`` elements (default modulus for q = p^k, k > 1)."""
    pk = prime_power(q)
    if pk is None:
        raise DomainError(f"{q} is not a prime power")
    return extension_field(pk[0], pk[1], limit=limit)


_RING_RE = re.compile(r"^(GF|Z):(\d+)(?:\^(\d+))?(?::([\d,\s]+))?$")


def parse_ring(text: str, limit: int = DEFAULT_RING_LIMIT) -> Ring:
    """Parse ``GF:p``, ``GF:p^k[:modulus]``, ``GF:q`` or ``Z:m``."""
    m = _RING_RE.match(text.strip())
    if not m:
        raise DomainError(f"bad ring spec {text!r}")
    kind, base, k, mod = m.group(1), int(m.group(2)), m.group(3), m.group(4)
    if kind == "Z":
        if k or mod:
            raise DomainError(f"bad ring spec {text!r}")
        return integers_mod(base, limit)
    if k is None:
        if mod:
            raise DomainError("modulus requires GF:p^k syntax")
        if is_prime(base):
            return prime_field(base, limit)
        return GF(base, limit)
    modulus = [int(c) for c in mod.split(",")] if mod else None
    return extension_field(base, int(k), modulus, limit)


# ---------------------------------------------------------------------------
# boxed elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RingElement:
    ring: Ring
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.ring.size:
            raise DomainError(f"{self.value} is not a canonical element of {self.ring}")

    def _other(self, y) -> int:
        if isinstance(y, RingElement):
            if y.ring != self.ring:
                raise MixedRingError(f"cannot combine elements of {self.ring} and {y.ring}")
            return y.value
        if isinstance(y, int):
            return self.ring.from_int(y)
        return NotImplemented

    def __add__(self, y):
        v = self._other(y)
        return RingElement(self.ring, self.ring.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, y):
        v = self._other(y)
        return RingElement(self.ring, self.ring.sub(self.value, v))

    def __rsub__(self, y):
        v = self._other(y)
        return RingElement(self.ring, self.ring.sub(v, self.value))

    def __mul__(self, y):
        v = self._other(y)
        return RingElement(self.ring, self.ring.mul(self.value, v))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __str__(self):
        return self.ring.format_element(self.value)

    def is_zero_divisor(self) -> bool:
        return self.ring.is_zero_divisor(self.value)


def arithmetic(op: str, x: RingElement, y: RingElement | None = None) -> RingElement:
    """Apply ``add``, ``sub``, ``mul`` or ``neg`` to boxed elements."""
    if op == "neg":
        return -x
    if y is None:
        raise DomainError(f"{op} needs two operands")
    if x.ring != y.ring:
        raise MixedRingError(f"cannot combine elements of {x.ring} and {y.ring}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise DomainError(f"unknown ring operation {op!r}")


def is_zero_divisor(x: RingElement) -> bool:
    return x.ring.is_zero_divisor(x.value)


# ---------------------------------------------------------------------------
# coordinate sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoordinateSet:
    """One factor A_i of a grid: distinct ring elements in a fixed order."""

    ring: Ring
    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(self.ring.parse_element(e) if not isinstance(e, int) else e
                      for e in self.elements)
        if not elems:
            raise DomainError("coordinate set must be nonempty")
        if len(set(elems)) != len(elems):
            raise DomainError("coordinate set has duplicate elements")
        for e in elems:
            if not 0 <= e < self.ring.size:
                raise DomainError(f"{e} is not an element of {self.ring}")
        object.__setattr__(self, "elements", elems)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def condition_d(self) -> bool:
        return check_condition_d(self)


def check_condition_d(s: CoordinateSet) -> bool:
    """Every difference of two distinct elements is a non-zero-divisor."""
    ring = s.ring
    if ring.is_field:
        return True
    return all(not ring.is_zero_divisor(ring.sub(x, y))
               for x, y in combinations(s.elements, 2))

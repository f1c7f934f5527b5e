"""Closed-form zero/nonzero bounds as functions of grid shape and degree data.

Every calculator returns a ``BoundResult`` carrying an applicability verdict,
so a caller can tell "bound violated" apart from "hypotheses not met".
Malformed input (negative degrees, unsorted sizes where sorting is required)
raises ``DomainError`` instead.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

from .bins import BinProfile, min_product
from .errors import DomainError

LOWER_NONZEROS = "lower_bound_on_nonzeros"
UPPER_ZEROS = "upper_bound_on_zeros"
UPPER_MULT_SUM = "upper_bound_on_multiplicity_sum"
LOWER_MULT_ADJUSTED = "lower_bound_on_mult_adjusted_nonzeros"

THEOREMS = {
    "af": LOWER_NONZEROS,
    "gaf": LOWER_NONZEROS,
    "schwartz": UPPER_ZEROS,
    "sz": UPPER_ZEROS,
    "dmlz": UPPER_ZEROS,
    "gdmlz": LOWER_NONZEROS,
    "klp": LOWER_NONZEROS,
    "mult-schwartz": UPPER_MULT_SUM,
    "mult-gsz": UPPER_MULT_SUM,
}


@dataclass(frozen=True)
class BoundResult:
    theorem_id: str
    value: int
    direction: str
    applicable: bool = True
    reason: str = ""

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("bound values are nonnegative")
        if not self.applicable and not self.reason:
            raise ValueError("an inapplicable result needs a reason")

    def to_json(self) -> dict:
        return asdict(self)


def _inapplicable(theorem_id: str, reason: str) -> BoundResult:
    return BoundResult(theorem_id, 0, THEOREMS[theorem_id], False, reason)


def _sizes(a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if not a or min(a) < 1:
        raise DomainError("grid sizes must be positive")
    return a


def _require_sorted(a: Sequence[int]):
    if any(x < y for x, y in zip(a, a[1:])):
        raise DomainError(f"sizes {tuple(a)} must be non-increasing")


def alon_furedi_nonzeros(a: Sequence[int], d: int) -> BoundResult:
    """``m(a; sum(a) - d)`` with unit prefills (1 when fewer than n balls)."""
    a = _sizes(a)
    if d < 0:
        raise DomainError("degree must be >= 0")
    N = sum(a) - d
    return BoundResult("af", min_product(BinProfile.unit(a, N)), LOWER_NONZEROS)


def generalized_af_nonzeros(a: Sequence[int], b: Sequence[int], d: int) -> BoundResult:
    """``m(a; b; sum(a) - d)`` for ``0 <= d <= sum(a - b)``."""
    a = _sizes(a)
    profile = BinProfile(a, tuple(b), sum(a) - d)  # validates 1 <= b_i <= a_i
    room = sum(x - y for x, y in zip(a, profile.prefills))
    if not 0 <= d <= room:
        return _inapplicable("gaf", f"degree {d} outside [0, {room}] = [0, sum(a_i - b_i)]")
    return BoundResult("gaf", min_product(profile), LOWER_NONZEROS)


def _check_chain(a, chain):
    chain = tuple(int(x) for x in chain)
    if len(chain) != len(a):
        raise DomainError("one chain degree per coordinate required")
    if min(chain) < 0:
        raise DomainError("chain degrees must be >= 0")
    return chain


def _schwartz_value(a, chain) -> int:
    total = math.prod(a)
    return math.floor(total * sum(Fraction(d, x) for d, x in zip(chain, a)))


def schwartz_zeros(a: Sequence[int], chain: Sequence[int]) -> BoundResult:
    """``floor(#A * sum(d_i / a_i))`` for the leading-coefficient chain."""
    a = _sizes(a)
    chain = _check_chain(a, chain)
    return BoundResult("schwartz", _schwartz_value(a, chain), UPPER_ZEROS)


def sz_zeros(a: Sequence[int], d: int) -> BoundResult:
    """``d * a_1 * ... * a_{n-1}`` for non-increasing sizes."""
    a = _sizes(a)
    _require_sorted(a)
    if d < 0:
        raise DomainError("degree must be >= 0")
    return BoundResult("sz", d * math.prod(a[:-1]), UPPER_ZEROS)


def dmlz_zeros(s: int, n: int, d: int) -> BoundResult:
    """``s^n - (s - d)^n`` on ``S^n`` when every per-variable degree is ``<= d < s``."""
    if s < 1 or n < 1 or d < 0:
        raise DomainError("need s >= 1, n >= 1, d >= 0")
    if d >= s:
        return _inapplicable("dmlz", f"per-variable degree {d} not below #S = {s}")
    return BoundResult("dmlz", s**n - (s - d)**n, UPPER_ZEROS)


def generalized_dmlz_nonzeros(a: Sequence[int], dvec: Sequence[int]) -> BoundResult:
    """``prod(a_i - d_i)`` when ``1 <= d_i < a_i`` for every i."""
    a = _sizes(a)
    dvec = tuple(int(x) for x in dvec)
    if len(dvec) != len(a):
        raise DomainError("one degree per coordinate required")
    for i, (x, d) in enumerate(zip(a, dvec)):
        if not 1 <= d < x:
            return _inapplicable("gdmlz", f"deg_t{i + 1} = {d} outside [1, {x - 1}]")
    return BoundResult("gdmlz", math.prod(x - d for x, d in zip(a, dvec)), LOWER_NONZEROS)


def klp_decompose(q: int, d: int) -> tuple[int, int]:
    """``(a, b)`` with ``d = a(q-1) + b`` and ``0 < b <= q-1``."""
    a = (d - 1) // (q - 1)
    return a, d - a * (q - 1)


def klp_min_weight(n: int, q: int, d: int) -> BoundResult:
    """Minimum weight ``(q - b) q^(n - a - 1)`` of the order-d generalized RM code."""
    if q < 2 or n < 1:
        raise DomainError("need q >= 2 and n >= 1")
    if not 1 <= d <= n * (q - 1):
        raise DomainError(f"order {d} outside [1, {n * (q - 1)}]")
    a, b = klp_decompose(q, d)
    return BoundResult("klp", (q - b) * q**(n - a - 1), LOWER_NONZEROS)


def mult_schwartz_bound(a: Sequence[int], chain: Sequence[int]) -> BoundResult:
    """Upper bound ``#A * sum(d_i / a_i)`` on the multiplicity sum."""
    a = _sizes(a)
    chain = _check_chain(a, chain)
    return BoundResult("mult-schwartz", _schwartz_value(a, chain), UPPER_MULT_SUM)


def mult_gsz_bound(a: Sequence[int], d: int) -> BoundResult:
    """Upper bound ``d * a_1 * ... * a_{n-1}`` on the multiplicity sum."""
    a = _sizes(a)
    _require_sorted(a)
    if d < 0:
        raise DomainError("degree must be >= 0")
    return BoundResult("mult-gsz", d * math.prod(a[:-1]), UPPER_MULT_SUM)


def lrmv_min_weight(a: Sequence[int], d: int) -> int:
    """Piecewise minimum weight of the affine grid code of order ``d`` (sorted sizes)."""
    a = _sizes(a)
    _require_sorted(a)
    n = len(a)
    if d < 0:
        raise DomainError("order must be >= 0")
    if d == 0:
        return math.prod(a)
    if d >= sum(x - 1 for x in a):
        return 1
    # d = sum_{i>k}(a_i - 1) + l with 1 <= l <= a_k - 1 (1-based k)
    tail = 0
    for k in range(n - 1, -1, -1):
        l = d - tail
        if 1 <= l <= a[k] - 1:
            return math.prod(a[:k]) * (a[k] - l)
        tail += a[k] - 1
    raise AssertionError("no decomposition found")  # pragma: no cover


def af_zero_bound(a: Sequence[int], d: int) -> int:
    """Zero count allowed by Alon-Furedi: ``#A - m(a; sum(a) - d)``."""
    return math.prod(_sizes(a)) - alon_furedi_nonzeros(a, d).value

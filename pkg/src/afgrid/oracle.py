"""Exhaustive and seeded-random verification of the zero and multiplicity bounds.

A family is every polynomial (or a seeded sample) with coefficients on a fixed
monomial list. Families are scanned in fixed-size chunks; each chunk yields a
partial tally, and tallies merge in chunk order, so reports do not depend on
the thread count.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from . import bounds as B
from .bins import BinProfile, min_product
from .errors import BoundViolationError, CapExceededError, DomainError
from .poly import (DEFAULT_CAP, GridSpec, Monomial, SparsePoly, _derivative_indices, degrees,
                   extremal_polylinear, format_poly, monomial_values, multi_binom, multiplicity,
                   multiplicities_on_grid, zero_census)

CHUNK = 2048
SUITES = ("af", "gaf", "schwartz", "sz", "dmlz", "gdmlz", "mult", "dkss", "petrov")
SUITE_THEOREMS = {
    "af": ("af",), "gaf": ("gaf",), "schwartz": ("schwartz",), "sz": ("sz",),
    "dmlz": ("dmlz",), "gdmlz": ("gdmlz",), "mult": ("mult-schwartz", "mult-gsz"),
    "dkss": ("dkss",), "petrov": ("petrov",),
}
SUITE_THEOREMS["all"] = tuple(t for s in SUITES for t in SUITE_THEOREMS[s])

# observed quantity must be >= bound (lower) or <= bound (upper)
_LOWER = {"af", "gaf", "gdmlz"}


@dataclass(frozen=True)
class FamilySpec:
    grid: GridSpec
    max_total_degree: int
    per_var_caps: tuple[int, ...] | None = None
    mode: str = "exhaustive"  # or "random"
    seed: int = 0
    count: int = 10_000
    prefills: tuple[tuple[int, ...], ...] | None = None  # gaf; None = every b
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        a = self.grid.sizes
        caps = tuple(self.per_var_caps) if self.per_var_caps is not None else tuple(x - 1 for x in a)
        if len(caps) != len(a) or any(not 0 <= c <= x - 1 for c, x in zip(caps, a)):
            raise DomainError("per-variable caps must satisfy 0 <= cap_i <= a_i - 1")
        object.__setattr__(self, "per_var_caps", caps)
        if self.max_total_degree < 0:
            raise DomainError("max total degree must be >= 0")
        if self.mode not in ("exhaustive", "random"):
            raise DomainError(f"unknown coefficient source {self.mode!r}")
        if self.mode == "random" and self.count < 1:
            raise DomainError("random mode needs a positive draw count")
        if self.mode == "exhaustive" and self.size > self.cap:
            raise CapExceededError(f"{self.grid.ring.size}^{len(self.monomials)} polynomials exceed cap {self.cap}")

    @property
    def monomials(self) -> list[Monomial]:
        monos = [m for m in product(*(range(c + 1) for c in self.per_var_caps))
                 if sum(m) <= self.max_total_degree]
        return sorted(monos, key=lambda m: (sum(m), m))

    @property
    def size(self) -> int:
        return self.grid.ring.size**len(self.monomials)

    @classmethod
    def auto(cls, grid: GridSpec, max_total_degree: int, seed: int = 0, count: int = 10_000,
             cap: int = DEFAULT_CAP, **kw) -> "FamilySpec":
        """Exhaustive when under ``cap``, otherwise ``count`` seeded draws."""
        probe = cls(grid, max_total_degree, mode="random", seed=seed, count=count, cap=cap, **kw)
        mode = "exhaustive" if probe.size <= cap else "random"
        return cls(grid, max_total_degree, mode=mode, seed=seed, count=count, cap=cap, **kw)

    def describe(self) -> dict:
        return {"mode": self.mode, "max_total_degree": self.max_total_degree,
                "per_var_caps": list(self.per_var_caps), "monomials": len(self.monomials),
                "count": self.size if self.mode == "exhaustive" else self.count}


# ---------------------------------------------------------------------------
# chunk context
# ---------------------------------------------------------------------------

class _Context:
    def __init__(self, fam: FamilySpec):
        self.fam = fam
        self.grid = A = fam.grid
        self.ring = A.ring
        self.monos = fam.monomials
        self.index = {m: i for i, m in enumerate(self.monos)}
        self.E = np.array(self.monos, dtype=np.int64).reshape(len(self.monos), A.n)
        self.tdeg = self.E.sum(axis=1)
        self.a = A.sizes
        self.V = monomial_values(self.monos, A)
        self.cond_d = A.satisfies_d
        self.sorted_sizes = all(x >= y for x, y in zip(self.a, self.a[1:]))
        self.same_sets = all(s.elements == A.sets[0].elements for s in A.sets)
        self._deriv = None
        if fam.prefills is None:
            self.prefills = list(product(*(range(1, x + 1) for x in self.a)))
        else:
            self.prefills = [tuple(b) for b in fam.prefills]
        self._random = None

    def coefficients(self, lo: int, hi: int) -> np.ndarray:
        M, R = len(self.monos), self.ring.size
        if self.fam.mode == "random":
            if self._random is None:
                rng = np.random.Generator(np.random.PCG64(self.fam.seed))
                self._random = rng.integers(0, R, size=(self.fam.count, M), dtype=np.int64)
            return self._random[lo:hi]
        idx = np.arange(lo, hi, dtype=np.int64)
        weights = R**np.arange(M - 1, -1, -1, dtype=np.int64)
        return (idx[:, None] // weights[None, :]) % R

    @property
    def total(self) -> int:
        return self.fam.size if self.fam.mode == "exhaustive" else self.fam.count

    @property
    def derivative_matrices(self) -> list[tuple[int, np.ndarray]]:
        """``(|J|, M_J)`` with ``(C @ M_J)[b, x] = D^J(f_b)(x)``, by increasing ``|J|``."""
        if self._deriv is None:
            ring, A = self.ring, self.grid
            top = int(self.tdeg.max()) if len(self.monos) else 0
            out = []
            for level in range(top + 1):
                for J in _derivative_indices(A.n, level):
                    shifted, rows, scale = [], [], []
                    for r, I in enumerate(self.monos):
                        if all(i >= j for i, j in zip(I, J)):
                            c = ring.from_int(multi_binom(I, J))
                            if c:
                                rows.append(r)
                                shifted.append(tuple(i - j for i, j in zip(I, J)))
                                scale.append(c)
                    Mj = np.zeros((len(self.monos), A.size), dtype=np.int64)
                    if rows:
                        vals = monomial_values(shifted, A)
                        Mj[rows] = ring.mul_arr(np.array(scale, dtype=np.int64)[:, None], vals)
                    out.append((level, Mj))
            self._deriv = out
        return self._deriv

    # -- per-batch data ----------------------------------------------------

    def total_degrees(self, C):
        return np.where(C != 0, self.tdeg[None, :], -1).max(axis=1)

    def var_degrees(self, C):
        nz = C != 0
        return np.stack([np.where(nz, self.E[None, :, i], -1).max(axis=1)
                         for i in range(self.grid.n)], axis=1)

    def chains(self, C):
        """Leading-coefficient chain ``(d_1, ..., d_n)``: peel t_n, then t_{n-1}, ..."""
        active = C != 0
        n = self.grid.n
        out = np.zeros((len(C), n), dtype=np.int64)
        for i in range(n - 1, -1, -1):
            e = self.E[None, :, i]
            d = np.where(active, e, -1).max(axis=1)
            out[:, i] = d
            active &= e == d[:, None]
        return out

    def values(self, C):
        return self.ring.matmul(C, self.V)

    def multiplicities(self, C):
        out = np.full((len(C), self.grid.size), -1, dtype=np.int64)
        for level, Mj in self.derivative_matrices:
            hit = (self.ring.matmul(C, Mj) != 0) & (out < 0)
            out[hit] = level
            if (out >= 0).all():
                break
        return out

    def row_poly(self, row) -> SparsePoly:
        return SparsePoly(self.ring, self.grid.n,
                          {m: int(c) for m, c in zip(self.monos, row) if c})


# ---------------------------------------------------------------------------
# tallies
# ---------------------------------------------------------------------------

@dataclass
class _Tally:
    checked: int = 0
    skipped: int = 0
    best: dict = field(default_factory=dict)        # key -> (slack, idx, row, bound, observed, extra)
    violations: list = field(default_factory=list)  # (idx, row, bound, observed, key, extra)

    def merge(self, other: "_Tally"):
        self.checked += other.checked
        self.skipped += other.skipped
        for k, v in other.best.items():
            if k not in self.best or v[:2] < self.best[k][:2]:
                self.best[k] = v
        self.violations.extend(other.violations)


def _record(t: _Tally, theorem: str, keys: np.ndarray, bound_of, observed: np.ndarray,
            idx: np.ndarray, C: np.ndarray, extras=None):
    """Group instances by key, compare with the bound, keep per-key least slack."""
    if len(keys) == 0:
        return
    uniq, inv = np.unique(keys, axis=0, return_inverse=True)
    inv = inv.ravel()
    lower = theorem in _LOWER
    for g, key in enumerate(uniq):
        key = tuple(int(v) for v in key)
        members = np.flatnonzero(inv == g)
        bound = bound_of(key)
        if bound is None:
            t.skipped += len(members)
            continue
        t.checked += len(members)
        obs = observed[members]
        slack = obs - bound if lower else bound - obs
        for j in members[slack < 0]:
            t.violations.append((int(idx[j]), C[j].copy(), bound, int(observed[j]), key,
                                 extras[j] if extras is not None else None))
        j = int(np.argmin(slack))
        m = members[j]
        cand = (int(slack[j]), int(idx[m]), C[m].copy(), bound, int(observed[m]),
                extras[m] if extras is not None else None)
        if key not in t.best or cand[:2] < t.best[key][:2]:
            t.best[key] = cand


def _scan_chunk(ctx: _Context, theorems: Sequence[str], lo: int, hi: int) -> dict:
    tallies = {th: _Tally() for th in theorems}
    C = ctx.coefficients(lo, hi)
    idx = np.arange(lo, hi, dtype=np.int64)
    nonzero = (C != 0).any(axis=1)
    for th in theorems:
        tallies[th].skipped += int((~nonzero).sum())
    C, idx = C[nonzero], idx[nonzero]
    if len(C) == 0:
        return tallies
    if not ctx.cond_d:
        for th in theorems:
            tallies[th].skipped += len(C)
        return tallies
    ring, A, a = ctx.ring, ctx.grid, ctx.a
    n, size = A.n, A.size
    d = ctx.total_degrees(C)
    zeros = nonzeros = chains = dvec = mults = None

    def need_values():
        nonlocal zeros, nonzeros
        if zeros is None:
            z = (ctx.values(C) == 0).sum(axis=1)
            zeros, nonzeros = z, size - z

    for th in theorems:
        t = tallies[th]
        if th == "af":
            need_values()
            _record(t, th, d[:, None], lambda k: B.alon_furedi_nonzeros(a, k[0]).value,
                    nonzeros, idx, C)
        elif th == "gaf":
            need_values()
            dvec = ctx.var_degrees(C) if dvec is None else dvec
            for b in ctx.prefills:
                room = np.array([x - y for x, y in zip(a, b)])
                ok = (dvec <= room[None, :]).all(axis=1)
                t.skipped += int((~ok).sum())
                keys = np.concatenate([np.broadcast_to(np.array(b), (int(ok.sum()), n)),
                                       d[ok, None]], axis=1)
                _record(t, th, keys, lambda k: B.generalized_af_nonzeros(a, k[:n], k[n]).value,
                        nonzeros[ok], idx[ok], C[ok])
        elif th in ("schwartz", "mult-schwartz"):
            chains = ctx.chains(C) if chains is None else chains
            if th == "schwartz":
                need_values()
                obs = zeros
            else:
                mults = ctx.multiplicities(C) if mults is None else mults
                obs = mults.sum(axis=1)
            fn = B.schwartz_zeros if th == "schwartz" else B.mult_schwartz_bound
            _record(t, th, chains, lambda k, fn=fn: fn(a, k).value, obs, idx, C)
        elif th in ("sz", "mult-gsz"):
            if not ctx.sorted_sizes:
                t.skipped += len(C)
                continue
            if th == "sz":
                need_values()
                obs = zeros
            else:
                mults = ctx.multiplicities(C) if mults is None else mults
                obs = mults.sum(axis=1)
            fn = B.sz_zeros if th == "sz" else B.mult_gsz_bound
            _record(t, th, d[:, None], lambda k, fn=fn: fn(a, k[0]).value, obs, idx, C)
        elif th == "dmlz":
            if not ctx.same_sets:
                t.skipped += len(C)
                continue
            need_values()
            dvec = ctx.var_degrees(C) if dvec is None else dvec
            s = a[0]

            def dmlz(k):
                r = B.dmlz_zeros(s, n, k[0])
                return r.value if r.applicable else None
            _record(t, th, dvec.max(axis=1)[:, None], dmlz, zeros, idx, C)
        elif th == "gdmlz":
            need_values()
            dvec = ctx.var_degrees(C) if dvec is None else dvec

            def gdmlz(k):
                r = B.generalized_dmlz_nonzeros(a, k)
                return r.value if r.applicable else None
            _record(t, th, dvec, gdmlz, nonzeros, idx, C)
        elif th == "dkss":
            mults = ctx.multiplicities(C) if mults is None else mults
            _dkss_batch(ctx, t, C, idx, mults)
        elif th == "petrov":
            need_values()
            dvec = ctx.var_degrees(C) if dvec is None else dvec
            keys = np.concatenate([d[:, None], dvec], axis=1)

            def petrov(k):
                g = extremal_polylinear(A, k[1:], k[0])
                return zero_census(g, A).zeros
            _record(t, th, keys, petrov, zeros, idx, C)
        else:
            raise DomainError(f"unknown theorem id {th!r}")
    return tallies


def _dkss_batch(ctx: _Context, t: _Tally, C, idx, mults):
    A, n = ctx.grid, ctx.grid.n
    an = ctx.a[-1]
    rest = A.size // an
    lhs = mults.reshape(len(C), rest, an).sum(axis=2)
    E = ctx.E
    dn = ctx.var_degrees(C)[:, n - 1]
    lead = np.zeros_like(C)
    for v in np.unique(dn):
        rows = np.flatnonzero(dn == v)
        src = np.flatnonzero(E[:, n - 1] == v)
        dst = [ctx.index[tuple(E[s, :n - 1]) + (0,)] for s in src]
        lead[np.ix_(rows, dst)] = C[np.ix_(rows, src)]
    m_lead = ctx.multiplicities(lead).reshape(len(C), rest, an)[:, :, 0]
    B_ = len(C)
    keys = np.stack([np.repeat(dn, rest), m_lead.ravel()], axis=1)
    obs = lhs.ravel()
    points = A.point_array.reshape(rest, an, n)[:, 0, :n - 1]
    extras = [tuple(int(v) for v in points[j]) for _ in range(B_) for j in range(rest)]
    _record(t, "dkss", keys, lambda k: an * k[1] + k[0], obs,
            np.repeat(idx, rest), np.repeat(C, rest, axis=0), extras)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def _key_json(theorem: str, key: tuple, n: int, extra) -> dict:
    if theorem in ("af", "sz", "mult-gsz"):
        return {"d": key[0]}
    if theorem == "gaf":
        return {"b": list(key[:n]), "d": key[n]}
    if theorem in ("schwartz", "mult-schwartz"):
        return {"chain": list(key)}
    if theorem == "dmlz":
        return {"max_var_degree": key[0]}
    if theorem == "gdmlz":
        return {"dvec": list(key)}
    if theorem == "petrov":
        return {"d": key[0], "dvec": list(key[1:])}
    if theorem == "dkss":
        return {"d_n": key[0], "m_lead": key[1], "point": list(extra)}
    return {"key": list(key)}  # pragma: no cover


@dataclass
class VerificationReport:
    theorem_id: str
    ring: str
    grid: dict
    family: dict
    checked: int
    skipped: int
    violations: list
    tight: list
    witnesses: list  # least-slack witness per key, tight or not
    seed: int
    elapsed_ms: float | None = None
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"theorem": self.theorem_id, "ring": self.ring, "grid": self.grid,
                "family": self.family, "checked": self.checked, "skipped": self.skipped,
                "violations": self.violations, "tight": self.tight, "seed": self.seed,
                "elapsed_ms": self.elapsed_ms, "notes": self.notes}


def _build_report(ctx: _Context, theorem: str, t: _Tally, elapsed) -> VerificationReport:
    n = ctx.grid.n

    def entry(row, bound, observed, key, extra, slack=None):
        e = {"poly": format_poly(ctx.row_poly(row)), "bound": int(bound),
             "observed": int(observed), "key": _key_json(theorem, key, n, extra)}
        if slack is not None:
            e["slack"] = slack
        return e

    ordered = sorted(t.best.items(), key=lambda kv: (kv[0], kv[1][5] or ()))
    witnesses = [entry(v[2], v[3], v[4], k, v[5], v[0]) for k, v in ordered]
    tight = [entry(v[2], v[3], v[4], k, v[5]) for k, v in ordered if v[0] == 0]
    viol = [entry(v[1], v[2], v[3], v[4], v[5]) for v in sorted(t.violations, key=lambda v: (v[0], v[4]))]
    notes = []
    if not ctx.cond_d:
        notes.append("grid violates Condition (D): no bound is claimed")
    elif theorem in ("sz", "mult-gsz") and not ctx.sorted_sizes:
        notes.append("sizes not non-increasing: bound not applicable")
    elif theorem == "dmlz" and not ctx.same_sets:
        notes.append("grid is not S^n: bound not applicable")
    fam = ctx.fam
    return VerificationReport(theorem, str(ctx.ring), ctx.grid.to_json(), fam.describe(),
                              t.checked, t.skipped, viol, tight, witnesses, fam.seed,
                              elapsed, notes)


def verify_many(theorems: Sequence[str], family: FamilySpec, threads: int = 1,
                timing: bool = False) -> list[VerificationReport]:
    for th in theorems:
        if th not in SUITE_THEOREMS["all"]:
            raise DomainError(f"unknown theorem id {th!r}")
    start = time.perf_counter()
    ctx = _Context(family)
    if any(th in ("mult-schwartz", "mult-gsz", "dkss") for th in theorems):
        ctx.derivative_matrices  # build once before threads share it
    if family.mode == "random":
        ctx.coefficients(0, 0)
    bounds_ = [(lo, min(lo + CHUNK, ctx.total)) for lo in range(0, ctx.total, CHUNK)]
    run = lambda lh: _scan_chunk(ctx, theorems, *lh)  # noqa: E731
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(run, bounds_))
    else:
        parts = [run(lh) for lh in bounds_]
    merged = {th: _Tally() for th in theorems}
    for part in parts:
        for th in theorems:
            merged[th].merge(part[th])
    elapsed = round((time.perf_counter() - start) * 1000, 3) if timing else None
    return [_build_report(ctx, th, merged[th], elapsed) for th in theorems]


def verify(theorem_id: str, family: FamilySpec, threads: int = 1, timing: bool = False) -> VerificationReport:
    return verify_many([theorem_id], family, threads, timing)[0]


def verify_suite(suite: str, family: FamilySpec, threads: int = 1,
                 timing: bool = False) -> list[VerificationReport]:
    if suite not in SUITE_THEOREMS:
        raise DomainError(f"unknown suite {suite!r}; choose from {', '.join(SUITE_THEOREMS)}")
    return verify_many(SUITE_THEOREMS[suite], family, threads, timing)


def replay(report: VerificationReport, entry: dict) -> int:
    """Recompute a witness's observed value from its printed polynomial."""
    from .poly import grid_from_json, parse_poly

    A = grid_from_json(report.grid)
    f = parse_poly(entry["poly"], A.ring, A.n)
    th = report.theorem_id
    if th in ("af", "gaf", "gdmlz"):
        return zero_census(f, A).nonzeros
    if th in ("schwartz", "sz", "dmlz", "petrov"):
        return zero_census(f, A).zeros
    m = multiplicities_on_grid(f, A)
    if th in ("mult-schwartz", "mult-gsz"):
        return int(m.sum())
    point = tuple(entry["key"]["point"])
    return sum(multiplicity(f, point + (x,)) for x in A.sets[-1].elements)


# ---------------------------------------------------------------------------
# constructions and comparisons
# ---------------------------------------------------------------------------

@dataclass
class SharpnessRow:
    degree: object
    poly: str
    bound: int
    observed: int

    @property
    def equal(self) -> bool:
        return self.bound == self.observed


@dataclass
class SharpnessReport:
    theorem_id: str
    grid: dict
    prefills: tuple[int, ...]
    rows: list[SharpnessRow]

    @property
    def all_equal(self) -> bool:
        return all(r.equal for r in self.rows)

    def to_json(self) -> dict:
        return {"theorem": self.theorem_id, "grid": self.grid, "prefills": list(self.prefills),
                "rows": [{"d": r.degree, "poly": r.poly, "bound": r.bound, "observed": r.observed,
                          "equal": r.equal} for r in self.rows],
                "all_equal": self.all_equal}


def sharpness_scan(theorem_id: str, A: GridSpec, prefills: Sequence[int] | None = None) -> SharpnessReport:
    """Build the polylinear extremal polynomial for each admissible degree and compare."""
    if not A.satisfies_d:
        raise DomainError("sharpness needs a Condition (D) grid")
    a = A.sizes
    b = tuple(prefills) if prefills is not None else (1,) * A.n
    rows = []
    if theorem_id in ("af", "gaf"):
        caps = tuple(x - y for x, y in zip(a, b))
        for d in range(sum(caps) + 1):
            f = extremal_polylinear(A, caps, d)
            bound = B.generalized_af_nonzeros(a, b, d).value
            rows.append(SharpnessRow(d, format_poly(f), bound, zero_census(f, A).nonzeros))
    elif theorem_id == "gdmlz":
        ring = A.ring
        for dvec in product(*(range(1, x) for x in a)):
            f = SparsePoly.constant(ring, A.n)
            for i, (s, di) in enumerate(zip(A.sets, dvec)):
                for x in s.elements[:di]:
                    f = f * SparsePoly.linear_factor(ring, A.n, i, x)
            bound = B.generalized_dmlz_nonzeros(a, dvec).value
            rows.append(SharpnessRow(list(dvec), format_poly(f), bound, zero_census(f, A).nonzeros))
    else:
        raise DomainError(f"no sharpness construction for {theorem_id!r}")
    return SharpnessReport(theorem_id, A.to_json(), b, rows)


def find_extremal(A: GridSpec, d: int, objective: str = "min_nonzeros", exact: bool = True,
                  cap: int = DEFAULT_CAP) -> tuple[SparsePoly, int]:
    """Scan nonzero reduced polynomials of degree ``d`` (or ``<= d``); first argextreme wins."""
    if objective not in ("min_nonzeros", "max_multiplicity_sum"):
        raise DomainError(f"unknown objective {objective!r}")
    fam = FamilySpec(A, d, cap=cap)
    ctx = _Context(fam)
    best, best_row = None, None
    for lo in range(0, ctx.total, CHUNK):
        C = ctx.coefficients(lo, min(lo + CHUNK, ctx.total))
        deg = ctx.total_degrees(C)
        keep = (deg == d) if exact else (deg >= 0)
        C = C[keep]
        if len(C) == 0:
            continue
        if objective == "min_nonzeros":
            score = (ctx.values(C) != 0).sum(axis=1)
            j = int(np.argmin(score))
            better = best is None or score[j] < best
        else:
            score = ctx.multiplicities(C).sum(axis=1)
            j = int(np.argmax(score))
            better = best is None or score[j] > best
        if better:
            best, best_row = int(score[j]), C[j].copy()
    if best is None:
        raise DomainError(f"no nonzero reduced polynomial of degree {d}")
    return ctx.row_poly(best_row), best


def is_polylinear(f: SparsePoly) -> bool:
    """True iff ``f`` is a constant times a product of factors ``t_i - x``."""
    if f.is_zero:
        return False
    ring = f.ring
    if not ring.is_field:
        raise DomainError("polylinearity test needs a field")
    n = f.nvars
    I0 = max(f.terms)
    c0 = f.terms[I0]
    tops = degrees(f)[1]
    factors = []
    for i in range(n):
        coeffs = {}
        for e in range(int(tops[i]) + 1):
            I = I0[:i] + (e,) + I0[i + 1:]
            v = f.coefficient(I)
            if v:
                coeffs[tuple(e if j == i else 0 for j in range(n))] = v
        factors.append(SparsePoly(ring, n, coeffs))
    inv = ring.inv(c0)
    g = SparsePoly.constant(ring, n, ring.pow(inv, n - 1))
    for h in factors:
        g = g * h
    if g != f:
        return False
    for i, h in enumerate(factors):
        deg = int(degrees(h)[1][i])
        roots = sum(multiplicity(h, tuple(x if j == i else 0 for j in range(n)))
                    for x in range(ring.size))
        if roots != deg:
            return False
    return True


@dataclass
class PetrovRecord:
    zeros_f: int
    zeros_g: int
    degree: int
    var_degrees: tuple[int, ...]

    @property
    def holds(self) -> bool:
        return self.zeros_f <= self.zeros_g


def petrov_compare(f: SparsePoly, A: GridSpec) -> tuple[SparsePoly, PetrovRecord]:
    """Compare ``#Z(f)`` with the polylinear polynomial of the same degree data."""
    if f.is_zero:
        raise DomainError("f must be nonzero")
    if not A.satisfies_d:
        raise DomainError("comparison needs a Condition (D) grid")
    total, per = degrees(f)
    per = tuple(int(x) for x in per)
    if any(x >= a for x, a in zip(per, A.sizes)):
        raise DomainError("f must be A-reduced")
    caps = tuple(max(x, 0) for x in per)
    g = extremal_polylinear(A, caps, int(total))
    rec = PetrovRecord(zero_census(f, A).zeros, zero_census(g, A).zeros, int(total), caps)
    if not rec.holds:
        raise BoundViolationError(f"#Z(f) = {rec.zeros_f} > #Z(g) = {rec.zeros_g}")
    return g, rec


def dkss_lemma_check(f: SparsePoly, A: GridSpec) -> dict:
    """Per-fiber check of ``sum_x m(f,(x',x)) <= a_n m(f_lead, x') + d_n``."""
    if f.is_zero:
        raise DomainError("zero polynomial")
    if not A.satisfies_d:
        raise DomainError("check needs a Condition (D) grid")
    n = A.n
    dn = int(degrees(f)[1][n - 1])
    lead = SparsePoly(f.ring, n, {I[:-1] + (0,): c for I, c in f.terms.items() if I[-1] == dn})
    an = A.sizes[-1]
    mf = multiplicities_on_grid(f, A).reshape(-1, an)
    ml = multiplicities_on_grid(lead, A).reshape(-1, an)[:, 0]
    pts = A.point_array.reshape(-1, an, n)[:, 0, :n - 1]
    rows, violations = [], 0
    for p, lhs, m in zip(pts, mf.sum(axis=1), ml):
        rhs = an * int(m) + dn
        ok = int(lhs) <= rhs
        violations += not ok
        rows.append({"point": [int(v) for v in p], "lhs": int(lhs), "rhs": rhs, "ok": ok})
    return {"poly": format_poly(f), "d_n": dn, "rows": rows, "violations": violations}


def vanishing_witness(A: GridSpec, cap: int = DEFAULT_CAP) -> SparsePoly | None:
    """First nonzero A-reduced polynomial vanishing on all of ``A``, if any."""
    fam = FamilySpec(A, sum(x - 1 for x in A.sizes), cap=cap)
    ctx = _Context(fam)
    for lo in range(0, ctx.total, CHUNK):
        C = ctx.coefficients(lo, min(lo + CHUNK, ctx.total))
        C = C[(C != 0).any(axis=1)]
        hit = np.flatnonzero((ctx.values(C) == 0).all(axis=1))
        if len(hit):
            return ctx.row_poly(C[hit[0]])
    return None


def schwartz_fraction(a: Sequence[int], chain: Sequence[int]) -> Fraction:
    """Unfloored ``#A * sum(d_i / a_i)``."""
    return math.prod(a) * sum(Fraction(d, x) for d, x in zip(chain, a))


def multiplicity_af_gap(q: int, d1: int, d2: int) -> dict:
    """Multiplicity sum of ``t1^d1 t2^d2`` on GF(q)^2 against ``q^2 - m(q,q; 2q-d1-d2)``."""
    from .ring import GF

    ring = GF(q)
    A = GridSpec.full(ring, 2)
    f = SparsePoly.monomial(ring, (d1, d2))
    total = int(multiplicities_on_grid(f, A).sum())
    af = q * q - min_product(BinProfile.unit((q, q), 2 * q - d1 - d2))
    verdict = "exceeds" if total > af else ("equal (non-strict)" if total == af else "below")
    return {"q": q, "d": [d1, d2], "multiplicity_sum": total, "af_zero_count": af,
            "verdict": verdict}

"""Command-line entry point: ``afgrid <subcommand> ...``.

Exit status: 0 success, 1 bad input or inapplicable theorem, 2 enumeration
cap exceeded, 3 a bound was violated (a bug if it ever happens).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import bounds as B
from . import codes as C
from . import geometry as G
from . import oracle as O
from .bins import BinProfile, min_product, min_product_witness
from .errors import BoundViolationError, CapExceededError, DomainError
from .poly import (DEFAULT_CAP, INF, GridSpec, degrees, evaluate, format_poly, grid_from_json,
                   grid_reduce, leading_coeff_chain, multiplicities_on_grid, multiplicity, parse_poly,
                   zero_census)
from .ring import parse_ring

CAP_ENV = "AFGRID_CAP"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise DomainError(f"{CAP_ENV} must be an integer") from None
    return cap


def _global_options(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--cap", type=int, default=d(None), help=f"enumeration cap (default 2^24 or ${CAP_ENV})")
    p.add_argument("--seed", type=int, default=d(0), help="seed for random sampling (default 0)")
    p.add_argument("--output", choices=("table", "json"), default=d("table"))
    p.add_argument("--out", default=d(None), help="write output to this file instead of stdout")
    p.add_argument("--threads", type=int, default=d(1))


def _grid_options(p: argparse.ArgumentParser, required_ring: bool = False):
    p.add_argument("--grid", help="grid JSON file {\"ring\": ..., \"sets\": [...]}")
    p.add_argument("--ring", help="ring such as GF:3, GF:2^2, Z:6 (full grid with --dims)")
    p.add_argument("--dims", type=int, help="number of coordinates for a full grid")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="afgrid", description="Zero bounds on finite grids: bins, bounds, codes, geometry.")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    common = _Parser(add_help=False)
    _global_options(common, suppress=True)

    p = sub.add_parser("bins", parents=[common], help="balls in prefilled bins m(a; b; N)")
    p.add_argument("--caps", type=_ints, required=True)
    p.add_argument("--prefill", type=_ints)
    p.add_argument("--total", type=int, required=True)
    p.add_argument("--witness", action="store_true", help="also print a least argmin distribution")

    p = sub.add_parser("bound", parents=[common], help="evaluate a closed-form bound")
    p.add_argument("--theorem", required=True, choices=sorted(B.THEOREMS))
    _grid_options(p)
    p.add_argument("--sizes", type=_ints, help="grid sizes when no grid is given")
    p.add_argument("--poly", help="take degree data from this polynomial")
    p.add_argument("--prefill", type=_ints)
    p.add_argument("--degree", type=int)
    p.add_argument("--chain", type=_ints)
    p.add_argument("--dvec", type=_ints)

    for name, help_ in (("reduce", "reduce a polynomial modulo the grid ideal"),
                        ("eval", "evaluate a polynomial on a grid or at a point")):
        p = sub.add_parser(name, parents=[common], help=help_)
        _grid_options(p)
        p.add_argument("--poly", required=True)
        if name == "eval":
            p.add_argument("--point", help="comma-separated element literals")
            p.add_argument("--multiplicities", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="run the verification engine")
    p.add_argument("--suite", required=True, choices=list(O.SUITE_THEOREMS))
    _grid_options(p)
    p.add_argument("--max-deg", type=int)
    p.add_argument("--mode", choices=("auto", "exhaustive", "random"), default="auto")
    p.add_argument("--samples", type=int, default=10_000, help="random draws when sampling")
    p.add_argument("--prefill", type=_ints, help="single prefill vector for gaf (default: all)")
    p.add_argument("--timing", action="store_true", help="record elapsed_ms (breaks byte-identity)")

    p = sub.add_parser("codes", parents=[common], help="evaluation codes on grids")
    p.add_argument("action", choices=("mindist", "genmat", "dim"))
    p.add_argument("--kind", choices=("grm", "agc", "gagc"), required=True)
    _grid_options(p)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--prefill", type=_ints)
    p.add_argument("--method", choices=("formula", "brute", "both", "exact"), default="both")

    p = sub.add_parser("geom", parents=[common], help="finite affine and projective geometry")
    p.add_argument("action", choices=("enumerate", "holes", "missing", "blocking", "essential",
                                      "tangent", "cover-min"))
    p.add_argument("--space", choices=("AG", "PG"), default="PG")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--cover", help="JSON list of hyperplane vectors")
    p.add_argument("--set", dest="point_set", help="JSON list of point vectors")
    p.add_argument("--point", type=_ints)
    p.add_argument("--max-size", type=int)
    p.add_argument("--grid", help="ring grid JSON for cover-min")
    return parser


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _load_grid(args, cap) -> GridSpec:
    if args.grid:
        return grid_from_json(Path(args.grid).read_text())
    if args.ring and args.dims:
        return GridSpec.full(parse_ring(args.ring), args.dims)
    raise DomainError("give --grid FILE or --ring R --dims N")


def _table(rows) -> str:
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


class Output:
    def __init__(self, args):
        self.json = args.output == "json"
        self.path = args.out

    def emit(self, text: str):
        if not text.endswith("\n"):
            text += "\n"
        if self.path is None:
            sys.stdout.write(text)
            return
        target = Path(self.path)
        fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=".afgrid-")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, target)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise

    def doc(self, obj, table: str):
        self.emit(json.dumps(obj, indent=2, sort_keys=False) if self.json else table)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_bins(args, out: Output, cap: int) -> int:
    prefill = args.prefill or [1] * len(args.caps)
    profile = BinProfile(tuple(args.caps), tuple(prefill), args.total)
    value = min_product(profile)
    if args.witness or out.json:
        obj = {"value": value}
        if args.witness:
            if args.total < profile.prefill_total:
                obj["witness"] = None
            else:
                obj["witness"] = list(min_product_witness(profile)[1])
        out.emit(json.dumps(obj))
    else:
        out.emit(str(value))
    return 0


def _bound_inputs(args, cap):
    if args.grid or args.ring:
        A = _load_grid(args, cap)
        sizes = A.sizes
    elif args.sizes:
        A, sizes = None, tuple(args.sizes)
    else:
        raise DomainError("give --grid, --ring/--dims or --sizes")
    return A, sizes


def cmd_bound(args, out: Output, cap: int) -> int:
    A, a = _bound_inputs(args, cap)
    th = args.theorem
    d = args.degree
    chain = args.chain
    dvec = args.dvec
    if args.poly:
        if A is None:
            raise DomainError("--poly needs a grid")
        f = parse_poly(args.poly, A.ring, A.n)
        if f.is_zero:
            raise DomainError("degree data of the zero polynomial is undefined")
        total, per = degrees(f)
        d = int(total)
        dvec = [int(x) for x in per]
        chain = list(leading_coeff_chain(f).degrees)
    need = {"af": "d", "gaf": "d", "sz": "d", "mult-gsz": "d", "klp": "d", "dmlz": "dvec",
            "schwartz": "chain", "mult-schwartz": "chain", "gdmlz": "dvec"}[th]
    if need == "d" and d is None:
        raise DomainError("give --degree or --poly")
    if need == "chain" and chain is None:
        raise DomainError("give --chain or --poly")
    if need == "dvec" and dvec is None and not (th == "dmlz" and d is not None):
        raise DomainError("give --dvec or --poly")
    if th == "af":
        r = B.alon_furedi_nonzeros(a, d)
    elif th == "gaf":
        r = B.generalized_af_nonzeros(a, args.prefill or [1] * len(a), d)
    elif th == "sz":
        r = B.sz_zeros(a, d)
    elif th == "mult-gsz":
        r = B.mult_gsz_bound(a, d)
    elif th == "schwartz":
        r = B.schwartz_zeros(a, chain)
    elif th == "mult-schwartz":
        r = B.mult_schwartz_bound(a, chain)
    elif th == "gdmlz":
        r = B.generalized_dmlz_nonzeros(a, dvec)
    elif th == "dmlz":
        if A is not None and any(s.elements != A.sets[0].elements for s in A.sets):
            raise DomainError("DMLZ needs a grid of the form S^n")
        if len(set(a)) != 1:
            raise DomainError("DMLZ needs equal coordinate sizes")
        r = B.dmlz_zeros(a[0], len(a), max(dvec) if dvec is not None else d)
    else:  # klp
        q = A.ring.size if A is not None else a[0]
        if len(set(a)) != 1 or a[0] != q:
            raise DomainError("KLP needs the full grid GF(q)^n")
        r = B.klp_min_weight(len(a), q, d)
    out.emit(json.dumps(r.to_json()))
    return 0 if r.applicable else 1


def cmd_reduce(args, out: Output, cap: int) -> int:
    A = _load_grid(args, cap)
    f = parse_poly(args.poly, A.ring, A.n)
    g = grid_reduce(f, A)
    out.doc({"poly": format_poly(g)}, format_poly(g))
    return 0


def cmd_eval(args, out: Output, cap: int) -> int:
    A = _load_grid(args, cap)
    ring = A.ring
    f = parse_poly(args.poly, ring, A.n)
    if args.point:
        x = [ring.parse_element(e) for e in _split_literals(args.point)]
        v = evaluate(f, x)
        if not args.multiplicities:
            out.doc({"value": ring.to_json(v)}, ring.format_element(v))
            return 0
        m = multiplicity(f, x)
        m = "inf" if m == INF else int(m)
        out.doc({"value": ring.to_json(v), "multiplicity": m},
                _table([["value", ring.format_element(v)], ["multiplicity", m]]))
        return 0
    census = zero_census(f, A, cap=cap)
    obj = {"zeros": census.zeros, "nonzeros": census.nonzeros}
    rows = [["zeros", census.zeros], ["nonzeros", census.nonzeros]]
    if args.multiplicities:
        m = multiplicities_on_grid(f, A, cap)
        obj["multiplicity_sum"] = int(m.sum())
        obj["multiplicities"] = [int(v) for v in m]
        rows.append(["multiplicity_sum", int(m.sum())])
    out.doc(obj, _table(rows))
    return 0


def _split_literals(text: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        parts.append(cur.strip())
    return parts


def cmd_verify(args, out: Output, cap: int) -> int:
    A = _load_grid(args, cap)
    max_deg = args.max_deg if args.max_deg is not None else sum(x - 1 for x in A.sizes)
    caps = tuple(min(x - 1, max_deg) for x in A.sizes)
    prefills = (tuple(args.prefill),) if args.prefill else None
    kw = dict(per_var_caps=caps, prefills=prefills, cap=cap, seed=args.seed, count=args.samples)
    if args.mode == "auto":
        fam = O.FamilySpec.auto(A, max_deg, **kw)
    else:
        fam = O.FamilySpec(A, max_deg, mode=args.mode, **kw)
    reports = O.verify_suite(args.suite, fam, threads=max(1, args.threads), timing=args.timing)
    docs = [r.to_json() for r in reports]
    obj = docs[0] if len(docs) == 1 else docs
    rows = [["theorem", "checked", "skipped", "violations", "tight"]]
    rows += [[r.theorem_id, r.checked, r.skipped, len(r.violations), len(r.tight)] for r in reports]
    out.doc(obj, _table(rows))
    return 3 if any(r.violations for r in reports) else 0


def _code_spec(args, cap) -> C.CodeSpec:
    if args.kind == "grm":
        ring = parse_ring(args.ring) if args.ring else None
        if ring is None or args.dims is None:
            raise DomainError("grm needs --ring GF:q and --dims n")
        if not ring.is_field:
            raise DomainError("grm needs a field")
        return C.CodeSpec(GridSpec.full(ring, args.dims), args.order, (), "grm")
    A = _load_grid(args, cap)
    if args.kind == "agc":
        if args.prefill:
            raise DomainError("agc has unit prefills; use --kind gagc")
        if not A.ring.is_field:
            raise DomainError("agc needs a field grid; use --kind gagc over rings")
        return C.agc(A, args.order)
    return C.gagc(A, args.order, args.prefill or [1] * A.n)


def cmd_codes(args, out: Output, cap: int) -> int:
    spec = _code_spec(args, cap)
    if args.action == "dim":
        k = C.dimension(spec)
        out.doc({"dimension": k, "length": spec.length}, str(k))
        return 0
    if args.action == "genmat":
        gen = C.generator_matrix(spec, cap)
        out.emit(gen.to_csv(spec.ring))
        return 0
    obj, rows = {"length": spec.length, "dimension": C.dimension(spec)}, []
    if args.method in ("formula", "both"):
        obj["formula"] = C.min_weight_formula(spec)
        rows.append(["formula", obj["formula"]])
    if args.method in ("brute", "both", "exact"):
        fn = C.min_weight_exact if args.method == "exact" else C.min_weight_bruteforce
        res = fn(spec, cap)
        obj["brute"] = res.weight
        obj["method"] = res.method
        obj["witness"] = None if res.witness is None else [spec.ring.to_json(v) for v in res.witness]
        rows.append([f"brute ({res.method})", res.weight])
    out.doc(obj, _table(rows))
    if "formula" in obj and "brute" in obj and obj["formula"] != obj["brute"]:
        raise BoundViolationError(f"formula {obj['formula']} != enumeration {obj['brute']}")
    return 0


def _vectors(path):
    if path is None:
        return None
    return G.load_vectors(Path(path).read_text())


def cmd_geom(args, out: Output, cap: int) -> int:
    act = args.action
    if act == "cover-min":
        if args.grid:
            A = grid_from_json(Path(args.grid).read_text())
        else:
            from .ring import GF
            A = GridSpec.full(GF(args.q), args.n)
        k = G.grid_cover_min(A, cap)
        out.doc({"cover_min": k, "min_size": min(A.sizes)}, str(k))
        return 0
    space = G.Space(args.space, args.n, args.q)
    space.check_cap(cap)
    if act == "enumerate":
        out.doc({"space": str(space), "points": len(space.points), "hyperplanes": len(space.hyperplanes)},
                _table([["points", len(space.points)], ["hyperplanes", len(space.hyperplanes)]]))
        return 0
    if act == "holes":
        cover = G.CoverSpec(space, tuple(tuple(v) for v in (_vectors(args.cover) or [])))
        hs = G.holes(cover)
        obj = {"holes": len(hs), "points": [list(p) for p in hs]}
        if space.kind == "PG" and cover.hyperplanes:
            obj["lower_bound"] = G.holes_lower_bound(space.n, space.q, len(cover.hyperplanes))
            if hs and len(hs) < obj["lower_bound"]:
                raise BoundViolationError("hole count below the lower bound")
        out.doc(obj, _table([[k, v] for k, v in obj.items() if k != "points"]))
        return 0
    if act == "missing":
        pts = _vectors(args.point_set)
        if not pts:
            raise DomainError("missing needs --set")
        count, bound = G.missing_hyperplanes(space, pts)
        out.doc({"missing": count, "bound": bound}, _table([["missing", count], ["bound", bound]]))
        return 0
    if act == "blocking":
        pts = _vectors(args.point_set)
        if pts is not None:
            ok = G.is_blocking_set(space, pts)
            out.doc({"blocking": ok}, str(ok).lower())
            return 0
        if args.max_size is None:
            raise DomainError("blocking needs --set or --max-size")
        res = G.min_blocking_search(space, args.max_size, cap)
        obj = {"size": res.size, "witness": None if res.witness is None else [list(p) for p in res.witness],
               "checked": {str(k): v for k, v in res.checked.items()}}
        out.doc(obj, _table([["size", res.size], ["witness", res.witness]]))
        return 0
    pts = _vectors(args.point_set)
    if not pts:
        raise DomainError(f"{act} needs --set")
    if act == "essential":
        ess = G.essential_points(space, pts)
        out.doc({"essential": [list(p) for p in ess]}, "\n".join(str(p) for p in ess))
        return 0
    # tangent
    targets = [args.point] if args.point else G.essential_points(space, pts)
    rows, objs = [["point", "tangents", "bound"]], []
    for x in targets:
        count, bound = G.tangent_count(space, pts, x)
        rows.append([tuple(space.point(x)), count, bound])
        objs.append({"point": list(space.point(x)), "count": count, "bound": bound})
    out.doc(objs[0] if args.point else objs, _table(rows))
    return 0


COMMANDS = {"bins": cmd_bins, "bound": cmd_bound, "reduce": cmd_reduce, "eval": cmd_eval,
            "verify": cmd_verify, "codes": cmd_codes, "geom": cmd_geom}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # usage errors and --help
        return e.code if isinstance(e.code, int) else 1
    try:
        cap = args.cap if args.cap is not None else _default_cap()
        if cap < 1:
            raise DomainError("cap must be positive")
        if args.threads < 1:
            raise DomainError("threads must be >= 1")
        return COMMANDS[args.command](args, Output(args), cap)
    except CapExceededError as e:
        print(f"afgrid: cap exceeded: {e}", file=sys.stderr)
        return 2
    except BoundViolationError as e:
        print(f"afgrid: bound violation: {e}", file=sys.stderr)
        return 3
    except (DomainError, OSError, json.JSONDecodeError) as e:
        print(f"afgrid: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

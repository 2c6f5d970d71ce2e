"""Command line front end.

Exit codes: 0 success, 1 a report verdict failed, 2 NotIrreducible or
NotOnSurface, 3 NoPointFound, 4 BudgetExceeded, 5 degenerate descent,
64 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .cubic import (ALREADY_RATIONAL, DESCENDED, CubicSurface, NotOnSurface, QuadExtPoint,
                    jacobian_singular_scan, secant_descent)
from .ff import (NotIrreducible, NotMonic, NotPrime, PolyParseError, UniPoly, find_irreducible,
                 is_prime, iter_irreducible, make_extension, make_prime_field, necklace_count,
                 parse_poly)
from .forms import form_eval
from .hermite import (SCHEMA, NoPointFound, affine_zero_count, build_system, eliminate_c1,
                      hermite_pipeline, projective_zero_count, quintic_field)
from .projective import BudgetExceeded, projective_size

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_NOT_IRREDUCIBLE = 2
EXIT_NOT_ON_SURFACE = 2
EXIT_NO_POINT = 3
EXIT_BUDGET = 4
EXIT_DEGENERATE = 5
EXIT_USAGE = 64

DEFAULT_BUDGET = 10 ** 7


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    command: str
    p: int
    modulus: str | None = None
    format: str = "json"
    budget: int = DEFAULT_BUDGET
    maxdeg: int = 2
    out: str | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.budget <= 0:
            raise UsageError("budget must be positive")
        if self.format not in ("json", "text"):
            raise UsageError(f"unknown format {self.format!r}")
        if not is_prime(self.p):
            raise UsageError(f"p = {self.p} is not prime")
        if self.maxdeg < 1:
            raise UsageError("maxdeg must be >= 1")
        if self.jobs < 1:
            raise UsageError("jobs must be >= 1")


def _emit(cfg: RunConfig, payload: dict, text: str):
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    if cfg.format == "json":
        print(json.dumps(payload))
    else:
        print(text)


def _quintic_modulus(cfg: RunConfig) -> UniPoly:
    if cfg.modulus is None:
        return find_irreducible(cfg.p, 5)
    try:
        f = parse_poly(cfg.modulus, cfg.p)
    except PolyParseError as exc:
        raise UsageError(str(exc)) from exc
    if f.degree != 5:
        raise UsageError(f"modulus must be a quintic, got degree {f.degree}")
    return f


def _report_text(d: dict) -> str:
    lines = [
        f"GF({d['p']}^5) = GF({d['p']})[z]/({d['modulus']})",
        f"point    ({' : '.join(map(str, d['point']))})",
        f"element  a = {d['element']}",
        f"minpoly  {d['minpoly']}",
        f"checks   pattern={d['c_pattern_ok']} primitive={d['primitive_ok']} on_surface={d['on_surface_ok']}",
    ]
    return "\n".join(lines)


def cmd_solve(cfg: RunConfig, timing: bool = True) -> int:
    f = _quintic_modulus(cfg)
    try:
        report = hermite_pipeline(cfg.p, f)
    except NotIrreducible as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_IRREDUCIBLE
    except NoPointFound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_POINT
    d = report.to_dict(timing=timing)
    _emit(cfg, d, _report_text(d))
    return EXIT_OK if report.ok else EXIT_VERDICT


def _solve_one(args):
    p, coeffs = args
    try:
        return hermite_pipeline(p, UniPoly(coeffs, p)).to_dict(timing=False)
    except (NoPointFound, AssertionError) as exc:
        return {"modulus": UniPoly(coeffs, p).to_text(), "error": f"{type(exc).__name__}: {exc}"}


def verify_all(p: int, budget: int | None = DEFAULT_BUDGET, jobs: int = 1) -> dict:
    """Run the pipeline on every monic irreducible quintic over GF(p)."""
    expected = necklace_count(p, 5)
    cost = p ** 5 + expected * projective_size(p, 4)
    if budget is not None and cost > budget:
        raise BudgetExceeded(f"verify-all over GF({p}) needs ~{cost} evaluations, budget is {budget}")
    work = [(p, f.coeffs) for f in iter_irreducible(p, 5)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_solve_one, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        reports = [_solve_one(w) for w in work]
    failed = [
        r["modulus"] for r in reports
        if "error" in r or not (r["c_pattern_ok"] and r["primitive_ok"] and r["on_surface_ok"])
    ]
    digest = hashlib.sha256()
    for r in reports:
        digest.update(json.dumps(r, sort_keys=True).encode())
        digest.update(b"\n")
    return {
        "schema": SCHEMA,
        "p": p,
        "expected": expected,
        "tested": len(reports),
        "succeeded": len(reports) - len(failed),
        "failed": failed,
        "count_ok": len(reports) == expected,
        "digest": digest.hexdigest(),
        "reports": reports,
    }


def cmd_verify_all(cfg: RunConfig) -> int:
    try:
        result = verify_all(cfg.p, cfg.budget, cfg.jobs)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    summary = {k: v for k, v in result.items() if k != "reports"}
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            json.dump(result, fh, indent=2)
            fh.write("\n")
    if cfg.format == "json":
        print(json.dumps(summary))
    else:
        print(f"GF({cfg.p}): tested {summary['tested']} (expected {summary['expected']}), "
              f"succeeded {summary['succeeded']}, failed {len(summary['failed'])}")
        for m in summary["failed"]:
            print(f"  FAILED {m}")
    ok = not result["failed"] and result["count_ok"]
    return EXIT_OK if ok else EXIT_VERDICT


def _load_surface(text: str, p: int) -> CubicSurface:
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        return CubicSurface.parse(text, p)
    except ValueError as exc:
        raise UsageError(f"bad surface: {exc}") from exc


def _parse_point(text: str, ctx) -> tuple:
    parts = [s for s in text.split(";")]
    if len(parts) != 4:
        raise UsageError("point needs 4 coordinates separated by ';'")
    try:
        coords = tuple(ctx(s.strip()) for s in parts)
    except PolyParseError as exc:
        raise UsageError(f"bad point coordinate: {exc}") from exc
    if not any(coords):
        raise UsageError("point coordinates are all zero")
    return coords


def cmd_descend(cfg: RunConfig, surface: str, point: str) -> int:
    X = _load_surface(surface, cfg.p)
    base = make_prime_field(cfg.p)
    try:
        K = make_extension(base, cfg.modulus) if cfg.modulus else \
            make_extension(base, find_irreducible(cfg.p, 2))
    except (NotIrreducible, NotMonic, PolyParseError) as exc:
        raise UsageError(f"bad quadratic modulus: {exc}") from exc
    if K.n != 2:
        raise UsageError("descend needs a quadratic modulus")
    P = QuadExtPoint(_parse_point(point, K), K)
    try:
        outcome = secant_descent(X, P)
    except NotOnSurface as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_ON_SURFACE
    d = {"schema": SCHEMA, "p": cfg.p, "quadratic_modulus": K.modulus.to_text("w"),
         "input": P.to_text(), **outcome.to_dict()}
    text = f"{outcome.outcome}" + (f" ({' : '.join(map(str, outcome.point))})" if outcome.point else "")
    _emit(cfg, d, text)
    return EXIT_OK if outcome.outcome in (DESCENDED, ALREADY_RATIONAL) else EXIT_DEGENERATE


def diagnostics(p: int, modulus, maxdeg: int = 2, budget: int = DEFAULT_BUDGET) -> dict:
    ctx = quintic_field(p, modulus)
    sys_ = build_system(ctx)
    trivial = (1, 0, 0, 0, 0)
    vals = [form_eval(c, trivial) for c in sys_.coefficients]
    cubic, subst = eliminate_c1(sys_)
    X = CubicSurface(cubic)
    d = {
        "schema": SCHEMA,
        "p": p,
        "modulus": ctx.modulus.to_text("x"),
        "trivial_point": {
            "on_system": vals[0] == 0 and vals[2] == 0,
            "c_values": vals,
        },
        "pivot": subst.pivot,
        "warnings": [],
    }
    try:
        sing = jacobian_singular_scan(X, maxdeg, budget)
        d["singular_scan"] = {"maxdeg": maxdeg, "points": [s.to_dict() for s in sing]}
    except BudgetExceeded as exc:
        d["warnings"].append(f"singular scan skipped: {exc}")
    try:
        n_aff = affine_zero_count(sys_, budget)
        n_proj = projective_zero_count(sys_, budget)
        d["counts"] = {
            "affine": n_aff,
            "projective": n_proj,
            "relation_ok": n_aff == 1 + (p - 1) * n_proj,
            "congruence_ok": n_aff % p == 0,
        }
    except BudgetExceeded as exc:
        d["warnings"].append(f"counts skipped: {exc}")
    return d


def cmd_diag(cfg: RunConfig) -> int:
    f = _quintic_modulus(cfg)
    try:
        d = diagnostics(cfg.p, f, cfg.maxdeg, cfg.budget)
    except NotIrreducible as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_IRREDUCIBLE
    lines = [
        f"GF({cfg.p}^5) = GF({cfg.p})[z]/({d['modulus']})",
        f"(1:0:0:0:0) on c1 = c3 = 0: {d['trivial_point']['on_system']}",
    ]
    if "singular_scan" in d:
        lines.append(f"singular points up to degree {cfg.maxdeg}: {len(d['singular_scan']['points'])}")
    if "counts" in d:
        c = d["counts"]
        lines.append(f"affine zeros {c['affine']}, projective {c['projective']}, "
                     f"relation {c['relation_ok']}, divisible by p {c['congruence_ok']}")
    lines.extend(f"warning: {w}" for w in d["warnings"])
    _emit(cfg, d, "\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hermite5", description="Hermite quintics over finite fields")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--p", type=int, required=True, help="characteristic (prime)")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="enumeration budget (env HERMITE_BUDGET overrides)")
        sp.add_argument("--out", help="also write JSON to this path")

    sp = sub.add_parser("solve", help="find a Hermite element for one quintic extension")
    common(sp)
    sp.add_argument("--modulus", help="monic irreducible quintic; default: smallest one")
    sp.add_argument("--no-timing", action="store_true", help="omit elapsed_ms")

    sp = sub.add_parser("verify-all", help="run every monic irreducible quintic over GF(p)")
    common(sp)
    sp.add_argument("--jobs", type=int, default=1)

    sp = sub.add_parser("descend", help="secant descent of a GF(p^2)-point")
    common(sp)
    sp.add_argument("--surface", required=True, help="cubic text, MultiForm JSON, or @file")
    sp.add_argument("--point", required=True, help="four coordinates in w separated by ';'")
    sp.add_argument("--modulus", help="quadratic modulus in w; default: smallest irreducible")

    sp = sub.add_parser("diag", help="trivial point, singular scan and point counts")
    common(sp)
    sp.add_argument("--modulus")
    sp.add_argument("--maxdeg", type=int, default=2)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    budget = args.budget
    env = os.environ.get("HERMITE_BUDGET")
    try:
        if env is not None:
            try:
                budget = int(env)
            except ValueError:
                raise UsageError(f"HERMITE_BUDGET={env!r} is not an integer") from None
        cfg = RunConfig(
            command=args.command,
            p=args.p,
            modulus=getattr(args, "modulus", None),
            format=args.format,
            budget=budget,
            maxdeg=getattr(args, "maxdeg", 2),
            out=args.out,
            jobs=getattr(args, "jobs", 1),
        )
        if args.command == "solve":
            return cmd_solve(cfg, timing=not args.no_timing)
        if args.command == "verify-all":
            return cmd_verify_all(cfg)
        if args.command == "descend":
            return cmd_descend(cfg, args.surface, args.point)
        return cmd_diag(cfg)
    except (UsageError, NotPrime) as exc:
        print(f"hermite5: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

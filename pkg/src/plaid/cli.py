"""Command-line front end: reports, renders, and verification sweeps.

Exit codes: 0 all requested checks pass, 1 a check failed (counterexample in
the JSON report), 2 usage error.  JSON files are written atomically and the
output is deterministic for a fixed tool version, apart from the timestamp
field.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd

from . import __version__
from .exactnum import QuadraticTarget, parse_irrational
from .numtheory import (EvenRational, approximating_sequence, diophantine_check,
                        kappa, predecessor_chain, tune, verify_omnibus)
from .numtheory import main_identity as nt_main_identity
from .grid import cap_scaled, mass_scaled
from .tiling import big_polygon, build_tiling, first_block_tiling, trace_polygons
from . import copying, pet, svgout


def even_rationals(max_omega: int, start: int = 3, regime: str = "all"):
    """Even rationals with omega <= max_omega, optionally filtered by regime.

    The regime classifies the parameter itself: core when kappa >= 1, else
    strong or weak by the tune against omega/4.
    """
    for om in range(start, max_omega + 1, 2):
        for p in range(1, om // 2 + 1):
            if gcd(p, om) == 1:
                r = EvenRational(p, om - p)
                if regime != "all" and _regime(r) != regime:
                    continue
                yield r


def _regime(r: EvenRational) -> str:
    if kappa(r).kappa >= 1:
        return "core"
    return "strong" if 4 * tune(r).tau > r.omega else "weak"


def write_json_atomic(path: str, payload: dict):
    payload = {"tool": "plaid", "version": __version__,
               "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
               **payload}
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w") as fh:
        json.dump(payload, fh, indent=2, default=str)
        fh.write("\n")
    os.replace(tmp, path)


def write_text_atomic(path: str, text: str):
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def parse_param_or_exit(text: str) -> EvenRational:
    try:
        return EvenRational.parse(text)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(2)


# ---------------------------------------------------------------------------
# Per-parameter checks (top-level functions so sweeps can fork them)
# ---------------------------------------------------------------------------

def check_coherence(r: EvenRational) -> tuple[bool, str]:
    try:
        build_tiling(r, 0, r.omega ** 2, 0, r.omega)
        return True, ""
    except AssertionError as exc:
        return False, str(exc)


def check_hier(r: EvenRational) -> tuple[bool, str]:
    import numpy as np
    om = r.omega
    from .tiling import _light_arr, _mass_arr
    # vertical lines: one vertical period suffices
    for x0 in range(0, om * om):
        k = abs(cap_scaled(r, x0))
        cnt = 0
        if x0 % om:
            C = cap_scaled(r, x0)
            f = (2 * r.p * x0) // om
            b = np.arange(om)
            cnt = int(_light_arr(C, _mass_arr(r, b + f + 1), om).sum()
                      + _light_arr(C, _mass_arr(r, (b - f) + 2 * x0), om).sum())
        if cnt != k:
            return False, f"V line x={x0} carries {cnt} light points, capacity {k}"
    # horizontal lines: every block window, corners once, midpoints twice
    for y0 in range(0, om):
        C = cap_scaled(r, y0)
        k = abs(C)
        per_block = np.zeros(om, dtype=np.int64)
        if C != 0:
            for den, step in ((2 * r.p, r.p), (2 * r.q, r.q)):
                t = np.arange(0, den * om + 1)
                t = t[t % step != 0]  # shared double points enumerated below
                lit = _light_arr(C, _mass_arr(r, y0 + t), om)
                blk = (om * t[lit]) // den // om
                np.add.at(per_block, blk[blk < om], 1)
            u = np.arange(0, 2 * om + 1)
            lit = _light_arr(C, _mass_arr(r, y0 + r.p * u), om)
            xs = (om * u[lit & (u % 2 == 0)]) // 2
            for blk in (xs // om, xs // om - 1):  # closed windows: both sides
                sel = (blk >= 0) & (blk < om)
                np.add.at(per_block, blk[sel], 1)
            xm = (om * u[lit & (u % 2 == 1)]) // 2
            blk = xm // om
            np.add.at(per_block, blk[blk < om], 2)
        if not np.all(per_block == k):
            bad = int(np.argmin(per_block == k))
            return False, (f"H line y={y0} block {bad} carries "
                           f"{int(per_block[bad])} light points, capacity {k}")
    return True, ""


def check_first(r: EvenRational) -> tuple[bool, str]:
    try:
        big_polygon(r)
        return True, ""
    except AssertionError as exc:
        return False, str(exc)


def check_omnibus(r: EvenRational) -> tuple[bool, str]:
    if r.p <= 1:
        return True, "skipped (p=1)"
    rep = verify_omnibus(r)
    bad = [k for k, v in rep.statements.items() if not v]
    return (not bad), ",".join(bad)


def check_main(r: EvenRational) -> tuple[bool, str]:
    if kappa(r).kappa == 0 or r.p == 1:
        return True, "out of scope (kappa=0 or p=1)"
    if not nt_main_identity(r):
        return False, "height/width identity failed"
    th = tune(copying.core_predecessor(r)).tau
    c = abs(cap_scaled(r, th))
    if c != 4 * kappa(r).kappa + 2:
        return False, f"barrier capacity {c} != 4*kappa+2"
    return True, ""


def check_box(r: EvenRational) -> tuple[bool, str]:
    rep = copying.verify_box_lemma(r)
    return rep.ok, "" if rep.ok else f"crossings={rep.crossings}"


def check_copy(r: EvenRational) -> tuple[bool, str]:
    if r.p == 1:
        return True, "skipped (p=1 descends by the unit rule)"
    if kappa(r).kappa >= 1:
        ok = copying.verify_core_copy(r)
        return ok, "" if ok else "core copy failed"
    ok = copying.verify_weak_strong_copy(r)
    return ok, "" if ok else "weak/strong copy failed"


def check_copytheorem(r: EvenRational) -> tuple[bool, str]:
    chain = predecessor_chain(r)
    terms = chain.approximating_terms()
    for r0, r1 in zip(terms, terms[1:]):
        if r0.is_zero:
            continue
        rep = copying.verify_copy_theorem(r0, r1)
        if not rep.ok:
            return False, f"pair {r0}->{r1}"
    return True, ""


def check_pet(r: EvenRational) -> tuple[bool, str]:
    import numpy as np
    tiling = first_block_tiling(r)
    loops = trace_polygons(tiling)
    covered = set()
    for loop in loops:
        res = pet.orbit(r, loop.squares[0])
        if not res.closed or res.period != len(loop):
            return False, f"orbit at {loop.squares[0]} period {res.period} != {len(loop)}"
        if set(res.squares()) != loop.center_set():
            return False, f"orbit at {loop.squares[0]} wanders off its loop"
        covered |= loop.center_set()
    if len(covered) != int(np.count_nonzero(tiling.tiles)):
        return False, "loops do not partition the connector squares"
    empties = [(a, b) for a in range(r.omega) for b in range(r.omega)
               if not tiling.tile_bits(a, b)]
    for sq in empties[:3]:
        res = pet.orbit(r, sq)
        if not (res.closed and res.period == 0):
            return False, f"empty square {sq} is not a fixed point"
    return True, ""


CHECKS = {
    "coherence": check_coherence,
    "hier": check_hier,
    "first": check_first,
    "omnibus": check_omnibus,
    "main": check_main,
    "box": check_box,
    "copy": check_copy,
    "copytheorem": check_copytheorem,
    "pet": check_pet,
}


def _run_checks_one(args):
    (p, q), names = args
    r = EvenRational(p, q)
    out = {}
    for name in names:
        ok, detail = CHECKS[name](r)
        out[name] = {"ok": ok, **({"detail": detail} if detail else {})}
    return (p, q), out


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_chain(args) -> int:
    if args.irrational:
        target = parse_irrational(args.irrational)
        chain = approximating_sequence(target, args.qmax)
    else:
        if not args.param:
            print("error: chain needs a parameter or --irrational", file=sys.stderr)
            return 2
        chain = predecessor_chain(parse_param_or_exit(args.param))
    terms = []
    for i, term in enumerate(chain.terms):
        row = {"p": term.p, "q": term.q}
        if not term.is_zero:
            t = tune(term)
            row.update(omega=term.omega, tau=t.tau, sign=t.sign_choice,
                       kappa=kappa(term).kappa)
        row["kind"] = chain.term_class(i)
        terms.append(row)
    payload = {"terms": terms}
    failures = []
    per_term = {}
    for term in chain.terms:
        if term.p > 1:
            rep = verify_omnibus(term)
            per_term[str(term)] = dict(sorted(rep.statements.items()))
            if rep.statement8 is not None:
                per_term[str(term)]["s8"] = rep.statement8
            if not rep.all_ok:
                failures.append(str(term))
    target_term = str(chain.terms[-1])
    payload["omnibus"] = per_term.get(target_term, {})
    payload["omnibus_chain"] = per_term
    if args.irrational and isinstance(target, QuadraticTarget):
        dio = diophantine_check(target, chain)
        payload["diophantine"] = [
            {"p": e["p"], "q": e["q"], "class": e["class"],
             "bound_ok": e["bound_ok"]} for e in dio.entries]
        if not dio.all_ok:
            failures.append("diophantine")
    payload["approximating"] = [str(t) for t in chain.approximating_terms()]
    payload["failures"] = failures
    if args.json:
        write_json_atomic(args.json, payload)
    else:
        print(json.dumps(payload, indent=2, default=str))
    return 0 if not failures else 1


def cmd_lines(args) -> int:
    r = parse_param_or_exit(args.param)
    caps = [{"n": n, "capacity": abs(cap_scaled(r, n)),
             "sign": (cap_scaled(r, n) > 0) - (cap_scaled(r, n) < 0)}
            for n in range(r.omega)]
    masses = []
    for j in range(r.omega):
        m = mass_scaled(r, j)
        inert = abs(m) == r.omega
        masses.append({"intercept": j, "mass": abs(m),
                       "sign": 0 if inert else (m > 0) - (m < 0),
                       "inert": inert})
    payload = {"param": str(r), "omega": r.omega, "tau": tune(r).tau,
               "kappa": kappa(r).kappa, "capacities": caps, "masses": masses}
    if args.json:
        write_json_atomic(args.json, payload)
    else:
        print(json.dumps(payload, indent=2))
    return 0


def cmd_tile(args) -> int:
    r = parse_param_or_exit(args.param)
    om = r.omega
    block = args.block
    tiling = build_tiling(r, block * om, (block + 1) * om, 0, om)
    loops = trace_polygons(tiling)
    payload = {
        "param": str(r),
        "region": [block * om, (block + 1) * om, 0, om],
        "tiles": [[a, b, tiling.tile_name(a, b)]
                  for a, b in tiling.nonempty_squares()],
        "polygons": [{
            "id": i,
            "vertices": [[a, b] for a, b in loop.squares],
            "closed": loop.closed,
            "x_diameter": str(loop.x_diameter()),
            "anchors": [[str(x), y] for x, y in loop.anchors(column=block * om)],
        } for i, loop in enumerate(loops)],
    }
    if args.json:
        write_json_atomic(args.json, payload)
    if args.svg:
        write_text_atomic(args.svg, svgout.render_tiling(tiling, scale=args.scale))
    if not args.json and not args.svg:
        print(json.dumps(payload, indent=2))
    return 0


def cmd_polygon(args) -> int:
    r = parse_param_or_exit(args.param)
    gamma = big_polygon(r)
    lo, hi = gamma.x_extent()
    payload = {
        "param": str(r),
        "length": len(gamma),
        "x_diameter": str(gamma.x_diameter()),
        "x_diameter_bound": str(Fraction(r.omega ** 2, 2 * r.q) - 1),
        "anchors": [[str(x), y] for x, y in gamma.anchors()],
        "vertices": [[a, b] for a, b in gamma.squares],
    }
    if args.json:
        write_json_atomic(args.json, payload)
    else:
        print(json.dumps({k: v for k, v in payload.items() if k != "vertices"},
                         indent=2))
    return 0


def cmd_align(args) -> int:
    from .alignment import matching, psi_xi_audit
    r_small = parse_param_or_exit(args.small)
    r_big = parse_param_or_exit(args.big)
    k = kappa(r_big).kappa
    failures = []
    if args.core or k >= 1:
        if copying.core_predecessor(r_big) != r_small:
            print(f"error: {r_small} is not the core predecessor of {r_big}",
                  file=sys.stderr)
            return 2
        pair = copying.sigma_core(r_small, r_big)
        th = tune(r_small).tau
        bound = Fraction(4 * k * th, r_big.omega * r_small.omega)
        rep = matching(r_small, r_big, pair,
                       h_lines=(th, tune(r_big).tau), norm_bound=bound)
        case = "core"
        audit = None
    else:
        from .alignment import classify_case
        if copying.even_predecessor(r_big) != r_small:
            print(f"error: {r_small} is not the even predecessor of {r_big}",
                  file=sys.stderr)
            return 2
        pair = copying.sigma_weak_strong(r_small, r_big)
        rep = matching(r_small, r_big, pair)
        case = f"case-{classify_case(r_small, r_big)}"
        audit = psi_xi_audit(r_small, r_big)
    payload = {
        "pair": [str(r_small), str(r_big)],
        "case": case,
        "arithmetic": rep.arithmetic,
        "geometric": rep.geometric,
        "weak_horizontal": rep.weak_horizontal,
        "specials_harmless": rep.specials_harmless,
        "matching": rep.predicates_hold,
        "tiles_equal": rep.tiles_equal,
        "exceptions": rep.exceptions,
    }
    if audit is not None:
        payload["audit"] = {"case": audit.case, **audit.checks,
                            "exceptions": audit.exceptions}
        if not audit.all_ok:
            failures.append("audit")
    if not (rep.predicates_hold and rep.tiles_equal and rep.consistent):
        failures.append("matching")
    payload["failures"] = failures
    if args.json:
        write_json_atomic(args.json, payload)
    else:
        print(json.dumps(payload, indent=2, default=str))
    return 0 if not failures else 1


def cmd_verify(args) -> int:
    failures = []
    payload = {"what": args.what}
    if args.sweep:
        params = list(even_rationals(args.sweep))
        name = {"box": "box", "copy": "copy", "tree": "copytheorem"}[args.what]
        results = run_sweep(params, [name], workers=args.workers)
        payload["sweep"] = {"max_omega": args.sweep, "check": name}
        payload["results"] = results["results"]
        failures = results["failures"]
    else:
        r = parse_param_or_exit(args.param)
        if args.what == "box":
            rep = copying.verify_box_lemma(r)
            payload.update(param=str(r), width=rep.width, crossings=rep.crossings,
                           single_arc=rep.single_arc, barrier=rep.barrier,
                           ok=rep.ok)
            if not rep.ok:
                failures.append(str(r))
        elif args.what == "copy":
            k = kappa(r).kappa
            if k >= 1:
                ok = copying.verify_core_copy(r)
                payload.update(param=str(r), regime="core", ok=ok)
            else:
                ok = copying.verify_weak_strong_copy(r)
                strong = 2 * copying.even_predecessor(r).omega < r.omega
                payload.update(param=str(r),
                               regime="strong" if strong else "weak", ok=ok)
            if not ok:
                failures.append(str(r))
            if args.svg and kappa(r).kappa == 0:
                prev = copying.even_predecessor(r)
                rep = copying.verify_copy_theorem(prev, r)
                if rep.translation is not None:
                    write_text_atomic(args.svg, svgout.render_copy_overlay(
                        prev, r, rep.translation))
        elif args.what == "tree":
            chain = predecessor_chain(r)
            terms = chain.approximating_terms()
            depth = args.depth or len(terms)
            real = copying.realize_tree(terms, min(depth, len(terms)))
            payload.update(param=str(r), depth=real.depth,
                           terms=[str(t) for t in real.terms],
                           translations=real.translations,
                           branches=real.branches, etas=real.etas,
                           vertices=len(real.boxes), ok=True)
    payload["failures"] = failures
    if args.json:
        write_json_atomic(args.json, payload)
    else:
        print(json.dumps(payload, indent=2, default=str))
    return 0 if not failures else 1


def cmd_pet(args) -> int:
    failures = []
    if args.what == "orbit":
        r = parse_param_or_exit(args.param)
        square = tuple(int(t) for t in args.square.split(","))
        res = pet.orbit(r, square, max_steps=args.max_steps)
        payload = {"param": str(r), "start": list(res.start),
                   "steps": [{"dir": s["dir"], "square": list(s["square"])}
                             for s in res.steps],
                   "closed": res.closed, "period": res.period,
                   "truncated": res.truncated}
        if res.truncated:
            failures.append("truncated")
    elif args.what == "fiber":
        r = parse_param_or_exit(args.param)
        t_value = _parse_t_value(args.t, r)
        rep = pet.reconstruct_fiber_grid(r, t_value, min_samples=args.samples)
        payload = {"param": str(r), "t": str(rep.t_value),
                   "points": len(rep.points), "grid_ok": rep.grid_ok,
                   "u1_cells": [[str(a), str(b)] for a, b in rep.u1_cells],
                   "u2_cells": [[str(a), str(b)] for a, b in rep.u2_cells],
                   "labels": rep.labels}
        if not rep.grid_ok:
            failures.append("grid")
        if args.svg:
            write_text_atomic(args.svg, svgout.render_fiber(rep))
    else:  # limit
        if not args.irrational:
            print("error: pet limit needs --irrational", file=sys.stderr)
            return 2
        target = parse_irrational(args.irrational)
        if not isinstance(target, QuadraticTarget):
            print("error: translation-length decay needs an exact quadratic "
                  "target (quad:(a,b,c,d))", file=sys.stderr)
            return 2
        prefix = tuple(int(c) for c in args.prefix)
        rep = pet.limit_experiment(target, prefix, window=args.window,
                                   depth=args.depth)
        payload = {"prefix": list(rep.prefix), "window": rep.window,
                   "depths": rep.depths, "stable_from": rep.stable_from,
                   "anchors": rep.anchors,
                   "deltas": [str(d) for d in rep.deltas],
                   "cluster_size": len(rep.cluster)}
        if rep.stable_from is None:
            failures.append("no stabilization in range")
    payload["failures"] = failures
    if args.json:
        write_json_atomic(args.json, payload)
    else:
        print(json.dumps(payload, indent=2, default=str))
    return 0 if not failures else 1


def _parse_t_value(text: str, r: EvenRational):
    P = r.big_p
    if text.strip() in ("P", "p"):
        return P
    if text.strip() in ("P+1", "p+1"):
        return P + 1
    if text.strip() in ("P-1", "p-1"):
        return P - 1
    return Fraction(text)


def cmd_render(args) -> int:
    if args.what == "tile":
        r = parse_param_or_exit(args.param)
        om = r.omega
        tiling = build_tiling(r, args.block * om, (args.block + 1) * om, 0, om)
        svg = svgout.render_tiling(tiling, scale=args.scale)
    elif args.what == "copy":
        r0 = parse_param_or_exit(args.param)
        r1 = parse_param_or_exit(args.param2)
        rep = copying.verify_copy_theorem(r0, r1)
        if rep.translation is None:
            print("error: no copy translation found", file=sys.stderr)
            return 1
        svg = svgout.render_copy_overlay(r0, r1, rep.translation, scale=args.scale)
    else:
        print(f"error: unknown render target {args.what}", file=sys.stderr)
        return 2
    write_text_atomic(args.svg, svg)
    return 0


def run_sweep(params, checks, workers=None) -> dict:
    jobs = [((r.p, r.q), checks) for r in params]
    if workers is None:
        workers = int(os.environ.get("PLAID_WORKERS", "0")) or None
    results = {}
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for key, out in pool.map(_run_checks_one, jobs, chunksize=4):
                results[key] = out
    else:
        for job in jobs:
            key, out = _run_checks_one(job)
            results[key] = out
    rows, failures = [], []
    for (p, q) in sorted(results, key=lambda t: (t[0] + t[1], t[0])):
        row = {"param": f"{p}/{q}", **results[(p, q)]}
        rows.append(row)
        for name, res in results[(p, q)].items():
            if not res["ok"]:
                failures.append({"param": f"{p}/{q}", "check": name,
                                 "detail": res.get("detail", "")})
    return {"results": rows, "failures": failures}


def cmd_sweep(args) -> int:
    checks = args.checks.split(",") if args.checks else ["coherence", "box"]
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        print(f"error: unknown checks {unknown}; available: {sorted(CHECKS)}",
              file=sys.stderr)
        return 2
    params = list(even_rationals(args.max_omega, regime=args.filter))
    started = time.monotonic()
    res = run_sweep(params, checks, workers=args.workers)
    payload = {"max_omega": args.max_omega, "checks": checks,
               "filter": args.filter, "n_parameters": len(params),
               "elapsed_s": round(time.monotonic() - started, 3),
               "failures": res["failures"], "results": res["results"]}
    if args.json:
        write_json_atomic(args.json, payload)
    else:
        print(json.dumps({k: payload[k] for k in
                          ("max_omega", "checks", "n_parameters", "failures")},
                         indent=2))
    return 0 if not res["failures"] else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="plaid", description=__doc__)
    ap.add_argument("--workers", type=int, default=None,
                    help="worker processes for sweeps (default: PLAID_WORKERS)")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, svg=True):
        p.add_argument("--json", metavar="PATH")
        if svg:
            p.add_argument("--svg", metavar="PATH")

    p = sub.add_parser("chain", help="predecessor chain and identity report")
    p.add_argument("param", nargs="?")
    p.add_argument("--irrational", metavar="SPEC",
                   help="quad:(a,b,c,d) or cf:[0;a1,a2,...]")
    p.add_argument("--qmax", type=int, default=100)
    common(p, svg=False)
    p.set_defaults(fn=cmd_chain)

    p = sub.add_parser("lines", help="capacity and mass tables")
    p.add_argument("param")
    common(p, svg=False)
    p.set_defaults(fn=cmd_lines)

    p = sub.add_parser("tile", help="tiling of one block")
    p.add_argument("param")
    p.add_argument("--block", type=int, default=0)
    p.add_argument("--scale", type=int, default=16)
    common(p)
    p.set_defaults(fn=cmd_tile)

    p = sub.add_parser("polygon", help="the distinguished big polygon")
    p.add_argument("param")
    common(p, svg=False)
    p.set_defaults(fn=cmd_polygon)

    p = sub.add_parser("align", help="alignment predicates for a pair")
    p.add_argument("small")
    p.add_argument("big")
    p.add_argument("--core", action="store_true")
    common(p, svg=False)
    p.set_defaults(fn=cmd_align)

    p = sub.add_parser("verify", help="box / copy / tree verification")
    p.add_argument("what", choices=("box", "copy", "tree"))
    p.add_argument("param", nargs="?")
    p.add_argument("--sweep", type=int, metavar="MAX_OMEGA")
    p.add_argument("--depth", type=int)
    common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("pet", help="classifying-space dynamics")
    p.add_argument("what", choices=("orbit", "fiber", "limit"))
    p.add_argument("param", nargs="?")
    p.add_argument("--square", default="0,0", help="start square a,b")
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--t", default="P+1", help="fiber T value (P, P+1, P-1 or n/d)")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--irrational", metavar="SPEC")
    p.add_argument("--prefix", default="0")
    p.add_argument("--window", type=int, default=10)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--seed", type=int, default=0, help="reserved for sampling ops")
    common(p)
    p.set_defaults(fn=cmd_pet)

    p = sub.add_parser("render", help="SVG figures")
    p.add_argument("what", choices=("tile", "copy"))
    p.add_argument("param")
    p.add_argument("param2", nargs="?")
    p.add_argument("--block", type=int, default=0)
    p.add_argument("--scale", type=int, default=16)
    p.add_argument("--svg", required=True)
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("sweep", help="bulk verification sweeps")
    p.add_argument("--max-omega", type=int, required=True)
    p.add_argument("--checks", default="coherence,box")
    p.add_argument("--filter", default="all",
                   choices=("all", "weak", "strong", "core"))
    common(p, svg=False)
    p.set_defaults(fn=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "command", None) == "verify" and not args.sweep and not args.param:
        print("error: verify needs a parameter or --sweep", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

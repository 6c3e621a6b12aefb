"""Command-line front end: per-discriminant computations, tables, a JSON
result cache and the reference verification suite."""

import argparse
import csv
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .mp import CertificationFailed, PrecisionContext, RoundingFailed
from .poly import IntPolynomial
from .qf import BadDiscriminant, SearchExhausted, check_discriminant

KINDS = ("H", "b", "A", "q", "W", "t", "u", "r")

EXIT_OK, EXIT_FAIL, EXIT_BAD_D, EXIT_CERT, EXIT_SEARCH = 0, 1, 2, 3, 4


class Failure(Exception):
    """A check reported failure (exit 1) rather than raising."""


# configuration

def resolve_bits(value):
    value = value or os.environ.get("QUARTIC_CM_BITS", "auto")
    if value == "auto":
        return None
    bits = int(value)
    if bits < 64:
        raise argparse.ArgumentTypeError("--bits must be at least 64")
    return bits


def make_ctx(args, d=None):
    if args.bits is None:
        if d is None:
            return None
        from .invariants import default_context
        ctx = default_context(d)
        return PrecisionContext(ctx.bits, args.max_retries)
    return PrecisionContext(args.bits, args.max_retries)


def cache_dir(args):
    path = args.cache_dir or os.environ.get("QUARTIC_CM_CACHE_DIR")
    return Path(path) if path else None


def parse_range(text):
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError("range must look like LO..HI")
    return int(lo), int(hi)


def discriminants_in(lo, hi):
    return [d for d in range(lo, hi + 1) if d > 0 and d % 8 == 7]


# cache

def _cache_file(root, d, kind):
    return root / __version__ / f"{d}_{kind}.json"


def cache_get(root, d, kind):
    if root is None:
        return None
    path = _cache_file(root, d, kind)
    if not path.exists():
        return None
    obj = json.loads(path.read_text(encoding="utf-8"))
    return IntPolynomial.from_json(obj["poly"]), obj["margin"]


def cache_put(root, d, kind, poly, margin):
    if root is None:
        return
    path = _cache_file(root, d, kind)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = json.dumps({"d": d, "kind": kind, "version": __version__,
                          "poly": poly.to_json(), "margin": margin}, sort_keys=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(payload)
    os.replace(tmp, path)


def _margin(cert):
    return float(cert) if not isinstance(cert, dict) else float(cert.get("worst", 0.0))


def compute_polys(d, bits, max_retries, root, kinds=KINDS):
    """{kind: (IntPolynomial, rounding margin)} for d, through the cache."""
    out = {}
    missing = []
    for kind in kinds:
        hit = cache_get(root, d, kind)
        if hit is None:
            missing.append(kind)
        else:
            out[kind] = hit
    if missing:
        from .invariants import invariant_bundle, default_context
        ctx = PrecisionContext(bits or default_context(d).bits, max_retries)
        bundle = invariant_bundle(d, ctx)
        polys = bundle.polys()
        for kind in missing:
            if kind not in polys:
                continue
            key = "u,r" if kind in ("u", "r") else kind
            margin = _margin(bundle.certificates.get(key, 0.0))
            out[kind] = (polys[kind], margin)
            cache_put(root, d, kind, polys[kind], margin)
    return out


def _descending(p):
    return [str(c) for c in reversed(p.coeffs)]


# output

def emit(obj, fmt, out):
    if fmt == "json":
        out.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")
    else:
        out.write(_as_text(obj) + "\n")


def _as_text(obj, indent=""):
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and isinstance(v, dict):
                lines.append(f"{indent}{k}:")
                lines.append(_as_text(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {v}")
        return "\n".join(lines)
    return f"{indent}{obj}"


def write_rows(rows, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["d", "kind", "degree", "coeffs..."])
    for row in rows:
        w.writerow(row)


def checks_report(results, out, fmt="text"):
    if fmt == "json":
        out.write(json.dumps({k: bool(v) for k, v in results.items()}, indent=2) + "\n")
    else:
        for name, ok in results.items():
            out.write(f"{'PASS' if ok else 'FAIL'}  {name}\n")
    return EXIT_OK if all(results.values()) else EXIT_FAIL


# subcommands

def _single_d(args):
    if args.d is None:
        raise SystemExit("need -d N")
    d = args.d * (args.conductor or 1) ** 2
    check_discriminant(d)
    return d


def cmd_invariants(args, out):
    ds = [_single_d(args)] if args.range is None else discriminants_in(*args.range)
    kinds = tuple(args.kind) if args.kind else KINDS
    results = _map(args, ds, kinds)
    if args.format == "csv":
        rows = []
        for d, polys in zip(ds, results):
            for kind in kinds:
                if kind in polys:
                    p = polys[kind][0]
                    rows.append([d, kind, p.degree] + _descending(p))
        write_rows(rows, out)
        return EXIT_OK
    for d, polys in zip(ds, results):
        emit({"d": d, "polys": {k: {"degree": p.degree, "coeffs": _descending(p), "margin": m}
                                for k, (p, m) in polys.items()}}, args.format, out)
    return EXIT_OK


def _worker(job):
    d, kinds, bits, max_retries, root = job
    return compute_polys(d, bits, max_retries, Path(root) if root else None, kinds)


def _map(args, ds, kinds):
    root = cache_dir(args)
    jobs = [(d, kinds, args.bits, args.max_retries, str(root) if root else None) for d in ds]
    if args.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            return list(pool.map(_worker, jobs))
    return [_worker(j) for j in jobs]


def cmd_tables(args, out):
    lo, hi = args.range
    ds = discriminants_in(lo, hi)
    if args.kind == "t":
        ds = [d for d in ds if d % 3 == 0 and d > 15]
    results = _map(args, ds, (args.kind,))
    rows = []
    for d, polys in zip(ds, results):
        if args.kind in polys:
            p = polys[args.kind][0]
            rows.append([d, args.kind, p.degree] + _descending(p))
    if args.format == "csv":
        write_rows(rows, out)
    else:
        for row in rows:
            emit({"d": row[0], "kind": row[1], "degree": row[2], "coeffs": row[3:]}, args.format, out)
    return EXIT_OK


def cmd_fermat(args, out):
    from .fermat import artin_relation_check, fermat_solution
    d = _single_d(args)
    ctx = make_ctx(args, d)
    sol = fermat_solution(d, ctx)
    art = artin_relation_check(d, ctx)
    sol.conjugate_index = art.index
    obj = sol.to_json()
    obj["checks"] = dict(obj["checks"], artin_distance=min(art.distances))
    emit(obj, args.format, out)
    return EXIT_OK


def cmd_qk(args, out):
    from .curves import trace_point_QK
    d = _single_d(args)
    res = trace_point_QK(d, make_ctx(args, d))
    obj = res.to_json()
    obj["orbit"] = [str(P) for P in res.orbit]
    emit(obj, args.format, out)
    return EXIT_OK


def cmd_torsion(args, out):
    from . import curves
    if args.symbolic:
        return checks_report(curves.symbolic_torsion_suite(), out, args.format)
    d = _single_d(args)
    ctx = make_ctx(args, d)
    pair = curves.Fer4Pair.at(d, ctx)
    results = {}
    for k, v in pair.invariant_checks().items():
        results[f"Fer4: {k}"] = v
    for k, v in curves.torsion_checks_E1(pair).items():
        results[f"E1[4]: {k}"] = v
    for k, v in curves.torsion_checks_E3(pair).items():
        results[f"E3[4]: {k}"] = v
    tol = float(ctx.eps)
    for k, v in curves.chain_j_check(d, ctx).items():
        results[f"j({k}) matches the eta quotient"] = v < tol
    return checks_report(results, out, args.format)


def cmd_elimination(args, out):
    from .elimination import alpha4_small_cases, build_elimination, verify_resultant_identities
    bundle = build_elimination()
    results = dict(bundle.checks)
    results.update(verify_resultant_identities(bundle).results)
    results.update(alpha4_small_cases())
    return checks_report(results, out, args.format)


def _form(q):
    return [q.a, q.b, q.c]


def cmd_classgroup(args, out):
    from .qf import class_representatives, discriminant_info, enumerate_reduced, t_class
    d = _single_d(args)
    info = discriminant_info(d)
    forms, h = enumerate_reduced(d)
    reps = class_representatives(d)
    obj = {
        "d": d, "h": h, "conductor": info.f, "fundamental": info.d1,
        "reduced_forms": [_form(f) for f in forms],
        "representatives": [{"c": r.c, "v": r.v, "form": _form(r.reduced)} for r in reps],
        "class_of_prime_above_2": _form(t_class(d)),
    }
    emit(obj, args.format, out)
    return EXIT_OK


def verify_reference(args, out):
    """Every tabulated polynomial, the trace points, the elimination identities
    and the small exact examples."""
    from .curves import REFERENCE_QK, trace_point_QK
    from .elimination import build_elimination, verify_resultant_identities
    from .fermat import exact_d7_checks, fermat_solution
    from .invariants import product_poly_t
    from .poly import discriminant
    from .reference import reference_poly, reference_rows, reference_value

    results = {}
    root = cache_dir(args)
    by_d = {}
    for d, kind in sorted(reference_rows()):
        by_d.setdefault(d, []).append(kind)
    for d, kinds in sorted(by_d.items()):
        poly_kinds = tuple(k for k in kinds if k in KINDS and k != "t")
        if poly_kinds:
            got = compute_polys(d, args.bits, args.max_retries, root, poly_kinds)
            for k in poly_kinds:
                results[f"{k}_{d}"] = got.get(k, (None,))[0] == reference_poly(d, k)
        if "t" in kinds:
            results[f"t_{d}"] = product_poly_t(d) == reference_poly(d, "t")
        if "disc_t" in kinds:
            results[f"disc t_{d}"] = discriminant(product_poly_t(d)) == reference_value(d, "disc_t")
    for d in REFERENCE_QK:
        results[f"Q_K for d={d}"] = bool(trace_point_QK(d).matches_reference)
    bundle = build_elimination()
    results.update({f"elimination: {k}": v for k, v in bundle.checks.items()})
    results.update({f"elimination: {k}": v
                    for k, v in verify_resultant_identities(bundle).results.items()})
    results.update({f"d=7 exact: {k}": v for k, v in exact_d7_checks().items()})
    sol = fermat_solution(15)
    mp = PrecisionContext(sol.bits).mp
    s3, s5 = mp.sqrt(-3 + 0j), mp.sqrt(5)
    # either branch of sqrt(-3)
    results["d=15 pi, xi closed forms"] = any(
        abs(sol.pi - (1 - (r + s5) / 2)) < 1e-20 and abs(sol.xi - (1 + (r - s5) / 2)) < 1e-20
        for r in (s3, -s3))
    return checks_report(results, out, args.format)


# entry point

def build_parser():
    p = argparse.ArgumentParser(prog="quartic-cm", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--bits", type=resolve_bits, default=resolve_bits(None),
                   help="working precision in bits, or 'auto' (default)")
    p.add_argument("--max-retries", type=int, default=4)
    p.add_argument("--cache-dir", default=None, help="JSON cache directory (or $QUARTIC_CM_CACHE_DIR)")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--verify-reference", action="store_true",
                   help="check every shipped reference value and exit")
    sub = p.add_subparsers(dest="command")

    def with_d(sp, conductor=True):
        sp.add_argument("-d", type=int, help="d with -d = 1 (mod 8)")
        if conductor:
            sp.add_argument("--conductor", type=int, default=None,
                            help="use the discriminant -f^2 d")
        return sp

    sp = with_d(sub.add_parser("invariants", help="class and Weber-type polynomials"))
    sp.add_argument("--range", type=parse_range)
    sp.add_argument("--kind", action="append", choices=KINDS)
    sp = sub.add_parser("tables", help="one kind of polynomial over a range of d")
    sp.add_argument("--kind", choices=KINDS, required=True)
    sp.add_argument("--range", type=parse_range, required=True)
    with_d(sub.add_parser("fermat", help="pi, xi with pi^4 + xi^4 = 1"))
    with_d(sub.add_parser("qk", help="trace point on Y^2 = X(X^2 - 4)"))
    sp = with_d(sub.add_parser("torsion", help="4-torsion identities"))
    sp.add_argument("--symbolic", action="store_true")
    sub.add_parser("elimination", help="exact resultant identities for alpha^4")
    with_d(sub.add_parser("classgroup", help="reduced forms and class representatives"))
    return p


COMMANDS = {
    "invariants": cmd_invariants, "tables": cmd_tables, "fermat": cmd_fermat,
    "qk": cmd_qk, "torsion": cmd_torsion, "elimination": cmd_elimination,
    "classgroup": cmd_classgroup,
}


def run(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    label = args.command or ("verify-reference" if args.verify_reference else None)
    d = getattr(args, "d", None)
    where = f"{label} (d={d})" if d is not None else label
    try:
        if args.verify_reference:
            return verify_reference(args, out)
        if args.command is None:
            parser.print_help(out)
            return EXIT_FAIL
        return COMMANDS[args.command](args, out)
    except BadDiscriminant as exc:
        print(f"{where}: {exc}", file=sys.stderr)
        return EXIT_BAD_D
    except (CertificationFailed, RoundingFailed) as exc:
        print(f"{where}: certification failed: {exc}", file=sys.stderr)
        return EXIT_CERT
    except SearchExhausted as exc:
        print(f"{where}: search exhausted: {exc}", file=sys.stderr)
        return EXIT_SEARCH


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

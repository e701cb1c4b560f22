"""Command-line front end.

    cyclosum compute --p 19 --l 3 --order 18 --i 1 --j 1
    cyclosum verify  --p 19 --l 3 --format json
    cyclosum sweep   --l 3 --q-min 2 --q-max 500 --jobs 4
    cyclosum props   --p 19 --l 3

Exit codes: 0 all checks pass, 1 some congruence or identity fails,
2 usage or validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from sympy import isprime, primerange

from .congruence import IDENTITIES, make_context, verify_main_theorem, verify_propositions
from .errors import CyclosumError
from .ff import poly_str
from .jacobi import SHIFTED, jacobi_sum, jacobi_sum_reflected

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CSV_COLUMNS = ["q", "gamma", "w", "n", "case", "required", "achieved", "pass"]
CACHE_ENV = "CYCLOSUM_CACHE"


class UsageError(Exception):
    pass


def _cache_dir(args) -> str | None:
    return os.environ.get(CACHE_ENV) or getattr(args, "cache_dir", None)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv_text(rows, columns) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _lower(v):
    return str(v).lower() if isinstance(v, bool) else v


def _field_line(ctx) -> str:
    f = ctx.field
    where = f"F_{f.q}" if f.r == 1 else f"F_{f.q} = F_{f.p}[x]/({poly_str(f.modulus)})"
    return f"{where}, l={f.l}, k={f.k}, gamma={f.gamma}, w=ind(2)={ctx.w}"


# --------------------------------------------------------------------------


def cmd_compute(args) -> tuple[str, int]:
    ctx = make_context(args.p, args.r, args.l, _cache_dir(args))
    fn = jacobi_sum if args.convention == SHIFTED else jacobi_sum_reflected
    jv = fn(ctx.field, ctx.table, args.order, args.i, args.j)
    pr = jv.params
    coeffs = list(jv.value.coeffs)
    if args.format == "json":
        return _dump_json({
            "l": ctx.l, "p": args.p, "r": args.r, "q": ctx.field.q, "gamma": ctx.field.gamma,
            "order": pr.e, "i": pr.i, "j": pr.j, "convention": jv.convention,
            "coeffs": coeffs, "value": str(jv.value),
        }), EXIT_OK
    if args.format == "csv":
        cols = ["q", "gamma", "order", "i", "j", "convention", "coeffs", "value"]
        row = {"q": ctx.field.q, "gamma": ctx.field.gamma, "order": pr.e, "i": pr.i,
               "j": pr.j, "convention": jv.convention,
               "coeffs": " ".join(map(str, coeffs)), "value": str(jv.value)}
        return _csv_text([row], cols), EXIT_OK
    name = "J" if jv.convention == SHIFTED else "J~"
    lines = [
        _field_line(ctx),
        f"{name}_{pr.e}({pr.i},{pr.j}) in Z[z], z = zeta_{ctx.l ** 2}",
        f"coeffs: {coeffs}",
        f"value: {jv.value}",
    ]
    return "\n".join(lines) + "\n", EXIT_OK


def _verify_text(ctx, report) -> str:
    l = ctx.l
    out = [_field_line(ctx), f"J_{2 * l * l}(1,n) mod (1-z)^{l + 1}:"]
    for c in report.cases:
        extra = f" via n'={c.reduced_to}" if c.reduced_to is not None else ""
        out.append(f"  n={c.n:<4} {c.case + extra:<24} required {c.required}"
                   f"  achieved {str(c.achieved):<4} {'pass' if c.passed else 'FAIL'}")
    out.append(f"J_{l * l}(1,n) mod (1-z)^{l + 1}:")
    for c in report.order_l2:
        cs = f" c={list(c.coeffs)}" if c.coeffs is not None else ""
        out.append(f"  n={c.n:<4} {c.case + cs:<24} required {c.required}"
                   f"  achieved {str(c.achieved):<4} {'pass' if c.passed else 'FAIL'}")
    out.append(f"all_pass: {str(report.all_pass).lower()}")
    return "\n".join(out) + "\n"


def _report_rows(report) -> list:
    rows = []
    for c in report.cases + report.order_l2:
        d = c.to_dict()
        rows.append({"q": report.q, "gamma": report.gamma, "w": report.w,
                     **{k: _lower(v) for k, v in d.items()}})
    return rows


def cmd_verify(args) -> tuple[str, int]:
    ctx = make_context(args.p, args.r, args.l, _cache_dir(args))
    report = verify_main_theorem(ctx)
    code = EXIT_OK if report.all_pass else EXIT_FAIL
    if args.format == "json":
        return _dump_json(report.to_dict(timing=args.timing)), code
    if args.format == "csv":
        return _csv_text(_report_rows(report), CSV_COLUMNS), code
    text = _verify_text(ctx, report)
    if args.timing:
        text += f"elapsed_ms: {report.elapsed_ms:.3f}\n"
    return text, code


def sweep_fields(l: int, q_min: int, q_max: int, powers: bool = False) -> list:
    """(p, r) with q = p^r in [q_min, q_max] and q = 1 mod 2l^2, sorted by q."""
    step = 2 * l * l
    out = [(q, 1) for q in primerange(max(q_min, 2), q_max + 1) if q % step == 1]
    if powers:
        for r in (2, 3):
            p = 3
            while p**r <= q_max:
                if isprime(p) and p != l and p**r >= q_min and p**r % step == 1:
                    out.append((p, r))
                p += 2
    return sorted(out, key=lambda pr: pr[0] ** pr[1])


def _sweep_one(job) -> dict:
    p, r, l, cache_dir = job
    ctx = make_context(p, r, l, cache_dir)
    report = verify_main_theorem(ctx)
    return {"report": report.to_dict(), "rows": _report_rows(report)}


def cmd_sweep(args) -> tuple[str, int]:
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    if args.q_min > args.q_max:
        raise UsageError(f"--q-min {args.q_min} exceeds --q-max {args.q_max}")
    fields = sweep_fields(args.l, args.q_min, args.q_max, args.powers)
    if not fields:
        raise UsageError(
            f"no q = 1 mod {2 * args.l ** 2} in [{args.q_min}, {args.q_max}]"
        )
    cache = _cache_dir(args)
    jobs = [(p, r, args.l, cache) for p, r in fields]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_one, jobs))
    else:
        results = [_sweep_one(j) for j in jobs]

    summaries = []
    for res in results:
        rep = res["report"]
        failed = [c["n"] for c in rep["cases"] if not c["pass"]]
        failed_l2 = [c["n"] for c in rep["order_l2"] if not c["pass"]]
        summaries.append({
            "q": rep["q"], "p": rep["p"], "r": rep["r"], "gamma": rep["gamma"], "w": rep["w"],
            "cases": len(rep["cases"]), "order_l2_cases": len(rep["order_l2"]),
            "failed_n": failed, "failed_order_l2_n": failed_l2, "all_pass": rep["all_pass"],
        })
    all_pass = all(s["all_pass"] for s in summaries)
    code = EXIT_OK if all_pass else EXIT_FAIL
    if args.format == "json":
        return _dump_json({"l": args.l, "q_min": args.q_min, "q_max": args.q_max,
                           "fields": summaries, "all_pass": all_pass}), code
    if args.format == "csv":
        rows = [row for res in results for row in res["rows"]]
        return _csv_text(rows, CSV_COLUMNS), code
    out = [f"l={args.l}: {len(summaries)} field(s) with q = 1 mod {2 * args.l ** 2}"]
    for s in summaries:
        status = "pass" if s["all_pass"] else (
            f"FAIL n={s['failed_n']} order-l^2 n={s['failed_order_l2_n']}")
        out.append(f"  q={s['q']:<8} p={s['p']:<6} r={s['r']} gamma={s['gamma']:<6}"
                   f" w={s['w']:<6} cases={s['cases']}+{s['order_l2_cases']}  {status}")
    out.append(f"all_pass: {str(all_pass).lower()}")
    return "\n".join(out) + "\n", code


def cmd_props(args) -> tuple[str, int]:
    known = [name for name, _, _ in IDENTITIES]
    unknown = sorted(set(args.only or ()) - set(known))
    if unknown:
        raise UsageError(f"unknown identity {', '.join(unknown)}; choose from {', '.join(known)}")
    ctx = make_context(args.p, args.r, args.l, _cache_dir(args))
    report = verify_propositions(ctx, names=args.only)
    code = EXIT_OK if report.all_pass else EXIT_FAIL
    if args.format == "json":
        return _dump_json(report.to_dict()), code
    if args.format == "csv":
        cols = ["q", "gamma", "identity", "checked", "violations", "pass", "witness"]
        rows = []
        for c in report.checks:
            d = c.to_dict()
            rows.append({"q": report.q, "gamma": report.gamma, "identity": c.name,
                         "checked": c.checked, "violations": c.violations,
                         "pass": _lower(c.passed),
                         "witness": " ".join(map(str, d["witness"] or []))})
        return _csv_text(rows, cols), code
    out = [_field_line(ctx)]
    for c in report.checks:
        status = "pass" if c.passed else f"FAIL witness={c.witness}"
        out.append(f"  {c.name:<20} {c.checked:>7} checked  {c.violations} violations  {status}")
        out.append(f"      {c.statement}")
    out.append(f"all_pass: {str(report.all_pass).lower()}")
    return "\n".join(out) + "\n", code


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclosum",
        description="Exact Jacobi sums of order dividing 2l^2 and their congruences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, field=True):
        if field:
            sp.add_argument("--p", type=int, required=True, help="characteristic")
            sp.add_argument("--r", type=int, default=1, help="extension degree (default 1)")
        sp.add_argument("--l", type=int, required=True, help="odd prime l")
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
        sp.add_argument("--cache-dir", default=None,
                        help=f"dlog table cache directory (overridden by ${CACHE_ENV})")

    sp = sub.add_parser("compute", help="compute one Jacobi sum")
    common(sp)
    sp.add_argument("--order", type=int, required=True, help="character order e | 2l^2")
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--convention", choices=("shifted", "reflected"), default="shifted",
                    help="shifted: chi^i(v)chi^j(v+1); reflected: chi^i(v)chi^j(1-v)")
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("verify", help="check every congruence for one field")
    common(sp)
    sp.add_argument("--timing", action="store_true", help="include elapsed time")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="verify every admissible q in a range")
    common(sp, field=False)
    sp.add_argument("--q-min", type=int, required=True)
    sp.add_argument("--q-max", type=int, required=True)
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    sp.add_argument("--powers", action="store_true", help="include p^2 and p^3")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("props", help="check the exact Jacobi sum identities")
    common(sp)
    sp.add_argument("--only", nargs="+", default=None, metavar="NAME",
                    help="restrict to the named identities")
    sp.set_defaults(func=cmd_props)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = args.func(args)
    except CyclosumError as exc:
        print(f"cyclosum: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"cyclosum: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

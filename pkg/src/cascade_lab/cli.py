"""Command line front end.

Simple roots use 1-based Bourbaki labels on the command line and in all
output.  Exit status: 0 on success, 1 when a check fails or a context is skipped,
2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import cascade as cas
from . import harness
from . import minimal as mn
from . import quasihom as qh
from .degree import (
    Context,
    all_greedy_decompositions,
    context,
    count_greedy,
    extended_support,
    greedy_decomposition,
    naive_support,
    z_d_P,
)
from .rootsys import DynkinSpec, UsageError, is_locally_high
from .weyl import GroupTooLarge, group_order, longest_element, weyl_cap

SUBCOMMANDS = ("roots", "weyl", "greedy", "count-greedy", "minimal", "dx", "lift",
               "cascade", "certify", "verify", "golden")


class ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise ArgError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cascade-lab", description=__doc__.splitlines()[0])
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    p.add_argument("--type", dest="type_", metavar="TYPE", help="Dynkin type such as A3, D4, G2")
    p.add_argument("--parabolic", default="", help="comma list of simple roots in Δ_P (1-based)")
    p.add_argument("--degree", help="comma list, 'all' or 'dX'")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="write the output (JSON report for verify) to this file")
    p.add_argument("--max-rank", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--checks", default="", help="comma list of check names (verify)")
    return p


def _spec(args) -> DynkinSpec:
    if not args.type_:
        raise UsageError("--type is required")
    try:
        return DynkinSpec.parse(args.type_)
    except UsageError as exc:
        raise UsageError(f"--type: {exc}") from None


def _parabolic(args, spec: DynkinSpec) -> list[int]:
    if not args.parabolic.strip():
        return []
    try:
        idx = sorted({int(x) for x in args.parabolic.split(",")})
    except ValueError:
        raise UsageError(f"--parabolic: cannot parse {args.parabolic!r}") from None
    if any(not 1 <= i <= spec.rank for i in idx):
        raise UsageError(f"--parabolic: indices must lie in 1..{spec.rank}")
    return idx


def _ctx(args) -> Context:
    spec = _spec(args)
    return context(spec, [i - 1 for i in _parabolic(args, spec)])


def _degrees(args, ctx: Context, default: str) -> list[tuple[int, ...]]:
    text = (args.degree or default).strip()
    if text == "dX":
        return [mn.compute_d_X(ctx)]
    if text == "all":
        return sorted(mn.minimal_degree_set(ctx))
    try:
        d = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--degree: cannot parse {text!r}") from None
    if len(d) != len(ctx.coords) or min(d) < 0:
        raise UsageError(f"--degree: expected {len(ctx.coords)} non-negative entries")
    return [d]


def _root(rs, a: int) -> list[int]:
    return list(rs.positive_roots[a])


def _labels(s) -> list[int]:
    return sorted(i + 1 for i in s)


def _fmt(x) -> str:
    if isinstance(x, (list, tuple)):
        return ",".join(map(str, x)) if all(isinstance(v, int) for v in x) else " ".join(_fmt(v) for v in x)
    return str(x)


# subcommands ---------------------------------------------------------------------

def cmd_roots(args) -> tuple[dict, int]:
    spec = _spec(args)
    rs = context(spec).rs
    rows = [{"index": j + 1, "root": list(c), "height": sum(c), "coroot": list(rs.coroots[j]),
             "sqlen": str(rs.sqlen[j]), "locally_high": is_locally_high(rs, c)}
            for j, c in enumerate(rs.positive_roots)]
    return {"type": str(spec), "count": len(rows), "cartan": [list(r) for r in rs.cartan],
            "highest_root": list(rs.highest_root), "roots": rows}, 0


def cmd_weyl(args) -> tuple[dict, int]:
    ctx = _ctx(args)
    rs = ctx.rs
    w_o = longest_element(rs)
    out = {"type": str(rs.spec), "parabolic": _labels(ctx.parabolic), "order": group_order(rs),
           "cap": weyl_cap(), "w_o": str(w_o), "len_w_o": w_o.length, "w_P": str(ctx.w_P),
           "len_w_P": ctx.w_P.length}
    if args.degree:
        d = _degrees(args, ctx, "0")[0]
        z = z_d_P(ctx, d)
        out["z"] = {"degree": list(d), "word": str(z), "length": z.length}
    return out, 0


def cmd_greedy(args) -> tuple[dict, int]:
    ctx = _ctx(args)
    d = _degrees(args, ctx, "dX")[0]
    rs = ctx.rs
    seqs = all_greedy_decompositions(ctx, d)
    return {"type": str(rs.spec), "parabolic": _labels(ctx.parabolic), "degree": list(d),
            "greedy": [_root(rs, a) for a in greedy_decomposition(ctx, d)],
            "all_count": len(seqs), "support": _labels(naive_support(ctx, d)),
            "extended_support": _labels(extended_support(ctx, d))}, 0


def cmd_count(args) -> tuple[dict, int]:
    ctx = _ctx(args)
    d = _degrees(args, ctx, "dX")[0]
    return {"type": str(ctx.rs.spec), "parabolic": _labels(ctx.parabolic), "degree": list(d),
            "count": count_greedy(ctx, d)}, 0


def cmd_minimal(args) -> tuple[dict, int]:
    ctx = _ctx(args)
    rows = [{"degree": list(r.degree), "z": str(r.z), "length": r.z.length,
             "lifting": list(r.lifting)} for r in mn.enumerate_minimal_degrees(ctx, with_lifting=True)]
    return {"type": str(ctx.rs.spec), "parabolic": _labels(ctx.parabolic),
            "d_X": list(mn.compute_d_X(ctx)), "count": len(rows), "minimal": rows}, 0


def cmd_dx(args) -> tuple[dict, int]:
    ctx = _ctx(args)
    dx = mn.compute_d_X(ctx)
    return {"type": str(ctx.rs.spec), "parabolic": _labels(ctx.parabolic), "d_X": list(dx),
            "z": str(z_d_P(ctx, dx))}, 0


def cmd_lift(args) -> tuple[dict, int]:
    ctx = _ctx(args)
    rows = []
    for d in _degrees(args, ctx, "dX"):
        if not mn.in_pi(ctx, d):
            raise UsageError(f"--degree: {_fmt(d)} is not a minimal degree")
        rows.append({"degree": list(d), "lifting": list(mn.lifting(ctx, d))})
    return {"type": str(ctx.rs.spec), "parabolic": _labels(ctx.parabolic), "liftings": rows}, 0


def cmd_cascade(args) -> tuple[dict, int]:
    spec = _spec(args)
    cb = context(spec)
    rs = cb.rs
    e = _degrees(args, cb, "dX")[0]
    if not mn.in_pi(cb, e):
        raise UsageError(f"--degree: {_fmt(e)} is not a minimal degree of G/B")
    members = cas.cascade_of(cb, e)
    chains = {f"s{i + 1}": [_root(rs, a) for a in cas.chain_cascade(rs, members, rs.simple[i]).chain]
              for i in range(rs.rank)}
    fails = cas.verify_cascade_theorem(cb, e) + cas.inversion_partition(cb, e) + cas.verify_recursive_description(cb, e)
    (a1, a2), _ = cas.length_additivity(cb, e)
    c1 = cas.c1_length_formula(cb, e)
    try:
        product = str(cas.product_formula(cb, e))
    except AssertionError:
        product = None
        fails.append(mn.Failure("product-formula", {"e": e}))
    if a1 != a2:
        fails.append(mn.Failure("length-additivity", {"e": e}))
    if c1[0] != c1[1]:
        fails.append(mn.Failure("c1-length", {"e": e}))
    out = {"type": str(spec), "degree": list(e),
           "cascade": [_root(rs, a) for a in members],
           "locally_high": [is_locally_high(rs, rs.positive_roots[a]) for a in members],
           "chains": chains, "product": product, "length": [a1, a2], "c1_formula": list(c1),
           "failures": [{"statement": f.check, **harness._jsonable(f.witness)} for f in fails]}
    return out, 1 if fails else 0


def cmd_certify(args) -> tuple[dict, int]:
    ctx = _ctx(args)
    certs = []
    for d in _degrees(args, ctx, "dX"):
        if not mn.in_pi(ctx, d):
            raise UsageError(f"--degree: {_fmt(d)} is not a minimal degree")
        certs.append(qh.certificate(ctx, d).to_dict())
    bad = any(c["status"] == "fail" for c in certs)
    return {"certificates": certs}, 1 if bad else 0


def cmd_verify(args) -> tuple[dict, int]:
    if args.type_:
        spec = _spec(args)
        types = [str(spec)]
        listed = bool(args.parabolic.strip())
        parabolics = [_parabolic(args, spec)] if listed else []
    else:
        types, listed, parabolics = [], False, []
    cfg = harness.SweepConfig(
        types=types, max_rank=args.max_rank,
        parabolic_mode="listed" if listed else "all-subsets", parabolics=parabolics,
        checks=[c for c in args.checks.split(",") if c], parallelism=args.jobs, output=None,
    )
    report = harness.run_sweep(cfg)
    s = report["summary"]
    return report, 1 if s["fail"] or s["skipped"] else 0


def cmd_golden(args) -> tuple[dict, int]:
    rows = harness.golden_counts()
    return {"rows": rows}, 0 if all(r["ok"] for r in rows) else 1


HANDLERS = {"roots": cmd_roots, "weyl": cmd_weyl, "greedy": cmd_greedy, "count-greedy": cmd_count,
            "minimal": cmd_minimal, "dx": cmd_dx, "lift": cmd_lift, "cascade": cmd_cascade,
            "certify": cmd_certify, "verify": cmd_verify, "golden": cmd_golden}


# text rendering -------------------------------------------------------------------

def _table(rows: list[dict], cols: list[str]) -> list[str]:
    cells = [[_fmt(r[c]) for c in cols] for r in rows]
    widths = [max([len(c)] + [len(row[k]) for row in cells]) for k, c in enumerate(cols)]
    line = lambda vals: "  ".join(v.ljust(w) for v, w in zip(vals, widths)).rstrip()
    return [line(cols)] + [line(r) for r in cells]


def render_text(sub: str, out: dict) -> str:
    lines: list[str] = []
    tables = {"roots": ("roots", ["index", "root", "height", "coroot", "sqlen", "locally_high"]),
              "minimal": ("minimal", ["degree", "z", "length", "lifting"]),
              "lift": ("liftings", ["degree", "lifting"]),
              "golden": ("rows", ["type", "r", "N", "expected", "ok", "d_GB"])}
    if sub == "certify":
        for c in out["certificates"]:
            lines += [f"{k}: {_fmt(v)}" for k, v in c.items()] + [""]
        return "\n".join(lines).rstrip() + "\n"
    if sub == "verify":
        s = out["summary"]
        for name, counts in s["per_check"].items():
            lines.append(f"{name}: " + " ".join(f"{k}={v}" for k, v in counts.items()))
        for r in out["results"]:
            if r["status"] != "pass":
                lines.append(f"{r['status']}: {r['check']} {r['type']} P={_fmt(r['parabolic'])} "
                             f"d={_fmt(r['degree'])} {json.dumps(r['witness'], sort_keys=True)}")
                if r["status"] == "fail":
                    lines.append(f"  reproduce: {r['reproduce']}")
        lines.append(f"contexts: {s['contexts']}  fail: {s['fail']}  skipped: {s['skipped']}  "
                     f"open_case: {s['open_case']}")
        return "\n".join(lines) + "\n"
    key = tables.get(sub)
    for k, v in out.items():
        if key and k == key[0]:
            continue
        if isinstance(v, dict):
            lines.append(f"{k}:")
            lines += [f"  {kk}: {_fmt(vv)}" for kk, vv in v.items()]
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{k}:")
            lines += [f"  {json.dumps(x, sort_keys=True)}" for x in v]
        else:
            lines.append(f"{k}: {_fmt(v)}")
    if key:
        lines += _table(out[key[0]], key[1])
    return "\n".join(lines) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        out, code = HANDLERS[args.subcommand](args)
    except (ArgError, UsageError) as exc:
        print(f"cascade-lab: error: {exc}", file=sys.stderr)
        return 2
    except GroupTooLarge as exc:
        print(f"cascade-lab: {exc}", file=sys.stderr)
        return 1
    rendered = harness.dumps(out) if args.format == "json" else render_text(args.subcommand, out)
    if args.out:
        # a sweep report on disk is always JSON
        with open(args.out, "w") as fh:
            fh.write(harness.dumps(out) if args.subcommand == "verify" else rendered)
    sys.stdout.write(rendered)
    return code


if __name__ == "__main__":
    sys.exit(main())

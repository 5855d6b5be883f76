"""Batch verification over (type, parabolic subset, degree) grids.

Each registered check takes a :class:`~cascade_lab.degree.Context` and reports
how many cases it examined plus any failing or noteworthy cases.  A sweep runs
the selected checks over every context of the grid, optionally in worker
processes, and produces a JSON-ready report whose ordering does not depend on
the number of workers.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import chain, combinations, combinations_with_replacement
from math import comb
from pathlib import Path
from typing import Callable, Iterable, Iterator

from . import cascade as cas
from . import minimal as mn
from . import quasihom as qh
from .degree import (
    Context,
    Degree,
    add,
    all_greedy_decompositions,
    box,
    connected_components,
    context,
    count_greedy,
    extended_support,
    greedy_decomposition,
    is_greedy_decomposition,
    is_P_cosmall,
    maximal_roots,
    tilde_z_d_P,
    verify_pcosmall_orthogonality,
    z_d_P,
)
from .rootsys import (
    DynkinSpec,
    UsageError,
    connected_components_of_subset,
    is_locally_high,
    is_long,
    is_strongly_orthogonal,
    totally_disjoint,
)
from .weyl import GroupTooLarge, enumerate_group, hecke_product, identity

__all__ = [
    "CHECKS",
    "CheckResult",
    "SweepConfig",
    "all_types",
    "resolve_grid",
    "run_context",
    "run_sweep",
    "golden_counts",
    "d_series_closed_form",
]

Issue = tuple[str, "Degree | None", dict]  # (status, degree, witness)
CheckFn = Callable[[Context], tuple[int, list[Issue]]]

CHECKS: dict[str, CheckFn] = {}


def check(name: str) -> Callable[[CheckFn], CheckFn]:
    def register(fn: CheckFn) -> CheckFn:
        CHECKS[name] = fn
        return fn
    return register


def _fails(failures: Iterable[mn.Failure], degree: Degree | None = None) -> list[Issue]:
    return [("fail", degree, {"statement": f.check, **_jsonable(f.witness)}) for f in failures]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(v) for v in items]
    return obj


def _grid(ctx: Context) -> list[Degree]:
    return list(box(mn.compute_d_X(ctx)))


def _pi(ctx: Context) -> list[Degree]:
    return sorted(mn.minimal_degree_set(ctx))


def _pi_b(ctx: Context) -> list[Degree]:
    return _pi(context(ctx.rs.spec))


# root system and Weyl group ------------------------------------------------

@check("rootsys")
def _check_rootsys(ctx: Context) -> tuple[int, list[Issue]]:
    """Cartan sign pattern, connected supports, long-root pairings, and the
    fact that roots carried by distinct components are strongly orthogonal."""
    rs = ctx.rs
    issues: list[Issue] = []
    cases = 0
    for i, j in combinations(range(rs.rank), 2):
        cases += 1
        if rs.gram[i][j] > 0:
            issues.append(("fail", None, {"statement": "off-diagonal", "i": i + 1, "j": j + 1}))
    for a in range(rs.n_pos):
        cases += 1
        if len(connected_components_of_subset(rs, rs.supports[a])) != 1:
            issues.append(("fail", None, {"statement": "connected-support", "alpha": rs.positive_roots[a]}))
        if is_long(rs, rs.positive_roots[a]):
            bad = [g for g in range(rs.n_pos) if g != a and rs.pair[g][a] not in (-1, 0, 1)]
            if bad:
                issues.append(("fail", None, {"statement": "long-pairing", "alpha": rs.positive_roots[a]}))
    comps = connected_components_of_subset(rs, ctx.parabolic)
    for c1, c2 in combinations(comps, 2):
        for a in rs.roots_in(c1):
            for b in rs.roots_in(c2):
                cases += 1
                if not is_strongly_orthogonal(rs, rs.positive_roots[a], rs.positive_roots[b]):
                    issues.append(("fail", None, {"statement": "components-strongly-orthogonal"}))
    return cases, issues


@check("coset-length")
def _check_coset_length(ctx: Context) -> tuple[int, list[Issue]]:
    """ℓ(wW_P) equals the number of inversions outside R_P^+, over all of W."""
    co = ctx.coset
    cases = 0
    issues: list[Issue] = []
    for w in enumerate_group(ctx.rs):
        cases += 1
        m = co.min_rep(w)
        if m.length != co.coset_length(w) or co.max_rep(w).length != m.length + len(ctx.rp):
            issues.append(("fail", None, {"statement": "coset-length", "w": str(w)}))
    return cases, issues


# degree module ------------------------------------------------------------------

@check("greedy")
def _check_greedy(ctx: Context) -> tuple[int, list[Issue]]:
    """All greedy decompositions are reorderings of one another and their number
    agrees with the recursive formula."""
    issues: list[Issue] = []
    grid = _grid(ctx)
    for d in grid:
        seqs = all_greedy_decompositions(ctx, d)
        if len({tuple(sorted(s)) for s in seqs}) != 1:
            issues.append(("fail", d, {"statement": "reorder-unique"}))
        if count_greedy(ctx, d) != len(seqs):
            issues.append(("fail", d, {"statement": "count-greedy", "formula": count_greedy(ctx, d),
                                       "oracle": len(seqs)}))
        if len(maximal_roots(ctx, d)) != len(connected_components(ctx, d)) and any(d):
            issues.append(("fail", d, {"statement": "maxroots"}))
    return len(grid), issues


@check("extended-support")
def _check_extended_support(ctx: Context) -> tuple[int, list[Issue]]:
    """Monotonicity along every cover relation and additivity over all pairs."""
    grid = _grid(ctx)
    top = mn.compute_d_X(ctx)
    issues: list[Issue] = []
    cases = 0
    for d in grid:
        for i in range(len(d)):
            if d[i] < top[i]:
                up = d[:i] + (d[i] + 1,) + d[i + 1:]
                cases += 1
                if not extended_support(ctx, d) <= extended_support(ctx, up):
                    issues.append(("fail", d, {"statement": "inclusion", "d2": up}))
    for d, d2 in combinations_with_replacement(grid, 2):
        cases += 1
        if extended_support(ctx, add(d, d2)) != extended_support(ctx, d) | extended_support(ctx, d2):
            issues.append(("fail", d, {"statement": "addition", "d2": d2}))
    return cases, issues


def _disjoint_pairs(ctx: Context) -> Iterator[tuple[Degree, Degree]]:
    grid = [d for d in _grid(ctx) if any(d)]
    for d1, d2 in combinations(grid, 2):
        if totally_disjoint(ctx.rs, extended_support(ctx, d1), extended_support(ctx, d2)):
            yield d1, d2


def _interleavings(a: tuple, b: tuple) -> Iterator[tuple]:
    n = len(a) + len(b)
    for pos in combinations(range(n), len(a)):
        ia, ib, out = iter(a), iter(b), []
        slots = set(pos)
        for k in range(n):
            out.append(next(ia) if k in slots else next(ib))
        yield tuple(out)


@check("shuffle")
def _check_shuffle(ctx: Context) -> tuple[int, list[Issue]]:
    """Greedy decompositions of degrees with totally disjoint extended supports.

    Every greedy decomposition of the sum must split into greedy decompositions
    of the parts, and the number of them must be the shuffle count.  Together
    these force every interleaving to be greedy; interleavings of the canonical
    decompositions are also tested directly.
    """
    issues: list[Issue] = []
    cases = 0
    for d1, d2 in _disjoint_pairs(ctx):
        cases += 1
        s1, s2 = extended_support(ctx, d1), extended_support(ctx, d2)
        total = add(d1, d2)
        seqs = all_greedy_decompositions(ctx, total)
        g1, g2 = greedy_decomposition(ctx, d1), greedy_decomposition(ctx, d2)
        expect = comb(len(g1) + len(g2), len(g1)) * count_greedy(ctx, d1) * count_greedy(ctx, d2)
        w = {"d2": d2}
        if len(seqs) != expect:
            issues.append(("fail", d1, {"statement": "shuffle-count", **w}))
        for s in seqs:
            p1 = tuple(a for a in s if ctx.rs.supports[a] <= s1)
            p2 = tuple(a for a in s if ctx.rs.supports[a] <= s2)
            if len(p1) + len(p2) != len(s) or not (
                    is_greedy_decomposition(ctx, p1, d1) and is_greedy_decomposition(ctx, p2, d2)):
                issues.append(("fail", d1, {"statement": "shuffle-converse", **w}))
                break
        for s in _interleavings(g1, g2):
            if not is_greedy_decomposition(ctx, s, total):
                issues.append(("fail", d1, {"statement": "shuffle", **w}))
                break
    return cases, issues


@check("tilde-z")
def _check_tilde_z(ctx: Context) -> tuple[int, list[Issue]]:
    """z̃ is an involution, factorizes over totally disjoint parts, and
    (z_d^P)^{-1} = w_P z_d^P w_P."""
    issues: list[Issue] = []
    grid = _grid(ctx)
    e = identity(ctx.rs)
    for d in grid:
        t = tilde_z_d_P(ctx, d)
        if t * t != e:
            issues.append(("fail", d, {"statement": "involution"}))
        z = z_d_P(ctx, d)
        if z.inverse() != ctx.w_P * z * ctx.w_P:
            issues.append(("fail", d, {"statement": "z-inverse"}))
    cases = len(grid)
    for d1, d2 in _disjoint_pairs(ctx):
        cases += 1
        t1, t2 = tilde_z_d_P(ctx, d1), tilde_z_d_P(ctx, d2)
        t = tilde_z_d_P(ctx, add(d1, d2))
        if not (t == t1 * t2 == t2 * t1 == hecke_product(t1, t2) == hecke_product(t2, t1)):
            issues.append(("fail", d1, {"statement": "tilde-z-addition", "d2": d2}))
    return cases, issues


@check("pcosmall")
def _check_pcosmall(ctx: Context) -> tuple[int, list[Issue]]:
    rs = ctx.rs
    issues: list[Issue] = []
    for a in ctx.outside:
        if is_P_cosmall(ctx, a) and not verify_pcosmall_orthogonality(ctx, a):
            issues.append(("fail", None, {"statement": "pcosmall-orthogonal", "alpha": rs.positive_roots[a]}))
        if not ctx.parabolic and is_locally_high(rs, rs.positive_roots[a]) and not is_P_cosmall(ctx, a):
            issues.append(("fail", None, {"statement": "locally-high-cosmall", "alpha": rs.positive_roots[a]}))
    return len(ctx.outside), issues


# minimal module -----------------------------------------------------------------

@check("d-X")
def _check_d_x(ctx: Context) -> tuple[int, list[Issue]]:
    """Brute force over the box just above d_X: every degree reaching the top
    coset dominates d_X."""
    dx = mn.compute_d_X(ctx)
    top = mn._top(ctx)
    bad = [d for d in box(tuple(x + 1 for x in dx))
           if z_d_P(ctx, d) == top and not all(a >= b for a, b in zip(d, dx))]
    return 1, [("fail", dx, {"statement": "d-X-unique", "other": bad[0]})] if bad else []


@check("uniqueness")
def _check_uniqueness(ctx: Context) -> tuple[int, list[Issue]]:
    return len(_pi(ctx)), _fails(mn.verify_uniqueness_theorems(ctx))


@check("addition-minimal")
def _check_addition_minimal(ctx: Context) -> tuple[int, list[Issue]]:
    return len(_grid(ctx)), _fails(mn.verify_addition_minimal(ctx))


@check("lifting")
def _check_lifting(ctx: Context) -> tuple[int, list[Issue]]:
    """Lifting facts (asserted inside ``lifting``) plus a brute-force uniqueness scan."""
    issues: list[Issue] = []
    for d in _pi(ctx):
        try:
            e = mn.lifting(ctx, d)
        except AssertionError as exc:
            issues.append(("fail", d, {"statement": "lifting-facts", "error": str(exc)}))
            continue
        cands = mn.lifting_candidates(ctx, d)
        if cands != [e]:
            issues.append(("fail", d, {"statement": "lifting-unique", "candidates": cands}))
    return len(_pi(ctx)), issues


def _cosmall_families(ctx: Context) -> Iterator[list[int]]:
    rs = ctx.rs
    roots = [a for a in ctx.outside if is_P_cosmall(ctx, a)]

    def grow(start: int, fam: list[int]) -> Iterator[list[int]]:
        if fam:
            yield fam
        for k in range(start, len(roots)):
            a = roots[k]
            if all(totally_disjoint(rs, rs.supports[a], rs.supports[b]) for b in fam):
                yield from grow(k + 1, fam + [a])

    yield from grow(0, [])


@check("splitting")
def _check_splitting(ctx: Context) -> tuple[int, list[Issue]]:
    issues: list[Issue] = []
    cases = 0
    for fam in _cosmall_families(ctx):
        cases += 1
        issues += _fails(mn.verify_splitting(ctx, fam))
        d = ctx.zero
        for a in fam:
            d = add(d, ctx.deg[a])
        if not qh.is_P_admissible(ctx, d):
            issues.append(("fail", d, {"statement": "cosmall-admissible"}))
    for d in _pi(ctx):
        cases += 1
        issues += _fails(mn.verify_splitting_maxroots(ctx, d), d)
    return cases, issues


@check("subsequence-closure")
def _check_subsequence(ctx: Context) -> tuple[int, list[Issue]]:
    issues: list[Issue] = []
    for d in _pi(ctx):
        issues += _fails(mn.verify_subsequence_closure(ctx, d), d)
    return len(_pi(ctx)), issues


# cascade module -----------------------------------------------------------------

@check("cascade")
def _check_cascade(ctx: Context) -> tuple[int, list[Issue]]:
    """Structure theorem, product formula, c1 formula and component splitting on
    every e in Π_B (absolute statements run in the full flag context only);
    relative inversion partition and length additivity for this Δ_P."""
    cb = context(ctx.rs.spec)
    issues: list[Issue] = []
    for e in _pi_b(ctx):
        if not ctx.parabolic:
            issues += _fails(cas.verify_cascade_theorem(cb, e), e)
            issues += _fails(cas.verify_recursive_description(cb, e), e)
            try:
                cas.product_formula(cb, e)
            except AssertionError:
                issues.append(("fail", e, {"statement": "product-formula"}))
            lhs, rhs = cas.c1_length_formula(cb, e)
            if lhs != rhs:
                issues.append(("fail", e, {"statement": "c1-length", "lhs": lhs, "rhs": rhs}))
        issues += _fails(cas.inversion_partition(cb, e, ctx.parabolic), e)
        (a1, a2), (r1, r2) = cas.length_additivity(cb, e, ctx.parabolic)
        if a1 != a2 or r1 != r2:
            issues.append(("fail", e, {"statement": "length-additivity", "absolute": [a1, a2],
                                       "relative": [r1, r2]}))
    if not ctx.parabolic:
        dgb = mn.compute_d_X(cb)
        if cas.cascade_of(cb, dgb) != tuple(cas.kostant_cascade(ctx.rs)):
            issues.append(("fail", dgb, {"statement": "kostant-concordance"}))
    return len(_pi_b(ctx)), issues


# quasihom module ----------------------------------------------------------------

@check("positivity")
def _check_positivity(ctx: Context) -> tuple[int, list[Issue]]:
    cb = context(ctx.rs.spec)
    issues: list[Issue] = []
    type_a = ctx.rs.spec.series == "A"
    for e in _pi_b(ctx):
        issues += _fails(qh.verify_positivity(cb, e, ctx.parabolic), e)
        z = z_d_P(cb, e)
        if type_a and ctx.coset.max_rep(z) == z:
            issues += _fails(qh.verify_type_a(cb, e, ctx.parabolic), e)
    return len(_pi_b(ctx)), issues


@check("admissible")
def _check_admissible(ctx: Context) -> tuple[int, list[Issue]]:
    """Π_B is B-admissible, type A is always admissible; other non-admissible
    degrees are reported as expected negatives rather than failures."""
    issues: list[Issue] = []
    for d in _pi(ctx):
        s = qh.sigma(ctx, d)
        if s >= 0:
            continue
        if not ctx.parabolic or ctx.rs.spec.series == "A" or "cosmall-split" in qh.assumption_clauses(ctx, d):
            issues.append(("fail", d, {"statement": "admissible", "sigma": s}))
        else:
            issues.append(("pass", d, {"note": "expected-negative", "sigma": s}))
    return len(_pi(ctx)), issues


@check("prep")
def _check_prep(ctx: Context) -> tuple[int, list[Issue]]:
    issues: list[Issue] = []
    for d in _pi(ctx):
        issues += _fails(qh.verify_prep_lemmas(ctx, d), d)
        issues += _fails(qh.verify_injection(ctx, d), d)
        issues += _fails(qh.verify_root_membership_lemmas(ctx, d), d)
    return len(_pi(ctx)), issues


@check("certificate")
def _check_certificate(ctx: Context) -> tuple[int, list[Issue]]:
    issues: list[Issue] = []
    for d in _pi(ctx):
        c = qh.certificate(ctx, d)
        qh.diagonal_curve_descriptor(ctx, d)
        if c.status != "pass":
            issues.append((c.status, d, {"statement": "certificate-inequality", "lhs": c.lhs,
                                         "td_card": c.td_card, "assumption": c.assumption}))
    return len(_pi(ctx)), issues


# sweep driver -------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    check: str
    type: str
    parabolic: tuple[int, ...]
    degree: tuple[int, ...] | None
    status: str
    cases: int = 0
    witness: dict = field(default_factory=dict)
    reproduce: str = ""

    def sort_key(self) -> tuple:
        spec = DynkinSpec.parse(self.type)
        return (spec.series, spec.rank, len(self.parabolic), self.parabolic,
                self.degree is not None, self.degree or (), self.check, self.status,
                json.dumps(self.witness, sort_keys=True))

    def to_dict(self) -> dict:
        out = asdict(self)
        out["parabolic"] = list(self.parabolic)
        out["degree"] = None if self.degree is None else list(self.degree)
        return out


@dataclass
class SweepConfig:
    types: list[str] = field(default_factory=list)
    max_rank: int = 3
    parabolic_mode: str = "all-subsets"
    parabolics: list[list[int]] = field(default_factory=list)  # 1-based, for "listed"
    checks: list[str] = field(default_factory=list)
    parallelism: int = 1
    output: str | None = None

    def resolved_checks(self) -> list[str]:
        names = self.checks or list(CHECKS)
        unknown = sorted(set(names) - set(CHECKS))
        if unknown:
            raise UsageError(f"unknown checks: {', '.join(unknown)}")
        return sorted(set(names))


def all_types(max_rank: int) -> list[DynkinSpec]:
    out = []
    for series, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 4)):
        out += [DynkinSpec(series, n) for n in range(lo, max_rank + 1)]
    out += [DynkinSpec("E", n) for n in (6, 7, 8) if n <= max_rank]
    if max_rank >= 4:
        out.append(DynkinSpec("F", 4))
    if max_rank >= 2:
        out.append(DynkinSpec("G", 2))
    return sorted(out)


def resolve_grid(cfg: SweepConfig) -> list[tuple[str, tuple[int, ...]]]:
    specs = [DynkinSpec.parse(t) for t in cfg.types] if cfg.types else all_types(cfg.max_rank)
    grid = []
    for spec in specs:
        n = spec.rank
        if cfg.parabolic_mode == "listed":
            subsets = [tuple(sorted(p)) for p in cfg.parabolics]
            for p in subsets:
                if any(not 1 <= i <= n for i in p):
                    raise UsageError(f"parabolic indices {list(p)} out of range for {spec}")
        elif cfg.parabolic_mode == "all-subsets":
            subsets = [p for k in range(n + 1) for p in combinations(range(1, n + 1), k)]
        else:
            raise UsageError(f"unknown parabolic mode {cfg.parabolic_mode!r}")
        grid += [(str(spec), p) for p in subsets]
    if not grid:
        raise UsageError("the sweep grid is empty")
    return grid


def _reproduce(type_: str, parabolic: tuple[int, ...], name: str) -> str:
    p = f" --parabolic {','.join(map(str, parabolic))}" if parabolic else ""
    return f"python -m cascade_lab verify --type {type_}{p} --checks {name}"


def run_context(type_: str, parabolic: tuple[int, ...], checks: list[str]) -> list[CheckResult]:
    """Run the named checks on one (type, Δ_P) context (parabolic is 1-based)."""
    ctx = context(type_, [i - 1 for i in parabolic])
    out = []
    for name in checks:
        rep = _reproduce(type_, parabolic, name)
        try:
            cases, issues = CHECKS[name](ctx)
        except GroupTooLarge as exc:
            out.append(CheckResult(name, type_, parabolic, None, "skipped", 0, {"reason": str(exc)}, rep))
            continue
        except Exception as exc:  # a crash inside a verifier is a failed check
            out.append(CheckResult(name, type_, parabolic, None, "fail", 0,
                                   {"error": f"{type(exc).__name__}: {exc}"}, rep))
            continue
        failed = any(s == "fail" for s, _, _ in issues)
        out.append(CheckResult(name, type_, parabolic, None, "fail" if failed else "pass", cases, {}, rep))
        for status, degree, witness in issues:
            out.append(CheckResult(name, type_, parabolic, None if degree is None else tuple(degree),
                                   status, 1, _jsonable(witness), rep))
    return out


def _run_task(task: tuple[str, tuple[int, ...], list[str]]) -> list[CheckResult]:
    return run_context(*task)


def run_sweep(cfg: SweepConfig) -> dict:
    """Execute the sweep and return ``{config, results, summary}``; also writes
    the JSON report when ``cfg.output`` is set."""
    checks = cfg.resolved_checks()
    tasks = [(t, p, checks) for t, p in resolve_grid(cfg)]
    if cfg.parallelism > 1:
        with ProcessPoolExecutor(cfg.parallelism) as pool:
            batches = list(pool.map(_run_task, tasks))
    else:
        batches = [_run_task(t) for t in tasks]
    results = sorted(chain.from_iterable(batches), key=CheckResult.sort_key)
    summary: dict[str, dict[str, int]] = {}
    for r in results:
        if r.degree is None and not r.witness:
            summary.setdefault(r.check, Counter())[r.status] += 1
    tally = Counter(r.status for r in results if r.degree is not None or r.witness)
    config = asdict(cfg)
    config.pop("parallelism")
    config.pop("output")
    report = {
        "config": config,
        "results": [r.to_dict() for r in results],
        "summary": {
            "per_check": {k: dict(sorted(v.items())) for k, v in sorted(summary.items())},
            "contexts": len(tasks),
            "fail": sum(1 for r in results if r.status == "fail"),
            "skipped": sum(1 for r in results if r.status == "skipped"),
            "open_case": tally["open-case"],
        },
    }
    if cfg.output:
        Path(cfg.output).write_text(dumps(report))
    return report


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# D-series golden table ----------------------------------------------------------

def d_series_closed_form(p: int) -> tuple[int, int]:
    """(r_p, N_p) from the closed forms for D_p, p >= 3."""
    r = p - 1 if p % 2 else p
    if p % 2:
        n = 1
        for k in range(p - 2, 0, -2):
            n *= k
    else:
        n = 2
        for k in range(p - 1, 0, -2):
            n *= k
    return r, n


def golden_counts(ps: Iterable[int] = range(3, 9)) -> list[dict]:
    """(r_p, N_p) for D_p at d_{G/B}, via the cascade and the counting recursion."""
    rows = []
    for p in ps:
        cb = context(DynkinSpec("D", p))
        dgb = mn.compute_d_X(cb)
        r = len(cas.cascade_of(cb, dgb, check=False))
        n = count_greedy(cb, dgb)
        expect = d_series_closed_form(p)
        rows.append({"type": f"D{p}", "d_GB": list(dgb), "r": r, "N": n,
                     "expected": list(expect), "ok": (r, n) == expect})
    return rows

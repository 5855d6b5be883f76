"""Minimal degrees, d_X, liftings and the theorems relating them.

>>> from cascade_lab.degree import context
>>> compute_d_X(context("D4"))
(2, 2, 2, 2)
>>> lifting(context("A2", {1}), (1,))
(1, 1)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable

from .degree import (
    Context,
    Degree,
    add,
    box,
    connected_components,
    context,
    greedy_decomposition,
    leq,
    maximal_roots,
    restrict,
    z_d_P,
)
from .rootsys import totally_disjoint
from .weyl import WeylElement, bruhat_leq, longest_element

__all__ = [
    "MinimalDegreeRecord",
    "Failure",
    "SearchCapExceeded",
    "is_minimal_degree",
    "enumerate_minimal_degrees",
    "minimal_degree_set",
    "in_pi",
    "compute_d_X",
    "d_GB",
    "lifting",
    "lifting_candidates",
    "verify_uniqueness_theorems",
    "verify_addition_minimal",
    "verify_splitting",
    "verify_splitting_maxroots",
    "verify_subsequence_closure",
]

DX_CAP = 1 << 10


class SearchCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Failure:
    """A violated statement together with the data that violates it."""

    check: str
    witness: dict = field(default_factory=dict)


@dataclass
class MinimalDegreeRecord:
    degree: Degree
    z: WeylElement
    lifting: Degree | None = None


def is_minimal_degree(ctx: Context, d: Degree) -> bool:
    """No d' < d has z_d ⪯ z_{d'}.  Immediate predecessors are tried first."""
    d = tuple(d)
    z = z_d_P(ctx, d)
    preds = [d[:i] + (d[i] - 1,) + d[i + 1:] for i in range(len(d)) if d[i]]
    for p in preds:
        if bruhat_leq(z, z_d_P(ctx, p)):
            return False
    return not any(
        bruhat_leq(z, z_d_P(ctx, q)) for q in box(d) if q != d and q not in preds
    )


def _is_top(ctx: Context, d: Degree) -> bool:
    return z_d_P(ctx, d) == _top(ctx)


def _top(ctx: Context) -> WeylElement:
    if "top" not in ctx.cache:
        ctx.cache["top"] = ctx.coset.min_rep(longest_element(ctx.rs))
    return ctx.cache["top"]


def _descend(d: Degree, ok: Callable[[Degree], bool]) -> Degree:
    """Coordinate-wise binary search for the least element of an up-set containing d."""
    d = list(d)
    for i in range(len(d)):
        lo, hi = 0, d[i]
        while lo < hi:
            mid = (lo + hi) // 2
            d[i] = mid
            if ok(tuple(d)):
                hi = mid
            else:
                lo = mid + 1
        d[i] = lo
    return tuple(d)


def compute_d_X(ctx: Context) -> Degree:
    """Least degree whose z-coset is the coset of w_o.

    The qualifying set is an up-set (z is monotone in d), so we double a
    uniform degree until it qualifies and then lower coordinates one at a time.
    Minimality of the result is asserted.
    """
    if "dX" in ctx.cache:
        return ctx.cache["dX"]
    k = 1
    while not _is_top(ctx, (k,) * len(ctx.coords)):
        k *= 2
        if k > DX_CAP:
            raise SearchCapExceeded(f"d_X not found below {DX_CAP} in {ctx.label()}")
    d = _descend((k,) * len(ctx.coords), lambda x: _is_top(ctx, x))
    for i, x in enumerate(d):
        if x:
            assert not _is_top(ctx, d[:i] + (x - 1,) + d[i + 1:]), "d_X not minimal"
    ctx.cache["dX"] = d
    return d


def d_GB(ctx: Context) -> Degree:
    """d_{G/B} for the root system of ctx."""
    return compute_d_X(context(ctx.rs.spec))


def minimal_degree_set(ctx: Context) -> frozenset[Degree]:
    if "pi" not in ctx.cache:
        ctx.cache["pi"] = frozenset(d for d in box(compute_d_X(ctx)) if is_minimal_degree(ctx, d))
    return ctx.cache["pi"]


def enumerate_minimal_degrees(ctx: Context, with_lifting: bool = False) -> list[MinimalDegreeRecord]:
    return [
        MinimalDegreeRecord(d, z_d_P(ctx, d), lifting(ctx, d) if with_lifting else None)
        for d in sorted(minimal_degree_set(ctx))
    ]


def in_pi(ctx: Context, d: Degree) -> bool:
    d = tuple(d)
    if leq(d, compute_d_X(ctx)):
        return d in minimal_degree_set(ctx)
    return False  # every minimal degree lies below d_X


def lifting(ctx: Context, d: Degree, check: bool = True) -> Degree:
    """Least e over Δ with z_d^P w_P ⪯ z_e^B, with the four defining facts asserted."""
    d = tuple(d)
    memo = ctx.cache.setdefault("lift", {})
    if d in memo:
        return memo[d]
    if check and not in_pi(ctx, d):
        raise ValueError(f"{d} is not a minimal degree of {ctx.label()}")
    cb = context(ctx.rs.spec)
    target = z_d_P(ctx, d) * ctx.w_P
    e = _descend(d_GB(ctx), lambda x: bruhat_leq(target, z_d_P(cb, x)))
    if check:
        ze = z_d_P(cb, e)
        assert in_pi(cb, e), f"lifting {e} of {d} is not in Pi_B"
        assert ze == target, f"z_e^B differs from z_d^P w_P for {d}"
        assert ctx.coset.max_rep(ze) == ze, "z_e^B is not the maximal representative"
        assert restrict(e, ctx.parabolic) == d, "lifting does not restrict to d"
    memo[d] = e
    return e


def lifting_candidates(ctx: Context, d: Degree) -> list[Degree]:
    """All minimal elements of {e <= d_{G/B} : z_d^P w_P ⪯ z_e^B}, by brute force."""
    cb = context(ctx.rs.spec)
    target = z_d_P(ctx, d) * ctx.w_P
    good = [e for e in box(d_GB(ctx)) if bruhat_leq(target, z_d_P(cb, e))]
    good_set = set(good)
    return [e for e in good if not any(f != e and leq(f, e) for f in good_set)]


def verify_uniqueness_theorems(ctx: Context) -> list[Failure]:
    pi = sorted(minimal_degree_set(ctx))
    dx = compute_d_X(ctx)
    fails = [Failure("bounded-by-dX", {"d": d, "dX": dx}) for d in pi if not leq(d, dx)]
    seen: dict[WeylElement, Degree] = {}
    for d in pi:
        z = z_d_P(ctx, d)
        if z in seen:
            fails.append(Failure("z-injective", {"d": seen[z], "d2": d}))
        seen[z] = d
        for d2 in pi:
            if bruhat_leq(z, z_d_P(ctx, d2)) and not leq(d, d2):
                fails.append(Failure("uniqueness", {"d": d, "d2": d2}))
    # every minimal element of {d' : z_d ⪯ z_d'} is itself minimal, hence below d_X
    grid = list(box(dx))
    for d in pi:
        z = z_d_P(ctx, d)
        above = [q for q in grid if bruhat_leq(z, z_d_P(ctx, q))]
        least = [q for q in above if not any(p != q and leq(p, q) for p in above)]
        if least != [d]:
            fails.append(Failure("unique-minimal-element", {"d": d, "minimal": least}))
    return fails


def verify_addition_minimal(ctx: Context) -> list[Failure]:
    fails = []
    pi = minimal_degree_set(ctx)
    for d in box(compute_d_X(ctx)):
        parts = connected_components(ctx, d)
        if all(in_pi(ctx, p) for p in parts) != (d in pi):
            fails.append(Failure("addition-minimal", {"d": d, "components": parts}))
    return fails


def verify_splitting(ctx: Context, roots: Iterable[int]) -> list[Failure]:
    """Sums of totally disjoint P-cosmall roots and the maximal-root criterion."""
    from .cascade import cascade_of

    roots = list(roots)
    rs = ctx.rs
    for a in roots:
        if a not in maximal_roots(ctx, ctx.deg[a]):
            raise ValueError(f"{rs.coeffs(a)} is not P-cosmall")
    for a, b in combinations(roots, 2):
        if not totally_disjoint(rs, rs.supports[a], rs.supports[b]):
            raise ValueError("supports are not pairwise totally disjoint")
    fails = []
    d = ctx.zero
    for a in roots:
        d = add(d, ctx.deg[a])
    if not in_pi(ctx, d):
        return [Failure("splitting-minimal", {"roots": roots, "d": d})]
    cb = context(rs.spec)
    outside = {a for a in cascade_of(cb, lifting(ctx, d)) if not ctx.coset.in_rp(a)}
    if outside != set(roots):
        fails.append(Failure("splitting-cascade", {"roots": roots, "cascade_outside": sorted(outside)}))
    return fails


def verify_splitting_maxroots(ctx: Context, d: Degree) -> list[Failure]:
    """For d in Pi_P with lifting e, let ê be the coroot sum of the cascade of e
    outside R_P^+.  Then d and ê share their maximal roots, ê restricts to d,
    ê is minimal with cascade equal to that outside part, and Δ̃(d) = Δ(ê)."""
    from .cascade import cascade_of
    from .degree import extended_support, naive_support

    cb = context(ctx.rs.spec)
    outside = sorted(a for a in cascade_of(cb, lifting(ctx, d)) if not ctx.coset.in_rp(a))
    ehat = (0,) * ctx.rs.rank
    for a in outside:
        ehat = add(ehat, ctx.rs.coroots[a])
    w = {"d": tuple(d), "ehat": ehat}
    fails = []
    if restrict(ehat, ctx.parabolic) != tuple(d):
        fails.append(Failure("splitting-restrict", w))
    if not in_pi(cb, ehat) or sorted(cascade_of(cb, ehat)) != outside:
        fails.append(Failure("splitting-subcascade", w))
    if set(maximal_roots(ctx, d)) != set(maximal_roots(cb, ehat)):
        fails.append(Failure("splitting-maxroots", w))
    if extended_support(ctx, d) != naive_support(cb, ehat):
        fails.append(Failure("splitting-support", w))
    return fails


def verify_subsequence_closure(ctx: Context, d: Degree) -> list[Failure]:
    entries = greedy_decomposition(ctx, d)
    fails = []
    seen = set()
    for mask in range(1 << len(entries)):
        part = ctx.zero
        for k, a in enumerate(entries):
            if mask >> k & 1:
                part = add(part, ctx.deg[a])
        if part not in seen:
            seen.add(part)
            if not in_pi(ctx, part):
                fails.append(Failure("subsequence-closure", {"d": d, "part": part}))
    return fails

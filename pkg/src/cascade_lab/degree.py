"""Degrees in H_2(G/P), greedy decompositions and the elements z_d^P.

A degree is a plain tuple of non-negative ints indexed by the simple roots
outside Δ_P (``Context.coords``).  Roots are passed around as positive root
indices of the underlying root system.

>>> ctx = context("A3")
>>> [ctx.rs.positive_roots[j] for j in greedy_decomposition(ctx, (1, 2, 1))]
[(1, 1, 1), (0, 1, 0)]
>>> count_greedy(ctx, (1, 0, 1))
2
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import comb, prod
from typing import Iterable, Iterator

from .rootsys import DynkinSpec, RootSystem, build_root_system, connected_components_of_subset
from .weyl import (
    CosetContext,
    WeylElement,
    hecke_product,
    hecke_times_reflection,
    identity,
    reflection,
)

__all__ = [
    "Degree",
    "Context",
    "GreedyGuardExceeded",
    "context",
    "degree_of_root",
    "maximal_roots",
    "greedy_decomposition",
    "all_greedy_decompositions",
    "is_greedy_decomposition",
    "count_greedy",
    "z_d_P",
    "tilde_z_d_P",
    "naive_support",
    "extended_support",
    "connected_components",
    "component_entries",
    "is_P_cosmall",
    "verify_pcosmall_orthogonality",
    "restrict",
    "embed",
    "box",
    "add",
    "sub",
    "leq",
]

Degree = tuple[int, ...]

GREEDY_GUARD = 10**6


class GreedyGuardExceeded(RuntimeError):
    pass


def add(a: Degree, b: Degree) -> Degree:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Degree, b: Degree) -> Degree:
    return tuple(x - y for x, y in zip(a, b))


def leq(a: Degree, b: Degree) -> bool:
    return all(x <= y for x, y in zip(a, b))


def box(top: Degree) -> Iterator[Degree]:
    """All degrees d with 0 <= d <= top, in lexicographic order."""
    return product(*(range(t + 1) for t in top))


class Context:
    """A homogeneous space G/P: root system, parabolic subset and caches."""

    def __init__(self, rs: RootSystem, parabolic: Iterable[int] = ()):
        self.rs = rs
        self.coset = CosetContext(rs, parabolic)
        self.parabolic = self.coset.parabolic
        self.coords: tuple[int, ...] = tuple(i for i in range(rs.rank) if i not in self.parabolic)
        self.rp = tuple(rs.roots_in(self.parabolic))
        self.outside = tuple(j for j in range(rs.n_pos) if not self.coset.in_rp(j))
        self.outside_mask = sum(1 << j for j in self.outside)
        self.deg: dict[int, Degree] = {
            j: tuple(rs.coroots[j][i] for i in self.coords) for j in self.outside
        }
        self.zero: Degree = (0,) * len(self.coords)
        self._greedy: dict[Degree, tuple[int, ...]] = {}
        self._z: dict[Degree, WeylElement] = {}
        self._count: dict[Degree, int] = {}
        self.cache: dict = {}  # free-form per-context memo used by other modules

    @property
    def w_P(self) -> WeylElement:
        return self.coset.w_P

    def label(self) -> str:
        return f"{self.rs.spec}/{{{','.join(str(i + 1) for i in sorted(self.parabolic))}}}"

    def __repr__(self) -> str:
        return f"Context({self.label()})"


@lru_cache(maxsize=None)
def _context(spec: DynkinSpec, parabolic: frozenset[int]) -> Context:
    return Context(build_root_system(spec), parabolic)


def context(spec: DynkinSpec | str | RootSystem, parabolic: Iterable[int] = ()) -> Context:
    """Shared, memoized Context for a type and 0-based parabolic subset."""
    if isinstance(spec, RootSystem):
        spec = spec.spec
    elif isinstance(spec, str):
        spec = DynkinSpec.parse(spec)
    return _context(spec, frozenset(parabolic))


def degree_of_root(ctx: Context, a: int) -> Degree:
    if a not in ctx.deg:
        raise ValueError(f"root {ctx.rs.coeffs(a)} lies in R_P^+; its degree is zero")
    return ctx.deg[a]


def maximal_roots(ctx: Context, d: Degree) -> list[int]:
    cand = [j for j in ctx.outside if leq(ctx.deg[j], d)]
    mask = sum(1 << j for j in cand)
    return [j for j in cand if not ctx.rs.above[j] & mask]


def greedy_decomposition(ctx: Context, d: Degree) -> tuple[int, ...]:
    """Canonical greedy decomposition: least root index among maximal roots each step."""
    d = tuple(d)
    got = ctx._greedy.get(d)
    if got is not None:
        return got
    out: list[int] = []
    rest = d
    while any(rest):
        a = min(maximal_roots(ctx, rest))
        nxt = sub(rest, ctx.deg[a])
        assert sum(nxt) < sum(rest)
        out.append(a)
        rest = nxt
    ctx._greedy[d] = res = tuple(out)
    return res


def all_greedy_decompositions(ctx: Context, d: Degree, guard: int = GREEDY_GUARD) -> list[tuple[int, ...]]:
    """Every greedy decomposition, branching over all maximal roots."""
    out: list[tuple[int, ...]] = []

    def walk(rest: Degree, prefix: tuple[int, ...]) -> None:
        if not any(rest):
            out.append(prefix)
            if len(out) > guard:
                raise GreedyGuardExceeded(f"more than {guard} greedy decompositions")
            return
        for a in maximal_roots(ctx, rest):
            walk(sub(rest, ctx.deg[a]), prefix + (a,))

    walk(tuple(d), ())
    return out


def is_greedy_decomposition(ctx: Context, seq: Iterable[int], d: Degree) -> bool:
    rest = tuple(d)
    for a in seq:
        if a not in maximal_roots(ctx, rest):
            return False
        rest = sub(rest, ctx.deg[a])
    return not any(rest)


def component_entries(ctx: Context, d: Degree) -> list[tuple[int, ...]]:
    """Greedy entries of d grouped by Dynkin component of the extended support."""
    entries = greedy_decomposition(ctx, d)
    comps = connected_components_of_subset(ctx.rs, extended_support(ctx, d))
    return [tuple(a for a in entries if ctx.rs.supports[a] <= c) for c in comps]


def connected_components(ctx: Context, d: Degree) -> list[Degree]:
    out = []
    for group in component_entries(ctx, d):
        total = ctx.zero
        for a in group:
            total = add(total, ctx.deg[a])
        out.append(total)
    return out


def count_greedy(ctx: Context, d: Degree) -> int:
    """N_d through the component recursion, never enumerating sequences."""
    d = tuple(d)
    if d in ctx._count:
        return ctx._count[d]
    if not any(d):
        n = 1
    else:
        comps = connected_components(ctx, d)
        if len(comps) == 1:
            top = maximal_roots(ctx, d)
            assert len(top) == 1, "connected degree with several maximal roots"
            n = count_greedy(ctx, sub(d, ctx.deg[top[0]]))
        else:
            sizes = [len(greedy_decomposition(ctx, c)) for c in comps]
            n, left = 1, sum(sizes)
            for r in sizes:
                n *= comb(left, r)
                left -= r
            n *= prod(count_greedy(ctx, c) for c in comps)
    ctx._count[d] = n
    return n


def tilde_z_d_P(ctx: Context, d: Degree) -> WeylElement:
    w = identity(ctx.rs)
    for a in greedy_decomposition(ctx, d):
        w = hecke_times_reflection(w, a)
    return w


def z_d_P(ctx: Context, d: Degree) -> WeylElement:
    """Minimal representative of s_{a1}·…·s_{ar}·w_P (Hecke products)."""
    d = tuple(d)
    z = ctx._z.get(d)
    if z is None:
        z = ctx.coset.min_rep(hecke_product(tilde_z_d_P(ctx, d), ctx.w_P))
        ctx._z[d] = z
    return z


def naive_support(ctx: Context, d: Degree) -> frozenset[int]:
    return frozenset(i for i, x in zip(ctx.coords, d) if x > 0)


def extended_support(ctx: Context, d: Degree) -> frozenset[int]:
    return frozenset().union(*(ctx.rs.supports[a] for a in greedy_decomposition(ctx, d)))


def is_P_cosmall(ctx: Context, a: int) -> bool:
    return a in maximal_roots(ctx, degree_of_root(ctx, a))


def verify_pcosmall_orthogonality(ctx: Context, a: int) -> bool:
    """(alpha, gamma) = 0 for every gamma in R_P^+ outside I(s_alpha)."""
    inv = reflection(ctx.rs, a).inversions
    return all(ctx.rs.pair[a][g] == 0 for g in ctx.rp if not inv >> g & 1)


def restrict(e: Degree, parabolic: Iterable[int]) -> Degree:
    p = frozenset(parabolic)
    return tuple(x for i, x in enumerate(e) if i not in p)


def embed(ctx: Context, d: Degree) -> Degree:
    """The representative of d over all of Δ with zeros on Δ_P."""
    full = [0] * ctx.rs.rank
    for i, x in zip(ctx.coords, d):
        full[i] = x
    return tuple(full)

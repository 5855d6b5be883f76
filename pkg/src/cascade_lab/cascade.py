"""Generalized cascades of orthogonal roots and their structure theorems.

>>> from cascade_lab.degree import context
>>> cb = context("A3")
>>> [cb.rs.positive_roots[a] for a in cascade_of(cb, (1, 2, 1))]
[(0, 1, 0), (1, 1, 1)]
>>> str(product_formula(cb, (1, 2, 1)))
's1*s2*s3*s1*s2*s1'
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .degree import (
    Context,
    Degree,
    connected_components,
    greedy_decomposition,
    maximal_roots,
    sub,
    z_d_P,
)
from .minimal import Failure, in_pi
from .rootsys import RootSystem, connected_components_of_subset, is_strongly_orthogonal
from .weyl import CosetContext, WeylElement, identity, reflection

__all__ = [
    "ChainCascade",
    "cascade_of",
    "chain_cascade",
    "kostant_cascade",
    "verify_cascade_theorem",
    "product_formula",
    "inversion_partition",
    "length_additivity",
    "c1_pairing",
    "c1_length_formula",
    "verify_recursive_description",
]


@dataclass(frozen=True)
class ChainCascade:
    base: int
    chain: tuple[int, ...]


def cascade_of(cb: Context, e: Degree, check: bool = True) -> tuple[int, ...]:
    """B_{R,e}: entries of the canonical greedy decomposition of e, as sorted indices."""
    if cb.parabolic:
        raise ValueError("cascades live in the full flag context")
    e = tuple(e)
    if check and not in_pi(cb, e):
        raise ValueError(f"{e} is not a minimal degree of {cb.rs.spec}")
    entries = greedy_decomposition(cb, e)
    assert len(set(entries)) == len(entries), f"repeated greedy entry for {e}"
    return tuple(sorted(entries))


def chain_cascade(rs: RootSystem, cascade: Iterable[int], phi: int) -> ChainCascade:
    """Members above phi, sorted descending; they must form a chain."""
    members = sorted((a for a in cascade if rs.leq(phi, a)),
                     key=lambda a: sum(rs.positive_roots[a]), reverse=True)
    for hi, lo in zip(members, members[1:]):
        if not rs.leq(lo, hi):
            raise AssertionError(f"chain cascade of {rs.coeffs(phi)} is not totally ordered")
    return ChainCascade(phi, tuple(members))


def kostant_cascade(rs: RootSystem, subset: Iterable[int] | None = None) -> list[int]:
    """Kostant's cascade by its classical recursion: the highest root of each
    component, then recurse on the simple roots orthogonal to it."""
    s = frozenset(range(rs.rank) if subset is None else subset)
    out = []
    for comp in connected_components_of_subset(rs, s):
        top = max(rs.roots_in(comp), key=lambda j: sum(rs.positive_roots[j]))
        out.append(top)
        rest = [i for i in comp if rs.pair[rs.simple[i]][top] == 0]
        out += kostant_cascade(rs, rest)
    return sorted(out)


def _subsystem(rs: RootSystem, a: int) -> set[int]:
    return set(rs.roots_in(rs.supports[a]))


def _totally_disjoint_roots(rs: RootSystem, xs: Iterable[int], ys: Iterable[int]) -> bool:
    ys = list(ys)
    return all(
        is_strongly_orthogonal(rs, rs.positive_roots[x], rs.positive_roots[y])
        for x in xs for y in ys
    )


def verify_cascade_theorem(cb: Context, e: Degree) -> list[Failure]:
    rs = cb.rs
    cas = cascade_of(cb, e)
    fails = []
    chains = {}
    for phi in range(rs.n_pos):
        try:
            chains[phi] = set(chain_cascade(rs, cas, phi).chain)
        except AssertionError:
            fails.append(Failure("chain-cascade-total", {"e": e, "phi": rs.positive_roots[phi]}))
            chains[phi] = {a for a in cas if rs.leq(phi, a)}
    for a in cas:
        if a not in maximal_roots(cb, cb.deg[a]):
            fails.append(Failure("cascade-maximal-root", {"e": e, "alpha": rs.positive_roots[a]}))
    for a, b in combinations(cas, 2):
        ra, rb = rs.positive_roots[a], rs.positive_roots[b]
        w = {"e": e, "alpha": ra, "alpha2": rb}
        if not is_strongly_orthogonal(rs, ra, rb):
            fails.append(Failure("cascade-strongly-orthogonal", w))
        disjoint_td = _totally_disjoint_roots(rs, _subsystem(rs, a), _subsystem(rs, b))
        if not (chains[a] & chains[b]) and not disjoint_td:
            fails.append(Failure("disjoint-chains-separate", w))
        common = any(rs.leq(phi, a) and rs.leq(phi, b) for phi in range(rs.n_pos))
        if not common and not disjoint_td:
            fails.append(Failure("no-common-lower-root", w))
    return fails


def product_formula(cb: Context, e: Degree) -> WeylElement:
    """Ordinary product of the cascade reflections, checked against z_e^B."""
    w = identity(cb.rs)
    for a in cascade_of(cb, e):
        w = w * reflection(cb.rs, a)
    assert w == z_d_P(cb, e), f"product formula fails for {e}"
    return w


def inversion_partition(cb: Context, e: Degree, parabolic: Iterable[int] = ()) -> list[Failure]:
    rs = cb.rs
    cas = cascade_of(cb, e)
    z = z_d_P(cb, e)
    rp = CosetContext(rs, parabolic).rp_mask
    fails = []
    for name, sel, strip in (("inversion-partition", cas, 0),
                             ("inversion-partition-relative", [a for a in cas if not rp >> a & 1], rp)):
        union, total = 0, 0
        for a in sel:
            m = reflection(rs, a).inversions & ~strip
            union |= m
            total += m.bit_count()
        target = z.inversions & ~strip
        if union != target or total != target.bit_count():
            fails.append(Failure(name, {"e": e, "parabolic": sorted(parabolic)}))
    return fails


def length_additivity(cb: Context, e: Degree, parabolic: Iterable[int] = ()) -> tuple[tuple[int, int], tuple[int, int]]:
    """(ℓ(z), Σℓ(s_α)) and the relative pair (ℓ(zW_P), Σ_{α∉R_P} ℓ(s_αW_P))."""
    co = CosetContext(cb.rs, parabolic)
    cas = cascade_of(cb, e)
    z = z_d_P(cb, e)
    absolute = (z.length, sum(reflection(cb.rs, a).length for a in cas))
    relative = (co.coset_length(z),
                sum(co.coset_length(reflection(cb.rs, a)) for a in cas if not co.in_rp(a)))
    return absolute, relative


def c1_pairing(rs: RootSystem, e: Degree, roots: Iterable[int] | None = None) -> int:
    """Σ (γ, e) over the given positive roots (all of R^+ by default), e over Δ^vee."""
    total = 0
    for g in range(rs.n_pos) if roots is None else roots:
        c = rs.positive_roots[g]
        total += sum(e[i] * sum(c[k] * rs.cartan[i][k] for k in range(rs.rank))
                     for i in range(rs.rank) if e[i])
    return total


def c1_length_formula(cb: Context, e: Degree) -> tuple[int, int]:
    """(ℓ(z_e^B), (c1(G/B), e) - |B_{R,e}|)."""
    return z_d_P(cb, e).length, c1_pairing(cb.rs, e) - len(cascade_of(cb, e))


def verify_recursive_description(cb: Context, e: Degree) -> list[Failure]:
    """The cascade splits over components; for connected e it is the maximal
    root plus the cascade of what remains."""
    e = tuple(e)
    cas = set(cascade_of(cb, e))
    parts = connected_components(cb, e)
    fails = []
    union: set[int] = set()
    for p in parts:
        union |= set(cascade_of(cb, p, check=False))
    if union != cas:
        fails.append(Failure("components-split", {"e": e}))
    if len(parts) == 1 and any(e):
        top = maximal_roots(cb, e)
        if len(top) != 1:
            fails.append(Failure("connected-unique-max", {"e": e}))
        else:
            rest = sub(e, cb.deg[top[0]])
            if cas != {top[0]} | set(cascade_of(cb, rest, check=False)) or top[0] in cascade_of(cb, rest, check=False):
                fails.append(Failure("connected-recursion", {"e": e}))
    return fails

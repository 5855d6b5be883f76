"""Positivity, admissibility, tangent directions and the certificate inequality.

Everything here starts from a minimal degree d of G/P, its lifting e over the
full flag variety, and the cascade B of e split into the part inside R_P^+ and
the part outside.

>>> from cascade_lab.degree import context
>>> c = certificate(context("A2", {1}), (1,))
>>> (c.lhs, c.td_card, c.dim_moduli)
(1, 1, 5)
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Iterable

from .cascade import c1_pairing, cascade_of
from .degree import Context, Degree, add, context, embed, maximal_roots, z_d_P
from .minimal import Failure, lifting
from .rootsys import is_long, is_strongly_orthogonal, totally_disjoint
from .weyl import CosetContext, reflection

__all__ = [
    "ASSUMPTIONS",
    "Certificate",
    "LiftData",
    "lift_data",
    "sigma",
    "is_P_admissible",
    "tangent_directions",
    "assumption_clauses",
    "assumption_status",
    "c1_X",
    "certificate",
    "verify_positivity",
    "verify_type_a",
    "verify_injection",
    "verify_prep_lemmas",
    "verify_root_membership_lemmas",
    "diagonal_curve_descriptor",
]

ASSUMPTIONS = ("long-roots", "complete-flag", "cosmall-split")


@dataclass(frozen=True)
class LiftData:
    degree: Degree
    lifting: Degree
    inside: tuple[int, ...]   # B ∩ R_P^+
    outside: tuple[int, ...]  # B ∖ R_P^+


def lift_data(ctx: Context, d: Degree) -> LiftData:
    d = tuple(d)
    memo = ctx.cache.setdefault("liftdata", {})
    if d not in memo:
        e = lifting(ctx, d)
        cas = cascade_of(context(ctx.rs.spec), e)
        memo[d] = LiftData(
            d, e,
            tuple(a for a in cas if ctx.coset.in_rp(a)),
            tuple(a for a in cas if not ctx.coset.in_rp(a)),
        )
    return memo[d]


def sigma(ctx: Context, d: Degree) -> int:
    """Σ_{P,d}: sum of (γ, α^vee) over outside cascade roots α and γ in R_P^+."""
    ld = lift_data(ctx, d)
    return sum(ctx.rs.pair[g][a] for a in ld.outside for g in ctx.rp)


def is_P_admissible(ctx: Context, d: Degree) -> bool:
    return sigma(ctx, d) >= 0


def tangent_directions(ctx: Context, d: Degree) -> list[int]:
    """TD_{P,d} as sorted signed root indices (all negative)."""
    rs = ctx.rs
    out = set()
    for a in lift_data(ctx, d).outside:
        alpha = rs.positive_roots[a]
        for g in (None, *ctx.rp):
            v = alpha if g is None else tuple(x + y for x, y in zip(alpha, rs.positive_roots[g]))
            j = rs.find(tuple(-x for x in v))
            if j is not None and not ctx.coset.in_rp(rs.neg(j)):
                out.add(j)
    return sorted(out)


def assumption_clauses(ctx: Context, d: Degree) -> tuple[str, ...]:
    """Every clause of the standing assumption that holds for d, in precedence order."""
    rs = ctx.rs
    outside = lift_data(ctx, d).outside
    held = []
    if all(is_long(rs, rs.positive_roots[a]) for a in outside):
        held.append("long-roots")
    if not ctx.parabolic:
        held.append("complete-flag")
    cosmall = all(a in maximal_roots(ctx, ctx.deg[a]) for a in outside)
    disjoint = all(totally_disjoint(rs, rs.supports[a], rs.supports[b])
                   for a, b in combinations(outside, 2))
    total = ctx.zero
    for a in outside:
        total = add(total, ctx.deg[a])
    if cosmall and disjoint and total == tuple(d):
        held.append("cosmall-split")
    return tuple(held)


def assumption_status(ctx: Context, d: Degree) -> str:
    held = assumption_clauses(ctx, d)
    return held[0] if held else "none"


def c1_X(ctx: Context, d: Degree) -> int:
    """(c1(X), d) through the zero-padded representative, cross-checked with a shifted one."""
    outside = ctx.outside
    rep = embed(ctx, d)
    value = c1_pairing(ctx.rs, rep, outside)
    shifted = tuple(x + (i in ctx.parabolic) for i, x in enumerate(rep))
    assert c1_pairing(ctx.rs, shifted, outside) == value, "c1(X) depends on the representative"
    return value


@dataclass
class Certificate:
    type: str
    parabolic: list[int]
    degree: list[int]
    lifting: list[int]
    cascade_outside: list[list[int]]
    sigma: int
    admissible: bool
    assumption: str
    assumption_mask: int
    c1: int
    length_z: int
    lhs: int
    td_card: int
    inequality_ok: bool
    dim_X: int
    dim_moduli: int
    dim_M2: int
    endpoints: list[str]
    curve_degrees: list[list[int]]
    degenerate: bool
    status: str = field(default="pass")

    def to_dict(self) -> dict:
        return asdict(self)


def certificate(ctx: Context, d: Degree) -> Certificate:
    """Full combinatorial record for (G/P, d).

    ``status`` is ``pass`` when the inequality holds, ``fail`` when it breaks
    under one of the assumption clauses, and ``open-case`` when it breaks with
    no clause available.
    """
    d = tuple(d)
    rs = ctx.rs
    ld = lift_data(ctx, d)
    z = z_d_P(ctx, d)
    c1 = c1_X(ctx, d)
    lhs = c1 - z.length
    td = len(tangent_directions(ctx, d))
    held = assumption_clauses(ctx, d)
    ok = lhs <= td
    s = sigma(ctx, d)
    dim_x = len(ctx.outside)
    curve_degrees = [list(ctx.deg[a]) for a in ld.outside]
    total = ctx.zero
    for a in ld.outside:
        total = add(total, ctx.deg[a])
    assert total == d, "curve degrees do not sum to d"
    return Certificate(
        type=str(rs.spec),
        parabolic=sorted(i + 1 for i in ctx.parabolic),
        degree=list(d),
        lifting=list(ld.lifting),
        cascade_outside=[list(rs.positive_roots[a]) for a in ld.outside],
        sigma=s,
        admissible=s >= 0,
        assumption=held[0] if held else "none",
        assumption_mask=sum(1 << k for k, name in enumerate(ASSUMPTIONS) if name in held),
        c1=c1,
        length_z=z.length,
        lhs=lhs,
        td_card=td,
        inequality_ok=ok,
        dim_X=dim_x,
        dim_moduli=dim_x + c1,
        dim_M2=lhs,
        endpoints=["e", str(z)],
        curve_degrees=curve_degrees,
        degenerate=not any(d),
        status="pass" if ok else ("fail" if held else "open-case"),
    )


def verify_positivity(cb: Context, e: Degree, parabolic: Iterable[int]) -> list[Failure]:
    rs = cb.rs
    co = CosetContext(rs, parabolic)
    cas = cascade_of(cb, e)
    inside = [a for a in cas if co.in_rp(a)]
    outside = [a for a in cas if not co.in_rp(a)]
    rp = rs.roots_in(co.parabolic)
    w = {"e": tuple(e), "parabolic": sorted(co.parabolic)}
    fails = []
    ehat = (0,) * rs.rank
    for a in inside:
        ehat = add(ehat, rs.coroots[a])
    inv = z_d_P(cb, ehat).inversions
    for g in range(rs.n_pos):
        if inv >> g & 1 and any(rs.pair[a][g] < 0 for a in outside):
            fails.append(Failure("positivity", {**w, "gamma": rs.positive_roots[g]}))
    is_max = co.max_rep(z_d_P(cb, e)) == z_d_P(cb, e)
    for g in rp:
        pos = [a for a in outside if rs.pair[a][g] > 0]
        neg = [a for a in outside if rs.pair[a][g] < 0]
        if len(pos) > 1:
            fails.append(Failure("positivity-unique", {**w, "gamma": rs.positive_roots[g]}))
        if is_max and neg and not pos:
            fails.append(Failure("positivity-partner", {**w, "gamma": rs.positive_roots[g]}))
    return fails


def verify_type_a(cb: Context, e: Degree, parabolic: Iterable[int]) -> list[Failure]:
    rs = cb.rs
    if rs.spec.series != "A":
        raise ValueError("the type A statements need a root system of type A")
    co = CosetContext(rs, parabolic)
    z = z_d_P(cb, e)
    if co.max_rep(z) != z:
        raise ValueError("z_e^B must be the maximal representative of its coset")
    outside = [a for a in cascade_of(cb, e) if not co.in_rp(a)]
    fails = []
    for g in rs.roots_in(co.parabolic):
        w = {"e": tuple(e), "parabolic": sorted(co.parabolic), "gamma": rs.positive_roots[g]}
        if sum(rs.pair[a][g] < 0 for a in outside) > 1:
            fails.append(Failure("type-a-negative", w))
        if sum(rs.pair[g][a] for a in outside) not in (0, 1):
            fails.append(Failure("type-a-sum", w))
    return fails


def _minus_one_pairs(ctx: Context, d: Degree) -> list[tuple[int, int]]:
    return [(a, g) for a in lift_data(ctx, d).outside for g in ctx.rp if ctx.rs.pair[g][a] == -1]


def verify_injection(ctx: Context, d: Degree) -> list[Failure]:
    rs = ctx.rs
    ld = lift_data(ctx, d)
    td = set(tangent_directions(ctx, d))
    forbidden = {rs.neg(a) for a in ld.outside}
    images = []
    for a, g in _minus_one_pairs(ctx, d):
        j = rs.find(tuple(-x - y for x, y in zip(rs.positive_roots[a], rs.positive_roots[g])))
        images.append(j)
    fails = []
    w = {"d": tuple(d)}
    if any(j is None or j not in td or j in forbidden for j in images):
        fails.append(Failure("injection-image", w))
    if len(set(images)) != len(images):
        fails.append(Failure("injection-injective", w))
    return fails


def verify_prep_lemmas(ctx: Context, d: Degree) -> list[Failure]:
    rs = ctx.rs
    d = tuple(d)
    ld = lift_data(ctx, d)
    e = ld.lifting
    z = z_d_P(ctx, d)
    c1_gb = c1_pairing(rs, e)
    c1 = c1_X(ctx, d)
    s = sigma(ctx, d)
    rp_mask = ctx.coset.rp_mask
    n_b = len(ld.inside) + len(ld.outside)
    inv = {a: reflection(rs, a).inversions for a in ld.inside + ld.outside}

    def disjoint_card(masks: list[int]) -> int | None:
        union = 0
        for m in masks:
            if union & m:
                return None
            union |= m
        return union.bit_count()

    fails = []
    w = {"d": d, "lifting": e}
    if z.length != c1_gb - n_b - len(ctx.rp):
        fails.append(Failure("length-via-c1", w))
    inner = disjoint_card([inv[a] for a in ld.inside])
    if inner is None or c1_gb - c1 != s + inner + len(ld.inside):
        fails.append(Failure("c1-drop-inside", w))
    if s >= 0 and c1_gb - c1 < 0:
        fails.append(Failure("c1-drop-admissible", w))
    outer = disjoint_card([inv[a] & rp_mask for a in ld.outside])
    if outer is None or c1 - z.length != -s + outer + len(ld.outside):
        fails.append(Failure("c1-minus-length", w))
    double = -sum(rs.pair[g][a] for a in ld.outside for g in ctx.rp if not inv[a] >> g & 1)
    if c1 - z.length != double + len(ld.outside):
        fails.append(Failure("c1-minus-length-pairs", w))
    held = assumption_clauses(ctx, d)
    if held:
        if "long-roots" in held:
            for a in ld.outside:
                for g in range(rs.n_pos):
                    if g != a and rs.pair[g][a] not in (-1, 0, 1):
                        fails.append(Failure("long-pairing", {**w, "alpha": rs.positive_roots[a]}))
        if double != len(_minus_one_pairs(ctx, d)):
            fails.append(Failure("minus-one-pairs", w))
    return fails


def verify_root_membership_lemmas(ctx: Context, d: Degree) -> list[Failure]:
    """For γ in R_P^+, both -γ and z^{-1}(-γ) lie in R^+ ∪ R_P; z^{-1} = w_P z w_P."""
    rs = ctx.rs
    z = z_d_P(ctx, d)
    zi = z.inverse()
    fails = []
    for g in ctx.rp:
        for j in (rs.neg(g), zi(rs.neg(g))):
            if j >= rs.n_pos and not ctx.coset.in_rp(rs.neg(j)):
                fails.append(Failure("root-membership", {"d": tuple(d), "gamma": rs.positive_roots[g]}))
    if zi != ctx.w_P * z * ctx.w_P:
        fails.append(Failure("z-inverse", {"d": tuple(d)}))
    return fails


def diagonal_curve_descriptor(ctx: Context, d: Degree) -> dict:
    rs = ctx.rs
    ld = lift_data(ctx, d)
    for a, b in combinations(ld.outside, 2):
        assert is_strongly_orthogonal(rs, rs.positive_roots[a], rs.positive_roots[b])
    return {
        "components": [list(rs.positive_roots[a]) for a in ld.outside],
        "degrees": [list(ctx.deg[a]) for a in ld.outside],
        "endpoints": ["e", str(z_d_P(ctx, d))],
        "degenerate": not any(d),
    }

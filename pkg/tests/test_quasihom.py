import json

import pytest

from cascade_lab import minimal as mn
from cascade_lab import quasihom as qh
from cascade_lab.degree import context
from cascade_lab.rootsys import build_root_system

from oracles import all_subsets


def maximal_parabolic(n, k):
    """0-based Δ_P for the maximal parabolic obtained by removing node k (1-based)."""
    return set(range(n)) - {k - 1}


@pytest.mark.parametrize("name,k,value", [
    ("A1", 1, 2), ("A3", 1, 4), ("A4", 2, 5), ("A5", 3, 6),  # Gr(k, n): n
    ("D4", 1, 6), ("D5", 1, 8), ("B3", 1, 5),                 # quadrics
    ("C3", 3, 4), ("C4", 4, 5),                               # Lagrangian Grassmannians
])
def test_c1_of_line_class(name, k, value):
    n = int(name[1:])
    ctx = context(name, maximal_parabolic(n, k))
    assert qh.c1_X(ctx, (1,)) == value


@pytest.mark.parametrize("name,p,d,values", [
    ("A2", {1}, (1,), (1, 1, 5, 2)),
    ("A3", {0}, (2, 1), (3, 3, 13, 5)),
    ("A2", set(), (1, 1), (1, 1, 7, 3)),
])
def test_certificate_examples(name, p, d, values):
    c = qh.certificate(context(name, p), d)
    assert (c.lhs, c.td_card, c.dim_moduli, c.dim_X) == values
    assert c.inequality_ok and c.status == "pass"
    assert c.dim_M2 == c.lhs
    assert json.loads(json.dumps(c.to_dict())) == c.to_dict()


def test_projective_plane_assumptions():
    ctx = context("A2", {1})
    assert qh.assumption_clauses(ctx, (1,)) == ("long-roots", "cosmall-split")
    assert qh.assumption_status(ctx, (1,)) == "long-roots"
    c = qh.certificate(ctx, (1,))
    assert c.assumption_mask == 0b101


def test_g2_full_flag_uses_complete_flag_clause():
    ctx = context("G2")
    for e in mn.minimal_degree_set(ctx):
        assert "complete-flag" in qh.assumption_clauses(ctx, e)
        assert qh.certificate(ctx, e).status == "pass"


def test_d4_non_admissible():
    ctx = context("D4", {1})
    dx = mn.compute_d_X(ctx)
    assert dx == (2, 2, 2)
    assert qh.sigma(ctx, dx) == -2
    assert not qh.is_P_admissible(ctx, dx)


def test_d4_positivity_partner():
    cb = context("D4")
    rs = cb.rs
    e = (2, 2, 2, 2)
    assert qh.verify_positivity(cb, e, {1}) == []
    b2 = rs.simple[1]
    cascade = [rs.root_index(r) for r in [(1, 2, 1, 1), (1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]]
    neg = [a for a in cascade if rs.pair[a][b2] < 0]
    pos = [a for a in cascade if rs.pair[a][b2] > 0]
    assert len(neg) == 3 and [rs.positive_roots[a] for a in pos] == [(1, 2, 1, 1)]
    with pytest.raises(ValueError):
        qh.verify_type_a(cb, e, {1})


def test_a3_positivity_example():
    cb = context("A3")
    rs = cb.rs
    b1 = rs.simple[0]
    assert rs.pair[rs.root_index((1, 1, 1))][b1] == 1
    assert rs.pair[rs.root_index((0, 1, 0))][b1] == -1
    assert qh.verify_positivity(cb, (1, 2, 1), {0}) == []
    assert qh.verify_type_a(cb, (1, 2, 1), {0}) == []


def test_type_a_requires_maximal_representative():
    with pytest.raises(ValueError):
        qh.verify_type_a(context("A2"), (1, 0), {1})


@pytest.mark.parametrize("n", range(1, 5))
def test_type_a_exhaustive(n):
    cb = context(f"A{n}")
    for p in all_subsets(n):
        ctx = context(f"A{n}", p)
        for d in mn.minimal_degree_set(ctx):
            e = mn.lifting(ctx, d)
            assert qh.verify_type_a(cb, e, p) == []
            assert qh.verify_positivity(cb, e, p) == []
            assert qh.is_P_admissible(ctx, d)


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "D4"])
def test_prep_lemmas_and_inequality(name):
    rank = int(name[1:])
    for p in all_subsets(rank):
        ctx = context(name, p)
        for d in mn.minimal_degree_set(ctx):
            assert qh.verify_prep_lemmas(ctx, d) == []
            assert qh.verify_injection(ctx, d) == []
            assert qh.verify_root_membership_lemmas(ctx, d) == []
            c = qh.certificate(ctx, d)
            assert sum(map(sum, c.curve_degrees)) == sum(d)
            if c.assumption != "none":
                assert c.inequality_ok
            td = qh.tangent_directions(ctx, d)
            assert td == sorted(td) and all(j >= ctx.rs.n_pos for j in td)


def test_simply_laced_and_full_flag_have_no_open_cases():
    for name in ["A3", "D4"]:
        rank = int(name[1:])
        for p in all_subsets(rank):
            ctx = context(name, p)
            assert all(qh.assumption_status(ctx, d) != "none" for d in mn.minimal_degree_set(ctx))
    for name in ["B3", "C3", "G2"]:
        ctx = context(name)
        assert all(qh.assumption_status(ctx, d) != "none" for d in mn.minimal_degree_set(ctx))


def test_diagonal_curve_descriptor():
    ctx = context("A3", {0})
    desc = qh.diagonal_curve_descriptor(ctx, (2, 1))
    assert desc["endpoints"] == ["e", "s1*s2*s3*s1*s2"]
    assert not desc["degenerate"]
    assert sorted(map(tuple, desc["degrees"])) == [(1, 0), (1, 1)]
    assert qh.diagonal_curve_descriptor(ctx, (0, 0))["degenerate"]


def test_lift_data_split():
    ctx = context("A3", {0})
    ld = qh.lift_data(ctx, (2, 1))
    rs = build_root_system("A3")
    assert ld.lifting == (1, 2, 1)
    assert [rs.positive_roots[a] for a in ld.outside] == [(0, 1, 0), (1, 1, 1)]
    assert ld.inside == ()

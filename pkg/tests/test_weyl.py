from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from cascade_lab.rootsys import build_root_system
from cascade_lab.weyl import (
    CosetContext,
    GroupTooLarge,
    apply,
    bruhat_leq,
    element_support,
    enumerate_group,
    from_word,
    group_order,
    hecke_product,
    hecke_times_reflection,
    identity,
    longest_element,
    reflection,
    simple_reflection,
    weyl_cap,
)

SMALL = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"]


def subword_products(w):
    """Every element obtained from a subword of a reduced word of w."""
    rs, word = w.rs, w.reduced_word()
    out = {identity(rs)}
    for letter in word:
        out |= {u.times_simple(letter) for u in out}
    return out


def demazure(rs, word):
    w = identity(rs)
    for i in word:
        if not w.has_descent(i):
            w = w.times_simple(i)
    return w


@pytest.mark.parametrize("name", SMALL + ["A4", "B4", "D4", "F4"])
def test_group_order_matches_enumeration(name):
    rs = build_root_system(name)
    assert sum(1 for _ in enumerate_group(rs)) == group_order(rs)


def test_cap_is_enforced(monkeypatch):
    rs = build_root_system("A3")
    monkeypatch.setenv("CASCADE_LAB_WCAP", "10")
    with pytest.raises(GroupTooLarge):
        next(enumerate_group(rs))
    with pytest.raises(GroupTooLarge):
        next(enumerate_group(build_root_system("E8"), cap=60_000))


@pytest.mark.parametrize("name", SMALL + ["D4", "E6"])
def test_longest_element(name):
    rs = build_root_system(name)
    w0 = longest_element(rs)
    assert w0.length == rs.n_pos
    assert w0 * w0 == identity(rs)
    assert all(w0(j) >= rs.n_pos for j in range(rs.n_pos))


def test_braid_relations_and_string_form():
    rs = build_root_system("B2")
    s1, s2 = simple_reflection(rs, 0), simple_reflection(rs, 1)
    assert s1 * s2 * s1 * s2 == s2 * s1 * s2 * s1
    assert s1 * s2 * s1 != s2 * s1 * s2
    assert str(identity(rs)) == "e"
    assert str(s1 * s2) == "s1*s2"


@pytest.mark.parametrize("name", SMALL)
def test_reduced_words_and_inverse(name):
    rs = build_root_system(name)
    for w in enumerate_group(rs):
        word = w.reduced_word()
        assert len(word) == w.length
        assert from_word(rs, word) == w
        assert w * w.inverse() == identity(rs)
        assert w.inverse().length == w.length
        assert element_support(w) == set(word)


@pytest.mark.parametrize("name", ["A3", "B3", "G2"])
def test_bruhat_against_subword_oracle(name):
    rs = build_root_system(name)
    group = list(enumerate_group(rs))
    for v in group:
        below = subword_products(v)
        for u in group:
            assert bruhat_leq(u, v) == (u in below), (str(u), str(v))


@pytest.mark.parametrize("name", ["A3", "B3", "G2"])
def test_hecke_product_is_word_independent_and_associative(name):
    rs = build_root_system(name)
    group = list(enumerate_group(rs))
    for u in group[::3]:
        for v in group[::2]:
            p = hecke_product(u, v)
            assert p == demazure(rs, u.reduced_word() + v.reduced_word())
            assert bruhat_leq(u, p) and bruhat_leq(v, p)
            assert p.length <= u.length + v.length
            if (u * v).length == u.length + v.length:
                assert p == u * v


@given(st.sampled_from(SMALL), st.data())
def test_hecke_associativity(name, data):
    rs = build_root_system(name)
    words = st.lists(st.integers(0, rs.rank - 1), max_size=8)
    a, b, c = (demazure(rs, data.draw(words)) for _ in range(3))
    assert hecke_product(hecke_product(a, b), c) == hecke_product(a, hecke_product(b, c))


@pytest.mark.parametrize("name", SMALL)
def test_reflections(name):
    rs = build_root_system(name)
    for a, root in enumerate(rs.positive_roots):
        s = reflection(rs, a)
        assert s * s == identity(rs)
        assert s.length % 2 == 1
        assert apply(s, root) == tuple(-x for x in root)
        assert reflection(rs, root) == s == reflection(rs, a + rs.n_pos)
        u = simple_reflection(rs, 0)
        assert hecke_times_reflection(u, a) == hecke_product(u, s)


@pytest.mark.parametrize("name", ["A3", "B3", "G2"])
def test_coset_representatives(name):
    rs = build_root_system(name)
    for k in range(rs.rank + 1):
        for p in combinations(range(rs.rank), k):
            co = CosetContext(rs, p)
            assert co.w_P.length == len(rs.roots_in(p))
            for w in enumerate_group(rs):
                lo, hi = co.min_rep(w), co.max_rep(w)
                assert lo.length == co.coset_length(w)
                assert hi.length == lo.length + co.w_P.length
                assert hi == lo * co.w_P
                assert not any(lo.has_descent(i) for i in p)


def test_coset_context_rejects_bad_subset():
    with pytest.raises(ValueError):
        CosetContext(build_root_system("A2"), {5})


def test_default_cap(monkeypatch):
    monkeypatch.delenv("CASCADE_LAB_WCAP", raising=False)
    assert weyl_cap() == 60_000

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cascade_lab.rootsys import (
    DynkinSpec,
    UsageError,
    build_root_system,
    connected_components_of_subset,
    fundamental_weight,
    is_locally_high,
    is_long,
    is_strongly_orthogonal,
    orthogonal_simple_set,
    pairing,
    support,
    totally_disjoint,
)

COUNTS = {
    "A1": 1, "A4": 10, "B2": 4, "B5": 25, "C3": 9, "C4": 16, "D4": 12, "D6": 30,
    "E6": 36, "E7": 63, "E8": 120, "F4": 24, "G2": 6,
}

HIGHEST = {
    "A3": (1, 1, 1),
    "B3": (1, 2, 2),
    "C3": (2, 2, 1),
    "D5": (1, 2, 2, 1, 1),
    "E6": (1, 2, 2, 3, 2, 1),
    "E7": (2, 2, 3, 4, 3, 2, 1),
    "E8": (2, 3, 4, 6, 5, 4, 3, 2),
    "F4": (2, 3, 4, 2),
    "G2": (3, 2),
}

TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "F4", "G2", "E6"]


@pytest.mark.parametrize("name,count", COUNTS.items())
def test_positive_root_count(name, count):
    assert build_root_system(name).n_pos == count


@pytest.mark.parametrize("name,top", HIGHEST.items())
def test_highest_root(name, top):
    rs = build_root_system(name)
    assert rs.positive_roots[-1] == top


def test_b2_cartan_and_lengths():
    rs = build_root_system("B2")
    assert [list(r) for r in rs.cartan] == [[2, -1], [-2, 2]]
    assert is_long(rs, (1, 0)) and not is_long(rs, (0, 1))


def test_g2_beta1_is_short():
    rs = build_root_system("G2")
    assert not is_long(rs, (1, 0)) and is_long(rs, (0, 1)) and is_long(rs, (3, 2))


@pytest.mark.parametrize("text", ["A0", "B1", "C1", "D2", "E5", "E9", "F3", "G3", "X2", "", "A-1", "AA2"])
def test_bad_types_are_usage_errors(text):
    with pytest.raises(UsageError):
        DynkinSpec.parse(text)


def test_parse_is_lenient_about_case_and_space():
    assert DynkinSpec.parse(" d4 ") == DynkinSpec("D", 4)
    assert str(DynkinSpec.parse("e6")) == "E6"


def test_root_indices_and_negatives():
    rs = build_root_system("B3")
    n = rs.n_pos
    for j, r in enumerate(rs.positive_roots):
        assert rs.root_index(r) == j
        assert rs.neg(j) == j + n
        assert rs.coeffs(j + n) == tuple(-x for x in r)
    heights = [sum(r) for r in rs.positive_roots]
    assert heights == sorted(heights)
    assert [rs.positive_roots[rs.simple[i]] for i in range(3)] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


@pytest.mark.parametrize("name", TYPES)
def test_reflection_closure_and_integrality(name):
    rs = build_root_system(name)
    roots = set(rs.positive_roots) | {tuple(-x for x in r) for r in rs.positive_roots}
    for a in rs.positive_roots:
        for b in rs.positive_roots:
            k = pairing(rs, b, a)
            assert isinstance(k, int) and -3 <= k <= 3
            assert tuple(x - k * y for x, y in zip(b, a)) in roots


@pytest.mark.parametrize("name", TYPES)
def test_fundamental_weights_are_dual_to_coroots(name):
    rs = build_root_system(name)
    for i in range(rs.rank):
        w = fundamental_weight(rs, i)
        for j in range(rs.rank):
            unit = tuple(int(k == j) for k in range(rs.rank))
            assert pairing(rs, w, unit) == int(i == j)


def test_pairing_can_be_fractional():
    rs = build_root_system("A2")
    assert pairing(rs, (Fraction(1, 3), 0), (1, 0)) == Fraction(2, 3)


def test_strong_orthogonality_b2():
    rs = build_root_system("B2")
    # the two short roots are orthogonal but their sum is a root
    assert rs.inner((0, 1), (1, 1)) == 0
    assert not is_strongly_orthogonal(rs, (0, 1), (1, 1))
    # the two long roots are strongly orthogonal
    assert is_strongly_orthogonal(rs, (1, 0), (1, 2))


def test_d4_cascade_roots_are_pairwise_strongly_orthogonal():
    rs = build_root_system("D4")
    roots = [(1, 2, 1, 1), (1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    for i, a in enumerate(roots):
        for b in roots[i + 1:]:
            assert is_strongly_orthogonal(rs, a, b)


def test_support_and_orthogonal_set():
    rs = build_root_system("D4")
    assert support((1, 2, 1, 1)) == {0, 1, 2, 3}
    assert orthogonal_simple_set(rs, (1, 2, 1, 1)) == {0, 2, 3}
    with pytest.raises(ValueError):
        support((0, -1, 0, 0))


def test_locally_high():
    rs = build_root_system("A3")
    assert is_locally_high(rs, (1, 1, 1))
    assert is_locally_high(rs, (0, 1, 0))
    rs = build_root_system("B2")
    assert is_locally_high(rs, (1, 2)) and not is_locally_high(rs, (1, 1))


def test_components_and_total_disjointness():
    rs = build_root_system("D5")
    assert connected_components_of_subset(rs, {0, 2, 3, 4}) == [frozenset({0}), frozenset({2, 3, 4})]
    assert totally_disjoint(rs, {0}, {2})
    assert not totally_disjoint(rs, {0}, {1})
    assert not totally_disjoint(rs, {2}, {2})


@given(st.sampled_from(TYPES), st.data())
def test_gram_is_symmetric_and_cartan_consistent(name, data):
    rs = build_root_system(name)
    i = data.draw(st.integers(0, rs.rank - 1))
    j = data.draw(st.integers(0, rs.rank - 1))
    assert rs.gram[i][j] == rs.gram[j][i]
    assert rs.cartan[i][j] == 2 * rs.gram[i][j] / rs.gram[i][i]

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coisotropy.rootsys import (
    DominantWeight,
    RootSystemError,
    SimpleType,
    borel_dim,
    build_root_system,
    classify_rep_field,
    enumerate_dominant_weights,
    lemma_search_bound,
    paper_family_types,
    weyl_dim,
)


def rs(fam, r):
    return build_root_system(SimpleType(fam, r))


def w(*coeffs):
    return DominantWeight(tuple(coeffs))


def fund(r, i):
    return DominantWeight.fundamental(r, i)


def test_simple_type_validation():
    with pytest.raises(RootSystemError):
        SimpleType("D", 2)
    with pytest.raises(RootSystemError):
        SimpleType("E", 5)
    with pytest.raises(RootSystemError):
        SimpleType("X", 3)
    with pytest.raises(RootSystemError):
        SimpleType("F", 3)
    assert str(SimpleType("G", 2)) == "G2"
    assert SimpleType("C", 3).algebra_name == "sp(3)"


@pytest.mark.parametrize(
    "fam,r,npos",
    [
        ("A", 1, 1),
        ("A", 5, 15),
        ("B", 2, 4),
        ("B", 4, 16),
        ("C", 3, 9),
        ("D", 3, 6),
        ("D", 4, 12),
        ("D", 6, 30),
        ("G", 2, 6),
        ("F", 4, 24),
        ("E", 6, 36),
        ("E", 7, 63),
        ("E", 8, 120),
    ],
)
def test_positive_root_counts(fam, r, npos):
    system = rs(fam, r)
    assert system.n_positive_roots == npos
    # |positive roots| = borel dim - rank
    assert system.n_positive_roots == borel_dim(system) - r


def test_rho_pairings_are_one_on_simple_roots():
    for fam, r in [("A", 3), ("B", 3), ("C", 4), ("D", 4), ("G", 2), ("F", 4)]:
        system = rs(fam, r)
        for i, root in enumerate(system.positive_roots):
            if sum(root) == 1:
                assert system.rho_pairings[i] == 1


def test_weyl_dim_defining_modules():
    assert weyl_dim(rs("A", 1), w(1)) == 2
    assert weyl_dim(rs("A", 3), fund(3, 0)) == 4
    assert weyl_dim(rs("B", 3), fund(3, 0)) == 7
    for m in range(2, 13):
        assert weyl_dim(rs("C", m), fund(m, 0)) == 2 * m


def test_weyl_dim_minimal_exceptional_degrees():
    minima = {("G", 2): 7, ("F", 4): 26, ("E", 6): 27, ("E", 7): 56, ("E", 8): 248}
    for (fam, r), value in minima.items():
        system = rs(fam, r)
        assert min(weyl_dim(system, fund(r, i)) for i in range(r)) == value


def test_weyl_dim_rank_three_orthogonal():
    d3 = rs("D", 3)
    assert weyl_dim(d3, w(2, 0, 0)) == 20
    assert weyl_dim(d3, w(1, 1, 0)) == 20
    assert weyl_dim(d3, w(0, 1, 1)) == 15
    assert weyl_dim(d3, w(0, 2, 0)) == 10
    assert weyl_dim(d3, w(0, 0, 2)) == 10
    # the two spin weights are four dimensional
    assert weyl_dim(d3, w(0, 1, 0)) == 4
    assert weyl_dim(d3, w(0, 0, 1)) == 4


def test_weyl_dim_adjoint_family():
    for m in range(3, 13):
        system = rs("A", m - 1)
        adjoint = DominantWeight(
            tuple(1 if i in (0, m - 2) else 0 for i in range(m - 1))
        )
        assert weyl_dim(system, adjoint) == m * m - 1


def test_weyl_dim_zero_weight_is_one():
    for fam, r in [("A", 4), ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("E", 6)]:
        system = rs(fam, r)
        assert weyl_dim(system, DominantWeight.zero(r)) == 1


def test_weyl_dim_highest_root_is_adjoint():
    for fam, r in [("A", 5), ("B", 4), ("C", 4), ("D", 5), ("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8)]:
        system = rs(fam, r)
        assert weyl_dim(system, system.highest_root_as_weight()) == system.dim_g


@pytest.mark.parametrize(
    "fam,r,expected",
    [("A", 3, 9), ("C", 3, 12), ("G", 2, 8), ("E", 6, 42), ("E", 7, 70), ("F", 4, 28), ("E", 8, 128)],
)
def test_borel_dims(fam, r, expected):
    assert borel_dim(rs(fam, r)) == expected


def test_duality_table():
    a3 = rs("A", 3)
    assert a3.dual_weight(w(1, 0, 0)) == w(0, 0, 1)
    assert a3.dual_weight(w(1, 2, 0)) == w(0, 2, 1)
    d5 = rs("D", 5)
    assert d5.dual_weight(w(0, 0, 0, 1, 0)) == w(0, 0, 0, 0, 1)
    d4 = rs("D", 4)
    assert d4.dual_weight(w(0, 0, 1, 0)) == w(0, 0, 1, 0)
    e6 = rs("E", 6)
    assert e6.dual_weight(w(1, 0, 0, 0, 0, 0)) == w(0, 0, 0, 0, 0, 1)
    for fam, r in [("B", 3), ("C", 4), ("G", 2), ("F", 4), ("E", 7)]:
        system = rs(fam, r)
        x = DominantWeight(tuple(range(1, r + 1)))
        assert system.dual_weight(x) == x


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_duality_preserves_dimension(data):
    fam, r = data.draw(
        st.sampled_from([("A", 4), ("D", 5), ("E", 6), ("B", 3), ("C", 3)])
    )
    system = rs(fam, r)
    coeffs = tuple(
        data.draw(st.integers(min_value=0, max_value=2)) for _ in range(r)
    )
    x = DominantWeight(coeffs)
    assert weyl_dim(system, x) == weyl_dim(system, system.dual_weight(x))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_dimension_monotone_under_coefficient_increase(data):
    fam, r = data.draw(st.sampled_from([("A", 3), ("B", 3), ("G", 2), ("D", 4)]))
    system = rs(fam, r)
    lo = tuple(data.draw(st.integers(min_value=0, max_value=2)) for _ in range(r))
    hi = tuple(c + data.draw(st.integers(min_value=0, max_value=2)) for c in lo)
    dlo = weyl_dim(system, DominantWeight(lo))
    dhi = weyl_dim(system, DominantWeight(hi))
    assert dhi >= dlo
    if hi != lo:
        assert dhi > dlo


def test_enumerate_small_rank_one():
    got = dict(enumerate_dominant_weights(rs("A", 1), 3))
    assert got == {w(1): 2, w(2): 3}


def test_enumerate_seven_exceptional():
    got = dict(enumerate_dominant_weights(rs("G", 2), 7))
    assert got == {w(1, 0): 7}


def test_enumerate_matches_box_search():
    # independent oracle: direct scan of a coefficient box
    system = rs("D", 3)
    bound = 10
    expected = {}
    for coeffs in itertools.product(range(4), repeat=3):
        if not any(coeffs):
            continue
        d = weyl_dim(system, DominantWeight(coeffs))
        if d <= bound:
            expected[DominantWeight(coeffs)] = d
    got = dict(enumerate_dominant_weights(system, bound))
    assert got == expected
    assert got[w(0, 2, 0)] == 10 and got[w(0, 0, 2)] == 10


def test_enumerate_rejects_bad_bound():
    with pytest.raises(RootSystemError):
        enumerate_dominant_weights(rs("A", 1), 0)


@pytest.mark.parametrize(
    "fam,r,coeffs,expected",
    [
        ("A", 1, (1,), "quaternionic"),
        ("A", 1, (2,), "real"),
        ("A", 2, (1, 0), "complex"),
        ("B", 2, (0, 1), "quaternionic"),
        ("B", 3, (0, 0, 1), "real"),
        ("D", 4, (1, 0, 0, 0), "real"),
        ("D", 5, (0, 0, 0, 0, 1), "complex"),
        ("C", 3, (1, 0, 0), "quaternionic"),
        ("G", 2, (1, 0), "real"),
        ("E", 6, (1, 0, 0, 0, 0, 0), "complex"),
        ("E", 7, (0, 0, 0, 0, 0, 0, 1), "quaternionic"),
    ],
)
def test_classify_rep_field(fam, r, coeffs, expected):
    assert classify_rep_field(rs(fam, r), w(*coeffs)) == expected


def test_paper_family_types_basis():
    types = paper_family_types(6)
    names = {str(t) for t in types}
    assert "A1" in names and "B2" in names and "C3" in names and "D3" in names
    assert "C2" not in names and "B1" not in names and "D2" not in names
    assert {"G2", "F4", "E6", "E7", "E8"} <= names


def test_lemma_search_bound_certificate():
    for fam, r in [("A", 3), ("B", 4), ("E", 8)]:
        system = rs(fam, r)
        bound = lemma_search_bound(system)
        b = borel_dim(system)
        d0 = bound + 1
        assert d0 * (d0 - 1) > 2 * (1 + b)

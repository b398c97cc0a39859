from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from precsymp.cohomology import is_coboundary
from precsymp.csym import (CsymStatus, DegreeTuple, Finiteness, build_b_cross_sphere, build_x_cross_cpn,
                           c_invariant_lower, csym_polarized, finiteness, is_c_symplectic, lemma21_validate,
                           prop25_sufficient, thm12_criterion, thm12_witness, thm26_necessary,
                           witness_exponents, x_cross_cpn_power)
from precsymp.differential import Model, check_d_squared, formal_dimension
from precsymp.errors import PreconditionError, ResourceError

odd_degrees = st.integers(1, 12).map(lambda k: 2 * k + 1)
tuples = st.lists(odd_degrees, min_size=1, max_size=7)


def crosswise(k):
    k = sorted(k)
    n = len(k)
    return [k[i] + k[n - 2 - i] for i in range((n - 1) // 2)]


@given(tuples)
def test_criterion_definition(k):
    top = max(k)
    want = len(k) % 2 == 1 and all(s < top for s in crosswise(k))
    assert bool(thm12_criterion(k)) == want
    weak = len(k) % 2 == 1 and all(s <= top + 1 for s in crosswise(k))
    assert bool(thm26_necessary(k)) == weak
    if want:
        assert weak


@given(tuples)
def test_violated_pair_is_reported(k):
    res = thm12_criterion(k)
    if not res and len(k) % 2:
        a, b = res.violated_pair
        assert a + b >= max(k)


def test_degree_tuple_validation():
    assert DegreeTuple([7, 3, 5]) == (3, 5, 7)
    for bad in ([2, 3], [1, 3, 5], [4]):
        with pytest.raises(ValueError):
            DegreeTuple(bad)


def test_witness_shape():
    m = thm12_witness([3, 3, 7])
    assert check_d_squared(m).ok
    assert formal_dimension(m) == 12
    assert witness_exponents([3, 3, 7]) == ((1,), 4)
    with pytest.raises(PreconditionError):
        thm12_witness([3, 5])


@settings(max_examples=15)
@given(st.lists(odd_degrees, min_size=3, max_size=5).filter(lambda k: len(k) % 2 == 1 and thm12_criterion(k)))
def test_witness_is_csymplectic(k):
    m = thm12_witness(k)
    assert finiteness(m).status is Finiteness.Finite
    v = is_c_symplectic(m)
    assert v.status is CsymStatus.CSymplectic
    assert v.witness.verify(m)
    rep = lemma21_validate(m)
    assert rep.ok
    assert prop25_sufficient(m)


def test_finiteness_verdicts():
    fin = Model.from_lists([("t", 2), ("v", 3)], {"v": "t^2"})
    inf = Model.from_lists([("t", 2), ("v", 3)])
    assert finiteness(fin).status is Finiteness.Finite
    assert finiteness(inf).status is Finiteness.Infinite
    assert finiteness(Model.from_lists([("a", 3), ("b", 5)])).status is Finiteness.Finite


def test_csym_single_class():
    cp2 = Model.from_lists([("x", 2), ("y", 5)], {"y": "x^3"})
    v = is_c_symplectic(cp2)
    assert v.status is CsymStatus.CSymplectic and v.witness.power == 2
    odd = Model.from_lists([("a", 3)])
    assert is_c_symplectic(odd).status is CsymStatus.NotCSymplectic
    with pytest.raises(PreconditionError):
        is_c_symplectic(Model.from_lists([("t", 2)]))


S2S2 = Model.from_lists([("x", 2), ("y", 2), ("p", 3), ("q", 3)], {"p": "x^2", "q": "y^2"})
# H^2 of rank 2 with every square and the product killed: no symplectic class
DEGENERATE = Model.from_lists([("x", 2), ("y", 2), ("p", 3), ("q", 3), ("r", 3), ("a", 3)],
                             {"p": "x^2", "q": "y^2", "r": "x*y"})


def test_sampling_and_polarization_agree_on_positive_case():
    assert is_c_symplectic(S2S2).status is CsymStatus.CSymplectic
    v = csym_polarized(S2S2)
    assert v.status is CsymStatus.CSymplectic and v.witness.verify(S2S2)


def test_sampling_never_claims_negative():
    v = is_c_symplectic(DEGENERATE)
    assert v.status is CsymStatus.Undetermined
    assert csym_polarized(DEGENERATE).status is CsymStatus.NotCSymplectic


def test_sampling_can_need_later_points():
    # (x + y)^2 is a boundary, so the first sample point misses
    m = Model.from_lists([("x", 2), ("y", 2), ("p", 3), ("q", 3)], {"p": "x^2 + 2*x*y + y^2", "q": "x*y"})
    assert is_c_symplectic(m, samples=(1,)).status is CsymStatus.Undetermined
    v = is_c_symplectic(m, samples=(1, 2))
    assert v.status is CsymStatus.CSymplectic and v.witness.verify(m)
    assert csym_polarized(m).status is CsymStatus.CSymplectic


def test_polarization_limit():
    with pytest.raises(ResourceError):
        csym_polarized(S2S2, limit=1)


def test_b_cross_sphere():
    cp1 = Model.from_lists([("x", 2), ("y", 3)], {"y": "x^2"})
    m = build_b_cross_sphere(cp1, "x", 5)
    assert check_d_squared(m).ok
    assert formal_dimension(m) == 2 + 5 - 1
    assert finiteness(m).status is Finiteness.Finite
    assert csym_polarized(m).status is CsymStatus.CSymplectic
    with pytest.raises(PreconditionError):
        build_b_cross_sphere(cp1, "x", 4)
    with pytest.raises(PreconditionError):
        build_b_cross_sphere(cp1, "x^2", 5)


def test_x_cross_cpn_small_case():
    m = build_x_cross_cpn([3, 3, 3], 3)
    assert check_d_squared(m).ok
    assert finiteness(m).status is Finiteness.Finite
    a = x_cross_cpn_power([3, 3, 3], 3)
    assert formal_dimension(m) == 2 * a
    assert not is_coboundary(m, m.parse(f"t^{a}")).exact
    with pytest.raises(PreconditionError):
        build_x_cross_cpn([3, 3], 3)


def test_c_invariant_bound_skips_invalid():
    x = Model.from_lists([("a", 3), ("b", 3)])
    good = Model.from_lists([("t", 2), ("a", 3), ("b", 3)], {"b": "t^2"}, name="good")
    bad = Model.from_lists([("t", 2), ("a", 3), ("b", 3)], name="bad")
    res = c_invariant_lower(x, [bad, good])
    assert res.best == "good"
    assert res.value == Fraction(2 * 2, 6 - 1)
    assert any("bad: skipped" in d for d in res.diagnostics)

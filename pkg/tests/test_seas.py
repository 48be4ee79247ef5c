from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from conftest import matches_printed, random_design, regular_fraction
from oracles import patterns_brute, spectrum_brute
from seaskit import seas
from seaskit.alias_core import aggregate, aggregate_per_column, full_spectrum_wht
from seaskit.design_io import DesignMatrix
from seaskit.errors import ComparisonError, ValidationError
from seaskit.seas import (
    compare_patterns,
    design_patterns,
    effect_patterns,
    format_fixed,
    rank_columns,
    round_half_even,
)


def patterns_of(x):
    return design_patterns(aggregate(full_spectrum_wht(x)))


def test_half_fraction_patterns():
    p = patterns_of(regular_fraction(3, [(0, 1, 2)]))
    for which in "MAP":
        assert p.pattern(which) == (1, 2, 3, Fraction(41, 10))


def test_full_factorial_patterns_are_integers():
    x = DesignMatrix(np.array([[1, 1], [1, -1], [-1, 1], [-1, -1]]))
    p = patterns_of(x)
    assert p.m_pattern == p.a_pattern == p.p_pattern == (1, 2)


def test_sib_design_patterns_start(sib_spectrum):
    p = design_patterns(aggregate(sib_spectrum))
    assert [format_fixed(v, 4) for v in p.m_pattern[:4]] == ["1.0000", "2.0429", "3.0857", "4.1000"]
    assert p.entry("P", 2) == Fraction(21, 10)  # every pair aliased
    assert p.ks == range(1, 24)


@settings(max_examples=40, deadline=None)
@given(hnp.arrays(np.int8, st.tuples(st.integers(2, 9), st.integers(1, 6)),
                  elements=st.sampled_from([-1, 1])))
def test_patterns_match_definitions(entries):
    p = patterns_of(DesignMatrix(entries))
    mp, ap, pp, _ = patterns_brute(entries)
    assert list(p.m_pattern) == mp
    assert list(p.a_pattern) == ap
    assert list(p.p_pattern) == pp


@settings(max_examples=40, deadline=None)
@given(hnp.arrays(np.int8, st.tuples(st.integers(2, 9), st.integers(1, 6)),
                  elements=st.sampled_from([-1, 1])))
def test_entry_bounds(entries):
    p = patterns_of(DesignMatrix(entries))
    for which in "MAP":
        for k, v in zip(p.ks, p.pattern(which)):
            assert k <= v <= k + Fraction(1, 10)
    # the mean squared index never exceeds the squared maximum
    for k in p.ks:
        assert p.entry("A", k) - k <= 10 * (p.entry("M", k) - k) ** 2


def test_invariant_under_symmetries(rng):
    for _ in range(10):
        x = random_design(rng, 10, 6)
        base = patterns_of(x)
        e = x.entries
        assert patterns_of(DesignMatrix(e[:, rng.permutation(6)])) == base
        assert patterns_of(DesignMatrix(e[rng.permutation(10)])) == base
        flip = e.copy()
        flip[:, 2] *= -1
        assert patterns_of(DesignMatrix(flip)) == base
        assert patterns_of(DesignMatrix(np.vstack([e, e]))) == base


def test_compare_patterns_first_difference():
    assert compare_patterns((1, 2, 3), (1, 2, 4)) == seas.PatternComparison("better", 3)
    assert compare_patterns((1, 3), (1, 2), start_k=2) == seas.PatternComparison("worse", 3)
    assert compare_patterns((1, 2), (1, 2)).relation == "equal"
    with pytest.raises(ComparisonError):
        compare_patterns((1,), (1, 2))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.integers(0, 2), min_size=3, max_size=3), min_size=3, max_size=3))
def test_compare_is_total_preorder(pats):
    a, b, c = (tuple(p) for p in pats)
    rel = lambda p, q: compare_patterns(p, q).relation
    assert rel(a, a) == "equal"
    flip = {"better": "worse", "worse": "better", "equal": "equal"}
    assert rel(b, a) == flip[rel(a, b)]
    if rel(a, b) != "worse" and rel(b, c) != "worse":
        assert rel(a, c) != "worse"


def test_unknown_pattern_name():
    with pytest.raises(ValidationError):
        patterns_of(regular_fraction(2, [(0, 1)])).pattern("Q")


def test_effect_patterns_sib_column_one(sib_column_aggs, golden):
    e = effect_patterns(sib_column_aggs[0])
    printed = golden["effect_columns_D_SIB"]
    assert e.column == 0 and e.start_k == 2
    for which in "MAP":
        for v, text in zip(e.pattern(which)[:3], printed[which]["1"]):
            assert matches_printed(v, text)


def test_effect_max_is_consistent(rng):
    x = random_design(rng, 12, 7)
    spec = full_spectrum_wht(x)
    design = design_patterns(aggregate(spec))
    effects = seas.all_effect_patterns(aggregate_per_column(spec))
    for k in range(2, 8):
        assert max(e.entry("M", k) for e in effects) == design.entry("M", k)


def test_effect_p_denominators(rng):
    x = random_design(rng, 10, 6)
    col = aggregate_per_column(full_spectrum_wht(x))[3]
    default = effect_patterns(col)
    strict = effect_patterns(col, strict_text=True)
    for k in range(2, 7):
        cnt = col.count_nonzero(k)
        assert default.entry("P", k) == k + Fraction(cnt, comb(5, k - 1)) / 10
        assert strict.entry("P", k) == k + Fraction(cnt, comb(6, k)) / 10
    assert default.m_pattern == strict.m_pattern


def test_strict_text_a_uses_plain_average(rng):
    x = random_design(rng, 8, 5)
    col = aggregate_per_column(full_spectrum_wht(x))[1]
    ref = spectrum_brute(x.entries)
    for k in range(2, 6):
        rhos = [Fraction(v, 8) for c, v in ref.items() if c >> 1 & 1 and bin(c).count("1") == k and v]
        plain = sum(rhos) / len(rhos) if rhos else 0
        squared = sum(r * r for r in rhos) / len(rhos) if rhos else 0
        assert effect_patterns(col, strict_text=True).entry("A", k) == k + plain / 10
        assert effect_patterns(col).entry("A", k) == k + squared / 10


def test_identical_columns_reported_as_ties():
    base = regular_fraction(3, []).entries
    x = DesignMatrix(np.column_stack([base, base[:, 0]]))
    effects = seas.all_effect_patterns(aggregate_per_column(full_spectrum_wht(x)))
    assert effects[0].m_pattern == effects[3].m_pattern == (Fraction(21, 10), 3, 4)
    ranking = rank_columns(effects, "M")
    assert ranking.order == (1, 2, 0, 3)
    assert ranking.ties == ((1, 2), (0, 3))


def test_rank_columns_orders_lexicographically():
    e = [seas.EffectSeasPatterns((3, 5), (0, 0), (0, 0), column=0),
         seas.EffectSeasPatterns((3, 4), (0, 0), (0, 0), column=1),
         seas.EffectSeasPatterns((2, 9), (0, 0), (0, 0), column=2)]
    r = rank_columns(e, "m")
    assert r.order == (2, 1, 0)
    assert r.one_based() == [3, 2, 1]
    assert r.ties == ()


def test_rank_columns_display_vs_exact():
    a = seas.EffectSeasPatterns((Fraction(20000001, 10**7),), (0,), (0,), column=0)
    b = seas.EffectSeasPatterns((Fraction(2),), (0,), (0,), column=1)
    assert rank_columns([a, b], "M").ties == ((0, 1),)
    assert rank_columns([a, b], "M", places=None).order == (1, 0)


@pytest.mark.parametrize("value,places,text", [
    (Fraction(1, 8), 2, "0.12"),
    (Fraction(3, 8), 2, "0.38"),
    (Fraction(41, 10), 4, "4.1000"),
    (Fraction(-1, 3), 3, "-0.333"),
    (Fraction(7), 0, "7"),
])
def test_format_fixed(value, places, text):
    assert format_fixed(value, places) == text


def test_round_half_even_exact():
    assert round_half_even(Fraction(25, 1000), 2) == Fraction(2, 100)
    assert round_half_even(Fraction(35, 1000), 2) == Fraction(4, 100)


def test_pattern_to_json():
    out = seas.pattern_to_json((Fraction(21, 10),), start_k=2)
    assert out == [{"k": 2, "value_exact": "21/10", "value_display": "2.1000"}]

from collections import Counter
from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from conftest import golden_design, random_balanced, random_design, regular_fraction
from oracles import patterns_brute, spectrum_brute
from seaskit import classic
from seaskit.alias_core import aggregate, full_spectrum_enum, full_spectrum_wht
from seaskit.design_io import DesignMatrix
from seaskit.errors import UnavailableRangeError, ValidationError


def agg_of(x, k_max=None):
    return aggregate(full_spectrum_wht(x, k_max=k_max))


@pytest.mark.parametrize("base,gens,wlp,gr", [
    (2, [(0, 1)], (0, 0, 1), 3),                    # 2^(3-1), C = AB
    (3, [(0, 1, 2)], (0, 0, 0, 1), 4),              # 2^(4-1), D = ABC
    (3, [(0, 1), (0, 2)], (0, 0, 2, 1, 0), 3),      # 2^(5-2), D = AB, E = AC
])
def test_regular_fractions(base, gens, wlp, gr):
    a = agg_of(regular_fraction(base, gens))
    assert classic.gwlp(a) == wlp
    res = classic.generalized_resolution(a)
    assert res.value == gr and res.r == gr and not res.orthogonal


def test_regular_gwlp_matches_brute():
    x = regular_fraction(3, [(0, 1), (0, 2)])
    assert list(classic.gwlp(agg_of(x))) == patterns_brute(x.entries)[3]


def test_full_factorial_is_orthogonal():
    a = agg_of(regular_fraction(3, []))
    res = classic.generalized_resolution(a)
    assert res.orthogonal and res.value == 4
    assert classic.gwlp(a) == (0, 0, 0)
    assert classic.es2(a) == 0


def test_truncated_resolution_needs_more_range():
    a = agg_of(regular_fraction(4, [(0, 1, 2, 3)]), k_max=3)
    with pytest.raises(UnavailableRangeError):
        classic.generalized_resolution(a)


def test_es2_needs_two_factors():
    with pytest.raises(ValidationError):
        classic.es2(agg_of(DesignMatrix(np.array([[1], [-1]]))))


@pytest.mark.parametrize("name,es2,gr", [
    ("D_1", Fraction(2004, 253), Fraction(16, 7)),
    ("D_SIB", Fraction(1876, 253), Fraction(18, 7)),
])
def test_golden_es2_gr(name, es2, gr):
    a = agg_of(golden_design(name), k_max=3)
    assert classic.es2(a) == es2
    assert classic.generalized_resolution(a).value == gr


def test_gwlp_first_terms_d1():
    a = agg_of(golden_design("D_1"), k_max=3)
    gw = classic.gwlp(a)
    assert gw[0] == 0
    assert gw[2] == Fraction(992, 7)  # n^2 A_3 is an integer
    assert (gw[2] * 196).denominator == 1


def test_cfv_rows(rng):
    x = random_design(rng, 9, 5)
    table = classic.cfv(full_spectrum_enum(x))
    ref = spectrum_brute(x.entries)
    assert len(table) == 5
    for k, row in enumerate(table, start=1):
        assert len(row) == 10
        assert sum(row) == comb(5, k)
        counts = Counter(v for c, v in ref.items() if bin(c).count("1") == k)
        assert list(row) == [counts.get(9 - i, 0) for i in range(10)]


def test_cfv_d1_pairs():
    row = classic.cfv(full_spectrum_wht(golden_design("D_1"), k_max=2))[1]
    ref = Counter(v for c, v in spectrum_brute(golden_design("D_1").entries, 2).items()
                  if bin(c).count("1") == 2)
    assert {14 - i: f for i, f in enumerate(row) if f} == dict(ref)
    assert set(ref) == {2, 6, 10}
    assert sum(row) == 253


def test_classic_summary_bundle():
    s = classic.classic_summary(agg_of(regular_fraction(2, [(0, 1)])))
    assert s.es2 == 0 and s.gr.value == 3 and s.gwlp == (0, 0, 1)
    assert s.cfv[2] == (1, 0, 0, 0, 0)


def test_theorems_on_golden():
    rep = classic.verify_theorems(agg_of(golden_design("D_2")))
    assert rep.all_hold
    assert rep.summary_line() == "Theorems 1–3: OK"
    assert {c.name for c in rep.checks} == {"resolution", "gwlp", "es2"}


def test_theorems_orthogonal_case():
    rep = classic.verify_theorems(agg_of(regular_fraction(3, [])))
    assert rep.all_hold
    res = [c for c in rep.checks if c.name == "resolution"]
    assert res[0].lhs == 4


def test_theorem_report_failure_line():
    bad = classic.IdentityCheck("gwlp", 3, Fraction(1), Fraction(2))
    rep = classic.TheoremReport((bad,))
    assert not rep.all_hold
    assert rep.failures() == [bad]
    assert "FAILED" in rep.summary_line()


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 8).map(lambda h: 2 * h), st.integers(2, 9), st.integers(0, 2**32 - 1))
def test_theorems_hold_on_random_balanced(n, m, seed):
    x = random_balanced(np.random.default_rng(seed), n, m)
    assert classic.verify_theorems(agg_of(x)).all_hold


@settings(max_examples=60, deadline=None)
@given(hnp.arrays(np.int8, st.tuples(st.integers(2, 10), st.integers(2, 7)),
                  elements=st.sampled_from([-1, 1])))
def test_theorems_hold_on_any_design(entries):
    assert classic.verify_theorems(agg_of(DesignMatrix(entries))).all_hold

"""M-, A- and P-patterns at design and single-column level.

Entry k of every pattern is ``k + fraction / 10`` where the fraction lies in
[0, 1]; the integer part therefore always reads off k.  Values are exact
:class:`~fractions.Fraction` objects.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from seaskit.errors import ComparisonError, ValidationError

PATTERN_NAMES = ("M", "A", "P")
_TENTH = Fraction(1, 10)


@dataclass(frozen=True)
class SeasPatterns:
    """Patterns for k = start_k, start_k + 1, ...; ``entry(k)`` indexes by k."""

    m_pattern: tuple
    a_pattern: tuple
    p_pattern: tuple
    start_k: int = 1

    def pattern(self, which):
        which = which.upper()
        if which not in PATTERN_NAMES:
            raise ValidationError(f"pattern must be one of {PATTERN_NAMES}, got {which!r}")
        return {"M": self.m_pattern, "A": self.a_pattern, "P": self.p_pattern}[which]

    def entry(self, which, k):
        return self.pattern(which)[k - self.start_k]

    @property
    def ks(self):
        return range(self.start_k, self.start_k + len(self.m_pattern))


@dataclass(frozen=True)
class EffectSeasPatterns(SeasPatterns):
    """Patterns of one column (0-based ``column``), k counted including it."""

    column: int = 0
    start_k: int = 2


@dataclass(frozen=True)
class PatternComparison:
    relation: str  # "better" | "worse" | "equal", from the first argument's side
    first_differing_k: int = None


@dataclass(frozen=True)
class ColumnRanking:
    """Columns (0-based) in ascending pattern order; ``ties`` lists groups of
    columns whose patterns are exactly equal."""

    which: str
    order: tuple
    ties: tuple = ()

    def one_based(self):
        return [c + 1 for c in self.order]


def _ks(agg, start_k, k_stop):
    stop = agg.k_max if k_stop is None else k_stop
    return range(start_k, stop + 1)


def m_pattern(agg, start_k=1, k_stop=None):
    n = agg.n_runs
    return tuple(k + Fraction(agg.max_j(k), n) * _TENTH for k in _ks(agg, start_k, k_stop))


def _mean_sq(agg, k):
    cnt = agg.count_nonzero(k)
    if not cnt:
        return Fraction(0)
    return Fraction(agg.sumsq_j(k), cnt * agg.n_runs**2)


def _mean_abs(agg, k):
    cnt = agg.count_nonzero(k)
    if not cnt:
        return Fraction(0)
    row = agg.hist[k]
    total = sum(j * int(row[j]) for j in range(1, row.shape[0]))
    return Fraction(total, cnt * agg.n_runs)


def a_pattern(agg, start_k=1, k_stop=None):
    return tuple(k + _mean_sq(agg, k) * _TENTH for k in _ks(agg, start_k, k_stop))


def p_pattern(agg, start_k=1, k_stop=None):
    return tuple(
        k + Fraction(agg.count_nonzero(k), agg.full_count(k)) * _TENTH
        for k in _ks(agg, start_k, k_stop)
    )


def design_patterns(agg, k_stop=None):
    return SeasPatterns(
        m_pattern(agg, 1, k_stop), a_pattern(agg, 1, k_stop), p_pattern(agg, 1, k_stop)
    )


def effect_patterns(col_agg, strict_text=False, k_stop=None):
    """Patterns of one column from its per-column aggregates, k = 2..k_max.

    By default the P entry divides by C(m-1, k-1), the number of size-k
    subsets that contain the column, and the A entry averages squared
    indices; this is what reproduces the published per-column tables.
    ``strict_text=True`` divides by C(m, k) and averages plain indices.
    """
    ks = _ks(col_agg, 2, k_stop)
    n, m = col_agg.n_runs, col_agg.n_factors
    mp = tuple(k + Fraction(col_agg.max_j(k), n) * _TENTH for k in ks)
    if strict_text:
        ap = tuple(k + _mean_abs(col_agg, k) * _TENTH for k in ks)
        pp = tuple(
            k + Fraction(col_agg.count_nonzero(k), comb(m, k)) * _TENTH for k in ks
        )
    else:
        ap = tuple(k + _mean_sq(col_agg, k) * _TENTH for k in ks)
        pp = tuple(
            k + Fraction(col_agg.count_nonzero(k), col_agg.full_count(k)) * _TENTH
            for k in ks
        )
    return EffectSeasPatterns(mp, ap, pp, column=col_agg.column, start_k=2)


def all_effect_patterns(col_aggs, strict_text=False, k_stop=None):
    return [effect_patterns(c, strict_text, k_stop) for c in col_aggs]


def compare_patterns(p, q, start_k=1):
    """Lexicographic comparison; lower entries are better."""
    if len(p) != len(q):
        raise ComparisonError(f"pattern lengths differ: {len(p)} vs {len(q)}")
    for offset, (a, b) in enumerate(zip(p, q)):
        if a != b:
            return PatternComparison("better" if a < b else "worse", start_k + offset)
    return PatternComparison("equal")


DISPLAY_PLACES = 4


def rank_columns(effects, which, places=DISPLAY_PLACES):
    """Order columns by ascending pattern, compared lexicographically.

    Entries are compared as displayed (rounded half-to-even to ``places``
    decimals) so the order agrees with printed tables; ``places=None``
    compares exact values.  Ties keep column order and are listed in
    ``ties``.
    """

    def key(e):
        pat = e.pattern(which)
        if places is None:
            return tuple(pat)
        return tuple(round_half_even(v, places) for v in pat)

    keyed = sorted((key(e), e.column) for e in effects)
    order = tuple(col for _, col in keyed)
    ties = []
    group = [keyed[0][1]] if keyed else []
    for (prev, _), (cur, col) in zip(keyed, keyed[1:]):
        if cur == prev:
            group.append(col)
        else:
            if len(group) > 1:
                ties.append(tuple(group))
            group = [col]
    if len(group) > 1:
        ties.append(tuple(group))
    return ColumnRanking(which.upper(), order, tuple(ties))


# --- display -----------------------------------------------------------------


def round_half_even(value, places):
    """Exact half-to-even rounding of a Fraction to ``places`` decimals."""
    scale = 10**places
    return Fraction(round(Fraction(value) * scale), scale)


def format_fixed(value, places):
    """Decimal string with exactly ``places`` digits after the point."""
    scale = 10**places
    q = round(Fraction(value) * scale)
    sign = "-" if q < 0 else ""
    q = abs(q)
    if places == 0:
        return f"{sign}{q}"
    whole, frac = divmod(q, scale)
    return f"{sign}{whole}.{frac:0{places}d}"


def fraction_text(value):
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def pattern_to_json(pattern, start_k=1, places=4):
    return [
        {"k": start_k + i, "value_exact": fraction_text(v), "value_display": format_fixed(v, places)}
        for i, v in enumerate(pattern)
    ]

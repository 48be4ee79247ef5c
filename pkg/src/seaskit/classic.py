"""E(s^2), generalized resolution, GWLP and CFV, plus their identities with
the pattern summaries."""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from seaskit import alias_core, seas
from seaskit.errors import UnavailableRangeError, ValidationError


@dataclass(frozen=True)
class Resolution:
    """``value = r + 1 - max rho_r``; ``r`` is None when no size up to m
    aliases, in which case ``value == m + 1``."""

    value: Fraction
    r: int = None

    @property
    def orthogonal(self):
        return self.r is None


@dataclass(frozen=True)
class ClassicSummary:
    es2: Fraction
    gr: Resolution
    gwlp: tuple
    cfv: tuple


def es2(agg):
    """Mean squared inner product over all column pairs."""
    m = agg.n_factors
    if m < 2:
        raise ValidationError("E(s^2) needs at least two factors")
    return Fraction(agg.sumsq_j(2), comb(m, 2))


def generalized_resolution(agg):
    for k in range(1, agg.k_max + 1):
        j = agg.max_j(k)
        if j:
            return Resolution(k + 1 - Fraction(j, agg.n_runs), k)
    if agg.k_max < agg.n_factors:
        raise UnavailableRangeError(
            f"no aliasing up to k_max={agg.k_max}; resolution needs a larger k_max"
        )
    return Resolution(Fraction(agg.n_factors + 1))


def gwlp(agg):
    """A_k = sum over size-k subsets of rho_k(S)^2, for k = 1..k_max."""
    n2 = agg.n_runs**2
    return tuple(Fraction(agg.sumsq_j(k), n2) for k in range(1, agg.k_max + 1))


def cfv(spectrum):
    """Rows k = 1..k_max; cell j counts size-k subsets with |J| = n + 1 - j.

    Each row has n + 1 cells so |J| = 0 is included.  Cells whose J has the
    wrong parity for n are structurally zero.
    """
    return cfv_from_aggregates(alias_core.aggregate(spectrum))


def cfv_from_aggregates(agg):
    return tuple(tuple(agg.cfv_row(k)) for k in range(1, agg.k_max + 1))


def classic_summary(agg):
    return ClassicSummary(
        es2(agg) if agg.n_factors >= 2 else None,
        generalized_resolution(agg),
        gwlp(agg),
        cfv_from_aggregates(agg),
    )


# --- identities ------------------------------------------------------------


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    k: int
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self):
        return self.lhs == self.rhs


@dataclass(frozen=True)
class TheoremReport:
    checks: tuple

    @property
    def all_hold(self):
        return all(c.holds for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.holds]

    def summary_line(self):
        if self.all_hold:
            return "Theorems 1–3: OK"
        return f"Theorems 1–3: FAILED ({len(self.failures())} identities)"


def verify_theorems(agg):
    """Evaluate both sides of the three pattern identities exactly.

    * resolution: GR = r + 1 - 10 (e^M_r - r), r the first k with e^M_k != k
    * GWLP: A_k = 100 C(m,k) (e^A_k - k)(e^P_k - k) for every available k
    * E(s^2) = 100 n^2 (e^A_2 - 2)(e^P_2 - 2)

    A failing identity signals a bug, never a design property.
    """
    n, m = agg.n_runs, agg.n_factors
    pats = seas.design_patterns(agg)
    checks = []

    first = next((k for k in pats.ks if pats.entry("M", k) != k), None)
    if first is not None:
        gr = generalized_resolution(agg).value
        checks.append(
            IdentityCheck("resolution", first, gr, first + 1 - 10 * (pats.entry("M", first) - first))
        )
    elif agg.k_max == m:
        checks.append(
            IdentityCheck("resolution", m, generalized_resolution(agg).value, Fraction(m + 1))
        )

    for k, a_k in zip(pats.ks, gwlp(agg)):
        rhs = 100 * comb(m, k) * (pats.entry("A", k) - k) * (pats.entry("P", k) - k)
        checks.append(IdentityCheck("gwlp", k, a_k, rhs))

    if m >= 2 and agg.k_max >= 2:
        rhs = 100 * n * n * (pats.entry("A", 2) - 2) * (pats.entry("P", 2) - 2)
        checks.append(IdentityCheck("es2", 2, es2(agg), rhs))
    return TheoremReport(tuple(checks))

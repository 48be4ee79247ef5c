import json
from pathlib import Path

import numpy as np
import pytest

from seaskit import _accel, alias_core
from seaskit.design_io import DesignMatrix, DesignVector, decode_design_vector

GOLDEN = json.loads((Path(__file__).parent / "golden" / "published_tables.json").read_text())

ACCEPTANCE_LINES = []


def random_balanced(rng, n, m):
    """Each column an independent random arrangement of n/2 (+1) and n/2 (-1)."""
    base = np.array([1] * (n // 2) + [-1] * (n - n // 2), dtype=np.int8)
    return DesignMatrix(np.column_stack([rng.permutation(base) for _ in range(m)]))


def random_design(rng, n, m):
    return DesignMatrix(rng.choice(np.array([-1, 1], dtype=np.int8), size=(n, m)))


def full_factorial(k):
    runs = np.array(np.meshgrid(*[[1, -1]] * k, indexing="ij")).reshape(k, -1).T
    return runs.astype(np.int8)


def regular_fraction(base_factors, generators):
    """Full factorial in the base factors plus product columns.

    ``generators`` lists tuples of base-column indices, e.g. (0, 1) for AB.
    """
    base = full_factorial(base_factors)
    extra = [np.prod(base[:, list(g)], axis=1) for g in generators]
    return DesignMatrix(np.column_stack([base, *extra]).astype(np.int8))


def matches_printed(value, printed, places=None):
    """True when ``value`` rounds (half to even) to the printed decimal string.

    ``places`` is the documented precision; printed strings that drop
    trailing zeros (``6.1``) are read as zero-padded to it.
    """
    from seaskit.seas import format_fixed

    whole, _, frac = printed.partition(".")
    shown = len(frac)
    places = shown if places is None else max(places, shown)
    return format_fixed(value, places) == f"{whole}.{frac.ljust(places, '0')}"


def golden_design(name):
    d = GOLDEN["designs"][name]
    return decode_design_vector(DesignVector(d["n_runs"], tuple(d["vector"])))


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    if request.param == "numba" and not _accel.HAVE_NUMBA:
        pytest.skip("numba not installed")
    monkeypatch.setattr(_accel, "USE_NUMBA", request.param == "numba")
    return request.param


@pytest.fixture(scope="session")
def golden():
    return GOLDEN


@pytest.fixture(scope="session")
def sib():
    return golden_design("D_SIB")


@pytest.fixture(scope="session")
def sib_spectrum(sib):
    return alias_core.full_spectrum_wht(sib)


@pytest.fixture(scope="session")
def sib_column_aggs(sib_spectrum):
    return alias_core.aggregate_per_column(sib_spectrum)


@pytest.fixture
def rng():
    return np.random.default_rng(20260101)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


_REPORTS = {}


@pytest.fixture(scope="session")
def builtin_report():
    """Cached full evaluation (with per-column patterns) of a shipped design."""
    from seaskit import report

    def get(name):
        if name not in _REPORTS:
            _REPORTS[name] = report.load_builtin(name, effects=True)
        return _REPORTS[name]

    return get

"""J-characteristic spectra and per-size aliasing aggregates.

All values are kept as integers: ``|J(S)| = n * rho_k(S)``.  Division by n,
n^2 and binomial counts happens in :mod:`seaskit.seas` and
:mod:`seaskit.classic` with :class:`fractions.Fraction`.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from seaskit import kernels
from seaskit.errors import (
    InconsistencyError,
    ResourceError,
    UnavailableRangeError,
    ValidationError,
)

MAX_WHT_FACTORS = 26
ENUM_PREFERRED_KMAX = 6
ENGINES = ("auto", "wht", "enum", "cross-check")


@dataclass(frozen=True, eq=False)
class JSpectrum:
    """|J(S)| for nonempty column subsets S of size <= k_max.

    Dense spectra (``codes is None``) are indexed directly by subset code and
    include the empty set at index 0.  Sparse spectra list ``codes`` and
    ``j_abs`` side by side, in the order the enumeration engine visited them.
    """

    n_runs: int
    n_factors: int
    k_max: int
    j_abs: np.ndarray
    codes: np.ndarray = None

    @property
    def dense(self):
        return self.codes is None

    @property
    def sizes(self):
        if self.dense:
            return kernels.subset_sizes(self.n_factors)
        return kernels.popcounts(self.codes)

    def subset_codes(self):
        if self.dense:
            return np.arange(self.j_abs.shape[0], dtype=np.int64)
        return self.codes

    def as_dict(self):
        """``{subset_code: |J|}`` over nonempty subsets within k_max."""
        codes = self.subset_codes()
        sizes = self.sizes
        keep = (sizes > 0) & (sizes <= self.k_max)
        return dict(zip(codes[keep].tolist(), self.j_abs[keep].tolist()))

    def __len__(self):
        if self.dense:
            sizes = self.sizes
            return int(np.count_nonzero((sizes > 0) & (sizes <= self.k_max)))
        return int(self.codes.shape[0])

    def j_of(self, subset):
        """|J| of a subset given as an iterable of 0-based column indices."""
        code = subset_code(subset, self.n_factors)
        k = bin(code).count("1")
        if k > self.k_max:
            raise UnavailableRangeError(f"subset size {k} exceeds k_max={self.k_max}")
        if self.dense:
            return int(self.j_abs[code])
        hit = np.flatnonzero(self.codes == code)
        return int(self.j_abs[hit[0]])

    def to_csv(self):
        """CSV dump: subset_code (hex), size, j_abs; sorted by subset code."""
        codes = self.subset_codes()
        sizes = self.sizes
        keep = (sizes > 0) & (sizes <= self.k_max)
        order = np.argsort(codes[keep], kind="stable")
        lines = ["subset_code,size,j_abs"]
        for c, k, j in zip(
            codes[keep][order].tolist(),
            sizes[keep][order].tolist(),
            self.j_abs[keep][order].tolist(),
        ):
            lines.append(f"{c:#x},{k},{j}")
        return "\n".join(lines) + "\n"


def subset_code(subset, m):
    subset = list(subset)
    if not subset:
        raise ValidationError("subset must be nonempty")
    code = 0
    for j in subset:
        if not 0 <= j < m:
            raise ValidationError(f"column index {j} out of range for {m} factors")
        if code >> j & 1:
            raise ValidationError(f"column index {j} repeated in subset")
        code |= 1 << j
    return code


def aliasing_index(x, subset):
    """rho_k(S) = |sum_i prod_{j in S} x_ij| / n, as an exact fraction."""
    cols = list(subset)
    subset_code(cols, x.n_factors)
    prod = np.prod(x.entries[:, cols].astype(np.int64), axis=1)
    return Fraction(abs(int(prod.sum())), x.n_runs)


def _check_kmax(k_max, m):
    if k_max is None:
        return m
    k_max = int(k_max)
    if k_max < 1:
        raise ValidationError(f"k_max must be at least 1, got {k_max}")
    return min(k_max, m)


def full_spectrum_wht(x, k_max=None, max_factors=MAX_WHT_FACTORS):
    """Spectrum via the run-code histogram and an integer Walsh-Hadamard butterfly."""
    m = x.n_factors
    if m > max_factors:
        raise ResourceError(
            f"{m} factors exceeds the transform cap of {max_factors} "
            "(2^m table); use the enumeration engine or set k_max"
        )
    k_max = _check_kmax(k_max, m)
    if x.n_runs >= 2**31:
        raise ResourceError("run count must be below 2^31")
    hist = np.bincount(x.run_codes, minlength=1 << m).astype(np.int32)
    kernels.wht_inplace(hist)
    np.abs(hist, out=hist)
    return JSpectrum(x.n_runs, m, k_max, hist)


def _count_subsets(m, k_max):
    return sum(comb(m, k) for k in range(1, k_max + 1))


def full_spectrum_enum(x, k_max=None):
    """Spectrum via depth-first subset enumeration (the oracle engine)."""
    m = x.n_factors
    k_max = _check_kmax(k_max, m)
    total = _count_subsets(m, k_max)
    if total > 1 << 31:
        raise ResourceError(f"{total} subsets to enumerate; lower k_max")
    codes, js = kernels.enumerate_subsets(x.columns, k_max, total)
    return JSpectrum(x.n_runs, m, k_max, js, codes)


def choose_engine(m, k_max=None):
    """The engine "auto" resolves to."""
    if k_max is not None and k_max <= ENUM_PREFERRED_KMAX and k_max < m:
        return "enum"
    if m <= MAX_WHT_FACTORS:
        return "wht"
    return "enum"


def compute_spectrum(x, k_max=None, engine="auto"):
    if engine not in ENGINES:
        raise ValidationError(f"unknown engine {engine!r}; choose from {ENGINES}")
    if engine == "auto":
        engine = choose_engine(x.n_factors, k_max)
    if engine == "wht":
        return full_spectrum_wht(x, k_max)
    if engine == "enum":
        return full_spectrum_enum(x, k_max)
    a = full_spectrum_wht(x, k_max)
    b = full_spectrum_enum(x, k_max)
    if not spectra_equal(a, b):
        raise InconsistencyError("transform and enumeration engines disagree")
    return a


def spectra_equal(a, b):
    """Exact equality of two spectra over every subset both cover."""
    if (a.n_runs, a.n_factors, a.k_max) != (b.n_runs, b.n_factors, b.k_max):
        return False

    def canon(s):
        codes = s.subset_codes()
        sizes = s.sizes
        keep = (sizes > 0) & (sizes <= s.k_max)
        c, j = codes[keep], s.j_abs[keep]
        order = np.argsort(c, kind="stable")
        return c[order], j[order]

    ca, ja = canon(a)
    cb, jb = canon(b)
    return np.array_equal(ca, cb) and np.array_equal(ja, jb)


@dataclass(frozen=True, eq=False)
class AliasAggregates:
    """Per-size summaries of |J| drawn from a (size, |J|) histogram.

    ``hist[k, J]`` counts subsets of size k with |J(S)| = J.  When ``column``
    is set, only subsets containing that column are counted.
    """

    n_runs: int
    n_factors: int
    k_max: int
    hist: np.ndarray
    column: int = None

    def _row(self, k):
        if not 1 <= k <= self.n_factors:
            raise UnavailableRangeError(f"size {k} outside 1..{self.n_factors}")
        if k > self.k_max:
            raise UnavailableRangeError(f"size {k} beyond computed k_max={self.k_max}")
        return self.hist[k]

    def available(self, k):
        return 1 <= k <= self.k_max

    def max_j(self, k):
        nz = np.flatnonzero(self._row(k)[1:])
        return int(nz[-1]) + 1 if nz.size else 0

    def sumsq_j(self, k):
        row = self._row(k)
        j = np.arange(row.shape[0], dtype=object)
        return int((row.astype(object) * j * j).sum())

    def count_nonzero(self, k):
        return int(self._row(k)[1:].sum())

    def full_count(self, k):
        if self.column is None:
            return comb(self.n_factors, k)
        return comb(self.n_factors - 1, k - 1)

    def cfv_row(self, k):
        """Counts for |J| = n, n-1, ..., 0."""
        return [int(c) for c in self._row(k)[::-1]]


def aggregate(spectrum):
    hist = kernels.size_histogram(
        spectrum.j_abs, spectrum.sizes, spectrum.n_runs, spectrum.k_max
    )
    return AliasAggregates(spectrum.n_runs, spectrum.n_factors, spectrum.k_max, hist)


def aggregate_per_column(spectrum):
    m, n = spectrum.n_factors, spectrum.n_runs
    hists = kernels.column_histograms(
        spectrum.codes, spectrum.j_abs, spectrum.sizes, m, n, spectrum.k_max
    )
    return [
        AliasAggregates(n, m, spectrum.k_max, hists[col], column=col) for col in range(m)
    ]

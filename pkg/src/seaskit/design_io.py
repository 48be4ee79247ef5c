"""Two-level design matrices: parsing, design-vector codes, balance."""

import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from seaskit.errors import (
    EncodingOverflowError,
    ParseError,
    ShapeError,
    ValidationError,
)

MAX_FACTORS = 62  # run codes are packed into int64

_SPLIT = re.compile(r"[\s,]+")


@dataclass(frozen=True, eq=False)
class DesignMatrix:
    """An n x m matrix of -1/+1 entries.

    ``run_codes[i]`` packs run ``i``: bit ``j`` is set iff ``entries[i, j] == -1``,
    so the product of the columns in subset ``S`` at run ``i`` is
    ``(-1) ** popcount(run_codes[i] & S)``.
    """

    entries: np.ndarray
    run_codes: np.ndarray = field(init=False)

    def __post_init__(self):
        x = np.array(self.entries, dtype=np.int8, copy=True)
        if x.ndim != 2:
            raise ValidationError("design matrix must be two-dimensional")
        n, m = x.shape
        if n < 2:
            raise ValidationError(f"need at least 2 runs, got {n}")
        if m < 1:
            raise ValidationError("need at least 1 factor")
        if m > MAX_FACTORS:
            raise ValidationError(f"at most {MAX_FACTORS} factors supported, got {m}")
        bad = np.argwhere((x != 1) & (x != -1))
        if bad.size:
            i, j = bad[0]
            raise ValidationError(
                f"entry at run {i + 1}, factor {j + 1} is {self.entries[i][j]!r}, not -1/+1"
            )
        x.flags.writeable = False
        object.__setattr__(self, "entries", x)
        object.__setattr__(self, "run_codes", _run_codes(x))

    @property
    def n_runs(self):
        return self.entries.shape[0]

    @property
    def n_factors(self):
        return self.entries.shape[1]

    @property
    def columns(self):
        """(m, n) contiguous view of the columns."""
        return np.ascontiguousarray(self.entries.T)

    @property
    def is_balanced(self):
        return not self.entries.sum(axis=0).any()

    def __eq__(self, other):
        if not isinstance(other, DesignMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes()) ^ hash(self.entries.shape)

    def __repr__(self):
        return f"DesignMatrix(n_runs={self.n_runs}, n_factors={self.n_factors})"


def _run_codes(x):
    weights = np.left_shift(np.int64(1), np.arange(x.shape[1], dtype=np.int64))
    return ((x == -1).astype(np.int64) * weights).sum(axis=1)


@dataclass(frozen=True)
class DesignVector:
    """Column codes: the n-bit binary expansion of ``codes[j]`` is column j.

    The most significant bit is run 1; digit 0 means -1 and digit 1 means +1.
    """

    n_runs: int
    codes: tuple

    def __post_init__(self):
        object.__setattr__(self, "codes", tuple(int(c) for c in self.codes))
        if self.n_runs < 1:
            raise ValidationError("n_runs must be positive")
        for j, c in enumerate(self.codes):
            if c < 0:
                raise ValidationError(f"code {c} in column {j + 1} is negative")


@dataclass(frozen=True)
class BalanceReport:
    column_sums: tuple
    balanced: bool

    @property
    def unbalanced_columns(self):
        return tuple(j for j, s in enumerate(self.column_sums) if s)


def decode_design_vector(v):
    """Expand a :class:`DesignVector` into a :class:`DesignMatrix`."""
    n = v.n_runs
    if not v.codes:
        raise ValidationError("design vector has no columns")
    cols = []
    for j, code in enumerate(v.codes):
        if code >> n:
            raise EncodingOverflowError(j, code, n)
        bits = [(code >> (n - 1 - i)) & 1 for i in range(n)]
        cols.append([1 if b else -1 for b in bits])
    return DesignMatrix(np.array(cols, dtype=np.int8).T)


def encode_design_matrix(x):
    """Inverse of :func:`decode_design_vector`."""
    n = x.n_runs
    codes = []
    for col in x.entries.T:
        code = 0
        for e in col:
            code = (code << 1) | (1 if e == 1 else 0)
        codes.append(code)
    return DesignVector(n, tuple(codes))


def check_balance(x):
    sums = tuple(int(s) for s in x.entries.sum(axis=0, dtype=np.int64))
    return BalanceReport(sums, not any(sums))


def _content_lines(text):
    """Yield (1-based line number, stripped line) skipping blanks and '#' comments."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _tokens(line):
    return [t for t in _SPLIT.split(line) if t]


def parse_matrix_text(text):
    """Parse rows of -1/+1 (or 0/1) tokens separated by whitespace or commas.

    Lines starting with ``#`` are ignored.  The two alphabets may not be mixed;
    any other token is rejected with its row/column position.
    """
    rows = []
    alphabet = None  # "pm" or "01"
    width = None
    for row_no, (lineno, line) in enumerate(_content_lines(text), start=1):
        values = []
        for col_no, tok in enumerate(_tokens(line), start=1):
            if tok in ("-1", "+1"):
                kind = "pm"
            elif tok == "0":
                kind = "01"
            elif tok == "1":
                kind = None
            else:
                raise ParseError(f"unexpected token {tok!r} on line {lineno}", row_no, col_no)
            if kind is not None:
                if alphabet is None:
                    alphabet = kind
                elif alphabet != kind:
                    raise ParseError(
                        f"mixed -1/+1 and 0/1 alphabets (token {tok!r} on line {lineno})",
                        row_no,
                        col_no,
                    )
            values.append(tok)
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise ShapeError(
                f"ragged matrix: line {lineno} has {len(values)} entries, expected {width}",
                row_no,
            )
        rows.append(values)
    if not rows:
        raise ShapeError("no matrix rows found")
    neg = "0" if alphabet == "01" else "-1"
    entries = [[-1 if t == neg else 1 for t in r] for r in rows]
    return DesignMatrix(np.array(entries, dtype=np.int8))


def parse_design_vector_text(text):
    """Parse ``n=<runs>`` followed by nonnegative integer column codes."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty design-vector input")
    lineno, header = lines[0]
    m = re.fullmatch(r"n\s*=\s*(\S+)", header)
    if m is None or not m.group(1).isdigit():
        raise ParseError(f"expected 'n=<runs>' header on line {lineno}, got {header!r}", 1)
    n = int(m.group(1))
    codes = []
    for row_no, (lineno, line) in enumerate(lines[1:], start=2):
        for col_no, tok in enumerate(_tokens(line), start=1):
            if not tok.isdigit():
                raise ParseError(
                    f"expected a nonnegative integer on line {lineno}, got {tok!r}",
                    row_no,
                    col_no,
                )
            codes.append(int(tok))
    if not codes:
        raise ParseError("design vector has no column codes")
    return DesignVector(n, tuple(codes))


def is_design_vector_text(text):
    """True when the first content line is an ``n=`` header."""
    for _, line in _content_lines(text):
        return line.startswith("n=") or line.startswith("n =")
    return False


def format_matrix_text(x, alphabet="pm"):
    if alphabet == "pm":
        table = {1: "1", -1: "-1"}
    elif alphabet == "01":
        table = {1: "1", -1: "0"}
    else:
        raise ValueError(f"unknown alphabet {alphabet!r}")
    width = max(len(s) for s in table.values())
    return "".join(
        " ".join(table[int(e)].rjust(width) for e in row) + "\n" for row in x.entries
    )


def format_design_vector(v):
    return f"n={v.n_runs}\n" + " ".join(str(c) for c in v.codes) + "\n"


def load_design(path, n_runs=None):
    """Read a design file, autodetecting vector vs matrix format.

    ``n_runs`` overrides (or supplies) the run count of a design vector.
    """
    text = Path(path).read_text()
    return design_from_text(text, n_runs=n_runs)


def design_from_text(text, n_runs=None):
    if is_design_vector_text(text):
        v = parse_design_vector_text(text)
        if n_runs is not None and n_runs != v.n_runs:
            raise ValidationError(
                f"--n {n_runs} disagrees with the file header n={v.n_runs}"
            )
        return decode_design_vector(v)
    if n_runs is not None:
        # bare list of codes without a header
        toks = [t for _, line in _content_lines(text) for t in _tokens(line)]
        if toks and all(t.isdigit() for t in toks) and any(int(t) > 1 for t in toks):
            return decode_design_vector(DesignVector(n_runs, tuple(int(t) for t in toks)))
    x = parse_matrix_text(text)
    if n_runs is not None and x.n_runs != n_runs:
        raise ValidationError(f"--n {n_runs} disagrees with the matrix's {x.n_runs} runs")
    return x

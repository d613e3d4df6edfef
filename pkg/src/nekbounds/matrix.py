"""Dense square matrices, text I/O and the elementary derived matrices.

Two text formats are understood:

PLAIN
    First token is the dimension ``n``, followed by ``n*n`` whitespace
    separated scalars in row-major order.  Complex scalars are written
    ``<real>(+|-)<real>i`` without internal spaces, e.g. ``3+4i`` or
    ``-1.5e-3-2i``.

MATRIX_MARKET
    ``%%MatrixMarket matrix (array|coordinate) (real|complex) general``.
    Coordinate entries that are not listed are zero.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import ParseError

__all__ = [
    "MatrixFormat",
    "SquareMatrix",
    "ComparisonMatrix",
    "TriangularSplit",
    "as_square_matrix",
    "parse_matrix",
    "detect_format",
    "read_matrix",
    "render_plain",
    "comparison_matrix",
    "triangular_split",
    "deleted_row_sum",
    "deleted_row_sums",
]


class MatrixFormat(enum.Enum):
    PLAIN = "plain"
    MATRIX_MARKET = "mm"


class SquareMatrix:
    """Immutable dense ``n x n`` matrix of float64 or complex128 entries."""

    __slots__ = ("_entries",)

    def __init__(self, entries):
        arr = np.array(entries)
        if arr.dtype == object or not (
            np.issubdtype(arr.dtype, np.number) or arr.dtype == bool
        ):
            raise TypeError(f"matrix entries must be numeric, got {arr.dtype}")
        if np.iscomplexobj(arr):
            arr = arr.astype(np.complex128)
        else:
            arr = arr.astype(np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ValueError(f"expected a non-empty square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix entries must be finite")
        arr.setflags(write=False)
        self._entries = arr

    @property
    def entries(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._entries

    @property
    def n(self) -> int:
        return self._entries.shape[0]

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self._entries)

    def abs(self) -> np.ndarray:
        """Elementwise moduli as a fresh float64 array."""
        return np.abs(self._entries)

    def __getitem__(self, key):
        return self._entries[key]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._entries.copy()
        return self._entries.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return (
            self._entries.dtype == other._entries.dtype
            and np.array_equal(self._entries, other._entries)
        )

    __hash__ = None

    def __repr__(self):
        return f"SquareMatrix(n={self.n}, entries={self._entries.tolist()!r})"


def as_square_matrix(A) -> SquareMatrix:
    if isinstance(A, SquareMatrix):
        return A
    return SquareMatrix(A)


@dataclass(frozen=True, eq=False)
class ComparisonMatrix:
    """``m_ii = |a_ii|`` and ``m_ij = -|a_ij|`` off the diagonal."""

    entries: np.ndarray

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class TriangularSplit:
    """Moduli of the parts of ``A = D - L - U``.

    ``diag`` holds ``|a_ii|``; ``lower`` and ``upper`` hold ``|a_ij|`` strictly
    below and strictly above the diagonal, zero elsewhere.
    """

    diag: np.ndarray
    lower: np.ndarray
    upper: np.ndarray


def _readonly(arr):
    arr.setflags(write=False)
    return arr


def comparison_matrix(A) -> ComparisonMatrix:
    A = as_square_matrix(A)
    M = -A.abs()
    np.fill_diagonal(M, np.abs(np.diag(A.entries)))
    return ComparisonMatrix(_readonly(M))


def triangular_split(A) -> TriangularSplit:
    absA = as_square_matrix(A).abs()
    return TriangularSplit(
        diag=_readonly(np.diag(absA).copy()),
        lower=_readonly(np.tril(absA, -1)),
        upper=_readonly(np.triu(absA, 1)),
    )


def deleted_row_sums(A) -> np.ndarray:
    """``r_i = sum_{j != i} |a_ij|`` for every row."""
    absA = as_square_matrix(A).abs()
    np.fill_diagonal(absA, 0.0)
    return absA.sum(axis=1)


def deleted_row_sum(A, i: int) -> float:
    """Deleted absolute row sum of row ``i`` (0-based)."""
    A = as_square_matrix(A)
    if not 0 <= i < A.n:
        raise IndexError(f"row index {i} out of range for n={A.n}")
    row = np.abs(A.entries[i])
    return float(row.sum() - row[i])


# ---------------------------------------------------------------- parsing

_UNSIGNED = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_REAL_RE = re.compile(rf"[+-]?{_UNSIGNED}")
_COMPLEX_RE = re.compile(rf"(?P<re>[+-]?{_UNSIGNED})(?P<im>[+-]{_UNSIGNED})i")
_IMAG_RE = re.compile(rf"(?P<im>[+-]?{_UNSIGNED})i")
_NONFINITE_RE = re.compile(r"[+-]?(nan|inf|infinity)", re.IGNORECASE)


def _tokens(text):
    """Yield ``(token, line, column)`` with 1-based positions."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        for m in re.finditer(r"\S+", line):
            yield m.group(), lineno, m.start() + 1


def _parse_real(tok, line, col):
    if _REAL_RE.fullmatch(tok):
        return float(tok)
    if _NONFINITE_RE.fullmatch(tok):
        raise ParseError(f"non-finite value {tok!r}", line, col)
    raise ParseError(f"malformed number {tok!r}", line, col)


def _parse_scalar(tok, line, col):
    if _REAL_RE.fullmatch(tok):
        return float(tok)
    m = _COMPLEX_RE.fullmatch(tok)
    if m:
        return complex(float(m["re"]), float(m["im"]))
    m = _IMAG_RE.fullmatch(tok)
    if m:
        return complex(0.0, float(m["im"]))
    if re.search(r"nan|inf", tok, re.IGNORECASE):
        raise ParseError(f"non-finite value {tok!r}", line, col)
    raise ParseError(f"malformed scalar {tok!r}", line, col)


def _parse_dimension(tok, line, col):
    if not re.fullmatch(r"\+?\d+", tok):
        raise ParseError(f"expected a positive integer dimension, got {tok!r}", line, col)
    n = int(tok)
    if n < 1:
        raise ParseError("dimension must be at least 1", line, col)
    return n


def _build(values, n):
    if any(isinstance(v, complex) for v in values):
        arr = np.array(values, dtype=np.complex128)
    else:
        arr = np.array(values, dtype=np.float64)
    return SquareMatrix(arr.reshape(n, n))


def _parse_plain(text):
    toks = _tokens(text)
    first = next(toks, None)
    if first is None:
        raise ParseError("empty input", 1, 1)
    n = _parse_dimension(*first)
    values = []
    last = first
    for tok, line, col in toks:
        if len(values) == n * n:
            raise ParseError(f"unexpected extra token {tok!r} after {n * n} entries", line, col)
        values.append(_parse_scalar(tok, line, col))
        last = (tok, line, col)
    if len(values) < n * n:
        _, line, col = last
        raise ParseError(
            f"expected {n * n} entries for n={n}, found {len(values)}",
            line, col + len(last[0]),
        )
    return _build(values, n)


def _parse_matrix_market(text):
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ParseError("empty input", 1, 1)
    header = lines[0].split()
    if len(header) != 5 or header[0].lower() != "%%matrixmarket" or header[1].lower() != "matrix":
        raise ParseError("expected '%%MatrixMarket matrix <layout> <field> general' header", 1, 1)
    layout, field, symmetry = (h.lower() for h in header[2:])
    if layout not in ("array", "coordinate"):
        raise ParseError(f"unsupported layout {header[2]!r}", 1, len(" ".join(header[:2])) + 2)
    if field not in ("real", "integer", "complex"):
        raise ParseError(f"unsupported field {header[3]!r}", 1, len(" ".join(header[:3])) + 2)
    if symmetry != "general":
        raise ParseError(f"only 'general' matrices are supported, got {header[4]!r}",
                         1, len(" ".join(header[:4])) + 2)
    is_complex = field == "complex"

    # Data lines with 1-based line numbers; comments and blank lines dropped.
    body = []
    for lineno, line in enumerate(lines[1:], start=2):
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        body.append((lineno, [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]))
    if not body:
        raise ParseError("missing size line", len(lines), 1)

    size_line, size_toks = body[0]
    want = 2 if layout == "array" else 3
    if len(size_toks) != want:
        raise ParseError(f"size line must have {want} integers", size_line, 1)
    dims = [_parse_dimension(t, size_line, c) if k < 2 else None for k, (t, c) in enumerate(size_toks)]
    rows, cols = dims[0], dims[1]
    if rows != cols:
        raise ParseError(f"matrix is not square ({rows}x{cols})", size_line, 1)
    n = rows
    per_entry = 2 if is_complex else 1

    def scalar(parts, line):
        re_part = _parse_real(parts[0][0], line, parts[0][1])
        if not is_complex:
            return re_part
        return complex(re_part, _parse_real(parts[1][0], line, parts[1][1]))

    data = body[1:]
    dtype = np.complex128 if is_complex else np.float64
    out = np.zeros((n, n), dtype=dtype)
    if layout == "array":
        if len(data) != n * n:
            line = data[-1][0] if data else size_line
            raise ParseError(f"expected {n * n} array entries, found {len(data)}", line, 1)
        for k, (line, parts) in enumerate(data):
            if len(parts) != per_entry:
                raise ParseError(f"expected {per_entry} value(s) per entry", line, 1)
            # array layout is column-major
            out[k % n, k // n] = scalar(parts, line)
    else:
        nnz_tok, nnz_col = size_toks[2]
        if not re.fullmatch(r"\+?\d+", nnz_tok):
            raise ParseError(f"malformed entry count {nnz_tok!r}", size_line, nnz_col)
        nnz = int(nnz_tok)
        if len(data) != nnz:
            line = data[-1][0] if data else size_line
            raise ParseError(f"header declares {nnz} entries, found {len(data)}", line, 1)
        seen = set()
        for line, parts in data:
            if len(parts) != 2 + per_entry:
                raise ParseError(f"expected {2 + per_entry} fields per entry", line, 1)
            idx = []
            for tok, col in parts[:2]:
                if not re.fullmatch(r"\d+", tok) or not 1 <= int(tok) <= n:
                    raise ParseError(f"index {tok!r} out of range 1..{n}", line, col)
                idx.append(int(tok) - 1)
            key = tuple(idx)
            if key in seen:
                raise ParseError(f"duplicate entry ({idx[0] + 1}, {idx[1] + 1})", line, 1)
            seen.add(key)
            out[key] = scalar(parts[2:], line)
    return SquareMatrix(out)


def parse_matrix(text: str, format: MatrixFormat | str = MatrixFormat.PLAIN) -> SquareMatrix:
    """Parse ``text`` in the given format. Raises :class:`ParseError`."""
    fmt = MatrixFormat(format) if not isinstance(format, MatrixFormat) else format
    if fmt is MatrixFormat.PLAIN:
        return _parse_plain(text)
    return _parse_matrix_market(text)


def detect_format(text: str) -> MatrixFormat:
    if text.lstrip().lower().startswith("%%matrixmarket"):
        return MatrixFormat.MATRIX_MARKET
    return MatrixFormat.PLAIN


def read_matrix(path, format: MatrixFormat | str | None = None) -> SquareMatrix:
    """Read a matrix file; the format is sniffed from the header when not given."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if format is None:
        format = detect_format(text)
    return parse_matrix(text, format)


def _render_scalar(x):
    if isinstance(x, complex) or np.iscomplexobj(x):
        re_s = repr(float(x.real))
        im = float(x.imag)
        im_s = repr(abs(im))
        sign = "-" if math.copysign(1.0, im) < 0 else "+"
        return f"{re_s}{sign}{im_s}i"
    return repr(float(x))


def render_plain(A) -> str:
    """Render in PLAIN format using shortest round-trip float literals."""
    A = as_square_matrix(A)
    lines = [str(A.n)]
    for row in A.entries:
        lines.append(" ".join(_render_scalar(complex(v) if A.is_complex else v) for v in row))
    return "\n".join(lines) + "\n"

"""Exact column-stochastic matrices.

Entries are :class:`fractions.Fraction` values held in a read-only numpy
``dtype=object`` array (column-major).  Every constructor validates the
stochastic invariants before the value escapes, so products, block sums and
juxtapositions of valid matrices are checked on the way out as well.
"""

from __future__ import annotations

import json
import logging
from fractions import Fraction
from numbers import Rational
from typing import Any, Iterable, List, Sequence

import numpy as np

from .errors import (
    DimensionError,
    IndexRangeError,
    ParameterDomainError,
    StochasticityError,
)

_logger = logging.getLogger(__name__)

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def to_scalar(value: Any) -> Fraction:
    """Convert *value* to an exact :class:`~fractions.Fraction`.

    Accepts ``Fraction``, integers (including numpy integers) and strings such
    as ``"2/3"``.  Floats are refused because they are not exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParameterDomainError(f"not an exact fraction: {value!r}") from exc
    if isinstance(value, float):
        raise TypeError(
            f"float {value!r} is not exact; pass a Fraction or a 'p/q' string"
        )
    raise TypeError(f"cannot interpret {value!r} as a scalar")


def probability(value: Any) -> Fraction:
    """Like :func:`to_scalar` but also require ``0 <= value <= 1``."""
    scalar = to_scalar(value)
    if not ZERO <= scalar <= ONE:
        raise ParameterDomainError(f"probability {scalar} outside [0, 1]")
    return scalar


def format_scalar(value: Any) -> str:
    """``"p/q"`` text for a scalar, or ``"p"`` when the denominator is 1."""
    return str(to_scalar(value))


def _as_fraction_array(entries: Any, rows: int | None = None) -> np.ndarray:
    if isinstance(entries, np.ndarray):
        if entries.ndim != 2:
            raise DimensionError(f"expected a 2-d array, got {entries.ndim} dimensions")
        source = entries
    else:
        row_list = [list(row) for row in entries]
        if not row_list:
            source = np.empty((0 if rows is None else rows, 0), dtype=object)
        else:
            widths = {len(row) for row in row_list}
            if len(widths) != 1:
                raise DimensionError(f"ragged rows with widths {sorted(widths)}")
            source = np.empty((len(row_list), widths.pop()), dtype=object)
            for i, row in enumerate(row_list):
                for j, value in enumerate(row):
                    source[i, j] = value

    if rows is not None and source.shape[0] != rows:
        raise DimensionError(f"expected {rows} rows, got {source.shape[0]}")

    out = np.empty(source.shape, dtype=object, order="F")
    for index, value in np.ndenumerate(source):
        out[index] = to_scalar(value)
    return out


def _check_stochastic(array: np.ndarray) -> None:
    n, m = array.shape
    if n == 0 and m > 0:
        raise DimensionError(f"there is no stochastic matrix of shape 0x{m}")
    for j in range(m):
        column = array[:, j]
        if any(value < 0 for value in column):
            raise StochasticityError(f"column {j + 1} has a negative entry", column=j + 1)
        total = sum(column, ZERO)
        if total != ONE:
            raise StochasticityError(
                f"column {j + 1} sums to {total}, not 1", column=j + 1
            )


class StochasticMatrix:
    """An exact ``rows x cols`` column-stochastic matrix.

    Parameters
    ----------
    entries:
        Row-major nested sequence or 2-d array of scalars.
    rows:
        Row count.  Required to build an ``n x 0`` matrix from an empty
        sequence, otherwise only checked.

    Examples
    --------
    >>> StochasticMatrix([["1/3"], ["2/3"]]).shape
    (2, 1)
    >>> StochasticMatrix([], rows=3).shape
    (3, 0)
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Any, rows: int | None = None):
        array = _as_fraction_array(entries, rows)
        _check_stochastic(array)
        array.flags.writeable = False
        self._entries = array

    # ---- constructors ----

    @classmethod
    def identity(cls, n: int) -> "StochasticMatrix":
        if n < 0:
            raise ParameterDomainError(f"negative size {n}")
        array = np.full((n, n), ZERO, dtype=object)
        for i in range(n):
            array[i, i] = ONE
        return cls(array)

    @classmethod
    def empty(cls, rows: int) -> "StochasticMatrix":
        """The unique ``rows x 0`` matrix."""
        if rows < 0:
            raise ParameterDomainError(f"negative size {rows}")
        return cls(np.empty((rows, 0), dtype=object))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[Any]]) -> "StochasticMatrix":
        return cls(rows)

    @classmethod
    def from_columns(
        cls, columns: Sequence[Sequence[Any]], rows: int | None = None
    ) -> "StochasticMatrix":
        """Build a matrix from a list of column vectors.

        *rows* must be given when *columns* is empty.
        """
        if not columns:
            if rows is None:
                raise ValueError("from_columns([]) needs an explicit row count")
            return cls.empty(rows)
        heights = {len(col) for col in columns}
        if len(heights) != 1:
            raise DimensionError(f"columns of different heights {sorted(heights)}")
        height = heights.pop()
        array = np.empty((height, len(columns)), dtype=object)
        for j, col in enumerate(columns):
            for i, value in enumerate(col):
                array[i, j] = value
        return cls(array, rows=rows)

    # ---- accessors ----

    @property
    def rows(self) -> int:
        return self._entries.shape[0]

    @property
    def cols(self) -> int:
        return self._entries.shape[1]

    @property
    def shape(self) -> tuple:
        return self._entries.shape

    @property
    def entries(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._entries

    def __getitem__(self, key):
        return self._entries[key]

    def columns(self) -> List["StochasticMatrix"]:
        return [column(self, j) for j in range(1, self.cols + 1)]

    def to_rows(self) -> List[List[Fraction]]:
        return [list(row) for row in self._entries]

    def is_deterministic(self) -> bool:
        """``True`` when every column is a unit vector (a plain function)."""
        return all(value in (ZERO, ONE) for value in self._entries.flat)

    def is_permutation(self) -> bool:
        if self.rows != self.cols or not self.is_deterministic():
            return False
        return all(sum(row, ZERO) == ONE for row in self._entries)

    # ---- JSON ----

    def to_json_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[format_scalar(v) for v in row] for row in self._entries],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "StochasticMatrix":
        try:
            rows = int(data["rows"])
            cols = int(data["cols"])
            entries = data["entries"]
        except (KeyError, TypeError) as exc:
            raise DimensionError(f"malformed matrix document: {exc}") from exc
        if not isinstance(entries, list) or not all(isinstance(row, list) for row in entries):
            raise DimensionError("'entries' must be a list of row lists")
        if entries and len(entries) != rows:
            raise DimensionError(f"'rows' says {rows} but entries has {len(entries)} rows")
        matrix = cls(entries, rows=rows)
        if matrix.cols != cols:
            raise DimensionError(f"'cols' says {cols} but entries has {matrix.cols} columns")
        return matrix

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "StochasticMatrix":
        return cls.from_json_dict(json.loads(text))

    def save_to_json(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.to_json(indent=2))
            f.write("\n")

    @classmethod
    def load_from_json(cls, path: str) -> "StochasticMatrix":
        with open(path, "r", encoding="utf-8") as f:
            return cls.from_json(f.read())

    # ---- dunder helpers ----

    def __matmul__(self, other: "StochasticMatrix") -> "StochasticMatrix":
        return multiply(self, other)

    def __eq__(self, other):
        if isinstance(other, StochasticMatrix):
            return self.shape == other.shape and bool(
                np.array_equal(self._entries, other._entries)
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.shape, tuple(self._entries.ravel(order="F"))))

    def __repr__(self):
        body = [[format_scalar(v) for v in row] for row in self._entries]
        return f"StochasticMatrix(rows={self.rows}, cols={self.cols}, {body})"


def identity(n: int) -> StochasticMatrix:
    return StochasticMatrix.identity(n)


def empty(rows: int) -> StochasticMatrix:
    return StochasticMatrix.empty(rows)


def multiply(left: StochasticMatrix, right: StochasticMatrix) -> StochasticMatrix:
    """Matrix product ``left . right`` (apply *right* first).

    Raises
    ------
    DimensionError
        If ``left.cols != right.rows``.
    """
    if left.cols != right.rows:
        raise DimensionError(
            f"cannot multiply {left.rows}x{left.cols} by {right.rows}x{right.cols}"
        )
    product = left.entries.dot(right.entries)
    return StochasticMatrix(product, rows=left.rows)


def block_diag(a: StochasticMatrix, b: StochasticMatrix) -> StochasticMatrix:
    """Monoidal product: ``a`` in the top-left block, ``b`` in the bottom-right."""
    array = np.full((a.rows + b.rows, a.cols + b.cols), ZERO, dtype=object)
    array[: a.rows, : a.cols] = a.entries
    array[a.rows :, a.cols :] = b.entries
    return StochasticMatrix(array)


def hjoin(columns: Sequence[StochasticMatrix], rows: int | None = None) -> StochasticMatrix:
    """Horizontal juxtaposition ``(A_1 A_2 ...)``.

    *rows* is mandatory for an empty list and checked otherwise.
    """
    if not columns:
        if rows is None:
            raise ValueError("hjoin([]) needs an explicit row count")
        return StochasticMatrix.empty(rows)
    heights = {block.rows for block in columns}
    if len(heights) != 1:
        raise DimensionError(f"cannot juxtapose blocks with row counts {sorted(heights)}")
    height = heights.pop()
    if rows is not None and rows != height:
        raise DimensionError(f"expected {rows} rows, blocks have {height}")
    return StochasticMatrix(np.hstack([block.entries for block in columns]), rows=height)


def column(a: StochasticMatrix, j: int) -> StochasticMatrix:
    """The ``j``-th column (1-based) as an ``rows x 1`` matrix."""
    if not 1 <= j <= a.cols:
        raise IndexRangeError(f"column {j} out of range 1..{a.cols}")
    return StochasticMatrix(a.entries[:, j - 1 : j])


__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "to_scalar",
    "probability",
    "format_scalar",
    "StochasticMatrix",
    "identity",
    "empty",
    "multiply",
    "block_diag",
    "hjoin",
    "column",
]

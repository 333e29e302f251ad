"""Dense row-stochastic matrix foundation.

Matrices are plain float64 ``numpy`` arrays.  A "stochastic matrix" in this
package is any 2-D array that has passed :func:`validate_stochastic`:
nonnegative entries, every row summing to 1 within tolerance.  All
operations are pure functions; nothing here mutates its inputs.

Target scale is small and dense (up to ~128 states), favouring
auditability over throughput.
"""

from dataclasses import dataclass, field

import numpy as np

DEFAULT_TOL = 1e-9
ROUNDED_TOL = 1e-3


class NegativeEntryError(ValueError):
    """A matrix entry is negative where probabilities are required."""

    def __init__(self, row, col, value):
        self.row, self.col, self.value = row, col, value
        super().__init__(f"negative entry {value!r} at ({row}, {col})")


class RowSumError(ValueError):
    """A row does not sum to 1 within the validation tolerance."""

    def __init__(self, row, total, tol):
        self.row, self.total, self.tol = row, total, tol
        super().__init__(f"row {row} sums to {total!r} (tolerance {tol!r})")


class DimensionMismatchError(ValueError):
    """Operand shapes are incompatible."""


class ShapeMismatchError(ValueError):
    """Members of a matrix family do not share one shape."""


class NotSquareError(ValueError):
    """A square matrix was required."""


class ZeroRowError(ValueError):
    """Row normalization hit an all-zero row."""

    def __init__(self, row):
        self.row = row
        super().__init__(f"row {row} is identically zero")


class ZeroColumnError(ValueError):
    """Column normalization hit an all-zero column."""

    def __init__(self, col):
        self.col = col
        super().__init__(f"column {col} is identically zero")


def as_matrix(m):
    """Coerce to a fresh 2-D float64 array and reject non-finite entries."""
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.size == 0:
        raise DimensionMismatchError(f"expected a nonempty 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains non-finite entries")
    return a


def require_square(m):
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise NotSquareError(f"expected a square matrix, got shape {a.shape}")
    return a


def validate_stochastic(m, tol=DEFAULT_TOL):
    """Check nonnegativity and unit row sums; return the validated array.

    Parameters
    ----------
    m : array_like
        Candidate matrix.
    tol : float
        Permitted deviation of each row sum from 1.

    Returns
    -------
    ndarray
        A float64 copy of ``m``, entries unchanged.

    Raises
    ------
    NegativeEntryError, RowSumError
    """
    a = as_matrix(m)
    neg = np.argwhere(a < 0)
    if len(neg):
        i, j = map(int, neg[0])
        raise NegativeEntryError(i, j, float(a[i, j]))
    sums = a.sum(axis=1)
    bad = np.argwhere(np.abs(sums - 1.0) > tol)
    if len(bad):
        i = int(bad[0][0])
        raise RowSumError(i, float(sums[i]), tol)
    return a


def ingest_rounded(m, tol=None):
    """Validate a matrix printed with rounded decimals, then renormalize.

    Published tables are typically rounded to 3 decimals, so each row sum
    can drift from 1 by up to half an ulp per entry.  The default
    tolerance scales accordingly (5e-4 per column, at least 1e-3); rows
    are then rescaled so downstream invariants hold exactly.
    """
    a = as_matrix(m)
    if tol is None:
        tol = max(ROUNDED_TOL, 5e-4 * a.shape[1]) + 1e-12
    return row_normalize(validate_stochastic(a, tol=tol))


def _reject_negative(a):
    neg = np.argwhere(a < 0)
    if len(neg):
        i, j = map(int, neg[0])
        raise NegativeEntryError(i, j, float(a[i, j]))


def row_normalize(m):
    """Scale each row to sum to 1.  Zero entries stay zero."""
    a = as_matrix(m)
    _reject_negative(a)
    sums = a.sum(axis=1)
    zero = np.argwhere(sums == 0)
    if len(zero):
        raise ZeroRowError(int(zero[0][0]))
    return a / sums[:, None]


def col_normalize(m):
    """Scale each column to sum to 1.  Zero entries stay zero."""
    a = as_matrix(m)
    _reject_negative(a)
    sums = a.sum(axis=0)
    zero = np.argwhere(sums == 0)
    if len(zero):
        raise ZeroColumnError(int(zero[0][0]))
    return a / sums[None, :]


def multiply(a, b, tol=DEFAULT_TOL):
    """Product of two stochastic matrices, revalidated at 10*tol."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(f"cannot multiply {a.shape} by {b.shape}")
    return validate_stochastic(a @ b, tol=10 * tol)


def matrix_power(p, n):
    """p**n by repeated squaring; n = 0 gives the identity."""
    p = require_square(p)
    if n < 0:
        raise ValueError("negative powers are not defined for stochastic matrices")
    result = np.eye(p.shape[0])
    base = p.copy()
    k = int(n)
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def delta_coefficient(p):
    """Largest columnwise spread between any two rows.

    Zero exactly when all rows are identical (a rank-one matrix); at most 1
    for a stochastic matrix.
    """
    a = as_matrix(p)
    return float(np.max(a.max(axis=0) - a.min(axis=0)))


def max_abs_diff(a, b):
    """Entrywise max-norm distance, the stabilization metric used throughout."""
    return float(np.max(np.abs(as_matrix(a) - as_matrix(b))))


@dataclass(frozen=True, eq=False)
class MatrixFamily:
    """A finite set of same-shape stochastic matrices with sampling weights.

    Weights must be strictly positive; they are rescaled to sum to 1 at
    construction.
    """

    members: tuple
    weights: np.ndarray = field(default=None)

    def __init__(self, members, weights=None):
        members = tuple(validate_stochastic(m, tol=1e-7) for m in members)
        if not members:
            raise ShapeMismatchError("a family needs at least one member")
        shape = members[0].shape
        for m in members[1:]:
            if m.shape != shape:
                raise ShapeMismatchError(f"member shapes differ: {shape} vs {m.shape}")
        if weights is None:
            w = np.full(len(members), 1.0 / len(members))
        else:
            w = np.asarray(weights, dtype=float)
            if w.shape != (len(members),):
                raise ShapeMismatchError("need one weight per member")
            if np.any(w <= 0):
                raise ValueError("sampling weights must be strictly positive")
            w = w / w.sum()
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.members)

    @property
    def shape(self):
        return self.members[0].shape

    def require_square(self):
        if self.shape[0] != self.shape[1]:
            raise NotSquareError(f"family members must be square, got {self.shape}")
        return self

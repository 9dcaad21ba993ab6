"""Column deletion from optimal arrays and the inequality deciding how many
columns may go while the floor bound stays met."""

from __future__ import annotations

from fractions import Fraction

from .bounds import floor_bound
from .designs import InfeasibleError, OrthogonalArray, Quadruple


def delete_columns(a: OrthogonalArray, s: int,
                   columns: tuple[int, ...] | None = None) -> OrthogonalArray:
    """Restrict the array to k-s columns; by default the trailing s columns
    are dropped.  Any s distinct columns are allowed (1 <= s <= k-2); the
    restriction of a strength-2 array is again strength-2 with the same
    index, and the repeated row can only gain multiplicity."""
    if not (1 <= s <= a.k - 2):
        raise ValueError(f"s must satisfy 1 <= s <= k-2 = {a.k - 2}, got {s}")
    if columns is None:
        columns = tuple(range(a.k - s, a.k))
    else:
        columns = tuple(int(c) for c in columns)
        if len(columns) != s:
            raise ValueError(f"expected {s} column indices, got {len(columns)}")
        if len(set(columns)) != s or any(c < 0 or c >= a.k for c in columns):
            raise ValueError(f"column indices must be distinct and in [0, {a.k - 1}]")
    keep = [c for c in range(a.k) if c not in set(columns)]
    return OrthogonalArray(k=a.k - s, n=a.n, lam=a.lam, rows=a.rows[:, keep])


def deletion_margin(k: int, n: int, lam: int) -> Fraction:
    """The exact threshold (k(n-1)+1)^2 / ((n-1)(lambda n^2 + k(n-1)+1));
    deleting strictly fewer columns than this keeps the floor bound fixed."""
    denom = k * (n - 1) + 1
    return Fraction(denom * denom, (n - 1) * (lam * n * n + denom))


def max_safe_deletions(k: int, n: int, lam: int) -> int:
    """Largest positive s strictly below the deletion margin (0 when none).

    Requires optimal parameters, i.e. m = lambda*n^2/(k(n-1)+1) integral as
    part of a feasible quadruple.  For every s' <= the returned value,
    deleting any s' columns from an optimal array leaves the multiplicity
    equal to the floor bound at k-s'.
    """
    denom = k * (n - 1) + 1
    if (lam * n * n) % denom != 0:
        raise InfeasibleError(f"lambda*n^2 = {lam * n * n} is not a multiple of {denom}")
    m = (lam * n * n) // denom
    if not Quadruple(m=m, lam=lam, k=k, n=n).is_feasible:
        raise InfeasibleError(f"(m={m}, lambda={lam}, k={k}, n={n}) is not feasible")
    margin = deletion_margin(k, n, lam)
    s = int(margin)
    if Fraction(s) == margin:  # strict inequality required
        s -= 1
    return max(s, 0)


def m_optimal_after_deletion(k: int, n: int, lam: int, s: int) -> bool:
    """Does the original multiplicity still meet the floor bound at k-s?"""
    denom = k * (n - 1) + 1
    if (lam * n * n) % denom != 0:
        raise InfeasibleError(f"lambda*n^2 = {lam * n * n} is not a multiple of {denom}")
    m = (lam * n * n) // denom
    if s == 0:
        return True
    if not (1 <= s <= k - 2):
        raise ValueError(f"s must satisfy 0 <= s <= k-2 = {k - 2}, got {s}")
    return m == floor_bound(k - s, n, lam)

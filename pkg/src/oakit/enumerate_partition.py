"""Full enumeration of k-tuples with a forced zero count, and the partition
of that array into (n-1)^gamma smaller arrays of the same shape.

The construction takes every k-tuple over {0..n-1} with exactly
abar = (k-1)/n zeros, adjoins the right number of all-zero rows, and is an
optimal array with lambda = C(k-2, abar-1) * (n-1)^(k-abar-1).  Splitting
the non-constant rows by the per-column-class sums of their shifted nonzero
entries (mod n-1) refines lambda by a factor (n-1) per class.

Large instances never have to be materialized: the row generators stream
numpy batches in a fixed lexicographic order and the partition classes can
be streamed individually.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Iterator

import numpy as np

from .designs import INFINITY, InfeasibleError, OrthogonalArray

#: materialization guard: operations refuse to build arrays beyond this many
#: rows and point the caller at the streaming interface instead
DEFAULT_MATERIALIZE_LIMIT = 2 ** 24


class MaterializeLimitError(ValueError):
    """The requested array is too large to materialize; stream it instead."""


def abar_of(k: int, n: int) -> int:
    """Forced zeros per non-constant row, (k-1)/n; must be a positive integer."""
    if (k - 1) % n != 0 or (k - 1) // n < 1:
        raise InfeasibleError(f"(k-1)/n = ({k}-1)/{n} is not a positive integer")
    return (k - 1) // n


def check_enumeration_preconditions(k: int, n: int) -> int:
    """Validate both preconditions and return abar."""
    if k < 2 or n < 2:
        raise InfeasibleError(f"need k >= 2 and n >= 2, got ({k}, {n})")
    abar = abar_of(k, n)
    if n * n > k * (n - 1) + 1:
        raise InfeasibleError(
            f"n^2 = {n * n} exceeds k(n-1)+1 = {k * (n - 1) + 1}; "
            "the enumeration bound fails")
    return abar


def enumeration_lambda(k: int, n: int) -> int:
    """Index of the enumerated array: C(k-2, abar-1) * (n-1)^(k-abar-1)."""
    abar = check_enumeration_preconditions(k, n)
    return comb(k - 2, abar - 1) * (n - 1) ** (k - abar - 1)


def enumeration_repeats(k: int, n: int) -> int:
    """Number of all-zero rows adjoined, lambda*n^2 / (k(n-1)+1)."""
    lam = enumeration_lambda(k, n)
    denom = k * (n - 1) + 1
    total = lam * n * n
    if total % denom != 0:
        raise InfeasibleError("enumeration index is incompatible with the repeat bound")
    return total // denom


def tuple_count(k: int, n: int) -> int:
    """Number of k-tuples with exactly abar zeros: C(k, abar) * (n-1)^(k-abar)."""
    abar = check_enumeration_preconditions(k, n)
    return comb(k, abar) * (n - 1) ** (k - abar)


def _assignment_block(k: int, n: int, abar: int) -> np.ndarray:
    """All (n-1)^(k-abar) fillings of the nonzero positions with 1..n-1, in
    lexicographic order (leftmost position most significant)."""
    width = k - abar
    count = (n - 1) ** width
    idx = np.arange(count, dtype=np.int64)[:, None]
    powers = (n - 1) ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return (1 + (idx // powers) % (n - 1)).astype(np.int8)


def stream_tuples(k: int, n: int, batch_rows: int = 1 << 16) -> Iterator[np.ndarray]:
    """Yield the non-constant rows in lexicographic tuple order, batched.

    Lexicographic order over zero-position subsets, then over nonzero
    assignments, coincides with plain lexicographic order of the tuples
    because 0 is the smallest symbol.
    """
    abar = check_enumeration_preconditions(k, n)
    block = _assignment_block(k, n, abar)
    per = block.shape[0]
    pending: list[np.ndarray] = []
    count = 0
    for zeros in combinations(range(k), abar):
        rows = np.zeros((per, k), dtype=np.int8)
        nonzero = [c for c in range(k) if c not in zeros]
        rows[:, nonzero] = block
        pending.append(rows)
        count += per
        if count >= batch_rows:
            yield np.concatenate(pending)
            pending, count = [], 0
    if pending:
        yield np.concatenate(pending)


def stream_enumerate(k: int, n: int, batch_rows: int = 1 << 16) -> Iterator[np.ndarray]:
    """Tuple block then the all-zero block, the whole array as batches."""
    yield from stream_tuples(k, n, batch_rows)
    m = enumeration_repeats(k, n)
    while m > 0:
        take = min(m, batch_rows)
        yield np.zeros((take, k), dtype=np.int8)
        m -= take


def enumerate_oa(k: int, n: int,
                 max_rows: int = DEFAULT_MATERIALIZE_LIMIT) -> OrthogonalArray:
    """Materialize the enumerated optimal array."""
    lam = enumeration_lambda(k, n)
    total = lam * n * n
    if total > max_rows:
        raise MaterializeLimitError(
            f"array has {total} rows (> {max_rows}); use stream_enumerate()")
    rows = np.concatenate(list(stream_enumerate(k, n)))
    return OrthogonalArray(k=k, n=n, lam=lam, rows=rows)


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PartitionSpec:
    """Column classes for the multi-class refinement.

    Classes are consecutive column blocks of the given sizes; every size must
    be at least abar+3 so the class-local shift always finds a nonzero entry
    past the class's first two columns.
    """

    k: int
    n: int
    class_sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.class_sizes)
        object.__setattr__(self, "class_sizes", sizes)
        abar = abar_of(self.k, self.n)
        if not sizes:
            raise InfeasibleError("need at least one column class")
        if sum(sizes) != self.k:
            raise InfeasibleError(f"class sizes {sizes} do not sum to k = {self.k}")
        if any(s < abar + 3 for s in sizes):
            raise InfeasibleError(f"every class size must be >= abar+3 = {abar + 3}")

    @property
    def gamma(self) -> int:
        return len(self.class_sizes)

    @property
    def ranges(self) -> tuple[tuple[int, int], ...]:
        out, lo = [], 0
        for s in self.class_sizes:
            out.append((lo, lo + s))
            lo += s
        return tuple(out)


def max_gamma(k: int, n: int) -> int:
    """Largest usable class count, floor(k / (abar+3))."""
    return k // (abar_of(k, n) + 3)


def default_partition_spec(k: int, n: int,
                           class_sizes: tuple[int, ...] | None = None) -> PartitionSpec:
    """The canonical split: gamma-1 classes of size abar+3, the last class
    absorbing the remainder."""
    if class_sizes is not None:
        return PartitionSpec(k=k, n=n, class_sizes=tuple(class_sizes))
    abar = abar_of(k, n)
    gamma = max_gamma(k, n)
    if gamma < 1:
        raise InfeasibleError(
            f"no valid split: k = {k} is below abar+3 = {abar + 3}")
    sizes = [abar + 3] * (gamma - 1)
    sizes.append(k - (abar + 3) * (gamma - 1))
    return PartitionSpec(k=k, n=n, class_sizes=tuple(sizes))


def partition_lambda(k: int, n: int, gamma: int = 1) -> int:
    """Per-class index C(k-2, abar-1) * (n-1)^(k-abar-gamma-1)."""
    abar = check_enumeration_preconditions(k, n)
    exponent = k - abar - gamma - 1
    if exponent < 0:
        raise InfeasibleError(f"gamma = {gamma} is too large for (k, n) = ({k}, {n})")
    return comb(k - 2, abar - 1) * (n - 1) ** exponent


def row_types(batch: np.ndarray, spec: PartitionSpec) -> np.ndarray:
    """Type of each row: per class, the mod-(n-1) sum of (symbol - 1) over its
    nonzero entries.  Returns an integer class index in 0 .. (n-1)^gamma - 1
    (most significant class first)."""
    n = spec.n
    vals = batch.astype(np.int64)
    contrib = ((vals - 1) % (n - 1)) * (vals != 0)
    idx = np.zeros(batch.shape[0], dtype=np.int64)
    for lo, hi in spec.ranges:
        idx = idx * (n - 1) + contrib[:, lo:hi].sum(axis=1) % (n - 1)
    return idx


def all_types(spec: PartitionSpec) -> list[tuple[int, ...]]:
    return [tau for tau in product(range(spec.n - 1), repeat=spec.gamma)]


def type_index(tau: tuple[int, ...], n: int) -> int:
    idx = 0
    for t in tau:
        idx = idx * (n - 1) + t
    return idx


def stream_partition_class(k: int, n: int, tau: tuple[int, ...],
                           class_sizes: tuple[int, ...] | None = None,
                           batch_rows: int = 1 << 16) -> Iterator[np.ndarray]:
    """Rows of one partition class, in enumeration order, then its share of
    the all-zero block."""
    spec = default_partition_spec(k, n, class_sizes)
    want = type_index(tuple(tau), n)
    if not (0 <= want < (n - 1) ** spec.gamma) or len(tau) != spec.gamma:
        raise InfeasibleError(f"type {tau} is not a {spec.gamma}-tuple over Z_{n - 1}")
    for batch in stream_tuples(k, n, batch_rows):
        keep = batch[row_types(batch, spec) == want]
        if keep.shape[0]:
            yield keep
    parts = (n - 1) ** spec.gamma
    m = enumeration_repeats(k, n)
    if m % parts != 0:
        raise InfeasibleError("constant rows do not split evenly across classes")
    share = m // parts
    while share > 0:
        take = min(share, batch_rows)
        yield np.zeros((take, k), dtype=np.int8)
        share -= take


def multi_partition_oa(k: int, n: int,
                       class_sizes: tuple[int, ...] | None = None,
                       max_rows: int = DEFAULT_MATERIALIZE_LIMIT) -> list[OrthogonalArray]:
    """Materialize all (n-1)^gamma classes, in lexicographic type order."""
    spec = default_partition_spec(k, n, class_sizes)
    lam_part = partition_lambda(k, n, spec.gamma)
    total = enumeration_lambda(k, n) * n * n
    if total > max_rows:
        raise MaterializeLimitError(
            f"partition source has {total} rows (> {max_rows}); "
            "use stream_partition_class()")
    parts = (n - 1) ** spec.gamma
    m = enumeration_repeats(k, n)
    if m % parts != 0:
        raise InfeasibleError("constant rows do not split evenly across classes")
    share = m // parts
    buckets: list[list[np.ndarray]] = [[] for _ in range(parts)]
    for batch in stream_tuples(k, n):
        idx = row_types(batch, spec)
        for t in range(parts):
            sel = batch[idx == t]
            if sel.shape[0]:
                buckets[t].append(sel)
    out = []
    for t in range(parts):
        rows = np.concatenate(buckets[t] + [np.zeros((share, k), dtype=np.int8)])
        out.append(OrthogonalArray(k=k, n=n, lam=lam_part, rows=rows))
    return out


def partition_oa(k: int, n: int,
                 max_rows: int = DEFAULT_MATERIALIZE_LIMIT) -> list[OrthogonalArray]:
    """Single-class split into n-1 arrays by the total shifted-symbol sum.

    The one exception is (k, n) = (3, 2), where the class-size requirement
    cannot hold but the split is trivially the whole array.
    """
    if (k, n) == (3, 2):
        return [enumerate_oa(3, 2)]
    return multi_partition_oa(k, n, class_sizes=(k,), max_rows=max_rows)


def shift_bijection(row, class_sizes, kappa, n: int):
    """Add kappa_i (mod n-1) to the first non-fixed entry past each class's
    second column; all other entries are untouched.

    Operates on the {INFINITY} u Z_{n-1} alphabet.  This is the bijection
    between partition classes of types tau and tau+kappa: it is invertible
    (apply -kappa) and preserves the first two columns of every class.
    """
    row = list(int(v) for v in row)
    sizes = tuple(int(s) for s in class_sizes)
    if sum(sizes) != len(row):
        raise ValueError(f"class sizes {sizes} do not cover a row of length {len(row)}")
    if len(kappa) != len(sizes):
        raise ValueError("need one shift per class")
    lo = 0
    for size, shift in zip(sizes, kappa):
        target = None
        for j in range(lo + 2, lo + size):
            if row[j] != INFINITY:
                target = j
                break
        if target is None:
            raise ValueError(
                f"no shiftable entry past the second column of class at {lo}..{lo + size - 1}")
        row[target] = (row[target] + shift) % (n - 1)
        lo += size
    return tuple(row)

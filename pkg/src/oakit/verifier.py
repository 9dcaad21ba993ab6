"""Ground-truth checking by exhaustive pair counting.

Two independent implementations live here: a whole-array vectorized check
(`verify_strength2`) and an incremental one (`StreamingVerifier`) that
accepts row batches and never needs the full array in memory.  They must
produce identical reports; the test suite holds them to that and to a third,
naive recount.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import gcd

import numpy as np

from .bounds import floor_bound, rao_repeat_bound
from .designs import OrthogonalArray


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of exhaustive strength-2 verification plus repeated-row and
    zero-count analysis.

    ``offending`` is a ((col_i, col_j), (sym_x, sym_y), count) witness of the
    first failed joint count, in lexicographic scan order; present exactly
    when ``is_oa`` is false.  ``zero_count_histogram`` counts zeros per row
    over the rows left after removing the m_observed copies of the repeated
    row.  ``classification`` is a subset of {"optimal", "basic", "m-optimal"}
    and is empty when the array fails verification.
    """

    is_oa: bool
    lambda_observed: int | None
    offending: tuple[tuple[int, int], tuple[int, int], int] | None
    m_observed: int | None
    repeated: tuple[int, ...] | None
    zero_count_histogram: dict[int, int]
    classification: frozenset[str]


def _pair_counts(rows: np.ndarray, n: int, i: int, j: int) -> np.ndarray:
    codes = rows[:, i].astype(np.int32) * n + rows[:, j]
    return np.bincount(codes, minlength=n * n).reshape(n, n)


def repeated_row(a: OrthogonalArray) -> tuple[tuple[int, ...], int]:
    """A row of maximum multiplicity and that multiplicity; ties go to the
    lexicographically smallest row."""
    uniq, counts = np.unique(a.rows, axis=0, return_counts=True)
    best = int(counts.argmax())  # unique() sorts rows, so argmax is lex-least
    return tuple(int(v) for v in uniq[best]), int(counts[best])


def _zero_histogram(rows: np.ndarray, witness: tuple[int, ...], mult: int) -> dict[int, int]:
    zeros = (rows == 0).sum(axis=1)
    hist = Counter(int(z) for z in zeros)
    wz = sum(1 for v in witness if v == 0)
    hist[wz] -= mult
    if hist[wz] == 0:
        del hist[wz]
    return dict(sorted(hist.items()))


def _labels(k: int, n: int, lam: int, mult: int) -> frozenset[str]:
    labels = set()
    if mult == rao_repeat_bound(k, n, lam):
        labels.add("optimal")
        if gcd(mult, lam) == 1:
            labels.add("basic")
    if mult == floor_bound(k, n, lam):
        labels.add("m-optimal")
    return frozenset(labels)


def classify(a: OrthogonalArray, m_observed: int | None = None) -> frozenset[str]:
    """Labels for a verified array: optimal iff the rational bound is met
    exactly, basic iff optimal with gcd(m, lambda) = 1, m-optimal iff the
    floor bound is met."""
    if m_observed is None:
        _, m_observed = repeated_row(a)
    return _labels(a.k, a.n, a.lam, m_observed)


def verify_strength2(a: OrthogonalArray) -> VerificationReport:
    """Count every ordered symbol pair in every unordered column pair.

    The array is an OA iff all k(k-1)/2 * n^2 joint counts equal a.lam.
    Runs in O(lambda * n^2 * k^2); there are no shortcuts here on purpose.
    """
    rows, n, lam = a.rows, a.n, a.lam
    offending = None
    for i, j in combinations(range(a.k), 2):
        counts = _pair_counts(rows, n, i, j)
        if (counts != lam).any():
            x, y = np.argwhere(counts != lam)[0]
            offending = ((i, j), (int(x), int(y)), int(counts[x, y]))
            break
    witness, mult = repeated_row(a)
    is_oa = offending is None
    return VerificationReport(
        is_oa=is_oa,
        lambda_observed=lam if is_oa else None,
        offending=offending,
        m_observed=mult,
        repeated=witness,
        zero_count_histogram=_zero_histogram(rows, witness, mult),
        classification=classify(a, mult) if is_oa else frozenset(),
    )


def zero_count_check(a: OrthogonalArray) -> bool:
    """True iff every row besides the repeated block has exactly (k-1)/n
    zeros.  The repeated row must already be the all-zero row; relabel first
    if it is not."""
    witness, mult = repeated_row(a)
    if any(v != 0 for v in witness):
        raise ValueError("repeated row is not the all-zero row; relabel the array first")
    if (a.k - 1) % a.n != 0:
        return False
    abar = (a.k - 1) // a.n
    hist = _zero_histogram(a.rows, witness, mult)
    return set(hist) <= {abar}


class StreamingVerifier:
    """Incremental pair counting for arrays fed as row batches.

    Feed batches with update(); result() produces the same report
    verify_strength2 would have produced on the concatenation.  With
    ``track_rows=False`` only the pair counts are maintained (for streams too
    large to keep a row-multiplicity table): the multiplicity, witness,
    histogram and classification fields are then left empty.
    """

    def __init__(self, k: int, n: int, lam: int, track_rows: bool = True):
        if k < 2 or n < 2 or lam < 1:
            raise ValueError("need k >= 2, n >= 2, lambda >= 1")
        self.k, self.n, self.lam = k, n, lam
        self.track_rows = track_rows
        self.pairs = list(combinations(range(k), 2))
        self.counts = np.zeros((len(self.pairs), n, n), dtype=np.int64)
        self.rows_seen = 0
        self._mult: Counter = Counter()
        self._zeros: Counter = Counter()

    def update(self, batch: np.ndarray) -> None:
        batch = np.asarray(batch)
        if batch.ndim != 2 or batch.shape[1] != self.k:
            raise ValueError(f"batch must be rows of width {self.k}")
        n = self.n
        for p, (i, j) in enumerate(self.pairs):
            codes = batch[:, i].astype(np.int32) * n + batch[:, j]
            self.counts[p] += np.bincount(codes, minlength=n * n).reshape(n, n)
        self.rows_seen += batch.shape[0]
        if self.track_rows:
            data = np.ascontiguousarray(batch, dtype=np.int8).tobytes()
            k = self.k
            self._mult.update(data[i * k:(i + 1) * k] for i in range(batch.shape[0]))
            zeros = (batch == 0).sum(axis=1)
            self._zeros.update(int(z) for z in zeros)

    def result(self) -> VerificationReport:
        # a wrong total row count necessarily breaks some joint count, so the
        # plain scan below covers it
        offending = None
        for p, (i, j) in enumerate(self.pairs):
            bad = np.argwhere(self.counts[p] != self.lam)
            if bad.size:
                x, y = bad[0]
                offending = ((i, j), (int(x), int(y)), int(self.counts[p, x, y]))
                break
        is_oa = offending is None
        witness = mult = None
        hist: dict[int, int] = {}
        classification: frozenset[str] = frozenset()
        if self.track_rows and self._mult:
            best = max(self._mult.values())
            key = min(b for b, c in self._mult.items() if c == best)
            witness = tuple(int(v) for v in np.frombuffer(key, dtype=np.int8))
            mult = int(best)
            hist = Counter(self._zeros)
            wz = sum(1 for v in witness if v == 0)
            hist[wz] -= mult
            if hist[wz] == 0:
                del hist[wz]
            hist = dict(sorted(hist.items()))
            if is_oa:
                classification = _labels(self.k, self.n, self.lam, mult)
        return VerificationReport(
            is_oa=is_oa,
            lambda_observed=self.lam if is_oa else None,
            offending=offending,
            m_observed=mult,
            repeated=witness,
            zero_count_histogram=hist,
            classification=classification,
        )

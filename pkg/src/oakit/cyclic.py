"""Cyclic constructions: develop starting rows into full arrays, check
candidate rows through their distance profile without building the array,
and search for starting rows by backtracking.

A starting-row set has m rows over {fixed point} u Z_{n-1}.  Development
takes all k rotations of every row, adds each constant of Z_{n-1} to the
non-fixed entries (the fixed point stays put), adjoins m constant rows and
maps onto {0..n-1} (fixed point -> 0, z -> z+1).  For n = 2 the modular
stage is trivial and this is pure rotation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .designs import INFINITY, InfeasibleError, OrthogonalArray, Quadruple, StartingRowSet
from .verifier import verify_strength2


def develop(s: StartingRowSet) -> OrthogonalArray:
    """Expand a starting-row set into the full m(k(n-1)+1)-row array.

    The constant rows come first, then per base row, per rotation, per
    development constant.  Raises InfeasibleError when m(k(n-1)+1) is not a
    multiple of n^2, i.e. when no index lambda fits the row count.
    """
    k, n, m = s.k, s.n, s.m
    total = m * (k * (n - 1) + 1)
    if total % (n * n) != 0:
        raise InfeasibleError(
            f"m(k(n-1)+1) = {total} is not a multiple of n^2 = {n * n}")
    lam = total // (n * n)
    out = np.zeros((total, k), dtype=np.int8)
    idx = m
    for base in s.base_rows:
        fixed = base == INFINITY
        for shift in range(k):
            rot = np.roll(base, shift)
            rot_fixed = np.roll(fixed, shift)
            for c in range(n - 1):
                row = np.where(rot_fixed, 0, (rot + c) % (n - 1) + 1)
                out[idx] = row
                idx += 1
    return OrthogonalArray(k=k, n=n, lam=lam, rows=out)


# ---------------------------------------------------------------------------
# distance profile
# ---------------------------------------------------------------------------

def _developed_pairs(n: int) -> list[list[list[int]]]:
    """dev[x][y] = flat count indices touched by a base pair (x, y), one per
    development constant.  Symbols are in the canonical encoding (0 = fixed
    point, 1..n-1 = shifted residues)."""
    def sigma(v: int, c: int) -> int:
        return 0 if v == 0 else ((v - 1 + c) % (n - 1)) + 1

    table = [[None] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            table[x][y] = [sigma(x, c) * n + sigma(y, c) for c in range(n - 1)]
    return table


@dataclass(frozen=True)
class DistanceProfile:
    """Aggregated developed pair counts at every cyclic distance.

    ``counts[d]`` is an n x n table over the canonical alphabet: entry (x, y)
    counts, over all base rows, positions i and development constants, the
    developed pair at positions (i, i+d mod k).  Each distance's total is
    (number of base rows) * k * (n-1)."""

    k: int
    n: int
    counts: dict[int, np.ndarray]

    def count(self, d: int, x: int, y: int) -> int:
        return int(self.counts[d][x, y])


def distance_profile(s: StartingRowSet) -> DistanceProfile:
    k, n = s.k, s.n
    dev = _developed_pairs(n)
    counts = {d: np.zeros((n, n), dtype=np.int64) for d in range(1, k // 2 + 1)}
    canon = np.where(s.base_rows == INFINITY, 0, s.base_rows + 1)
    for row in canon:
        for d in range(1, k // 2 + 1):
            flat = counts[d].reshape(-1)
            for i in range(k):
                x, y = int(row[i]), int(row[(i + d) % k])
                for code in dev[x][y]:
                    flat[code] += 1
    return DistanceProfile(k=k, n=n, counts=counts)


def distance_check(s: StartingRowSet, target_lambda: int) -> tuple[bool, DistanceProfile]:
    """Decide, from pair counts at each cyclic distance alone, whether the
    developed array is an OA of the given index.

    The rotations of a base row contribute to two columns at distance d
    exactly its distance-d pairs, so uniformity of the profile (after adding
    the m constant rows to the (0,0) cell) is equivalent to running develop()
    and verifying — which the test suite double-checks.  At distance k/2
    (even k) each unordered position pair is seen from both sides, which the
    all-positions count already folds in.
    """
    profile = distance_profile(s)
    ok = True
    for d, table in profile.counts.items():
        want = np.full((s.n, s.n), target_lambda, dtype=np.int64)
        want[0, 0] -= s.m
        if not np.array_equal(table, want):
            ok = False
            break
    return ok, profile


# ---------------------------------------------------------------------------
# backtracking search
# ---------------------------------------------------------------------------

#: refuse searches whose candidate-row table would not fit desk scale
SEARCH_CANDIDATE_LIMIT = 5_000_000


def _lex_le_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Per-row lexicographic a <= b for equal-shape matrices."""
    neq = a != b
    any_neq = neq.any(axis=1)
    first = np.where(any_neq, neq.argmax(axis=1), 0)
    r = np.arange(a.shape[0])
    return ~any_neq | (a[r, first] < b[r, first])


def _candidate_rows(k: int, n: int, abar: int) -> np.ndarray:
    """All rows with exactly abar fixed points, canonical encoding, sorted
    lexicographically (so index order is row order)."""
    width = k - abar
    count = (n - 1) ** width
    idx = np.arange(count, dtype=np.int64)[:, None]
    powers = (n - 1) ** np.arange(width - 1, -1, -1, dtype=np.int64)
    block = (1 + (idx // powers) % (n - 1)).astype(np.int8)
    out = []
    for zeros in combinations(range(k), abar):
        rows = np.zeros((count, k), dtype=np.int8)
        rows[:, [c for c in range(k) if c not in zeros]] = block
        out.append(rows)
    cand = np.concatenate(out)
    return cand[np.lexsort(cand.T[::-1])]


def _profiles(cand: np.ndarray, n: int, ndist: int) -> np.ndarray:
    """Compressed distance-profile contribution of every candidate row.

    After development a row's full n x n count table at distance d is
    determined by four statistics: the number of fixed-fixed position pairs,
    of fixed-left pairs, of fixed-right pairs, and, for the block of pairs
    avoiding the fixed point, the count on each difference diagonal (a base
    pair (u, v) lands on every cell with y - x = v - u mod n-1).  Matching
    these per distance is therefore equivalent to matching the full table,
    at a fraction of the width.  Layout per distance: [ff, fl, fr,
    diag_0 .. diag_{n-2}], scaled so that summing candidate vectors and
    comparing against _profile_target is exact.
    """
    count, k = cand.shape
    width = 3 + (n - 1)
    prof = np.empty((count, ndist, width), dtype=np.int16)
    rows32 = cand.astype(np.int32)
    fixed = cand == 0
    for d in range(1, ndist + 1):
        right = np.roll(rows32, -d, axis=1)
        rfix = np.roll(fixed, -d, axis=1)
        ff = fixed & rfix
        prof[:, d - 1, 0] = ff.sum(axis=1)
        prof[:, d - 1, 1] = (fixed & ~rfix).sum(axis=1)
        prof[:, d - 1, 2] = (~fixed & rfix).sum(axis=1)
        both = ~fixed & ~rfix
        diff = (right - rows32) % (n - 1)
        for delta in range(n - 1):
            prof[:, d - 1, 3 + delta] = (both & (diff == delta)).sum(axis=1)
    return prof.reshape(count, ndist * width)


def _profile_target(n: int, ndist: int, m: int, lam: int) -> np.ndarray:
    """Per-distance compressed target: the developed table must be lam
    everywhere except lam - m at the fixed-fixed cell.  In compressed terms:
    ff*(n-1) = lam - m, fl = fr = lam, each diagonal sum = lam."""
    width = 3 + (n - 1)
    target = np.full((ndist, width), lam, dtype=np.int16)
    if (lam - m) % (n - 1) != 0:
        return np.full((ndist, width), -1, dtype=np.int16)  # unsatisfiable
    target[:, 0] = (lam - m) // (n - 1)
    return target.reshape(-1)


def search_starting_rows(k: int, n: int, m: int, lam: int,
                         limit: int | None = 1) -> list[StartingRowSet]:
    """Backtracking over base rows for sets that develop into an OA_lam(k, n)
    with the constant row repeated m times.

    Candidate rows are those with exactly (k-1)/n fixed points (forced: the
    developed array would be optimal, so its non-repeated rows carry exactly
    that many zeros), taken in lexicographic order.  A partial set is pruned
    as soon as its accumulated distance profile exceeds the target anywhere;
    the final row is found by exact profile complement.  Canonical form:
    the first row is minimal among its rotations and rows are lexicographically
    nondecreasing; candidates are tried ascending, so results come out
    deterministic and lexicographically least first.

    Returns up to ``limit`` sets (all of them for limit=None); an empty list
    means the canonical search space was exhausted.  Every returned set is
    re-checked by develop + verify_strength2 before being reported.
    """
    quad = Quadruple(m=m, lam=lam, k=k, n=n)
    if not quad.is_feasible:
        raise InfeasibleError(f"(m={m}, lambda={lam}, k={k}, n={n}) is not a feasible quadruple")
    abar = (k - 1) // n
    n_cand = comb(k, abar) * (n - 1) ** (k - abar)
    if n_cand > SEARCH_CANDIDATE_LIMIT:
        raise InfeasibleError(
            f"{n_cand} candidate rows exceed the desk-scale search limit")
    ndist = k // 2
    cand = _candidate_rows(k, n, abar)
    prof = _profiles(cand, n, ndist)
    target = _profile_target(n, ndist, m, lam)
    if (target < 0).any():
        return []

    # first-row canonical mask: minimal among all rotations
    rot_min = np.ones(len(cand), dtype=bool)
    for s in range(1, k):
        rot_min &= _lex_le_rows(cand, np.roll(cand, s, axis=1))

    # exact-complement index for the last slot
    flat = np.ascontiguousarray(prof)
    grouped: dict[bytes, list[int]] = {}
    for i in range(len(cand)):
        grouped.setdefault(flat[i].tobytes(), []).append(i)
    by_profile = {key: np.array(v, dtype=np.int64) for key, v in grouped.items()}

    results: list[StartingRowSet] = []
    chosen: list[int] = []

    def emit(indices: list[int]) -> bool:
        found = StartingRowSet(
            k=k, n=n, m=m,
            base_rows=(cand[indices].astype(np.int16) - 1).astype(np.int8))
        report = verify_strength2(develop(found))
        if not report.is_oa:  # profile algebra guarantees this; trust nothing
            raise AssertionError("search produced a set that fails verification")
        results.append(found)
        return limit is not None and len(results) >= limit

    # (slot, remaining) -> lowest floor known to yield no solutions; pools
    # only shrink as the floor rises, so any revisit at or above that floor
    # is hopeless.  Candidates sharing a profile hit the same key, which
    # collapses the heavy degeneracy of the profile map.
    barren: dict[tuple[int, bytes], int] = {}

    def dfs(slot: int, floor: int, remaining: np.ndarray, live: np.ndarray) -> bool:
        """live: ascending candidate indices still under the parent's budget;
        feasibility only shrinks down the tree, so children filter live
        rather than the whole table."""
        if slot == m - 1:
            hit = by_profile.get(remaining.tobytes())
            if hit is None:
                return False
            for i in hit[np.searchsorted(hit, floor):]:
                if slot == 0 and not rot_min[i]:
                    continue
                if emit(chosen + [int(i)]):
                    return True
            return False
        live = live[np.searchsorted(live, floor):]
        live = live[(prof[live] <= remaining).all(axis=1)]
        order = live
        if slot == 0:
            order = live[rot_min[live]]
        for i in order:
            i = int(i)
            child_rem = remaining - prof[i]
            key = (slot + 1, child_rem.tobytes())
            failed_at = barren.get(key)
            if failed_at is not None and failed_at <= i:
                continue
            before = len(results)
            chosen.append(i)
            if dfs(slot + 1, i, child_rem, live):
                return True
            chosen.pop()
            if len(results) == before and (failed_at is None or i < failed_at):
                barren[key] = i
        return False

    dfs(0, 0, target.copy(), np.arange(len(cand), dtype=np.int64))
    return results

"""Shared fixtures: the paper-derived corpus of arrays plus a naive
recount oracle that is deliberately independent of the library verifier."""

import io
from pathlib import Path

import numpy as np
import pytest

from oakit import (OrthogonalArray, StartingRowSet, basic_oa_from_hadamard,
                   develop, enumerate_oa, read_oa, read_starting_rows)

DATA = Path(__file__).parent / "data"

# Published starting rows, in START format.  The binary sets use '*' for the
# repeated symbol; the development maps '*' -> 0 and z -> z+1.
START_5_2 = """\
START 5 2 2
* * 0 0 0
* 0 * 0 0
"""

START_9_2 = """\
START 9 2 2
* * * 0 * 0 0 0 0
* * 0 0 * 0 * 0 0
"""

START_13_2 = """\
START 13 2 2
* * * * 0 * 0 0 0 * 0 0 0
* * 0 * 0 0 * * 0 0 0 * 0
"""

START_17_2 = """\
START 17 2 2
* * * * * 0 * 0 0 0 * 0 0 * 0 0 0
* * * 0 * 0 0 * 0 * 0 0 * * 0 0 0
"""

# The printed rows for the 45-row ternary example; see test_cyclic for what
# actually happens when these are developed.
START_7_3 = """\
START 7 3 3
* * 0 0 0 0 1
* 1 * 0 1 1 0
* 1 1 * 1 0 1
"""

START_9_4 = """\
START 9 4 4
* * 0 0 0 0 1 0 2
* 0 * 1 0 0 1 2 1
* 0 1 * 1 1 0 1 2
* 0 0 2 * 2 1 1 2
"""


def starting_rows(text: str) -> StartingRowSet:
    return read_starting_rows(io.StringIO(text))


def naive_verify(rows, n):
    """Dictionary recount over ordered column pairs; the independent oracle.

    Returns (is_oa, lam): lam is rows/n^2 when uniform, else None.
    """
    rows = [tuple(int(v) for v in r) for r in rows]
    count = len(rows)
    if count % (n * n) != 0:
        return False, None
    lam = count // (n * n)
    k = len(rows[0])
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            seen = {}
            for r in rows:
                key = (r[i], r[j])
                seen[key] = seen.get(key, 0) + 1
            for x in range(n):
                for y in range(n):
                    if seen.get((x, y), 0) != lam:
                        return False, None
    return True, lam


def naive_max_multiplicity(rows):
    seen = {}
    for r in rows:
        key = tuple(int(v) for v in r)
        seen[key] = seen.get(key, 0) + 1
    return max(seen.values())


@pytest.fixture(scope="session")
def figure1():
    return develop(starting_rows(START_5_2))


@pytest.fixture(scope="session")
def oa_1_3_2():
    rows = np.array([[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]], dtype=np.int8)
    return OrthogonalArray(k=3, n=2, lam=1, rows=rows)


@pytest.fixture(scope="session")
def oa_5_7_3():
    return read_oa(DATA / "oa_5_7_3.txt")


@pytest.fixture(scope="session")
def stacked_figure1(figure1):
    rows = np.vstack([figure1.rows, figure1.rows])
    return OrthogonalArray(k=5, n=2, lam=6, rows=rows)


@pytest.fixture(scope="session")
def corpus(figure1, oa_1_3_2, oa_5_7_3):
    """Name -> verified-OA candidates used by the cross-checking suites.
    Everything here is strength 2 (asserted by the tests, not here)."""
    items = {
        "figure1": figure1,
        "oa_1_3_2": oa_1_3_2,
        "oa_5_7_3": oa_5_7_3,
        "cyclic_9_2": develop(starting_rows(START_9_2)),
        "cyclic_13_2": develop(starting_rows(START_13_2)),
        "cyclic_17_2": develop(starting_rows(START_17_2)),
        "cyclic_9_4": develop(starting_rows(START_9_4)),
        "enum_5_2": enumerate_oa(5, 2),
        "enum_7_3": enumerate_oa(7, 3),
        "enum_9_2": enumerate_oa(9, 2),
    }
    for t in (1, 2, 3, 4):
        items[f"hadamard_t{t}"] = basic_oa_from_hadamard(t)
    return items

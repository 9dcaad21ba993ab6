"""Core domain types and their text file formats.

All arrays live on the canonical alphabet {0, ..., n-1} with 0 as the
repeated symbol.  The fixed point used by cyclic developments is a
presentation device and is encoded internally by the sentinel
``INFINITY`` (-1); mapping to the canonical alphabet sends the fixed
point to 0 and z to z+1.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import IO, Iterable, Union

import numpy as np

#: sentinel for the fixed point in starting-row alphabets
INFINITY = -1

Source = Union[str, os.PathLike, IO]


class FormatError(ValueError):
    """A design file does not match its declared format."""


class InfeasibleError(ValueError):
    """Parameters violate a feasibility or domain condition."""


def _as_rows(rows, dtype=np.int8) -> np.ndarray:
    arr = np.asarray(rows, dtype=dtype)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d row matrix, got shape {arr.shape}")
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False, repr=False)
class OrthogonalArray:
    """A lambda*n^2 x k symbol matrix over {0, ..., n-1}.

    Construction checks shape and symbol range only; the strength-2
    property is the verifier's job, never assumed here.
    """

    k: int
    n: int
    lam: int
    rows: np.ndarray

    def __post_init__(self):
        if self.k < 2 or self.n < 2 or self.lam < 1:
            raise ValueError(f"need k >= 2, n >= 2, lambda >= 1, got "
                             f"({self.k}, {self.n}, {self.lam})")
        if self.n > 127:
            raise ValueError("alphabet sizes beyond 127 are outside desk scale")
        rows = _as_rows(self.rows)
        object.__setattr__(self, "rows", rows)
        expected = self.lam * self.n * self.n
        if rows.shape != (expected, self.k):
            raise ValueError(
                f"row matrix is {rows.shape[0]}x{rows.shape[1]}, expected "
                f"{expected}x{self.k} for lambda={self.lam}, n={self.n}")
        if rows.size and (rows.min() < 0 or rows.max() >= self.n):
            raise ValueError(f"symbols must lie in [0, {self.n - 1}]")

    @property
    def row_count(self) -> int:
        return self.rows.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrthogonalArray):
            return NotImplemented
        return (self.k, self.n, self.lam) == (other.k, other.n, other.lam) \
            and np.array_equal(self.rows, other.rows)

    def __repr__(self) -> str:
        return f"OrthogonalArray(k={self.k}, n={self.n}, lambda={self.lam}, rows={self.row_count})"


@dataclass(frozen=True)
class Quadruple:
    """Parameter quadruple (m, lambda, k, n) with the feasibility calculus.

    Feasible means m*(k(n-1)+1) = lambda*n^2 holds exactly and
    abar = (k-1)/n is a positive integer; basic additionally requires
    gcd(m, lambda) = 1.
    """

    m: int
    lam: int
    k: int
    n: int

    @property
    def abar(self) -> Fraction:
        return Fraction(self.k - 1, self.n)

    @property
    def rho(self) -> Fraction:
        return Fraction(self.n * self.n, self.k * (self.n - 1) + 1)

    @property
    def is_feasible(self) -> bool:
        if self.k < 2 or self.n < 2 or self.m < 1 or self.lam < 1:
            return False
        if self.m * (self.k * (self.n - 1) + 1) != self.lam * self.n * self.n:
            return False
        return self.abar.denominator == 1 and self.abar >= 1

    @property
    def is_basic(self) -> bool:
        return self.is_feasible and gcd(self.m, self.lam) == 1


@dataclass(frozen=True, eq=False, repr=False)
class StartingRowSet:
    """Generator rows for a cyclic construction.

    ``base_rows`` is an m x k matrix over {INFINITY} u {0..n-2}; development
    rotates each row k times, adds every constant of Z_{n-1} to the non-fixed
    entries, adjoins m constant rows and maps onto the canonical alphabet.
    For n = 2 the modular part is trivial and development is pure rotation.
    """

    k: int
    n: int
    base_rows: np.ndarray
    m: int

    def __post_init__(self):
        if self.k < 2 or self.n < 2 or self.m < 1:
            raise ValueError("need k >= 2, n >= 2, m >= 1")
        if self.n > 127:
            raise ValueError("alphabet sizes beyond 127 are outside desk scale")
        rows = _as_rows(self.base_rows)
        object.__setattr__(self, "base_rows", rows)
        if rows.shape != (self.m, self.k):
            raise ValueError(f"base rows are {rows.shape}, expected ({self.m}, {self.k})")
        bad = (rows != INFINITY) & ((rows < 0) | (rows > self.n - 2))
        if bad.any():
            raise ValueError(f"entries must be '*' or integers in [0, {self.n - 2}]")

    def __eq__(self, other) -> bool:
        if not isinstance(other, StartingRowSet):
            return NotImplemented
        return (self.k, self.n, self.m) == (other.k, other.n, other.m) \
            and np.array_equal(self.base_rows, other.base_rows)

    def __repr__(self) -> str:
        return f"StartingRowSet(k={self.k}, n={self.n}, m={self.m})"


@dataclass(frozen=True, eq=False, repr=False)
class BlockDesign:
    """A (v, b, r, k, lambda) block design given by its b x v incidence matrix.

    All five invariants (row sums, column sums, pair coverage, bk = vr,
    lambda(v-1) = r(k-1)) are checked at construction.
    """

    v: int
    b: int
    r: int
    k_block: int
    lambda_d: int
    incidence: np.ndarray

    def __post_init__(self):
        inc = _as_rows(self.incidence)
        object.__setattr__(self, "incidence", inc)
        if inc.shape != (self.b, self.v):
            raise ValueError(f"incidence is {inc.shape}, expected ({self.b}, {self.v})")
        if inc.size and not np.isin(inc, (0, 1)).all():
            raise ValueError("incidence entries must be 0 or 1")
        if self.b * self.k_block != self.v * self.r:
            raise ValueError("bk = vr fails")
        if self.lambda_d * (self.v - 1) != self.r * (self.k_block - 1):
            raise ValueError("lambda(v-1) = r(k-1) fails")
        if not (inc.sum(axis=1) == self.k_block).all():
            raise ValueError("every block must have size k")
        if not (inc.sum(axis=0) == self.r).all():
            raise ValueError("every point must lie in r blocks")
        gram = inc.T.astype(np.int64) @ inc.astype(np.int64)
        off = gram[~np.eye(self.v, dtype=bool)]
        if off.size and not (off == self.lambda_d).all():
            raise ValueError("some point pair is not covered exactly lambda times")

    def __eq__(self, other) -> bool:
        if not isinstance(other, BlockDesign):
            return NotImplemented
        return (self.v, self.b, self.r, self.k_block, self.lambda_d) == \
            (other.v, other.b, other.r, other.k_block, other.lambda_d) \
            and np.array_equal(self.incidence, other.incidence)

    def __repr__(self) -> str:
        return (f"BlockDesign(v={self.v}, b={self.b}, r={self.r}, "
                f"k={self.k_block}, lambda={self.lambda_d})")


@dataclass(frozen=True, eq=False, repr=False)
class HadamardMatrix:
    """A +-1 square matrix H with H H^T = order * I (checked exactly)."""

    order: int
    entries: np.ndarray

    def __post_init__(self):
        ent = _as_rows(self.entries)
        object.__setattr__(self, "entries", ent)
        if ent.shape != (self.order, self.order):
            raise ValueError(f"entries are {ent.shape}, expected square of order {self.order}")
        if not np.isin(ent, (-1, 1)).all():
            raise ValueError("entries must be +1 or -1")
        prod = ent.astype(np.int64) @ ent.astype(np.int64).T
        if not np.array_equal(prod, self.order * np.eye(self.order, dtype=np.int64)):
            raise ValueError("rows are not orthogonal: H H^T != order * I")

    def __eq__(self, other) -> bool:
        if not isinstance(other, HadamardMatrix):
            return NotImplemented
        return self.order == other.order and np.array_equal(self.entries, other.entries)

    def __repr__(self) -> str:
        return f"HadamardMatrix(order={self.order})"


def canonical_to_infinity(rows) -> np.ndarray:
    """Map canonical symbols to the fixed-point alphabet: 0 -> INFINITY,
    z -> z-1."""
    arr = np.asarray(rows, dtype=np.int8)
    return (arr.astype(np.int16) - 1).astype(np.int8)


def infinity_to_canonical(rows) -> np.ndarray:
    """Inverse of canonical_to_infinity: INFINITY -> 0, z -> z+1."""
    arr = np.asarray(rows, dtype=np.int8)
    return (arr.astype(np.int16) + 1).astype(np.int8)


# ---------------------------------------------------------------------------
# text formats
#
# OA:    "OA <k> <n> <lambda>"   then lambda*n^2 lines of k space-separated ints
# BIBD:  "BIBD <v> <b> <r> <k> <lambda>"  then b lines of v chars from {0,1}
# HAD:   "HAD <order>"           then order lines of order chars from {+,-}
# START: "START <k> <n> <m>"     then m lines of k tokens (int or '*')
#
# All newline-terminated ASCII, no trailing whitespace.   Lines starting
# with '#' are ignored on input (partition outputs carry a class label).
# ---------------------------------------------------------------------------


def _read_text(source: Source) -> str:
    if hasattr(source, "read"):
        data = source.read()
        return data.decode("ascii") if isinstance(data, bytes) else data
    with open(source, "r", encoding="ascii") as fh:
        return fh.read()


def _write_text(text: str, dest: Source | None) -> str | None:
    if dest is None:
        return text
    if hasattr(dest, "write"):
        try:
            dest.write(text)
        except TypeError:
            dest.write(text.encode("ascii"))
        return None
    with open(dest, "w", encoding="ascii") as fh:
        fh.write(text)
    return None


def _data_lines(text: str) -> list[str]:
    return [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _header(line: str, tag: str, nfields: int) -> list[int]:
    parts = line.split()
    if len(parts) != nfields + 1 or parts[0] != tag:
        raise FormatError(f"malformed header {line!r}, expected '{tag}' with {nfields} integers")
    try:
        return [int(p) for p in parts[1:]]
    except ValueError:
        raise FormatError(f"malformed header {line!r}: non-integer field") from None


def read_oa(source: Source) -> OrthogonalArray:
    """Parse the OA text format; raises FormatError on any malformation."""
    lines = _data_lines(_read_text(source))
    if not lines:
        raise FormatError("empty input")
    k, n, lam = _header(lines[0], "OA", 3)
    if k < 2 or n < 2 or lam < 1 or n > 127:
        raise FormatError(f"invalid parameters in header: k={k} n={n} lambda={lam}")
    body = lines[1:]
    if len(body) != lam * n * n:
        raise FormatError(f"expected {lam * n * n} rows, found {len(body)}")
    rows = np.empty((len(body), k), dtype=np.int8)
    for i, ln in enumerate(body):
        parts = ln.split()
        if len(parts) != k:
            raise FormatError(f"row {i + 1} has {len(parts)} symbols, expected {k}")
        try:
            vals = [int(p) for p in parts]
        except ValueError:
            raise FormatError(f"row {i + 1} contains a non-integer symbol") from None
        if any(v < 0 or v >= n for v in vals):
            raise FormatError(f"row {i + 1} has a symbol outside [0, {n - 1}]")
        rows[i] = vals
    return OrthogonalArray(k=k, n=n, lam=lam, rows=rows)


def format_oa_header(a_or_k, n: int | None = None, lam: int | None = None) -> str:
    if isinstance(a_or_k, OrthogonalArray):
        return f"OA {a_or_k.k} {a_or_k.n} {a_or_k.lam}\n"
    return f"OA {a_or_k} {n} {lam}\n"


def format_oa_rows(rows: np.ndarray | Iterable) -> str:
    return "".join(" ".join(str(int(v)) for v in row) + "\n" for row in rows)


def write_oa(a: OrthogonalArray, dest: Source | None = None) -> str | None:
    """Canonical OA text; round-trips bit-exactly through read_oa."""
    return _write_text(format_oa_header(a) + format_oa_rows(a.rows), dest)


def write_oa_stream(dest, k: int, n: int, lam: int, batches: Iterable,
                    comment: str | None = None) -> int:
    """Write an OA file from row batches without materializing the array.

    Produces exactly the bytes write_oa would (plus an optional leading
    comment line); returns the number of rows written so callers can check it
    against lam*n^2."""
    rows_written = 0
    with open(dest, "w", encoding="ascii") as fh:
        if comment:
            fh.write(f"# {comment}\n")
        fh.write(format_oa_header(k, n, lam))
        for batch in batches:
            fh.write(format_oa_rows(batch))
            rows_written += len(batch)
    return rows_written


def read_bibd(source: Source) -> BlockDesign:
    lines = _data_lines(_read_text(source))
    if not lines:
        raise FormatError("empty input")
    v, b, r, kb, lam = _header(lines[0], "BIBD", 5)
    body = lines[1:]
    if len(body) != b:
        raise FormatError(f"expected {b} blocks, found {len(body)}")
    inc = np.empty((b, v), dtype=np.int8)
    for i, ln in enumerate(body):
        if len(ln) != v or any(ch not in "01" for ch in ln):
            raise FormatError(f"block {i + 1} must be {v} characters from {{0,1}}")
        inc[i] = [int(ch) for ch in ln]
    try:
        return BlockDesign(v=v, b=b, r=r, k_block=kb, lambda_d=lam, incidence=inc)
    except ValueError as exc:
        raise FormatError(f"incidence violates design invariants: {exc}") from None


def write_bibd(d: BlockDesign, dest: Source | None = None) -> str | None:
    text = f"BIBD {d.v} {d.b} {d.r} {d.k_block} {d.lambda_d}\n"
    text += "".join("".join(str(int(x)) for x in row) + "\n" for row in d.incidence)
    return _write_text(text, dest)


def read_hadamard(source: Source) -> HadamardMatrix:
    lines = _data_lines(_read_text(source))
    if not lines:
        raise FormatError("empty input")
    (order,) = _header(lines[0], "HAD", 1)
    body = lines[1:]
    if len(body) != order:
        raise FormatError(f"expected {order} rows, found {len(body)}")
    ent = np.empty((order, order), dtype=np.int8)
    for i, ln in enumerate(body):
        if len(ln) != order or any(ch not in "+-" for ch in ln):
            raise FormatError(f"row {i + 1} must be {order} characters from {{+,-}}")
        ent[i] = [1 if ch == "+" else -1 for ch in ln]
    try:
        return HadamardMatrix(order=order, entries=ent)
    except ValueError as exc:
        raise FormatError(f"not a Hadamard matrix: {exc}") from None


def write_hadamard(h: HadamardMatrix, dest: Source | None = None) -> str | None:
    text = f"HAD {h.order}\n"
    text += "".join("".join("+" if x == 1 else "-" for x in row) + "\n" for row in h.entries)
    return _write_text(text, dest)


def read_starting_rows(source: Source) -> StartingRowSet:
    lines = _data_lines(_read_text(source))
    if not lines:
        raise FormatError("empty input")
    k, n, m = _header(lines[0], "START", 3)
    body = lines[1:]
    if len(body) != m:
        raise FormatError(f"expected {m} starting rows, found {len(body)}")
    rows = np.empty((m, k), dtype=np.int8)
    for i, ln in enumerate(body):
        parts = ln.split()
        if len(parts) != k:
            raise FormatError(f"row {i + 1} has {len(parts)} tokens, expected {k}")
        for j, tok in enumerate(parts):
            if tok == "*":
                rows[i, j] = INFINITY
            else:
                try:
                    val = int(tok)
                except ValueError:
                    raise FormatError(f"row {i + 1}: bad token {tok!r}") from None
                if val < 0 or val > n - 2:
                    raise FormatError(f"row {i + 1}: symbol {val} outside [0, {n - 2}]")
                rows[i, j] = val
    try:
        return StartingRowSet(k=k, n=n, base_rows=rows, m=m)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_starting_rows(s: StartingRowSet, dest: Source | None = None) -> str | None:
    text = f"START {s.k} {s.n} {s.m}\n"
    for row in s.base_rows:
        text += " ".join("*" if v == INFINITY else str(int(v)) for v in row) + "\n"
    return _write_text(text, dest)

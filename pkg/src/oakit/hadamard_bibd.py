"""Hadamard matrices and the pipeline to binary arrays with two repeated rows.

Order 8t+4 Hadamard matrix -> symmetric (8t+3, 4t+1, 2t) design -> derive at
one block and complement -> (4t+1, 2t+1, 2t+1) design -> stack two zero rows
on the incidence matrix.  The reverse extraction peels the zero rows off a
suitable array and recovers the design.

Implemented matrix constructions: Sylvester doubling, the two Paley types
over prime fields, and Kronecker products of anything already reachable.
Prime-power fields are deliberately out; orders needing them are reported
unreachable.
"""

from __future__ import annotations

import numpy as np

from .designs import BlockDesign, HadamardMatrix, OrthogonalArray
from .verifier import repeated_row, verify_strength2


class UnreachableOrderError(ValueError):
    """No implemented construction reaches the requested order."""


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    x = 2
    while x * x <= q:
        if q % x == 0:
            return False
        x += 1
    return True


def _quadratic_character(q: int) -> np.ndarray:
    """chi over Z_q: chi[0] = 0, chi[a] = +-1 by direct squaring."""
    chi = -np.ones(q, dtype=np.int8)
    chi[0] = 0
    for x in range(1, q):
        chi[(x * x) % q] = 1
    return chi


def _paley_core(q: int) -> np.ndarray:
    """q x q matrix Q with Q[i, j] = chi(j - i), zero diagonal."""
    chi = _quadratic_character(q)
    idx = (np.arange(q)[None, :] - np.arange(q)[:, None]) % q
    return chi[idx]


def _paley_one(q: int) -> np.ndarray:
    """Order q+1 for prime q = 3 mod 4."""
    o = q + 1
    H = np.ones((o, o), dtype=np.int8)
    H[1:, 0] = -1
    core = _paley_core(q)
    np.fill_diagonal(core, 1)
    H[1:, 1:] = core
    return H

def _paley_two(q: int) -> np.ndarray:
    """Order 2(q+1) for prime q = 1 mod 4, via the symmetric conference
    matrix with each entry blown up to a 2x2 block."""
    o = q + 1
    C = np.zeros((o, o), dtype=np.int8)
    C[0, 1:] = 1
    C[1:, 0] = 1
    C[1:, 1:] = _paley_core(q)
    A = np.array([[1, 1], [1, -1]], dtype=np.int8)
    B = np.array([[1, -1], [-1, -1]], dtype=np.int8)
    return np.kron(C, A) + np.kron(np.eye(o, dtype=np.int8), B)


def _build(order: int, memo: dict[int, np.ndarray | None]) -> np.ndarray | None:
    if order in memo:
        return memo[order]
    memo[order] = None  # cycle guard while recursing
    result = None
    if order == 1:
        result = np.ones((1, 1), dtype=np.int8)
    elif order == 2:
        result = np.array([[1, 1], [1, -1]], dtype=np.int8)
    elif order % 4 == 0:
        q = order - 1
        if _is_prime(q) and q % 4 == 3:
            result = _paley_one(q)
        if result is None and order % 2 == 0:
            q = order // 2 - 1
            if _is_prime(q) and q % 4 == 1:
                result = _paley_two(q)
        if result is None:
            half = _build(order // 2, memo)
            if half is not None:
                result = np.kron(np.array([[1, 1], [1, -1]], dtype=np.int8), half)
        if result is None:
            d = 4
            while d * d <= order:
                if order % d == 0:
                    a = _build(d, memo)
                    b = _build(order // d, memo)
                    if a is not None and b is not None:
                        result = np.kron(a, b)
                        break
                d += 1
    memo[order] = result
    return result


def hadamard(order: int) -> HadamardMatrix:
    """Construct a Hadamard matrix of the given order, deterministically.

    Tries, in order: Paley over q = order-1, Paley over q = order/2 - 1,
    doubling of order/2, and Kronecker splittings.  Orders of the form
    4j+2 > 2 are impossible; others outside the reach of these methods (92 is
    the first interesting one) raise UnreachableOrderError.
    """
    if order < 1:
        raise UnreachableOrderError(f"order must be positive, got {order}")
    if order > 2 and order % 4 != 0:
        raise UnreachableOrderError(
            f"order {order} is not 1, 2 or a multiple of 4, so no Hadamard matrix exists")
    entries = _build(order, {})
    if entries is None:
        raise UnreachableOrderError(
            f"order {order} not constructible by the implemented methods "
            "(Sylvester, prime-field Paley, Kronecker products)")
    return HadamardMatrix(order=order, entries=entries)


def hadamard_to_symmetric_bibd(h: HadamardMatrix) -> BlockDesign:
    """Normalize (columns first, then rows), strip the first row and column,
    and read +1/-1 as incidence.  Requires order 8t+4; yields the symmetric
    (8t+3, 4t+1, 2t) design."""
    order = h.order
    if order < 12 or (order - 4) % 8 != 0:
        raise ValueError(f"order must be of the form 8t+4 with t >= 1, got {order}")
    t = (order - 4) // 8
    m = h.entries.astype(np.int8)
    m = m * m[0:1, :]   # make the first row all +1
    m = m * m[:, 0:1]   # then the first column (row 0 is untouched)
    inc = ((m[1:, 1:] + 1) // 2).astype(np.int8)
    v = 8 * t + 3
    return BlockDesign(v=v, b=v, r=4 * t + 1, k_block=4 * t + 1,
                       lambda_d=2 * t, incidence=inc)


def derived_then_complement(d: BlockDesign, block_index: int = 0) -> BlockDesign:
    """Restrict all other blocks to a chosen block, then complement within
    that point set: symmetric (8t+3, 4t+1, 2t) -> (4t+1, 2t+1, 2t+1) with
    8t+2 blocks.  Any block index gives valid (isomorphic) parameters."""
    if d.v != d.b or d.r != d.k_block or (d.v - 3) % 8 != 0:
        raise ValueError(f"expected a symmetric (8t+3, 4t+1, 2t) design, got {d!r}")
    t = (d.v - 3) // 8
    if t < 1 or d.k_block != 4 * t + 1 or d.lambda_d != 2 * t:
        raise ValueError(f"expected a symmetric (8t+3, 4t+1, 2t) design, got {d!r}")
    if not (0 <= block_index < d.b):
        raise ValueError(f"block index {block_index} out of range")
    points = np.flatnonzero(d.incidence[block_index])
    others = np.delete(np.arange(d.b), block_index)
    derived = d.incidence[np.ix_(others, points)]
    comp = (1 - derived).astype(np.int8)
    return BlockDesign(v=4 * t + 1, b=8 * t + 2, r=4 * t + 2,
                       k_block=2 * t + 1, lambda_d=2 * t + 1, incidence=comp)


def bibd_to_oa(d: BlockDesign) -> OrthogonalArray:
    """Stack two all-zero rows on the incidence matrix of a
    (4t+1, 2t+1, 2t+1) design; the result is verified before returning."""
    if (d.v - 1) % 4 != 0:
        raise ValueError(f"expected a (4t+1, 2t+1, 2t+1) design, got {d!r}")
    t = (d.v - 1) // 4
    if t < 1 or d.k_block != 2 * t + 1 or d.lambda_d != 2 * t + 1 or d.b != 8 * t + 2:
        raise ValueError(f"expected a (4t+1, 2t+1, 2t+1) design with 8t+2 blocks, got {d!r}")
    rows = np.vstack([np.zeros((2, d.v), dtype=np.int8), d.incidence])
    a = OrthogonalArray(k=d.v, n=2, lam=2 * t + 1, rows=rows)
    report = verify_strength2(a)
    if not report.is_oa:
        raise AssertionError(f"pipeline produced a non-array: witness {report.offending}")
    return a


def oa_to_bibd(a: OrthogonalArray) -> BlockDesign:
    """Reverse extraction: drop the two all-zero rows of a basic
    OA_{2t+1}(4t+1, 2) and read the rest as block incidence."""
    if a.n != 2:
        raise ValueError("extraction needs a binary array")
    if (a.k - 1) % 4 != 0:
        raise ValueError(f"column count {a.k} is not of the form 4t+1")
    t = (a.k - 1) // 4
    if t < 1 or a.lam != 2 * t + 1:
        raise ValueError(f"expected index {2 * t + 1} for k = {a.k}, got {a.lam}")
    if not verify_strength2(a).is_oa:
        raise ValueError("input fails strength-2 verification")
    witness, mult = repeated_row(a)
    if mult != 2:
        raise ValueError(f"repeated-row multiplicity is {mult}, expected 2")
    if any(v != 0 for v in witness):
        raise ValueError("repeated row is not all-zero; relabel the array first")
    keep = ~(a.rows == 0).all(axis=1)
    inc = a.rows[keep]
    return BlockDesign(v=a.k, b=8 * t + 2, r=4 * t + 2,
                       k_block=2 * t + 1, lambda_d=2 * t + 1, incidence=inc)


def basic_oa_from_hadamard(t: int) -> OrthogonalArray:
    """Full chain for a given t >= 1: order 8t+4 matrix down to a verified
    basic OA_{2t+1}(4t+1, 2) with two repeated rows."""
    if t < 1:
        raise ValueError("t must be a positive integer")
    h = hadamard(8 * t + 4)
    design = derived_then_complement(hadamard_to_symmetric_bibd(h))
    return bibd_to_oa(design)

"""Hadamard construction routes and the design pipeline down to binary
arrays with a doubled row."""

import numpy as np
import pytest

from oakit import (UnreachableOrderError, basic_oa_from_hadamard, bibd_to_oa,
                   derived_then_complement, hadamard, hadamard_to_symmetric_bibd,
                   oa_to_bibd, repeated_row, verify_strength2)

from conftest import naive_verify

REACHABLE = [1, 2, 4, 8, 12, 16, 20, 24, 28, 32, 36, 40, 44, 48, 56, 60, 64]


@pytest.mark.parametrize("order", REACHABLE)
def test_reachable_orders_are_orthogonal(order):
    h = hadamard(order)  # the type itself checks H H^T = order * I
    assert h.order == order
    assert np.isin(h.entries, (-1, 1)).all()


def test_order_2_base_case():
    assert hadamard(2).entries.tolist() == [[1, 1], [1, -1]]


@pytest.mark.parametrize("order", [6, 10, 92, 52])
def test_unreachable_orders(order):
    with pytest.raises(UnreachableOrderError):
        hadamard(order)


def test_odd_order_rejected():
    with pytest.raises(UnreachableOrderError):
        hadamard(3)


def test_construction_is_deterministic():
    a = hadamard(24).entries
    b = hadamard(24).entries
    assert np.array_equal(a, b)


@pytest.mark.parametrize("t, v, kb, lam", [(1, 11, 5, 2), (2, 19, 9, 4), (3, 27, 13, 6)])
def test_symmetric_design_parameters(t, v, kb, lam):
    d = hadamard_to_symmetric_bibd(hadamard(8 * t + 4))
    assert (d.v, d.b, d.r, d.k_block, d.lambda_d) == (v, v, kb, kb, lam)


def test_symmetric_design_rejects_wrong_order():
    with pytest.raises(ValueError):
        hadamard_to_symmetric_bibd(hadamard(16))


@pytest.mark.parametrize("t, v, kb, lam, b", [(1, 5, 3, 3, 10), (2, 9, 5, 5, 18),
                                              (3, 13, 7, 7, 26)])
def test_derived_then_complement_parameters(t, v, kb, lam, b):
    sym = hadamard_to_symmetric_bibd(hadamard(8 * t + 4))
    d = derived_then_complement(sym)
    assert (d.v, d.b, d.r, d.k_block, d.lambda_d) == (v, b, 4 * t + 2, kb, lam)


def test_every_block_choice_works():
    for t in (1, 2):
        sym = hadamard_to_symmetric_bibd(hadamard(8 * t + 4))
        for index in range(sym.b):
            d = derived_then_complement(sym, block_index=index)
            assert (d.v, d.k_block, d.lambda_d) == (4 * t + 1, 2 * t + 1, 2 * t + 1)


def test_derived_rejects_bad_index():
    sym = hadamard_to_symmetric_bibd(hadamard(12))
    with pytest.raises(ValueError):
        derived_then_complement(sym, block_index=11)


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_full_pipeline(t):
    a = basic_oa_from_hadamard(t)
    assert (a.k, a.n, a.lam) == (4 * t + 1, 2, 2 * t + 1)
    report = verify_strength2(a)
    assert report.is_oa and report.m_observed == 2
    assert report.classification == {"optimal", "basic", "m-optimal"}
    ok, lam = naive_verify(a.rows, 2)
    assert ok and lam == 2 * t + 1


def test_figure1_to_design(figure1):
    d = oa_to_bibd(figure1)
    assert (d.v, d.b, d.r, d.k_block, d.lambda_d) == (5, 10, 6, 3, 3)


def test_design_array_round_trip():
    sym = hadamard_to_symmetric_bibd(hadamard(20))
    d = derived_then_complement(sym)
    a = bibd_to_oa(d)
    back = oa_to_bibd(a)
    original = sorted(map(tuple, d.incidence.tolist()))
    recovered = sorted(map(tuple, back.incidence.tolist()))
    assert original == recovered


def test_oa_to_bibd_rejects_stacked_array(stacked_figure1):
    # lambda = 6 does not fit 2t+1 for k = 5, and the repeat count is 4
    with pytest.raises(ValueError):
        oa_to_bibd(stacked_figure1)


def test_oa_to_bibd_rejects_nonzero_repeated_row(figure1):
    from oakit import OrthogonalArray
    flipped = OrthogonalArray(k=5, n=2, lam=3, rows=1 - figure1.rows)
    assert repeated_row(flipped)[0] == (1, 1, 1, 1, 1)
    with pytest.raises(ValueError, match="relabel"):
        oa_to_bibd(flipped)


def test_bibd_to_oa_rejects_wrong_parameters():
    sym = hadamard_to_symmetric_bibd(hadamard(12))
    with pytest.raises(ValueError):
        bibd_to_oa(sym)

"""Enumeration construction, its counting identities, and the partitions."""

from math import comb

import numpy as np
import pytest

from oakit import (InfeasibleError, MaterializeLimitError, PartitionSpec,
                   StreamingVerifier, abar_of, canonical_to_infinity,
                   default_partition_spec, enumerate_oa, enumeration_lambda,
                   enumeration_repeats, infinity_to_canonical, max_gamma,
                   multi_partition_oa, partition_lambda, partition_oa,
                   repeated_row, shift_bijection, stream_enumerate,
                   stream_partition_class, stream_tuples, tuple_count,
                   verify_strength2)

from conftest import naive_verify


def test_enumerate_7_3_shape_and_class():
    a = enumerate_oa(7, 3)
    assert a.lam == 80
    assert a.row_count == 720
    zero_rows = int((a.rows == 0).all(axis=1).sum())
    assert zero_rows == 48
    assert a.row_count - zero_rows == 672
    report = verify_strength2(a)
    assert report.is_oa and report.m_observed == 48
    assert "optimal" in report.classification
    assert "basic" not in report.classification  # gcd(48, 80) = 16


def test_enumerate_5_2_matches_the_formula():
    # lambda = C(3,1) * 1^2 = 3, so m = 12/6 = 2: the published 12-row shape
    a = enumerate_oa(5, 2)
    assert a.lam == 3
    assert repeated_row(a) == ((0, 0, 0, 0, 0), 2)
    assert verify_strength2(a).is_oa


def test_enumerate_9_2():
    a = enumerate_oa(9, 2)
    assert a.lam == comb(7, 3)
    assert enumeration_repeats(9, 2) == 14
    assert verify_strength2(a).is_oa


def test_enumerate_3_2_is_the_trivial_array(oa_1_3_2):
    a = enumerate_oa(3, 2)
    assert a.lam == 1
    assert sorted(map(tuple, a.rows.tolist())) == sorted(map(tuple, oa_1_3_2.rows.tolist()))


def test_enumerate_rows_follow_subset_major_order():
    # zero-position subsets ascend lexicographically; within a subset the
    # nonzero assignments ascend, so rows are distinct and reproducible
    batches = list(stream_tuples(7, 3, batch_rows=100))
    rows = np.concatenate(batches)
    assert rows.shape == (672, 7)
    as_tuples = list(map(tuple, rows.tolist()))
    assert len(set(as_tuples)) == 672
    assert all((row == 0).sum() == 2 for row in rows)
    subsets = [tuple(np.flatnonzero(row == 0)) for row in rows]
    assert subsets == sorted(subsets)
    per = 2 ** 5
    for i in range(0, 672, per):
        block = as_tuples[i:i + per]
        assert block == sorted(block)
        assert len(set(subsets[i:i + per])) == 1


def test_enumerate_rows_are_plain_lexicographic_for_binary():
    # with a single nonzero symbol the subset-major order coincides with
    # tuple order
    rows = list(map(tuple, np.concatenate(list(stream_tuples(9, 2))).tolist()))
    assert rows == sorted(rows)


def test_enumerate_preconditions():
    with pytest.raises(InfeasibleError):
        enumerate_oa(6, 3)  # abar not integral
    with pytest.raises(InfeasibleError):
        enumerate_oa(3, 3)  # n^2 > k(n-1)+1
    with pytest.raises(MaterializeLimitError):
        enumerate_oa(13, 4)  # 17.3M rows, must stream


def test_enumerate_9_4_by_streaming():
    lam = enumeration_lambda(9, 4)
    assert lam == comb(7, 1) * 3 ** 6 == 5103
    sv = StreamingVerifier(9, 4, lam, track_rows=False)
    total = 0
    for batch in stream_enumerate(9, 4):
        sv.update(batch)
        total += len(batch)
    assert total == lam * 16 == 81648
    assert sv.result().is_oa


COUNT_CASES = [(5, 2), (7, 3), (9, 2), (9, 4)]


@pytest.mark.parametrize("k, n", COUNT_CASES)
def test_counting_identities(k, n):
    abar = abar_of(k, n)
    lam = enumeration_lambda(k, n)
    rows = np.concatenate(list(stream_tuples(k, n)))
    lead = comb(k - 2, abar - 1) * (n - 1) ** (k - abar - 1)
    assert lam == lead
    first_two = rows[:, 0] * n + rows[:, 1]
    counts = np.bincount(first_two.astype(np.int64), minlength=n * n).reshape(n, n)
    assert counts[0, 0] == comb(k - 2, abar - 2) * (n - 1) ** (k - abar)
    for x in range(1, n):
        assert counts[0, x] == lead
        assert counts[x, 0] == lead
        for y in range(1, n):
            assert counts[x, y] == lead


@pytest.mark.parametrize("k, n", COUNT_CASES)
def test_zero_ratio_identity(k, n):
    abar = abar_of(k, n)
    assert (k - abar - 1) % (n - 1) == 0
    assert (k - abar - 1) // (n - 1) == abar


def test_partition_7_3():
    parts = partition_oa(7, 3)
    assert len(parts) == 2
    for part in parts:
        assert part.lam == 40
        report = verify_strength2(part)
        assert report.is_oa and report.m_observed == 24
        assert "optimal" in report.classification


def test_partition_5_2_is_identity():
    parts = partition_oa(5, 2)
    assert len(parts) == 1
    full = enumerate_oa(5, 2)
    assert sorted(map(tuple, parts[0].rows.tolist())) == \
        sorted(map(tuple, full.rows.tolist()))


def test_partition_3_2_trivial_case():
    parts = partition_oa(3, 2)
    assert len(parts) == 1 and parts[0].lam == 1


def test_partition_9_4():
    parts = partition_oa(9, 4)
    assert len(parts) == 3
    for part in parts:
        assert part.lam == 1701
        report = verify_strength2(part)
        assert report.is_oa and report.m_observed == 972
        assert "optimal" in report.classification
        ok, lam = naive_verify(part.rows, 4)
        assert ok and lam == 1701


def test_partition_classes_have_equal_sizes():
    parts = partition_oa(7, 3)
    zero = enumeration_repeats(7, 3) // 2
    non_constant = [p.row_count - zero for p in parts]
    assert non_constant[0] == non_constant[1] == (672 // 2)


def test_multi_partition_gamma_1_reduces_to_partition():
    a = multi_partition_oa(7, 3)  # gamma = floor(7/5) = 1
    b = partition_oa(7, 3)
    assert len(a) == len(b) == 2
    for x, y in zip(a, b):
        assert x == y


def test_multi_partition_spec_defaults():
    spec = default_partition_spec(16, 3)
    assert spec.class_sizes == (8, 8)
    assert max_gamma(16, 3) == 2
    assert partition_lambda(16, 3, 2) == comb(14, 4) * 2 ** 8 == 256256
    with pytest.raises(InfeasibleError):
        PartitionSpec(k=16, n=3, class_sizes=(7, 9))  # 7 < abar+3
    with pytest.raises(InfeasibleError):
        PartitionSpec(k=16, n=3, class_sizes=(8, 9))  # wrong total
    with pytest.raises(InfeasibleError):
        default_partition_spec(3, 2)  # k below abar+3, so gamma = 0


def test_multi_partition_13_4_lambda():
    assert max_gamma(13, 4) == 2
    assert partition_lambda(13, 4, 2) == comb(11, 2) * 3 ** 7


def test_stream_partition_class_counts_16_3():
    spec = default_partition_spec(16, 3)
    share = enumeration_repeats(16, 3) // 4
    assert share == 69888
    total = 0
    zero_rows = 0
    for batch in stream_partition_class(16, 3, (0, 1), batch_rows=1 << 17):
        total += len(batch)
        zero_rows += int((batch == 0).all(axis=1).sum())
    assert total == partition_lambda(16, 3, 2) * 9
    assert zero_rows == share


def test_shift_bijection_identity_and_inverse():
    row = (-1, -1, 0, 0, 0, 0, 1)
    assert shift_bijection(row, (7,), (0,), n=3) == row
    shifted = shift_bijection(row, (7,), (1,), n=3)
    assert shifted == (-1, -1, 1, 0, 0, 0, 1)
    assert shift_bijection(shifted, (7,), (1,), n=3) == row  # -1 = +1 mod 2


def test_shift_bijection_needs_a_nonfixed_entry():
    with pytest.raises(ValueError):
        shift_bijection((0, 0, -1, -1), (4,), (1,), n=3)


@pytest.mark.parametrize("k, n", [(5, 2), (7, 3)])
def test_shift_bijection_permutes_classes_exhaustively(k, n):
    spec = default_partition_spec(k, n, (k,))
    rows = np.concatenate(list(stream_tuples(k, n)))
    inf_rows = [tuple(r) for r in canonical_to_infinity(rows).tolist()]

    def type_of(row):
        return sum(v for v in row if v != -1) % (n - 1)

    classes = {}
    for row in inf_rows:
        classes.setdefault(type_of(row), set()).add(row)
    for kappa in range(n - 1):
        for tau, members in classes.items():
            image = {shift_bijection(r, (k,), (kappa,), n=n) for r in members}
            assert image == classes[(tau + kappa) % (n - 1)]
            for r in members:
                shifted = shift_bijection(r, (k,), (kappa,), n=n)
                assert shifted[:2] == r[:2]


def test_multi_partition_class_membership_is_exact():
    # every row of every part has the part's type
    spec = default_partition_spec(16, 3)
    from oakit.enumerate_partition import all_types, row_types, type_index
    parts_iter = zip(all_types(spec), range(4))
    for tau, _ in parts_iter:
        seen = 0
        for batch in stream_partition_class(16, 3, tau, batch_rows=1 << 18):
            mask = ~(batch == 0).all(axis=1)
            body = batch[mask]
            if body.shape[0]:
                assert (row_types(body, spec) == type_index(tau, 3)).all()
            seen += len(batch)
        assert seen == partition_lambda(16, 3, 2) * 9
        break  # one class suffices here; the acceptance suite covers more


def test_tuple_count_formula():
    assert tuple_count(7, 3) == 672
    assert tuple_count(9, 4) == comb(9, 2) * 3 ** 7
    assert infinity_to_canonical(canonical_to_infinity([[0, 1, 2]])).tolist() == [[0, 1, 2]]

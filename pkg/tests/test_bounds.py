import pytest

from groupcut.bounds import (
    BoundsError,
    HalvingSequence,
    basis_determinant,
    basis_matrix,
    check_upper_bound,
    construct_sequence,
    empirical_complexity,
)


def _coprime(a, b):
    while b:
        a, b = b, a % b
    return a == 1


def test_sequence_regression_anchor():
    # hand-checked halving order for q=11, f=3
    seq = construct_sequence(11, 3)
    assert seq.a == (0, 3, 7, 9, 5, 10, 4, 8, 6, 2, 1)
    assert basis_determinant(seq) == 32


def test_sequence_invariants_hold_everywhere():
    for q in (3, 5, 7, 9, 11, 13):
        for f in range(1, q):
            if not _coprime(q, f):
                continue
            seq = construct_sequence(q, f)
            # the dataclass validator re-checks start, halving and
            # reflection structure, so constructing it again must work
            HalvingSequence(q=q, f_index=f, a=seq.a)
            assert sorted(seq.a) == list(range(q))


def test_sequence_validator_rejects_broken_orders():
    with pytest.raises(BoundsError):
        HalvingSequence(q=4, f_index=1, a=(0, 1, 2, 3))
    with pytest.raises(BoundsError):
        HalvingSequence(q=5, f_index=2, a=(0, 2, 1, 1, 4))
    with pytest.raises(BoundsError):
        HalvingSequence(q=5, f_index=2, a=(1, 2, 0, 3, 4))


def test_construct_sequence_domain():
    with pytest.raises(BoundsError):
        construct_sequence(4, 1)  # even order
    with pytest.raises(BoundsError):
        construct_sequence(9, 3)  # f not a unit
    with pytest.raises(BoundsError):
        construct_sequence(7, 0)


def test_determinant_power_of_two_small():
    for q in (3, 5, 7, 9, 11, 13):
        want = 2 ** ((q - 1) // 2)
        for f in range(1, q):
            if _coprime(q, f):
                assert basis_determinant(construct_sequence(q, f)) == want


def test_basis_matrix_shape():
    seq = construct_sequence(7, 2)
    mat = basis_matrix(seq)
    assert len(mat) == 7
    assert all(len(row) == 7 for row in mat)
    assert all(all(isinstance(v, int) for v in row) for row in mat)


def test_check_upper_bound_exhaustive_q5():
    rows = check_upper_bound(5, 2, 0, exhaustive=True)
    stats = {r["statistic"]: r["value"] for r in rows}
    assert stats == {"bases_checked": 10, "singular_skipped": 10,
                     "max_abs_det": 6, "bound_violations": 0}
    assert all(r["q"] == 5 and r["f_index"] == 2 for r in rows)


def test_check_upper_bound_seeded_and_clean():
    first = check_upper_bound(7, 3, 50, seed=4)
    again = check_upper_bound(7, 3, 50, seed=4)
    assert first == again
    stats = {r["statistic"]: r["value"] for r in first}
    assert stats["bound_violations"] == 0
    assert stats["bases_checked"] + stats["singular_skipped"] == 50


def test_empirical_complexity_small():
    assert empirical_complexity(5) == (6, 6)
    assert empirical_complexity(6) == (5, 5)
    assert empirical_complexity(7) == (12, 12)
    assert empirical_complexity(8) == (15, 15)

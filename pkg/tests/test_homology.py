"""Betti tables of the two-set cover and the derived constraints."""

import pytest

from ballq.homology import (
    BettiVector,
    betti_of_open,
    blown_bielliptic_betti,
    fibration_sequence_report,
    free_rank_of_punctured_surface,
    mv_tables,
)
from ballq.families import build_gamma_family, build_lambda_family


def test_tables_k1():
    u, v = mv_tables(1)
    assert u.as_tuple() == (1, 2, 1, 0, 0)
    assert v.as_tuple() == (1, 2, 2, 1, 0)


def test_tables_scale_with_k():
    u3, v3 = mv_tables(3)
    assert v3.b1 == 6
    u2, v2 = mv_tables(2)
    assert v2.b3 == 2
    assert u3.as_tuple() == (3, 6, 3, 0, 0)


def test_tables_require_a_cusp():
    with pytest.raises(ValueError):
        mv_tables(0)


def test_euler_characteristics_vanish():
    for k in range(1, 11):
        u, v = mv_tables(k)
        assert u.euler() == 0
        assert v.euler() == 0


def test_betti_vector_validation():
    with pytest.raises(ValueError):
        BettiVector(1, -1, 0, 0, 0)


def test_blown_bielliptic_betti():
    assert blown_bielliptic_betti(0).as_tuple() == (1, 2, 2, 2, 1)
    for n in (1, 4, 9):
        b = blown_bielliptic_betti(n)
        assert b.as_tuple() == (1, 2, n + 2, 2, 1)
        assert b.euler() == n


def test_open_constraints():
    b = blown_bielliptic_betti(4)
    constraints = betti_of_open(b, 5)
    assert constraints.b1 == 2
    assert constraints.b3_lower_bound == 4
    assert constraints.b2_minus_b3 == 1 - 2 + 6


def test_open_constraints_vacuous_bound():
    constraints = betti_of_open(blown_bielliptic_betti(1), 1)
    assert constraints.b3_lower_bound == 0


def test_b2_b3_relation_independent_of_k():
    b = blown_bielliptic_betti(3)
    values = {betti_of_open(b, k).b2_minus_b3 for k in range(1, 8)}
    assert len(values) == 1


def test_free_rank_of_punctured_surface():
    assert free_rank_of_punctured_surface(1, 3) == 4
    assert free_rank_of_punctured_surface(0, 4) == 3
    assert free_rank_of_punctured_surface(1, 1) == 2
    with pytest.raises(ValueError):
        free_rank_of_punctured_surface(1, 0)


def test_fibration_report_from_gamma():
    report = build_gamma_family(2)
    record = fibration_sequence_report(report)
    assert record.base_rank == 2
    assert record.generic_fiber_free_rank == 4
    assert record.singular_fiber_free_rank == 3
    assert any("finitely generated" in line for line in record.conclusions)


def test_fibration_report_rejects_other_family():
    report = build_lambda_family(1)
    with pytest.raises(ValueError):
        fibration_sequence_report(report)

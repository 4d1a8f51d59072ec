import pytest

from fractions import Fraction
from hkspread.exceptions import LengthError, PreconditionError
from hkspread.ideal import Ideal, maximal_ideal
from hkspread.identities import (
    check_base_change,
    check_corollary_vanishing,
    check_lemma33_additivity,
    check_product_identity,
    check_self_product,
    check_spread_base_change,
)
from hkspread.poly import RingSpec


@pytest.fixture
def plane():
    return RingSpec(2, "x y")


def rows(report, label):
    return [row for row in report.rows if row.label == label]


def test_product_identity_on_the_maximal_ideal(plane):
    m = maximal_ideal(plane)
    report = check_product_identity(m, m, 2, [2, 4])
    assert report.passed
    assert [(row.left, row.right) for row in rows(report, "a")] == [(6, 6), (18, 18)]
    assert [(row.left, row.right) for row in rows(report, "J")] == [(12, 12)]
    assert [(row.left, row.right) for row in rows(report, "I")] == [(24, 24)]
    assert all(row.exact and row.residual == 0 for row in report.rows)


def test_product_identity_monomial_pairs(plane):
    x, y = plane.gens()
    m = maximal_ideal(plane)
    report = check_product_identity(Ideal(plane, [x ** 2, y ** 2]), m, 2, [2, 4])
    assert report.passed
    assert rows(report, "a")[0].right == 12
    report = check_product_identity(Ideal(plane, [x ** 2, y ** 3]), m, 2, [4, 8])
    assert report.passed
    assert [row.right for row in rows(report, "a")] == [28, 76]


def test_product_identity_needs_large_q(plane):
    x, y = plane.gens()
    # y^2 is not in (x^2, y^3), so the identity only sets in from q = 4
    report = check_product_identity(Ideal(plane, [x ** 2, y ** 3]), maximal_ideal(plane), 2, [2])
    assert not report.passed
    (row,) = report.rows
    assert (row.left, row.right, row.residual) == (16, 14, 2)


def test_product_identity_needs_m_primary_ideals(plane):
    x, _ = plane.gens()
    with pytest.raises(LengthError):
        check_product_identity(Ideal(plane, [x]), maximal_ideal(plane), 1, [2])


def test_self_product(plane):
    x, y = plane.gens()
    m = maximal_ideal(plane)
    report = check_self_product(m, [2, 4, 8])
    assert report.passed
    assert [row.left for row in report.rows] == [6, 18, 66]
    assert report.notes == ["l* = 2"]

    R3 = RingSpec(3, "x y")
    report = check_self_product(maximal_ideal(R3), [3], e_max=2)
    assert report.passed and report.rows[0].left == 11

    report = check_self_product(Ideal(plane, [x ** 2, y ** 3]), [2], e_max=2)
    assert report.passed and report.rows[0].right == 36


def test_lemma33_additivity(plane):
    x, y = plane.gens()
    for I in (Ideal(plane, [x]), Ideal(plane, [x ** 2])):
        report = check_lemma33_additivity(I, y, qs=[2, 4, 8])
        assert report.passed
        assert all(row.residual == 0 for row in report.rows)
        assert [row.left for row in report.rows] == [8, 32, 128]


def test_lemma33_default_schedule(plane):
    x, y = plane.gens()
    report = check_lemma33_additivity(Ideal(plane, [x]), y, maximal_ideal(plane), 0, 3)
    assert report.passed
    assert [row.q for row in report.rows] == [2, 4, 8]
    assert [row.left for row in report.rows] == [8, 32, 128]


def test_lemma33_preconditions(plane):
    x, y = plane.gens()
    with pytest.raises(PreconditionError, match="nonzero"):
        check_lemma33_additivity(maximal_ideal(plane), plane.zero(), qs=[2])
    with pytest.raises(PreconditionError, match="zero divisor"):
        check_lemma33_additivity(Ideal(plane, [x * y]), y, qs=[2])


def test_base_change(plane):
    x, y = plane.gens()
    report = check_base_change(plane, maximal_ideal(plane), 1, [2, 4])
    assert report.passed
    assert [row.left for row in rows(report, "a")] == [8, 64]
    (b,) = rows(report, "b")
    assert b.exact and b.left == b.right == 1

    report = check_base_change(plane, Ideal(plane, [x ** 2, y ** 3]), 1, [2, 4])
    assert report.passed
    assert rows(report, "a")[0].left == 48
    assert rows(report, "b")[0].left == 6


def test_base_change_with_two_variables(plane):
    report = check_base_change(plane, maximal_ideal(plane), 2, [2])
    assert report.passed
    assert report.rows[0].left == 16


def test_corollary_vanishing(plane):
    x, y = plane.gens()
    for I in (Ideal(plane, [x]), Ideal(plane, [x, y]), Ideal(plane)):
        report = check_corollary_vanishing(plane, I, qs=[2, 4])
        assert report.passed
        assert [row.left for row in report.rows] == [0, 0]
    with pytest.raises(PreconditionError):
        check_corollary_vanishing(plane, Ideal(plane, [plane.one()]), qs=[2])


def test_corollary_default_schedule(plane):
    x, _ = plane.gens()
    report = check_corollary_vanishing(plane, Ideal(plane, [x]), 0, 2)
    assert report.passed
    assert [row.q for row in report.rows] == [2, 4]
    assert all(row.left == 0 for row in report.rows)


def test_spread_base_change(plane):
    x, y = plane.gens()
    report = check_spread_base_change(Ideal(plane, [x, y]), 1, e_max=2)
    assert report.passed
    assert report.rows[0].left == report.rows[0].right == Fraction(2)


def test_inexact_rows_use_the_tolerance():
    R = RingSpec(3, "x y z", relations=[{(2, 0, 0): 1, (0, 1, 1): 1}])
    report = check_base_change(R, maximal_ideal(R), 1, [3], e_max=2, tolerance=0.05)
    (a,) = rows(report, "a")
    assert a.exact and a.passed
    (b,) = rows(report, "b")
    assert not b.exact
    assert b.passed == (abs(float(b.residual)) < 0.05)

import pytest

from fractions import Fraction
from hkspread.exceptions import LengthError, PreconditionError
from hkspread.ideal import Ideal, maximal_ideal
from hkspread.independence import (
    FAIL_NOT_CONTAINED,
    FAIL_UNIT,
    PASS,
    colon_criterion_diagnostic,
    star_independence_diagnostic,
)
from hkspread.poly import RingSpec
from hkspread.spread import (
    ACCEPT_DISTANCE,
    SpreadEntry,
    _stable_value,
    frobenius_spread,
    star_spread_estimate,
    star_spread_hk_difference,
)


@pytest.fixture
def plane():
    return RingSpec(2, "x y")


def regular_corpus():
    """(J, minimal number of generators) over F_2."""
    R = RingSpec(2, "x y")
    x, y = R.gens()
    S = RingSpec(2, "x y z")
    return [
        (Ideal(R, [x, y]), 2),
        (Ideal(R, [x ** 2, x * y, y ** 2]), 3),
        (Ideal(R, [x ** 2, y ** 3]), 2),
        (Ideal(R, [x]), 1),
        (maximal_ideal(S), 3),
    ]


def test_spread_is_exact_in_regular_rings():
    for J, mu in regular_corpus():
        report = star_spread_estimate(J, maximal_ideal(J.ring), 0, 3)
        assert [entry.ratio for entry in report.entries] == [mu] * 4
        assert report.estimate == mu
        assert report.stabilized
        assert report.q0_schedule == [1]


def test_spread_of_the_maximal_ideal(plane):
    report = star_spread_estimate(maximal_ideal(plane))
    assert [entry.length for entry in report.entries] == [2, 8, 32, 128]
    assert report.ehk == 1 and report.exact
    assert report.to_dict()["estimate"] == 2


def test_spread_rejects_bad_input(plane):
    x, y = plane.gens()
    with pytest.raises(PreconditionError):
        star_spread_estimate(Ideal(plane, [plane.one()]))
    with pytest.raises(LengthError):
        star_spread_estimate(maximal_ideal(plane), Ideal(plane, [x]))


def test_hk_difference_agrees_with_subquotient_form():
    for J, mu in regular_corpus():
        if not J.is_m_primary():
            continue
        report = star_spread_hk_difference(J, maximal_ideal(J.ring), 0, 3)
        assert report.exact
        assert report.entries[0].ratio == mu
        assert report.estimate == star_spread_estimate(J).estimate == mu


def test_hk_difference_examples():
    R = RingSpec(3, "x y")
    x, y = R.gens()
    m = maximal_ideal(R)
    assert star_spread_hk_difference(m).estimate == 2
    report = star_spread_hk_difference(Ideal(R, [x ** 2, y ** 2]), m)
    assert report.entries[0].ratio == 2
    with pytest.raises(LengthError):
        star_spread_hk_difference(Ideal(R, [x]))


def test_stabilization_rule():
    def entry(ratio):
        ratio = Fraction(ratio)
        nearest = round(ratio)
        return SpreadEntry(1, 0, 1, 0, ratio, nearest, abs(ratio - nearest))

    assert _stable_value([entry(Fraction(9, 5)), entry(Fraction(19, 10))]) == 2
    # Near-half ratios are never accepted
    assert _stable_value([entry(Fraction(5, 2)), entry(Fraction(12, 5))]) is None
    assert _stable_value([entry(Fraction(11, 10)), entry(Fraction(19, 10))]) is None
    assert ACCEPT_DISTANCE == Fraction(1, 4)


def test_accepted_value_holds_at_larger_q():
    def entry(ratio):
        ratio = Fraction(ratio)
        nearest = round(ratio)
        return SpreadEntry(1, 0, 1, 0, ratio, nearest, abs(ratio - nearest))

    # An early agreeing pair does not count when a later entry moves away
    assert _stable_value([entry(2), entry(Fraction(21, 10)), entry(3)]) is None
    assert _stable_value([entry(2), entry(2), entry(Fraction(5, 2))]) is None
    late = [entry(Fraction(59, 30)), entry(Fraction(17, 6)), entry(Fraction(47, 16)), entry(3)]
    assert _stable_value(late) == 3
    assert _stable_value([entry(2), entry(2), entry(Fraction(21, 10))]) == 2
    assert _stable_value([entry(2)]) is None
    assert _stable_value([]) is None

    drifting = [entry(Fraction(n, 1000)) for n in (1967, 2259, 2291)]
    assert _stable_value(drifting) is None

    for J, _ in regular_corpus():
        report = star_spread_estimate(J, maximal_ideal(J.ring), 0, 2)
        assert all(entry.nearest == report.estimate for entry in report.entries)


def test_spread_table_on_the_cone():
    R = RingSpec(3, "x y z", relations=[{(2, 0, 0): 1, (0, 1, 1): 1}])
    report = star_spread_estimate(maximal_ideal(R), e_max=2, q0_cap=0)
    assert not report.exact
    assert report.q0_schedule == [1]
    assert len(report.entries) == 3
    # length(m / m^2) is the embedding dimension
    assert report.entries[0].length == 3
    assert report.entries[0].ratio == 3 / report.ehk


def test_colon_criterion(plane):
    x, y = plane.gens()
    report = colon_criterion_diagnostic(Ideal(plane, [x]), y)
    assert [row.status for row in report.rows] == [PASS] * 4
    assert all(row.q0 == 1 for row in report.rows)
    assert report.verdict == "consistent"

    report = colon_criterion_diagnostic(Ideal(plane, [x]), x)
    assert {row.status for row in report.rows} == {FAIL_UNIT}
    assert report.verdict == "dependent"

    report = colon_criterion_diagnostic(Ideal(plane, [x ** 2, y ** 2]), x * y, e_max=2)
    assert report.verdict == "consistent"
    assert report.rows[2].colon == "(x^4, y^4)"


def test_colon_criterion_not_contained(plane):
    x, y = plane.gens()
    report = colon_criterion_diagnostic(Ideal(plane, [x + x * y]), x, e_max=1)
    assert {row.status for row in report.rows} == {FAIL_NOT_CONTAINED}
    assert report.verdict == "inconclusive"
    assert "proves nothing" in report.to_dict()["caveat"]


def test_star_independence(plane):
    x, y = plane.gens()
    assert star_independence_diagnostic([x, y]).verdict == "consistent"
    report = star_independence_diagnostic([x, x + x * y], e_max=1)
    assert report.verdict == "dependent"
    assert report.diagnostics[1].verdict == "dependent"
    assert star_independence_diagnostic([x ** 2, x * y, y ** 2], e_max=2).verdict == "consistent"
    with pytest.raises(PreconditionError):
        star_independence_diagnostic([x])


def test_frobenius_spread(plane):
    x, y = plane.gens()
    report = frobenius_spread(Ideal(plane, [x ** 2, x * y, y ** 2]), e_max=2)
    assert [mu for _, _, mu in report.samples] == [3, 3, 3]
    assert report.value == 3 and report.stable
    # The redundant generator disappears at every q
    report = frobenius_spread(Ideal(plane, [x, y, x + y]), e_max=1)
    assert report.to_dict()["samples"] == [
        {"e": 0, "q": 1, "mu": 2},
        {"e": 1, "q": 2, "mu": 2},
    ]

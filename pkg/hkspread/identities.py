"""Checkers for the exact identities between Hilbert-Kunz multiplicities and *-spread: the product
formulas, the self-product formula, additivity along a parameter, and flat base change to a
polynomial extension S = R[z_1, ..., z_s].

A row passes on exact equality when both sides are exact, otherwise when the residual is below
the tolerance.
"""

import logging

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from .exceptions import PreconditionError
from .ideal import (
    Ideal,
    bracket_power,
    check_rings,
    ideal_colon,
    ideal_intersection,
    maximal_ideal,
)
from .length import ehk_estimate, length_quotient, length_subquotient, require_m_primary
from .poly import FrobeniusExponent
from .spread import star_spread_estimate

DEFAULT_TOLERANCE = 0.05


@dataclass(frozen=True)
class IdentityRow:
    label: str
    q: int
    left: Fraction
    right: Fraction
    residual: Fraction
    exact: bool
    passed: bool

    def to_dict(self):
        return {
            "label": self.label,
            "q": self.q,
            "left": self.left,
            "right": self.right,
            "residual": self.residual,
            "exact": self.exact,
            "passed": self.passed,
        }


@dataclass
class IdentityReport:
    name: str
    rows: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return bool(self.rows) and all(row.passed for row in self.rows)

    def add(self, label, q, left, right, exact, tolerance):
        left = Fraction(left)
        right = Fraction(right)
        residual = left - right
        passed = residual == 0 if exact else abs(float(residual)) < tolerance
        if not passed:
            logging.warning(f"{self.name} [{label}] q={q}: {left} != {right}")
        self.rows.append(IdentityRow(label, q, left, right, residual, exact, passed))

    def to_dict(self):
        return {
            "name": self.name,
            "rows": [row.to_dict() for row in self.rows],
            "passed": self.passed,
            "notes": list(self.notes),
        }


def _check_qs(ring, qs, e_max=3):
    """Validate that every q is a power of the characteristic; return them sorted. With no qs the
    schedule is p^e for e = 1..e_max."""
    if qs is None:
        qs = [ring.characteristic ** e for e in range(1, e_max + 1)]
    return sorted({FrobeniusExponent.from_q(ring.characteristic, q).q for q in qs})


def check_product_identity(I, J, ell, qs, e_max=3, tolerance=DEFAULT_TOLERANCE):
    """Check ell e(I) + q^d e(J) = e(I J^[q]) for each q, and for each pair q < q' the two
    differences (q'^d - q^d) e(J) = e(I J^[q']) - e(I J^[q]) and
    (q'^d - q^d) ell e(I) = q'^d e(I J^[q]) - q^d e(I J^[q'])."""
    check_rings(I, J)
    ring = I.ring
    d = ring.dimension
    qs = _check_qs(ring, qs)
    eI = ehk_estimate(I, e_max)
    eJ = ehk_estimate(J, e_max)
    products = {q: ehk_estimate(I * bracket_power(J, q), e_max) for q in qs}
    report = IdentityReport("product")
    for q in qs:
        exact = eI.exact and eJ.exact and products[q].exact
        report.add("a", q, ell * eI.value + q ** d * eJ.value, products[q].value, exact, tolerance)
    for q, q1 in combinations(qs, 2):
        exact = eI.exact and eJ.exact and products[q].exact and products[q1].exact
        scale = q1 ** d - q ** d
        report.add(
            "J", q1, scale * eJ.value, products[q1].value - products[q].value, exact, tolerance
        )
        report.add(
            "I",
            q1,
            scale * ell * eI.value,
            q1 ** d * products[q].value - q ** d * products[q1].value,
            exact,
            tolerance,
        )
    return report


def check_self_product(J, qs, q0_exponent=0, e_max=3, q0_cap=3, tolerance=DEFAULT_TOLERANCE):
    """Check e(J J^[q]) = (l*(J) + q^d) e(J), with l*(J) taken from the spread estimator."""
    ring = J.ring
    d = ring.dimension
    qs = _check_qs(ring, qs)
    eJ = ehk_estimate(J, e_max)
    spread = star_spread_estimate(J, q0_exponent=q0_exponent, e_max=e_max, q0_cap=q0_cap)
    if not spread.stabilized:
        raise PreconditionError(f"the *-spread estimate of {J} did not stabilize")
    ell = spread.estimate
    report = IdentityReport("self")
    report.notes.append(f"l* = {ell}")
    for q in qs:
        left = ehk_estimate(J * bracket_power(J, q), e_max)
        report.add(
            "self", q, left.value, (ell + q ** d) * eJ.value, left.exact and eJ.exact, tolerance
        )
    return report


def check_lemma33_additivity(
    I, z, a=None, q0_exponent=0, e_max=3, qs=None, tolerance=DEFAULT_TOLERANCE
):
    """For z a parameter modulo I, check
    length(K^[Q] / a^[q] K^[Q]) = q^d e(a) + length(I^[Q] / a^[q] I^[Q]) with K = (I, z), Q = q q0."""
    ring = I.ring
    a = a if a is not None else maximal_ideal(ring)
    check_rings(I, a)
    if not z:
        raise PreconditionError("z must be a nonzero element")
    if not ideal_colon(I, z) <= I:
        raise PreconditionError(f"{z} is a zero divisor modulo {I}")
    p = ring.characteristic
    d = ring.dimension
    qs = _check_qs(ring, qs, e_max)
    ea = ehk_estimate(a, e_max)
    K = I + Ideal(ring, [z])
    report = IdentityReport("lemma33")
    for q in qs:
        big = q * p ** q0_exponent
        aq = bracket_power(a, q)
        KQ = bracket_power(K, big)
        IQ = bracket_power(I, big)
        left = length_subquotient(KQ, aq * KQ)
        right = length_subquotient(IQ, aq * IQ)
        if not (left.is_finite and right.is_finite):
            raise PreconditionError(f"subquotient lengths at q={q} are not finite")
        report.add("additivity", q, left.value, q ** d * ea.value + right.value, ea.exact, tolerance)
    return report


def _polynomial_extension(ring, s):
    if s < 1:
        raise PreconditionError(f"base change needs at least one new variable, got s={s}")
    names = ring.fresh_names(s)
    S = ring.extend(names)
    return S, [S.var(name) for name in names]


def check_base_change(ring, a, s, qs, e_max=3, tolerance=DEFAULT_TOLERANCE):
    """For S = R[z_1..z_s], check length(S/(a^[q] S, z^[q])) = length(S/(mS, z^[q])) length(R/a^[q])
    for each q, and e(aS + (z)) = e(a)."""
    if a.ring is not ring and a.ring != ring:
        raise PreconditionError(f"{a} is not an ideal of {ring}")
    require_m_primary(a)
    qs = _check_qs(ring, qs)
    S, zs = _polynomial_extension(ring, s)
    z = Ideal(S, zs)
    aS = a.embed(S)
    mS = maximal_ideal(ring).embed(S)
    report = IdentityReport("basechange")
    for q in qs:
        zq = bracket_power(z, q)
        left = length_quotient(bracket_power(aS, q) + zq)
        right = length_quotient(mS + zq).value * length_quotient(bracket_power(a, q)).value
        report.add("a", q, left.value, right, True, tolerance)
    eS = ehk_estimate(aS + z, e_max)
    eR = ehk_estimate(a, e_max)
    report.add("b", None, eS.value, eR.value, eS.exact and eR.exact, tolerance)
    return report


def check_corollary_vanishing(
    ring, I, q0_exponent=0, e_max=3, qs=None, tolerance=DEFAULT_TOLERANCE
):
    """With S = R[z], check that (m^[q] I^[Q] S + (z^q) ∩ I^[Q] S) / (mS, z)^[q] I^[Q] S has
    length zero, Q = q q0."""
    if I.ring is not ring and I.ring != ring:
        raise PreconditionError(f"{I} is not an ideal of {ring}")
    if I.is_unit():
        raise PreconditionError("the vanishing check needs a proper ideal")
    p = ring.characteristic
    qs = _check_qs(ring, qs, e_max)
    S, (z,) = _polynomial_extension(ring, 1)
    m = maximal_ideal(ring)
    report = IdentityReport("corollary")
    for q in qs:
        IQ = bracket_power(I, q * p ** q0_exponent).embed(S)
        zq = Ideal(S, [z.qth_power(q)])
        top = bracket_power(m, q).embed(S) * IQ + ideal_intersection(zq, IQ)
        bottom = bracket_power(m.embed(S) + Ideal(S, [z]), q) * IQ
        length = length_subquotient(top, bottom)
        if not length.is_finite:
            raise PreconditionError(f"the subquotient at q={q} has infinite length")
        report.add("vanishing", q, length.value, 0, True, tolerance)
    return report


def check_spread_base_change(J, s, q0_exponent=0, e_max=3, q0_cap=3):
    """Check that the *-spread estimate of J in R agrees with that of JS in S = R[z_1..z_s]."""
    ring = J.ring
    S, _ = _polynomial_extension(ring, s)
    base = star_spread_estimate(J, q0_exponent=q0_exponent, e_max=e_max, q0_cap=q0_cap)
    extended = star_spread_estimate(
        J.embed(S), q0_exponent=q0_exponent, e_max=e_max, q0_cap=q0_cap
    )
    report = IdentityReport("spreadbc")
    for spread, where in ((base, "R"), (extended, "S")):
        if not spread.stabilized:
            report.notes.append(f"estimate in {where} did not stabilize")
    left = base.estimate if base.stabilized else None
    right = extended.estimate if extended.stabilized else None
    passed = left is not None and left == right
    report.rows.append(
        IdentityRow(
            "spread",
            None,
            None if left is None else Fraction(left),
            None if right is None else Fraction(right),
            None if left is None or right is None else Fraction(left - right),
            True,
            passed,
        )
    )
    return report

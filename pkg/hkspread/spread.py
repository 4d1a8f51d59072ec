"""Estimates of the *-spread of an ideal from the two asymptotic length formulas:

    l*(J) = lim_q length(J^[q q0] / a^[q] J^[q q0]) / (q^d e_HK(a))          (subquotient form)
    l*(J) = (e_HK(a J^[q0]) - e_HK(J^[q0])) / e_HK(a)      for m-primary J   (hk-difference form)

Both hold for q0 large enough, with no effective bound, so q0 is escalated until the rounded
value stabilizes. In a polynomial ring tight closure is trivial and l*(J) = mu(J).
"""

import logging

from dataclasses import dataclass, field
from fractions import Fraction
from .exceptions import LengthError, PreconditionError
from .ideal import bracket_power, check_rings, maximal_ideal, min_gens
from .length import ehk_estimate, length_subquotient, require_m_primary

# An integer estimate is accepted only when the ratio is this close to it
ACCEPT_DISTANCE = Fraction(1, 4)


@dataclass(frozen=True)
class SpreadEntry:
    """One truncation of a spread formula. e, q and length are None for the hk-difference form."""

    q0: int
    e: int
    q: int
    length: int
    ratio: Fraction
    nearest: int
    distance: Fraction

    def to_dict(self):
        return {
            "q0": self.q0,
            "e": self.e,
            "q": self.q,
            "length": self.length,
            "ratio": self.ratio,
            "nearest": self.nearest,
            "distance": self.distance,
        }


@dataclass
class SpreadReport:
    ideal: str
    a: str
    method: str
    ehk: Fraction
    exact: bool
    q0_schedule: list = field(default_factory=list)
    entries: list = field(default_factory=list)
    estimate: int = None
    stabilized: bool = False

    def to_dict(self):
        return {
            "ideal": self.ideal,
            "a": self.a,
            "method": self.method,
            "ehk": self.ehk,
            "exact": self.exact,
            "q0_schedule": list(self.q0_schedule),
            "entries": [e.to_dict() for e in self.entries],
            "estimate": self.estimate,
            "stabilized": self.stabilized,
        }


def _entry(q0, e, q, length, ratio):
    nearest = round(ratio)
    return SpreadEntry(q0, e, q, length, ratio, nearest, abs(ratio - nearest))


def _stable_value(entries):
    """Return the common rounded value of the trailing run of entries that all lie within
    ACCEPT_DISTANCE of the same integer, when that run has at least two entries, or None. An
    accepted value therefore holds at every larger sampled q."""
    run = 0
    for entry in reversed(entries):
        if entry.distance >= ACCEPT_DISTANCE or entry.nearest != entries[-1].nearest:
            break
        run += 1
    return entries[-1].nearest if run >= 2 else None


def _next_q0_exponent(e0, cap):
    return min(max(1, 2 * e0), cap)


def star_spread_estimate(J, a=None, q0_exponent=0, e_max=3, q0_cap=3):
    """Tabulate length(J^[q q0] / a^[q] J^[q q0]) / (q^d e_HK(a)) for q = p^e, e = 0..e_max, and
    round it once the last two values agree. Without agreement the exponent of q0 is doubled,
    up to q0_cap."""
    ring = J.ring
    a = a if a is not None else maximal_ideal(ring)
    check_rings(J, a)
    if J.is_unit():
        raise PreconditionError("the *-spread needs a proper ideal")
    hk = ehk_estimate(a, e_max)
    p = ring.characteristic
    d = ring.dimension
    report = SpreadReport(str(J), str(a), "subquotient", hk.value, hk.exact)

    e0 = q0_exponent
    while True:
        q0 = p ** e0
        report.q0_schedule.append(q0)
        block = []
        for e in range(e_max + 1):
            q = p ** e
            top = bracket_power(J, q * q0)
            length = length_subquotient(top, bracket_power(a, q) * top)
            if not length.is_finite:
                raise LengthError(f"length of J^[{q * q0}] / a^[{q}] J^[{q * q0}] is infinite")
            ratio = Fraction(length.value) / (Fraction(q) ** d * hk.value)
            logging.info(f"q0={q0} q={q}: length {length.value}, ratio {ratio}")
            block.append(_entry(q0, e, q, length.value, ratio))
        report.entries.extend(block)
        value = _stable_value(block)
        if value is not None:
            report.estimate = value
            report.stabilized = True
            break
        if e0 >= q0_cap:
            logging.warning(f"spread estimate for {J} did not stabilize up to q0={q0}")
            break
        e0 = _next_q0_exponent(e0, q0_cap)
        logging.info(f"escalating q0 to {p ** e0}")
    return report


def star_spread_hk_difference(J, a=None, q0_exponent=0, e_max=3, q0_cap=3):
    """Return (e_HK(a J^[q0]) - e_HK(J^[q0])) / e_HK(a) for an m-primary J. An exact value within
    ACCEPT_DISTANCE of an integer is accepted at once; estimated values need the last two q0
    to agree."""
    ring = J.ring
    a = a if a is not None else maximal_ideal(ring)
    check_rings(J, a)
    try:
        require_m_primary(J)
    except LengthError:
        raise LengthError(f"the hk-difference form needs an m-primary ideal, got {J}")
    hk = ehk_estimate(a, e_max)
    p = ring.characteristic
    report = SpreadReport(str(J), str(a), "hk-difference", hk.value, hk.exact)

    e0 = q0_exponent
    while True:
        q0 = p ** e0
        report.q0_schedule.append(q0)
        frob = bracket_power(J, q0)
        top = ehk_estimate(a * frob, e_max)
        bottom = ehk_estimate(frob, e_max)
        ratio = (top.value - bottom.value) / hk.value
        entry = _entry(q0, None, None, None, ratio)
        report.entries.append(entry)
        report.exact = report.exact and top.exact and bottom.exact
        if report.exact and entry.distance < ACCEPT_DISTANCE:
            report.estimate = entry.nearest
            report.stabilized = True
            break
        value = _stable_value(report.entries)
        if value is not None:
            report.estimate = value
            report.stabilized = True
            break
        if e0 >= q0_cap:
            logging.warning(f"hk-difference estimate for {J} did not stabilize up to q0={q0}")
            break
        e0 = _next_q0_exponent(e0, q0_cap)
    return report


@dataclass
class FSpreadReport:
    """mu(I^[q]) for q = p^e; its eventual value is the F-spread."""

    ideal: str
    samples: list = field(default_factory=list)

    @property
    def value(self):
        return self.samples[-1][2] if self.samples else None

    @property
    def stable(self):
        return len(self.samples) >= 2 and self.samples[-1][2] == self.samples[-2][2]

    def to_dict(self):
        return {
            "ideal": self.ideal,
            "samples": [{"e": e, "q": q, "mu": mu} for e, q, mu in self.samples],
            "value": self.value,
            "stable": self.stable,
        }


def frobenius_spread(I, e_max=3):
    """Return the minimal generator counts of the Frobenius powers I^[q], e = 0..e_max."""
    p = I.ring.characteristic
    report = FSpreadReport(str(I))
    for e in range(e_max + 1):
        q = p ** e
        report.samples.append((e, q, min_gens(bracket_power(I, q))))
    return report

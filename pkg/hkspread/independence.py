"""A finite-q necessary-condition diagnostic for *-independence, built on the Colon Criterion:
x is not in I* when (I^[q] : x^q) ⊆ m^[q/q0] for all q ≥ q0.

Tight closure is never computed here. A unit colon proves x ∈ I, hence dependence; a pass at the
sampled q is evidence, not proof.
"""

import logging

from dataclasses import dataclass, field
from .exceptions import PreconditionError
from .ideal import Ideal, bracket_power, check_rings, ideal_colon, maximal_ideal

CAVEAT = (
    "Finite-q Colon Criterion diagnostic: a unit colon proves dependence, "
    "a pass at the sampled q is consistent with *-independence but proves nothing."
)

PASS = "pass"
FAIL_UNIT = "fail-unit"
FAIL_NOT_CONTAINED = "fail-not-contained"


@dataclass(frozen=True)
class ColonRow:
    q: int
    colon: str
    q0: int
    status: str

    def to_dict(self):
        return {"q": self.q, "colon": self.colon, "q0": self.q0, "status": self.status}


@dataclass
class ColonReport:
    ideal: str
    candidate: str
    rows: list = field(default_factory=list)
    caveat: str = CAVEAT

    @property
    def verdict(self):
        statuses = {row.status for row in self.rows}
        if FAIL_UNIT in statuses:
            return "dependent"
        if statuses == {PASS}:
            return "consistent"
        return "inconclusive"

    def to_dict(self):
        return {
            "ideal": self.ideal,
            "candidate": self.candidate,
            "rows": [row.to_dict() for row in self.rows],
            "verdict": self.verdict,
            "caveat": self.caveat,
        }


@dataclass
class IndependenceReport:
    generators: list
    diagnostics: list = field(default_factory=list)
    caveat: str = CAVEAT

    @property
    def verdict(self):
        verdicts = {d.verdict for d in self.diagnostics}
        if "dependent" in verdicts:
            return "dependent"
        if verdicts == {"consistent"}:
            return "consistent"
        return "inconclusive"

    def to_dict(self):
        return {
            "generators": list(self.generators),
            "diagnostics": [d.to_dict() for d in self.diagnostics],
            "verdict": self.verdict,
            "caveat": self.caveat,
        }


def colon_criterion_diagnostic(I, x, q0_exponent=0, e_max=3):
    """For q = p^e, e = 0..e_max, find the least q0 = p^e' (e' ≤ min(q0_exponent, e)) with
    (I^[q] : x^q) ⊆ m^[q/q0]."""
    ring = I.ring
    check_rings(I, Ideal(ring, [x]))
    p = ring.characteristic
    m = maximal_ideal(ring)
    report = ColonReport(str(I), str(x))
    for e in range(e_max + 1):
        q = p ** e
        colon = ideal_colon(bracket_power(I, q), x.qth_power(q))
        if colon.is_unit():
            report.rows.append(ColonRow(q, "(1)", None, FAIL_UNIT))
            continue
        found = None
        for e1 in range(min(q0_exponent, e) + 1):
            if colon <= bracket_power(m, p ** (e - e1)):
                found = p ** e1
                break
        status = PASS if found is not None else FAIL_NOT_CONTAINED
        report.rows.append(ColonRow(q, str(colon), found, status))
    logging.info(f"colon criterion for {x} over {I}: {report.verdict}")
    return report


def star_independence_diagnostic(gens, q0_exponent=0, e_max=3):
    """Run the Colon Criterion diagnostic for each generator against the ideal of the others."""
    gens = list(gens)
    if len(gens) < 2:
        raise PreconditionError("the independence diagnostic needs at least two generators")
    ring = gens[0].ring
    report = IndependenceReport([str(g) for g in gens])
    for i, f in enumerate(gens):
        others = Ideal(ring, gens[:i] + gens[i + 1 :])
        report.diagnostics.append(colon_criterion_diagnostic(others, f, q0_exponent, e_max))
    return report

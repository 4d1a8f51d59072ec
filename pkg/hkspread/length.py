"""Lengths of quotients and subquotients, Hilbert-Kunz functions and Hilbert-Kunz multiplicities.

All lengths are F_p-dimensions counted by standard monomials. Ratios and fits are exact
rationals; conversion to floating point happens only when reports are written.
"""

import logging

from dataclasses import dataclass
from fractions import Fraction
from .exceptions import EstimateError, LengthError
from .groebner import standard_monomials
from .ideal import Ideal, bracket_power, check_rings, ideal_colon

EXACT_METHODS = ("monomial-exact", "regular-exact")
FIT_METHODS = ("linear-fit", "last-sample")
METHOD_ALIASES = {"exact": "exact", "fit": "linear-fit", "last": "last-sample"}


@dataclass(frozen=True)
class LengthValue:
    """A length: a nonnegative integer, or infinite (value None)."""

    value: int = None

    @classmethod
    def infinite(cls):
        return cls(None)

    @property
    def is_finite(self):
        return self.value is not None

    def __int__(self):
        if self.value is None:
            raise LengthError("infinite length has no integer value")
        return self.value

    def to_json(self):
        return "infinite" if self.value is None else self.value

    def __str__(self):
        return "infinite" if self.value is None else str(self.value)


@dataclass(frozen=True)
class HKSample:
    """One value of the Hilbert-Kunz function: colength of a^[q] and colength / q^d."""

    e: int
    q: int
    colength: int
    normalized: Fraction

    def to_dict(self):
        return {"e": self.e, "q": self.q, "colength": self.colength, "normalized": self.normalized}


@dataclass(frozen=True)
class HKEstimate:
    """A Hilbert-Kunz multiplicity with the method that produced it. Exact methods carry error 0;
    fits carry the largest normalized residual."""

    value: Fraction
    method: str
    samples: tuple = ()
    error: Fraction = None
    trend: str = None

    @property
    def exact(self):
        return self.method in EXACT_METHODS

    def to_dict(self):
        return {
            "value": self.value,
            "method": self.method,
            "error": self.error,
            "trend": self.trend,
            "samples": [s.to_dict() for s in self.samples],
        }


def length_quotient(I):
    """Return the length of R/I, infinite when R/I has positive dimension."""
    gb = I.groebner()
    if gb.is_unit():
        return LengthValue(0)
    if not gb.is_zero_dimensional():
        return LengthValue.infinite()
    return LengthValue(sum(1 for _ in standard_monomials(gb)))


def length_subquotient(M, N):
    """Return the length of M/N for N ⊆ M by the colon filtration: with M = N + (g_1, ..., g_s),
    the length is the sum of the lengths of R/((N + (g_1, ..., g_{j-1})) : g_j)."""
    check_rings(M, N)
    for g in N.generators:
        if g not in M:
            raise LengthError(f"{N} is not contained in {M}: {g} is not a member")
    total = 0
    current = N
    for g in M.generators:
        if g in current:
            continue
        piece = length_quotient(ideal_colon(current, g))
        if not piece.is_finite:
            return LengthValue.infinite()
        total += piece.value
        current = current + Ideal(M.ring, [g])
    return LengthValue(total)


def require_m_primary(a):
    """Return the length of R/a, raising LengthError unless it is finite and positive."""
    base = length_quotient(a)
    if not base.is_finite or base.value == 0:
        raise LengthError(f"{a} is not primary to the maximal ideal: R/a has length {base}")
    return base.value


def hk_function(a, e_max):
    """Return the samples of q -> length(R/a^[q]) for q = p^e, e = 0..e_max."""
    require_m_primary(a)
    ring = a.ring
    p = ring.characteristic
    d = ring.dimension
    samples = []
    for e in range(e_max + 1):
        q = p ** e
        colength = length_quotient(bracket_power(a, q)).value
        logging.info(f"length(R/a^[{q}]) = {colength}")
        samples.append(HKSample(e, q, colength, Fraction(colength, q ** d)))
    return samples


def hk_trend(samples):
    """Classify the sampled ratios as constant, non-increasing, non-decreasing or mixed."""
    ratios = [s.normalized for s in samples]
    steps = [b - a for a, b in zip(ratios, ratios[1:])]
    if all(s == 0 for s in steps):
        return "constant"
    if all(s <= 0 for s in steps):
        return "non-increasing"
    if all(s >= 0 for s in steps):
        return "non-decreasing"
    logging.warning("Hilbert-Kunz ratios are not monotone: " + ", ".join(str(r) for r in ratios))
    return "mixed"


def least_squares(rows, rhs):
    """Solve the normal equations of an overdetermined system exactly."""
    k = len(rows[0])
    a = [[sum(r[i] * r[j] for r in rows) for j in range(k)] for i in range(k)]
    b = [sum(r[i] * y for r, y in zip(rows, rhs)) for i in range(k)]
    for col in range(k):
        pivot = next((r for r in range(col, k) if a[r][col] != 0), None)
        if pivot is None:
            raise EstimateError("least-squares system is singular: too few distinct samples")
        a[col], a[pivot] = a[pivot], a[col]
        b[col], b[pivot] = b[pivot], b[col]
        for r in range(k):
            if r == col or a[r][col] == 0:
                continue
            factor = a[r][col] / a[col][col]
            a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
            b[r] -= factor * b[col]
    return [b[i] / a[i][i] for i in range(k)]


def fit_hk(samples, d):
    """Fit length(q) = e*q^d + c*q^(d-1) to the samples by least squares. Return the leading
    coefficient, the second coefficient and the residuals."""
    if d == 0:
        basis = [lambda q: Fraction(1)]
    else:
        basis = [lambda q: Fraction(q) ** d, lambda q: Fraction(q) ** (d - 1)]
    rows = [[f(s.q) for f in basis] for s in samples]
    rhs = [Fraction(s.colength) for s in samples]
    coefficients = least_squares(rows, rhs)
    residuals = [y - sum(c * x for c, x in zip(coefficients, row)) for row, y in zip(rows, rhs)]
    if len(coefficients) == 1:
        coefficients.append(Fraction(0))
    return coefficients[0], coefficients[1], residuals


def ehk_estimate(a, e_max=3, method=None):
    """Estimate the Hilbert-Kunz multiplicity of an m-primary ideal.

    In a polynomial ring the Frobenius is flat, so length(R/a^[q]) = q^d length(R/a) and the
    multiplicity is the colength of a itself (monomial-exact or regular-exact). Otherwise the
    value is extrapolated from hk_function samples, by a least-squares fit (the default) or by the
    ratio at the largest q.
    """
    method = METHOD_ALIASES.get(method, method)
    ring = a.ring
    base = require_m_primary(a)
    if method in (None, "exact") + EXACT_METHODS:
        if ring.is_regular:
            tag = "monomial-exact" if a.is_monomial() else "regular-exact"
            return HKEstimate(Fraction(base), tag, error=Fraction(0))
        if method is not None:
            raise EstimateError(
                "exact Hilbert-Kunz multiplicities are only available in polynomial rings"
            )
        method = "linear-fit"
    if method not in FIT_METHODS:
        raise EstimateError(f"Unknown estimation method: {method}")
    if e_max < 1:
        raise EstimateError(f"{method} needs e_max >= 1, got {e_max}")

    samples = hk_function(a, e_max)
    trend = hk_trend(samples)
    d = ring.dimension
    if method == "last-sample":
        value = samples[-1].normalized
        error = abs(samples[-1].normalized - samples[-2].normalized)
    else:
        value, _, residuals = fit_hk(samples, d)
        error = max(abs(r) / Fraction(s.q) ** d for r, s in zip(residuals, samples))
    logging.info(f"e_HK{a} ~ {float(value):.6f} ({method})")
    return HKEstimate(value, method, tuple(samples), error, trend)

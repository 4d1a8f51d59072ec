"""Ideals of a RingSpec and the operations the length formulas are built from: sums, products,
Frobenius (bracket) powers, colons, intersections and minimal generator counts."""

import logging
import threading

from .exceptions import IdealError, RingError
from .groebner import buchberger, is_member, krull_dimension
from .poly import (
    FrobeniusExponent,
    MonomialOrder,
    Polynomial,
    RingSpec,
    inverse_mod,
    monomial_divides,
    monomial_lcm,
    monomial_quotient,
)


class Ideal:
    """An ideal given by generators. Equality is equality of reduced Groebner bases under the
    ring's order; the basis is computed once, on first use."""

    def __init__(self, ring, generators=()):
        gens = []
        for g in generators:
            if isinstance(g, int):
                g = ring.constant(g)
            if g.ring is not ring and g.ring != ring:
                raise RingError(f"generator {g} does not belong to {ring}")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb = None
        self._lock = threading.Lock()

    def groebner(self):
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    self._gb = buchberger(self.generators, ring=self.ring)
        return self._gb

    # ---- predicates ----

    def contains(self, f):
        return is_member(f, self)

    def __contains__(self, f):
        return self.contains(f)

    def issubset(self, other):
        """True if every generator of this ideal lies in other."""
        check_rings(self, other)
        return all(g in other for g in self.generators)

    def __le__(self, other):
        return self.issubset(other)

    def is_unit(self):
        return self.groebner().is_unit()

    def is_proper(self):
        return not self.is_unit()

    def is_zero(self):
        relations = Ideal(self.ring)
        return all(g in relations for g in self.generators)

    def is_monomial(self):
        return all(g.is_monomial() for g in self.generators)

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.generators)

    def is_m_primary(self):
        """True if R/I has finite nonzero length."""
        gb = self.groebner()
        return not gb.is_unit() and gb.is_zero_dimensional()

    def dimension(self):
        return krull_dimension(self)

    # ---- operations ----

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return ideal_product(self, other)

    def bracket_power(self, q):
        return bracket_power(self, q)

    def embed(self, ring, shift=0):
        """Return the extension of this ideal to a ring with more variables."""
        return Ideal(ring, [g.embed(ring, shift) for g in self.generators])

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ring is not other.ring and self.ring != other.ring:
            return False
        return self.groebner().generators == other.groebner().generators

    def __hash__(self):
        return hash(self.groebner().generators)

    def __str__(self):
        if not self.generators:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __repr__(self):
        return f"Ideal{self}"


def check_rings(I, J):
    if I.ring is not J.ring and I.ring != J.ring:
        raise RingError(f"ring mismatch: {I.ring} and {J.ring}")


def maximal_ideal(ring):
    """The homogeneous maximal ideal generated by all variables."""
    return Ideal(ring, ring.gens())


def unit_ideal(ring):
    return Ideal(ring, [ring.one()])


def ideal_sum(I, J):
    check_rings(I, J)
    return Ideal(I.ring, I.generators + J.generators)


def ideal_product(I, J):
    check_rings(I, J)
    products = []
    seen = set()
    for f in I.generators:
        for g in J.generators:
            fg = f * g
            if fg not in seen:
                seen.add(fg)
                products.append(fg)
    return Ideal(I.ring, products)


def bracket_power(I, q):
    """Return I^[q], generated by the q-th powers of the generators of I."""
    q = FrobeniusExponent.from_q(I.ring.characteristic, q).q
    if q == 1:
        return I
    return Ideal(I.ring, [g.qth_power(q) for g in I.generators])


def divide_exact(h, g):
    """Return h / g, raising IdealError when g does not divide h."""
    if not g:
        raise IdealError("division by the zero polynomial")
    ring = h.ring
    p = ring.characteristic
    key = ring.order.key
    lm = g.leading_monomial()
    inv = inverse_mod(g.leading_coefficient(), p)
    rem = dict(h.terms)
    quotient = {}
    while rem:
        m = max(rem, key=key)
        if not monomial_divides(lm, m):
            raise IdealError(f"{g} does not divide {h}")
        c = rem[m] * inv % p
        shift = monomial_quotient(m, lm)
        quotient[shift] = c
        for gm, gc in g.terms.items():
            t = tuple(a + b for a, b in zip(gm, shift))
            v = (rem.get(t, 0) - c * gc) % p
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return Polynomial(ring, quotient)


def _intersect_ambient(ring, gens1, gens2):
    """Intersect two ideals of a relation-free ring by eliminating t from t*I + (1 - t)*J."""
    if not gens1 or not gens2:
        return []
    (name,) = ring.fresh_names(1, stem="t")
    ext = RingSpec(
        ring.characteristic,
        (name,) + ring.variables,
        weights=(1,) + ring.weights,
        order=MonomialOrder(ring.order.kind),
        limits=ring.limits,
    )
    t = ext.var(name)
    lifted = [t * f.embed(ext, 1) for f in gens1] + [(1 - t) * g.embed(ext, 1) for g in gens2]
    gb = buchberger(lifted, order=MonomialOrder(ring.order.kind, eliminate=1), ring=ext)
    result = []
    for g in gb.generators:
        if all(m[0] == 0 for m in g.terms):
            result.append(Polynomial(ring, {m[1:]: c for m, c in g.terms.items()}))
    return result


def _monomial_exponent(f):
    return next(iter(f.terms))


def ideal_intersection(I, J):
    """Return I ∩ J."""
    check_rings(I, J)
    ring = I.ring
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    if ring.is_regular and I.is_monomial() and J.is_monomial():
        lcms = {
            monomial_lcm(_monomial_exponent(f), _monomial_exponent(g))
            for f in I.generators
            for g in J.generators
        }
        return Ideal(ring, [ring.monomial(m) for m in sorted(lcms, key=ring.order.key)])
    ambient = ring.ambient()
    relations = [r.rebind(ambient) for r in ring.relations]
    gens1 = [f.rebind(ambient) for f in I.generators] + relations
    gens2 = [g.rebind(ambient) for g in J.generators] + relations
    result = _intersect_ambient(ambient, gens1, gens2)
    return Ideal(ring, [h.rebind(ring) for h in result])


def _colon_element(I, g):
    """Return (I : g) for a single nonzero element g."""
    ring = I.ring
    if g in I:
        return unit_ideal(ring)
    if ring.is_regular and I.is_monomial() and g.is_monomial():
        m = _monomial_exponent(g)
        gens = [
            ring.monomial(tuple(max(a - b, 0) for a, b in zip(_monomial_exponent(f), m)))
            for f in I.generators
        ]
        return Ideal(ring, gens)
    # (I : g) is the intersection of I with (g), divided by g, computed upstairs in the ambient ring
    ambient = ring.ambient()
    base = [f.rebind(ambient) for f in I.generators] + [r.rebind(ambient) for r in ring.relations]
    lifted = g.rebind(ambient)
    inter = _intersect_ambient(ambient, base, [lifted])
    return Ideal(ring, [divide_exact(h, lifted).rebind(ring) for h in inter])


def ideal_colon(I, J):
    """Return (I : J) = {r : rJ ⊆ I}. J may be an Ideal, a Polynomial or a list of Polynomials; the
    colon is the intersection of the colons by each generator."""
    if isinstance(J, Polynomial):
        J = [J]
    if isinstance(J, Ideal):
        check_rings(I, J)
        gens = J.generators
    else:
        gens = list(J)
        for g in gens:
            if g.ring is not I.ring and g.ring != I.ring:
                raise RingError(f"ring mismatch: {g.ring} and {I.ring}")
            if not g:
                raise IdealError("cannot take a colon by the zero polynomial")
    if not gens:
        return unit_ideal(I.ring)
    result = None
    for g in gens:
        colon = _colon_element(I, g)
        result = colon if result is None else ideal_intersection(result, colon)
    logging.info(f"colon has {len(result.generators)} generators")
    return result


def min_gens(I):
    """Return the minimal number of generators of a homogeneous ideal, as the length of I/mI."""
    from .length import length_subquotient

    if not I.is_homogeneous():
        raise IdealError(f"minimal generator counts need a homogeneous ideal, got {I}")
    if I.is_unit():
        raise IdealError("minimal generator counts need a proper ideal")
    if not I.generators:
        return 0
    return length_subquotient(I, maximal_ideal(I.ring) * I).value

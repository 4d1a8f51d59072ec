"""Reduced Groebner bases by Buchberger's algorithm, with normal forms, Krull dimension and
standard monomials.

Quotient rings are handled by appending the ring relations to every generating set and
computing in the ambient polynomial ring.
"""

import heapq
import logging

from itertools import combinations
from .exceptions import LengthError, ResourceError, RingError
from .poly import (
    MonomialOrder,
    Polynomial,
    inverse_mod,
    monomial_divides,
    monomial_lcm,
    monomial_quotient,
)

__all__ = [
    "GroebnerBasis",
    "MonomialOrder",
    "buchberger",
    "is_member",
    "krull_dimension",
    "normal_form",
    "standard_monomials",
]


class _Budget:
    """Counts reduction steps against the ring's guard."""

    def __init__(self, limits):
        self.limits = limits
        self.steps = 0

    def tick(self):
        self.steps += 1
        if self.steps > self.limits.max_gb_steps:
            raise ResourceError(
                f"Groebner basis computation exceeded {self.limits.max_gb_steps} reduction steps"
            )


def _reduce(f, basis, order, p, budget=None):
    """Fully reduce the term dict f by basis, a list of (leading monomial, monic term dict) pairs."""
    if not basis or not f:
        return dict(f)
    heap_key = order.heap_key
    f = dict(f)
    heap = [(heap_key(m), m) for m in f]
    heapq.heapify(heap)
    remainder = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = f.pop(m, 0)
        if not c:
            continue
        divisor = None
        for lm, g in basis:
            if monomial_divides(lm, m):
                divisor = (lm, g)
                break
        if divisor is None:
            remainder[m] = c
            continue
        if budget:
            budget.tick()
        lm, g = divisor
        shift = monomial_quotient(m, lm)
        for gm, gc in g.items():
            if gm == lm:
                continue
            t = tuple(a + b for a, b in zip(gm, shift))
            old = f.get(t)
            v = ((old or 0) - c * gc) % p
            if v:
                if old is None:
                    heapq.heappush(heap, (heap_key(t), t))
                f[t] = v
            elif old is not None:
                del f[t]
    return remainder


def _monic(f, order, p):
    lm = max(f, key=order.key)
    inv = inverse_mod(f[lm], p)
    return lm, {m: c * inv % p for m, c in f.items()}


def _minimal_monomials(monomials, order):
    """Return the minimal generators of a monomial ideal, ascending in the order."""
    kept = []
    for m in sorted(set(monomials), key=order.key):
        if not any(monomial_divides(k, m) for k in kept):
            kept.append(m)
    return kept


class GroebnerBasis:
    """A reduced Groebner basis: monic, interreduced, and unique for its ideal and order."""

    def __init__(self, ring, generators, order):
        self.ring = ring
        self.order = order
        self.generators = tuple(generators)
        # Leading-term ideal cache
        self.leading_monomials = tuple(g.leading_monomial(order) for g in self.generators)
        self._pairs = [
            (lm, dict(g.terms)) for lm, g in zip(self.leading_monomials, self.generators)
        ]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.ring == other.ring and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return "GroebnerBasis([" + ", ".join(str(g) for g in self.generators) + "])"

    def is_unit(self):
        """True if the basis generates the whole ring."""
        return any(not any(lm) for lm in self.leading_monomials)

    def is_zero_dimensional(self):
        """True if every variable has a pure power among the leading monomials."""
        if self.is_unit():
            return True
        n = self.ring.ngens
        for i in range(n):
            if not any(lm[i] > 0 and not any(lm[:i] + lm[i + 1 :]) for lm in self.leading_monomials):
                return False
        return True

    def reduce(self, f):
        if f.ring is not self.ring and f.ring != self.ring:
            raise RingError(f"ring mismatch: {f.ring} and {self.ring}")
        rem = _reduce(f.terms, self._pairs, self.order, self.ring.characteristic)
        return Polynomial(f.ring, rem)

    def contains(self, f):
        return not self.reduce(f)

    def __contains__(self, f):
        return self.contains(f)

    def _pure_power_bounds(self):
        bounds = []
        for i in range(self.ring.ngens):
            powers = [
                lm[i]
                for lm in self.leading_monomials
                if lm[i] > 0 and not any(lm[:i] + lm[i + 1 :])
            ]
            bounds.append(min(powers))
        return bounds


def buchberger(gens, order=None, ring=None):
    """Return the reduced Groebner basis of (gens) + (relations of the ring), using both Buchberger
    criteria and the normal selection strategy. Raises ResourceError when the ring's step or
    basis-size guard is exceeded."""
    gens = list(gens)
    if ring is None:
        if not gens:
            raise RingError("a ring is required for an empty generating set")
        ring = gens[0].ring
    for g in gens:
        if g.ring is not ring and g.ring != ring:
            raise RingError(f"ring mismatch: {g.ring} and {ring}")
    order = order or ring.order
    key = order.key
    p = ring.characteristic
    limits = ring.limits

    seeds = [dict(g.terms) for g in gens if g] + [dict(r.terms) for r in ring.relations]
    if not seeds:
        return GroebnerBasis(ring, [], order)

    if all(len(f) == 1 for f in seeds):
        # Monomial ideals: the minimal monomial generators are the reduced basis
        minimal = _minimal_monomials([next(iter(f)) for f in seeds], order)
        if any(not any(m) for m in minimal):
            minimal = [(0,) * ring.ngens]
        return GroebnerBasis(ring, [Polynomial._make(ring, {m: 1}) for m in minimal], order)

    budget = _Budget(limits)
    basis = []
    pending = set()
    heap = []

    def add(f):
        lm, g = _monic(f, order, p)
        idx = len(basis)
        basis.append((lm, g))
        if len(basis) > limits.max_basis_size:
            raise ResourceError(f"Groebner basis grew beyond {limits.max_basis_size} elements")
        for j in range(idx):
            lcm = monomial_lcm(basis[j][0], lm)
            pending.add((j, idx))
            heapq.heappush(heap, (sum(lcm), key(lcm), j, idx))

    for f in sorted(seeds, key=lambda f: key(max(f, key=key))):
        r = _reduce(f, basis, order, p, budget)
        if r:
            add(r)

    while heap:
        _, _, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        lmi, gi = basis[i]
        lmj, gj = basis[j]
        if all(a == 0 or b == 0 for a, b in zip(lmi, lmj)):
            # Product criterion: coprime leading monomials
            continue
        lcm = monomial_lcm(lmi, lmj)
        if _chain_criterion(i, j, lcm, basis, pending):
            continue
        s = _s_polynomial(lcm, lmi, gi, lmj, gj, p)
        r = _reduce(s, basis, order, p, budget)
        if r:
            add(r)

    # Keep the elements with minimal leading monomials, then interreduce
    minimal = []
    for lm, g in sorted(basis, key=lambda t: key(t[0])):
        if not any(monomial_divides(k, lm) for k, _ in minimal):
            minimal.append((lm, g))
    reduced = []
    for idx, (lm, g) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        r = _reduce(g, others, order, p, budget)
        reduced.append(Polynomial._make(ring, r))
    logging.info(
        f"Groebner basis of {len(seeds)} generators: {len(reduced)} elements, "
        f"{budget.steps} reduction steps"
    )
    return GroebnerBasis(ring, reduced, order)


def _chain_criterion(i, j, lcm, basis, pending):
    """Buchberger's second criterion: skip (i, j) when some k has a leading monomial dividing the
    lcm and the pairs (i, k), (j, k) have already been treated."""
    for k, (lmk, _) in enumerate(basis):
        if k == i or k == j:
            continue
        if not monomial_divides(lmk, lcm):
            continue
        if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
            continue
        return True
    return False


def _s_polynomial(lcm, lmi, gi, lmj, gj, p):
    si = monomial_quotient(lcm, lmi)
    sj = monomial_quotient(lcm, lmj)
    s = {}
    for m, c in gi.items():
        s[tuple(a + b for a, b in zip(m, si))] = c
    for m, c in gj.items():
        t = tuple(a + b for a, b in zip(m, sj))
        v = (s.get(t, 0) - c) % p
        if v:
            s[t] = v
        else:
            s.pop(t, None)
    return s


def normal_form(f, G):
    """Return the remainder of f on division by the Groebner basis G."""
    return G.reduce(f)


def is_member(f, I):
    """Return True if f lies in the ideal I (an Ideal or a GroebnerBasis)."""
    G = I if isinstance(I, GroebnerBasis) else I.groebner()
    return not normal_form(f, G)


def krull_dimension(I):
    """Return the Krull dimension of R/I from the leading-term ideal of I: the size of a largest
    set of variables containing the support of no leading monomial. The unit ideal gives -1."""
    G = I if isinstance(I, GroebnerBasis) else I.groebner()
    if G.is_unit():
        return -1
    n = G.ring.ngens
    supports = [frozenset(i for i, e in enumerate(lm) if e) for lm in G.leading_monomials]
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            s = set(subset)
            if not any(support <= s for support in supports):
                return size
    return 0


def standard_monomials(I):
    """Enumerate the monomials outside the leading-term ideal of I. Their number is the length of
    R/I. Raises LengthError when the quotient has positive dimension."""

    G = I if isinstance(I, GroebnerBasis) else I.groebner()
    if G.is_unit():
        return
    if not G.is_zero_dimensional():
        raise LengthError("infinite length: the quotient has positive dimension")
    bounds = G._pure_power_bounds()
    lms = G.leading_monomials
    n = len(bounds)
    prefix = []

    def walk(i):
        if i == n:
            yield tuple(prefix)
            return
        tail = [0] * (n - i - 1)
        for a in range(bounds[i]):
            prefix.append(a)
            current = prefix + tail
            if any(monomial_divides(lm, current) for lm in lms):
                # Raising this exponent further stays inside the leading-term ideal
                prefix.pop()
                break
            yield from walk(i + 1)
            prefix.pop()

    yield from walk(0)

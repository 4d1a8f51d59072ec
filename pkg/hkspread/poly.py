"""Exact arithmetic in F_p and sparse multivariate polynomials.

A polynomial is a map from exponent tuples (monomials) to nonzero residues mod p,
stored in descending order of its ring's monomial order. Polynomials and rings are
immutable once built.
"""

from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from .exceptions import ResourceError, RingError

ORDER_KINDS = ("degrevlex", "lex", "deglex")


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def inverse_mod(a, p):
    """Return the inverse of a modulo the prime p."""
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse modulo {p}")
    return pow(a, p - 2, p)


class PrimeFieldElement:
    """An element of F_p, always reduced to [0, p)."""

    __slots__ = ("value", "characteristic")

    def __init__(self, value, characteristic):
        if not is_prime(characteristic):
            raise RingError(f"characteristic must be prime, got {characteristic}")
        self.characteristic = characteristic
        self.value = int(value) % characteristic

    def _other(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.characteristic != self.characteristic:
                raise RingError(
                    f"cannot combine elements of F_{self.characteristic} and F_{other.characteristic}"
                )
            return other.value
        return int(other)

    def __add__(self, other):
        return PrimeFieldElement(self.value + self._other(other), self.characteristic)

    __radd__ = __add__

    def __sub__(self, other):
        return PrimeFieldElement(self.value - self._other(other), self.characteristic)

    def __rsub__(self, other):
        return PrimeFieldElement(self._other(other) - self.value, self.characteristic)

    def __mul__(self, other):
        return PrimeFieldElement(self.value * self._other(other), self.characteristic)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * PrimeFieldElement(self._other(other), self.characteristic).inverse()

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.characteristic)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return PrimeFieldElement(pow(self.value, n, self.characteristic), self.characteristic)

    def inverse(self):
        return PrimeFieldElement(inverse_mod(self.value, self.characteristic), self.characteristic)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.characteristic == other.characteristic and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.characteristic
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.characteristic))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"F{self.characteristic}({self.value})"


@dataclass(frozen=True)
class FrobeniusExponent:
    """The exponent e of a Frobenius power q = p^e."""

    characteristic: int
    e: int

    def __post_init__(self):
        if self.e < 0:
            raise RingError(f"Frobenius exponent must be nonnegative, got {self.e}")

    @property
    def q(self):
        return self.characteristic ** self.e

    @classmethod
    def from_q(cls, characteristic, q):
        """Return the exponent of q, which must be a power of the characteristic."""
        if isinstance(q, FrobeniusExponent):
            if q.characteristic != characteristic:
                raise RingError(f"{q.q} is not a power of {characteristic}")
            return q
        q = int(q)
        e = 0
        n = q
        while n > 1 and n % characteristic == 0:
            n //= characteristic
            e += 1
        if n != 1:
            raise RingError(f"{q} is not a power of the characteristic {characteristic}")
        return cls(characteristic, e)

    def __int__(self):
        return self.q


@dataclass(frozen=True)
class ResourceLimits:
    """Guards against runaway computations; exceeding one raises ResourceError."""

    max_gb_steps: int = 500000
    max_basis_size: int = 10000
    max_exponent: int = 65536


# ------------------------------- monomials -------------------------------
# A monomial is a tuple of nonnegative exponents, one per ring variable.


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a, b):
    """Return True if a divides b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_quotient(a, b):
    """Return a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def format_monomial(m, variables):
    parts = []
    for name, e in zip(variables, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class MonomialOrder:
    """A global monomial order. permutation lists the ring variable indices from most to least
    significant; eliminate > 0 compares the total degree in the first eliminate variables first,
    which makes the order an elimination order for them."""

    kind: str = "degrevlex"
    permutation: tuple = None
    eliminate: int = 0

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise RingError(f"Unknown monomial order: {self.kind}")

    @cached_property
    def key(self):
        """Sort key: a larger key means a larger monomial."""
        kind = self.kind
        perm = self.permutation
        elim = self.eliminate

        def base(m):
            if perm:
                m = tuple(m[i] for i in perm)
            if kind == "lex":
                return tuple(m)
            if kind == "deglex":
                return (sum(m),) + tuple(m)
            return (sum(m),) + tuple(-e for e in reversed(m))

        if elim:
            return lambda m: (sum(m[:elim]),) + base(m)
        return base

    @cached_property
    def heap_key(self):
        """Negated sort key, so that heapq pops the largest monomial first."""
        key = self.key
        return lambda m: tuple(-k for k in key(m))


# ------------------------------- rings -------------------------------


class RingSpec:
    """F_p[variables] modulo homogeneous relations. With no relations this is a polynomial
    (regular) ring. The Krull dimension is computed from the relations, never asserted."""

    def __init__(
        self, characteristic, variables, relations=(), weights=None, order="degrevlex", limits=None
    ):
        if not is_prime(characteristic):
            raise RingError("characteristic must be prime")
        if isinstance(variables, str):
            variables = variables.replace(",", " ").split()
        variables = tuple(variables)
        if not variables:
            raise RingError("a ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise RingError("duplicate variable names: " + ", ".join(variables))
        self.characteristic = characteristic
        self.variables = variables
        self.order = order if isinstance(order, MonomialOrder) else MonomialOrder(order)
        self.limits = limits or ResourceLimits()
        if weights is None:
            weights = (1,) * len(variables)
        weights = tuple(weights)
        if len(weights) != len(variables) or any(w < 1 for w in weights):
            raise RingError("weights must be positive, one per variable")
        self.weights = weights

        rels = []
        for r in relations:
            if isinstance(r, Polynomial):
                if (
                    r.ring.characteristic != characteristic
                    or r.ring.variables != variables
                ):
                    raise RingError(f"relation {r} does not belong to this ring")
                r = r.terms
            poly = Polynomial(self, r)
            if not poly:
                continue
            if not poly.is_homogeneous(weights):
                raise RingError(f"quotient relation {poly} is not homogeneous")
            rels.append(poly)
        self.relations = tuple(rels)
        self._dimension = None
        self._ambient = None

    @property
    def ngens(self):
        return len(self.variables)

    @property
    def is_regular(self):
        """True for a relation-free polynomial ring."""
        return not self.relations

    @property
    def dimension(self):
        """Krull dimension of this ring, computed from the leading terms of its relations."""
        if self._dimension is None:
            if not self.relations:
                self._dimension = self.ngens
            else:
                from .groebner import buchberger, krull_dimension

                ambient = self.ambient()
                gb = buchberger([r.rebind(ambient) for r in self.relations], ring=ambient)
                self._dimension = krull_dimension(gb)
        return self._dimension

    def ambient(self):
        """Return the polynomial ring this ring is a quotient of."""
        if not self.relations:
            return self
        if self._ambient is None:
            self._ambient = RingSpec(
                self.characteristic,
                self.variables,
                weights=self.weights,
                order=self.order,
                limits=self.limits,
            )
        return self._ambient

    def extend(self, names):
        """Return R[names], with the new variables appended after the old ones."""
        names = tuple(names)
        pad = (0,) * len(names)
        relations = [{m + pad: c for m, c in r.terms.items()} for r in self.relations]
        return RingSpec(
            self.characteristic,
            self.variables + names,
            relations=relations,
            weights=self.weights + (1,) * len(names),
            order=MonomialOrder(self.order.kind),
            limits=self.limits,
        )

    def fresh_names(self, count, stem="z"):
        """Return count variable names not used by this ring."""
        names = []
        i = 0
        while len(names) < count:
            name = stem if i == 0 else f"{stem}{i}"
            if name not in self.variables:
                names.append(name)
            i += 1
        return names

    def zero(self):
        return Polynomial._make(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        return Polynomial(self, {(0,) * self.ngens: c})

    def monomial(self, exponents, coefficient=1):
        return Polynomial(self, {tuple(exponents): coefficient})

    def var(self, name):
        if name not in self.variables:
            raise RingError(f"unknown variable '{name}'")
        i = self.variables.index(name)
        return self.monomial(tuple(1 if j == i else 0 for j in range(self.ngens)))

    def gens(self):
        return tuple(self.var(v) for v in self.variables)

    def _identity(self):
        return (
            self.characteristic,
            self.variables,
            self.weights,
            frozenset(frozenset(r.terms.items()) for r in self.relations),
        )

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, RingSpec):
            return NotImplemented
        return self._identity() == other._identity()

    def __hash__(self):
        return hash(self._identity())

    def __str__(self):
        base = f"F_{self.characteristic}[{', '.join(self.variables)}]"
        if self.relations:
            base += "/(" + ", ".join(str(r) for r in self.relations) + ")"
        return base

    def __repr__(self):
        return f"RingSpec({self})"


# ------------------------------- polynomials -------------------------------


def check_same_ring(f, g):
    if f.ring is not g.ring and f.ring != g.ring:
        raise RingError(f"ring mismatch: {f.ring} and {g.ring}")


class Polynomial:
    """A sparse polynomial with coefficients in F_p."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms=None):
        p = ring.characteristic
        n = ring.ngens
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != n or any(e < 0 for e in m):
                raise RingError(f"monomial {m} does not fit {n} variables")
            c = (clean.get(m, 0) + int(c)) % p
            if c:
                clean[m] = c
            else:
                clean.pop(m, None)
        self._init(ring, clean)

    def _init(self, ring, clean):
        key = ring.order.key
        self.ring = ring
        self.terms = MappingProxyType(
            dict(sorted(clean.items(), key=lambda t: key(t[0]), reverse=True))
        )
        self._hash = None

    @classmethod
    def _make(cls, ring, clean):
        """Build from a dict already reduced mod p with no zero coefficients."""
        f = cls.__new__(cls)
        f._init(ring, clean)
        return f

    def rebind(self, ring):
        """Return the same terms as an element of another ring with the same variables."""
        if ring.variables != self.ring.variables or ring.characteristic != self.ring.characteristic:
            raise RingError(f"cannot move {self} from {self.ring} to {ring}")
        return Polynomial._make(ring, dict(self.terms))

    def embed(self, ring, shift=0):
        """Place this polynomial in a ring with more variables, this ring's variables starting at
        position shift."""
        if ring.characteristic != self.ring.characteristic or ring.ngens < shift + self.ring.ngens:
            raise RingError(f"cannot embed {self.ring} in {ring}")
        before = (0,) * shift
        after = (0,) * (ring.ngens - shift - self.ring.ngens)
        return Polynomial._make(ring, {before + m + after: c for m, c in self.terms.items()})

    # ---- predicates ----

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_monomial(self):
        """True for a single term (a scalar multiple of a monomial)."""
        return len(self.terms) == 1

    def is_homogeneous(self, weights=None):
        weights = weights or self.ring.weights
        degrees = {sum(w * e for w, e in zip(weights, m)) for m in self.terms}
        return len(degrees) <= 1

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def max_exponent(self):
        return max((max(m) for m in self.terms if m), default=0)

    def exponent_bounds(self):
        """The largest exponent of each variable over the support."""
        if not self.terms:
            return (0,) * self.ring.ngens
        return tuple(max(column) for column in zip(*self.terms))

    # ---- leading data ----

    def leading_monomial(self, order=None):
        if not self.terms:
            return None
        if order is None or order == self.ring.order:
            return next(iter(self.terms))
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order=None):
        m = self.leading_monomial(order)
        return None if m is None else self.terms[m]

    def monic(self, order=None):
        if not self.terms:
            return self
        inv = inverse_mod(self.leading_coefficient(order), self.ring.characteristic)
        return self.scale(inv)

    def scale(self, c):
        p = self.ring.characteristic
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial._make(self.ring, {m: v * c % p for m, v in self.terms.items()})

    # ---- arithmetic ----

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            check_same_ring(self, other)
            return other
        if isinstance(other, (int, PrimeFieldElement)):
            return self.ring.constant(int(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return poly_add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return poly_add(other, -self)

    def __mul__(self, other):
        if isinstance(other, (int, PrimeFieldElement)):
            return self.scale(int(other))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise RingError(f"polynomial powers need a nonnegative integer exponent, got {n}")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def qth_power(self, q):
        return poly_qth_power(self, q)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            if self.ring is not other.ring and self.ring != other.ring:
                return False
            return dict(self.terms) == dict(other.terms)
        if isinstance(other, int):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms.items():
            mono = format_monomial(m, self.ring.variables)
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


def poly_add(f, g):
    """Return f + g."""
    check_same_ring(f, g)
    p = f.ring.characteristic
    result = dict(f.terms)
    for m, c in g.terms.items():
        v = (result.get(m, 0) + c) % p
        if v:
            result[m] = v
        else:
            result.pop(m, None)
    return Polynomial._make(f.ring, result)


def poly_mul(f, g):
    """Return f * g."""
    check_same_ring(f, g)
    if not f.terms or not g.terms:
        return f.ring.zero()
    cap = f.ring.limits.max_exponent
    if any(a + b > cap for a, b in zip(f.exponent_bounds(), g.exponent_bounds())):
        raise ResourceError(f"product exponents would exceed the maximum exponent {cap}")
    p = f.ring.characteristic
    result = {}
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            v = (result.get(m, 0) + c1 * c2) % p
            if v:
                result[m] = v
            else:
                result.pop(m, None)
    return Polynomial._make(f.ring, result)


def poly_qth_power(f, q):
    """Return f^q for q a power of p, using the Frobenius endomorphism: every exponent is scaled by
    q and every coefficient raised to the q-th power."""
    p = f.ring.characteristic
    q = FrobeniusExponent.from_q(p, q).q
    cap = f.ring.limits.max_exponent
    if f.max_exponent() * q > cap:
        raise ResourceError(
            f"Frobenius power q={q} of {f} would exceed the maximum exponent {cap}"
        )
    return Polynomial._make(
        f.ring, {tuple(e * q for e in m): pow(c, q, p) for m, c in f.terms.items()}
    )

"""Parser and canonical printer for session scripts.

A script is a sequence of statements, each ended by ';' or a newline:

    char 3
    vars x y z
    quotient x^2 + y*z
    ideal a = x, y, z
    ehk a e_max=3 method=fit

'#' starts a comment. Polynomials are infix with '+', '-', '*', '^' and parentheses; a product
must be written with '*'. The name m always denotes the homogeneous maximal ideal unless it is
bound explicitly.
"""

import re

from dataclasses import dataclass, field
from typing import NamedTuple
from .exceptions import ParseError, ResourceError, RingError
from .poly import FrobeniusExponent, RingSpec, is_prime

TOKENS = [
    ("newline", r"\n"),
    ("skip", r"[ \t\r]+"),
    ("comment", r"#[^\n]*"),
    ("int", r"\d+"),
    ("name", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("op", r"[-+*^()=,;]"),
    ("error", r"."),
]
TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in TOKENS))

METHODS = ("fit", "last", "exact")

# Positional ideal names and accepted options per command
COMMANDS = {
    "gb": (1, ()),
    "length": (1, ()),
    "colon": (2, ()),
    "ehk": (1, ("e_max", "method")),
    "spread": (1, ("a", "q0", "e_max")),
    "spread_hk": (1, ("a", "q0", "e_max")),
    "independent": (1, ("q0", "e_max")),
    "criterion": (1, ("x", "q0", "e_max")),
    "fspread": (1, ("e_max",)),
}
IDENTITIES = {
    "product": (2, ("ell", "q", "e_max")),
    "self": (1, ("q", "q0", "e_max")),
    "lemma33": (1, ("z", "a", "q", "q0", "e_max")),
    "basechange": (1, ("s", "q", "e_max")),
    "corollary": (1, ("q", "q0", "e_max")),
    "spreadbc": (1, ("s", "q0", "e_max")),
}
REQUIRED = {
    "criterion": ("x",),
    "product": ("ell", "q"),
    "self": ("q",),
    "lemma33": ("z",),
    "basechange": ("s", "q"),
    "spreadbc": ("s",),
}
INT_OPTIONS = ("e_max", "ell", "s")
POLY_OPTIONS = ("x", "z")


class Token(NamedTuple):
    type: str
    value: str
    line: int
    column: int


@dataclass
class Command:
    """One command: its name, positional arguments (identity kind first for identity commands),
    and typed options."""

    name: str
    args: list
    options: dict = field(default_factory=dict)
    line: int = field(default=0, compare=False)

    @property
    def kind(self):
        return self.args[0] if self.name == "identity" else None

    @property
    def names(self):
        return self.args[1:] if self.name == "identity" else self.args


@dataclass
class SessionScript:
    ring: RingSpec
    ideals: dict = field(default_factory=dict)
    commands: list = field(default_factory=list)


def tokenize(text):
    """Yield tokens; ';' and newlines both become 'end' tokens. Comments and blanks are dropped."""
    line = 1
    start = 0
    for mo in TOKEN_RE.finditer(text):
        kind = mo.lastgroup
        value = mo.group()
        column = mo.start() - start + 1
        if kind == "newline":
            yield Token("end", "\n", line, column)
            line += 1
            start = mo.end()
        elif kind in ("skip", "comment"):
            continue
        elif kind == "error":
            raise ParseError(f"unexpected character '{value}'", line, column)
        elif kind == "op" and value == ";":
            yield Token("end", ";", line, column)
        else:
            yield Token(kind, value, line, column)
    yield Token("eof", "", line, len(text) - start + 1)


class Parser:
    def __init__(self, text, order="degrevlex", limits=None):
        self.tokens = list(tokenize(text))
        self.pos = 0
        self.order = order
        self.limits = limits
        self.characteristic = None
        self.variables = None
        self.relations = []
        self.ring = None
        self.ideals = {}
        self.commands = []

    # ---- token helpers ----

    @property
    def current(self):
        return self.tokens[self.pos]

    def advance(self):
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def error(self, message, token=None):
        token = token or self.current
        return ParseError(message, token.line, token.column)

    def expect(self, kind, value=None):
        token = self.current
        if token.type != kind or (value is not None and token.value != value):
            wanted = repr(value) if value is not None else kind
            found = repr(token.value) if token.value.strip() else token.type
            raise self.error(f"expected {wanted}, found {found}")
        return self.advance()

    def at_end(self):
        return self.current.type in ("end", "eof")

    def end_statement(self):
        token = self.current
        if token.type == "eof":
            return
        if token.type != "end":
            if token.type in ("int", "name") or token.value == "(":
                raise self.error("implicit multiplication is not allowed, write '*'")
            raise self.error(f"unexpected {token.value!r}")
        self.advance()

    # ---- statements ----

    def parse(self):
        while self.current.type != "eof":
            if self.current.type == "end":
                self.advance()
                continue
            self.statement()
        if self.ring is None:
            self.finish_ring(self.current)
        return SessionScript(self.ring, self.ideals, self.commands)

    def statement(self):
        token = self.expect("name")
        keyword = token.value
        if keyword == "char":
            self.declare_char(token)
        elif keyword == "vars":
            self.declare_vars(token)
        elif keyword == "quotient":
            self.declare_quotient(token)
        elif keyword == "ideal":
            self.bind_ideal(token)
        elif keyword == "identity":
            self.identity(token)
        elif keyword in COMMANDS:
            self.command(token, keyword, *COMMANDS[keyword])
        else:
            raise self.error(f"unknown statement '{keyword}'", token)
        self.end_statement()

    def declare_char(self, keyword):
        if self.characteristic is not None:
            raise self.error("duplicate char declaration", keyword)
        token = self.expect("int")
        p = int(token.value)
        if not is_prime(p):
            raise self.error("characteristic must be prime", token)
        self.characteristic = p

    def declare_vars(self, keyword):
        if self.variables is not None:
            raise self.error("duplicate vars declaration", keyword)
        names = []
        while self.current.type == "name":
            token = self.advance()
            if token.value in names:
                raise self.error(f"duplicate variable '{token.value}'", token)
            names.append(token.value)
        if not names:
            raise self.error("vars needs at least one variable name")
        self.variables = tuple(names)

    def base_ring(self, token):
        if self.characteristic is None or self.variables is None:
            raise self.error("char and vars must be declared first", token)
        return RingSpec(self.characteristic, self.variables, order=self.order, limits=self.limits)

    def declare_quotient(self, keyword):
        if self.ring is not None:
            raise self.error("quotient relations must come before ideals and commands", keyword)
        ring = self.base_ring(keyword)
        start = self.current
        relation = self.polynomial(ring)
        if not relation.is_homogeneous():
            raise self.error(f"quotient relation {relation} is not homogeneous", start)
        self.relations.append(relation)

    def finish_ring(self, token):
        if self.ring is None:
            base = self.base_ring(token)
            self.ring = RingSpec(
                base.characteristic,
                base.variables,
                relations=[dict(r.terms) for r in self.relations],
                order=self.order,
                limits=self.limits,
            )
        return self.ring

    def bind_ideal(self, keyword):
        ring = self.finish_ring(keyword)
        token = self.expect("name")
        if token.value in self.ideals:
            raise self.error(f"duplicate binding '{token.value}'", token)
        if token.value in ring.variables:
            raise self.error(f"'{token.value}' is already a variable", token)
        self.expect("op", "=")
        gens = [self.polynomial(ring)]
        while self.current.value == ",":
            self.advance()
            gens.append(self.polynomial(ring))
        self.ideals[token.value] = tuple(gens)

    def ideal_name(self):
        token = self.expect("name")
        if token.value not in self.ideals and token.value != "m":
            raise self.error(f"unknown ideal '{token.value}'", token)
        return token.value

    def identity(self, keyword):
        token = self.expect("name")
        if token.value not in IDENTITIES:
            raise self.error(f"unknown identity '{token.value}'", token)
        arity, allowed = IDENTITIES[token.value]
        self.command(keyword, "identity", arity, allowed, kind=token.value)

    def command(self, keyword, name, arity, allowed, kind=None):
        self.finish_ring(keyword)
        args = [kind] if kind else []
        for _ in range(arity):
            args.append(self.ideal_name())
        options = {}
        while not self.at_end():
            key = self.expect("name")
            if key.value not in allowed:
                raise self.error(f"unknown option '{key.value}' for {kind or name}", key)
            if key.value in options:
                raise self.error(f"duplicate option '{key.value}'", key)
            self.expect("op", "=")
            options[key.value] = self.option_value(key.value)
        for required in REQUIRED.get(kind or name, ()):
            if required not in options:
                raise self.error(f"{kind or name} needs option {required}=", keyword)
        self.commands.append(Command(name, args, options, keyword.line))

    def power_of_p(self):
        token = self.expect("int")
        try:
            return FrobeniusExponent.from_q(self.characteristic, int(token.value)).q
        except RingError:
            raise self.error(
                f"{token.value} is not a power of the characteristic {self.characteristic}", token
            )

    def option_value(self, key):
        if key in INT_OPTIONS:
            return int(self.expect("int").value)
        if key == "q0":
            return self.power_of_p()
        if key == "q":
            values = [self.power_of_p()]
            while self.current.value == ",":
                self.advance()
                values.append(self.power_of_p())
            return values
        if key == "a":
            return self.ideal_name()
        if key == "method":
            token = self.expect("name")
            if token.value not in METHODS:
                raise self.error(f"method must be one of {', '.join(METHODS)}", token)
            return token.value
        if key in POLY_OPTIONS:
            return self.polynomial(self.ring)
        raise self.error(f"unknown option '{key}'")

    # ---- polynomials ----

    def polynomial(self, ring):
        """expr := term (('+' | '-') term)*"""
        result = self.term(ring)
        while self.current.value in ("+", "-") and self.current.type == "op":
            op = self.advance().value
            rhs = self.term(ring)
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self, ring):
        result = self.unary(ring)
        while self.current.type == "op" and self.current.value == "*":
            op = self.advance()
            rhs = self.unary(ring)
            try:
                result = result * rhs
            except ResourceError as e:
                raise self.error(str(e), op)
        return result

    def unary(self, ring):
        if self.current.type == "op" and self.current.value == "-":
            self.advance()
            return -self.unary(ring)
        return self.power(ring)

    def power(self, ring):
        base = self.atom(ring)
        if self.current.type == "op" and self.current.value == "^":
            self.advance()
            exponent = self.expect("int")
            try:
                return base ** int(exponent.value)
            except ResourceError as e:
                raise self.error(str(e), exponent)
        return base

    def atom(self, ring):
        token = self.current
        if token.type == "int":
            self.advance()
            return ring.constant(int(token.value))
        if token.type == "name":
            if token.value not in ring.variables:
                raise self.error(f"unknown variable '{token.value}'", token)
            self.advance()
            return ring.var(token.value)
        if token.type == "op" and token.value == "(":
            self.advance()
            inner = self.polynomial(ring)
            self.expect("op", ")")
            return inner
        raise self.error("expected a polynomial")


def parse_script(text, order="degrevlex", limits=None):
    """Parse a session script into its ring, ideal bindings and commands."""
    return Parser(text, order=order, limits=limits).parse()


def parse_polynomial(text, ring):
    """Parse a single polynomial in the variables of ring."""
    parser = Parser(text)
    parser.characteristic = ring.characteristic
    parser.variables = ring.variables
    parser.ring = ring
    result = parser.polynomial(ring)
    if parser.current.type == "end":
        parser.advance()
    parser.end_statement()
    if parser.current.type != "eof":
        raise parser.error("unexpected text after the polynomial")
    return result


def _format_option(value):
    if isinstance(value, list):
        return ",".join(str(v) for v in value)
    return str(value)


def format_command(command):
    parts = [command.name] + list(command.args)
    parts += [f"{key}={_format_option(value)}" for key, value in command.options.items()]
    return " ".join(parts)


def format_script(script):
    """Print a script in canonical form; parsing the output gives back an equal script."""
    ring = script.ring
    lines = [f"char {ring.characteristic}", "vars " + " ".join(ring.variables)]
    lines += [f"quotient {r}" for r in ring.relations]
    for name, gens in script.ideals.items():
        lines.append(f"ideal {name} = " + ", ".join(str(g) for g in gens))
    lines += [format_command(c) for c in script.commands]
    return "\n".join(lines) + "\n"

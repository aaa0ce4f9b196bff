"""Exact sparse multivariate polynomials over the rationals.

Monomials are plain tuples of non-negative integers whose length equals the
number of variables of the ambient :class:`RingContext`.  Polynomials map
monomials to nonzero ``fractions.Fraction`` coefficients; the zero polynomial
is the empty map.  All values are immutable after construction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class RingError(ValueError):
    """Raised on ring/arity mismatches or malformed ring declarations."""


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------

def _grevlex_key(exps):
    total = 0
    for e in exps:
        total += e
    return (total, tuple(-e for e in reversed(exps)))


class MonomialOrder:
    """Total order on monomials, exposed through a sort key."""

    name = "order"

    def key(self, exps):
        raise NotImplementedError

    def cmp(self, a, b):
        ka, kb = self.key(a), self.key(b)
        if ka < kb:
            return -1
        if ka > kb:
            return 1
        return 0

    def __repr__(self):
        return self.name


class GrevLex(MonomialOrder):
    name = "grevlex"

    def key(self, exps):
        return _grevlex_key(exps)


class Lex(MonomialOrder):
    name = "lex"

    def key(self, exps):
        return tuple(exps)


class Block(MonomialOrder):
    """Elimination order: the variables in ``front`` dominate the rest.

    Each block is ordered internally by grevlex.  ``front`` is a tuple of
    variable indices; any monomial containing a front variable beats any
    monomial of the complementary block, regardless of degree there.
    """

    def __init__(self, front: Sequence[int], nvars: int):
        front = tuple(front)
        if len(set(front)) != len(front) or any(i < 0 or i >= nvars for i in front):
            raise RingError("invalid elimination block %r" % (front,))
        self.front = front
        self.rest = tuple(i for i in range(nvars) if i not in set(front))
        self.nvars = nvars
        self.name = "block(%s)" % (",".join(map(str, front)))

    def key(self, exps):
        return (
            _grevlex_key([exps[i] for i in self.front]),
            _grevlex_key([exps[i] for i in self.rest]),
        )


GREVLEX = GrevLex()
LEX = Lex()


def order_from_tag(tag: str, nvars: int, split: int | None = None) -> MonomialOrder:
    if tag == "grevlex":
        return GREVLEX
    if tag == "lex":
        return LEX
    if tag == "block":
        if split is None or not (0 < split < nvars):
            raise RingError("block order needs a split point strictly inside the variables")
        return Block(tuple(range(split)), nvars)
    raise RingError("unknown monomial order %r" % tag)


# ---------------------------------------------------------------------------
# monomial helpers (tuples)
# ---------------------------------------------------------------------------

def monomial_mul(a, b):
    if len(a) != len(b):
        raise RingError("monomial length mismatch")
    return tuple(x + y for x, y in zip(a, b))


def monomial_lcm(a, b):
    """Componentwise maximum: the least upper bound for divisibility."""
    if len(a) != len(b):
        raise RingError("monomial length mismatch")
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_divides(a, b):
    return len(a) == len(b) and all(x <= y for x, y in zip(a, b))


def monomial_div(a, b):
    """a / b, assuming b divides a."""
    if not monomial_divides(b, a):
        raise RingError("monomial %r does not divide %r" % (b, a))
    return tuple(x - y for x, y in zip(a, b))


def monomial_degree(a):
    return sum(a)


def monomial_cmp(a, b, order: MonomialOrder = GREVLEX) -> int:
    if len(a) != len(b):
        raise RingError("monomial length mismatch")
    return order.cmp(a, b)


# ---------------------------------------------------------------------------
# ring context
# ---------------------------------------------------------------------------

class RingContext:
    """A named polynomial ring Q[x_1, ..., x_n] with a default monomial order."""

    def __init__(self, variables: Sequence[str], default_order: MonomialOrder = GREVLEX):
        variables = tuple(variables)
        if len(variables) != len(set(variables)) or any(not v for v in variables):
            raise RingError("variable names must be unique and nonempty")
        self.variables = variables
        self.nvars = len(variables)
        self.default_order = default_order
        self._index = {v: i for i, v in enumerate(variables)}
        self._zero_mono = (0,) * self.nvars

    def var_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise RingError("unknown variable %r" % name) from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return Polynomial(self, {self._zero_mono: c})

    def var(self, name: str) -> "Polynomial":
        i = self.var_index(name)
        mono = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {mono: Fraction(1)})

    def gens(self):
        return [self.var(v) for v in self.variables]

    def monomial(self, exps) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise RingError("monomial arity mismatch")
        return Polynomial(self, {exps: Fraction(1)})

    def extend(self, new_vars: Sequence[str], front: bool = False) -> "RingContext":
        """A ring with extra variables appended (or prepended)."""
        new_vars = tuple(new_vars)
        if front:
            return RingContext(new_vars + self.variables, self.default_order)
        return RingContext(self.variables + new_vars, self.default_order)

    def __eq__(self, other):
        return isinstance(other, RingContext) and self.variables == other.variables

    def __hash__(self):
        return hash(self.variables)

    def __repr__(self):
        return "Q[%s]" % ",".join(self.variables)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Polynomial:
    """Sparse exact polynomial; ``terms`` maps exponent tuple -> Fraction."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingContext, terms: Mapping[tuple, Fraction]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c != 0}
        self._hash = None

    # -- basics -------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {self.ring._zero_mono: Fraction(1)}

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_mono in self.terms)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def variables_used(self):
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise RingError("ring mismatch: %r vs %r" % (self.ring, other.ring))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.const(other)
        self._check_ring(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            nc = terms.get(m, 0) + c
            if nc:
                terms[m] = nc
            else:
                terms.pop(m, None)
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            if c == 0:
                return self.ring.zero()
            return Polynomial(self.ring, {m: co * c for m, co in self.terms.items()})
        self._check_ring(other)
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                nc = terms.get(m, 0) + c1 * c2
                if nc:
                    terms[m] = nc
                else:
                    del terms[m]
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise RingError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c):
        return self * c

    # -- structure ------------------------------------------------------------

    def lead(self, order: MonomialOrder | None = None):
        """(monomial, coefficient) of the leading term."""
        if not self.terms:
            raise RingError("zero polynomial has no lead term")
        order = order or self.ring.default_order
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def monic(self, order: MonomialOrder | None = None):
        if not self.terms:
            return self
        _, c = self.lead(order)
        return self * (Fraction(1) / c)

    def sorted_terms(self, order: MonomialOrder | None = None, reverse: bool = True):
        order = order or self.ring.default_order
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=reverse)

    def coeff(self, mono):
        return self.terms.get(tuple(mono), Fraction(0))

    # -- ring moves -----------------------------------------------------------

    def map_ring(self, target: RingContext) -> "Polynomial":
        """Reinterpret in ``target`` by variable name (must cover all used vars)."""
        if target == self.ring:
            return self
        idx = []
        for i, v in enumerate(self.ring.variables):
            idx.append(target._index.get(v, -1))
        terms = {}
        for m, c in self.terms.items():
            new = [0] * target.nvars
            for i, e in enumerate(m):
                if e:
                    if idx[i] < 0:
                        raise RingError("variable %r missing in target ring" % self.ring.variables[i])
                    new[idx[i]] = e
            terms[tuple(new)] = terms.get(tuple(new), 0) + c
        return Polynomial(target, terms)

    def substitute(self, images: Mapping[str, "Polynomial"], target: RingContext | None = None) -> "Polynomial":
        """Evaluate at ``variable -> polynomial``; unmapped variables map by name."""
        if target is None:
            target = next(iter(images.values())).ring if images else self.ring
        cache = {}
        for i, v in enumerate(self.ring.variables):
            if v in images:
                cache[i] = images[v]
            elif any(m[i] for m in self.terms):
                cache[i] = target.var(v)
        result = target.zero()
        for m, c in self.terms.items():
            term = target.const(c)
            for i, e in enumerate(m):
                if e:
                    term = term * (cache[i] ** e)
            result = result + term
        return result

    # -- equality / display -----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if self.is_constant():
                return self.coeff(self.ring._zero_mono) == other
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return poly_to_string(self)

    __str__ = __repr__


# ---------------------------------------------------------------------------
# printing / parsing
# ---------------------------------------------------------------------------

def _mono_to_string(ring, mono):
    parts = []
    for v, e in zip(ring.variables, mono):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append("%s^%d" % (v, e))
    return "*".join(parts)


def poly_to_string(p: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    """Canonical rendering: grevlex-descending terms, `x^2*y - 3/2*t1` style."""
    if p.is_zero():
        return "0"
    out = []
    for mono, coef in p.sorted_terms(order):
        ms = _mono_to_string(p.ring, mono)
        neg = coef < 0
        a = -coef if neg else coef
        if not ms:
            body = str(a)
        elif a == 1:
            body = ms
        else:
            body = "%s*%s" % (a, ms)
        if not out:
            out.append("-" + body if neg else body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


class PolyParseError(ValueError):
    def __init__(self, message, pos):
        super().__init__("%s (at position %d)" % (message, pos))
        self.pos = pos


class _PolyParser:
    """Recursive descent over ``expr := term (('+'|'-') term)*``.

    ``term := factor ('*'? factor)*`` with `^` powers, rational constants
    ``3/2`` and parenthesised subexpressions.
    """

    def __init__(self, text: str, ring: RingContext):
        self.text = text
        self.ring = ring
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self):
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Polynomial:
        result = self._expr()
        self._skip_ws()
        if self.pos != len(self.text):
            raise PolyParseError("unexpected %r" % self.text[self.pos], self.pos)
        return result

    def _expr(self):
        ch = self._peek()
        sign = 1
        if ch in "+-":
            self.pos += 1
            sign = -1 if ch == "-" else 1
        result = self._term() * sign
        while True:
            ch = self._peek()
            if ch == "+":
                self.pos += 1
                result = result + self._term()
            elif ch == "-":
                self.pos += 1
                result = result - self._term()
            else:
                return result

    def _term(self):
        result = self._factor()
        while True:
            ch = self._peek()
            if ch == "*":
                self.pos += 1
                result = result * self._factor()
            elif ch == "(" or ch.isalpha() or ch == "_":
                result = result * self._factor()
            else:
                return result

    def _factor(self):
        base = self._atom()
        if self._peek() == "^":
            self.pos += 1
            self._skip_ws()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                raise PolyParseError("expected integer exponent", self.pos)
            base = base ** int(self.text[start:self.pos])
        return base

    def _atom(self):
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            inner = self._expr()
            if self._peek() != ")":
                raise PolyParseError("expected ')'", self.pos)
            self.pos += 1
            return inner
        if ch.isdigit():
            num = self._int()
            if self._peek() == "/":
                save = self.pos
                self.pos += 1
                if self._peek().isdigit():
                    den = self._int()
                    return self.ring.const(Fraction(num, den))
                self.pos = save
            return self.ring.const(num)
        if ch.isalpha() or ch == "_":
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start:self.pos]
            if name not in self.ring._index:
                raise PolyParseError("unknown variable %r" % name, start)
            return self.ring.var(name)
        raise PolyParseError("unexpected %r" % (ch or "end of input"), self.pos)

    def _int(self):
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start:self.pos])


def parse_poly(text: str, ring: RingContext) -> Polynomial:
    return _PolyParser(text, ring).parse()


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    """Exact product (bilinear, commutative); rings must match."""
    return f * g

"""Buchberger-based ideal engine.

Reduced Groebner bases with the two classical pair-discarding criteria,
plus the derived operations everything else in the package leans on:
membership, elimination, intersection, quotient, saturation, ring-map
kernels, subalgebra membership via tag variables, regular-sequence checks
and staircase (Hilbert function) counts.
"""

from __future__ import annotations

import heapq
import itertools
from fractions import Fraction
from typing import Iterable, Sequence

from .rings import (
    Block,
    GREVLEX,
    MonomialOrder,
    Polynomial,
    RingContext,
    RingError,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)


# ---------------------------------------------------------------------------
# reduction and Buchberger
# ---------------------------------------------------------------------------

def reduce_poly(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder,
                with_quotients: bool = False):
    """Full normal form of f modulo basis; optionally track the quotients."""
    ring = f.ring
    quots = [ring.zero() for _ in basis] if with_quotients else None
    leads = [g.lead(order) for g in basis]
    remainder: dict = {}
    work = dict(f.terms)
    key = order.key
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for i, (lm, lc) in enumerate(leads):
            if monomial_divides(lm, m):
                q_mono = monomial_div(m, lm)
                q_coef = c / lc
                if with_quotients:
                    quots[i] = quots[i] + Polynomial(ring, {q_mono: q_coef})
                for gm, gc in basis[i].terms.items():
                    if gm == lm:
                        continue
                    t = monomial_mul(gm, q_mono)
                    nc = work.get(t, 0) - gc * q_coef
                    if nc:
                        work[t] = nc
                    else:
                        work.pop(t, None)
                break
        else:
            remainder[m] = c
    nf = Polynomial(ring, remainder)
    if with_quotients:
        return nf, quots
    return nf


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    fm, fc = f.lead(order)
    gm, gc = g.lead(order)
    l = monomial_lcm(fm, gm)
    ring = f.ring
    a = Polynomial(ring, {monomial_div(l, fm): Fraction(1) / fc})
    b = Polynomial(ring, {monomial_div(l, gm): Fraction(1) / gc})
    return a * f - b * g


def buchberger(generators: Sequence[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    """Reduced Groebner basis (monic, autoreduced, sorted ascending)."""
    basis = [g.monic(order) for g in generators if not g.is_zero()]
    if not basis:
        return []
    # interreduce the input a little to keep pairs small
    basis = _interreduce(basis, order)
    leads = [g.lead(order)[0] for g in basis]
    key = order.key

    pairs: list = []
    counter = itertools.count()

    def push_pair(i, j):
        l = monomial_lcm(leads[i], leads[j])
        heapq.heappush(pairs, (key(l), next(counter), i, j, l))

    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            push_pair(i, j)

    while pairs:
        _, _, i, j, l = heapq.heappop(pairs)
        li, lj = leads[i], leads[j]
        if monomial_lcm(li, lj) != l:
            continue  # stale
        # Buchberger 1: coprime lead monomials
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        # Buchberger 2 (chain): some k with lead_k | lcm and both other pairs done
        skip = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if monomial_divides(leads[k], l):
                lik = monomial_lcm(li, leads[k])
                ljk = monomial_lcm(lj, leads[k])
                if lik != l and ljk != l:
                    skip = True
                    break
        if skip:
            continue
        r = reduce_poly(s_polynomial(basis[i], basis[j], order), basis, order)
        if r.is_zero():
            continue
        r = r.monic(order)
        basis.append(r)
        leads.append(r.lead(order)[0])
        for k in range(len(basis) - 1):
            push_pair(k, len(basis) - 1)

    return _interreduce(_minimalize(basis, order), order)


def _minimalize(basis, order):
    basis = sorted(basis, key=lambda g: order.key(g.lead(order)[0]))
    out = []
    for g in basis:
        lm = g.lead(order)[0]
        if not any(monomial_divides(h.lead(order)[0], lm) for h in out):
            out.append(g)
    return out


def _interreduce(basis, order):
    basis = sorted((g for g in basis if not g.is_zero()),
                   key=lambda g: order.key(g.lead(order)[0]))
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            others = basis[:i] + basis[i + 1:]
            if not others:
                continue
            r = reduce_poly(basis[i], others, order)
            if r.terms != basis[i].terms:
                changed = True
                if r.is_zero():
                    basis = others
                    break
                basis[i] = r.monic(order)
        basis = sorted(basis, key=lambda g: order.key(g.lead(order)[0]))
    return [g.monic(order) for g in basis]


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------

class Ideal:
    """An ideal given by generators, with cached reduced bases per order."""

    def __init__(self, ring: RingContext, generators: Iterable[Polynomial]):
        self.ring = ring
        gens = []
        seen = set()
        for g in generators:
            if g.ring != ring:
                g = g.map_ring(ring)
            if g.is_zero() or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.generators = tuple(gens)
        self._bases: dict = {}

    @classmethod
    def of(cls, *gens: Polynomial):
        if not gens:
            raise RingError("Ideal.of needs at least one generator")
        return cls(gens[0].ring, gens)

    def _order_key(self, order):
        if isinstance(order, Block):
            return ("block", order.front)
        return order.name

    def groebner_basis(self, order: MonomialOrder | None = None) -> tuple:
        order = order or self.ring.default_order
        k = self._order_key(order)
        cached = self._bases.get(k)
        if cached is None:
            cached = tuple(buchberger(self.generators, order))
            self._bases[k] = cached  # idempotent fill; safe under races
        return cached

    def normal_form(self, f: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
        order = order or self.ring.default_order
        if f.ring != self.ring:
            f = f.map_ring(self.ring)
        basis = self.groebner_basis(order)
        if not basis:
            return f
        return reduce_poly(f, basis, order)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    __contains__ = contains

    def is_zero(self) -> bool:
        return not self.groebner_basis()

    def is_unit(self) -> bool:
        b = self.groebner_basis()
        return len(b) == 1 and b[0].is_one()

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ring != other.ring:
            return False
        return (all(other.contains(g) for g in self.generators)
                and all(self.contains(g) for g in other.generators))

    def __hash__(self):
        raise TypeError("Ideal is unhashable; compare with ==")

    def __add__(self, other: "Ideal") -> "Ideal":
        if self.ring != other.ring:
            raise RingError("ring mismatch in ideal sum")
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        if self.ring != other.ring:
            raise RingError("ring mismatch in ideal product")
        if not self.generators or not other.generators:
            return Ideal(self.ring, [])
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])

    def power(self, n: int) -> "Ideal":
        if n == 0:
            return Ideal(self.ring, [self.ring.one()])
        result = self
        for _ in range(n - 1):
            result = result * self
        return result

    def map_ring(self, target: RingContext) -> "Ideal":
        return Ideal(target, [g.map_ring(target) for g in self.generators])

    def __repr__(self):
        return "(%s)" % ", ".join(str(g) for g in self.generators) if self.generators else "(0)"


def ideal_member(f: Polynomial, I: Ideal) -> bool:
    """True iff the normal form of f modulo a reduced basis of I is zero."""
    return I.contains(f)


def eliminate(I: Ideal, drop_vars: Iterable[str]) -> Ideal:
    """I ∩ k[remaining variables], returned as an ideal of the same ring."""
    drop = set(drop_vars)
    for v in drop:
        I.ring.var_index(v)  # raises on unknown variable
    front = tuple(i for i, v in enumerate(I.ring.variables) if v in drop)
    order = Block(front, I.ring.nvars)
    basis = I.groebner_basis(order)
    front_set = set(front)
    kept = [g for g in basis if not (g.variables_used() & front_set)]
    return Ideal(I.ring, kept)


def eliminate_to_subring(I: Ideal, drop_vars: Iterable[str]) -> Ideal:
    """Like :func:`eliminate` but lands in the ring without the dropped variables."""
    inner = eliminate(I, drop_vars)
    drop = set(drop_vars)
    sub = RingContext([v for v in I.ring.variables if v not in drop], I.ring.default_order)
    return inner.map_ring(sub)


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via the auxiliary variable: eliminate t from t·I + (1−t)·J."""
    if I.ring != J.ring:
        raise RingError("ring mismatch in intersection")
    ring = I.ring
    if not I.generators:
        return Ideal(ring, [])
    if not J.generators:
        return Ideal(ring, [])
    t_name = "_t"
    while t_name in ring._index:
        t_name += "_"
    ext = ring.extend([t_name], front=True)
    t = ext.var(t_name)
    gens = [t * g.map_ring(ext) for g in I.generators]
    gens += [(ext.one() - t) * g.map_ring(ext) for g in J.generators]
    return eliminate(Ideal(ext, gens), [t_name]).map_ring(ring)


def _exact_poly_div(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g when g divides f (used by the quotient construction)."""
    order = GREVLEX
    ring = f.ring
    q = ring.zero()
    r = f
    gm, gc = g.lead(order)
    while not r.is_zero():
        rm, rc = r.lead(order)
        if not monomial_divides(gm, rm):
            raise RingError("exact division failed")
        term = Polynomial(ring, {monomial_div(rm, gm): rc / gc})
        q = q + term
        r = r - term * g
    return q


def ideal_quotient(I: Ideal, f: Polynomial) -> Ideal:
    """(I : f) = {g : g·f ∈ I}, via intersection with (f)."""
    if f.is_zero():
        raise RingError("quotient by the zero polynomial")
    if f.ring != I.ring:
        f = f.map_ring(I.ring)
    inter = ideal_intersect(I, Ideal(I.ring, [f]))
    return Ideal(I.ring, [_exact_poly_div(g, f) for g in inter.generators])


def saturate(I: Ideal, f: Polynomial) -> Ideal:
    """(I : f^∞), by iterating the quotient until it stabilizes."""
    if f.is_zero():
        raise RingError("saturation by the zero polynomial")
    current = I
    while True:
        nxt = ideal_quotient(current, f)
        if all(current.contains(g) for g in nxt.generators):
            return current
        current = nxt


# ---------------------------------------------------------------------------
# quotient rings
# ---------------------------------------------------------------------------

class QuotientRingContext:
    """A polynomial ring modulo an ideal; representatives are reduced eagerly."""

    def __init__(self, ring: RingContext, modulus: Ideal | None = None):
        self.ring = ring
        self.modulus = modulus if modulus is not None else Ideal(ring, [])

    def reduce(self, f: Polynomial) -> Polynomial:
        return self.modulus.normal_form(f)

    def is_nonzerodivisor(self, f: Polynomial) -> bool:
        if self.reduce(f).is_zero():
            return False
        q = ideal_quotient(self.modulus, f) if self.modulus.generators else Ideal(self.ring, [])
        return all(self.modulus.contains(g) for g in q.generators)

    def extend_modulus(self, extra: Ideal) -> "QuotientRingContext":
        return QuotientRingContext(self.ring, self.modulus + extra)

    def __eq__(self, other):
        return (isinstance(other, QuotientRingContext)
                and self.ring == other.ring and self.modulus == other.modulus)

    def __repr__(self):
        if not self.modulus.generators:
            return repr(self.ring)
        return "%r/%r" % (self.ring, self.modulus)


def ring_map_kernel(source: QuotientRingContext, target: QuotientRingContext,
                    images: Sequence[Polynomial]) -> Ideal:
    """Kernel of the map source -> target sending the i-th source variable
    to images[i], as an ideal of the source ring (contains source.modulus)."""
    if len(images) != source.ring.nvars:
        raise RingError("one image per source variable expected")
    # source variables become fresh tags appended after the target variables
    tags = []
    taken = set(target.ring.variables)
    for v in source.ring.variables:
        name = v
        while name in taken:
            name = name + "_src"
        taken.add(name)
        tags.append(name)
    joint = target.ring.extend(tags)
    gens = [g.map_ring(joint) for g in target.modulus.generators]
    for tag, img in zip(tags, images):
        gens.append(joint.var(tag) - img.map_ring(joint))
    kept = eliminate(Ideal(joint, gens), target.ring.variables)
    back = {tag: source.ring.var(v) for tag, v in zip(tags, source.ring.variables)}
    result = [g.substitute(back, source.ring) for g in kept.generators]
    result += list(source.modulus.generators)
    reduced = [source.modulus.normal_form(g) for g in result]
    return Ideal(source.ring, [g for g in reduced if not g.is_zero()]
                 + list(source.modulus.generators))


# ---------------------------------------------------------------------------
# subalgebra membership
# ---------------------------------------------------------------------------

class SubalgebraMembership:
    """Membership in the subalgebra generated by ``gens`` inside a quotient.

    Adjoins one tag variable per generator, computes a basis under a block
    order with the ambient variables dominant, and answers queries by normal
    form: f is a member iff its normal form involves only tag variables.
    The basis is computed once and reused across queries.
    """

    def __init__(self, ambient: QuotientRingContext, gens: Sequence[Polynomial],
                 tag_prefix: str = "_w"):
        self.ambient = ambient
        self.gens = tuple(gens)
        taken = set(ambient.ring.variables)
        self.tags = []
        for i in range(len(self.gens)):
            name = "%s%d" % (tag_prefix, i)
            while name in taken:
                name = name + "_"
            taken.add(name)
            self.tags.append(name)
        self.ring = ambient.ring.extend(self.tags)
        gens_ext = [g.map_ring(self.ring) for g in ambient.modulus.generators]
        for tag, g in zip(self.tags, self.gens):
            gens_ext.append(self.ring.var(tag) - g.map_ring(self.ring))
        self.ideal = Ideal(self.ring, gens_ext)
        self.order = Block(tuple(range(ambient.ring.nvars)), self.ring.nvars)
        self._front = set(range(ambient.ring.nvars))

    def normal_form(self, f: Polynomial) -> Polynomial:
        return reduce_poly(f.map_ring(self.ring), self.ideal.groebner_basis(self.order),
                           self.order)

    def member(self, f: Polynomial) -> bool:
        nf = self.normal_form(f)
        return not (nf.variables_used() & self._front)

    def express(self, f: Polynomial) -> Polynomial | None:
        """An expression of f as a polynomial in the tag variables, or None."""
        nf = self.normal_form(f)
        if nf.variables_used() & self._front:
            return None
        return nf


def subalgebra_member(f: Polynomial, gens: Sequence[Polynomial],
                      ambient: QuotientRingContext) -> bool:
    """True iff f lies in the subalgebra of ``ambient`` generated by ``gens``."""
    return SubalgebraMembership(ambient, gens).member(f)


# ---------------------------------------------------------------------------
# regular sequences and staircase counts
# ---------------------------------------------------------------------------

def check_regular_sequence(seq: Sequence[Polynomial], modulo: Ideal) -> bool:
    """True iff seq is regular modulo the given ideal and the total ideal is proper."""
    current = modulo
    for f in seq:
        if current.normal_form(f).is_zero():
            return False
        q = ideal_quotient(current, f) if current.generators else Ideal(current.ring, [])
        if not all(current.contains(g) for g in q.generators):
            return False
        current = current + Ideal(current.ring, [f])
    return not current.is_unit()


def _monomials_of_degree(nvars: int, d: int):
    if nvars == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in _monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest


def hilbert_function(I: Ideal, up_to: int) -> list[int]:
    """Counts of standard monomials (not divisible by any lead monomial)
    in each degree 0..up_to."""
    basis = I.groebner_basis(GREVLEX)
    leads = [g.lead(GREVLEX)[0] for g in basis]
    counts = []
    n = I.ring.nvars
    for d in range(up_to + 1):
        c = 0
        for m in _monomials_of_degree(n, d):
            if not any(monomial_divides(l, m) for l in leads):
                c += 1
        counts.append(c)
    return counts

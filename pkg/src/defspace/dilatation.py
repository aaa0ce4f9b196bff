"""Multi-centered dilatations of affine rings, presented by saturation.

A dilatation adjoins the fractions m/a for m ranging over the generators of a
center ideal M and a a declared divisor.  Every algebra built here carries an
embedding into one common localization of the original base ring (divisors
inverted through 1 - u*d relations), so iterated constructions stay comparable:
equality and inclusion questions reduce to subalgebra membership there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .groebner import (Ideal, QuotientRingContext, ideal_intersect, reduce_poly,
                       saturate)
from .rings import Block, Polynomial, RingContext, RingError, poly_to_string


@dataclass(frozen=True)
class Fraction:
    """An element num / prod(d_j^e_j) of the common localization."""

    numerator: Polynomial
    denominator_exponents: tuple

    def __repr__(self):
        num = poly_to_string(self.numerator)
        den = "*".join("d%d^%d" % (j, e) if e > 1 else "d%d" % j
                       for j, e in enumerate(self.denominator_exponents) if e)
        return "(%s)/%s" % (num, den) if den else num


@dataclass(frozen=True)
class Center:
    """A pair [V(ideal), V(divisor)]; the divisor must be a non-zero-divisor."""

    ideal: Ideal
    divisor: Polynomial


def _try_exact_div(f: Polynomial, g: Polynomial):
    r, qs = reduce_poly(f, [g], f.ring.default_order, with_quotients=True)
    if r.is_zero():
        return qs[0]
    return None


def _exponents_over_atoms(p: Polynomial, atoms: Sequence[Polynomial]) -> tuple:
    """Write p as a product of the atomic divisors, as an exponent vector."""
    exps = [0] * len(atoms)
    f = p
    for j, d in enumerate(atoms):
        if d.is_one():
            continue
        while True:
            q = _try_exact_div(f, d)
            if q is None:
                break
            f = q
            exps[j] += 1
    if not f.is_one():
        raise RingError("divisor %s is not a product of the declared atoms" % p)
    return tuple(exps)


class MultiCenter:
    """An ordered list of centers over one ring, with a shared list of atomic
    divisors; each center's divisor is a product of atoms."""

    def __init__(self, centers: Sequence[Center], atoms: Sequence[Polynomial] | None = None):
        self.centers = tuple(centers)
        if centers:
            ring = centers[0].ideal.ring
            for c in centers:
                if c.ideal.ring is not ring or c.divisor.ring is not ring:
                    raise RingError("centers must share one ring")
                if c.divisor.is_zero():
                    raise RingError("zero divisor element in a center")
        if atoms is None:
            atoms = [c.divisor for c in centers]
            self.exponents = tuple(tuple(1 if j == i else 0 for j in range(len(centers)))
                                   for i in range(len(centers)))
        else:
            self.exponents = tuple(_exponents_over_atoms(c.divisor, atoms)
                                   for c in centers)
        self.atoms = tuple(atoms)

    def __len__(self):
        return len(self.centers)


def _fresh_names(taken, count, prefix="y"):
    names = []
    taken = set(taken)
    i = 0
    while len(names) < count:
        name = "%s%d" % (prefix, i)
        i += 1
        if name not in taken:
            taken.add(name)
            names.append(name)
    return names


class PresentedAlgebra:
    """A finitely presented subalgebra of the common localization.

    ``ring`` extends the base ring by one variable per adjoined fraction;
    ``relations`` is the full ideal of relations (it contains the base
    modulus).  ``embedding`` sends each new variable to its fraction.
    Instances are immutable; localization and membership data are cached.
    """

    def __init__(self, base: QuotientRingContext, atoms: Sequence[Polynomial],
                 new_vars: Sequence[str], relations,
                 embedding: Mapping[str, Fraction], multicenter: MultiCenter | None = None,
                 ring: RingContext | None = None):
        self.base = base
        self.atoms = tuple(atoms)
        self.new_vars = tuple(new_vars)
        # relations may be deferred (a thunk): saturations are expensive and
        # membership questions never need them
        if callable(relations):
            if ring is None:
                raise RingError("a deferred presentation needs an explicit ring")
            self.ring = ring
            self._relations = None
            self._relations_thunk = relations
        else:
            self.ring = relations.ring
            self._relations = relations
            self._relations_thunk = None
        self.embedding = dict(embedding)
        self.multicenter = multicenter
        self._loc = None
        self._loc_modulus = None
        self._membership = None

    @property
    def relations(self) -> Ideal:
        if self._relations is None:
            self._relations = self._relations_thunk()
        return self._relations

    @classmethod
    def trivial(cls, base: QuotientRingContext, atoms: Sequence[Polynomial] = ()):
        return cls(base, atoms, (), base.modulus, {})

    def generators(self) -> list[Fraction]:
        return [self.embedding[v] for v in self.new_vars]

    @property
    def divisor_images(self) -> list[Polynomial]:
        return [d.map_ring(self.ring) for d in self.atoms]

    # -- localization ------------------------------------------------------

    @property
    def u_names(self):
        return tuple("_u%d" % j for j in range(len(self.atoms)))

    @property
    def localization(self) -> QuotientRingContext:
        if self._loc is None:
            loc_ring = self.base.ring.extend(self.u_names)
            gens = [g.map_ring(loc_ring) for g in self.base.modulus.generators]
            for u, d in zip(self.u_names, self.atoms):
                gens.append(loc_ring.one() - loc_ring.var(u) * d.map_ring(loc_ring))
            self._loc = QuotientRingContext(loc_ring, Ideal(loc_ring, gens))
        return self._loc

    def to_local(self, f: Fraction) -> Polynomial:
        loc = self.localization.ring
        p = f.numerator.map_ring(loc)
        for u, e in zip(self.u_names, f.denominator_exponents):
            if e:
                p = p * loc.var(u) ** e
        return p

    def from_local(self, p: Polynomial) -> Fraction:
        """Clear the u variables out of p: num / atoms^E with E the maximal
        u-exponents, padding each term by the missing atom powers."""
        loc = self.localization.ring
        nbase = self.base.ring.nvars
        E = [0] * len(self.atoms)
        for mono in p.terms:
            for j in range(len(self.atoms)):
                E[j] = max(E[j], mono[nbase + j])
        num = self.base.ring.zero()
        for mono, c in p.terms.items():
            t = self.base.ring.monomial(mono[:nbase]).scale(c)
            for j, d in enumerate(self.atoms):
                t = t * d ** (E[j] - mono[nbase + j])
            num = num + t
        return Fraction(num, tuple(E))

    def local_value(self, f: Polynomial) -> Polynomial:
        """Image in the localization of an element of the presentation ring."""
        images = {v: self.to_local(self.embedding[v]) for v in self.new_vars}
        return f.substitute(images, self.localization.ring)

    # -- membership --------------------------------------------------------

    @property
    def membership(self) -> "_LocalMembership":
        if self._membership is None:
            self._membership = _LocalMembership(self)
        return self._membership

    def contains_local(self, p: Polynomial) -> bool:
        return self.membership.member(p)

    def contains_fraction(self, f: Fraction) -> bool:
        if len(f.denominator_exponents) != len(self.atoms):
            raise RingError("fraction denominator list does not match the algebra")
        return self.contains_local(self.to_local(f))

    def express_local(self, p: Polynomial) -> Polynomial | None:
        """p rewritten as a presentation-ring element, or None if not a member."""
        return self.membership.express(p)

    def check_soundness(self):
        """Every relation must vanish in the localization under the embedding."""
        if self._loc_modulus is None:
            self._loc_modulus = self.localization.modulus
        for g in self.relations.generators:
            if not self._loc_modulus.normal_form(self.local_value(g)).is_zero():
                raise RingError("presentation relation %s does not vanish" % g)

    def __repr__(self):
        return "PresentedAlgebra(%s; %d relations)" % (
            ",".join(self.new_vars) or "trivial", len(self.relations.generators))


class _LocalMembership:
    """Membership of localized elements in a presented subalgebra.

    Variables are ordered u-block, base variables, one tag per adjoined
    fraction, with the u-block dominant.  Under that elimination order a
    reduced-basis element whose lead is u-free is entirely u-free, so the
    normal form of any element of the subalgebra carries no u variable.
    """

    def __init__(self, alg: PresentedAlgebra):
        self.alg = alg
        base_ring = alg.base.ring
        nu = len(alg.atoms)
        self.tags = ["_g%d" % i for i in range(len(alg.new_vars))]
        names = list(alg.u_names) + list(base_ring.variables) + self.tags
        self.ring = RingContext(names)
        self.order = Block(tuple(range(nu)), self.ring.nvars)
        self._ublock = set(range(nu))
        gens = [g.map_ring(self.ring) for g in alg.base.modulus.generators]
        for j, d in enumerate(alg.atoms):
            gens.append(self.ring.one()
                        - self.ring.var(alg.u_names[j]) * d.map_ring(self.ring))
        for tag, v in zip(self.tags, alg.new_vars):
            gens.append(self.ring.var(tag)
                        - alg.to_local(alg.embedding[v]).map_ring(self.ring))
        self.ideal = Ideal(self.ring, gens)

    def normal_form(self, p: Polynomial) -> Polynomial:
        return reduce_poly(p.map_ring(self.ring),
                           self.ideal.groebner_basis(self.order), self.order)

    def member(self, p: Polynomial) -> bool:
        return not (self.normal_form(p).variables_used() & self._ublock)

    def express(self, p: Polynomial) -> Polynomial | None:
        nf = self.normal_form(p)
        if nf.variables_used() & self._ublock:
            return None
        back = {tag: self.alg.ring.var(v)
                for tag, v in zip(self.tags, self.alg.new_vars)}
        return nf.substitute(back, self.alg.ring)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _check_divisors(base: QuotientRingContext, mc: MultiCenter):
    for i, c in enumerate(mc.centers):
        if not base.is_nonzerodivisor(c.divisor):
            raise RingError("divisor of center %d is a zero divisor: %s"
                            % (i, poly_to_string(c.divisor)))


def _saturating_element(ring, polys):
    prod = ring.one()
    seen = set()
    for d in polys:
        if d in seen or d.is_one():
            continue
        seen.add(d)
        prod = prod * d
    return prod


def dilatation_presentation(base: QuotientRingContext, mc: MultiCenter,
                            names: Sequence[str] | None = None,
                            verify: bool = True) -> PresentedAlgebra:
    """The subalgebra base[{M_i/a_i}]: one new variable per generator of each
    center ideal, naive relations a_i*y - m, saturated by the divisor product."""
    if not mc.centers:
        return PresentedAlgebra.trivial(base, mc.atoms)
    if verify:
        _check_divisors(base, mc)
    gen_data = []  # (center index, numerator)
    for i, c in enumerate(mc.centers):
        for m in c.ideal.generators:
            gen_data.append((i, m))
    if names is None:
        names = _fresh_names(base.ring.variables, len(gen_data))
    elif len(names) != len(gen_data):
        raise RingError("expected %d names" % len(gen_data))
    ring = base.ring.extend(names)
    naive = [g.map_ring(ring) for g in base.modulus.generators]
    embedding = {}
    for name, (i, m) in zip(names, gen_data):
        naive.append(mc.centers[i].divisor.map_ring(ring) * ring.var(name)
                     - m.map_ring(ring))
        embedding[name] = Fraction(m, mc.exponents[i])
    sat = _saturating_element(ring, [d.map_ring(ring) for d in mc.atoms])
    relations = saturate(Ideal(ring, naive), sat)
    alg = PresentedAlgebra(base, mc.atoms, names, relations, embedding, mc)
    if verify:
        alg.check_soundness()
    return alg


def iterate_dilatation(alg: PresentedAlgebra,
                       centers: Sequence[tuple],
                       names: Sequence[str] | None = None,
                       verify: bool = True) -> PresentedAlgebra:
    """Dilatation of an already presented algebra.

    Each center is a pair (generators, divisor_exponents): generators are
    elements of alg's presentation ring, the divisor is the atom product with
    the given exponents.  The result is presented over the same original base
    and embeds in the same localization (denominator exponents compose).
    """
    if not centers:
        return alg
    presented = QuotientRingContext(alg.ring, alg.relations)
    div_polys = []
    for gens, exps in centers:
        if len(exps) != len(alg.atoms):
            raise RingError("divisor exponent arity mismatch")
        d = alg.ring.one()
        for atom, e in zip(alg.divisor_images, exps):
            d = d * atom ** e
        div_polys.append(d)
        if verify and not presented.is_nonzerodivisor(d):
            raise RingError("iterated divisor is a zero divisor: %s"
                            % poly_to_string(d))
    gen_data = []  # (center index, generator)
    for i, (gens, _) in enumerate(centers):
        for g in gens:
            gen_data.append((i, g))
    if names is None:
        names = _fresh_names(alg.ring.variables, len(gen_data))
    ring = alg.ring.extend(names)
    embedding = dict(alg.embedding)
    for name, (i, g) in zip(names, gen_data):
        frac = alg.from_local(alg.local_value(g))
        exps = tuple(a + b for a, b in zip(frac.denominator_exponents, centers[i][1]))
        embedding[name] = Fraction(frac.numerator, exps)

    def make_relations():
        naive = [g.map_ring(ring) for g in alg.relations.generators]
        for name, (i, g) in zip(names, gen_data):
            naive.append(div_polys[i].map_ring(ring) * ring.var(name)
                         - g.map_ring(ring))
        sat = _saturating_element(ring, [d.map_ring(ring) for d in alg.atoms])
        return saturate(Ideal(ring, naive), sat)

    out = PresentedAlgebra(alg.base, alg.atoms, tuple(alg.new_vars) + tuple(names),
                           make_relations, embedding, ring=ring)
    if verify:
        out.check_soundness()
    return out


# ---------------------------------------------------------------------------
# membership and comparison
# ---------------------------------------------------------------------------

def _solve_center_exponents(E, mc: MultiCenter):
    """Nonnegative integers nu with sum nu_i * exponents_i = E, or None."""
    n = len(mc.centers)

    def go(i, rest):
        if i == n:
            return [] if all(e == 0 for e in rest) else None
        exps = mc.exponents[i]
        cap = min((r // e for r, e in zip(rest, exps) if e), default=0)
        for v in range(cap, -1, -1):
            tail = go(i + 1, tuple(r - v * e for r, e in zip(rest, exps)))
            if tail is not None:
                return [v] + tail
        return None

    return go(0, tuple(E))


def delta_criterion(f: Fraction, base: QuotientRingContext, mc: MultiCenter,
                    delta_max: int = 6):
    """One-sided membership check: f = m/a^nu lies in the dilatation if
    m * a^delta falls in prod (M_i + (a_i))^{nu_i + delta} for some delta.
    Returns True when certified, None when inconclusive within delta_max."""
    nu = _solve_center_exponents(f.denominator_exponents, mc)
    if nu is None:
        raise RingError("denominator is not a product of center divisors")
    ring = base.ring
    L = [c.ideal + Ideal(ring, [c.divisor]) for c in mc.centers]
    a_prod = ring.one()
    for c in mc.centers:
        a_prod = a_prod * c.divisor
    for delta in range(delta_max + 1):
        power = Ideal(ring, [ring.one()])
        for Li, ni in zip(L, nu):
            power = power * Li.power(ni + delta)
        lhs = f.numerator * a_prod ** delta
        if (power + base.modulus).contains(lhs):
            return True
    return None


def fraction_member(f: Fraction, alg: PresentedAlgebra,
                    cross_check: bool = False, delta_max: int = 6) -> bool:
    """Exact membership of a localization fraction in a presented algebra."""
    answer = alg.contains_fraction(f)
    if cross_check and alg.multicenter is not None:
        certified = delta_criterion(f, alg.base, alg.multicenter, delta_max)
        if certified and not answer:
            raise RingError("membership cross-check disagreement on %r" % f)
    return answer


@dataclass(frozen=True)
class Comparison:
    verdict: str  # Equal | LeftInRight | RightInLeft | Incomparable
    witness: Fraction | None = None


def algebra_compare(a1: PresentedAlgebra, a2: PresentedAlgebra) -> Comparison:
    """Mutual inclusion of two subalgebras of the same localization."""
    if a1.base != a2.base or a1.atoms != a2.atoms:
        raise RingError("algebras do not share a base and divisor list")
    missing_right = next((g for g in a1.generators()
                          if not a2.contains_fraction(g)), None)
    missing_left = next((g for g in a2.generators()
                         if not a1.contains_fraction(g)), None)
    if missing_right is None and missing_left is None:
        return Comparison("Equal")
    if missing_right is None:
        return Comparison("LeftInRight", missing_left)
    if missing_left is None:
        return Comparison("RightInLeft", missing_right)
    return Comparison("Incomparable", missing_right)


# ---------------------------------------------------------------------------
# kernel of reduction modulo an ideal
# ---------------------------------------------------------------------------

def kernel_modulo(base: QuotientRingContext, mc: MultiCenter, T: Ideal,
                  nu_bound: int = 3, verify: bool = True):
    """Kernel of base[{M_i/a_i}] -> (base/T)[{M_i/a_i}], with a degree-wise
    approximation by the fractions (L^nu ∩ T)/a^nu, L_i = M_i + (a_i).

    Returns (exact, truncated, stabilized): two ideals of the source
    presentation ring, both containing the source relations, and a flag set
    when they agree.  The truncated ideal is contained in the exact one for
    every bound."""
    quotient_base = base.extend_modulus(T)
    if verify:
        _check_divisors(quotient_base, mc)
    src = dilatation_presentation(base, mc, verify=verify)
    tgt = dilatation_presentation(quotient_base, mc, names=src.new_vars,
                                  verify=False)
    exact = tgt.relations

    ring = base.ring
    L = [c.ideal + Ideal(ring, [c.divisor]) for c in mc.centers]
    T_full = T + base.modulus
    extra = []
    for nu in _tuples_bounded(len(mc.centers), nu_bound):
        power = Ideal(ring, [ring.one()])
        for Li, ni in zip(L, nu):
            power = power * Li.power(ni)
        meet = ideal_intersect(power + base.modulus, T_full)
        E = tuple(sum(n * e for n, e in zip(nu, exps))
                  for exps in zip(*mc.exponents)) if mc.centers else ()
        for g in meet.generators:
            expr = src.express_local(src.to_local(Fraction(g, E)))
            if expr is None:
                raise RingError("kernel fraction escaped the source algebra")
            extra.append(expr)
    truncated = Ideal(src.ring, list(src.relations.generators) + extra)
    stabilized = all(truncated.contains(g) for g in exact.generators)
    return exact, truncated, stabilized


def _tuples_bounded(n, total):
    """All tuples in N^n with coordinate sum between 0 and total."""
    if n == 0:
        yield ()
        return
    for head in range(total + 1):
        for tail in _tuples_bounded(n - 1, total - head):
            yield (head,) + tail

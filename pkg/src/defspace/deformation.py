"""Deformation data and their deformation spaces.

A deformation datum is a chain of closed subschemes X_n ⊂ ... ⊂ X_1 ⊂ X
(ideals M_1 ⊆ ... ⊆ M_n, increasing with the index) together with one
divisor per index.  The deformation space is the multi-centered dilatation
at the centers [M_i, prod_{j>=i} d_j].  Panel formulas (polyptych module)
evaluate to presented subalgebras of one common localization, so the
panelization comparisons reduce to exact membership tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .dilatation import (Center, Comparison, Fraction, MultiCenter,
                         PresentedAlgebra, algebra_compare,
                         dilatation_presentation, iterate_dilatation)
from .groebner import (Ideal, QuotientRingContext, eliminate, hilbert_function,
                       ideal_intersect, ring_map_kernel, SubalgebraMembership)
from .polyptych import (DNode, Leaf, canonicalize, initial_panel, panelize,
                        to_string, validate)
from .rings import Polynomial, RingContext, RingError, poly_to_string


class DeformationDatum:
    """Chain of subspace ideals plus one divisor per index (1-based)."""

    def __init__(self, base: QuotientRingContext, subspace_ideals, divisors,
                 smooth: bool = False):
        self.base = base
        self.subspace_ideals = tuple(subspace_ideals)
        self.divisors = tuple(divisors)
        if len(self.subspace_ideals) != len(self.divisors):
            raise RingError("one divisor per subspace ideal expected")
        self.smooth = smooth
        self._panel_cache: dict = {}

    @property
    def n(self):
        return len(self.subspace_ideals)

    def ideal(self, i: int) -> Ideal:
        """M_i for i in 1..n; M_0 is the zero ideal (the ambient space)."""
        if i == 0:
            return Ideal(self.base.ring, [])
        return self.subspace_ideals[i - 1]

    def multicenter(self) -> MultiCenter:
        ring = self.base.ring
        centers = []
        for i in range(1, self.n + 1):
            div = ring.one()
            for j in range(i, self.n + 1):
                div = div * self.divisors[j - 1]
            centers.append(Center(self.ideal(i), div))
        return MultiCenter(centers, atoms=self.divisors)


@dataclass(frozen=True)
class DatumReport:
    passed: bool
    problems: tuple  # (kind, description) pairs

    def __bool__(self):
        return self.passed


def validate_datum(d: DeformationDatum) -> DatumReport:
    """Chain inclusions plus the Cartier condition: every divisor must be a
    non-zero-divisor modulo the base and modulo every subspace ideal."""
    problems = []
    for i in range(1, d.n):
        nxt = d.ideal(i + 1) + d.base.modulus
        for g in d.ideal(i).generators:
            if not nxt.contains(g):
                problems.append(("chain", "M_%d generator %s is not in M_%d"
                                 % (i, poly_to_string(g), i + 1)))
                break
    rings = [d.base] + [d.base.extend_modulus(d.ideal(i))
                        for i in range(1, d.n + 1)]
    for j, div in enumerate(d.divisors, start=1):
        for i, q in enumerate(rings):
            if not q.is_nonzerodivisor(div):
                where = "the base" if i == 0 else "X_%d" % i
                problems.append(("nzd", "divisor d_%d (%s) is a zero divisor on %s"
                                 % (j, poly_to_string(div), where)))
    return DatumReport(not problems, tuple(problems))


def deformation_space(d: DeformationDatum) -> PresentedAlgebra:
    report = validate_datum(d)
    if not report:
        raise RingError("invalid datum: %s" % (report.problems,))
    return dilatation_presentation(d.base, d.multicenter())


def build_an_datum(base: QuotientRingContext, chain) -> DeformationDatum:
    """Datum over base[T_1..T_n] with M_i the extended chain ideal and
    d_i = T_i; flags the smooth case (chains of coordinate subspaces)."""
    chain = list(chain)
    n = len(chain)
    for I, J in zip(chain, chain[1:]):
        nxt = J + base.modulus
        for g in I.generators:
            if not nxt.contains(g):
                raise RingError("chain ideals are not nested")
    names = ["T%d" % (i + 1) for i in range(n)]
    ring = base.ring.extend(names)
    newbase = QuotientRingContext(ring, base.modulus.map_ring(ring))
    ideals = [I.map_ring(ring) for I in chain]
    divisors = [ring.var(nm) for nm in names]

    def is_coordinate(I):
        return all(len(g.terms) == 1 and sum(next(iter(g.terms))) == 1
                   for g in I.generators)

    smooth = (not base.modulus.generators) and all(is_coordinate(I) for I in chain)
    return DeformationDatum(newbase, ideals, divisors, smooth=smooth)


# ---------------------------------------------------------------------------
# panel evaluation
# ---------------------------------------------------------------------------

def _underlying_index(expr) -> int:
    while isinstance(expr, DNode):
        expr = expr.base
    return expr.index


def _center_kernel(balg: PresentedAlgebra, d: DeformationDatum, k: int):
    """Ideal of the strict transform of X_k inside the base panel algebra:
    kernel of its presentation ring mapping to the localization of X_k."""
    joint = balg.ring.extend(balg.u_names)
    gens = [g.map_ring(joint) for g in d.base.modulus.generators]
    gens += [g.map_ring(joint) for g in d.ideal(k).generators]
    for u, div in zip(balg.u_names, balg.atoms):
        gens.append(joint.one() - joint.var(u) * div.map_ring(joint))
    for v in balg.new_vars:
        frac = balg.embedding[v]
        img = frac.numerator.map_ring(joint)
        for u, e in zip(balg.u_names, frac.denominator_exponents):
            if e:
                img = img * joint.var(u) ** e
        gens.append(joint.var(v) - img)
    kept = eliminate(Ideal(joint, gens), balg.u_names)
    return [g.map_ring(balg.ring) for g in kept.generators]


def evaluate_panel(expr, d: DeformationDatum) -> PresentedAlgebra:
    """Recursive evaluation of a panel formula over a datum.

    A leaf X_k is the quotient by M_k; a node is the iterated dilatation of
    its base's algebra, one center per entry: the strict transform of X_k
    with divisor prod_{j in the node, j >= k} d_j.  Results are cached per
    datum under the canonical formula string."""
    expr = canonicalize(expr)
    validate(expr, d.n)
    key = to_string(expr)
    cached = d._panel_cache.get(key)
    if cached is not None:
        return cached
    if isinstance(expr, Leaf):
        base = d.base if expr.index == 0 else d.base.extend_modulus(d.ideal(expr.index))
        alg = PresentedAlgebra.trivial(base, d.divisors)
    else:
        balg = evaluate_panel(expr.base, d)
        indices = [k for k, _ in expr.entries]
        centers = []
        for k, sub in expr.entries:
            if _underlying_index(sub) != k:
                raise RingError("entry %d sits over leaf X_%d"
                                % (k, _underlying_index(sub)))
            exps = tuple(1 if (j in indices and j >= k) else 0
                         for j in range(1, d.n + 1))
            centers.append((_center_kernel(balg, d, k), exps))
        alg = iterate_dilatation(balg, centers, verify=False)
    d._panel_cache[key] = alg
    return alg


# ---------------------------------------------------------------------------
# panelization verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PanelizationResult:
    verdict: str  # Isomorphism | MorphismOnly | Unexpected
    witness: Fraction | None = None
    comparison: Comparison | None = None


def _panel_for(d: DeformationDatum, S) -> object:
    root = initial_panel(d.n)
    S = frozenset(S)
    if S == set(range(1, d.n + 1)):
        return root
    return panelize(root, (), S)


def verify_panelization(d: DeformationDatum, S) -> PanelizationResult:
    """Compare the full deformation space with the S-panel's algebra.

    Equality means the panelization morphism is an isomorphism; a strict
    inclusion of the full space in the panel means it exists but is not
    one (witnessed by a fraction of the difference)."""
    S = frozenset(S)
    if not S or not S < set(range(1, d.n + 1)):
        raise RingError("S must be a nonempty proper subset of 1..n")
    report = validate_datum(d)
    if not report:
        raise RingError("invalid datum: %s" % (report.problems,))
    full = evaluate_panel(initial_panel(d.n), d)
    panel = evaluate_panel(_panel_for(d, S), d)
    cmp = algebra_compare(full, panel)
    if cmp.verdict == "Equal":
        return PanelizationResult("Isomorphism", comparison=cmp)
    if cmp.verdict == "LeftInRight":
        return PanelizationResult("MorphismOnly", cmp.witness, cmp)
    return PanelizationResult("Unexpected", cmp.witness, cmp)


# ---------------------------------------------------------------------------
# the regularity assumption behind the panel isomorphism
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AssumptionReport:
    status: str  # "pass (bounded)" | "fail" | "vacuous"
    item: int | None = None
    witness: tuple | None = None
    detail: str = ""


def _bounded_vectors(length, bound, include_zero=True):
    for total in range(0 if include_zero else 1, bound + 1):
        for cuts in itertools.combinations(range(total + length - 1), length - 1):
            prev, vec = -1, []
            for c in cuts:
                vec.append(c - prev - 1)
                prev = c
            vec.append(total + length - 2 - prev)
            yield tuple(vec)


def check_assumption(d: DeformationDatum, S, k: int, theta_bound: int = 3,
                     e_bound: int = 2) -> AssumptionReport:
    """Bounded check of the two ideal identities behind the panel
    isomorphism, translated through the closed-subscheme dictionary (sum of
    subschemes = product of ideals, intersection = sum, union = meet).
    Never claims more than "pass (bounded)"."""
    S = frozenset(S)
    n = d.n
    if k in S or not 1 <= k <= n:
        raise RingError("k must lie in the complement of S")
    s_gt = sorted(s for s in S if s > k)
    if not s_gt:
        return AssumptionReport("vacuous", detail="S_{>k} is empty")
    mod = d.base.modulus
    ring = d.base.ring
    Mk = d.ideal(k)

    def prod_M(theta):
        out = Ideal(ring, [ring.one()])
        for s, t in zip(s_gt, theta):
            out = out * d.ideal(s).power(t)
        return out

    # first identity: (sum_s theta_s X_s) ∪ X_k splits off one copy of M_{s'}
    for theta in _bounded_vectors(len(s_gt), theta_bound, include_zero=False):
        lhs = ideal_intersect(prod_M(theta) + mod, Mk + mod)
        sp = next(i for i, t in enumerate(theta) if t > 0)
        rhs = Ideal(ring, [ring.one()])
        for i, (s, t) in enumerate(zip(s_gt, theta)):
            rhs = rhs * d.ideal(s).power(t if i > sp else (t - 1 if i == sp else 0))
        rhs = rhs * Mk + mod
        if lhs != rhs:
            return AssumptionReport("fail", 2, (tuple(theta),),
                                    "identity fails at theta=%s" % (theta,))

    # second identity: intersections of divisor-weighted terms distribute
    # over the union with X_k
    s_list = sorted(S)

    def item_ideal(gamma, theta):
        out = Ideal(ring, [ring.one()])
        mono = ring.one()
        for s, g in zip(s_list, gamma):
            mono = mono * d.divisors[s - 1] ** g
        out = Ideal(ring, [mono]) * prod_M(theta)
        return out

    items = [(gamma, theta)
             for gamma in _bounded_vectors(len(s_list), theta_bound)
             for theta in _bounded_vectors(len(s_gt), theta_bound)]
    for r in range(1, e_bound + 1):
        for family in itertools.combinations(items, r):
            # intersecting subschemes adds their ideals; the union with X_k
            # intersects the resulting ideal with M_k
            ideals = [item_ideal(g, t) for g, t in family]
            lhs = ideals[0] + mod
            for I in ideals[1:]:
                lhs = lhs + I
            lhs = ideal_intersect(lhs, Mk + mod)
            rhs_terms = []
            for (gamma, theta), I in zip(family, ideals):
                mono = ring.one()
                for s, g in zip(s_list, gamma):
                    mono = mono * d.divisors[s - 1] ** g
                inner = ideal_intersect(prod_M(theta) + mod, Mk + mod)
                rhs_terms.append(Ideal(ring, [mono]) * inner)
            rhs = rhs_terms[0] + mod
            for t in rhs_terms[1:]:
                rhs = rhs + t
            if lhs != rhs:
                return AssumptionReport("fail", 1, tuple(family),
                                        "identity fails for family %s" % (family,))
    return AssumptionReport("pass (bounded)",
                            detail="theta_bound=%d e_bound=%d" % (theta_bound, e_bound))


# ---------------------------------------------------------------------------
# strata
# ---------------------------------------------------------------------------

def stratum(alg: PresentedAlgebra, S) -> PresentedAlgebra:
    """Quotient of the presentation by the divisor images d_s, s in S."""
    S = sorted(set(S))
    if not S:
        return alg
    if any(not 1 <= s <= len(alg.atoms) for s in S):
        raise RingError("stratum index out of range")
    extra = [alg.atoms[s - 1].map_ring(alg.ring) for s in S]
    relations = alg.relations + Ideal(alg.ring, extra)
    return PresentedAlgebra(alg.base, alg.atoms, alg.new_vars, relations,
                            alg.embedding)


@dataclass(frozen=True)
class StrataReport:
    status: str  # holds | fails | unsupported
    surjective: bool = False
    kernel_matches: bool = False
    hilbert_lhs: tuple = ()
    hilbert_rhs: tuple = ()
    detail: str = ""


def verify_strata(d: DeformationDatum, S, degree: int = 6) -> StrataReport:
    """Presentation-level check of the strata isomorphism: the S-stratum of
    the full space against the S-stratum of the S-panel.

    The inclusion of the full space in the panel algebra induces a map of
    strata; the check computes (a) surjectivity onto the panel generators,
    (b) the exact kernel of the induced map (must equal the stratum
    relations), and (c) Hilbert staircase fingerprints of both sides in the
    full space's presentation ring, up to the given degree."""
    if not d.smooth:
        return StrataReport("unsupported",
                            detail="only smooth chain data are supported")
    S = sorted(set(S))
    if not S or any(not 1 <= s <= d.n for s in S):
        raise RingError("S must be a nonempty subset of 1..n")
    full = evaluate_panel(initial_panel(d.n), d)
    panel = evaluate_panel(_panel_for(d, S), d)
    lhs = stratum(full, S)
    rhs = stratum(panel, S)

    # the inclusion full ⊆ panel, written on presentation rings
    images = []
    for v in full.ring.variables:
        if v in full.base.ring.variables:
            images.append(rhs.ring.var(v))
        else:
            expr = panel.express_local(full.to_local(full.embedding[v]))
            if expr is None:
                return StrataReport("fails", detail="full-space generator %s "
                                    "missing from the panel algebra" % v)
            images.append(expr)
    lhs_q = QuotientRingContext(lhs.ring, lhs.relations)
    rhs_q = QuotientRingContext(rhs.ring, rhs.relations)

    member = SubalgebraMembership(rhs_q, images)
    surjective = all(member.member(rhs.ring.var(v)) for v in rhs.new_vars)

    kernel = ring_map_kernel(lhs_q, rhs_q, images)
    kernel_matches = kernel == lhs.relations

    h_lhs = tuple(hilbert_function(lhs.relations, degree))
    h_rhs = tuple(hilbert_function(kernel, degree))
    ok = surjective and kernel_matches and h_lhs == h_rhs
    return StrataReport("holds" if ok else "fails", surjective, kernel_matches,
                        h_lhs, h_rhs)

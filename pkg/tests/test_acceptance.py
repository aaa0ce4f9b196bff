"""End-to-end acceptance suite: the worked examples and property checks the
package is calibrated against, with runtime budgets."""

import itertools
import random
import time

from defspace import (Center, DeformationDatum, Fraction, Ideal, MultiCenter,
                      QuotientRingContext, RingContext, algebra_compare,
                      build_an_datum, check_assumption, delta_min,
                      dilatation_presentation, enumerate_polyptych,
                      evaluate_panel, ideal_intersect, initial_panel,
                      kernel_modulo, linear_membership, mono_intersect,
                      mono_member, mono_power, mono_product, mono_sum,
                      parse_poly, validate_datum, verify_coroap,
                      verify_disjoint_support, verify_nested_powers,
                      verify_panelization, verify_strata)
from defspace.cli import fraction_to_string

from test_polyptych import PANELS_N3


def _base(names, *modulus):
    ring = RingContext(list(names))
    return QuotientRingContext(ring, Ideal(ring, [parse_poly(m, ring)
                                                  for m in modulus]))


def _ideal(ring, *texts):
    return Ideal(ring, [parse_poly(t, ring) for t in texts])


def _fat_point_datum():
    """Chain V(X^2) ⊆ V(X) with coordinate divisors T1, T2."""
    base = _base(["X", "T1", "T2"])
    ring = base.ring
    return DeformationDatum(base, [_ideal(ring, "X^2"), _ideal(ring, "X")],
                            [parse_poly("T1", ring), parse_poly("T2", ring)])


# -- 1: panel counts and the reference formula set ---------------------------

def test_acceptance_1_polyptych_counts():
    t0 = time.monotonic()
    counts = [len(enumerate_polyptych(n).panels) for n in range(4)]
    assert counts == [1, 1, 3, 19]
    assert set(enumerate_polyptych(3).strings) == PANELS_N3
    assert time.monotonic() - t0 < 5.0


# -- 2: the double-deformation counterexample pair and its kernel ------------

def test_acceptance_2_fat_point_chain_pair():
    t0 = time.monotonic()
    d = _fat_point_datum()

    r2 = verify_panelization(d, [2])
    assert r2.verdict == "MorphismOnly"
    assert fraction_to_string(r2.witness, d.divisors) == "X^2/(T1*T2^2)"

    r1 = verify_panelization(d, [1])
    assert r1.verdict == "Isomorphism"

    base = d.base
    mc = MultiCenter([Center(_ideal(base.ring, "X"),
                             parse_poly("T2", base.ring))])
    T = _ideal(base.ring, "X^2")
    exact, truncated, stabilized = kernel_modulo(base, mc, T, nu_bound=3)
    src = dilatation_presentation(base, mc, verify=False)
    y = src.ring.var(src.new_vars[0])
    assert exact.contains(y * y)       # the class of (X/T2)^2
    assert truncated.contains(y * y)
    assert stabilized
    assert time.monotonic() - t0 < 30.0


# -- 3 and 4: the two limits of the product-vs-intersection inclusion --------

def test_acceptance_3_monomial_counterexample():
    ring = RingContext(["x", "y", "z", "t"])
    I1 = _ideal(ring, "y*z")
    I2 = _ideal(ring, "x*y", "y*z", "z*t")
    m = parse_poly("x*y*z*t", ring)
    M1 = delta_min([(0, 1, 1, 0)], 4)
    M2 = delta_min([(1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1)], 4)
    e = (1, 1, 1, 1)
    in_cap_mono = mono_member(e, mono_intersect(M1, mono_power(M2, 2)))
    in_prod_mono = mono_member(e, mono_product(M1, M2))
    in_cap_gb = ideal_intersect(I1, I2 * I2).contains(m)
    in_prod_gb = (I1 * I2).contains(m)
    assert in_cap_mono and not in_prod_mono
    assert in_cap_gb == in_cap_mono
    assert in_prod_gb == in_prod_mono


def test_acceptance_4_hypersurface_counterexample():
    base = _base(["x", "y", "z"], "x^2 - z*y^3")
    ring = base.ring
    I1, I2 = _ideal(ring, "x"), _ideal(ring, "x", "y")
    f = parse_poly("x^2", ring)
    cap = ideal_intersect(I1.power(2) + base.modulus,
                          I2.power(3) + base.modulus)
    assert cap.contains(f)
    assert not (I1.power(2) * I2 + base.modulus).contains(f)


# -- 5: the monomial identity suite on random instances ----------------------

def _random_mono(rng, arity, max_deg=4, max_gens=3):
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        e = [0] * arity
        for _ in range(rng.randint(1, max_deg)):
            e[rng.randrange(arity)] += 1
        gens.append(tuple(e))
    return delta_min(gens, arity)


def _random_mono_on(rng, arity, vars_allowed, max_deg=3):
    gens = []
    for _ in range(rng.randint(1, 2)):
        e = [0] * arity
        for _ in range(rng.randint(1, max_deg)):
            e[rng.choice(vars_allowed)] += 1
        gens.append(tuple(e))
    return delta_min(gens, arity)


def test_acceptance_5_monomial_identity_suite():
    t0 = time.monotonic()
    rng = random.Random(55)
    names = ["x", "y", "z", "t"]
    for trial in range(300):
        arity = rng.randint(1, 4)
        ring = RingContext(names[:arity])
        I = _random_mono(rng, arity)
        J = _random_mono(rng, arity)
        K = _random_mono(rng, arity)

        # membership in the intersection is simultaneous membership
        probe = tuple(rng.randint(0, 4) for _ in range(arity))
        assert mono_member(probe, mono_intersect(I, J)) == (
            mono_member(probe, I) and mono_member(probe, J))
        # (I+J) ∩ K = (I∩K) + (J∩K)
        assert mono_intersect(mono_sum(I, J), K) == mono_sum(
            mono_intersect(I, K), mono_intersect(J, K))
        # sum and product antichains behave like unions/products of monomials
        assert mono_member(probe, mono_sum(I, J)) == (
            mono_member(probe, I) or mono_member(probe, J))

        # disjoint supports: intersection equals product
        if arity >= 2:
            cut = rng.randint(1, arity - 1)
            A = _random_mono_on(rng, arity, list(range(cut)))
            B = _random_mono_on(rng, arity, list(range(cut, arity)))
            assert verify_disjoint_support(A, B).holds

        # support-split rewriting identity
        if arity >= 3:
            N = _random_mono_on(rng, arity, [0])
            Q = _random_mono_on(rng, arity, list(range(1, arity)))
            Qe = _random_mono_on(rng, arity, list(range(1, arity)))
            assert verify_coroap([N], [Q], Qe).holds

        # nested-subsequence power identities
        sizes = sorted(rng.sample(range(1, arity + 1), rng.randint(1, arity)))
        chain = [set(range(c)) for c in sizes]
        a = [rng.randint(0, 2) for _ in chain]
        b = [rng.randint(0, 2) for _ in chain]
        if any(a) or any(b):
            assert verify_nested_powers(chain, a, b).holds

        # every combinatorial result equals the elimination result
        Ii, Ji = I.to_ideal(ring), J.to_ideal(ring)
        assert mono_intersect(I, J).to_ideal(ring) == ideal_intersect(Ii, Ji)
        assert mono_product(I, J).to_ideal(ring) == Ii * Ji
        assert mono_sum(I, J).to_ideal(ring) == Ii + Ji
    assert time.monotonic() - t0 < 60.0


# -- 6: smooth coordinate-chain data across all panels ------------------------

def _an_datum(n):
    ring = RingContext(["v"])
    base = QuotientRingContext(ring, Ideal(ring, []))
    I = Ideal(ring, [parse_poly("v", ring)])
    return build_an_datum(base, [I] * n)


def test_acceptance_6_smooth_data_all_panels():
    t0 = time.monotonic()
    d2 = _an_datum(2)
    for S in ([1], [2]):
        assert verify_panelization(d2, S).verdict == "Isomorphism", S
    d3 = _an_datum(3)
    proper = [list(S) for r in (1, 2)
              for S in itertools.combinations((1, 2, 3), r)]
    assert len(proper) == 6
    for S in proper:
        assert verify_panelization(d3, S).verdict == "Isomorphism", S
    full = evaluate_panel(initial_panel(3), d3)
    for expr in enumerate_polyptych(3).panels:
        alg = evaluate_panel(expr, d3)
        assert algebra_compare(full, alg).verdict == "Equal"
    assert time.monotonic() - t0 < 600.0


# -- 7: existence of the comparison morphism on random data -------------------

def _random_small_datum(rng):
    base = _base(["x", "y", "t1", "t2"])
    ring = base.ring
    pool = ["x", "y", "x*y", "x + y", "x^2", "y^2", "x^2 + y", "x*y - y"]
    inner = [parse_poly(rng.choice(pool), ring)]
    outer = inner + [parse_poly(rng.choice(pool), ring)]
    n = rng.randint(1, 2)
    chain = ([Ideal(ring, outer)] if n == 1
             else [Ideal(ring, inner), Ideal(ring, outer)])
    divisors = [parse_poly(t, ring) for t in ["t1", "t2"][:n]]
    return DeformationDatum(base, chain, divisors)


def test_acceptance_7_morphism_existence_random():
    rng = random.Random(77)
    accepted = 0
    while accepted < 50:
        d = _random_small_datum(rng)
        if not validate_datum(d):
            continue
        accepted += 1
        if d.n < 2:
            continue  # no proper nonempty S
        for S in ([1], [2]):
            r = verify_panelization(d, S)
            # the comparison morphism always exists
            assert r.verdict in ("Isomorphism", "MorphismOnly"), (S, r)
            K = set(range(1, d.n + 1)) - set(S)
            if min(K) > max(S):
                assert r.verdict == "Isomorphism", (S, r)


# -- 8: strata fingerprints on smooth data ------------------------------------

def test_acceptance_8_strata():
    ring = RingContext(["u", "w"])
    base = QuotientRingContext(ring, Ideal(ring, []))
    I = Ideal(ring, [parse_poly("u", ring)])

    d2 = build_an_datum(base, [I, I])
    for S in ([1], [2], [1, 2]):
        r = verify_strata(d2, S, degree=6)
        assert r.status == "holds", (S, r)
        assert r.surjective
        assert r.hilbert_lhs == r.hilbert_rhs

    # a single center over the plane: the stratum is an affine bundle over
    # the center, so its coordinate ring is free polynomial on 2 variables
    d1 = build_an_datum(base, [I])
    r1 = verify_strata(d1, [1], degree=6)
    assert r1.status == "holds"
    assert r1.hilbert_lhs == tuple(k + 1 for k in range(7))


# -- 9: the regularity assumption behind the panel isomorphism ----------------

def test_acceptance_9_assumption_checker():
    r = check_assumption(_fat_point_datum(), [2], 1, theta_bound=3)
    assert r.status == "fail"
    assert r.item == 2
    assert (2,) in r.witness  # theta = (2): (X^2) vs (X^3)

    for n in (2, 3):
        d = _an_datum(n)
        full = set(range(1, n + 1))
        for size in range(1, n):
            for S in itertools.combinations(sorted(full), size):
                for k in sorted(full - set(S)):
                    rep = check_assumption(d, list(S), k, theta_bound=3)
                    assert rep.status in ("pass (bounded)", "vacuous"), (S, k, rep)
                    if any(s > k for s in S):
                        assert rep.status == "pass (bounded)", (S, k, rep)


# -- 10: Groebner membership against the linear-algebra oracle ----------------

def _random_poly(ring, rng, max_deg=4, max_terms=4):
    from fractions import Fraction as F
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = [0] * ring.nvars
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(ring.nvars)] += 1
        c = F(rng.randint(-5, 5), rng.randint(1, 3))
        if c:
            terms[tuple(e)] = terms.get(tuple(e), 0) + c
    from defspace import Polynomial
    return Polynomial(ring, {e: c for e, c in terms.items() if c})


def test_acceptance_10_membership_oracle_agreement():
    rng = random.Random(1010)
    names = ["x", "y", "z"]
    done = 0
    while done < 300:
        ring = RingContext(names[:rng.randint(1, 3)])
        gens = [_random_poly(ring, rng, max_deg=3, max_terms=3)
                for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        I = Ideal(ring, gens)
        if rng.random() < 0.5:
            f = _random_poly(ring, rng, max_deg=4, max_terms=3)
        else:  # bias toward actual members
            f = sum((g * _random_poly(ring, rng, max_deg=1, max_terms=2)
                     for g in gens), ring.zero())
        assert I.contains(f) == linear_membership(f, gens), (f, gens)
        done += 1

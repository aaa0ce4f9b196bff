import random

import pytest

from defspace import (DeformationDatum, Ideal, QuotientRingContext,
                      RingContext, algebra_compare, build_an_datum,
                      check_assumption, deformation_space, evaluate_panel,
                      initial_panel, panelize, parse_poly, validate_datum,
                      verify_panelization, verify_strata)


def _base(names, *modulus):
    ring = RingContext(list(names))
    return QuotientRingContext(ring, Ideal(ring, [parse_poly(m, ring)
                                                  for m in modulus]))


def _datum(base, chain_texts, div_texts, smooth=False):
    ring = base.ring
    chain = [Ideal(ring, [parse_poly(t, ring) for t in gens])
             for gens in chain_texts]
    divisors = [parse_poly(t, ring) for t in div_texts]
    return DeformationDatum(base, chain, divisors, smooth=smooth)


def test_validate_rejects_broken_chains():
    base = _base(["x", "y", "t1", "t2"])
    # chain not nested: (y) is not inside (x)
    d = _datum(base, [["y"], ["x"]], ["t1", "t2"])
    assert not validate_datum(d)
    # divisor is a zero divisor modulo a chain ideal
    d2 = _datum(base, [["x"], ["x", "t1"]], ["t1", "t2"])
    assert not validate_datum(d2)
    # a good datum
    d3 = _datum(base, [["x"], ["x", "y"]], ["t1", "t2"])
    assert validate_datum(d3)


def test_deformation_space_equals_root_panel():
    base = _base(["v"])
    I = Ideal(base.ring, [parse_poly("v", base.ring)])
    d = build_an_datum(base, [I, I])
    full = deformation_space(d)
    root = evaluate_panel(initial_panel(2), d)
    assert algebra_compare(full, root).verdict == "Equal"


def test_panel_evaluation_is_functorial_on_rewrites():
    """Rewriting deeper inside an already rewritten panel evaluates to the
    same algebra as the one-step panel."""
    base = _base(["v"])
    I = Ideal(base.ring, [parse_poly("v", base.ring)])
    d = build_an_datum(base, [I, I])
    root = initial_panel(2)
    p1 = panelize(root, (), frozenset({1}))
    a_root = evaluate_panel(root, d)
    a_p1 = evaluate_panel(p1, d)
    assert algebra_compare(a_root, a_p1).verdict == "Equal"


def test_fat_point_chain_morphism_only_vs_isomorphism():
    base = _base(["X", "T1", "T2"])
    ring = base.ring
    d = DeformationDatum(base,
                         [Ideal(ring, [parse_poly("X^2", ring)]),
                          Ideal(ring, [parse_poly("X", ring)])],
                         [parse_poly("T1", ring), parse_poly("T2", ring)])
    r2 = verify_panelization(d, [2])
    assert r2.verdict == "MorphismOnly"
    assert r2.witness is not None
    r1 = verify_panelization(d, [1])
    assert r1.verdict == "Isomorphism"


def test_assumption_fails_on_fat_point_datum():
    base = _base(["X", "T1", "T2"])
    ring = base.ring
    d = DeformationDatum(base,
                         [Ideal(ring, [parse_poly("X^2", ring)]),
                          Ideal(ring, [parse_poly("X", ring)])],
                         [parse_poly("T1", ring), parse_poly("T2", ring)])
    r = check_assumption(d, [2], 1)
    assert r.status == "fail"
    assert r.witness is not None


def test_assumption_bounded_pass_on_smooth_pair():
    base = _base(["v"])
    I = Ideal(base.ring, [parse_poly("v", base.ring)])
    d = build_an_datum(base, [I, I])
    assert check_assumption(d, [2], 1).status == "pass (bounded)"
    # no S-index above k: nothing to check
    assert check_assumption(d, [1], 2).status == "vacuous"


def test_s_must_be_proper_nonempty():
    base = _base(["v"])
    I = Ideal(base.ring, [parse_poly("v", base.ring)])
    d = build_an_datum(base, [I, I])
    with pytest.raises(Exception):
        verify_panelization(d, [])
    with pytest.raises(Exception):
        verify_panelization(d, [1, 2])


def test_strata_smooth_line_in_plane():
    ring = RingContext(["u", "w"])
    base = QuotientRingContext(ring, Ideal(ring, []))
    I = Ideal(ring, [parse_poly("u", ring)])
    d = build_an_datum(base, [I])
    r = verify_strata(d, [1])
    assert r.status == "holds"
    assert r.surjective and r.kernel_matches
    assert r.hilbert_lhs == r.hilbert_rhs


def test_strata_unsupported_for_singular_datum():
    base = _base(["x"])
    I = Ideal(base.ring, [parse_poly("x^2", base.ring)])
    d = build_an_datum(base, [I])
    r = verify_strata(d, [1])
    assert r.status == "unsupported"


def random_valid_datum(rng):
    """n ≤ 2 chain data over two base variables with fresh divisor variables;
    divisors in fresh variables are nonzerodivisors by construction."""
    base = _base(["x", "y", "t1", "t2"])
    ring = base.ring
    pool = ["x", "y", "x*y", "x + y", "x^2", "y^2", "x^2 + y"]
    inner = [parse_poly(rng.choice(pool), ring)]
    outer = inner + [parse_poly(rng.choice(pool), ring)]
    n = rng.randint(1, 2)
    chain = [Ideal(ring, inner), Ideal(ring, outer)][:n]
    if n == 1:
        chain = [Ideal(ring, outer)]
    divisors = [parse_poly(t, ring) for t in ["t1", "t2"][:n]]
    return DeformationDatum(base, chain, divisors)


def test_random_data_full_space_embeds_in_every_panel():
    rng = random.Random(101)
    trials = 0
    while trials < 12:
        d = random_valid_datum(rng)
        if not validate_datum(d):
            continue
        trials += 1
        if d.n == 1:
            continue  # no proper nonempty S exists
        for S in ([1], [2]):
            r = verify_panelization(d, S)
            assert r.verdict in ("Isomorphism", "MorphismOnly"), (S, r)
            if min(set(range(1, d.n + 1)) - set(S)) > max(S):
                assert r.verdict == "Isomorphism", (S, r)

import random

from defspace import (Ideal, RingContext, delta_min, ideal_intersect,
                      mono_intersect, mono_member, mono_power, mono_product,
                      mono_sum, parse_poly, verify_coroap,
                      verify_disjoint_support, verify_nested_powers)


def random_mono_ideal(rng, arity, max_deg=4, max_gens=3):
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        e = [0] * arity
        for _ in range(rng.randint(1, max_deg)):
            e[rng.randrange(arity)] += 1
        gens.append(tuple(e))
    return delta_min(gens, arity)


def test_antichain_invariant():
    rng = random.Random(2)
    for _ in range(100):
        I = random_mono_ideal(rng, rng.randint(1, 4))
        gens = sorted(I.min_generators)
        for a in gens:
            for b in gens:
                if a != b:
                    assert not all(x >= y for x, y in zip(a, b))


def test_membership_is_divisibility():
    I = delta_min([(2, 0), (1, 1)], 2)
    assert mono_member((2, 1), I)
    assert mono_member((1, 1), I)
    assert not mono_member((1, 0), I)
    assert not mono_member((0, 5), I)


def test_lattice_identities_random():
    rng = random.Random(9)
    for _ in range(120):
        arity = rng.randint(1, 4)
        I = random_mono_ideal(rng, arity)
        J = random_mono_ideal(rng, arity)
        K = random_mono_ideal(rng, arity)
        # product distributes over sum; intersection absorbs
        assert mono_product(I, mono_sum(J, K)) == mono_sum(
            mono_product(I, J), mono_product(I, K))
        assert mono_intersect(I, mono_sum(I, J)) == I
        assert mono_sum(I, mono_intersect(I, J)) == I
        # product ⊆ intersection, witnessed generator-wise
        P = mono_product(I, J)
        for g in P.min_generators:
            assert mono_member(g, mono_intersect(I, J))


def test_agreement_with_elimination():
    """Combinatorial arithmetic against Groebner-based arithmetic."""
    rng = random.Random(31)
    names = ["x", "y", "z", "t"]
    for _ in range(60):
        arity = rng.randint(1, 4)
        ring = RingContext(names[:arity])
        I = random_mono_ideal(rng, arity)
        J = random_mono_ideal(rng, arity)
        Ii, Ji = I.to_ideal(ring), J.to_ideal(ring)
        assert mono_intersect(I, J).to_ideal(ring) == ideal_intersect(Ii, Ji)
        assert mono_product(I, J).to_ideal(ring) == Ii * Ji
        assert mono_sum(I, J).to_ideal(ring) == Ii + Ji
        assert mono_power(I, 2).to_ideal(ring) == Ii.power(2)


def test_product_vs_intersection_counterexample():
    # xyzt witnesses that I1 ∩ I2^2 can exceed I1*I2 even for squarefree data
    I1 = delta_min([(0, 1, 1, 0)], 4)                        # yz
    I2 = delta_min([(1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1)], 4)  # xy, yz, zt
    m = (1, 1, 1, 1)
    assert mono_member(m, mono_intersect(I1, mono_power(I2, 2)))
    assert not mono_member(m, mono_product(I1, I2))


def test_disjoint_support_report():
    I = delta_min([(1, 0, 0)], 3)
    J = delta_min([(0, 2, 1)], 3)
    K = delta_min([(1, 1, 0)], 3)
    assert verify_disjoint_support(I, J).holds
    r = verify_disjoint_support(I, K)
    assert r.status == "hypothesis-violated"


def test_nested_powers_identities():
    rng = random.Random(41)
    for _ in range(40):
        arity = rng.randint(2, 4)
        # a nested chain of variable subsets
        cut = sorted(rng.sample(range(1, arity + 1), rng.randint(1, arity)))
        chain = [set(range(c)) for c in cut]
        a = [rng.randint(0, 2) for _ in chain]
        b = [rng.randint(0, 2) for _ in chain]
        if not any(a) and not any(b):
            continue
        r = verify_nested_powers(chain, a, b)
        assert r.holds, (chain, a, b, r)


def test_coroap_report_statuses():
    # supports split between N and Q: the rewriting identity holds
    N = delta_min([(1, 0, 0, 0)], 4)
    Q = delta_min([(0, 0, 1, 0)], 4)
    Qe = delta_min([(0, 0, 1, 0), (0, 0, 0, 2)], 4)
    r = verify_coroap([N], [Q], Qe)
    assert r.holds
    # overlapping supports violate the hypothesis
    r2 = verify_coroap([N], [delta_min([(1, 1, 0, 0)], 4)], Qe)
    assert r2.status == "hypothesis-violated"

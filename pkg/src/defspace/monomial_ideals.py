"""Monomial ideals as finite antichains of exponent vectors.

A :class:`MonomialIdeal` stores the minimal generators (the antichain
``Delta_min`` of the dominance order on exponent vectors).  The empty set is
the zero ideal; the singleton zero vector is the unit ideal.  The ``verify_*``
operations return structured reports with witnesses instead of booleans.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .groebner import Ideal
from .rings import RingContext, RingError


def _dominates(a, b):
    return all(x >= y for x, y in zip(a, b))


def delta_min(exponents: Iterable[tuple], arity: int | None = None) -> "MonomialIdeal":
    """Dominance-filter a generating set into the antichain of minimal elements."""
    vecs = [tuple(v) for v in exponents]
    if arity is None:
        if not vecs:
            raise RingError("arity required for the empty generating set")
        arity = len(vecs[0])
    if any(len(v) != arity for v in vecs):
        raise RingError("exponent vector arity mismatch")
    if any(any(e < 0 for e in v) for v in vecs):
        raise RingError("negative exponent")
    minimal = []
    for v in vecs:
        if any(v != w and _dominates(v, w) for w in vecs):
            continue
        if v not in minimal:
            minimal.append(v)
    return MonomialIdeal(frozenset(minimal), arity)


@dataclass(frozen=True)
class MonomialIdeal:
    min_generators: frozenset
    arity: int

    @classmethod
    def zero(cls, arity: int) -> "MonomialIdeal":
        return cls(frozenset(), arity)

    @classmethod
    def unit(cls, arity: int) -> "MonomialIdeal":
        return cls(frozenset({(0,) * arity}), arity)

    def is_zero(self):
        return not self.min_generators

    def is_unit(self):
        return (0,) * self.arity in self.min_generators

    def _check(self, other: "MonomialIdeal"):
        if self.arity != other.arity:
            raise RingError("monomial ideal arity mismatch")

    def to_ideal(self, ring: RingContext) -> Ideal:
        """The corresponding polynomial ideal (variable i <-> coordinate i)."""
        if ring.nvars != self.arity:
            raise RingError("ring arity mismatch")
        return Ideal(ring, [ring.monomial(v) for v in sorted(self.min_generators)])

    def __repr__(self):
        gens = ",".join(str(v) for v in sorted(self.min_generators))
        return "MonomialIdeal{%s}" % gens


def mono_member(alpha, I: MonomialIdeal) -> bool:
    alpha = tuple(alpha)
    if len(alpha) != I.arity:
        raise RingError("exponent vector arity mismatch")
    return any(_dominates(alpha, g) for g in I.min_generators)


def mono_intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """Pairwise componentwise maxima, dominance-filtered."""
    I._check(J)
    vecs = [tuple(max(a, b) for a, b in zip(g, h))
            for g in I.min_generators for h in J.min_generators]
    return delta_min(vecs, I.arity)


def mono_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    I._check(J)
    return delta_min(list(I.min_generators) + list(J.min_generators), I.arity)


def mono_product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    I._check(J)
    vecs = [tuple(a + b for a, b in zip(g, h))
            for g in I.min_generators for h in J.min_generators]
    return delta_min(vecs, I.arity)


def mono_power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    result = MonomialIdeal.unit(I.arity)
    for _ in range(n):
        result = mono_product(result, I)
    return result


def support(I: MonomialIdeal) -> set[int]:
    return {i for g in I.min_generators for i, e in enumerate(g) if e}


# ---------------------------------------------------------------------------
# verification reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Report:
    status: str  # "holds" | "fails" | "hypothesis-violated"
    detail: str = ""
    witness: tuple | None = None

    @property
    def holds(self):
        return self.status == "holds"


def _first_difference(I: MonomialIdeal, J: MonomialIdeal):
    """A generator of one side missing from the other, if any."""
    for g in sorted(I.min_generators):
        if not mono_member(g, J):
            return g
    for g in sorted(J.min_generators):
        if not mono_member(g, I):
            return g
    return None


def verify_disjoint_support(I: MonomialIdeal, J: MonomialIdeal) -> Report:
    """I ∩ J = I·J when the supports are disjoint."""
    I._check(J)
    shared = support(I) & support(J)
    if shared:
        return Report("hypothesis-violated",
                      "supports share variable index %d" % min(shared))
    lhs = mono_intersect(I, J)
    rhs = mono_product(I, J)
    w = _first_difference(lhs, rhs)
    if w is None:
        return Report("holds")
    return Report("fails", "intersection and product differ", w)


def verify_coroap(N: Sequence[MonomialIdeal], Q: Sequence[MonomialIdeal],
                  Qext: MonomialIdeal) -> Report:
    """(sum N_i Q_i) ∩ Qext = sum N_i (Q_i ∩ Qext), under support disjointness
    of each N_i from Q_i and Qext."""
    if len(N) != len(Q) or not N:
        raise RingError("N and Q must be nonempty lists of equal length")
    arity = Qext.arity
    for i, (n, q) in enumerate(zip(N, Q)):
        n._check(Qext)
        q._check(Qext)
        if support(n) & (support(q) | support(Qext)):
            return Report("hypothesis-violated",
                          "supp(N_%d) meets supp(Q_%d) or supp(Q)" % (i, i))
    lhs = MonomialIdeal.zero(arity)
    rhs = MonomialIdeal.zero(arity)
    for n, q in zip(N, Q):
        lhs = mono_sum(lhs, mono_product(n, q))
        rhs = mono_sum(rhs, mono_product(n, mono_intersect(q, Qext)))
    lhs = mono_intersect(lhs, Qext)
    w = _first_difference(lhs, rhs)
    if w is None:
        return Report("holds")
    return Report("fails", "distribution identity fails", w)


def verify_nested_powers(chain: Sequence[Iterable[int]], a: Sequence[int],
                         b: Sequence[int]) -> Report:
    """Both identities for ideals generated by nested variable subsets:

    (I_1^{a_1}...I_n^{a_n}) ∩ (I_1^{b_1}...I_n^{b_n}) = I_1^{m_1} ∩ ... ∩ I_n^{m_n}
    with m_i = max(sum a_1..a_i, sum b_1..b_i), and for the nondecreasing m,
    I_1^{m_1} ∩ ... ∩ I_n^{m_n} = I_1^{m_1} I_2^{m_2-m_1} ... I_n^{m_n-m_{n-1}}.
    """
    sets = [frozenset(s) for s in chain]
    if not sets:
        raise RingError("empty chain")
    for s, t in zip(sets, sets[1:]):
        if not s <= t:
            return Report("hypothesis-violated", "chain is not nested")
    if len(a) != len(sets) or len(b) != len(sets):
        raise RingError("one exponent per chain entry expected")
    arity = max(max(s) for s in sets if s) + 1 if any(sets) else 1
    ideals = [delta_min([tuple(1 if j == i else 0 for j in range(arity)) for i in s], arity)
              for s in sets]

    def prod_powers(exps):
        out = MonomialIdeal.unit(arity)
        for ideal, e in zip(ideals, exps):
            out = mono_product(out, mono_power(ideal, e))
        return out

    m = []
    sa = sb = 0
    for ai, bi in zip(a, b):
        sa += ai
        sb += bi
        m.append(max(sa, sb))

    inter_m = MonomialIdeal.unit(arity)
    for ideal, mi in zip(ideals, m):
        inter_m = mono_intersect(inter_m, mono_power(ideal, mi))

    lhs1 = mono_intersect(prod_powers(a), prod_powers(b))
    w = _first_difference(lhs1, inter_m)
    if w is not None:
        return Report("fails", "product-intersection identity fails", w)

    diffs = [m[0]] + [m[i] - m[i - 1] for i in range(1, len(m))]
    rhs2 = prod_powers(diffs)
    w = _first_difference(inter_m, rhs2)
    if w is not None:
        return Report("fails", "telescoping product identity fails", w)
    return Report("holds")

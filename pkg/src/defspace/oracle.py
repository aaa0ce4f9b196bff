"""Degree-bounded linear-algebra membership oracle.

Decides whether f = sum h_i g_i is solvable with deg h_i <= deg f + slack by
setting up one exact linear system over Q and solving it by sparse Gaussian
elimination.  Independent of the Groebner machinery on purpose: this is the
referee the basis computations are tested against.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .groebner import _monomials_of_degree
from .rings import Polynomial, monomial_mul


def _monomials_up_to(nvars: int, bound: int):
    for d in range(bound + 1):
        yield from _monomials_of_degree(nvars, d)


def linear_membership(f: Polynomial, gens: Sequence[Polynomial], slack: int = 4) -> bool:
    """True iff f is a polynomial combination of gens with quotient degrees
    bounded by deg f + slack.  Exact; can only under-approximate membership
    if the true certificate needs larger quotients."""
    gens = [g for g in gens if not g.is_zero()]
    if f.is_zero():
        return True
    if not gens:
        return False
    nvars = f.ring.nvars
    bound = max(f.total_degree(), 0) + slack

    # columns: (gen index, quotient monomial); rows: monomials of products
    columns = []
    col_entries = []  # sparse column: {row_monomial: coeff}
    for gi, g in enumerate(gens):
        for q in _monomials_up_to(nvars, bound):
            col = {}
            for m, c in g.terms.items():
                col[monomial_mul(m, q)] = col.get(monomial_mul(m, q), Fraction(0)) + c
            columns.append((gi, q))
            col_entries.append(col)

    # rows as dicts keyed by column index
    rows: dict = {}
    for j, col in enumerate(col_entries):
        for m, c in col.items():
            rows.setdefault(m, {})[j] = c
    rhs = {m: Fraction(c) for m, c in f.terms.items()}
    for m in rhs:
        rows.setdefault(m, {})

    # sparse elimination; consistency of A x = b is all we need
    row_list = [(dict(cols), rhs.get(m, Fraction(0))) for m, cols in rows.items()]
    used_pivots = set()
    # eliminate repeatedly; pick rows with fewest entries first for sparsity
    row_list.sort(key=lambda r: len(r[0]))
    reduced_rows = []
    for cols, b in row_list:
        cols = dict(cols)
        for pj, (pcols, pb) in reduced_rows:
            c = cols.pop(pj, None)
            if c:
                for k, v in pcols.items():
                    nv = cols.get(k, Fraction(0)) - c * v
                    if nv:
                        cols[k] = nv
                    else:
                        cols.pop(k, None)
                b = b - c * pb
        if not cols:
            if b != 0:
                return False
            continue
        # normalize on a pivot column (fewest fill: pick the max index)
        pj = min(cols)
        pc = cols[pj]
        cols = {k: v / pc for k, v in cols.items() if k != pj}
        b = b / pc
        reduced_rows.append((pj, (cols, b)))
        used_pivots.add(pj)
    return True

"""Command-line front end.

Each subcommand produces a list of check results rendered as text or as a
JSON array of objects with the fixed field order check, verdict, witness
(when present), millis.  Exit status: 0 when every check passed, 1 when any
check failed or produced an unexpected verdict, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from .deformation import (build_an_datum, check_assumption, deformation_space,
                          evaluate_panel, verify_panelization, verify_strata)
from .dilatation import (Center, Fraction, MultiCenter, algebra_compare,
                         dilatation_presentation, kernel_modulo)
from .dsl import DslError, parse_document
from .groebner import Ideal, QuotientRingContext
from .monomial_ideals import (delta_min, mono_intersect, mono_member,
                              mono_product, mono_sum)
from .polyptych import emit_dot, enumerate_polyptych, initial_panel
from .rings import GREVLEX, LEX, RingContext, parse_poly, poly_to_string

BAD_VERDICTS = ("fail", "fails", "Unexpected", "error", "unsupported")


@dataclass
class CheckResult:
    check: str
    verdict: str
    witness: str | None
    millis: int

    @property
    def passed(self):
        return self.verdict not in BAD_VERDICTS


def fraction_to_string(f: Fraction, atoms) -> str:
    num = poly_to_string(f.numerator)
    parts = []
    for a, e in zip(atoms, f.denominator_exponents):
        if not e:
            continue
        s = poly_to_string(a)
        if len(a.terms) > 1:
            s = "(%s)" % s
        parts.append(s if e == 1 else "%s^%d" % (s, e))
    if not parts:
        return num
    return "%s/(%s)" % (num, "*".join(parts))


def _timed(check, fn):
    t0 = time.monotonic()
    try:
        verdict, witness = fn()
    except Exception as e:  # surfaced as a failing check, not a crash
        verdict, witness = "error", str(e)
    millis = int((time.monotonic() - t0) * 1000)
    return CheckResult(check, verdict, witness, millis)


def emit_json(results) -> str:
    rows = []
    for r in results:
        row = {"check": r.check, "verdict": r.verdict}
        if r.witness is not None:
            row["witness"] = r.witness
        row["millis"] = r.millis
        rows.append(row)
    return json.dumps(rows, indent=2)


def _ideal_gens_str(I: Ideal) -> str:
    return ", ".join(poly_to_string(g) for g in I.generators)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_gb(doc, args):
    if args.ideal not in doc.ideals:
        raise DslError("no ideal named '%s'" % args.ideal, 0, 0)
    order = LEX if args.order == "lex" else GREVLEX
    I = doc.ideals[args.ideal] + doc.modulus

    def run():
        gb = I.groebner_basis(order)
        return "pass", "; ".join(poly_to_string(g, order) for g in gb)
    return [_timed("gb %s (%s)" % (args.ideal, args.order), run)]


def _as_monomial(I: Ideal):
    exps = []
    for g in I.generators:
        if len(g.terms) != 1 or next(iter(g.terms.values())) != 1:
            return None
        exps.append(next(iter(g.terms)))
    return delta_min(exps, I.ring.nvars)


def _cmd_mono(doc, results_args):
    """Combinatorial ideal arithmetic checked against elimination-based
    arithmetic, for every pair of named monomial ideals."""
    results = []
    named = []
    for name, I in doc.ideals.items():
        M = _as_monomial(I)
        if M is None:
            results.append(CheckResult("mono %s" % name, "skipped",
                                       "not a monomial ideal", 0))
        else:
            named.append((name, I, M))
    from .groebner import ideal_intersect
    for i in range(len(named)):
        for j in range(i, len(named)):
            na, Ia, Ma = named[i]
            nb, Ib, Mb = named[j]
            for op, mono_op, gb_op in (
                    ("intersect", mono_intersect, lambda A, B: ideal_intersect(A, B)),
                    ("product", mono_product, lambda A, B: A * B),
                    ("sum", mono_sum, lambda A, B: A + B)):
                def run(Ma=Ma, Mb=Mb, Ia=Ia, Ib=Ib, mono_op=mono_op, gb_op=gb_op):
                    left = mono_op(Ma, Mb).to_ideal(Ia.ring)
                    right = gb_op(Ia, Ib)
                    if left == right:
                        return "pass", None
                    return "fail", _ideal_gens_str(left)
                results.append(_timed("mono %s %s,%s" % (op, na, nb), run))
    return results


def _single_datum(doc, args):
    if getattr(args, "datum", None):
        if args.datum not in doc.data:
            raise DslError("no datum named '%s'" % args.datum, 0, 0)
        return doc.data[args.datum]
    if len(doc.data) != 1:
        raise DslError("document must declare exactly one datum "
                       "(or pass --datum)", 0, 0)
    return next(iter(doc.data.values()))


def _cmd_dilatate(doc, args):
    d = _single_datum(doc, args)

    def run():
        alg = dilatation_presentation(d.base, d.multicenter())
        rels = _ideal_gens_str(alg.relations)
        return "pass", "%s[%s] : %s" % (
            ",".join(d.base.ring.variables), ",".join(alg.new_vars), rels or "0")
    return [_timed("dilatate", run)]


def _parse_s(text):
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise DslError("bad index list '%s'" % text, 0, 0)


def _run_verify(d, S):
    def run():
        r = verify_panelization(d, S)
        w = None
        if r.witness is not None:
            w = fraction_to_string(r.witness, d.divisors)
        return r.verdict, w
    return run


def _run_assume(d, S, k, bound):
    def run():
        r = check_assumption(d, S, k, theta_bound=bound)
        w = None
        if r.witness is not None:
            w = "item %s, exponents %s" % (r.item, (r.witness,))
        return r.status, w
    return run


def _run_strata(d, S, degree=6):
    def run():
        r = verify_strata(d, S, degree=degree)
        if r.status == "holds":
            return "holds", "hilbert %s" % (r.hilbert_lhs,)
        detail = r.detail or ("surjective=%s kernel_matches=%s %s vs %s" % (
            r.surjective, r.kernel_matches, r.hilbert_lhs, r.hilbert_rhs))
        return r.status, detail
    return run


def _cmd_deform(doc, args):
    d = _single_datum(doc, args)
    S = _parse_s(args.s)
    label = "deform %s s=%s" % (args.action, args.s)
    if args.action == "verify":
        return [_timed(label, _run_verify(d, S))]
    if args.action == "assume":
        if args.k is None:
            raise DslError("deform assume needs --k", 0, 0)
        return [_timed(label + " k=%d" % args.k,
                       _run_assume(d, S, args.k, args.bound))]
    return [_timed(label, _run_strata(d, S))]


def _cmd_check(doc, args):
    results = []
    for c in doc.checks:
        if c.kind == "member":
            poly, I = c.args["poly"], doc.ideals[c.args["ideal"]] + doc.modulus

            def run(poly=poly, I=I):
                ok = I.contains(poly)
                return ("pass" if ok else "fail"), poly_to_string(poly)
            results.append(_timed("member %s in %s"
                                  % (poly_to_string(poly), c.args["ideal"]), run))
            continue
        d = doc.data[c.args["datum"]]
        S = c.args["s"]
        label = "%s %s s=%s" % (c.kind, c.args["datum"],
                                ",".join(str(i) for i in S))
        if c.kind == "verify":
            results.append(_timed(label, _run_verify(d, S)))
        elif c.kind == "assume":
            results.append(_timed(label + " k=%d" % c.args["k"],
                                  _run_assume(d, S, c.args["k"],
                                              c.args.get("bound", 3))))
        else:
            results.append(_timed(label, _run_strata(d, S)))
    return results


def _cmd_polyptych(args):
    def run():
        poly = enumerate_polyptych(args.n)
        if args.dot:
            with open(args.dot, "w") as fh:
                fh.write(emit_dot(poly))
        return "pass", "%d panels" % len(poly.panels)
    return [_timed("polyptych n=%d" % args.n, run)]


# ---------------------------------------------------------------------------
# selftest: the worked examples the library is calibrated against
# ---------------------------------------------------------------------------

def _st_mono_counterexample():
    # xyzt lies in I1 ∩ I2^2 but not in I1·I2 for I1=(yz), I2=(xy,yz,zt)
    ring = RingContext(["x", "y", "z", "t"])
    I1 = Ideal(ring, [parse_poly("y*z", ring)])
    I2 = Ideal(ring, [parse_poly(s, ring) for s in ("x*y", "y*z", "z*t")])
    m = parse_poly("x*y*z*t", ring)
    M1, M2 = _as_monomial(I1), _as_monomial(I2)
    Mm = next(iter(m.terms))
    in_cap = mono_member(Mm, mono_intersect(M1, mono_product(M2, M2)))
    in_prod = mono_member(Mm, mono_product(M1, M2))
    from .groebner import ideal_intersect
    gb_cap = ideal_intersect(I1, I2 * I2).contains(m)
    gb_prod = (I1 * I2).contains(m)
    ok = in_cap and not in_prod and gb_cap == in_cap and gb_prod == in_prod
    return ("pass" if ok else "fail"), "x*y*z*t"


def _st_regular_counterexample():
    # in Q[x,y,z]/(x^2 - z*y^3): x^2 lies in I1^2 ∩ I2^3 but not in I1^2*I2
    ring = RingContext(["x", "y", "z"])
    mod = Ideal(ring, [parse_poly("x^2 - z*y^3", ring)])
    I1 = Ideal(ring, [parse_poly("x", ring)])
    I2 = Ideal(ring, [parse_poly("x", ring), parse_poly("y", ring)])
    f = parse_poly("x^2", ring)
    from .groebner import ideal_intersect
    in_cap = ideal_intersect(I1.power(2) + mod, I2.power(3) + mod).contains(f)
    in_prod = (I1.power(2) * I2 + mod).contains(f)
    ok = in_cap and not in_prod
    return ("pass" if ok else "fail"), "x^2"


def _fat_point_datum():
    ring = RingContext(["X", "T1", "T2"])
    base = QuotientRingContext(ring, Ideal(ring, []))
    from .deformation import DeformationDatum
    M1 = Ideal(ring, [parse_poly("X^2", ring)])
    M2 = Ideal(ring, [parse_poly("X", ring)])
    d1 = parse_poly("T1", ring)
    d2 = parse_poly("T2", ring)
    return DeformationDatum(base, [M1, M2], [d1, d2])


def _st_fat_point_s2():
    d = _fat_point_datum()
    r = verify_panelization(d, [2])
    w = fraction_to_string(r.witness, d.divisors) if r.witness else None
    ok = r.verdict == "MorphismOnly" and w == "X^2/(T1*T2^2)"
    return ("pass" if ok else "fail"), w


def _st_fat_point_s1():
    d = _fat_point_datum()
    r = verify_panelization(d, [1])
    return ("pass" if r.verdict == "Isomorphism" else "fail"), None


def _st_kernel_witness():
    # kernel of Q[X/T2, T1, T2] -> (Q[X,T1,T2]/(X^2))[X/T2] contains (X/T2)^2
    ring = RingContext(["X", "T1", "T2"])
    base = QuotientRingContext(ring, Ideal(ring, []))
    mc = MultiCenter([Center(Ideal(ring, [parse_poly("X", ring)]),
                             parse_poly("T2", ring))])
    T = Ideal(ring, [parse_poly("X^2", ring)])
    exact, truncated, stabilized = kernel_modulo(base, mc, T, nu_bound=3)
    src = dilatation_presentation(base, mc, verify=False)
    y2 = src.ring.var(src.new_vars[0]) ** 2
    ok = stabilized and exact.contains(y2) and truncated.contains(y2)
    return ("pass" if ok else "fail"), "%s^2" % src.new_vars[0]


def _st_counts(n, expected):
    def run():
        count = len(enumerate_polyptych(n).panels)
        return ("pass" if count == expected else "fail"), "%d panels" % count
    return run


def _st_an_agreement():
    ring = RingContext(["v"])
    base = QuotientRingContext(ring, Ideal(ring, []))
    x = parse_poly("v", ring)
    I = Ideal(ring, [x])
    d = build_an_datum(base, [I, I])
    full = deformation_space(d)
    root = evaluate_panel(initial_panel(2), d)
    ok = algebra_compare(full, root).verdict == "Equal"
    ok = ok and all(verify_panelization(d, S).verdict == "Isomorphism"
                    for S in ([1], [2]))
    return ("pass" if ok else "fail"), None


def _cmd_selftest(args):
    checks = [
        ("selftest mono-counterexample", _st_mono_counterexample),
        ("selftest regular-counterexample", _st_regular_counterexample),
        ("selftest fat-point chain s=2", _st_fat_point_s2),
        ("selftest fat-point chain s=1", _st_fat_point_s1),
        ("selftest kernel-witness", _st_kernel_witness),
        ("selftest panel-count n=2", _st_counts(2, 3)),
        ("selftest panel-count n=3", _st_counts(3, 19)),
        ("selftest smooth-pair agreement", _st_an_agreement),
    ]
    return [_timed(name, fn) for name, fn in checks]


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _build_parser():
    p = argparse.ArgumentParser(prog="defspace",
                                description="exact dilatation workbench")
    p.add_argument("--json", metavar="FILE", help="write results as JSON")
    sub = p.add_subparsers(dest="command", required=True)

    gb = sub.add_parser("gb", help="reduced Groebner basis of a named ideal")
    gb.add_argument("file")
    gb.add_argument("--ideal", required=True)
    gb.add_argument("--order", choices=["grevlex", "lex"], default="grevlex")

    mono = sub.add_parser("mono", help="monomial arithmetic cross-checks")
    mono.add_argument("file")

    dil = sub.add_parser("dilatate", help="presentation of a datum's algebra")
    dil.add_argument("file")
    dil.add_argument("--datum")

    dfm = sub.add_parser("deform", help="panelization checks for a datum")
    dfm.add_argument("action", choices=["verify", "assume", "strata"])
    dfm.add_argument("file")
    dfm.add_argument("--datum")
    dfm.add_argument("--s", required=True, help="comma-separated indices")
    dfm.add_argument("--k", type=int)
    dfm.add_argument("--bound", type=int, default=3)

    chk = sub.add_parser("check", help="run the document's check statements")
    chk.add_argument("file")

    pol = sub.add_parser("polyptych", help="enumerate panel rewrites")
    pol.add_argument("--n", type=int, required=True)
    pol.add_argument("--dot", metavar="FILE")

    sub.add_parser("selftest", help="run the built-in calibration examples")
    return p


def run(argv) -> tuple[list, int]:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        raise SystemExit(2 if e.code else 0)

    try:
        if args.command == "polyptych":
            results = _cmd_polyptych(args)
        elif args.command == "selftest":
            results = _cmd_selftest(args)
        else:
            with open(args.file) as fh:
                doc = parse_document(fh.read())
            handler = {"gb": _cmd_gb, "mono": lambda d, a: _cmd_mono(d, a),
                       "dilatate": _cmd_dilatate, "deform": _cmd_deform,
                       "check": _cmd_check}[args.command]
            results = handler(doc, args)
    except (DslError, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return [], 2

    status = 0 if all(r.passed for r in results) else 1
    out = emit_json(results)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)
    return results, status


def main(argv=None) -> int:
    _, status = run(sys.argv[1:] if argv is None else argv)
    return status


if __name__ == "__main__":
    sys.exit(main())

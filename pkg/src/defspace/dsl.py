"""A small declaration language for rings, ideals, divisors and data.

A document declares one ring, optionally a modulus, then named ideals,
divisors and deformation data, and finally check requests.  Parsing is
recursive descent over a hand-rolled token stream; every diagnostic carries
a line and column.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .deformation import DeformationDatum
from .groebner import Ideal, QuotientRingContext
from .rings import Polynomial, PolyParseError, RingContext, parse_poly, poly_to_string


class DslError(ValueError):
    def __init__(self, message, line, col):
        super().__init__("%d:%d: %s" % (line, col, message))
        self.line = line
        self.col = col


@dataclass
class CheckStmt:
    kind: str        # verify | assume | strata | member
    args: dict


@dataclass
class WorkbenchDocument:
    ring: RingContext
    modulus: Ideal
    ideals: dict = field(default_factory=dict)
    divisors: dict = field(default_factory=dict)
    data: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    @property
    def base(self) -> QuotientRingContext:
        return QuotientRingContext(self.ring, self.modulus)


def _looks_smooth(doc: WorkbenchDocument, ideals, divisors) -> bool:
    """Coordinate-subspace chain with fresh coordinate divisors."""
    if doc.modulus.generators:
        return False
    used = set()
    for I in ideals:
        for g in I.generators:
            if len(g.terms) != 1 or sum(next(iter(g.terms))) != 1:
                return False
            used |= g.variables_used()
    div_idx = set()
    for d in divisors:
        if len(d.terms) != 1 or sum(next(iter(d.terms))) != 1:
            return False
        div_idx |= d.variables_used()
    return len(div_idx) == len(divisors) and not (div_idx & used)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    # -- low-level ----------------------------------------------------------

    def _linecol(self, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def _fail(self, message, pos=None):
        raise DslError(message, *self._linecol(pos))

    def _skip(self):
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c in " \t\r\n":
                self.pos += 1
            elif c == "#":
                nl = self.text.find("\n", self.pos)
                self.pos = len(self.text) if nl < 0 else nl
            else:
                break

    def _peek_word(self):
        self._skip()
        i = self.pos
        while i < len(self.text) and (self.text[i].isalnum() or self.text[i] == "_"):
            i += 1
        return self.text[self.pos:i]

    def _word(self, expected=None):
        self._skip()
        w = self._peek_word()
        if not w:
            self._fail("expected %s" % (expected or "an identifier"))
        if expected and w != expected:
            self._fail("expected '%s', found '%s'" % (expected, w))
        self.pos += len(w)
        return w

    def _punct(self, ch):
        self._skip()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            self._fail("expected '%s'" % ch)
        self.pos += 1

    def _try_punct(self, ch):
        self._skip()
        if self.pos < len(self.text) and self.text[self.pos] == ch:
            self.pos += 1
            return True
        return False

    def _ident_list(self):
        names = [self._word()]
        while self._try_punct(","):
            names.append(self._word())
        return names

    def _poly_until(self, ring, stops=";,)"):
        """Scan a polynomial up to an unnested stop character."""
        self._skip()
        start = self.pos
        depth = 0
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c == "(":
                depth += 1
            elif c == ")":
                if depth == 0 and ")" in stops:
                    break
                depth -= 1
            elif depth == 0 and (c in stops or c == "\n"):
                break
            self.pos += 1
        chunk = self.text[start:self.pos].strip()
        if not chunk:
            self._fail("expected a polynomial", start)
        try:
            return parse_poly(chunk, ring)
        except PolyParseError as e:
            self._fail("bad polynomial: %s" % e.args[0], start + e.pos)

    def _int_list(self):
        out = [int(self._word())]
        while self._try_punct(","):
            out.append(int(self._word()))
        return out

    # -- grammar ------------------------------------------------------------

    def parse(self) -> WorkbenchDocument:
        self._word("ring")
        self._word("Q")
        self._punct("[")
        names = self._ident_list()
        self._punct("]")
        self._try_punct(";")
        ring = RingContext(names)
        doc = WorkbenchDocument(ring, Ideal(ring, []))
        while True:
            self._skip()
            if self.pos >= len(self.text):
                break
            kw = self._word()
            handler = getattr(self, "_stmt_" + kw, None)
            if handler is None:
                self._fail("unknown statement '%s'" % kw, self.pos - len(kw))
            handler(doc)
            self._try_punct(";")
        return doc

    def _stmt_modulus(self, doc):
        doc.modulus = doc.modulus + Ideal(doc.ring, [self._poly_until(doc.ring)])

    def _stmt_ideal(self, doc):
        name = self._word()
        self._punct("=")
        self._punct("(")
        gens = [self._poly_until(doc.ring)]
        while self._try_punct(","):
            gens.append(self._poly_until(doc.ring))
        self._punct(")")
        doc.ideals[name] = Ideal(doc.ring, gens)

    def _stmt_divisor(self, doc):
        name = self._word()
        self._punct("=")
        doc.divisors[name] = self._poly_until(doc.ring)

    def _require(self, doc, table, name, what):
        if name not in getattr(doc, table):
            self._fail("%s '%s' used before declaration" % (what, name),
                       self.pos - len(name))
        return getattr(doc, table)[name]

    def _stmt_datum(self, doc):
        name = self._word()
        self._punct("=")
        self._word("chain")
        self._punct("(")
        chain_names = self._ident_list()
        self._punct(")")
        self._word("divisors")
        self._punct("(")
        div_names = self._ident_list()
        self._punct(")")
        ideals = [self._require(doc, "ideals", nm, "ideal") for nm in chain_names]
        divisors = [self._require(doc, "divisors", nm, "divisor") for nm in div_names]
        if len(ideals) != len(divisors):
            self._fail("datum needs one divisor per chain ideal")
        doc.data[name] = DeformationDatum(doc.base, ideals, divisors,
                                          smooth=_looks_smooth(doc, ideals, divisors))
        doc.data[name].dsl_names = (chain_names, div_names)

    def _stmt_check(self, doc):
        kind = self._word()
        if kind in ("verify", "assume", "strata"):
            datum = self._word()
            self._require(doc, "data", datum, "datum")
            args = {"datum": datum}
            while True:
                key = self._peek_word()
                if key not in ("s", "k", "bound"):
                    break
                self._word()
                self._punct("=")
                args[key] = self._int_list() if key == "s" else int(self._word())
            if "s" not in args:
                self._fail("check %s needs s=<indices>" % kind)
            if kind == "assume" and "k" not in args:
                self._fail("check assume needs k=<index>")
            doc.checks.append(CheckStmt(kind, args))
        elif kind == "member":
            self._punct("(")
            poly = self._poly_until(doc.ring)
            self._punct(")")
            self._word("in")
            ideal = self._word()
            self._require(doc, "ideals", ideal, "ideal")
            doc.checks.append(CheckStmt("member", {"poly": poly, "ideal": ideal}))
        else:
            self._fail("unknown check kind '%s'" % kind, self.pos - len(kind))


def parse_document(text: str) -> WorkbenchDocument:
    return _Parser(text).parse()


def render_document(doc: WorkbenchDocument) -> str:
    """Deterministic rendering; reparsing gives a structurally equal document."""
    lines = ["ring Q[%s];" % ",".join(doc.ring.variables)]
    for g in doc.modulus.generators:
        lines.append("modulus %s;" % poly_to_string(g))
    for name, I in doc.ideals.items():
        lines.append("ideal %s = (%s);"
                     % (name, ", ".join(poly_to_string(g) for g in I.generators)))
    for name, p in doc.divisors.items():
        lines.append("divisor %s = %s;" % (name, poly_to_string(p)))
    for name, d in doc.data.items():
        chain_names, div_names = d.dsl_names
        lines.append("datum %s = chain(%s) divisors(%s);"
                     % (name, ",".join(chain_names), ",".join(div_names)))
    for c in doc.checks:
        if c.kind == "member":
            lines.append("check member (%s) in %s;"
                         % (poly_to_string(c.args["poly"]), c.args["ideal"]))
        else:
            parts = ["check %s %s" % (c.kind, c.args["datum"]),
                     "s=%s" % ",".join(str(i) for i in c.args["s"])]
            if "k" in c.args:
                parts.append("k=%d" % c.args["k"])
            if "bound" in c.args:
                parts.append("bound=%d" % c.args["bound"])
            lines.append(" ".join(parts) + ";")
    return "\n".join(lines) + "\n"

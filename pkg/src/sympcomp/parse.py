"""Recursive-descent parser for ring descriptors, elements, rows, matrices and words.

Ring grammar::

    ring  := base suffix*
    base  := "ZZ" | "QQ" | "ZZ/" INT | "excision(" ring ",(" poly ("," poly)* "))"
    suffix:= "[" var ("," var)* "]"          var := ident (":" INT)?
           | "/(" poly ("," poly)* ")"

Elements are expressions over ``+ - * / ^`` and parentheses; ``/`` needs a
unit divisor.  Excision-ring elements are pairs ``(a, i)``.
"""

import re

from .errors import ParseError, NotAUnit

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def tokenize(text):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("ident", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()[],:":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            toks.append(("sym", ch, m.start(3)))
        pos = m.end()
    toks.append(("end", None, n))
    return toks


class Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    # token helpers
    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, value, k=0):
        t = self.peek(k)
        return t[0] == "sym" and t[1] == value

    def next(self):
        t = self.toks[self.i]
        if t[0] != "end":
            self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expect(self, value):
        t = self.peek()
        if t[0] == "sym" and t[1] == value:
            return self.next()
        what = "end of input" if t[0] == "end" else repr(t[1])
        self.fail(f"expected {value!r}, found {what}")

    def expect_kind(self, kind):
        t = self.peek()
        if t[0] != kind:
            what = "end of input" if t[0] == "end" else repr(t[1])
            self.fail(f"expected {kind}, found {what}")
        return self.next()

    def done(self):
        if self.peek()[0] != "end":
            self.fail(f"unexpected trailing input {self.peek()[1]!r}")

    # rings
    def ring(self):
        from . import rings as rg

        t = self.peek()
        if t[0] != "ident":
            self.fail("expected a ring name")
        name = t[1]
        self.next()
        if name == "ZZ":
            if self.at("/") and self.peek(1)[0] == "int":
                self.next()
                mt = self.next()
                try:
                    R = rg.ModularIntegers(mt[1])
                except Exception as exc:
                    raise ParseError(str(exc), mt[2], self.text) from None
            else:
                R = rg.ZZ
        elif name == "QQ":
            R = rg.QQ
        elif name == "excision":
            R = self.excision()
        else:
            self.fail(f"unknown ring {name!r}", t)
        while True:
            if self.at("["):
                R = self.adjoin(R)
            elif self.at("/") and self.at("(", 1):
                start = self.peek()
                self.next()
                self.next()
                rels = self.element_list(R, ")")
                try:
                    R = rg.quotient_ring(R, rels)
                except Exception as exc:
                    raise ParseError(str(exc), start[2], self.text) from None
            else:
                return R

    def adjoin(self, R):
        from . import rings as rg

        start = self.expect("[")
        names, weights = [], []
        while True:
            v = self.expect_kind("ident")
            names.append(v[1])
            w = 1
            if self.at(":"):
                self.next()
                w = self.expect_kind("int")[1]
            weights.append(w)
            if self.at(","):
                self.next()
                continue
            self.expect("]")
            break
        try:
            return rg.polynomial_ring(R, names, weights)
        except Exception as exc:
            raise ParseError(str(exc), start[2], self.text) from None

    def excision(self):
        from .graded import excision_ring

        start = self.expect("(")
        base = self.ring()
        self.expect(",")
        self.expect("(")
        gens = self.element_list(base, ")")
        self.expect(")")
        try:
            return excision_ring(base, gens)
        except Exception as exc:
            raise ParseError(str(exc), start[2], self.text) from None

    def element_list(self, R, close):
        out = [self.expr(R)]
        while self.at(","):
            self.next()
            out.append(self.expr(R))
        self.expect(close)
        return out

    # elements
    def expr(self, R):
        val = self.term(R)
        while self.at("+") or self.at("-"):
            op = self.next()[1]
            rhs = self.term(R)
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self, R):
        val = self.unary(R)
        while self.at("*") or self.at("/"):
            op = self.next()
            rhs = self.unary(R)
            if op[1] == "*":
                val = val * rhs
            else:
                inv = rhs.inverse()
                if inv is None:
                    raise ParseError(f"division by non-unit {rhs}", op[2], self.text)
                val = val * inv
        return val

    def unary(self, R):
        if self.at("-"):
            self.next()
            return -self.unary(R)
        if self.at("+"):
            self.next()
            return self.unary(R)
        return self.power(R)

    def power(self, R):
        base = self.atom(R)
        if self.at("^"):
            op = self.next()
            neg = False
            if self.at("-"):
                self.next()
                neg = True
            k = self.expect_kind("int")[1]
            try:
                return base ** (-k if neg else k)
            except NotAUnit as exc:
                raise ParseError(str(exc), op[2], self.text) from None
        return base

    def atom(self, R):
        t = self.peek()
        if t[0] == "int":
            self.next()
            return R(t[1])
        if t[0] == "ident":
            self.next()
            try:
                return R.var(t[1])
            except (KeyError, AttributeError):
                self.fail(f"unknown variable {t[1]!r} in {R}", t)
        if self.at("("):
            self.next()
            first = self.expr_in(R)
            if self.at(",") and hasattr(R, "pair"):
                self.next()
                second = self.expr_in(R.base)
                self.expect(")")
                try:
                    return R.pair(first, second)
                except Exception as exc:
                    raise ParseError(str(exc), t[2], self.text) from None
            self.expect(")")
            return first if not hasattr(R, "pair") else R(first)
        what = "end of input" if t[0] == "end" else repr(t[1])
        self.fail(f"expected an element, found {what}")

    def expr_in(self, R):
        # inside parentheses of an excision ring the first slot lives in the base
        if hasattr(R, "pair"):
            return self.expr(R.base)
        return self.expr(R)

    # containers
    def row(self, R):
        self.expect("[")
        if self.at("]"):
            self.next()
            return []
        return self.element_list(R, "]")

    def matrix(self, R):
        self.expect("[")
        rows = [self.row(R)]
        while self.at(","):
            self.next()
            rows.append(self.row(R))
        self.expect("]")
        return rows


def parse_ring(text):
    p = Parser(text)
    R = p.ring()
    p.done()
    return R


def parse_element(text, R):
    p = Parser(text)
    e = p.expr(R)
    p.done()
    return R(e) if e.ring != R else e


def parse_row(text, R):
    p = Parser(text)
    r = p.row(R)
    p.done()
    return [R(x) for x in r]


def parse_matrix(text, R):
    from .matrix import RingMatrix

    p = Parser(text)
    rows = p.matrix(R)
    p.done()
    if len({len(r) for r in rows}) != 1:
        raise ParseError("matrix rows have different lengths", 0, text)
    return RingMatrix(R, [[R(x) for x in r] for r in rows])


def parse_word(text, R, size):
    """Parse ``E(i,j,λ) SE(i,j,z) ...`` (letters separated by spaces, ``*`` or ``,``)."""
    from .words import GroupWord, Letter

    p = Parser(text)
    letters = []
    while p.peek()[0] != "end":
        t = p.expect_kind("ident")
        if t[1] not in ("E", "SE"):
            p.fail(f"unknown generator {t[1]!r}", t)
        p.expect("(")
        i = p.expect_kind("int")[1]
        p.expect(",")
        j = p.expect_kind("int")[1]
        p.expect(",")
        s = p.expr(R)
        p.expect(")")
        letters.append(Letter(t[1], i, j, s))
        if p.at("*") or p.at(","):
            p.next()
    try:
        return GroupWord(size, letters)
    except Exception as exc:
        raise ParseError(str(exc), 0, text) from None

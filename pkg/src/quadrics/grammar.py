"""Text form of manifold expressions.

    expr   := term { "+" term }
    term   := factor { "*" factor }
    factor := "S(" int ")" | "G(" expr ")" | "(" expr ")" | int "(" expr ")"

``n(e)`` is ``n`` copies of ``e`` in connected sum.  Product binds tighter
than connected sum.
"""
from __future__ import annotations

from .calculus import ConnSum, Gyr, ManifoldExpr, Prod, Sphere, repeat
from .errors import ParseError


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, tok: str):
        self._skip()
        if not self.text.startswith(tok, self.pos):
            raise ParseError(self.pos, repr(tok), self.text)
        self.pos += len(tok)

    def integer(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError(start, "integer", self.text)
        return int(self.text[start:self.pos])

    def expr(self) -> ManifoldExpr:
        terms = [self.term()]
        while self.peek() == "+":
            self.pos += 1
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else ConnSum(*terms)

    def term(self) -> ManifoldExpr:
        factors = [self.factor()]
        while self.peek() == "*":
            self.pos += 1
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Prod(*factors)

    def factor(self) -> ManifoldExpr:
        c = self.peek()
        if c == "S":
            self.pos += 1
            self.expect("(")
            at = self.pos
            n = self.integer()
            self.expect(")")
            if n < 1:
                raise ParseError(at, "sphere dimension >= 1", self.text)
            return Sphere(n)
        if c == "G":
            self.pos += 1
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Gyr(inner)
        if c == "(":
            self.pos += 1
            inner = self.expr()
            self.expect(")")
            return inner
        if c.isdigit():
            at = self.pos
            count = self.integer()
            if count < 1:
                raise ParseError(at, "multiplicity >= 1", self.text)
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return repeat(inner, count)
        raise ParseError(self.pos, "'S(', 'G(', '(' or a multiplicity", self.text)


def parse(text: str) -> ManifoldExpr:
    p = _Parser(text)
    e = p.expr()
    p._skip()
    if p.pos != len(text):
        raise ParseError(p.pos, "end of input", text)
    return e


def _is_multiple(e) -> bool:
    return isinstance(e, ConnSum) and all(c == e.children[0] for c in e.children)


def to_string(e: ManifoldExpr) -> str:
    """Inverse of :func:`parse` up to the choice of brackets."""
    if isinstance(e, ConnSum):
        return " + ".join(_summand(c) for c in e.children)
    return _summand(e)


def _summand(e) -> str:
    if isinstance(e, ConnSum):
        if _is_multiple(e):
            return f"{len(e.children)}({to_string(e.children[0])})"
        return f"({to_string(e)})"
    if isinstance(e, Prod):
        return "*".join(_factor(c) for c in e.children)
    return _factor(e)


def _factor(e) -> str:
    if isinstance(e, Sphere):
        return f"S({e.n})"
    if isinstance(e, Gyr):
        return f"G({to_string(e.child)})"
    if isinstance(e, ConnSum) and _is_multiple(e):
        return _summand(e)
    return f"({to_string(e)})"

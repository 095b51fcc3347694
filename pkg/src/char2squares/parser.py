"""Recursive-descent parser for module expressions.

Grammar (whitespace insensitive):

    expr   := term ('+' term)*
    term   := [int '*'] factor
    factor := atom | 'T(' expr ',' expr ')' | 'E2(' expr ')' | 'S2(' expr ')'
            | '(' expr ')'
    atom   := ('V' | 'W') int

V atoms are unipotent blocks, W atoms nilpotent blocks.
"""

from __future__ import annotations

from .core import Atom, Ext2, ModuleExpr, Sum, Sym2, Tensor

# repeated non-atom factors are expanded into explicit sums; cap the blowup
MAX_REPEAT = 10_000


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ExprSyntaxError:
        return ExprSyntaxError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])

    def expr(self) -> ModuleExpr:
        terms = [self.term()]
        while self.peek() == "+":
            self.pos += 1
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> ModuleExpr:
        if self.peek().isdigit():
            count = self.integer()
            self.expect("*")
            factor = self.factor()
            if count < 1:
                raise self.error("multiplicity must be positive")
            if isinstance(factor, Atom):
                return Atom(factor.kind, factor.dim, factor.multiplicity * count)
            if count > MAX_REPEAT:
                raise self.error(f"multiplicity above limit {MAX_REPEAT}")
            return Sum((factor,) * count)
        return self.factor()

    def factor(self) -> ModuleExpr:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            self.expect(")")
            return inner
        if ch == "T":
            self.pos += 1
            self.expect("(")
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect(")")
            return Tensor(left, right)
        if ch in ("E", "S"):
            start = self.pos
            self.pos += 1
            if self.peek() != "2":
                self.pos = start
                raise self.error("expected 'E2' or 'S2'")
            self.pos += 1
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Ext2(inner) if ch == "E" else Sym2(inner)
        if ch in ("V", "W"):
            self.pos += 1
            dim = self.integer()
            if dim < 1:
                raise self.error("atom dimension must be positive")
            kind = "unipotent" if ch == "V" else "nilpotent"
            return Atom(kind, dim)
        raise self.error("expected an atom, functor or parenthesized expression")


def parse_expr(text: str) -> ModuleExpr:
    """Parse a module expression; raises ExprSyntaxError with a position."""
    if not text.strip():
        raise ExprSyntaxError("empty expression", 0)
    parser = _Parser(text)
    result = parser.expr()
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.error("unexpected trailing input")
    return result

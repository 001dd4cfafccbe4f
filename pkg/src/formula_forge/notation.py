"""Infix, prefix and postfix text for expressions.

Tokens are ``1``, ``x``, ``+``, ``*`` (``·`` is accepted on input), ``^``
and, in infix only, parentheses.  Whitespace is ignored.  Infix grammar::

    expr   := term ('+' term)*
    term   := factor ('*' factor)*
    factor := atom ('^' factor)?
    atom   := '1' | 'x' | '(' expr ')'

Prefix and postfix streams are binary; n-ary sums and products are written
left-nested, e.g. ``SUM(a, b, c)`` becomes ``+ + a b c`` in prefix.
"""

from __future__ import annotations

import enum

from .errors import ArityError, ParseError
from .expr import ONE, X, Expr, Tag, mk_power, mk_product, mk_sum


class Notation(enum.Enum):
    INFIX = "infix"
    PREFIX = "prefix"
    POSTFIX = "postfix"

    def __str__(self):
        return self.value


_OPS = {"+": Tag.SUM, "*": Tag.PRODUCT, "^": Tag.POWER}
_SYMBOL = {Tag.SUM: "+", Tag.PRODUCT: "*", Tag.POWER: "^"}


def _as_notation(n) -> Notation:
    return Notation(n.lower()) if isinstance(n, str) else n


def tokenize(s: str):
    """List of ``(token, position)`` pairs."""
    out = []
    for i, ch in enumerate(s):
        if ch.isspace():
            continue
        if ch == "·":
            ch = "*"
        if ch not in "1x+*^()":
            raise ParseError(f"unexpected character {ch!r}", i)
        out.append((ch, i))
    return out


def _combine(tag: Tag, a: Expr, b: Expr) -> Expr:
    if tag is Tag.SUM:
        return mk_sum([a, b])
    if tag is Tag.PRODUCT:
        return mk_product([a, b])
    return mk_power(a, b)


class _InfixParser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.end = len(text)

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def pos(self):
        return self.toks[self.i][1] if self.i < len(self.toks) else self.end

    def take(self, tok):
        if self.peek() != tok:
            found = self.peek() or "end of input"
            raise ParseError(f"expected {tok!r}, found {found!r}", self.pos())
        self.i += 1

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek()!r}", self.pos())
        return e

    def expr(self) -> Expr:
        terms = [self.term()]
        while self.peek() == "+":
            self.i += 1
            terms.append(self.term())
        return mk_sum(terms)

    def term(self) -> Expr:
        factors = [self.factor()]
        while self.peek() == "*":
            self.i += 1
            factors.append(self.factor())
        return mk_product(factors)

    def factor(self) -> Expr:
        base = self.atom()
        if self.peek() == "^":
            self.i += 1
            return mk_power(base, self.factor())
        return base

    def atom(self) -> Expr:
        tok = self.peek()
        if tok == "1":
            self.i += 1
            return ONE
        if tok == "x":
            self.i += 1
            return X
        if tok == "(":
            self.i += 1
            e = self.expr()
            self.take(")")
            return e
        raise ParseError(f"expected an operand, found {tok or 'end of input'!r}", self.pos())


def _parse_prefix(text: str) -> Expr:
    toks = tokenize(text)
    for tok, p in toks:
        if tok in "()":
            raise ParseError("parentheses are not allowed in prefix notation", p)
    if not toks:
        raise ArityError("empty input", 0)
    # iterative to cope with deep streams: stack of [tag, first_operand]
    stack = []
    result = None
    for tok, p in toks:
        if result is not None:
            raise ArityError(f"extra token {tok!r} after a complete expression", p)
        if tok in _OPS:
            stack.append([_OPS[tok], None])
            continue
        node = ONE if tok == "1" else X
        while stack:
            frame = stack[-1]
            if frame[1] is None:
                frame[1] = node
                break
            stack.pop()
            node = _combine(frame[0], frame[1], node)
        else:
            result = node
    if result is None:
        raise ArityError("operator is missing operands", len(text))
    return result


def _parse_postfix(text: str) -> Expr:
    stack = []
    toks = tokenize(text)
    for tok, p in toks:
        if tok in "()":
            raise ParseError("parentheses are not allowed in postfix notation", p)
        if tok in _OPS:
            if len(stack) < 2:
                raise ArityError(f"operator {tok!r} is missing operands", p)
            b = stack.pop()
            a = stack.pop()
            stack.append(_combine(_OPS[tok], a, b))
        else:
            stack.append(ONE if tok == "1" else X)
    if len(stack) != 1:
        raise ArityError(f"{len(stack)} operands left on the stack", len(text))
    return stack[0]


def parse(text: str, notation: Notation | str = Notation.INFIX) -> Expr:
    notation = _as_notation(notation)
    if notation is Notation.INFIX:
        return _InfixParser(text).parse()
    if notation is Notation.PREFIX:
        return _parse_prefix(text)
    return _parse_postfix(text)


def _infix(e: Expr, expand_x: bool) -> str:
    if e is ONE:
        return "1"
    if e is X:
        return "(1+1)" if expand_x else "x"
    if e.tag is Tag.SUM:
        return "(" + "+".join(_infix(c, expand_x) for c in e.args) + ")"
    if e.tag is Tag.PRODUCT:
        # sums are already bracketed and products never nest
        return "*".join(_infix(c, expand_x) for c in e.args)
    parts = []
    for c in e.args:
        s = _infix(c, expand_x)
        if c.tag in (Tag.PRODUCT, Tag.POWER):
            s = f"({s})"
        parts.append(s)
    return "^".join(parts)


def _polish(e: Expr, expand_x: bool, out: list, postfix: bool):
    if e is ONE:
        out.append("1")
        return
    if e is X and not expand_x:
        out.append("x")
        return
    sym = _SYMBOL[e.tag]
    args = e.args
    if postfix:
        _polish(args[0], expand_x, out, postfix)
        for c in args[1:]:
            _polish(c, expand_x, out, postfix)
            out.append(sym)
    else:
        out.extend([sym] * (len(args) - 1))
        _polish(args[0], expand_x, out, postfix)
        for c in args[1:]:
            _polish(c, expand_x, out, postfix)


def render(e: Expr, notation: Notation | str = Notation.INFIX, expand_x: bool = False) -> str:
    """Deterministic text for ``e``.

    In infix every sum other than ``x`` is bracketed, and products or
    powers used as the base or exponent of ``^`` are bracketed too, so the
    output reads like ``(x^x+1)`` or ``(x+1)*x``.  With ``expand_x`` each
    ``x`` is written out as ``(1+1)`` (``+ 1 1`` / ``1 1 +`` in polish forms).
    """
    notation = _as_notation(notation)
    if notation is Notation.INFIX:
        return _infix(e, expand_x)
    out = []
    _polish(e, expand_x, out, notation is Notation.POSTFIX)
    return " ".join(out)

"""Tiny recursive-descent evaluator for arithmetic expressions.

Used both for field elements (``-w - 1``, ``3/2``) and for polynomials
(``x^2*y - 3/2*z^3``).  Values are combined with Python operators, so the
caller decides what a number or a name evaluates to.
"""

from __future__ import annotations

import re

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    pass


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r} "
                             f"at position {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


def evaluate_expression(text: str, names: dict, number):
    """Evaluate ``text``; ``names`` maps identifiers to values and
    ``number(int)`` builds constants."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def expr():
        kind, val = peek()
        sign = 1
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        acc = term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val = peek()
            if kind == "op" and val in "+-":
                take()
                rhs = term()
                acc = acc + rhs if val == "+" else acc - rhs
            else:
                return acc

    def term():
        acc = power()
        while True:
            kind, val = peek()
            if kind == "op" and val in "*/":
                take()
                rhs = power()
                acc = acc * rhs if val == "*" else acc / rhs
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                # implicit multiplication, e.g. "2x" or "x y"
                acc = acc * power()
            else:
                return acc

    def power():
        base = atom()
        kind, val = peek()
        if kind == "op" and val == "^":
            take()
            kind, exp = take()
            neg = False
            if kind == "op" and exp == "-":
                neg = True
                kind, exp = take()
            if kind != "num":
                raise ParseError(f"exponent must be an integer in {text!r}")
            return base ** (-exp if neg else exp)
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return number(val)
        if kind == "name":
            if val not in names:
                raise ParseError(f"unknown symbol {val!r} in {text!r}")
            return names[val]
        if kind == "op" and val == "(":
            inner = expr()
            if take() != ("op", ")"):
                raise ParseError(f"missing ')' in {text!r}")
            return inner
        if kind == "op" and val == "-":
            return -atom()
        raise ParseError(f"unexpected token {val!r} in {text!r}")

    result = expr()
    if pos != len(tokens):
        raise ParseError(f"trailing input in {text!r}")
    return result

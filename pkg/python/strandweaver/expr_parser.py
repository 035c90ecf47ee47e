"""Parse and print the textual diagram grammar.

::

    expr     := term (";" term)*
    term     := factor ("*" factor)*
    factor   := "del" | "e" | "s" | "c(" fraction ")" | "id(" nat ")"
              | "z(" nat ")" | "zinv(" nat ")" | "p(" nat "," nat ")"
              | "iota(" nat "," nat ")" | "(" expr ")"
    fraction := nat | nat "/" nat

``a ; b`` means "a, then b" and builds ``Compose(b, a)``.  Both operators
fold to the left.  Whitespace is free; in files, everything after ``#`` on
a line is a comment.
"""

from __future__ import annotations

import os
import re
from fractions import Fraction
from typing import Callable, Dict, List, NamedTuple

from .constructions import iota, p, z, z_inv
from .diagram import DEL, E, S, Compose, Diagram, Gen, Id, Tensor, c
from .errors import ParseError, StrandweaverError
from .matrix import format_scalar

_TOKEN = re.compile(r"(?P<name>[a-z]+)|(?P<nat>\d+)|(?P<sym>[;*(),/])")


class _Token(NamedTuple):
    kind: str
    text: str
    position: int


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append(_Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.index = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def _advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def _expect(self, text: str) -> _Token:
        tok = self.current
        if tok.text != text:
            found = tok.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", tok.position)
        return self._advance()

    def _nat(self) -> int:
        tok = self.current
        if tok.kind != "nat":
            raise ParseError(f"expected a number, found {tok.text or 'end of input'!r}", tok.position)
        self._advance()
        return int(tok.text)

    def _fraction(self) -> Fraction:
        num = self._nat()
        if self.current.text == "/":
            self._advance()
            tok = self.current
            den = self._nat()
            if den == 0:
                raise ParseError("zero denominator", tok.position)
            return Fraction(num, den)
        return Fraction(num)

    def _build(self, start: int, builder: Callable[[], Diagram]) -> Diagram:
        try:
            return builder()
        except StrandweaverError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), start) from exc

    def expr(self) -> Diagram:
        result = self.term()
        while self.current.text == ";":
            self._advance()
            after = self.term()
            result = Compose(after, result)
        return result

    def term(self) -> Diagram:
        result = self.factor()
        while self.current.text == "*":
            self._advance()
            result = Tensor(result, self.factor())
        return result

    def factor(self) -> Diagram:
        tok = self.current
        if tok.text == "(":
            self._advance()
            inner = self.expr()
            self._expect(")")
            return inner
        if tok.kind != "name":
            raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.position)
        self._advance()
        simple = _ATOMS.get(tok.text)
        if simple is not None:
            return simple
        if tok.text not in _CALLS:
            raise ParseError(f"unknown generator {tok.text!r}", tok.position)
        self._expect("(")
        if tok.text == "c":
            lam = self._fraction()
            self._expect(")")
            return self._build(tok.position, lambda: c(lam))
        args = [self._nat()]
        while self.current.text == ",":
            self._advance()
            args.append(self._nat())
        self._expect(")")
        build, arity = _CALLS[tok.text]
        if len(args) != arity:
            raise ParseError(f"{tok.text} takes {arity} argument(s), got {len(args)}", tok.position)
        return self._build(tok.position, lambda: build(*args))


_ATOMS: Dict[str, Diagram] = {"del": DEL, "e": E, "s": S}
_CALLS: Dict[str, tuple] = {
    "c": (c, 1),
    "id": (Id, 1),
    "z": (z, 1),
    "zinv": (z_inv, 1),
    "p": (p, 2),
    "iota": (iota, 2),
}


def parse_expr(text: str) -> Diagram:
    """Parse a diagram expression.

    Parameters
    ----------
    text:
        Expression in the diagram grammar.

    Returns
    -------
    Diagram
        The term tree; ``z``, ``p`` and friends are expanded.

    Raises
    ------
    ParseError
        With the 0-based character position of the problem; out-of-range
        parameters such as ``c(3/2)`` are reported the same way.
    CompositionError
        When the parts of a ``;`` do not fit together.
    """
    parser = _Parser(text)
    result = parser.expr()
    tok = parser.current
    if tok.kind != "end":
        raise ParseError(f"unexpected {tok.text!r}", tok.position)
    return result


def _strip_comments(text: str) -> str:
    # Keep line lengths so positions still point into the original text.
    return "\n".join(
        line[: line.index("#")] + " " * (len(line) - line.index("#")) if "#" in line else line
        for line in text.split("\n")
    )


def parse_expr_file(path: str, encoding: str = "utf-8") -> Diagram:
    """Parse a file holding one expression, possibly over several lines."""
    with open(os.fspath(path), "r", encoding=encoding) as f:
        return parse_expr(_strip_comments(f.read()))


def format_diagram(d: Diagram) -> str:
    """Print *d* back in the grammar; ``parse_expr`` of the result rebuilds *d*.

    >>> format_diagram(parse_expr("(s * id(1)) ; e*id(1)"))
    '(s * id(1)) ; (e * id(1))'
    """
    parts: List[str] = []
    stack: List[object] = [d]
    while stack:
        node = stack.pop()
        if isinstance(node, str):
            parts.append(node)
        elif isinstance(node, Id):
            parts.append(f"id({node.n})")
        elif isinstance(node, Gen):
            gen = node.gen
            parts.append(f"c({format_scalar(gen.param)})" if gen.param is not None else gen.kind.value)
        elif isinstance(node, Compose):
            stack.extend(reversed(
                _wrap(node.before, isinstance(node.before, Tensor))
                + [" ; "]
                + _wrap(node.after, isinstance(node.after, (Tensor, Compose)))
            ))
        elif isinstance(node, Tensor):
            stack.extend(reversed(
                _wrap(node.left, isinstance(node.left, Compose))
                + [" * "]
                + _wrap(node.right, isinstance(node.right, (Tensor, Compose)))
            ))
        else:
            raise TypeError(f"not a diagram: {node!r}")
    return "".join(parts)


def _wrap(node: Diagram, parens: bool) -> List[object]:
    return ["(", node, ")"] if parens else [node]


__all__ = ["parse_expr", "parse_expr_file", "format_diagram"]

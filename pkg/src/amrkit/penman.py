"""PENMAN notation: parsing, canonical serialization and token linearization.

Parsing and delinearization share one recursive-descent core over a token
stream, so a graph's linearized tokens are exactly the tokens of its
canonical PENMAN text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .graph import (
    NUMBER_RE,
    VARIABLE_LIKE_RE,
    AmrError,
    AmrGraph,
    check,
    normalize_role,
)


class PenmanError(AmrError):
    """Malformed PENMAN text or token sequence.

    ``line``/``column`` are 1-based for text input; ``position`` is the
    0-based token index for token-sequence input.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 position: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.position = position
        if line is not None:
            where = f"line {line}, column {column}"
        elif position is not None:
            where = f"token {position}"
        else:
            where = "end of input"
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class Token:
    kind: str  # LPAREN RPAREN SLASH ROLE STRING SYMBOL
    text: str
    line: int | None = None
    column: int | None = None
    index: int | None = None


_TOKEN_RE = re.compile(
    r"""
    (?P<WS>\s+)
  | (?P<LPAREN>\()
  | (?P<RPAREN>\))
  | (?P<SLASH>/)
  | (?P<STRING>"(?:[^"\\]|\\.)*")
  | (?P<ROLE>:[^\s()"/]*)
  | (?P<SYMBOL>[^\s()"/:][^\s()"/]*)
    """,
    re.VERBOSE,
)


def strip_comments(text: str) -> str:
    """Blank out '#' comment lines, keeping line numbers intact."""
    return "\n".join("" if ln.lstrip().startswith("#") else ln for ln in text.split("\n"))


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise PenmanError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "WS":
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        for i, ch in enumerate(m.group()):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    return tokens


def _classify(text: str, index: int) -> Token:
    if text == "(":
        return Token("LPAREN", text, index=index)
    if text == ")":
        return Token("RPAREN", text, index=index)
    if text == "/":
        return Token("SLASH", text, index=index)
    m = _TOKEN_RE.fullmatch(text)
    if m is None or m.lastgroup in ("WS", None):
        raise PenmanError(f"malformed token {text!r}", position=index)
    return Token(m.lastgroup, text, index=index)


class _Parser:
    def __init__(self, tokens: Sequence[Token]):
        self.tokens = tokens
        self.i = 0
        self.nodes: dict[str, str] = {}
        self.edges: list[tuple[str, str, str]] = []
        self.attributes: list[tuple[str, str, str]] = []
        self.bound = self._prescan()

    def _error(self, msg: str, tok: Token | None) -> PenmanError:
        if tok is None:
            return PenmanError(msg)
        return PenmanError(msg, tok.line, tok.column, tok.index)

    def _prescan(self) -> set[str]:
        bound: dict[str, Token] = {}
        toks = self.tokens
        for k in range(len(toks) - 2):
            if toks[k].kind == "LPAREN" and toks[k + 1].kind == "SYMBOL" and toks[k + 2].kind == "SLASH":
                var = toks[k + 1]
                if var.text in bound:
                    raise self._error(f"duplicate definition of variable {var.text!r}", var)
                bound[var.text] = var
        return set(bound)

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            raise self._error(f"unexpected end of input, expected {what}", _after(last))
        if tok.kind != kind:
            raise self._error(f"expected {what}, found {tok.text!r}", tok)
        self.i += 1
        return tok

    def parse(self) -> AmrGraph:
        if not self.tokens:
            raise PenmanError("empty input")
        root = self.node()
        extra = self.peek()
        if extra is not None:
            if extra.kind == "RPAREN":
                raise self._error("unbalanced parentheses: unexpected ')'", extra)
            raise self._error(f"unexpected content after graph: {extra.text!r}", extra)
        return AmrGraph(root, self.nodes, tuple(self.edges), tuple(self.attributes))

    def node(self) -> str:
        self.expect("LPAREN", "'('")
        var = self.expect("SYMBOL", "variable")
        if NUMBER_RE.match(var.text):
            raise self._error(f"numeric variable id {var.text!r}", var)
        self.expect("SLASH", "'/'")
        tok = self.peek()
        if tok is None or tok.kind not in ("SYMBOL", "STRING"):
            raise self._error("expected concept", tok if tok is not None else _after(self.tokens[-1]))
        self.i += 1
        self.nodes[var.text] = tok.text
        while True:
            tok = self.peek()
            if tok is None:
                raise self._error("unbalanced parentheses: missing ')'", _after(self.tokens[-1]))
            if tok.kind == "RPAREN":
                self.i += 1
                return var.text
            if tok.kind != "ROLE":
                raise self._error(f"expected role or ')', found {tok.text!r}", tok)
            self.i += 1
            role = normalize_role(tok.text)
            if not role:
                raise self._error("empty role label", tok)
            self.branch(var.text, role)

    def branch(self, source: str, role: str) -> None:
        tok = self.peek()
        if tok is None:
            raise self._error("unexpected end of input after role", _after(self.tokens[-1]))
        if tok.kind == "LPAREN":
            slot = len(self.edges)
            self.edges.append((source, role, ""))
            self.edges[slot] = (source, role, self.node())
        elif tok.kind == "STRING":
            self.i += 1
            self.attributes.append((source, role, tok.text))
        elif tok.kind == "SYMBOL":
            self.i += 1
            if tok.text in self.bound:
                self.edges.append((source, role, tok.text))
            elif VARIABLE_LIKE_RE.match(tok.text):
                raise self._error(f"reference to undefined variable {tok.text!r}", tok)
            else:
                self.attributes.append((source, role, tok.text))
        else:
            raise self._error(f"expected node or value after :{role}, found {tok.text!r}", tok)


def _after(tok: Token | None) -> Token | None:
    if tok is None:
        return None
    if tok.index is not None:
        return Token(tok.kind, tok.text, index=tok.index + 1)
    return Token(tok.kind, tok.text, tok.line, (tok.column or 0) + len(tok.text))


def parse_penman(text: str) -> AmrGraph:
    """Parse one PENMAN expression, optionally preceded by '#' metadata lines."""
    tokens = tokenize(strip_comments(text))
    if not tokens:
        raise PenmanError("empty input")
    return _Parser(tokens).parse()


def delinearize(tokens: Sequence[str]) -> AmrGraph:
    """Rebuild a graph from its linearized token sequence."""
    if not tokens:
        raise PenmanError("empty token sequence", position=0)
    return _Parser([_classify(t, i) for i, t in enumerate(tokens)]).parse()


def _emit(graph: AmrGraph) -> list[tuple[int, list[str]]]:
    """Canonical depth-first traversal as (depth, tokens) lines.

    Each variable is expanded at its first mention; later mentions are bare.
    Per node, attributes come first, then edges, each in stored order.
    """
    out_edges: dict[str, list[tuple[str, str]]] = {v: [] for v in graph.nodes}
    out_attrs: dict[str, list[tuple[str, str]]] = {v: [] for v in graph.nodes}
    for s, r, t in graph.edges:
        out_edges[s].append((r, t))
    for s, r, v in graph.attributes:
        out_attrs[s].append((r, v))

    lines: list[tuple[int, list[str]]] = []
    expanded: set[str] = set()

    def visit(var: str, depth: int, head: list[str]) -> None:
        expanded.add(var)
        cur = head + ["(", var, "/", graph.nodes[var]]
        lines.append((depth, cur))
        for r, v in out_attrs[var]:
            cur.extend([":" + r, v])
        for r, t in out_edges[var]:
            if t in expanded:
                lines.append((depth + 1, [":" + r, t]))
            else:
                visit(t, depth + 1, [":" + r])
        lines[-1][1].append(")")

    visit(graph.root, 0, [])
    return lines


def linearize(graph: AmrGraph) -> list[str]:
    check(graph)
    return [tok for _, toks in _emit(graph) for tok in toks]


def _join(tokens: list[str]) -> str:
    out = ""
    for tok in tokens:
        if out and tok != ")" and not out.endswith("("):
            out += " "
        out += tok
    return out


def serialize_penman(graph: AmrGraph, indent: int = 4) -> str:
    check(graph)
    return "\n".join(" " * (indent * depth) + _join(toks) for depth, toks in _emit(graph))

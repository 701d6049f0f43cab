"""AMR graph data model and structural validation."""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterator, Mapping

Edge = tuple[str, str, str]
Attribute = tuple[str, str, str]

# Unquoted symbols: no whitespace, parens, quotes or slashes; may not start with ':'.
SYMBOL_RE = re.compile(r'[^\s()"/:][^\s()"/]*\Z')
QUOTED_RE = re.compile(r'"(?:[^"\\]|\\.)*"\Z')
NUMBER_RE = re.compile(r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?\Z")
# Bare tokens of this shape are read as variable references; unbound ones are errors.
VARIABLE_LIKE_RE = re.compile(r"[a-z]\d*\Z")
ROLE_RE = re.compile(r"[^\s()\":/][^\s()\"/]*\Z")


class AmrError(Exception):
    """Base class for all toolkit errors."""


class InvalidGraphError(AmrError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        msg = "; ".join(str(d) for d in diagnostics)
        super().__init__(f"invalid graph: {msg}")


@dataclass(frozen=True)
class Diagnostic:
    kind: str  # cycle | unreachable | dangling | root | syntax | ambiguous-constant
    message: str
    variables: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


def is_quoted(value: str) -> bool:
    return bool(QUOTED_RE.match(value))


def unquote(value: str) -> str:
    if len(value) >= 2 and value[0] == '"' and value[-1] == '"':
        return value[1:-1]
    return value


@dataclass(frozen=True, eq=False)
class AmrGraph:
    """A rooted, labeled graph of variables, concepts, attributes and role edges.

    ``nodes`` maps variable ids to concept labels, in definition order.
    ``edges`` hold ``(source, role, target)`` between variables and
    ``attributes`` hold ``(source, role, constant)``. Constants keep their
    surface form, so quoted strings retain their quotes.

    Role labels are stored lowercase without the leading colon.

    Two graphs compare equal when they have the same root, the same
    variable/concept bindings, and the same *per-variable* ordered lists of
    outgoing edges and attributes. The interleaving of edges from different
    sources is not significant, which is what makes PENMAN round trips exact.
    """

    root: str
    nodes: Mapping[str, str]
    edges: tuple[Edge, ...] = ()
    attributes: tuple[Attribute, ...] = ()
    _key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", dict(self.nodes))
        object.__setattr__(
            self, "edges", tuple((s, normalize_role(r), t) for s, r, t in self.edges)
        )
        object.__setattr__(
            self,
            "attributes",
            tuple((s, normalize_role(r), str(v)) for s, r, v in self.attributes),
        )
        out_edges: dict[str, list] = defaultdict(list)
        out_attrs: dict[str, list] = defaultdict(list)
        for s, r, t in self.edges:
            out_edges[s].append((r, t))
        for s, r, v in self.attributes:
            out_attrs[s].append((r, v))
        key = (
            self.root,
            frozenset(self.nodes.items()),
            frozenset((s, tuple(v)) for s, v in out_edges.items()),
            frozenset((s, tuple(v)) for s, v in out_attrs.items()),
        )
        object.__setattr__(self, "_key", key)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AmrGraph):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    @property
    def variables(self) -> list[str]:
        return list(self.nodes)

    def outgoing(self, var: str) -> list[Edge]:
        return [e for e in self.edges if e[0] == var]

    def attributes_of(self, var: str) -> list[Attribute]:
        return [a for a in self.attributes if a[0] == var]

    def in_degree(self) -> dict[str, int]:
        deg = {v: 0 for v in self.nodes}
        for _, _, t in self.edges:
            deg[t] = deg.get(t, 0) + 1
        return deg

    def traversal_order(self) -> list[str]:
        """Variables in depth-first pre-order from the root, following stored edge order.

        Unreachable variables are appended in definition order so every
        variable appears exactly once.
        """
        children: dict[str, list[str]] = defaultdict(list)
        for s, _, t in self.edges:
            children[s].append(t)
        seen: set[str] = set()
        order: list[str] = []
        stack = [self.root] if self.root in self.nodes else []
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            order.append(v)
            for t in reversed(children[v]):
                if t not in seen and t in self.nodes:
                    stack.append(t)
        order.extend(v for v in self.nodes if v not in seen)
        return order

    def replace(self, **changes) -> AmrGraph:
        fields = {
            "root": self.root,
            "nodes": self.nodes,
            "edges": self.edges,
            "attributes": self.attributes,
        }
        fields.update(changes)
        return AmrGraph(**fields)

    def rename(self, mapping: Mapping[str, str]) -> AmrGraph:
        def m(v: str) -> str:
            return mapping.get(v, v)

        return AmrGraph(
            root=m(self.root),
            nodes={m(v): c for v, c in self.nodes.items()},
            edges=tuple((m(s), r, m(t)) for s, r, t in self.edges),
            attributes=tuple((m(s), r, val) for s, r, val in self.attributes),
        )


def normalize_role(role: str) -> str:
    return role[1:].lower() if role.startswith(":") else role.lower()


def _find_cycle(graph: AmrGraph) -> list[str] | None:
    children: dict[str, list[str]] = defaultdict(list)
    for s, _, t in graph.edges:
        if s in graph.nodes and t in graph.nodes:
            children[s].append(t)
    WHITE, GREY, BLACK = 0, 1, 2
    color = {v: WHITE for v in graph.nodes}
    for start in graph.nodes:
        if color[start] != WHITE:
            continue
        path = [start]
        iters = [iter(children[start])]
        color[start] = GREY
        while iters:
            nxt = next(iters[-1], None)
            if nxt is None:
                color[path.pop()] = BLACK
                iters.pop()
                continue
            if color[nxt] == GREY:
                return path[path.index(nxt):] + [nxt]
            if color[nxt] == WHITE:
                color[nxt] = GREY
                path.append(nxt)
                iters.append(iter(children[nxt]))
    return None


def _reachable(graph: AmrGraph) -> set[str]:
    children: dict[str, list[str]] = defaultdict(list)
    for s, _, t in graph.edges:
        children[s].append(t)
    seen = set()
    stack = [graph.root]
    while stack:
        v = stack.pop()
        if v in seen or v not in graph.nodes:
            continue
        seen.add(v)
        stack.extend(children[v])
    return seen


def _syntax_diagnostics(graph: AmrGraph) -> Iterator[Diagnostic]:
    for var, concept in graph.nodes.items():
        if not SYMBOL_RE.match(var) or NUMBER_RE.match(var):
            yield Diagnostic("syntax", f"malformed variable id {var!r}", (var,))
        if not (SYMBOL_RE.match(concept) or is_quoted(concept)):
            yield Diagnostic("syntax", f"malformed concept {concept!r} on {var}", (var,))
    for s, r, _ in list(graph.edges) + list(graph.attributes):
        if not ROLE_RE.match(r):
            yield Diagnostic("syntax", f"malformed role {r!r} on {s}", (s,))
    for s, r, v in graph.attributes:
        if is_quoted(v) or NUMBER_RE.match(v):
            continue
        if not SYMBOL_RE.match(v):
            yield Diagnostic("syntax", f"malformed constant {v!r} in :{r} of {s}", (s,))
        elif v in graph.nodes or VARIABLE_LIKE_RE.match(v):
            yield Diagnostic(
                "ambiguous-constant",
                f"unquoted constant {v!r} in :{r} of {s} reads as a variable",
                (s,),
            )


def validate(graph: AmrGraph) -> list[Diagnostic]:
    """Check every structural invariant; an empty list means the graph is valid."""
    diags: list[Diagnostic] = []
    if graph.root not in graph.nodes:
        diags.append(Diagnostic("root", f"root {graph.root!r} has no concept binding", (graph.root,)))
    for s, r, t in graph.edges:
        for end in (s, t):
            if end not in graph.nodes:
                diags.append(
                    Diagnostic("dangling", f"edge {s} :{r} {t} references unbound variable {end}", (end,))
                )
    for s, r, _ in graph.attributes:
        if s not in graph.nodes:
            diags.append(Diagnostic("dangling", f"attribute :{r} on unbound variable {s}", (s,)))
    cycle = _find_cycle(graph)
    if cycle is not None:
        diags.append(Diagnostic("cycle", "cycle " + " -> ".join(cycle), tuple(cycle[:-1])))
    if graph.root in graph.nodes:
        reach = _reachable(graph)
        for v in graph.nodes:
            if v not in reach:
                diags.append(Diagnostic("unreachable", f"variable {v} is not reachable from root {graph.root}", (v,)))
    diags.extend(_syntax_diagnostics(graph))
    return diags


def check(graph: AmrGraph) -> AmrGraph:
    """Return ``graph`` unchanged, raising InvalidGraphError if it is not valid."""
    diags = validate(graph)
    if diags:
        raise InvalidGraphError(diags)
    return graph


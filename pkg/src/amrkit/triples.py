"""Edge-list (triple) decomposition of AMR graphs."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import AmrGraph, check, unquote

INSTANCE = "instance"
ATTRIBUTE = "attribute"
RELATION = "relation"


@dataclass(frozen=True, order=True)
class Triple:
    kind: str
    role: str
    source: str
    target: str

    def __str__(self) -> str:
        return f"{self.role}({self.source}, {self.target})"


@dataclass(frozen=True)
class TripleSet:
    triples: tuple[Triple, ...]
    variables: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)

    def of_kind(self, kind: str) -> list[Triple]:
        return [t for t in self.triples if t.kind == kind]

    def concepts(self) -> dict[str, str]:
        return {t.source: t.target for t in self.triples if t.kind == INSTANCE}


def decompose(graph: AmrGraph, top_triple: bool = False) -> TripleSet:
    """Split a graph into instance, attribute and relation triples.

    Instances come first in traversal order, then attributes, then
    relations, each grouped by source in traversal order. Quotes around
    attribute constants are dropped; numbers are kept verbatim.
    With ``top_triple`` an extra ``top(root, concept)`` attribute is added.
    """
    check(graph)
    order = graph.traversal_order()
    rank = {v: i for i, v in enumerate(order)}
    instances = [Triple(INSTANCE, INSTANCE, v, graph.nodes[v]) for v in order]
    attrs = [Triple(ATTRIBUTE, r, s, unquote(v)) for s, r, v in graph.attributes]
    if top_triple:
        attrs.insert(0, Triple(ATTRIBUTE, "top", graph.root, graph.nodes[graph.root]))
    rels = [Triple(RELATION, r, s, t) for s, r, t in graph.edges]
    # stable sorts keep stored order within one source
    attrs.sort(key=lambda t: rank[t.source])
    rels.sort(key=lambda t: rank[t.source])
    return TripleSet(tuple(instances + attrs + rels), tuple(order))

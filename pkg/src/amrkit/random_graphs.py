"""Random valid AMR graphs for property tests and benchmarks.

Construction rules: variables are created in order; every variable after
the first gets one parent among the earlier ones (so all are reachable
from the root), extra reentrant edges only ever point from an earlier
variable to a later one (so no cycles), and constants come from a pool
that cannot be mistaken for variable ids.
"""

from __future__ import annotations

import numpy as np

from .graph import AmrGraph

CONCEPTS = (
    "colonoscopy-01", "screen-01", "he", "she", "see-09", "test-01", "person",
    "patient", "decline-02", "shot-13", "disease-disorder", "name", "week",
    "after", "now", "and", "have-03", "pain-01", "anatomical-site", "sign-symptom",
    "surgery", "doctor", "consult-01", "later", "this",
)
ROLES = ("arg0", "arg1", "arg2", "arg3", "mod", "time", "op1", "op2", "name", "arg0-of", "location", "poss")
ATTR_ROLES = ("polarity", "quant", "op1", "mode", "value", "implicit")
CONSTANTS = ("-", "+", "1", "2", "167.60", "3.5", '"tetanus"', '"Chandler Bing"', "imperative", "expressive")


def random_graph(rng: np.random.Generator, max_nodes: int = 20, min_nodes: int = 1,
                 reentrancy: float = 0.25, attr_rate: float = 0.4,
                 concepts=CONCEPTS) -> AmrGraph:
    n = int(rng.integers(min_nodes, max_nodes + 1))
    vars_: list[str] = []
    counts: dict[str, int] = {}
    nodes: dict[str, str] = {}
    for _ in range(n):
        concept = concepts[int(rng.integers(len(concepts)))]
        letter = concept[0] if concept[0].isalpha() else "x"
        counts[letter] = counts.get(letter, 0) + 1
        var = letter if counts[letter] == 1 else f"{letter}{counts[letter]}"
        vars_.append(var)
        nodes[var] = concept

    edges: list[tuple[str, str, str]] = []
    seen = set()

    def add(s: str, t: str) -> None:
        role = ROLES[int(rng.integers(len(ROLES)))]
        if (s, role, t) not in seen:
            seen.add((s, role, t))
            edges.append((s, role, t))

    for k in range(1, n):
        add(vars_[int(rng.integers(k))], vars_[k])
    for _ in range(int(rng.binomial(n, reentrancy))):
        if n < 2:
            break
        i, j = sorted(rng.choice(n, size=2, replace=False))
        add(vars_[i], vars_[j])

    attributes = []
    for v in vars_:
        while rng.random() < attr_rate:
            role = ATTR_ROLES[int(rng.integers(len(ATTR_ROLES)))]
            attributes.append((v, role, CONSTANTS[int(rng.integers(len(CONSTANTS)))]))
            if len(attributes) > 2 * n:
                break

    order = rng.permutation(len(edges))
    return AmrGraph(vars_[0], nodes, tuple(edges[i] for i in order), tuple(attributes))


def perturb(graph: AmrGraph, rng: np.random.Generator, concepts=CONCEPTS) -> AmrGraph:
    """A nearby graph: some concepts swapped, roles changed, attributes dropped, variables renamed."""
    nodes = dict(graph.nodes)
    for v in nodes:
        if rng.random() < 0.3:
            nodes[v] = concepts[int(rng.integers(len(concepts)))]
    edges = [
        (s, ROLES[int(rng.integers(len(ROLES)))] if rng.random() < 0.2 else r, t)
        for s, r, t in graph.edges
    ]
    edges = list(dict.fromkeys(edges))
    attrs = [a for a in graph.attributes if rng.random() > 0.3]
    g = AmrGraph(graph.root, nodes, tuple(edges), tuple(attrs))
    names = list(g.nodes)
    shuffled = [names[i] for i in rng.permutation(len(names))]
    return g.rename(dict(zip(names, shuffled)))


def random_pair(rng: np.random.Generator, max_vars: int = 6) -> tuple[AmrGraph, AmrGraph]:
    """Either an independent pair or a graph and a perturbation of it."""
    a = random_graph(rng, max_nodes=max_vars)
    if rng.random() < 0.5:
        return a, perturb(a, rng)
    return a, random_graph(rng, max_nodes=max_vars)

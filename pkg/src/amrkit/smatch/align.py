"""Variable alignment between two triple sets.

``matched_count`` is the direct definition of the matched-triple count and
is what tests check the kernels against. The aligners compile both triple
sets into weight tables and search over mappings with the kernels.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

import numpy as np

from ..graph import AmrError
from ..rng import make_rng
from ..triples import RELATION, TripleSet
from . import kernels

DEFAULT_EXACT_CAP = 8


class AlignmentError(AmrError):
    pass


@dataclass(frozen=True)
class Alignment:
    """Partial injective map from graph-A variables to graph-B variables."""

    mapping: Mapping[str, str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "mapping", dict(self.mapping))
        targets = list(self.mapping.values())
        if len(set(targets)) != len(targets):
            raise AlignmentError("alignment is not injective")

    def pairs(self) -> tuple[tuple[str, str], ...]:
        return tuple(sorted(self.mapping.items()))

    def __getitem__(self, var: str) -> str:
        return self.mapping[var]

    def __len__(self) -> int:
        return len(self.mapping)


def matched_count(a: TripleSet, b: TripleSet, m: Alignment | Mapping[str, str]) -> int:
    """Number of triples of ``a`` that occur in ``b`` once variables are mapped.

    Triples are compared as multisets, so a duplicated triple only matches
    as many times as it occurs on the other side.
    """
    mapping = m.mapping if isinstance(m, Alignment) else m
    mapped: Counter = Counter()
    for t in a:
        if t.source not in mapping:
            continue
        if t.kind == RELATION:
            if t.target not in mapping:
                continue
            mapped[(t.kind, t.role, mapping[t.source], mapping[t.target])] += 1
        else:
            mapped[(t.kind, t.role, mapping[t.source], t.target)] += 1
    ref = Counter((t.kind, t.role, t.source, t.target) for t in b)
    return sum((mapped & ref).values())


@dataclass
class MatchTables:
    a_vars: tuple[str, ...]
    b_vars: tuple[str, ...]
    unary: np.ndarray
    pi: np.ndarray
    pj: np.ndarray
    pk: np.ndarray
    pl: np.ndarray
    pw: np.ndarray

    def args(self):
        return self.unary, self.pi, self.pj, self.pk, self.pl, self.pw

    def to_alignment(self, m: np.ndarray) -> Alignment:
        return Alignment({self.a_vars[i]: self.b_vars[j] for i, j in enumerate(m) if j >= 0})

    def to_array(self, alignment: Mapping[str, str]) -> np.ndarray:
        b_index = {v: j for j, v in enumerate(self.b_vars)}
        return np.array([b_index[alignment[v]] if v in alignment else -1 for v in self.a_vars],
                        dtype=np.int64)

    def candidates(self) -> np.ndarray:
        """Boolean matrix of (i, j) pairs that can contribute any weight."""
        cand = self.unary > 0
        cand[self.pi, self.pj] = True
        cand[self.pk, self.pl] = True
        return cand


def _variables(ts: TripleSet) -> list[str]:
    seen = dict.fromkeys(ts.variables)
    for t in ts:
        seen.setdefault(t.source)
        if t.kind == RELATION:
            seen.setdefault(t.target)
    return list(seen)


def build_tables(a: TripleSet, b: TripleSet) -> MatchTables:
    a_vars = tuple(sorted(_variables(a)))
    b_vars = tuple(sorted(_variables(b)))
    ai = {v: i for i, v in enumerate(a_vars)}
    bi = {v: j for j, v in enumerate(b_vars)}
    unary = np.zeros((len(a_vars), len(b_vars)), dtype=np.int64)

    def group(ts: TripleSet, index: dict[str, int]):
        flat: dict[tuple, Counter] = defaultdict(Counter)
        rel: dict[str, Counter] = defaultdict(Counter)
        for t in ts:
            if t.kind == RELATION:
                rel[t.role][(index[t.source], index[t.target])] += 1
            else:
                flat[(t.kind, t.role, t.target)][index[t.source]] += 1
        return flat, rel

    a_flat, a_rel = group(a, ai)
    b_flat, b_rel = group(b, bi)
    for key, a_src in a_flat.items():
        b_src = b_flat.get(key)
        if not b_src:
            continue
        for i, ca in a_src.items():
            for j, cb in b_src.items():
                unary[i, j] += min(ca, cb)

    pairs: dict[tuple[int, int, int, int], int] = defaultdict(int)
    for role, a_edges in a_rel.items():
        b_edges = b_rel.get(role)
        if not b_edges:
            continue
        for (i, k), ca in a_edges.items():
            for (j, l), cb in b_edges.items():
                w = min(ca, cb)
                if i == k and j == l:
                    unary[i, j] += w
                elif i != k and j != l:
                    key = (i, j, k, l) if i < k else (k, l, i, j)
                    pairs[key] += w
    keys = sorted(pairs)
    cols = np.array(keys, dtype=np.int64).reshape(-1, 4)
    return MatchTables(
        a_vars, b_vars, unary,
        np.ascontiguousarray(cols[:, 0]), np.ascontiguousarray(cols[:, 1]),
        np.ascontiguousarray(cols[:, 2]), np.ascontiguousarray(cols[:, 3]),
        np.array([pairs[k] for k in keys], dtype=np.int64),
    )


@lru_cache(maxsize=64)
def _injections(n_from: int, n_to: int) -> np.ndarray:
    rows = list(itertools.permutations(range(n_to), n_from))
    return np.array(rows, dtype=np.int64).reshape(len(rows), n_from)


def align_exact(a: TripleSet, b: TripleSet, cap: int = DEFAULT_EXACT_CAP) -> tuple[Alignment, int]:
    """Optimal alignment by exhaustive enumeration of maximal injective mappings.

    Ties go to the lexicographically smallest sorted (a_var, b_var) pair list.
    """
    return exact_from_tables(build_tables(a, b), cap)


def exact_from_tables(t: MatchTables, cap: int = DEFAULT_EXACT_CAP) -> tuple[Alignment, int]:
    n_a, n_b = len(t.a_vars), len(t.b_vars)
    if max(n_a, n_b) > cap:
        raise AlignmentError(f"exact alignment limited to {cap} variables per graph, got {n_a} and {n_b}")
    if n_a == 0 or n_b == 0:
        return Alignment({}), 0
    if n_a <= n_b:
        cands = _injections(n_a, n_b)
        scores = kernels.mapping_scores(cands, *t.args())
        # permutation rows are generated in lexicographic order
        best = int(np.argmax(scores))
        return t.to_alignment(cands[best]), int(scores[best])

    inverse = _injections(n_b, n_a)  # row r: b index -> a index
    cands = np.full((inverse.shape[0], n_a), -1, dtype=np.int64)
    rows = np.arange(inverse.shape[0])[:, None]
    cands[rows, inverse] = np.arange(n_b)[None, :]
    scores = kernels.mapping_scores(cands, *t.args())
    top = int(scores.max())
    tied = np.flatnonzero(scores == top)
    best = min(tied, key=lambda r: [(i, j) for i, j in enumerate(cands[r]) if j >= 0])
    return t.to_alignment(cands[best]), top


def _smart_init(a: TripleSet, b: TripleSet, t: MatchTables) -> np.ndarray:
    b_concepts = b.concepts()
    b_order = _variables(b)
    a_concepts = a.concepts()
    used: set[str] = set()
    mapping: dict[str, str] = {}
    for v in _variables(a):
        concept = a_concepts.get(v)
        if concept is None:
            continue
        for w in b_order:
            if w not in used and b_concepts.get(w) == concept:
                mapping[v] = w
                used.add(w)
                break
    return t.to_array(mapping)


def _random_init(t: MatchTables, cand: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    n_a, n_b = cand.shape
    m = np.full(n_a, -1, dtype=np.int64)
    used = np.zeros(n_b, dtype=bool)
    for i in rng.permutation(n_a):
        options = np.flatnonzero(cand[i] & ~used)
        if options.size:
            j = options[rng.integers(options.size)]
            m[i] = j
            used[j] = True
    return m


def align_greedy(a: TripleSet, b: TripleSet, restarts: int = 4, seed: int = 42) -> tuple[Alignment, int]:
    """Hill-climbing alignment search with restarts.

    Restart 0 starts from a concept-matching mapping, the others from
    seeded random mappings over candidate pairs. Each climb takes the best
    single remap or swap until nothing improves; the best climb wins.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    return greedy_from_tables(a, b, build_tables(a, b), restarts, seed)


def greedy_from_tables(a: TripleSet, b: TripleSet, t: MatchTables, restarts: int,
                       seed: int) -> tuple[Alignment, int]:
    if not t.a_vars or not t.b_vars:
        return Alignment({}), 0
    rng = make_rng(seed, "smatch.greedy")
    cand = t.candidates()
    best_m, best = None, -1
    for r in range(restarts):
        init = _smart_init(a, b, t) if r == 0 else _random_init(t, cand, rng)
        m, score = kernels.hill_climb(init, *t.args())
        if score > best:
            best_m, best = m, int(score)
    return t.to_alignment(best_m), best

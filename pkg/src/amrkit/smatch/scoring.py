"""SMATCH precision/recall/F1 for graph pairs and corpora."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..documents import CorpusDocument
from ..graph import AmrError, AmrGraph
from ..rng import derive_seed
from ..triples import TripleSet, decompose
from .align import DEFAULT_EXACT_CAP, build_tables, exact_from_tables, greedy_from_tables

DEFAULT_SEED = 42
DEFAULT_RESTARTS = 4


def default_seed() -> int:
    """The master seed, overridable through the AMRKIT_SEED environment variable."""
    return int(os.environ.get("AMRKIT_SEED", DEFAULT_SEED))


@dataclass(frozen=True)
class Score:
    n_correct: int
    n_predicted: int
    n_reference: int
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, n_correct: int, n_predicted: int, n_reference: int,
                    empty_is_perfect: bool = False) -> Score:
        if n_correct > min(n_predicted, n_reference):
            raise ValueError("n_correct exceeds the triple counts")
        if empty_is_perfect and n_predicted == 0 and n_reference == 0:
            return cls(0, 0, 0, 1.0, 1.0, 1.0)
        p = n_correct / n_predicted if n_predicted else 0.0
        r = n_correct / n_reference if n_reference else 0.0
        # 2pr/(p+r) with the denominators cleared
        f1 = 2 * n_correct / (n_predicted + n_reference) if n_correct else 0.0
        return cls(n_correct, n_predicted, n_reference, p, r, f1)

    def line(self) -> str:
        return f"{self.precision:.4f} {self.recall:.4f} {self.f1:.4f}"


@dataclass(frozen=True)
class SmatchConfig:
    restarts: int = DEFAULT_RESTARTS
    seed: int = DEFAULT_SEED
    exact_cap: int = DEFAULT_EXACT_CAP
    use_exact: bool = True
    top_triple: bool = False


def align_count(pred: TripleSet, ref: TripleSet, config: SmatchConfig, doc_id: str = "") -> int:
    """Best matched-triple count: exact under the cap, hill climbing otherwise."""
    t = build_tables(pred, ref)
    if config.use_exact and max(len(t.a_vars), len(t.b_vars)) <= config.exact_cap:
        return exact_from_tables(t, config.exact_cap)[1]
    seed = derive_seed(config.seed, "smatch", doc_id)
    return greedy_from_tables(pred, ref, t, config.restarts, seed)[1]


def score_triples(pred: TripleSet, ref: TripleSet, config: SmatchConfig | None = None,
                  doc_id: str = "", empty_is_perfect: bool = False) -> Score:
    config = config or SmatchConfig()
    n_correct = align_count(pred, ref, config, doc_id) if len(pred) and len(ref) else 0
    return Score.from_counts(n_correct, len(pred), len(ref), empty_is_perfect)


def score_pair(predicted: AmrGraph, reference: AmrGraph, config: SmatchConfig | None = None,
               doc_id: str = "") -> Score:
    config = config or SmatchConfig()
    return score_triples(
        decompose(predicted, config.top_triple),
        decompose(reference, config.top_triple),
        config,
        doc_id,
    )


def pair_documents(predicted: Sequence[CorpusDocument],
                   reference: Sequence[CorpusDocument]) -> list[tuple[CorpusDocument, CorpusDocument]]:
    """Zip two corpora, requiring equal length and matching ids position by position."""
    if len(predicted) != len(reference):
        raise AmrError(f"corpora differ in length: {len(predicted)} predicted vs {len(reference)} reference")
    for p, r in zip(predicted, reference):
        if p.id != r.id:
            raise AmrError(f"document id mismatch: {p.id!r} vs {r.id!r}")
    return list(zip(predicted, reference))


def _as_graph_pairs(pairs: Iterable) -> list[tuple[str, AmrGraph, AmrGraph]]:
    out = []
    for n, (p, r) in enumerate(pairs):
        if isinstance(p, CorpusDocument):
            if p.id != r.id:
                raise AmrError(f"document id mismatch: {p.id!r} vs {r.id!r}")
            out.append((p.id, p.graph, r.graph))
        else:
            out.append((str(n), p, r))
    return out


def per_document_scores(pairs: Iterable, config: SmatchConfig | None = None) -> list[tuple[str, Score]]:
    config = config or SmatchConfig()
    return [(doc_id, score_pair(p, r, config, doc_id)) for doc_id, p, r in _as_graph_pairs(pairs)]


def micro_average(scores: Iterable[Score], empty_is_perfect: bool = False) -> Score:
    nc = npred = nref = 0
    for s in scores:
        nc += s.n_correct
        npred += s.n_predicted
        nref += s.n_reference
    return Score.from_counts(nc, npred, nref, empty_is_perfect)


def score_corpus(pairs: Iterable, config: SmatchConfig | None = None) -> Score:
    """Micro-averaged score over (predicted, reference) pairs.

    Pairs may be graphs or CorpusDocuments; documents must agree on id.
    """
    rows = per_document_scores(pairs, config)
    if not rows:
        raise AmrError("cannot score an empty corpus")
    return micro_average(s for _, s in rows)

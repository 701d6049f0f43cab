from .align import (
    DEFAULT_EXACT_CAP,
    Alignment,
    AlignmentError,
    align_exact,
    align_greedy,
    build_tables,
    matched_count,
)
from .scoring import (
    DEFAULT_RESTARTS,
    DEFAULT_SEED,
    Score,
    SmatchConfig,
    default_seed,
    micro_average,
    pair_documents,
    per_document_scores,
    score_corpus,
    score_pair,
    score_triples,
)

__all__ = [
    "DEFAULT_EXACT_CAP",
    "DEFAULT_RESTARTS",
    "DEFAULT_SEED",
    "Alignment",
    "AlignmentError",
    "Score",
    "SmatchConfig",
    "align_exact",
    "align_greedy",
    "build_tables",
    "default_seed",
    "matched_count",
    "micro_average",
    "pair_documents",
    "per_document_scores",
    "score_corpus",
    "score_pair",
    "score_triples",
]

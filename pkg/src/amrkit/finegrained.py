"""Fine-grained evaluation categories.

Each category derives a sub-multiset (possibly relabeled) of a graph's
triples; both sides of a pair get the same derivation and are then scored
with the ordinary SMATCH alignment.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .documents import CorpusDocument
from .graph import AmrGraph
from .smatch.scoring import Score, SmatchConfig, micro_average, pair_documents, score_triples
from .triples import ATTRIBUTE, INSTANCE, RELATION, Triple, TripleSet, decompose

CLINICAL_NE_TYPES: tuple[str, ...] = (
    "anatomical-site",
    "clinical-attribute",
    "devices",
    "disease-disorder",
    "medications-drugs",
    "sign-symptom",
)

# anchored after the first character so a bare "-01" concept never becomes empty
SENSE_RE = re.compile(r"(?<=.)(?:-[0-9]{2,3})+\Z")
SRL_ROLE_RE = re.compile(r"arg[0-9]+(?:-of)?\Z")
UNLABELED_ROLE = "rel"


class Category(str, Enum):
    SMATCH = "smatch"
    UNLABELED = "unlabeled"
    NO_WSD = "no_wsd"
    CONCEPTS = "concepts"
    NAMED_ENTITY = "named_entity"
    NEGATION = "negation"
    REENTRANCY = "reentrancy"
    SRL = "srl"

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    Category.SMATCH: "SMATCH",
    Category.UNLABELED: "Unlabeled",
    Category.NO_WSD: "No WSD",
    Category.CONCEPTS: "Concepts",
    Category.NAMED_ENTITY: "Named Ent.",
    Category.NEGATION: "Negation",
    Category.REENTRANCY: "Reentrancies",
    Category.SRL: "SRL",
}


def load_ne_types(path: str | Path | None) -> tuple[str, ...]:
    """Built-in clinical NE types plus any listed one-per-line in ``path``."""
    types = list(CLINICAL_NE_TYPES)
    if path is not None:
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if line and not line.startswith("#") and line not in types:
                types.append(line)
    return tuple(types)


def _subset(ts: TripleSet, keep: Iterable[int]) -> TripleSet:
    idx = sorted(set(keep))
    triples = tuple(ts.triples[i] for i in idx)
    used = set()
    for t in triples:
        used.add(t.source)
        if t.kind == RELATION:
            used.add(t.target)
    return TripleSet(triples, tuple(v for v in ts.variables if v in used))


def _relabel(ts: TripleSet, fn) -> TripleSet:
    return TripleSet(tuple(fn(t) for t in ts.triples), ts.variables)


def _instance_index(ts: TripleSet) -> dict[str, int]:
    return {t.source: n for n, t in enumerate(ts.triples) if t.kind == INSTANCE}


def _named_entity(ts: TripleSet, ne_types: Sequence[str]) -> TripleSet:
    inst = _instance_index(ts)
    children: dict[str, list[int]] = {}
    for n, t in enumerate(ts.triples):
        if t.kind == RELATION:
            children.setdefault(t.source, []).append(n)
    roots = {t.source for t in ts.triples if t.kind == RELATION and t.role == "name"}
    roots |= {t.source for t in ts.triples if t.kind == INSTANCE and t.target in ne_types}

    keep: set[int] = set()
    below: set[str] = set()
    for root in roots:
        if root in inst:
            keep.add(inst[root])
        for n in children.get(root, []):
            if ts.triples[n].role == "name":
                keep.add(n)
                below.add(ts.triples[n].target)
    # whole subgraph under each name node
    stack = list(below)
    seen: set[str] = set()
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        for n in children.get(v, []):
            keep.add(n)
            stack.append(ts.triples[n].target)
    for n, t in enumerate(ts.triples):
        if t.source in seen and t.kind != RELATION:
            keep.add(n)
    return _subset(ts, keep)


def _negation(ts: TripleSet) -> TripleSet:
    inst = _instance_index(ts)
    keep = set()
    for n, t in enumerate(ts.triples):
        if t.kind == ATTRIBUTE and t.role == "polarity" and t.target == "-":
            keep.add(n)
            if t.source in inst:
                keep.add(inst[t.source])
    return _subset(ts, keep)


def _reentrancy(ts: TripleSet) -> TripleSet:
    indeg: dict[str, int] = {}
    for t in ts.triples:
        if t.kind == RELATION:
            indeg[t.target] = indeg.get(t.target, 0) + 1
    reentrant = {v for v, d in indeg.items() if d >= 2}
    keep = [
        n for n, t in enumerate(ts.triples)
        if t.source in reentrant or (t.kind == RELATION and t.target in reentrant)
    ]
    return _subset(ts, keep)


def _srl(ts: TripleSet) -> TripleSet:
    inst = _instance_index(ts)
    keep = set()
    for n, t in enumerate(ts.triples):
        if t.kind == RELATION and SRL_ROLE_RE.match(t.role):
            keep.add(n)
            for v in (t.source, t.target):
                if v in inst:
                    keep.add(inst[v])
    return _subset(ts, keep)


def derive(ts: TripleSet, category: Category | str,
           ne_types: Sequence[str] = CLINICAL_NE_TYPES) -> TripleSet:
    """Apply one category's derivation to a triple set."""
    category = Category(category)
    if category is Category.SMATCH:
        return ts
    if category is Category.UNLABELED:
        return _relabel(ts, lambda t: t if t.kind == INSTANCE else Triple(t.kind, UNLABELED_ROLE, t.source, t.target))
    if category is Category.NO_WSD:
        return _relabel(
            ts, lambda t: Triple(t.kind, t.role, t.source, SENSE_RE.sub("", t.target)) if t.kind == INSTANCE else t
        )
    if category is Category.CONCEPTS:
        return _subset(ts, (n for n, t in enumerate(ts.triples) if t.kind == INSTANCE))
    if category is Category.NAMED_ENTITY:
        return _named_entity(ts, ne_types)
    if category is Category.NEGATION:
        return _negation(ts)
    if category is Category.REENTRANCY:
        return _reentrancy(ts)
    return _srl(ts)


def transform(pair: tuple[AmrGraph | TripleSet, AmrGraph | TripleSet], category: Category | str,
              ne_types: Sequence[str] = CLINICAL_NE_TYPES,
              top_triple: bool = False) -> tuple[TripleSet, TripleSet]:
    def side(x):
        return derive(decompose(x, top_triple) if isinstance(x, AmrGraph) else x, category, ne_types)

    return side(pair[0]), side(pair[1])


def score_category(pred: AmrGraph, ref: AmrGraph, category: Category | str,
                   config: SmatchConfig | None = None, ne_types: Sequence[str] = CLINICAL_NE_TYPES,
                   doc_id: str = "") -> Score:
    """Score one category; two empty derived sets count as perfect agreement."""
    config = config or SmatchConfig()
    a, b = transform((pred, ref), category, ne_types, config.top_triple)
    return score_triples(a, b, config, doc_id, empty_is_perfect=True)


@dataclass
class CategoryReport:
    rows: dict[Category, Score]
    model_label: str = ""
    notes: list[str] = field(default_factory=list)

    def to_tsv(self) -> str:
        lines = [f"# {n}" for n in self.notes]
        lines.append("category\tP\tR\tF1")
        for cat, s in self.rows.items():
            lines.append(f"{cat.label}\t{s.precision:.4f}\t{s.recall:.4f}\t{s.f1:.4f}")
        return "\n".join(lines) + "\n"

    def to_markdown(self) -> str:
        lines = []
        if self.model_label:
            lines.append(f"**{self.model_label}**\n")
        lines += ["| Sub-category | Precision | Recall | F1 |", "|---|---|---|---|"]
        for cat, s in self.rows.items():
            lines.append(f"| {cat.label} | {s.precision:.4f} | {s.recall:.4f} | {s.f1:.4f} |")
        lines += [f"\n_{n}_" for n in self.notes]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "schema_version": 1,
            "model_label": self.model_label,
            "notes": self.notes,
            "rows": [
                {
                    "category": cat.value,
                    "label": cat.label,
                    "n_correct": s.n_correct,
                    "n_predicted": s.n_predicted,
                    "n_reference": s.n_reference,
                    "precision": s.precision,
                    "recall": s.recall,
                    "f1": s.f1,
                }
                for cat, s in self.rows.items()
            ],
        }
        return json.dumps(doc, indent=2) + "\n"

    def render(self, fmt: str) -> str:
        return {"tsv": self.to_tsv, "json": self.to_json, "md": self.to_markdown}[fmt]()


def report(pred_corpus: Sequence[CorpusDocument], ref_corpus: Sequence[CorpusDocument],
           config: SmatchConfig | None = None, model_label: str = "",
           ne_types: Sequence[str] = CLINICAL_NE_TYPES) -> CategoryReport:
    """Micro-averaged score for every category over an aligned corpus pair."""
    config = config or SmatchConfig()
    pairs = pair_documents(pred_corpus, ref_corpus)
    rows: dict[Category, Score] = {}
    for cat in Category:
        per_doc = []
        for p, r in pairs:
            a, b = transform((p.graph, r.graph), cat, ne_types, config.top_triple)
            per_doc.append(score_triples(a, b, config, p.id))
        rows[cat] = micro_average(per_doc, empty_is_perfect=True)
    notes = [f"named_entity types: {', '.join(ne_types)}"]
    if tuple(ne_types) != CLINICAL_NE_TYPES:
        notes.append("named_entity type list extends the built-in clinical types")
    return CategoryReport(rows, model_label, notes)

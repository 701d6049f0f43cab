"""Corpus preparation for adaptation experiments: splits, mixing, learning curves, agreement."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .documents import CorpusDocument, CorpusError
from .rng import make_rng
from .smatch.scoring import Score, SmatchConfig, score_corpus

EXHAUST_PRIMARY = "exhaust-primary"


@dataclass(frozen=True)
class Corpus:
    documents: tuple[CorpusDocument, ...]
    name: str = "corpus"

    def __post_init__(self) -> None:
        object.__setattr__(self, "documents", tuple(self.documents))
        seen: set[str] = set()
        for d in self.documents:
            if d.id in seen:
                raise CorpusError(f"duplicate document id {d.id!r} in corpus {self.name!r}")
            seen.add(d.id)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    @property
    def ids(self) -> list[str]:
        return [d.id for d in self.documents]

    def take(self, indices, name: str) -> Corpus:
        return Corpus(tuple(self.documents[int(i)] for i in indices), name)


@dataclass(frozen=True)
class MixSpec:
    primary: Corpus
    secondary: Corpus
    ratio: tuple[int, int] = (12, 1)
    total: int | str = EXHAUST_PRIMARY
    seed: int = 42

    def __post_init__(self) -> None:
        p, s = self.ratio
        if p < 1 or s < 1:
            raise ValueError(f"ratio parts must be >= 1, got {p}:{s}")


def split(corpus: Corpus, sizes: Sequence[int], seed: int) -> tuple[Corpus, Corpus, Corpus]:
    """Seeded shuffle followed by a contiguous train/dev/test partition."""
    train, dev, test = sizes
    if min(sizes) < 0 or train + dev + test != len(corpus):
        raise CorpusError(f"split sizes {train}+{dev}+{test} do not sum to corpus size {len(corpus)}")
    perm = make_rng(seed, "corpus.split").permutation(len(corpus))
    return (
        corpus.take(perm[:train], "train"),
        corpus.take(perm[train:train + dev], "dev"),
        corpus.take(perm[train + dev:], "test"),
    )


def primary_quota(n: int, ratio: tuple[int, int]) -> int:
    """Primary documents in an n-document mixture prefix: floor(n*p/(p+s))."""
    p, s = ratio
    return n * p // (p + s)


def mix_total(n_primary: int, ratio: tuple[int, int]) -> int:
    """Mixture size that uses every primary document: P + ceil(P*s/p)."""
    p, s = ratio
    return n_primary + -(-n_primary * s // p)


def mix(spec: MixSpec) -> Corpus:
    """Interleave seeded without-replacement samples of two sources at a fixed ratio.

    After every prefix of length n the primary count is floor(n*p/(p+s)),
    which keeps both source counts within one document of the exact ratio.
    """
    overlap = set(spec.primary.ids) & set(spec.secondary.ids)
    if overlap:
        raise CorpusError(f"sources share document ids, e.g. {sorted(overlap)[0]!r}")
    total = mix_total(len(spec.primary), spec.ratio) if spec.total == EXHAUST_PRIMARY else int(spec.total)
    n_p = primary_quota(total, spec.ratio)
    n_s = total - n_p
    if n_p > len(spec.primary) or n_s > len(spec.secondary):
        raise CorpusError(
            f"mixture of {total} needs {n_p} primary and {n_s} secondary documents; "
            f"have {len(spec.primary)} and {len(spec.secondary)}"
        )
    rng = make_rng(spec.seed, "corpus.mix")
    prim = rng.permutation(len(spec.primary))[:n_p]
    sec = rng.permutation(len(spec.secondary))[:n_s]
    docs = []
    ip = isec = 0
    for n in range(1, total + 1):
        if primary_quota(n, spec.ratio) > ip:
            d = spec.primary.documents[prim[ip]]
            ip += 1
            tag = d.source_tag or spec.primary.name
        else:
            d = spec.secondary.documents[sec[isec]]
            isec += 1
            tag = d.source_tag or spec.secondary.name
        docs.append(d if d.metadata.get("source") == tag else d.with_tag(tag))
    return Corpus(tuple(docs), "mix")


def subsample_curve(corpus: Corpus, sizes: Sequence[int], seed: int, nested: bool = True) -> list[Corpus]:
    """Learning-curve training sets drawn without replacement.

    Nested mode takes prefixes of one shuffle, so each snapshot contains the
    previous one; otherwise every size gets an independent draw.
    """
    sizes = list(sizes)
    if sizes != sorted(sizes):
        raise CorpusError("curve sizes must be ascending")
    if sizes and sizes[-1] > len(corpus):
        raise CorpusError(f"curve size {sizes[-1]} exceeds corpus size {len(corpus)}")
    if sizes and sizes[0] < 0:
        raise CorpusError("curve sizes must be non-negative")
    if nested:
        perm = make_rng(seed, "corpus.curve").permutation(len(corpus))
        return [corpus.take(perm[:k], f"curve-{k}") for k in sizes]
    out = []
    for k in sizes:
        idx = make_rng(seed, "corpus.curve", k).choice(len(corpus), size=k, replace=False)
        out.append(corpus.take(idx, f"curve-{k}"))
    return out


@dataclass
class AgreementTable:
    labels: list[str]
    matrix: list[list[Score]]

    def rows(self) -> list[tuple[str, Score]]:
        """One row per unordered pair, in the order the sets were given."""
        out = []
        for i, a in enumerate(self.labels):
            for j in range(i + 1, len(self.labels)):
                out.append((f"{a} vs {self.labels[j]}", self.matrix[i][j]))
        return out

    def to_tsv(self) -> str:
        lines = ["comparison\tP\tR\tF1"]
        for name, s in self.rows():
            lines.append(f"{name}\t{s.precision:.4f}\t{s.recall:.4f}\t{s.f1:.4f}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "schema_version": 1,
                "labels": self.labels,
                "matrix": [[[s.precision, s.recall, s.f1] for s in row] for row in self.matrix],
            },
            indent=2,
        ) + "\n"


def iaa(annotations: Sequence[tuple[str, Corpus]], config: SmatchConfig | None = None) -> AgreementTable:
    """Pairwise corpus-level SMATCH between annotation sets over the same documents.

    ``matrix[i][j]`` scores set i as predicted against set j as reference.
    """
    if len(annotations) < 2:
        raise CorpusError("agreement needs at least two annotation sets")
    base_label, base = annotations[0]
    for label, c in annotations[1:]:
        if set(c.ids) != set(base.ids):
            raise CorpusError(f"annotation sets {base_label!r} and {label!r} cover different documents")
    by_id = [{d.id: d for d in c} for _, c in annotations]
    order = base.ids
    matrix = []
    for i in range(len(annotations)):
        row = []
        for j in range(len(annotations)):
            pairs = [(by_id[i][k], by_id[j][k]) for k in order]
            row.append(score_corpus(pairs, config))
        matrix.append(row)
    return AgreementTable([label for label, _ in annotations], matrix)


def manifest(parts: dict[str, Corpus], seed: int, **extra) -> str:
    doc = {
        "schema_version": 1,
        "seed": seed,
        "parts": {
            name: {
                "size": len(c),
                "source_tags": _tag_counts(c),
            }
            for name, c in parts.items()
        },
    }
    doc.update(extra)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _tag_counts(c: Corpus) -> dict[str, int]:
    out: dict[str, int] = {}
    for d in c:
        out[d.source_tag] = out.get(d.source_tag, 0) + 1
    return out

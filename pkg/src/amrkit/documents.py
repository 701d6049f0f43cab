"""Corpus documents and the blank-line-separated AMR file format."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .graph import AmrError, AmrGraph
from .penman import PenmanError, parse_penman, serialize_penman

_META_RE = re.compile(r"::(\S+)(?:[ \t]+((?:(?!\s::\S).)*))?")


class CorpusError(AmrError):
    pass


@dataclass(frozen=True)
class CorpusDocument:
    id: str
    snt: str
    graph: AmrGraph
    metadata: dict[str, str] = field(default_factory=dict)
    source_tag: str = ""

    def with_tag(self, tag: str) -> CorpusDocument:
        meta = dict(self.metadata)
        meta["source"] = tag
        return CorpusDocument(self.id, self.snt, self.graph, meta, tag)


def parse_metadata(lines: Iterable[str]) -> dict[str, str]:
    """Collect ``# ::key value`` pairs; several pairs may share a line."""
    meta: dict[str, str] = {}
    for line in lines:
        body = line.lstrip()[1:].strip()
        if not body.startswith("::"):
            continue
        for m in _META_RE.finditer(body):
            meta[m.group(1)] = (m.group(2) or "").strip()
    return meta


def _blocks(text: str) -> Iterator[tuple[int, list[str]]]:
    block: list[str] = []
    start = 1
    for n, line in enumerate(text.splitlines(), 1):
        if line.strip():
            if not block:
                start = n
            block.append(line)
        elif block:
            yield start, block
            block = []
    if block:
        yield start, block


def parse_corpus(text: str, name: str = "corpus") -> list[CorpusDocument]:
    docs: list[CorpusDocument] = []
    seen: set[str] = set()
    for start, block in _blocks(text):
        comments = [ln for ln in block if ln.lstrip().startswith("#")]
        if len(comments) == len(block):
            continue
        meta = parse_metadata(comments)
        try:
            graph = parse_penman("\n".join(block))
        except PenmanError as err:
            if err.line is not None:
                raise PenmanError(err.message, err.line + start - 1, err.column) from None
            raise
        doc_id = meta.get("id") or f"{name}.{len(docs) + 1}"
        if doc_id in seen:
            raise CorpusError(f"duplicate document id {doc_id!r} (line {start})")
        seen.add(doc_id)
        docs.append(CorpusDocument(doc_id, meta.get("snt", ""), graph, meta, meta.get("source", name)))
    return docs


def read_corpus(path: str | Path) -> list[CorpusDocument]:
    path = Path(path)
    return parse_corpus(path.read_text(encoding="utf-8"), name=path.stem)


def format_document(doc: CorpusDocument) -> str:
    meta = {"id": doc.id}
    if doc.snt:
        meta["snt"] = doc.snt
    meta.update(doc.metadata)
    lines = [f"# ::{k} {v}" if v else f"# ::{k}" for k, v in meta.items()]
    lines.append(serialize_penman(doc.graph))
    return "\n".join(lines)


def format_corpus(docs: Iterable[CorpusDocument]) -> str:
    return "".join(format_document(d) + "\n\n" for d in docs)


def write_corpus(path: str | Path, docs: Iterable[CorpusDocument]) -> None:
    Path(path).write_text(format_corpus(docs), encoding="utf-8")

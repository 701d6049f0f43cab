"""Template-filled AMRs for formulaic phrases, and the phrasal NE dictionary.

Registry file: records separated by blank lines; each record is a name
line, a pattern line, then the PENMAN skeleton (one or more lines).
Lines starting with ``#`` are comments.

Dictionary file: records separated by blank lines; each record is a phrase
line, an NE-type line, then the PENMAN fragment.

Placeholders look like ``{num}``, ``{word}`` or ``{unit}``; a numeric suffix
(``{num2}``) allows several slots of one type.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

from .graph import AmrError, AmrGraph, check
from .penman import PenmanError, parse_penman

PLACEHOLDER_RE = re.compile(r"\{([a-z]+)(\d*)\}")
NUM_RE = r"[-+]?\d+(?:\.\d+)?"
WORD_RE = r"\S+"

# surface form -> concept
DEFAULT_UNITS: dict[str, str] = {
    "cm": "centimeter",
    "mm": "millimeter",
    "m": "meter",
    "in": "inch",
    "kg": "kilogram",
    "g": "gram",
    "lb": "pound",
    "lbs": "pound",
    "mmHg": "millimeter-of-mercury",
    "bpm": "beat-per-minute",
    "%": "percentage-entity",
    "C": "celsius",
    "F": "fahrenheit",
}

_PROBES = {"num": "1", "word": "probe"}


class TemplateError(AmrError):
    pass


def _slot_type(name: str) -> str:
    return re.sub(r"\d+$", "", name)


@dataclass(frozen=True)
class Template:
    name: str
    pattern: str
    skeleton: str
    units: Mapping[str, str] = field(default_factory=lambda: dict(DEFAULT_UNITS), compare=False)

    @property
    def slots(self) -> list[str]:
        return [m.group(1) + m.group(2) for m in PLACEHOLDER_RE.finditer(self.pattern)]

    def regex(self) -> re.Pattern:
        parts = []
        pos = 0
        seen = set()
        for m in PLACEHOLDER_RE.finditer(self.pattern):
            parts.append(_literal(self.pattern[pos:m.start()]))
            slot, kind = m.group(1) + m.group(2), m.group(1)
            if slot in seen:
                raise TemplateError(f"template {self.name!r}: placeholder {{{slot}}} used twice")
            seen.add(slot)
            if kind == "num":
                body = NUM_RE
            elif kind == "word":
                body = WORD_RE
            elif kind == "unit":
                surfaces = sorted(set(self.units) | set(self.units.values()), key=len, reverse=True)
                body = "|".join(re.escape(u) for u in surfaces)
            else:
                raise TemplateError(f"template {self.name!r}: unknown placeholder type {{{slot}}}")
            parts.append(f"(?P<{slot}>{body})")
            pos = m.end()
        parts.append(_literal(self.pattern[pos:]))
        return re.compile("".join(parts) + r"\Z")


def _literal(text: str) -> str:
    return r"\s+".join(re.escape(w) for w in text.split(" ")) if text.strip() else (r"\s*" if text else "")


def _type_valid(kind: str, value: str, units: Mapping[str, str]) -> bool:
    if kind == "num":
        return re.fullmatch(NUM_RE, value) is not None
    if kind == "word":
        return re.fullmatch(WORD_RE, value) is not None
    if kind == "unit":
        return value in units or value in units.values()
    return False


def fill(template: Template, captures: Mapping[str, str]) -> AmrGraph:
    """Substitute captures into the skeleton and return the validated graph.

    Unit surface forms are mapped to their concept names.
    """
    values = {}
    for m in PLACEHOLDER_RE.finditer(template.skeleton):
        slot, kind = m.group(1) + m.group(2), m.group(1)
        if slot not in captures:
            raise TemplateError(f"template {template.name!r}: missing capture for {{{slot}}}")
        value = str(captures[slot])
        if not _type_valid(kind, value, template.units):
            raise TemplateError(f"template {template.name!r}: {value!r} is not a valid {kind}")
        if kind == "unit":
            value = template.units.get(value, value)
        values[slot] = value
    text = PLACEHOLDER_RE.sub(lambda m: values[m.group(1) + m.group(2)], template.skeleton)
    try:
        return check(parse_penman(text))
    except AmrError as err:
        raise TemplateError(f"template {template.name!r} produced invalid PENMAN: {err}") from err


def _probe(template: Template) -> None:
    captures = {}
    for slot in template.slots:
        kind = _slot_type(slot)
        captures[slot] = next(iter(template.units)) if kind == "unit" else _PROBES.get(kind, "")
    missing = {m.group(1) + m.group(2) for m in PLACEHOLDER_RE.finditer(template.skeleton)} - set(template.slots)
    if missing:
        raise TemplateError(f"template {template.name!r}: skeleton placeholders {sorted(missing)} not in pattern")
    template.regex()
    fill(template, captures)


def match_template(sentence: str, registry: Sequence[Template]) -> tuple[Template, dict[str, str]] | None:
    """First template, in registry order, whose pattern matches the whole sentence."""
    text = sentence.strip()
    for t in registry:
        m = t.regex().match(text)
        if m:
            return t, m.groupdict()
    return None


def _records(text: str) -> list[list[str]]:
    records, cur = [], []
    for line in text.splitlines():
        if line.lstrip().startswith("#"):
            continue
        if line.strip():
            cur.append(line.rstrip())
        elif cur:
            records.append(cur)
            cur = []
    if cur:
        records.append(cur)
    return records


def parse_registry(text: str, units: Mapping[str, str] | None = None) -> list[Template]:
    units = dict(DEFAULT_UNITS if units is None else units)
    out = []
    for rec in _records(text):
        if len(rec) < 3:
            raise TemplateError(f"registry record {rec[0]!r} needs a name, a pattern and a skeleton")
        t = Template(rec[0].strip(), rec[1].strip(), "\n".join(rec[2:]), units)
        _probe(t)
        out.append(t)
    return out


def load_registry(path: str | Path | None = None, units: Mapping[str, str] | None = None) -> list[Template]:
    """Load a registry file; without a path, the bundled illustrative registry."""
    if path is None:
        text = resources.files("amrkit.data").joinpath("example_registry.txt").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return parse_registry(text, units)


def normalize_phrase(phrase: str) -> str:
    return " ".join(phrase.lower().split())


@dataclass(frozen=True)
class DictionaryEntry:
    phrase: str
    ne_type: str
    fragment: str
    graph: AmrGraph


class NeDictionary:
    def __init__(self, entries: Sequence[DictionaryEntry] = ()):
        self.entries: dict[str, DictionaryEntry] = {}
        for e in entries:
            key = normalize_phrase(e.phrase)
            if key in self.entries:
                raise TemplateError(f"duplicate dictionary phrase {key!r}")
            self.entries[key] = e

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, phrase: str) -> bool:
        return normalize_phrase(phrase) in self.entries

    @classmethod
    def parse(cls, text: str) -> NeDictionary:
        entries = []
        for rec in _records(text):
            if len(rec) < 3:
                raise TemplateError(f"dictionary record {rec[0]!r} needs a phrase, a type and a fragment")
            fragment = "\n".join(rec[2:])
            try:
                graph = check(parse_penman(fragment))
            except (PenmanError, AmrError) as err:
                raise TemplateError(f"dictionary fragment for {rec[0]!r}: {err}") from err
            entries.append(DictionaryEntry(normalize_phrase(rec[0]), rec[1].strip(), fragment, graph))
        return cls(entries)

    @classmethod
    def load(cls, path: str | Path | None = None) -> NeDictionary:
        if path is None:
            text = resources.files("amrkit.data").joinpath("ne_dictionary.txt").read_text(encoding="utf-8")
        else:
            text = Path(path).read_text(encoding="utf-8")
        return cls.parse(text)


def fresh_names(graph: AmrGraph, avoid: set[str] | frozenset[str]) -> dict[str, str]:
    """Rename map giving every variable of ``graph`` an id not in ``avoid``.

    Ids keep their leading letter and take the smallest free numeric
    suffix (``s``, ``s2``, ``s3``, ...).
    """
    taken = set(avoid)
    mapping = {}
    for v in graph.traversal_order():
        letter = v[0]
        cand, n = letter, 1
        while cand in taken:
            n += 1
            cand = f"{letter}{n}"
        taken.add(cand)
        mapping[v] = cand
    return mapping


def lookup(phrase: str, dictionary: NeDictionary, avoid: set[str] | frozenset[str] = frozenset()) -> AmrGraph | None:
    """Fragment for a phrase, with variables renamed away from ``avoid``."""
    entry = dictionary.entries.get(normalize_phrase(phrase))
    if entry is None:
        return None
    return entry.graph.rename(fresh_names(entry.graph, avoid))


def attach(host: AmrGraph, source: str, role: str, fragment: AmrGraph) -> AmrGraph:
    """Add ``fragment`` under ``source`` via ``role``; variable ids must not clash."""
    clash = set(host.nodes) & set(fragment.nodes)
    if clash:
        raise TemplateError(f"fragment variables collide with host: {sorted(clash)}")
    return check(AmrGraph(
        host.root,
        {**host.nodes, **fragment.nodes},
        host.edges + ((source, role, fragment.root),) + fragment.edges,
        host.attributes + fragment.attributes,
    ))


def templatize(sentences: Sequence[str], registry: Sequence[Template],
               dictionary: NeDictionary | None = None) -> tuple[list[tuple[int, str, AmrGraph]], list[tuple[int, str]]]:
    """Generate AMRs for each sentence a template (or whole-phrase dictionary entry) covers.

    Returns (generated, unmatched) with 1-based sentence numbers.
    """
    generated, unmatched = [], []
    for n, s in enumerate(sentences, 1):
        hit = match_template(s, registry)
        if hit is not None:
            generated.append((n, hit[0].name, fill(*hit)))
            continue
        frag = lookup(s, dictionary) if dictionary is not None else None
        if frag is not None:
            generated.append((n, "ne-dictionary", frag))
        else:
            unmatched.append((n, s))
    return generated, unmatched

"""``amr-kit`` command-line entry point.

Exit status: 0 on success, 1 when inputs fail validation or scoring raises a
toolkit error, 2 on usage errors. Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import corpus as corpus_ops
from .documents import format_corpus, read_corpus, write_corpus, CorpusDocument
from .finegrained import load_ne_types, report
from .graph import AmrError, validate
from .penman import linearize
from .smatch import DEFAULT_EXACT_CAP, DEFAULT_RESTARTS, SmatchConfig, default_seed, per_document_scores
from .smatch.scoring import micro_average, pair_documents
from .templates import NeDictionary, load_registry, templatize
from .triples import decompose


def _existing(path: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise argparse.ArgumentTypeError(f"no such file: {path}")
    return p


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _ratio(text: str) -> tuple[int, int]:
    try:
        p, s = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected P:S, got {text!r}") from None
    if p < 1 or s < 1:
        raise argparse.ArgumentTypeError("ratio parts must be >= 1")
    return p, s


def _add_smatch_flags(p: argparse.ArgumentParser, seed: int) -> None:
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS,
                   help=f"hill-climbing restarts (default {DEFAULT_RESTARTS})")
    p.add_argument("--seed", type=int, default=seed, help=f"master seed (default {seed}; env AMRKIT_SEED)")
    p.add_argument("--exact-cap", type=int, default=DEFAULT_EXACT_CAP,
                   help=f"use exact alignment when both graphs have at most this many variables "
                        f"(default {DEFAULT_EXACT_CAP}; 0 disables)")
    p.add_argument("--top-triple", action="store_true", help="add a top(root, concept) triple to each graph")


def _config(args) -> SmatchConfig:
    if args.restarts < 1:
        raise AmrError("--restarts must be >= 1")
    return SmatchConfig(restarts=args.restarts, seed=args.seed, exact_cap=args.exact_cap,
                        use_exact=args.exact_cap > 0, top_triple=args.top_triple)


def build_parser() -> argparse.ArgumentParser:
    seed = default_seed()
    parser = argparse.ArgumentParser(
        prog="amr-kit",
        description=f"AMR toolkit: PENMAN I/O, SMATCH, fine-grained scores, corpus preparation, templates. "
                    f"Defaults: seed {seed}, restarts {DEFAULT_RESTARTS}, exact cap {DEFAULT_EXACT_CAP}.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("validate", help="check graphs in AMR files; diagnostics on stderr")
    p.add_argument("files", nargs="+", type=_existing)

    p = sub.add_parser("triples", help="print each graph's triple decomposition")
    p.add_argument("file", type=_existing)
    p.add_argument("--top-triple", action="store_true")

    p = sub.add_parser("linearize", help="print each graph's token sequence as JSON lines")
    p.add_argument("file", type=_existing)

    p = sub.add_parser("score", help="corpus SMATCH: prints 'P R F1'")
    p.add_argument("--pred", required=True, type=_existing)
    p.add_argument("--ref", required=True, type=_existing)
    p.add_argument("--per-doc", metavar="PATH", help="also write per-document TSV to PATH ('-' for stdout)")
    _add_smatch_flags(p, seed)

    p = sub.add_parser("fine", help="fine-grained category report")
    p.add_argument("--pred", required=True, type=_existing)
    p.add_argument("--ref", required=True, type=_existing)
    p.add_argument("--format", choices=("tsv", "json", "md"), default="tsv")
    p.add_argument("--label", default="", help="model label for the report")
    p.add_argument("--ne-types", type=_existing, help="extra named-entity types, one per line")
    _add_smatch_flags(p, seed)

    p = sub.add_parser("split", help="seeded train/dev/test split")
    p.add_argument("file", type=_existing)
    p.add_argument("--sizes", required=True, type=_int_list, help="A,B,C summing to the corpus size")
    p.add_argument("--seed", type=int, default=seed, help=f"(default {seed})")
    p.add_argument("--out-dir", required=True)

    p = sub.add_parser("mix", help="ratio-controlled mixture of two corpora")
    p.add_argument("primary", type=_existing)
    p.add_argument("secondary", type=_existing)
    p.add_argument("--ratio", type=_ratio, default=(12, 1), help="P:S (default 12:1)")
    p.add_argument("--total", type=int, help="mixture size (default: use every primary document)")
    p.add_argument("--seed", type=int, default=seed, help=f"(default {seed})")
    p.add_argument("--out-dir", required=True)

    p = sub.add_parser("curve", help="learning-curve training subsets")
    p.add_argument("file", type=_existing)
    p.add_argument("--sizes", required=True, type=_int_list)
    p.add_argument("--seed", type=int, default=seed, help=f"(default {seed})")
    p.add_argument("--independent", action="store_true", help="independent draws instead of nested snapshots")
    p.add_argument("--out-dir", required=True)

    p = sub.add_parser("iaa", help="pairwise inter-annotator SMATCH agreement")
    p.add_argument("files", nargs="+", type=_existing)
    p.add_argument("--labels", help="comma-separated labels (default: file stems)")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    _add_smatch_flags(p, seed)

    p = sub.add_parser("templatize", help="generate AMRs for formulaic sentences")
    p.add_argument("--registry", type=_existing, help="template registry (default: bundled example)")
    p.add_argument("--dict", type=_existing, help="NE dictionary (default: bundled example)")
    p.add_argument("--input", required=True, type=_existing, help="sentences, one per line")
    p.add_argument("--out", required=True, help="output corpus file")
    p.add_argument("--unmatched", help="TSV of unmatched sentences (default: OUT.unmatched.tsv)")
    return parser


def _cmd_validate(args, out, err) -> int:
    n_docs = n_bad = 0
    for path in args.files:
        try:
            docs = read_corpus(path)
        except AmrError as e:
            print(f"{path}: {e}", file=err)
            n_bad += 1
            continue
        for d in docs:
            n_docs += 1
            diags = validate(d.graph)
            if diags:
                n_bad += 1
                for dg in diags:
                    print(f"{path}: {d.id}: {dg}", file=err)
    print(f"{n_docs} documents checked, {n_bad} invalid", file=out)
    return 1 if n_bad else 0


def _cmd_triples(args, out, err) -> int:
    blocks = []
    for d in read_corpus(args.file):
        lines = [f"# ::id {d.id}"] + [str(t) for t in decompose(d.graph, args.top_triple)]
        blocks.append("\n".join(lines))
    out.write("\n\n".join(blocks) + "\n")
    return 0


def _cmd_linearize(args, out, err) -> int:
    for d in read_corpus(args.file):
        out.write(json.dumps({"id": d.id, "tokens": linearize(d.graph)}, ensure_ascii=False) + "\n")
    return 0


def _per_doc_tsv(rows) -> str:
    lines = ["id\tn_correct\tn_pred\tn_ref\tp\tr\tf1"]
    for doc_id, s in rows:
        lines.append(f"{doc_id}\t{s.n_correct}\t{s.n_predicted}\t{s.n_reference}\t"
                     f"{s.precision:.4f}\t{s.recall:.4f}\t{s.f1:.4f}")
    return "\n".join(lines) + "\n"


def _cmd_score(args, out, err) -> int:
    pairs = pair_documents(read_corpus(args.pred), read_corpus(args.ref))
    if not pairs:
        raise AmrError("cannot score an empty corpus")
    rows = per_document_scores(pairs, _config(args))
    print(micro_average(s for _, s in rows).line(), file=out)
    if args.per_doc == "-":
        out.write(_per_doc_tsv(rows))
    elif args.per_doc:
        Path(args.per_doc).write_text(_per_doc_tsv(rows), encoding="utf-8")
    return 0


def _cmd_fine(args, out, err) -> int:
    rep = report(read_corpus(args.pred), read_corpus(args.ref), _config(args), args.label,
                 load_ne_types(args.ne_types))
    out.write(rep.render(args.format))
    return 0


def _corpus(path: Path) -> corpus_ops.Corpus:
    return corpus_ops.Corpus(tuple(read_corpus(path)), path.stem)


def _write_parts(out_dir: str, parts: dict[str, corpus_ops.Corpus], manifest: str, out) -> None:
    d = Path(out_dir)
    d.mkdir(parents=True, exist_ok=True)
    for name, c in parts.items():
        write_corpus(d / f"{name}.amr", c.documents)
    (d / "manifest.json").write_text(manifest, encoding="utf-8")
    out.write(manifest)


def _cmd_split(args, out, err) -> int:
    if len(args.sizes) != 3:
        raise AmrError("--sizes needs exactly three values")
    train, dev, test = corpus_ops.split(_corpus(args.file), args.sizes, args.seed)
    parts = {"train": train, "dev": dev, "test": test}
    _write_parts(args.out_dir, parts, corpus_ops.manifest(parts, args.seed, operation="split"), out)
    return 0


def _cmd_mix(args, out, err) -> int:
    spec = corpus_ops.MixSpec(
        _corpus(args.primary), _corpus(args.secondary), args.ratio,
        corpus_ops.EXHAUST_PRIMARY if args.total is None else args.total, args.seed,
    )
    mixed = corpus_ops.mix(spec)
    parts = {"mix": mixed}
    ratio = f"{args.ratio[0]}:{args.ratio[1]}"
    _write_parts(args.out_dir, parts, corpus_ops.manifest(parts, args.seed, operation="mix", ratio=ratio), out)
    return 0


def _cmd_curve(args, out, err) -> int:
    snaps = corpus_ops.subsample_curve(_corpus(args.file), args.sizes, args.seed, nested=not args.independent)
    parts = {c.name: c for c in snaps}
    man = corpus_ops.manifest(parts, args.seed, operation="curve", nested=not args.independent)
    _write_parts(args.out_dir, parts, man, out)
    return 0


def _cmd_iaa(args, out, err) -> int:
    if len(args.files) < 2:
        raise AmrError("iaa needs at least two files")
    labels = args.labels.split(",") if args.labels else [p.stem for p in args.files]
    if len(labels) != len(args.files):
        raise AmrError("--labels must name every file")
    sets = [(lab, _corpus(p)) for lab, p in zip(labels, args.files)]
    table = corpus_ops.iaa(sets, _config(args))
    out.write(table.to_tsv() if args.format == "tsv" else table.to_json())
    return 0


def _cmd_templatize(args, out, err) -> int:
    registry = load_registry(args.registry)
    dictionary = NeDictionary.load(args.dict)
    sentences = [ln.strip() for ln in args.input.read_text(encoding="utf-8").splitlines() if ln.strip()]
    generated, unmatched = templatize(sentences, registry, dictionary)
    docs = [
        CorpusDocument(f"{args.input.stem}.{n}", sentences[n - 1], g,
                       {"id": f"{args.input.stem}.{n}", "snt": sentences[n - 1], "template": name})
        for n, name, g in generated
    ]
    Path(args.out).write_text(format_corpus(docs), encoding="utf-8")
    unmatched_path = Path(args.unmatched or f"{args.out}.unmatched.tsv")
    unmatched_path.write_text("".join(f"{n}\t{s}\n" for n, s in unmatched), encoding="utf-8")
    print(f"{len(generated)} generated, {len(unmatched)} unmatched", file=out)
    return 0


COMMANDS = {
    "validate": _cmd_validate,
    "triples": _cmd_triples,
    "linearize": _cmd_linearize,
    "score": _cmd_score,
    "fine": _cmd_fine,
    "split": _cmd_split,
    "mix": _cmd_mix,
    "curve": _cmd_curve,
    "iaa": _cmd_iaa,
    "templatize": _cmd_templatize,
}


def dispatch(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return COMMANDS[args.command](args, out, err)
    except (AmrError, ValueError) as e:
        print(f"amr-kit {args.command}: {e}", file=err)
        return 1


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()

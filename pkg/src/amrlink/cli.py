"""Command-line entry point.

Subcommands: gen-ds, build-alignments, link, eval, ablate, convert-nt.
Exit codes: 0 success, 1 partial failure, 2 usage or input error.
Logs go to stderr; data goes to files or stdout only.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from pathlib import Path

from . import __version__
from .aggregate import evaluate, read_gold, read_predictions
from .alignment import build_table, load_aliases
from .amr import parse_penman
from .ds import DsConfig, generate, read_corpus, read_examples, write_examples
from .kb import KbFormatError, convert_nt, load_kb
from .pipeline import (
    ConfigError,
    PipelineConfig,
    Resources,
    link_question,
    predictions_with_scorers,
    read_questions,
)
from .scorers import EmbeddingTable

log = logging.getLogger("amrlink")


def _fail(message: str, code: int = 2) -> int:
    log.error(message)
    return code


def _config_from_args(args) -> PipelineConfig:
    if getattr(args, "config", None):
        config = PipelineConfig.from_file(args.config)
    else:
        config = PipelineConfig()
    for attr, flag in [
        ("kb", "kb"), ("alignment_table", "table"), ("embeddings", "embeddings"),
    ]:
        value = getattr(args, flag, None)
        if value:
            setattr(config, attr, Path(value))
    if getattr(args, "scorers", None):
        config.scorers = tuple(s.strip() for s in args.scorers.split(",") if s.strip())
    for attr in ("theta", "min_examples", "triple_limit", "k"):
        value = getattr(args, attr, None)
        if value is not None:
            setattr(config, attr, value)
    config.validate()
    return config


def _require_files(*paths) -> None:
    for p in paths:
        if p is None:
            raise ConfigError("a required path is missing (see --config and flags)")
        if not Path(p).exists():
            raise FileNotFoundError(f"no such file: {p}")


def cmd_gen_ds(args) -> int:
    config = _config_from_args(args)
    _require_files(config.kb, args.corpus)
    kb = load_kb(config.kb, config.labels, config.hierarchy)
    corpus = read_corpus(args.corpus)
    ds_config = DsConfig(min_examples=config.min_examples, triple_limit=config.triple_limit)
    examples = list(generate(kb, corpus, ds_config))
    n = write_examples(examples, args.out)
    relations = sorted({ex.relation for ex in examples})
    skipped = len(kb.relations()) - len(relations)
    print(
        f"wrote {n} examples for {len(relations)} relations "
        f"({skipped} relations below threshold) to {args.out}",
        file=sys.stderr,
    )
    return 0


def cmd_build_alignments(args) -> int:
    config = _config_from_args(args)
    _require_files(config.kb, args.ds, args.amr)
    kb = load_kb(config.kb, config.labels, config.hierarchy)
    examples = read_examples(args.ds)
    graphs = []
    text = Path(args.amr).read_text(encoding="utf-8")
    blocks = [b for b in re.split(r"\n\s*\n", text) if b.strip()]
    if len(blocks) != len(examples):
        return _fail(
            f"{args.ds} has {len(examples)} records but {args.amr} has {len(blocks)} graphs"
        )
    for block in blocks:
        try:
            graphs.append(parse_penman(block))
        except Exception as exc:
            log.warning("unparseable graph skipped: %s", exc)
            graphs.append(None)
    emb = EmbeddingTable.load(config.embeddings) if config.embeddings else None
    aliases = load_aliases(config.frame_aliases) if config.frame_aliases else {}
    table = build_table(
        zip(examples, graphs), kb, emb=emb, aliases=aliases,
        theta=config.theta, min_obs=config.min_constraint_obs,
    )
    table.save(args.out)
    n_preds = len(table.counts)
    n_aligned = sum(sum(rels.values()) for rels in table.counts.values())
    print(
        f"aligned {n_aligned} examples onto {n_preds} predicates "
        f"({table.skipped} skipped) -> {args.out}",
        file=sys.stderr,
    )
    return 0


def cmd_link(args) -> int:
    config = _config_from_args(args)
    _require_files(config.kb, args.questions)
    resources = Resources.load(config)
    questions = read_questions(args.questions)
    failures = 0
    with open(args.out, "w", encoding="utf-8") as fh:
        for record in questions:
            result = link_question(record, resources)
            if result.get("error"):
                failures += 1
            fh.write(json.dumps(result, sort_keys=True, ensure_ascii=False) + "\n")
    print(f"linked {len(questions) - failures}/{len(questions)} questions -> {args.out}", file=sys.stderr)
    if questions and failures == len(questions):
        return 1
    return 0


def cmd_eval(args) -> int:
    _require_files(args.pred, args.gold)
    predictions = read_predictions(args.pred)
    gold = read_gold(args.gold)
    report = evaluate(predictions, gold, micro=args.micro)
    if args.out:
        Path(args.out).write_text(json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n")
    print(report.to_text())
    return 0


def cmd_ablate(args) -> int:
    config = _config_from_args(args)
    _require_files(config.kb, args.questions, args.gold)
    resources = Resources.load(config)
    questions = read_questions(args.questions)
    gold = read_gold(args.gold)
    results = {q.id: link_question(q, resources) for q in questions}
    enabled = [s.name for s in resources.scorers]

    rows = []
    variants = [("full", list(enabled))]
    for name in enabled:
        variants.append((f"w/o {name}", [n for n in enabled if n != name]))
    for label, subset in variants:
        preds = {qid: predictions_with_scorers(res, subset, config.k) for qid, res in results.items()}
        report = evaluate(preds, gold, micro=args.micro)
        rows.append((label, report))

    width = max(len(label) for label, _ in rows)
    print(f"{'configuration'.ljust(width)}  P       R       F1")
    for label, report in rows:
        print(f"{label.ljust(width)}  {report.precision:.4f}  {report.recall:.4f}  {report.f1:.4f}")
    if args.out:
        payload = {
            label: {"precision": r.precision, "recall": r.recall, "f1": r.f1} for label, r in rows
        }
        Path(args.out).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_convert_nt(args) -> int:
    _require_files(args.nt)
    prefixes = {}
    for spec in args.prefix or ():
        name, _, expansion = spec.partition("=")
        if not name or not expansion:
            return _fail(f"--prefix expects name=iri, got {spec!r}")
        prefixes[name] = expansion
    tsv = convert_nt(Path(args.nt).read_text(encoding="utf-8"), prefixes)
    Path(args.out).write_text(tsv, encoding="utf-8")
    print(f"converted {args.nt} -> {args.out}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="amrlink", description=__doc__)
    parser.add_argument("--version", action="version", version=f"amrlink {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        if config:
            p.add_argument("--config", help="TOML pipeline configuration")
            p.add_argument("--kb", help="triples TSV (overrides config)")

    p = sub.add_parser("gen-ds", help="generate distant-supervision examples")
    common(p)
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--min-examples", dest="min_examples", type=int)
    p.add_argument("--limit", dest="triple_limit", type=int)
    p.set_defaults(func=cmd_gen_ds)

    p = sub.add_parser("build-alignments", help="build the predicate/relation alignment table")
    common(p)
    p.add_argument("--ds", required=True, help="DS examples JSONL")
    p.add_argument("--amr", required=True, help="PENMAN parses, blank-line separated, index-paired")
    p.add_argument("--out", required=True)
    p.add_argument("--embeddings")
    p.add_argument("--theta", type=float)
    p.set_defaults(func=cmd_build_alignments)

    p = sub.add_parser("link", help="link question relations")
    common(p)
    p.add_argument("--questions", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--table", help="alignment table JSON (overrides config)")
    p.add_argument("--k", type=int)
    p.add_argument("--scorers", help="comma list: align,lexical,kb,neural")
    p.set_defaults(func=cmd_link)

    p = sub.add_parser("eval", help="precision/recall/F1 against gold relations")
    p.add_argument("--pred", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--micro", action="store_true", help="micro-average instead of macro")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("ablate", help="leave-one-scorer-out comparison")
    common(p)
    p.add_argument("--questions", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--table")
    p.add_argument("--k", type=int)
    p.add_argument("--scorers")
    p.add_argument("--micro", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ablate)

    p = sub.add_parser("convert-nt", help="N-Triples to the TSV triple format")
    p.add_argument("--nt", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--prefix", action="append", help="name=iri, repeatable")
    p.set_defaults(func=cmd_convert_nt)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (ConfigError, FileNotFoundError, KbFormatError, ValueError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())

"""End-to-end question linking: resources, per-question scoring, prediction.

A question record carries its PENMAN parse and optional entity
annotations and answer type.  Linking decomposes the graph, grounds
the triples, lets every enabled scorer rate the candidate pool per
triple, and aggregates normalized scores into a ranked relation list;
predictions are the union of the top-k relations over all triples.
"""

from __future__ import annotations

import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .aggregate import aggregate
from .alignment import AlignmentTable, load_aliases
from .amr import parse_penman, recover_spans
from .kb import KbStore, load_kb
from .metadata import LinkedTriple, attach_answer_type, ground, link_entities, load_type_mapping
from .scorers import (
    AlignmentScorer,
    EmbeddingTable,
    KbConnectionScorer,
    LexicalScorer,
    NeuralClient,
    NeuralScorer,
    NeuralStub,
)
from .triples import decompose

log = logging.getLogger(__name__)

SCORER_NAMES = ("align", "lexical", "kb", "neural")
CANDIDATE_EXCLUDED = {"rdf:type", "rdfs:label"}


class ConfigError(Exception):
    pass


@dataclass
class PipelineConfig:
    kb: Optional[Path] = None
    labels: Optional[Path] = None
    hierarchy: Optional[Path] = None
    embeddings: Optional[Path] = None
    type_mapping: Optional[Path] = None
    frame_aliases: Optional[Path] = None
    alignment_table: Optional[Path] = None
    scorers: tuple[str, ...] = SCORER_NAMES
    theta: float = 0.10
    min_constraint_obs: int = 3
    min_examples: int = 10
    triple_limit: int = 1000
    k: int = 1
    neural_endpoint: Optional[str] = None
    neural_stub: Optional[Path] = None

    def validate(self) -> None:
        if not 0.0 < self.theta <= 1.0:
            raise ConfigError(f"theta must be in (0, 1], got {self.theta}")
        if self.triple_limit < 1:
            raise ConfigError(f"triple limit must be >= 1, got {self.triple_limit}")
        if self.k < 1:
            raise ConfigError(f"k must be >= 1, got {self.k}")
        for name in self.scorers:
            if name not in SCORER_NAMES:
                raise ConfigError(f"unknown scorer {name!r}; known: {', '.join(SCORER_NAMES)}")

    @classmethod
    def from_file(cls, path) -> "PipelineConfig":
        path = Path(path)
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
        base = path.parent
        paths = data.get("paths", {})
        params = data.get("params", {})
        neural = data.get("neural", {})

        def resolve(key):
            return (base / paths[key]) if key in paths else None

        config = cls(
            kb=resolve("kb"),
            labels=resolve("labels"),
            hierarchy=resolve("hierarchy"),
            embeddings=resolve("embeddings"),
            type_mapping=resolve("type_mapping"),
            frame_aliases=resolve("frame_aliases"),
            alignment_table=resolve("alignment_table"),
            scorers=tuple(data.get("scorers", {}).get("enabled", SCORER_NAMES)),
            theta=params.get("theta", 0.10),
            min_constraint_obs=params.get("min_constraint_obs", 3),
            min_examples=params.get("min_examples", 10),
            triple_limit=params.get("triple_limit", 1000),
            k=params.get("k", 1),
            neural_endpoint=neural.get("endpoint"),
            neural_stub=(base / neural["stub"]) if "stub" in neural else None,
        )
        config.validate()
        return config


@dataclass
class QuestionRecord:
    id: str
    text: str
    amr: str
    entities: tuple[tuple[str, str], ...] = ()
    answer_type: Optional[str] = None
    gold_relations: tuple[str, ...] = ()

    @classmethod
    def from_json(cls, rec: dict) -> "QuestionRecord":
        return cls(
            id=str(rec["id"]),
            text=rec["text"],
            amr=rec["amr"],
            entities=tuple((e["surface"], e["iri"]) for e in rec.get("entities", ())),
            answer_type=rec.get("answer_type"),
            gold_relations=tuple(rec.get("gold_relations", ())),
        )


def read_questions(path) -> list[QuestionRecord]:
    out = []
    with open(Path(path), encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                out.append(QuestionRecord.from_json(json.loads(line)))
            except (json.JSONDecodeError, KeyError) as exc:
                raise ValueError(f"{path}:{lineno}: bad question record ({exc})") from exc
    return out


@dataclass
class Resources:
    config: PipelineConfig
    kb: KbStore
    emb: Optional[EmbeddingTable] = None
    table: Optional[AlignmentTable] = None
    type_mapping: dict = field(default_factory=dict)
    aliases: dict = field(default_factory=dict)
    scorers: list = field(default_factory=list)

    @classmethod
    def load(cls, config: PipelineConfig) -> "Resources":
        config.validate()
        if config.kb is None:
            raise ConfigError("a kb path is required")
        res = cls(config=config, kb=load_kb(config.kb, config.labels, config.hierarchy))
        if config.embeddings is not None:
            res.emb = EmbeddingTable.load(config.embeddings)
        if config.alignment_table is not None and Path(config.alignment_table).exists():
            res.table = AlignmentTable.load(config.alignment_table)
        if config.type_mapping is not None:
            res.type_mapping = load_type_mapping(config.type_mapping)
        if config.frame_aliases is not None:
            res.aliases = load_aliases(config.frame_aliases)
        for name in config.scorers:
            scorer = res._make_scorer(name)
            if scorer is not None:
                res.scorers.append(scorer)
        return res

    def _make_scorer(self, name: str):
        if name == "align":
            if self.table is None:
                log.warning("alignment scorer enabled but no table loaded; skipping")
                return None
            return AlignmentScorer(self.table)
        if name == "lexical":
            if self.emb is None:
                log.warning("lexical scorer enabled but no embeddings loaded; skipping")
                return None
            return LexicalScorer(self.emb)
        if name == "kb":
            return KbConnectionScorer(self.kb)
        if name == "neural":
            if self.config.neural_stub is not None:
                return NeuralScorer(NeuralStub.load(self.config.neural_stub))
            if self.config.neural_endpoint:
                return NeuralScorer(NeuralClient(self.config.neural_endpoint))
            log.warning("neural scorer enabled but neither stub nor endpoint configured; skipping")
            return None
        raise ConfigError(f"unknown scorer {name!r}")

    def candidate_pool(self) -> list[str]:
        return [r for r in self.kb.relations() if r not in CANDIDATE_EXCLUDED]


def _grounding_json(g) -> Optional[dict]:
    if g is None:
        return None
    return {"kind": g.kind, "iri": g.iri}


def link_question(record: QuestionRecord, resources: Resources, k: Optional[int] = None) -> dict:
    """Per-question result: linked triples, per-scorer scores, ranking.

    Failures are captured in the result's ``error`` field with empty
    predictions rather than raised, so one bad question cannot sink a
    batch run.
    """
    k = resources.config.k if k is None else k
    try:
        graph = recover_spans(parse_penman(record.amr), record.text)
        links = link_entities(record.text, graph, record.entities, resources.kb)
        answer_type = attach_answer_type(graph, record.answer_type, resources.kb)
        linked = ground(
            decompose(graph), graph, links, resources.type_mapping, resources.kb, answer_type
        )
    except Exception as exc:  # per-question degradation contract
        log.warning("question %s failed at %s: %s", record.id, type(exc).__name__, exc)
        return {"id": record.id, "text": record.text, "error": str(exc), "triples": [], "predictions": []}

    pool = resources.candidate_pool()
    triples_out = []
    predictions: set[str] = set()
    for lt in linked:
        scores = {s.name: s.score(lt, record.text, pool) for s in resources.scorers}
        ranked = aggregate(scores)
        top = [r for r, _ in ranked[:k]]
        predictions.update(top)
        triples_out.append(
            {
                "subject": lt.triple.subject,
                "subject_surface": lt.triple.subject_surface,
                "predicate": lt.triple.predicate.canonical,
                "object": lt.triple.object,
                "object_surface": lt.triple.object_surface,
                "subject_grounding": _grounding_json(lt.subject),
                "object_grounding": _grounding_json(lt.object),
                "scores": {name: dict(sorted(m.items())) for name, m in scores.items()},
                "ranked": [[r, s] for r, s in ranked],
                "top": top,
            }
        )
    return {
        "id": record.id,
        "text": record.text,
        "triples": triples_out,
        "predictions": sorted(predictions),
    }


def predict(record: QuestionRecord, resources: Resources, k: Optional[int] = None) -> set[str]:
    """Union of the top-k aggregated relations over the question's triples."""
    return set(link_question(record, resources, k=k)["predictions"])


def predictions_with_scorers(result: dict, enabled: Sequence[str], k: int) -> set[str]:
    """Re-derive predictions from stored raw scores for a scorer subset.

    Lets ablation reuse one linking pass; with all scorers enabled this
    reproduces the original predictions exactly.
    """
    predictions: set[str] = set()
    for t in result.get("triples", ()):
        subset = {name: scores for name, scores in t["scores"].items() if name in enabled}
        ranked = aggregate(subset)
        predictions.update(r for r, _ in ranked[:k])
    return predictions

"""Statistical alignment between AMR binary predicates and KB relations.

Each distant-supervision example contributes one alignment when some
decomposed AMR triple of its sentence matches the example's subject
and object mentions.  Counts accumulate per (predicate, relation);
candidate scores combine the count ratio with an inverse-predicate-
frequency penalty so promiscuous relations rank lower:

    score(p, r) = (c_r / max_c) * 1 / (1 + ln(inv_pred_count(r)))

Type constraints induced from the observed role fillers filter out
noisy alignments before counting.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .amr import AmrGraph
from .ds import DsExample
from .kb import KbStore, label_tokens
from .kernels import max_cosine
from .metadata import fold
from .triples import AmrPredicate, decompose

log = logging.getLogger(__name__)

Observation = tuple[str, Optional[str], Optional[str]]  # canonical pred, subj type, obj type


@dataclass
class AlignmentTable:
    counts: dict[str, dict[str, int]] = field(default_factory=dict)
    inv_pred_count: dict[str, int] = field(default_factory=dict)
    constraints: dict[str, dict[str, dict[str, int]]] = field(default_factory=dict)
    theta: float = 0.10
    min_obs: int = 3
    skipped: int = 0

    def add(self, predicate: str, relation: str, n: int = 1) -> None:
        self.counts.setdefault(predicate, {})
        self.counts[predicate][relation] = self.counts[predicate].get(relation, 0) + n

    def recompute_inverse_counts(self) -> None:
        inv: dict[str, int] = {}
        for rels in self.counts.values():
            for r in rels:
                inv[r] = inv.get(r, 0) + 1
        self.inv_pred_count = inv

    def admissible(self, predicate: str, position: str) -> Optional[dict[str, int]]:
        """Admissible type frequencies for subject|object, None if unconstrained."""
        freqs = self.constraints.get(predicate, {}).get(position)
        if not freqs:
            return None
        total = sum(freqs.values())
        if total < self.min_obs:
            return None
        kept = {t: c for t, c in freqs.items() if c / total >= self.theta}
        return kept or None

    def candidates(self, predicate: AmrPredicate | str) -> list[tuple[str, float]]:
        """Scored relations for a predicate, best first; empty if unseen."""
        key = predicate.canonical if isinstance(predicate, AmrPredicate) else predicate
        rels = self.counts.get(key)
        if not rels:
            return []
        max_c = max(rels.values())
        scored = []
        for r, c in rels.items():
            penalty = 1.0 / (1.0 + math.log(self.inv_pred_count.get(r, 1)))
            scored.append((r, (c / max_c) * penalty))
        scored.sort(key=lambda rs: (-rs[1], rs[0]))
        return scored

    def to_json(self) -> dict:
        return {
            "predicates": {
                p: [{"relation": r, "count": c} for r, c in sorted(rels.items())]
                for p, rels in sorted(self.counts.items())
            },
            "inv_pred_count": dict(sorted(self.inv_pred_count.items())),
            "constraints": {
                p: {pos: dict(sorted(freqs.items())) for pos, freqs in sorted(by_pos.items())}
                for p, by_pos in sorted(self.constraints.items())
            },
            "meta": {"theta": self.theta, "min_obs": self.min_obs, "skipped": self.skipped},
        }

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path) -> "AlignmentTable":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        table = cls(
            counts={
                p: {row["relation"]: row["count"] for row in rows}
                for p, rows in data.get("predicates", {}).items()
            },
            constraints={
                p: {pos: dict(freqs) for pos, freqs in by_pos.items()}
                for p, by_pos in data.get("constraints", {}).items()
            },
            theta=data.get("meta", {}).get("theta", 0.10),
            min_obs=data.get("meta", {}).get("min_obs", 3),
            skipped=data.get("meta", {}).get("skipped", 0),
        )
        table.inv_pred_count = dict(data.get("inv_pred_count", {}))
        if not table.inv_pred_count:
            table.recompute_inverse_counts()
        return table


def _mention_matches(surface: str, mention_text: str) -> bool:
    a, b = fold(surface), fold(mention_text)
    return bool(a) and bool(b) and (a in b or b in a)


def load_aliases(path) -> dict[str, list[str]]:
    """TSV rows ``frame <TAB> alias|alias|...``."""
    out: dict[str, list[str]] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            raise ValueError(f"{path}:{lineno}: expected 2 columns")
        out[cols[0].strip()] = [a.strip() for a in cols[1].split("|") if a.strip()]
    return out


def disambiguate(candidates: set[str], frame_aliases: Sequence[str], emb) -> str:
    """Pick the relation lexically closest to the frame's aliases.

    Similarity is the same max-pooled embedding cosine the lexical
    scorer uses; ties and an empty alias list fall back to IRI order.
    """
    ordered = sorted(candidates)
    if len(ordered) == 1:
        return ordered[0]
    alias_tokens = [t for phrase in frame_aliases for t in phrase.lower().split()]
    if not alias_tokens:
        log.warning("no aliases available, picking %s by IRI order", ordered[0])
        return ordered[0]
    alias_matrix = emb.matrix_for(alias_tokens)
    best_rel, best_sim = ordered[0], -math.inf
    for rel in ordered:
        sim = max_cosine(alias_matrix, emb.matrix_for(label_tokens(rel)))
        if sim > best_sim:
            best_rel, best_sim = rel, sim
    return best_rel


def align_example(
    ex: DsExample,
    graph: AmrGraph,
    kb: Optional[KbStore] = None,
    aliases: Optional[dict[str, list[str]]] = None,
    emb=None,
) -> list[tuple[AmrPredicate, str]]:
    """Alignments contributed by one example's sentence graph.

    Every decomposed triple whose endpoint surfaces match the example's
    subject and object mentions yields one (predicate, relation) pair.
    When the KB connects the entity pair with several relations, the
    lexically closest one to the frame's aliases is used instead of the
    example's label.
    """
    subject_text = ex.subject_text()
    object_text = ex.object_text()
    out = []
    for triple in decompose(graph):
        if not _mention_matches(triple.subject_surface, subject_text):
            continue
        if not _mention_matches(triple.object_surface, object_text):
            continue
        relation = ex.relation
        if kb is not None:
            connected = kb.relations_between(ex.subject.iri, ex.object.iri)
            if len(connected) > 1 and emb is not None:
                frame_aliases = (aliases or {}).get(triple.predicate.frame, [triple.predicate.lemma])
                relation = disambiguate(connected, frame_aliases, emb)
        out.append((triple.predicate, relation))
    return out


def induce_constraints(observations: Iterable[Observation]) -> dict[str, dict[str, dict[str, int]]]:
    """Frequency tables of observed endpoint types per predicate role."""
    table: dict[str, dict[str, dict[str, int]]] = {}
    for pred, subj_type, obj_type in observations:
        slot = table.setdefault(pred, {"subject": {}, "object": {}})
        if subj_type is not None:
            slot["subject"][subj_type] = slot["subject"].get(subj_type, 0) + 1
        if obj_type is not None:
            slot["object"][obj_type] = slot["object"].get(obj_type, 0) + 1
    return table


def _passes_constraints(table: AlignmentTable, kb: KbStore, pred: str,
                        subj_type: Optional[str], obj_type: Optional[str]) -> bool:
    for position, t in (("subject", subj_type), ("object", obj_type)):
        if t is None:
            continue
        admissible = table.admissible(pred, position)
        if admissible is None:
            continue
        if not any(t == a or kb.is_compatible_type(t, a) for a in admissible):
            return False
    return True


def build_table(
    pairs: Iterable[tuple[DsExample, Optional[AmrGraph]]],
    kb: KbStore,
    emb=None,
    aliases: Optional[dict[str, list[str]]] = None,
    theta: float = 0.10,
    min_obs: int = 3,
) -> AlignmentTable:
    """Accumulate alignments, induce type constraints, filter, count.

    ``pairs`` carries each example with its sentence's AMR graph; a
    None graph marks a failed parse and is counted as skipped.
    """
    table = AlignmentTable(theta=theta, min_obs=min_obs)
    raw: list[tuple[str, str, Optional[str], Optional[str]]] = []
    observations: list[Observation] = []
    for ex, graph in pairs:
        if graph is None:
            table.skipped += 1
            continue
        subj_type = kb.most_specific_type(ex.subject.iri)
        obj_type = kb.most_specific_type(ex.object.iri)
        for pred, relation in align_example(ex, graph, kb=kb, aliases=aliases, emb=emb):
            raw.append((pred.canonical, relation, subj_type, obj_type))
            observations.append((pred.canonical, subj_type, obj_type))

    table.constraints = induce_constraints(observations)
    for pred, relation, subj_type, obj_type in raw:
        if _passes_constraints(table, kb, pred, subj_type, obj_type):
            table.add(pred, relation)
    table.recompute_inverse_counts()
    if table.skipped:
        log.info("skipped %d examples with unparseable sentences", table.skipped)
    return table

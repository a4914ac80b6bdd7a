"""Grounding of AMR triples against the KB.

Named-entity nodes are linked via caller-provided annotations first
(longest surface wins), then by exact case-insensitive label lookup;
nominal concepts map to KB classes through the editable AMR-type
mapping or class-label lookup; the ``amr-unknown`` node carries the
question's answer type.
"""

from __future__ import annotations

import logging
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .amr import AmrGraph, UNKNOWN_CONCEPT
from .kb import KbStore
from .triples import AmrTriple

log = logging.getLogger(__name__)


class MetadataError(Exception):
    pass


@dataclass(frozen=True)
class Grounding:
    kind: str  # 'entity' | 'class' | 'unknown'
    iri: Optional[str]  # entity or class IRI; for 'unknown', the answer-type class

    @property
    def is_entity(self) -> bool:
        return self.kind == "entity"


@dataclass(frozen=True)
class LinkedTriple:
    triple: AmrTriple
    subject: Optional[Grounding]
    object: Optional[Grounding]


def fold(text: str) -> str:
    """Case- and diacritic-folded, whitespace-collapsed form."""
    text = unicodedata.normalize("NFD", text)
    text = "".join(c for c in text if not unicodedata.combining(c))
    return " ".join(text.casefold().split())


def _contains_either(a: str, b: str) -> bool:
    fa, fb = fold(a), fold(b)
    return bool(fa) and bool(fb) and (fa in fb or fb in fa)


def load_type_mapping(path) -> dict[str, str]:
    """TSV rows ``amr-type <TAB> kb-class``; later rows do not override."""
    mapping: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            raise MetadataError(f"{path}:{lineno}: expected 2 columns")
        mapping.setdefault(cols[0].strip(), cols[1].strip())
    return mapping


def link_entities(
    question: str,
    graph: AmrGraph,
    annotations: Optional[Sequence[tuple[str, str]]],
    kb: KbStore,
) -> dict[str, str]:
    """Map named-entity nodes to KB entities.

    Priority per node: matching annotation (longest surface), then
    exact case-insensitive label lookup over the store.  Two
    annotations covering the same surface with different IRIs are a
    hard error.
    """
    annotations = list(annotations or ())
    by_surface: dict[str, str] = {}
    for surface, iri in annotations:
        key = fold(surface)
        if key in by_surface and by_surface[key] != iri:
            raise MetadataError(
                f"conflicting annotations for {surface!r}: {by_surface[key]} vs {iri}"
            )
        by_surface[key] = iri

    links: dict[str, str] = {}
    for node in graph.nodes:
        if not node.name:
            continue
        node_keys = [node.name]
        if node.span is not None:
            node_keys.append(node.span.text)
        matches = [
            (surface, iri)
            for surface, iri in annotations
            if any(_contains_either(surface, key) for key in node_keys)
        ]
        if matches:
            matches.sort(key=lambda m: (-len(m[0]), m[0]))
            links[node.id] = matches[0][1]
            continue
        hits = kb.iris_for_label(node.name)
        if hits:
            links[node.id] = hits[0]
    return links


def map_type(concept: str, mapping: dict[str, str], kb: KbStore) -> Optional[str]:
    """KB class for an AMR NE type or nominal concept, if any.

    NE types go through the mapping table; nominal concepts fall back
    to class-label lookup with singular/plural folding.
    """
    if concept in mapping:
        return mapping[concept]
    classes = kb.classes()
    for cand in (concept, concept[:-1] if concept.endswith("s") else None):
        if not cand:
            continue
        hits = [iri for iri in kb.iris_for_label(cand.replace("-", " ")) if iri in classes]
        if hits:
            return hits[0]
    return None


def attach_answer_type(graph: AmrGraph, declared: Optional[str], kb: KbStore) -> Optional[str]:
    """Declared answer type, else the hierarchy root."""
    if declared:
        if declared not in kb.classes():
            log.warning("declared answer type %s not in hierarchy", declared)
        return declared
    return kb.hierarchy_root()


def ground(
    triples: Sequence[AmrTriple],
    graph: AmrGraph,
    links: dict[str, str],
    mapping: dict[str, str],
    kb: KbStore,
    answer_type: Optional[str],
) -> list[LinkedTriple]:
    """Attach a grounding to both endpoints of every triple."""

    def ground_node(node_id: str) -> Optional[Grounding]:
        node = graph.node(node_id)
        if node.concept == UNKNOWN_CONCEPT:
            return Grounding("unknown", answer_type)
        if node_id in links:
            return Grounding("entity", links[node_id])
        if node.is_constant or node.is_frame:
            return None
        cls = map_type(node.concept, mapping, kb)
        if cls is not None:
            return Grounding("class", cls)
        return None

    out = []
    for t in triples:
        out.append(LinkedTriple(triple=t, subject=ground_node(t.subject), object=ground_node(t.object)))
    return out

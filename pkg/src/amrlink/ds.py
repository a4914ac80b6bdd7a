"""Distant-supervision example generation.

For each KB relation, triples are ranked by the sum of subject and
object in-degrees (central entities first), capped, and each triple is
matched to its first acceptable co-occurrence sentence: both mentions
present, at least 4 tokens, at least one verb, and non-overlapping
mention spans.  "First" prefers the subject entity's own document,
falling back to the earliest passing sentence anywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .kb import KbStore, local_name


@dataclass(frozen=True)
class Mention:
    iri: str
    start: int
    end: int


@dataclass(frozen=True)
class CorpusSentence:
    doc_id: str
    position: int
    text: str
    mentions: tuple[Mention, ...]
    tokens: tuple[tuple[str, str], ...]  # (text, POS tag)

    def first_mention(self, iri: str) -> Optional[Mention]:
        for m in self.mentions:
            if m.iri == iri:
                return m
        return None


@dataclass(frozen=True)
class DsExample:
    text: str
    subject: Mention
    object: Mention
    relation: str

    def to_json(self) -> dict:
        return {
            "text": self.text,
            "subj": {"iri": self.subject.iri, "start": self.subject.start, "end": self.subject.end},
            "obj": {"iri": self.object.iri, "start": self.object.start, "end": self.object.end},
            "relation": self.relation,
        }

    @classmethod
    def from_json(cls, record: dict) -> "DsExample":
        return cls(
            text=record["text"],
            subject=Mention(record["subj"]["iri"], record["subj"]["start"], record["subj"]["end"]),
            object=Mention(record["obj"]["iri"], record["obj"]["start"], record["obj"]["end"]),
            relation=record["relation"],
        )

    def subject_text(self) -> str:
        return self.text[self.subject.start : self.subject.end]

    def object_text(self) -> str:
        return self.text[self.object.start : self.object.end]


@dataclass(frozen=True)
class DsConfig:
    min_examples: int = 10
    triple_limit: int = 1000


@dataclass
class CorpusIndex:
    sentences: list[CorpusSentence]
    by_entity: dict = field(default_factory=dict)

    @classmethod
    def build(cls, sentences: Iterable[CorpusSentence]) -> "CorpusIndex":
        idx = cls(sentences=list(sentences))
        for sent in idx.sentences:
            for m in sent.mentions:
                idx.by_entity.setdefault(m.iri, []).append(sent)
        return idx

    def with_entity(self, iri: str) -> list[CorpusSentence]:
        return self.by_entity.get(iri, [])


def read_corpus(path) -> list[CorpusSentence]:
    sentences = []
    with open(Path(path), encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: bad JSON ({exc})") from exc
            sentences.append(
                CorpusSentence(
                    doc_id=rec["doc_id"],
                    position=rec["position"],
                    text=rec["text"],
                    mentions=tuple(Mention(m["iri"], m["start"], m["end"]) for m in rec.get("mentions", ())),
                    tokens=tuple((t[0], t[1]) for t in rec.get("tokens", ())),
                )
            )
    return sentences


def select_triples(kb: KbStore, relation: str, limit: int = 1000) -> list[tuple[str, str]]:
    """Triples of the relation, highest in-degree sum first, capped."""
    triples = kb.triples_of(relation)
    triples.sort(key=lambda so: (-kb.in_degree_sum(*so), so))
    return triples[:limit]


def sentence_passes_filters(sentence: CorpusSentence, s: str, o: str) -> bool:
    """The four acceptance conditions for a candidate sentence."""
    sm = sentence.first_mention(s)
    om = sentence.first_mention(o)
    if sm is None or om is None or sm == om:
        return False
    if len(sentence.tokens) < 4:
        return False
    if not any(tag.startswith("V") for _, tag in sentence.tokens):
        return False
    if sm.start < om.end and om.start < sm.end:  # spans intersect
        return False
    return True


def first_cooccurrence(index: CorpusIndex, s: str, o: str) -> Optional[CorpusSentence]:
    """Earliest passing sentence, preferring the subject's own document."""
    candidates = [sent for sent in index.with_entity(s) if sentence_passes_filters(sent, s, o)]
    if not candidates:
        return None
    own_doc = local_name(s)
    own = sorted((c for c in candidates if c.doc_id == own_doc), key=lambda c: c.position)
    if own:
        return own[0]
    return min(candidates, key=lambda c: (c.doc_id, c.position))


def _examples_for_relation(kb: KbStore, index: CorpusIndex, relation: str, limit: int) -> list[DsExample]:
    examples = []
    for s, o in select_triples(kb, relation, limit):
        sent = first_cooccurrence(index, s, o)
        if sent is None:
            continue
        examples.append(
            DsExample(
                text=sent.text,
                subject=sent.first_mention(s),
                object=sent.first_mention(o),
                relation=relation,
            )
        )
    return examples


def select_relations(kb: KbStore, corpus: Iterable[CorpusSentence], min_examples: int = 10,
                     triple_limit: int = 1000) -> list[str]:
    """Relations whose generated example count reaches the threshold.

    A relation with zero corpus matches is always excluded, so the
    effective floor is one example.
    """
    index = corpus if isinstance(corpus, CorpusIndex) else CorpusIndex.build(corpus)
    floor = max(min_examples, 1)
    return [
        r for r in kb.relations()
        if len(_examples_for_relation(kb, index, r, triple_limit)) >= floor
    ]


def generate(kb: KbStore, corpus: Iterable[CorpusSentence], config: DsConfig = DsConfig()) -> Iterator[DsExample]:
    """Stream of at most one example per KB triple, deterministic order.

    Relations whose matched-example count falls below
    ``config.min_examples`` contribute nothing.
    """
    index = corpus if isinstance(corpus, CorpusIndex) else CorpusIndex.build(corpus)
    for relation in kb.relations():
        examples = _examples_for_relation(kb, index, relation, config.triple_limit)
        if len(examples) >= max(config.min_examples, 1):
            yield from examples


def write_examples(examples: Iterable[DsExample], path) -> int:
    n = 0
    with open(Path(path), "w", encoding="utf-8") as fh:
        for ex in examples:
            fh.write(json.dumps(ex.to_json(), sort_keys=True, ensure_ascii=False) + "\n")
            n += 1
    return n


def read_examples(path) -> list[DsExample]:
    out = []
    with open(Path(path), encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                out.append(DsExample.from_json(json.loads(line)))
    return out

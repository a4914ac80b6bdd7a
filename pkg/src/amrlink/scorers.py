"""Relation scorers beyond statistical alignment.

All scorers share one contract: ``score(linked_triple, question,
candidates) -> {relation: raw score >= 0}``; relations they cannot
judge are simply absent and aggregation treats them as zero.  Scorers
hold only immutable resources, so repeated calls are identical and
triples can be scored in parallel.
"""

from __future__ import annotations

import json
import logging
import re
import socket
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .alignment import AlignmentTable
from .kb import KbStore, label_tokens
from .kernels import max_cosine, segmented_max_cosine
from .metadata import Grounding, LinkedTriple
from .triples import AmrPredicate

log = logging.getLogger(__name__)

TOKEN_RE = re.compile(r"[A-Za-z0-9']+")


def tokenize(text: str) -> list[str]:
    """Whitespace/punctuation split, lower-cased, no stemming."""
    return [t.lower() for t in TOKEN_RE.findall(text)]


class EmbeddingTable:
    """Dense word vectors in the textual ``word v1 .. vd`` format."""

    def __init__(self, vectors: dict[str, np.ndarray]):
        if not vectors:
            raise ValueError("empty embedding table")
        dims = {v.shape for v in vectors.values()}
        if len(dims) != 1:
            raise ValueError(f"inconsistent vector dimensions: {sorted(dims)}")
        self.dim = next(iter(dims))[0]
        self._index = {w: i for i, w in enumerate(vectors)}
        self._matrix = np.vstack([vectors[w] for w in vectors]).astype(np.float64)

    @classmethod
    def load(cls, path) -> "EmbeddingTable":
        vectors: dict[str, np.ndarray] = {}
        with open(Path(path), encoding="utf-8") as fh:
            first = fh.readline()
            parts = first.split()
            # optional "count dim" header
            if len(parts) != 2 or not (parts[0].isdigit() and parts[1].isdigit()):
                cls._add_line(vectors, first)
            for line in fh:
                cls._add_line(vectors, line)
        return cls(vectors)

    @staticmethod
    def _add_line(vectors: dict, line: str) -> None:
        parts = line.split()
        if len(parts) < 2:
            return
        vectors[parts[0].casefold()] = np.asarray([float(x) for x in parts[1:]], dtype=np.float64)

    def __contains__(self, word: str) -> bool:
        return word.casefold() in self._index

    def matrix_for(self, tokens: Sequence[str]) -> np.ndarray:
        """Rows for the in-vocabulary tokens; OOV tokens are skipped."""
        rows = [self._index[t.casefold()] for t in tokens if t.casefold() in self._index]
        if not rows:
            return np.zeros((0, self.dim), dtype=np.float64)
        return self._matrix[rows]


def lexical_score(question: str, predicate: AmrPredicate, relation: str, emb: EmbeddingTable) -> float:
    """Max-pooled cosine between relation label tokens and question+lemma tokens.

    0.0 when either side is fully out of vocabulary; otherwise in [-1, 1].
    """
    side_a = emb.matrix_for(label_tokens(relation))
    side_b = emb.matrix_for(tokenize(question) + predicate.lemma.split("-"))
    if side_a.shape[0] == 0 or side_b.shape[0] == 0:
        return 0.0
    return max_cosine(side_a, side_b)


def kb_connection_score(lt: LinkedTriple, relation: str, kb: KbStore) -> float:
    """Soft KB-connection constraint: 1.0, 0.5 or 0.0.

    1.0: the relation connects the grounded entity in the triple's
    direction and the opposite endpoint's grounding (class, answer
    type, or the other entity) checks out; 0.5: direction-correct but
    type-unverified; 0.0 otherwise.  Needs at least one entity
    endpoint; class-only triples score nothing.
    """
    s_ent = lt.subject.iri if lt.subject and lt.subject.kind == "entity" else None
    o_ent = lt.object.iri if lt.object and lt.object.kind == "entity" else None
    if s_ent and o_ent:
        if relation in kb.relations_between(s_ent, o_ent):
            return 1.0
        if relation in kb.relations_of(s_ent, "subject") and relation in kb.relations_of(o_ent, "object"):
            return 0.5
        return 0.0
    if s_ent or o_ent:
        if s_ent:
            entity, direction, other = s_ent, "subject", lt.object
        else:
            entity, direction, other = o_ent, "object", lt.subject
        if relation not in kb.relations_of(entity, direction):
            return 0.0
        other_class = other.iri if other and other.kind in ("class", "unknown") else None
        if other_class and relation in kb.relations_of(entity, direction, endpoint_type=other_class):
            return 1.0
        return 0.5
    return 0.0


def endpoint_descriptor(grounding: Optional[Grounding], surface: str) -> dict:
    """Wire-format endpoint: a surface form, or the unknown marker."""
    if grounding is not None and grounding.kind == "unknown":
        return {"unknown": True}
    return {"surface": surface}


def _stub_key(question: str, subj: dict, obj: dict) -> tuple:
    return (question, subj.get("surface"), obj.get("surface"))


class NeuralStub:
    """Canned service responses keyed by (question, subject, object)."""

    def __init__(self, entries: dict[tuple, dict[str, float]]):
        self.entries = entries

    @classmethod
    def load(cls, path) -> "NeuralStub":
        entries = {}
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        for rec in data:
            key = (rec["question"], rec.get("subj"), rec.get("obj"))
            entries[key] = {r: float(p) for r, p in rec["scores"].items()}
        return cls(entries)

    def query(self, question: str, subj: dict, obj: dict) -> dict[str, float]:
        return dict(self.entries.get(_stub_key(question, subj, obj), {}))


class NeuralClient:
    """Line-delimited JSON client for the relation classifier service."""

    def __init__(self, endpoint: str, timeout: float = 5.0):
        host, _, port = endpoint.rpartition(":")
        self.host = host or "127.0.0.1"
        self.port = int(port)
        self.timeout = timeout

    def query(self, question: str, subj: dict, obj: dict) -> dict[str, float]:
        request = json.dumps({"question": question, "subj": subj, "obj": obj}) + "\n"
        try:
            with socket.create_connection((self.host, self.port), timeout=self.timeout) as conn:
                conn.sendall(request.encode("utf-8"))
                buf = b""
                while not buf.endswith(b"\n"):
                    chunk = conn.recv(4096)
                    if not chunk:
                        break
                    buf += chunk
            response = json.loads(buf.decode("utf-8"))
            scores = response["scores"]
            return {row["relation"]: float(row["p"]) for row in scores}
        except (OSError, ValueError, KeyError, TypeError) as exc:
            log.warning("neural service unavailable or malformed response (%s); skipping", exc)
            return {}


def neural_score(lt: LinkedTriple, question: str, backend) -> dict[str, float]:
    """Distribution from the neural service (or its stub), unchanged.

    Empty when the backend is disabled or unreachable; the pipeline
    degrades to the remaining scorers.
    """
    if backend is None:
        return {}
    subj = endpoint_descriptor(lt.subject, lt.triple.subject_surface)
    obj = endpoint_descriptor(lt.object, lt.triple.object_surface)
    return backend.query(question, subj, obj)


# -- scorer classes under the common contract -------------------------


class AlignmentScorer:
    name = "align"

    def __init__(self, table: AlignmentTable):
        self.table = table

    def score(self, lt: LinkedTriple, question: str, candidates: Sequence[str]) -> dict[str, float]:
        return dict(self.table.candidates(lt.triple.predicate))


class LexicalScorer:
    name = "lexical"

    def __init__(self, emb: EmbeddingTable):
        self.emb = emb

    def score(self, lt: LinkedTriple, question: str, candidates: Sequence[str]) -> dict[str, float]:
        side_b = self.emb.matrix_for(tokenize(question) + lt.triple.predicate.lemma.split("-"))
        if side_b.shape[0] == 0 or not candidates:
            return {}
        mats = [self.emb.matrix_for(label_tokens(r)) for r in candidates]
        offsets = np.zeros(len(mats) + 1, dtype=np.int64)
        for i, m in enumerate(mats):
            offsets[i + 1] = offsets[i] + m.shape[0]
        flat = np.vstack(mats) if offsets[-1] else np.zeros((0, self.emb.dim))
        sims = segmented_max_cosine(side_b, flat, offsets)
        return {r: max(0.0, float(s)) for r, s in zip(candidates, sims)}


class KbConnectionScorer:
    name = "kb"

    def __init__(self, kb: KbStore):
        self.kb = kb

    def score(self, lt: LinkedTriple, question: str, candidates: Sequence[str]) -> dict[str, float]:
        out = {}
        for r in candidates:
            v = kb_connection_score(lt, r, self.kb)
            if v > 0.0:
                out[r] = v
        return out


class NeuralScorer:
    name = "neural"

    def __init__(self, backend):
        self.backend = backend

    def score(self, lt: LinkedTriple, question: str, candidates: Sequence[str]) -> dict[str, float]:
        return neural_score(lt, question, self.backend)

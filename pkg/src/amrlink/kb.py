"""Immutable in-memory knowledge-base index over flat TSV files.

Terms are kept exactly as written (full IRIs or ``prefix:local``
qnames); the store never dereferences them, so fixtures stay
hand-writable.  Objects quoted with ``"`` are literals, typed by
syntactic sniffing (ISO date, integer/decimal, else string).  Entity
types come from ``rdf:type`` rows in the same triple file.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Optional

log = logging.getLogger(__name__)

RDF_TYPE = "rdf:type"

DATE_RE = re.compile(r"^\d{4}-\d{2}(-\d{2})?$")
NUMBER_RE = re.compile(r"^[+-]?\d+(\.\d+)?$")
CAMEL_RE = re.compile(r"(?<=[a-z0-9])(?=[A-Z])")


class KbFormatError(Exception):
    pass


def is_literal(term: str) -> bool:
    return term.startswith('"')


def literal_value(term: str) -> str:
    return term[1:-1] if is_literal(term) else term


def literal_tag(term: str) -> Optional[str]:
    """'date' | 'number' | 'string' for literals, None for IRIs."""
    if not is_literal(term):
        return None
    value = literal_value(term)
    if DATE_RE.match(value):
        return "date"
    if NUMBER_RE.match(value):
        return "number"
    return "string"


def local_name(iri: str) -> str:
    iri = iri.rstrip(">").lstrip("<")
    for sep in ("#", "/", ":"):
        if sep in iri:
            iri = iri.rsplit(sep, 1)[1]
    return iri


def label_tokens(iri: str) -> list[str]:
    """Lower-cased word sequence from the local name (camel-case split)."""
    name = local_name(iri)
    name = re.sub(r"[_\-]+", " ", name)
    name = CAMEL_RE.sub(" ", name)
    tokens = [t.lower() for t in name.split() if t]
    return tokens or [name.lower()]


@dataclass(frozen=True)
class KbRelation:
    iri: str

    @property
    def tokens(self) -> list[str]:
        return label_tokens(self.iri)


def _norm_label(text: str) -> str:
    return " ".join(text.lower().split())


@dataclass(eq=False)  # identity semantics keep the per-store ancestors cache usable
class KbStore:
    triples: list[tuple[str, str, str]] = field(default_factory=list)
    labels: dict[str, list[str]] = field(default_factory=dict)
    parents: dict[str, set[str]] = field(default_factory=dict)  # direct superclasses
    prefixes: dict[str, str] = field(default_factory=dict)

    # indexes, built once by _index()
    _between: dict = field(default_factory=dict, repr=False)
    _subj: dict = field(default_factory=dict, repr=False)  # entity -> [(r, o)]
    _obj: dict = field(default_factory=dict, repr=False)   # entity -> [(r, s)]
    _in_degree: dict = field(default_factory=dict, repr=False)
    _types: dict = field(default_factory=dict, repr=False)
    _label_index: dict = field(default_factory=dict, repr=False)

    def _index(self) -> None:
        for s, r, o in self.triples:
            self._between.setdefault((s, o), set()).add(r)
            self._subj.setdefault(s, []).append((r, o))
            self._obj.setdefault(o, []).append((r, s))
            self._in_degree[o] = self._in_degree.get(o, 0) + 1
            if r == RDF_TYPE:
                self._types.setdefault(s, []).append(o)
        for iri, labels in self.labels.items():
            for lab in labels:
                self._label_index.setdefault(_norm_label(lab), []).append(iri)
        self._check_hierarchy_acyclic()

    def _check_hierarchy_acyclic(self) -> None:
        WHITE, GRAY, BLACK = 0, 1, 2
        color: dict[str, int] = {}

        def visit(c: str):
            color[c] = GRAY
            for p in self.parents.get(c, ()):
                state = color.get(p, WHITE)
                if state == GRAY:
                    raise KbFormatError(f"cycle in class hierarchy through {c!r}")
                if state == WHITE:
                    visit(p)
            color[c] = BLACK

        for c in list(self.parents):
            if color.get(c, WHITE) == WHITE:
                visit(c)

    # -- queries ------------------------------------------------------

    def relations(self) -> list[str]:
        return sorted({r for _, r, _ in self.triples})

    def triples_of(self, relation: str) -> list[tuple[str, str]]:
        return [(s, o) for s, r, o in self.triples if r == relation]

    def relations_between(self, s: str, o: str) -> set[str]:
        return set(self._between.get((s, o), ()))

    def relations_of(self, entity: str, direction: str, endpoint_type: Optional[str] = None) -> set[str]:
        """Relations where entity fills the given position.

        With ``endpoint_type``, only relations observed with an opposite
        endpoint whose type (or supertype) matches the class, or whose
        literal datatype matches a datatype tag.
        """
        if direction == "subject":
            pairs = self._subj.get(entity, ())
        elif direction == "object":
            pairs = self._obj.get(entity, ())
        else:
            raise ValueError(f"direction must be subject|object, got {direction!r}")
        if endpoint_type is None:
            return {r for r, _ in pairs}
        out = set()
        for r, other in pairs:
            if self.endpoint_compatible(other, endpoint_type):
                out.add(r)
        return out

    def endpoint_compatible(self, term: str, constraint: str) -> bool:
        tag = literal_tag(term)
        if tag is not None:
            return tag == constraint
        for cls in self._types.get(term, ()):
            if self.is_compatible_type(cls, constraint):
                return True
        return False

    def in_degree(self, term: str) -> int:
        return self._in_degree.get(term, 0)

    def in_degree_sum(self, s: str, o: str) -> int:
        return self.in_degree(s) + self.in_degree(o)

    def ancestors(self, cls: str) -> set[str]:
        """Reflexive-transitive superclass closure."""
        return self._ancestors_cached(cls)

    @lru_cache(maxsize=None)
    def _ancestors_cached(self, cls: str) -> frozenset:
        out = {cls}
        for p in self.parents.get(cls, ()):
            out |= self._ancestors_cached(p)
        return frozenset(out)

    def is_compatible_type(self, entity_or_class: str, constraint: str) -> bool:
        """True iff the class (or literal datatype tag) satisfies the constraint."""
        if entity_or_class in ("date", "number", "string") or constraint in ("date", "number", "string"):
            return entity_or_class == constraint
        return constraint in self.ancestors(entity_or_class)

    def types_of(self, term: str) -> list[str]:
        tag = literal_tag(term)
        if tag is not None:
            return [tag]
        return list(self._types.get(term, ()))

    def most_specific_type(self, term: str) -> Optional[str]:
        """Deepest declared class (ties broken by IRI), or a literal tag."""
        tag = literal_tag(term)
        if tag is not None:
            return tag
        types = self._types.get(term)
        if not types:
            return None
        return max(types, key=lambda c: (len(self.ancestors(c)), c))

    def classes(self) -> set[str]:
        out = set(self.parents)
        for ps in self.parents.values():
            out |= ps
        for types in self._types.values():
            out |= set(types)
        return out

    def hierarchy_root(self) -> Optional[str]:
        roots = sorted(c for c in self.classes() if not self.parents.get(c))
        return roots[0] if roots else None

    def label_of(self, iri: str) -> Optional[str]:
        labels = self.labels.get(iri)
        return labels[0] if labels else None

    def iris_for_label(self, text: str) -> list[str]:
        return sorted(self._label_index.get(_norm_label(text), ()))


def _read_rows(path: Path, n_cols: int, prefixes: Optional[dict] = None) -> Iterable[tuple]:
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            if line.startswith("@prefix"):
                parts = line.replace("\t", " ").split()
                if len(parts) != 3 or not parts[1].endswith(":"):
                    raise KbFormatError(f"{path}:{lineno}: malformed @prefix line")
                if prefixes is not None:
                    prefixes[parts[1][:-1]] = parts[2].strip("<>")
                continue
            cols = line.split("\t")
            if len(cols) != n_cols:
                raise KbFormatError(
                    f"{path}:{lineno}: expected {n_cols} tab-separated columns, got {len(cols)}"
                )
            yield tuple(c.strip() for c in cols)


def load_kb(triples_file, labels_file=None, hierarchy_file=None) -> KbStore:
    """Load and index a store; the only mutation point."""
    store = KbStore()
    triples_file = Path(triples_file)
    seen = set()
    for s, r, o in _read_rows(triples_file, 3, store.prefixes):
        if (s, r, o) in seen:
            continue
        seen.add((s, r, o))
        store.triples.append((s, r, o))

    if labels_file is not None:
        for iri, label in _read_rows(Path(labels_file), 2):
            store.labels.setdefault(iri, []).append(label)

    if hierarchy_file is not None:
        def resolvable(term: str) -> bool:
            if "//" in term or ":" not in term:
                return True
            return term.split(":", 1)[0] in store.prefixes

        for sub, sup in _read_rows(Path(hierarchy_file), 2):
            bad = [t for t in (sub, sup) if not resolvable(t)]
            if bad:
                log.warning("hierarchy row skipped, unknown IRI(s): %s", ", ".join(bad))
                continue
            store.parents.setdefault(sub, set()).add(sup)
            store.parents.setdefault(sup, store.parents.get(sup, set()))

    store._index()
    return store


NT_LINE_RE = re.compile(
    r'^\s*<(?P<s>[^>]+)>\s+<(?P<p>[^>]+)>\s+'
    r'(?:<(?P<o>[^>]+)>|"(?P<lit>(?:[^"\\]|\\.)*)"(?:\^\^<[^>]*>|@[\w-]+)?)\s*\.\s*$'
)


def convert_nt(nt_text: str, prefixes: dict[str, str]) -> str:
    """N-Triples text -> the 3-column TSV format, contracting known prefixes."""

    def contract(iri: str) -> str:
        for name, expansion in sorted(prefixes.items(), key=lambda kv: -len(kv[1])):
            if iri.startswith(expansion):
                return f"{name}:{iri[len(expansion):]}"
        return iri

    lines = [f"@prefix {name}: {expansion}" for name, expansion in sorted(prefixes.items())]
    for lineno, raw in enumerate(nt_text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        m = NT_LINE_RE.match(raw)
        if not m:
            raise KbFormatError(f"line {lineno}: not a valid N-Triples statement")
        s = contract(m.group("s"))
        p = contract(m.group("p"))
        if p == "http://www.w3.org/1999/02/22-rdf-syntax-ns#type":
            p = RDF_TYPE
        o = contract(m.group("o")) if m.group("o") is not None else '"' + m.group("lit") + '"'
        lines.append("\t".join((s, p, o)))
    return "\n".join(lines) + "\n"

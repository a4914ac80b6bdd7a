"""Binary triple decomposition of AMR graphs.

Each PropBank frame with n role fillers expands into all n*(n-1)
ordered filler pairs, giving subject/object triples whose predicate is
``<frame>.<subject-role>.<object-role>``.  This mirrors the KB's
subject-predicate-object shape; implausible pairs are not pruned here
but die downstream for lack of alignment counts.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .amr import AmrGraph, FrameInstance, frames

_SENSE_TAIL_RE = re.compile(r"(\d\d)$")


@dataclass(frozen=True)
class AmrPredicate:
    frame: str
    subject_role: str
    object_role: str

    @property
    def canonical(self) -> str:
        return f"{self.frame}.{self.subject_role}.{self.object_role}".lower()

    @property
    def lemma(self) -> str:
        """Frame lemma without the numeric sense suffix."""
        return re.sub(r"-\d\d$", "", self.frame)

    @classmethod
    def parse(cls, text: str) -> "AmrPredicate":
        """Read a canonical string; tolerates a hyphen-free sense (``bear02``)."""
        parts = text.lower().split(".")
        if len(parts) != 3:
            raise ValueError(f"not a canonical predicate: {text!r}")
        frame, subj, obj = parts
        if not re.search(r"-\d\d$", frame):
            m = _SENSE_TAIL_RE.search(frame)
            if m and len(frame) > 2:
                frame = frame[: m.start()] + "-" + m.group(1)
        return cls(frame=frame, subject_role=subj, object_role=obj)


@dataclass(frozen=True)
class AmrTriple:
    subject: str
    subject_surface: str
    predicate: AmrPredicate
    object: str
    object_surface: str

    def key(self) -> tuple[str, str, str]:
        return (self.subject, self.predicate.canonical, self.object)


def expand_frame(graph: AmrGraph, frame: FrameInstance) -> list[AmrTriple]:
    """All ordered pairs of distinct fillers of one frame instance.

    Pairs sharing a node are skipped; fewer than two fillers yield an
    empty list.  Output is sorted by (subject role, object role) so the
    expansion is deterministic regardless of edge order.
    """
    fillers = sorted(set(frame.fillers))
    out = []
    for s_role, s_node in fillers:
        for o_role, o_node in fillers:
            if s_node == o_node:
                continue
            out.append(
                AmrTriple(
                    subject=s_node,
                    subject_surface=graph.node(s_node).surface,
                    predicate=AmrPredicate(frame.frame, s_role, o_role),
                    object=o_node,
                    object_surface=graph.node(o_node).surface,
                )
            )
    return out


def decompose(graph: AmrGraph) -> list[AmrTriple]:
    """Union of expand_frame over all frames, deduplicated, stable order."""
    seen = set()
    out = []
    for frame in frames(graph):
        for triple in expand_frame(graph, frame):
            if triple.key() in seen:
                continue
            seen.add(triple.key())
            out.append(triple)
    return out


def to_tsv(triples: list[AmrTriple]) -> str:
    lines = []
    for t in triples:
        lines.append(
            "\t".join([t.subject_surface, t.predicate.canonical, t.object_surface, t.subject, t.object])
        )
    return "\n".join(lines) + ("\n" if lines else "")


def from_tsv(text: str) -> list[AmrTriple]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        cols = line.split("\t")
        if len(cols) != 5:
            raise ValueError(f"line {lineno}: expected 5 columns, got {len(cols)}")
        s_surf, pred, o_surf, s_node, o_node = cols
        out.append(
            AmrTriple(
                subject=s_node,
                subject_surface=s_surf,
                predicate=AmrPredicate.parse(pred),
                object=o_node,
                object_surface=o_surf,
            )
        )
    return out

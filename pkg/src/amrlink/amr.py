"""PENMAN-notation AMR graphs.

Parses PENMAN s-expressions into an immutable, normalized graph:
inverse roles (``:ARG0-of`` etc.) are reversed, variable co-references
are merged into single nodes, and ``:name`` sub-graphs are collapsed
into the parent node's name string.  Frame nodes (PropBank senses such
as ``bear-02``) expose their direct role fillers through
:func:`frames`, which is the substrate for triple decomposition.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Iterator, Optional

FRAME_RE = re.compile(r"-\d\d$")
ARG_ROLE_RE = re.compile(r"^arg\d+$", re.IGNORECASE)
NUMBER_RE = re.compile(r"^[+-]?\d+(\.\d+)?$")
WORD_CHARS = re.compile(r"[A-Za-z0-9]")

UNKNOWN_CONCEPT = "amr-unknown"


class AmrError(Exception):
    """Base error for AMR parsing and queries."""


class PenmanParseError(AmrError):
    def __init__(self, message: str, token: Optional[str] = None, pos: Optional[int] = None):
        self.token = token
        self.pos = pos
        detail = message
        if token is not None:
            detail += f" (token {token!r}"
            if pos is not None:
                detail += f" at {pos}"
            detail += ")"
        super().__init__(detail)


@dataclass(frozen=True)
class Span:
    """Character span into a source text."""

    start: int
    end: int
    text: str


@dataclass(frozen=True)
class AmrNode:
    id: str
    concept: str
    is_constant: bool = False
    name: Optional[str] = None
    span: Optional[Span] = None

    @property
    def is_frame(self) -> bool:
        return not self.is_constant and bool(FRAME_RE.search(self.concept))

    @property
    def frame_lemma(self) -> str:
        """Frame concept without its numeric sense suffix."""
        if self.is_frame:
            return FRAME_RE.sub("", self.concept)
        return self.concept

    @property
    def surface(self) -> str:
        """Best textual rendering: aligned span, else name, else concept."""
        if self.span is not None:
            return self.span.text
        if self.name:
            return self.name
        if self.is_frame:
            return self.frame_lemma
        return self.concept


@dataclass(frozen=True)
class AmrEdge:
    source: str
    target: str
    role: str


@dataclass(frozen=True)
class FrameInstance:
    frame_node: str
    frame: str
    fillers: tuple[tuple[str, str], ...]  # (role, node id), document order


@dataclass(frozen=True)
class AmrGraph:
    nodes: tuple[AmrNode, ...]
    edges: tuple[AmrEdge, ...]
    root: str
    _by_id: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_id", {n.id: n for n in self.nodes})

    def node(self, node_id: str) -> AmrNode:
        return self._by_id[node_id]

    def out_edges(self, node_id: str) -> list[AmrEdge]:
        return [e for e in self.edges if e.source == node_id]


def _normalize_role(role: str) -> str:
    core = role[: -len("-of")] if role.endswith("-of") else role
    if ARG_ROLE_RE.match(core):
        return core.upper() + ("-of" if role.endswith("-of") else "")
    return role.lower()


class _Tokenizer:
    TOKEN_RE = re.compile(r"""\(|\)|/|"(?:[^"\\]|\\.)*"|[^\s()/]+""")

    def __init__(self, text: str):
        self.tokens: list[tuple[str, int]] = []
        for m in self.TOKEN_RE.finditer(self._strip_comments(text)):
            self.tokens.append((m.group(), m.start()))
        self.i = 0

    @staticmethod
    def _strip_comments(text: str) -> str:
        out = []
        for line in text.splitlines():
            if line.lstrip().startswith("#"):
                out.append(" " * len(line))
            else:
                out.append(line)
        return "\n".join(out)

    def peek(self) -> Optional[tuple[str, int]]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> tuple[str, int]:
        if self.i >= len(self.tokens):
            raise PenmanParseError("unexpected end of input")
        tok = self.tokens[self.i]
        self.i += 1
        return tok


class _Parser:
    def __init__(self, text: str):
        self.tz = _Tokenizer(text)
        self.concepts: dict[str, str] = {}
        self.order: list[str] = []
        self.edges: list[tuple[str, str, str]] = []  # (source var, role, target id)
        self.constants: dict[str, str] = {}  # synthetic id -> raw value
        self.refs: list[tuple[str, int]] = []
        self._const_n = 0

    def parse(self) -> tuple[str, dict, list, dict, list]:
        tok, pos = self.tz.next()
        if tok != "(":
            raise PenmanParseError("expected '('", tok, pos)
        root = self._node()
        extra = self.tz.peek()
        if extra is not None:
            raise PenmanParseError("trailing content after graph", extra[0], extra[1])
        for var, pos in self.refs:
            if var not in self.concepts:
                raise PenmanParseError("dangling variable reference", var, pos)
        return root, self.concepts, self.edges, self.constants, self.order

    def _node(self) -> str:
        var, pos = self.tz.next()
        if var in ("(", ")", "/") or var.startswith(":"):
            raise PenmanParseError("expected variable", var, pos)
        slash, spos = self.tz.next()
        if slash != "/":
            raise PenmanParseError("expected '/' after variable", slash, spos)
        concept, cpos = self.tz.next()
        if concept in ("(", ")", "/") or concept.startswith(":"):
            raise PenmanParseError("expected concept", concept, cpos)
        if var in self.concepts:
            raise PenmanParseError("duplicate node definition", var, pos)
        self.concepts[var] = concept
        self.order.append(var)
        while True:
            nxt = self.tz.peek()
            if nxt is None:
                raise PenmanParseError("missing ')'", None, None)
            if nxt[0] == ")":
                self.tz.next()
                return var
            role_tok, rpos = self.tz.next()
            if not role_tok.startswith(":") or len(role_tok) < 2:
                raise PenmanParseError("expected role", role_tok, rpos)
            role = role_tok[1:]
            tgt = self.tz.peek()
            if tgt is None:
                raise PenmanParseError("missing role target", role_tok, rpos)
            if tgt[0] == "(":
                self.tz.next()
                child = self._node()
                self.edges.append((var, role, child))
            elif tgt[0] in (")", "/") or tgt[0].startswith(":"):
                raise PenmanParseError("missing role target", tgt[0], tgt[1])
            else:
                val, vpos = self.tz.next()
                if val.startswith('"') or NUMBER_RE.match(val) or val in ("-", "+") or not re.match(r"^[a-zA-Z]", val):
                    cid = f"_c{self._const_n}"
                    self._const_n += 1
                    self.constants[cid] = val
                    self.edges.append((var, role, cid))
                else:
                    # bare variable reference (co-reference); verified at end
                    self.refs.append((val, vpos))
                    self.edges.append((var, role, val))


def _unquote(raw: str) -> str:
    if raw.startswith('"') and raw.endswith('"') and len(raw) >= 2:
        return raw[1:-1].replace('\\"', '"')
    return raw


def parse_penman(text: str) -> AmrGraph:
    """Parse one PENMAN graph into a normalized :class:`AmrGraph`.

    Normalization reverses every ``-of`` role, case-normalizes roles
    (ARG cores upper, the rest lower), collapses ``:name`` sub-graphs
    into the parent's name string, and verifies the result is acyclic.
    """
    root, concepts, raw_edges, constants, order = _Parser(text).parse()

    edges: list[tuple[str, str, str]] = []
    for src, role, tgt in raw_edges:
        role = _normalize_role(role)
        if role.endswith("-of"):
            edges.append((tgt, role[: -len("-of")], src))
        else:
            edges.append((src, role, tgt))

    # Collapse :name sub-graphs into the parent node's name string.
    names: dict[str, str] = {}
    drop_nodes: set[str] = set()
    for src, role, tgt in edges:
        if role == "name" and concepts.get(tgt) == "name":
            ops = []
            for s2, r2, t2 in edges:
                if s2 == tgt and r2.startswith("op") and t2 in constants:
                    try:
                        n = int(r2[2:])
                    except ValueError:
                        continue
                    ops.append((n, _unquote(constants[t2])))
                    drop_nodes.add(t2)
            names.setdefault(src, " ".join(v for _, v in sorted(ops)))
            drop_nodes.add(tgt)
    edges = [(s, r, t) for s, r, t in edges if s not in drop_nodes and t not in drop_nodes]

    nodes = []
    for var in order:
        if var in drop_nodes:
            continue
        nodes.append(AmrNode(id=var, concept=concepts[var], name=names.get(var)))
    for cid in sorted(constants, key=lambda c: int(c[2:])):
        if cid in drop_nodes:
            continue
        nodes.append(AmrNode(id=cid, concept=_unquote(constants[cid]), is_constant=True))

    graph = AmrGraph(
        nodes=tuple(nodes),
        edges=tuple(AmrEdge(s, t, r) for s, r, t in edges),
        root=root,
    )
    _check_acyclic(graph)
    return graph


def parse_penman_file(text: str) -> list[AmrGraph]:
    """Parse a multi-graph file: graphs separated by blank lines."""
    graphs = []
    for block in re.split(r"\n\s*\n", text):
        stripped = "\n".join(l for l in block.splitlines() if not l.lstrip().startswith("#"))
        if stripped.strip():
            graphs.append(parse_penman(block))
    return graphs


def _check_acyclic(graph: AmrGraph) -> None:
    adj: dict[str, list[str]] = {}
    for e in graph.edges:
        adj.setdefault(e.source, []).append(e.target)
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {n.id: WHITE for n in graph.nodes}
    for start in color:
        if color[start] != WHITE:
            continue
        stack: list[tuple[str, Iterator[str]]] = [(start, iter(adj.get(start, ())))]
        color[start] = GRAY
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == GRAY:
                    raise AmrError(f"cycle through node {nxt!r} after normalization")
                if color[nxt] == WHITE:
                    color[nxt] = GRAY
                    stack.append((nxt, iter(adj.get(nxt, ()))))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                stack.pop()


def frames(graph: AmrGraph) -> list[FrameInstance]:
    """One FrameInstance per frame-pattern node, with its direct fillers.

    Fillers are the direct role-edge neighbors; ``:name`` structure is
    already collapsed at parse time and never appears here.  Duplicate
    (role, target) pairs are dropped.
    """
    out = []
    for node in graph.nodes:
        if not node.is_frame:
            continue
        fillers = []
        seen = set()
        for e in graph.edges:
            if e.source != node.id or e.role == "name":
                continue
            key = (e.role, e.target)
            if key in seen:
                continue
            seen.add(key)
            fillers.append(key)
        out.append(FrameInstance(frame_node=node.id, frame=node.concept, fillers=tuple(fillers)))
    return out


def unknown_node(graph: AmrGraph) -> Optional[str]:
    """Id of the ``amr-unknown`` node, None if absent, error if several."""
    found = [n.id for n in graph.nodes if not n.is_constant and n.concept == UNKNOWN_CONCEPT]
    if len(found) > 1:
        raise AmrError(f"multiple {UNKNOWN_CONCEPT} nodes: {', '.join(found)}")
    return found[0] if found else None


def _find_span(text: str, needle: str) -> Optional[Span]:
    idx = text.lower().find(needle.lower())
    if idx < 0:
        return None
    start, end = idx, idx + len(needle)
    while start > 0 and WORD_CHARS.match(text[start - 1]):
        start -= 1
    while end < len(text) and WORD_CHARS.match(text[end]):
        end += 1
    return Span(start, end, text[start:end])


def recover_spans(graph: AmrGraph, text: str) -> AmrGraph:
    """Attach source-text spans by longest case-insensitive match.

    For each node the candidate strings are its name, then its concept
    (frame lemma for frames, hyphens as spaces); matches extend to word
    boundaries so ``movie`` aligns with ``movies``.  Nodes without a
    match keep an absent span.
    """
    new_nodes = []
    for node in graph.nodes:
        if node.concept == UNKNOWN_CONCEPT:
            new_nodes.append(node)
            continue
        candidates = []
        if node.name:
            candidates.append(node.name)
        lemma = node.frame_lemma if not node.is_constant else node.concept
        candidates.append(lemma.replace("-", " "))
        span = None
        for cand in sorted(set(candidates), key=len, reverse=True):
            if not cand.strip():
                continue
            span = _find_span(text, cand)
            if span is not None:
                break
        new_nodes.append(replace(node, span=span) if span else node)
    return AmrGraph(nodes=tuple(new_nodes), edges=graph.edges, root=graph.root)


def _quote_constant(value: str) -> str:
    if NUMBER_RE.match(value) or value in ("-", "+", "imperative", "expressive"):
        return value
    return '"' + value.replace('"', '\\"') + '"'


def serialize(graph: AmrGraph) -> str:
    """Render the normalized graph back to single-line PENMAN.

    Collapsed names are re-expanded as ``:name (n / name :op1 ...)``;
    re-entrant nodes are emitted once and referenced by variable after.
    """
    children: dict[str, list[AmrEdge]] = {}
    for e in graph.edges:
        children.setdefault(e.source, []).append(e)
    visited: set[str] = set()
    name_n = iter(range(len(graph.nodes), len(graph.nodes) * 2 + 2))

    def emit(node_id: str) -> str:
        node = graph.node(node_id)
        if node.is_constant:
            return _quote_constant(node.concept)
        if node_id in visited:
            return node_id
        visited.add(node_id)
        parts = [f"({node_id} / {node.concept}"]
        if node.name:
            ops = " ".join(
                f':op{i + 1} "{part}"' for i, part in enumerate(node.name.split())
            )
            parts.append(f" :name (n{next(name_n)} / name {ops})")
        for e in children.get(node_id, ()):
            parts.append(f" :{e.role} {emit(e.target)}")
        parts.append(")")
        return "".join(parts)

    return emit(graph.root)


def canonical_form(graph: AmrGraph) -> tuple:
    """Order- and variable-name-independent form, for isomorphism checks."""
    index: dict[str, int] = {}

    def visit(node_id: str):
        if node_id in index:
            return
        index[node_id] = len(index)
        for e in sorted(graph.out_edges(node_id), key=lambda e: (e.role, _sig(e.target))):
            visit(e.target)

    def _sig(node_id: str) -> tuple:
        n = graph.node(node_id)
        return (n.concept, n.name or "", n.is_constant)

    visit(graph.root)
    for n in graph.nodes:  # disconnected nodes, if any
        visit(n.id)
    nodes = tuple(sorted((index[n.id],) + _sig(n.id) for n in graph.nodes))
    edges = tuple(sorted((index[e.source], e.role, index[e.target]) for e in graph.edges))
    return (index[graph.root], nodes, edges)

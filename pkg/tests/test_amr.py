import pytest
from hypothesis import given, strategies as st

from amrlink.amr import (
    AmrError,
    PenmanParseError,
    canonical_form,
    frames,
    parse_penman,
    parse_penman_file,
    recover_spans,
    serialize,
    unknown_node,
)

TESLA_BIRTH = """
(b / bear-02
   :ARG0 (d / person :name (n / name :op1 "Duka" :op2 "Tesla"))
   :ARG1 (p / person :name (n2 / name :op1 "Nikola" :op2 "Tesla"))
   :location (c / city :name (n3 / name :op1 "Smiljan"))
   :time 1856)
"""

STAR_QUESTION = '(s / star-01 :ARG1 (a / amr-unknown) :ARG2 (m / movie))'


class TestParse:
    def test_frame_node_and_filler(self):
        g = parse_penman('(b / bear-02 :ARG0 (d / person :name (n / name :op1 "Duka" :op2 "Tesla")))')
        root = g.node(g.root)
        assert root.concept == "bear-02"
        assert root.is_frame
        (frame,) = frames(g)
        assert frame.fillers == (("ARG0", "d"),)
        assert g.node("d").concept == "person"
        assert g.node("d").name == "Duka Tesla"

    def test_single_node_graph(self):
        g = parse_penman("(m / movie)")
        assert len(g.nodes) == 1
        assert g.edges == ()
        assert frames(g) == []

    def test_unknown_is_arg1_filler(self):
        g = parse_penman(STAR_QUESTION)
        (frame,) = frames(g)
        assert dict(frame.fillers)["ARG1"] == unknown_node(g)
        assert dict(frame.fillers)["ARG2"] == "m"

    def test_inverse_role_reversed(self):
        g = parse_penman("(m / movie :ARG1-of (p / produce-01 :ARG0 (b / person)))")
        roles = {(e.source, e.role, e.target) for e in g.edges}
        assert ("p", "ARG1", "m") in roles
        assert not any(e.role.endswith("-of") for e in g.edges)

    def test_role_case_normalization(self):
        g = parse_penman("(b / bear-02 :arg1 (p / person) :Location (c / city))")
        roles = {e.role for e in g.edges}
        assert roles == {"ARG1", "location"}

    def test_coreference_single_node(self):
        g = parse_penman("(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02 :ARG0 b))")
        assert len([n for n in g.nodes if n.concept == "boy"]) == 1
        assert sum(1 for e in g.edges if e.target == "b") == 2

    def test_constants_become_nodes(self):
        g = parse_penman("(b / bear-02 :ARG1 (p / person) :time 1856)")
        (frame,) = frames(g)
        time_fillers = [n for r, n in frame.fillers if r == "time"]
        assert len(time_fillers) == 1
        assert g.node(time_fillers[0]).concept == "1856"
        assert g.node(time_fillers[0]).is_constant

    def test_malformed_parens(self):
        with pytest.raises(PenmanParseError):
            parse_penman("(b / bear-02 :ARG0 (d / person)")

    def test_dangling_reference(self):
        with pytest.raises(PenmanParseError, match="dangling"):
            parse_penman("(b / bear-02 :ARG0 zzz)")

    def test_duplicate_definition(self):
        with pytest.raises(PenmanParseError, match="duplicate"):
            parse_penman("(b / bear-02 :ARG0 (b / person))")

    def test_cycle_after_normalization_rejected(self):
        with pytest.raises(AmrError, match="cycle"):
            parse_penman("(a / alpha-01 :ARG0 (b / beta-01 :ARG1 a))")

    def test_multi_graph_file(self):
        text = "# ::id 1\n(m / movie)\n\n(p / person)\n"
        gs = parse_penman_file(text)
        assert [g.node(g.root).concept for g in gs] == ["movie", "person"]


class TestUnknownNode:
    def test_present(self):
        assert unknown_node(parse_penman(STAR_QUESTION)) == "a"

    def test_absent_for_declarative(self):
        assert unknown_node(parse_penman(TESLA_BIRTH)) is None

    def test_two_unknowns_rejected(self):
        with pytest.raises(AmrError, match="multiple"):
            unknown_node(parse_penman("(s / star-01 :ARG1 (a / amr-unknown) :ARG2 (b / amr-unknown))"))


class TestFrames:
    def test_tesla_graph_has_four_fillers(self):
        g = parse_penman(TESLA_BIRTH)
        (frame,) = frames(g)
        assert frame.frame == "bear-02"
        assert len(frame.fillers) == 4

    def test_frame_free_graph(self):
        assert frames(parse_penman("(m / movie)")) == []

    def test_two_frames(self):
        g = parse_penman(
            "(s / star-01 :ARG1 (a / amr-unknown)"
            " :ARG2 (m / movie :ARG1-of (p / produce-01 :ARG0 (b / person :name (n / name :op1 \"Benicio\")))))"
        )
        fs = frames(g)
        assert [f.frame for f in fs] == ["star-01", "produce-01"]

    def test_count_matches_frame_pattern_nodes(self):
        g = parse_penman(TESLA_BIRTH)
        assert len(frames(g)) == sum(1 for n in g.nodes if n.is_frame)

    def test_name_structure_excluded_from_fillers(self):
        g = parse_penman('(p / person :name (n / name :op1 "Ada") :ARG0-of (w / work-01))')
        (frame,) = frames(g)
        assert frame.fillers == (("ARG0", "p"),)


class TestRoundTrip:
    CASES = [
        TESLA_BIRTH,
        STAR_QUESTION,
        "(m / movie)",
        "(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02 :ARG0 b))",
        '(c / city :name (n / name :op1 "New" :op2 "York"))',
        "(b / bear-02 :ARG1 (p / person) :time 1856 :polarity -)",
    ]

    @pytest.mark.parametrize("text", CASES)
    def test_parse_serialize_parse_isomorphic(self, text):
        g1 = parse_penman(text)
        g2 = parse_penman(serialize(g1))
        assert canonical_form(g1) == canonical_form(g2)

    def test_no_of_roles_after_normalization(self):
        g = parse_penman("(m / movie :ARG1-of (p / produce-01) :mod-of (x / oddity))")
        assert all(not e.role.endswith("-of") for e in g.edges)


names = st.sampled_from(["alpha", "beta", "gamma", "delta"])


@st.composite
def random_graphs(draw):
    """Random small trees with occasional frame concepts and constants."""
    n = draw(st.integers(min_value=1, max_value=6))
    concepts = draw(
        st.lists(st.sampled_from(["thing", "person", "see-01", "give-01", "city"]), min_size=n, max_size=n)
    )
    lines = []
    for i, concept in enumerate(concepts):
        lines.append((f"v{i}", concept, draw(st.integers(0, i - 1)) if i else None,
                      draw(st.sampled_from(["ARG0", "ARG1", "mod", "location", "time"]))))
    parts = {}
    for var, concept, parent, role in reversed(lines):
        body = parts.pop(var, "")
        node = f"({var} / {concept}{body})"
        if parent is None:
            parts["root"] = node
        else:
            pvar = f"v{parent}"
            parts[pvar] = parts.get(pvar, "") + f" :{role} {node}"
    return parts["root"]


@given(random_graphs())
def test_roundtrip_property(text):
    g1 = parse_penman(text)
    g2 = parse_penman(serialize(g1))
    assert canonical_form(g1) == canonical_form(g2)


class TestSpans:
    QUESTION = "Who is starring in Spanish movies produced by Benicio del Toro?"

    def test_name_match(self):
        g = parse_penman('(p / person :name (n / name :op1 "Benicio" :op2 "del" :op3 "Toro"))')
        g = recover_spans(g, self.QUESTION)
        assert g.node("p").span.text == "Benicio del Toro"

    def test_concept_match_extends_to_word_boundary(self):
        g = recover_spans(parse_penman("(m / movie)"), self.QUESTION)
        assert g.node("m").span.text == "movies"

    def test_unmatched_concept_has_no_span(self):
        g = recover_spans(parse_penman('(c / country :name (n / name :op1 "Spain"))'), self.QUESTION)
        assert g.node("c").span is None
        assert g.node("c").surface == "Spain"

    def test_frame_lemma_match(self):
        g = recover_spans(parse_penman("(p / produce-01)"), self.QUESTION)
        assert g.node("p").span.text == "produced"

    def test_unknown_never_aligned(self):
        g = recover_spans(parse_penman(STAR_QUESTION), "Who is starring in movies?")
        assert g.node("a").span is None

import random

import pytest
from hypothesis import given, settings, strategies as st

from amrlink.aggregate import aggregate, evaluate, normalize, read_gold, read_predictions


class TestNormalize:
    def test_min_max(self):
        assert normalize({"r1": 2, "r2": 4, "r3": 6}) == {"r1": 0.0, "r2": 0.5, "r3": 1.0}

    def test_single_value_full_confidence(self):
        assert normalize({"r1": 7}) == {"r1": 1.0}

    def test_all_equal_full_confidence(self):
        assert normalize({"a": 0.5, "b": 0.5}) == {"a": 1.0, "b": 1.0}

    def test_empty(self):
        assert normalize({}) == {}


score_maps = st.dictionaries(
    st.sampled_from([f"r{i}" for i in range(6)]),
    st.floats(min_value=0, max_value=100, allow_nan=False),
    max_size=6,
)


@given(score_maps)
def test_normalize_bounds(scores):
    out = normalize(scores)
    assert all(0.0 <= v <= 1.0 for v in out.values())


@given(score_maps.filter(lambda m: len(set(m.values())) > 1))
def test_normalize_preserves_argmax(scores):
    out = normalize(scores)
    assert max(scores, key=lambda r: (scores[r], r)) == max(out, key=lambda r: (out[r], r))


class TestAggregate:
    def test_sum_of_normalized(self):
        ranked = aggregate({"a": {"r1": 1.0}, "b": {"r1": 0.7}})
        assert ranked == [("r1", 2.0)]

    def test_tie_breaks_by_iri(self):
        ranked = aggregate({"a": {"r2": 1.0}, "b": {"r1": 1.0}})
        assert ranked == [("r1", 1.0), ("r2", 1.0)]

    def test_four_scorer_hand_sum(self):
        # normalized by hand: align {x:1,y:.5}->{1,0}; lex {x:.2,y:.8}->{0,1};
        # kb {y:.5}->{1}; neural {x:.9,y:.1}->{1,0}; totals x=2, y=2 -> IRI order
        ms = {
            "align": {"r:x": 1.0, "r:y": 0.5},
            "lexical": {"r:x": 0.2, "r:y": 0.8},
            "kb": {"r:y": 0.5},
            "neural": {"r:x": 0.9, "r:y": 0.1},
        }
        assert aggregate(ms) == [("r:x", 2.0), ("r:y", 2.0)]

    @given(st.permutations(["align", "lexical", "kb", "neural"]))
    def test_permutation_invariant(self, order):
        base = {
            "align": {"a": 3.0, "b": 1.0},
            "lexical": {"b": 0.4},
            "kb": {"a": 0.5, "b": 1.0},
            "neural": {"a": 0.2, "b": 0.9},
        }
        shuffled = {name: base[name] for name in order}
        assert aggregate(shuffled) == aggregate(base)


class TestEvaluate:
    def test_perfect_prediction(self):
        rep = evaluate({"q": {"a", "b"}}, {"q": {"a", "b"}})
        assert (rep.precision, rep.recall, rep.f1) == (1.0, 1.0, 1.0)

    def test_partial_recall(self):
        rep = evaluate({"q": {"a"}}, {"q": {"a", "b"}})
        assert rep.precision == 1.0
        assert rep.recall == 0.5

    def test_child_relations_case(self):
        # single predicted relation against a two-relation gold set
        rep = evaluate({"q4": {"dbo:child"}}, {"q4": {"dbo:child", "dbp:child"}})
        assert rep.per_question["q4"] == (1.0, 0.5)

    def test_empty_prediction_against_gold(self):
        rep = evaluate({"q": set()}, {"q": {"a"}})
        assert rep.per_question["q"] == (0.0, 0.0)

    def test_both_empty(self):
        rep = evaluate({"q": set()}, {"q": set()})
        assert rep.per_question["q"] == (1.0, 1.0)

    def test_qid_mismatch(self):
        with pytest.raises(ValueError, match="q2"):
            evaluate({"q1": set()}, {"q1": set(), "q2": {"a"}})

    def test_macro_matches_brute_force(self):
        rng = random.Random(5)
        rels = [f"r{i}" for i in range(8)]
        preds, gold = {}, {}
        for i in range(40):
            qid = f"q{i}"
            preds[qid] = set(rng.sample(rels, rng.randint(0, 4)))
            gold[qid] = set(rng.sample(rels, rng.randint(0, 4)))
        rep = evaluate(preds, gold)
        ps, rs = [], []
        for qid in gold:
            inter = len(preds[qid] & gold[qid])
            ps.append(inter / len(preds[qid]) if preds[qid] else (1.0 if not gold[qid] else 0.0))
            rs.append(inter / len(gold[qid]) if gold[qid] else 1.0)
        assert rep.precision == pytest.approx(sum(ps) / len(ps))
        assert rep.recall == pytest.approx(sum(rs) / len(rs))

    def test_pred_equals_gold_always_perfect(self):
        rng = random.Random(11)
        for _ in range(100):
            rels = [f"r{i}" for i in range(6)]
            gold = {f"q{i}": set(rng.sample(rels, rng.randint(0, 4))) for i in range(5)}
            rep = evaluate(gold, gold)
            assert (rep.precision, rep.recall, rep.f1) == (1.0, 1.0, 1.0)

    def test_micro_average(self):
        rep = evaluate({"q1": {"a"}, "q2": {"b", "c"}}, {"q1": {"a", "b"}, "q2": {"b"}}, micro=True)
        # hits 2, predicted 3, gold 3
        assert rep.precision == pytest.approx(2 / 3)
        assert rep.recall == pytest.approx(2 / 3)

    def test_excluded_relations_ignored(self):
        rep = evaluate({"q": {"a", "rdf:type"}}, {"q": {"a", "rdfs:label"}})
        assert rep.per_question["q"] == (1.0, 1.0)


class TestIo:
    def test_read_gold_and_predictions(self, tmp_path):
        g = tmp_path / "gold.jsonl"
        g.write_text('{"id": "q1", "gold_relations": ["a", "rdf:type"]}\n')
        p = tmp_path / "pred.jsonl"
        p.write_text('{"id": "q1", "predictions": ["a"]}\n')
        assert read_gold(g) == {"q1": {"a"}}
        assert read_predictions(p) == {"q1": {"a"}}

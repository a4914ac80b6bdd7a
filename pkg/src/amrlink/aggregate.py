"""Score normalization, aggregation and P/R/F1 evaluation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

EXCLUDED_GOLD = {"rdf:type", "rdfs:label"}


def normalize(scores: Mapping[str, float]) -> dict[str, float]:
    """Min-max normalization into [0, 1].

    A degenerate map (all values equal, including a single candidate)
    maps everything to 1.0: one candidate is full confidence.
    """
    if not scores:
        return {}
    lo, hi = min(scores.values()), max(scores.values())
    if hi == lo:
        return {r: 1.0 for r in scores}
    return {r: (v - lo) / (hi - lo) for r, v in scores.items()}


def aggregate(module_scores: Mapping[str, Mapping[str, float]]) -> list[tuple[str, float]]:
    """Sum of per-module normalized scores, ranked; ties break by IRI.

    Modules are folded in name order so the float sum, and therefore
    the ranking, is exactly permutation-invariant.
    """
    totals: dict[str, float] = {}
    for name in sorted(module_scores):
        for r, v in normalize(module_scores[name]).items():
            totals[r] = totals.get(r, 0.0) + v
    return sorted(totals.items(), key=lambda rv: (-rv[1], rv[0]))


@dataclass
class EvalReport:
    precision: float
    recall: float
    f1: float
    question_count: int
    per_question: dict[str, tuple[float, float]] = field(default_factory=dict)
    micro: bool = False

    def to_json(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "questions": self.question_count,
            "averaging": "micro" if self.micro else "macro",
            "per_question": {
                qid: {"precision": p, "recall": r} for qid, (p, r) in sorted(self.per_question.items())
            },
        }

    def to_text(self) -> str:
        mode = "micro" if self.micro else "macro"
        return (
            f"questions: {self.question_count}\n"
            f"precision ({mode}): {self.precision:.4f}\n"
            f"recall    ({mode}): {self.recall:.4f}\n"
            f"f1        ({mode}): {self.f1:.4f}"
        )


def _f1(p: float, r: float) -> float:
    return 2 * p * r / (p + r) if p + r > 0 else 0.0


def evaluate(predictions: Mapping[str, set], gold: Mapping[str, set], micro: bool = False) -> EvalReport:
    """Corpus P/R/F1 against gold relation sets.

    Per question: P = |pred & gold| / |pred| (1 when both sides are
    empty, 0 when only the prediction is), R = |pred & gold| / |gold|
    (vacuously 1 for empty gold).  The corpus default is the macro
    average with F1 computed from averaged P and R; ``micro`` pools
    counts instead.  rdf:type and rdfs:label never count.
    """
    missing_in_pred = sorted(set(gold) - set(predictions))
    missing_in_gold = sorted(set(predictions) - set(gold))
    if missing_in_pred or missing_in_gold:
        parts = []
        if missing_in_pred:
            parts.append(f"missing from predictions: {', '.join(missing_in_pred)}")
        if missing_in_gold:
            parts.append(f"missing from gold: {', '.join(missing_in_gold)}")
        raise ValueError("question id mismatch: " + "; ".join(parts))

    per_question: dict[str, tuple[float, float]] = {}
    hit_sum = pred_sum = gold_sum = 0
    for qid in sorted(gold):
        pred_set = set(predictions[qid]) - EXCLUDED_GOLD
        gold_set = set(gold[qid]) - EXCLUDED_GOLD
        hits = len(pred_set & gold_set)
        if pred_set:
            p = hits / len(pred_set)
        else:
            p = 1.0 if not gold_set else 0.0
        r = hits / len(gold_set) if gold_set else 1.0
        per_question[qid] = (p, r)
        hit_sum += hits
        pred_sum += len(pred_set)
        gold_sum += len(gold_set)

    n = len(per_question)
    if micro:
        precision = hit_sum / pred_sum if pred_sum else (1.0 if gold_sum == 0 else 0.0)
        recall = hit_sum / gold_sum if gold_sum else 1.0
    else:
        precision = sum(p for p, _ in per_question.values()) / n if n else 0.0
        recall = sum(r for _, r in per_question.values()) / n if n else 0.0
    return EvalReport(
        precision=precision,
        recall=recall,
        f1=_f1(precision, recall),
        question_count=n,
        per_question=per_question,
        micro=micro,
    )


def read_gold(path) -> dict[str, set]:
    out: dict[str, set] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            rec = json.loads(line)
            out[str(rec["id"])] = set(rec.get("gold_relations", ())) - EXCLUDED_GOLD
    return out


def read_predictions(path) -> dict[str, set]:
    out: dict[str, set] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            rec = json.loads(line)
            out[str(rec["id"])] = set(rec.get("predictions", rec.get("relations", ())))
    return out

"""Retrieval classifier over utterance/response pairs.

Each distinct response (feedback text, optional robot instruction,
label) forms a response class. The class's language model is a smoothed
unigram distribution over the tokens of every training utterance mapped
to it, linearly interpolated with the whole-corpus distribution:

    p(w | class) = lam * count(w, class) / total(class)
                 + (1 - lam) * count(w, corpus) / total(corpus)

A query is scored against a class by the negated cross-entropy between
the query's token distribution and the class model,

    score = sum_w q(w) * log p(w | class),

which is the length-normalized query log-likelihood, so one confidence
threshold works across query lengths. Tokens never seen in the corpus
are scored at a fixed floor of (1 - lam) / (total(corpus) + 1).

Classes are ranked by score, ties broken by lexicographic class id.
Training is pure counting, so identical corpus and parameters give
bit-identical scores.
"""

import json
import math
from collections import Counter
from dataclasses import dataclass, field

from .corpus import Corpus, TrainingPair
from .tokenize import tokenize

MODEL_FORMAT = "scoutbot-nlu/1"

DEFAULT_LAMBDA = 0.5

NO_MATCH_FEEDBACK = ("Sorry, I did not understand that. "
                     "Try a movement command or ask for a picture.")


class ModelError(Exception):
    pass


@dataclass
class ResponseClass:
    class_id: str
    commander_response: str
    rn_instruction: str | None
    label: str
    pair_count: int
    token_counts: dict[str, int]
    token_total: int


@dataclass
class RelevanceModel:
    lam: float
    tau: float
    classes: list[ResponseClass]
    collection_counts: dict[str, int]
    collection_total: int
    by_id: dict[str, ResponseClass] = field(init=False, repr=False)

    def __post_init__(self):
        self.by_id = {c.class_id: c for c in self.classes}

    # -- scoring ----------------------------------------------------------

    def oov_floor(self) -> float:
        return (1.0 - self.lam) / (self.collection_total + 1.0)

    def score(self, tokens: list[str], cls: ResponseClass) -> float:
        """Mean log-probability of the query tokens under the class model."""
        if not tokens:
            return -math.inf
        qn = float(len(tokens))
        counts = Counter(tokens)
        total = 0.0
        for w in sorted(counts):
            c_coll = self.collection_counts.get(w)
            if c_coll is None:
                p = self.oov_floor()
            else:
                p_ml = cls.token_counts.get(w, 0) / cls.token_total
                p = self.lam * p_ml + (1.0 - self.lam) * (c_coll / self.collection_total)
            total += (counts[w] / qn) * math.log(p)
        return total

    def classify(self, utterance: str, k: int = 1
                 ) -> list[tuple[ResponseClass, float]]:
        """Top-k response classes by score, best first."""
        tokens = tokenize(utterance)
        if not tokens:
            # prior-best class, flagged low-confidence by the -inf score
            prior = min(self.classes, key=lambda c: (-c.pair_count, c.class_id))
            return [(prior, -math.inf)]
        scored = [(c, self.score(tokens, c)) for c in self.classes]
        scored.sort(key=lambda cs: (-cs[1], cs[0].class_id))
        return scored[:k]

    def hybrid_output(self, utterance: str) -> dict:
        """Route one utterance: optional robot instruction plus feedback.

        Below the no-match threshold the output is negative feedback and
        no instruction.
        """
        top, score = self.classify(utterance, k=1)[0]
        if score < self.tau:
            return {"rn_instruction": None, "commander_feedback": NO_MATCH_FEEDBACK,
                    "confidence": score, "kind": "no_match"}
        return {"rn_instruction": top.rn_instruction,
                "commander_feedback": top.commander_response,
                "confidence": score,
                "kind": top.label if top.rn_instruction is None else "actionable"}


# -- training ---------------------------------------------------------------


def build_classes(pairs: list[TrainingPair]) -> list[ResponseClass]:
    grouped: dict[tuple[str, str, str], list[TrainingPair]] = {}
    for pair in pairs:
        grouped.setdefault(pair.response_key(), []).append(pair)
    classes = []
    for i, key in enumerate(sorted(grouped)):
        members = grouped[key]
        counts: Counter[str] = Counter()
        for pair in members:
            counts.update(tokenize(pair.utterance))
        total = sum(counts.values())
        if total == 0:
            raise ModelError(f"response class {key} has no utterance tokens")
        response, rn, label = key
        classes.append(ResponseClass(
            class_id=f"r{i:04d}",
            commander_response=response,
            rn_instruction=rn or None,
            label=label,
            pair_count=len(members),
            token_counts=dict(sorted(counts.items())),
            token_total=total,
        ))
    return classes


def train(corpus: Corpus, lam: float = DEFAULT_LAMBDA,
          tau: float | None = None) -> RelevanceModel:
    """Fit the classifier on the whole corpus.

    When tau is not given it is calibrated on the corpus's own held-out
    split (reject-class F1, see calibrate_tau), then the final model is
    fit on all pairs with that threshold.
    """
    if not corpus.pairs:
        raise ModelError("empty corpus")
    if not 0.0 < lam < 1.0:
        raise ModelError("lam must be in (0, 1)")
    classes = build_classes(corpus.pairs)
    coll: Counter[str] = Counter()
    for cls in classes:
        coll.update(cls.token_counts)
    model = RelevanceModel(lam=lam, tau=-math.inf, classes=classes,
                           collection_counts=dict(sorted(coll.items())),
                           collection_total=sum(coll.values()))
    if tau is None:
        train_pairs, held = corpus.split(0.2)
        if held and train_pairs and len({p.label for p in train_pairs}) >= 2:
            shadow = train(Corpus(train_pairs, corpus.split_seed), lam=lam, tau=0.0)
            tau = calibrate_tau(shadow, held)
        else:
            tau = -1e9
    model.tau = tau
    return model


def calibrate_tau(model: RelevanceModel, held: list[TrainingPair]) -> float:
    """Threshold at which reject-class F1 on the held-out pairs peaks.

    Predicted-reject means the top class is labeled reject or the score
    falls below the threshold. Ties pick the largest threshold, keeping
    the rejection band as wide as the data allows.
    """
    results = []
    for pair in held:
        top, score = model.classify(pair.utterance, k=1)[0]
        results.append((score, top.label, pair.label))
    finite = sorted({s for s, _, _ in results if s != -math.inf})
    if not finite or not any(gold == "reject" for _, _, gold in results):
        return (finite[0] - 1.0) if finite else -1e9
    candidates = [finite[0] - 1.0]
    candidates += [(a + b) / 2.0 for a, b in zip(finite, finite[1:])]
    candidates.append(finite[-1] + 1.0)
    best_f1, best_tau = -1.0, candidates[0]
    for t in candidates:
        tp = fp = fn = 0
        for score, top_label, gold in results:
            predicted_reject = top_label == "reject" or score < t
            if predicted_reject and gold == "reject":
                tp += 1
            elif predicted_reject:
                fp += 1
            elif gold == "reject":
                fn += 1
        denom = 2 * tp + fp + fn
        f1 = (2 * tp / denom) if denom else 0.0
        if f1 > best_f1 or (f1 == best_f1 and t > best_tau):
            best_f1, best_tau = f1, t
    return best_tau


def evaluate(model: RelevanceModel, held: list[TrainingPair]) -> float:
    """Top-1 accuracy: the best class must be the pair's own response."""
    if not held:
        raise ModelError("empty held-out set")
    correct = 0
    for pair in held:
        top, _ = model.classify(pair.utterance, k=1)[0]
        if (top.commander_response, top.rn_instruction or "", top.label) == pair.response_key():
            correct += 1
    return correct / len(held)


# -- persistence --------------------------------------------------------------


def save_model(model: RelevanceModel, path):
    doc = {
        "format": MODEL_FORMAT,
        "lam": model.lam,
        "tau": model.tau,
        "collection_total": model.collection_total,
        "collection_counts": model.collection_counts,
        "classes": [{
            "class_id": c.class_id,
            "commander_response": c.commander_response,
            "rn_instruction": c.rn_instruction,
            "label": c.label,
            "pair_count": c.pair_count,
            "token_counts": c.token_counts,
            "token_total": c.token_total,
        } for c in model.classes],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)


def load_model(path) -> RelevanceModel:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("format") != MODEL_FORMAT:
        raise ModelError(f"unsupported model format {doc.get('format')!r}")
    classes = [ResponseClass(**c) for c in doc["classes"]]
    return RelevanceModel(lam=doc["lam"], tau=doc["tau"], classes=classes,
                          collection_counts=doc["collection_counts"],
                          collection_total=doc["collection_total"])

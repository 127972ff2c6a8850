"""Training corpus: utterance/response pairs, JSONL on disk.

Each line is one record: {"utterance", "commander_response",
"rn_instruction" (optional), "label"}. An actionable label and a robot
instruction imply each other.
"""

import json
import random
from dataclasses import dataclass, field

LABELS = ("actionable", "clarify", "reject", "info")


class CorpusError(Exception):
    pass


@dataclass(frozen=True)
class TrainingPair:
    utterance: str
    commander_response: str
    rn_instruction: str | None
    label: str

    def __post_init__(self):
        if self.label not in LABELS:
            raise CorpusError(f"unknown label {self.label!r}")
        if (self.label == "actionable") != (self.rn_instruction is not None):
            raise CorpusError(
                f"label {self.label!r} inconsistent with rn_instruction "
                f"{self.rn_instruction!r} for {self.utterance!r}")
        if not self.utterance.strip():
            raise CorpusError("empty utterance")

    def response_key(self) -> tuple[str, str, str]:
        return (self.commander_response, self.rn_instruction or "", self.label)


@dataclass
class Corpus:
    pairs: list[TrainingPair]
    split_seed: int = 0

    def __post_init__(self):
        if len({p.label for p in self.pairs}) < 2:
            raise CorpusError("corpus needs at least 2 distinct labels")
        seen = set()
        for p in self.pairs:
            key = (p.utterance, p.rn_instruction)
            if key in seen:
                raise CorpusError(f"duplicate row {key}")
            seen.add(key)

    def split(self, test_fraction: float = 0.2
              ) -> tuple[list[TrainingPair], list[TrainingPair]]:
        """Deterministic train/held-out split driven by split_seed."""
        idx = list(range(len(self.pairs)))
        random.Random(self.split_seed).shuffle(idx)
        n_test = int(round(len(idx) * test_fraction))
        test = {i for i in idx[:n_test]}
        train = [self.pairs[i] for i in range(len(self.pairs)) if i not in test]
        held = [self.pairs[i] for i in range(len(self.pairs)) if i in test]
        return train, held


def pair_to_record(pair: TrainingPair) -> dict:
    rec = {"utterance": pair.utterance,
           "commander_response": pair.commander_response,
           "label": pair.label}
    if pair.rn_instruction is not None:
        rec["rn_instruction"] = pair.rn_instruction
    return rec


def record_to_pair(rec: dict) -> TrainingPair:
    return TrainingPair(utterance=rec["utterance"],
                        commander_response=rec["commander_response"],
                        rn_instruction=rec.get("rn_instruction"),
                        label=rec["label"])


def save_corpus(corpus: Corpus, path):
    with open(path, "w", encoding="utf-8") as fh:
        for pair in corpus.pairs:
            fh.write(json.dumps(pair_to_record(pair), separators=(",", ":")) + "\n")


def load_corpus(path, split_seed: int = 0) -> Corpus:
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                pairs.append(record_to_pair(json.loads(line)))
            except (json.JSONDecodeError, KeyError) as exc:
                raise CorpusError(f"{path} line {lineno}: {exc}") from exc
    return Corpus(pairs, split_seed=split_seed)

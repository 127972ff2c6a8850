"""Seeded synthetic training corpus.

Templates cover the executable vocabulary (moves of 1..10 feet, turns of
45/90/180/360 degrees, photo requests, compound turn-and-shoot
sequences, landmark commands), clarification triggers, small talk, and
out-of-scope requests. Every undecorated template instantiation goes in
first; the remainder is filled with filler/politeness-decorated variants
drawn class-balanced, so no response class is starved. Output is
deterministic per (seed, size).
"""

import random

from ..dialogue.manager import CLARIFY_MOVE, CLARIFY_TURN, feedback_for
from ..navigator.instructions import ANGLES_DEG, DISTANCES_FT
from ..nlu.corpus import Corpus, TrainingPair
from ..nlu.tokenize import FILLERS

DEFAULT_SIZE = 1500
MIN_SIZE = 10

_NUM_WORDS = {1: "one", 2: "two", 3: "three", 4: "four", 5: "five",
              6: "six", 7: "seven", 8: "eight", 9: "nine", 10: "ten"}

_PREFIXES = ("please ", "robot ", "can you ", "could you ", "okay ",
             "now ", "alright ", "hey ")
_SUFFIXES = (" please", " now", " thanks")

_FWD_TEMPLATES = ("move forward {d}", "move ahead {d}", "go forward {d}",
                  "drive forward {d}", "go straight {d}", "advance {d}",
                  "forward {d}", "walk forward {d}", "move forward by {d}",
                  "head forward {d}", "roll forward {d}", "move {d}",
                  "go {d} forward", "move {d} forward")
# deliberately free of "move": the "back" family tokens carry this class,
# so bare "move <n> feet" resolves to forward instead of coin-flipping
_BACK_TEMPLATES = ("back up {d}", "go back {d}", "reverse {d}", "back {d}",
                   "go backward {d}", "walk back {d}")
_TURN_TEMPLATES = ("turn {dir} {a} degrees", "turn {a} degrees {dir}",
                   "rotate {dir} {a} degrees", "turn {dir} by {a} degrees",
                   "pivot {dir} {a} degrees", "{a} degrees {dir}",
                   "spin {dir} {a} degrees", "turn {dir} {a}")
# two phrasing families for the same instruction; distinct feedback
# strings keep each retrieval class dense on its own vocabulary
_PHOTO_TAKE_UTTERANCES = ("take a picture", "take a photo", "snap a picture",
                          "snap a photo", "take an image", "take a pic",
                          "take another picture", "take a quick picture",
                          "take a picture of that", "get a picture",
                          "grab a picture", "send me a picture", "send a photo",
                          "send me a photo", "give me a picture",
                          "picture please", "photo please")
_PHOTO_SEE_UTTERANCES = ("what do you see", "show me what you see",
                         "what can you see", "can you see anything",
                         "tell me what you see", "what do you see there",
                         "let me see what you see", "show me your view",
                         "what does it look like", "let me see")
_PHOTO_SEE_RESPONSE = "One moment, I will show you."
_SEQ_TEMPLATES = ("turn {dir} {tot} degrees and take a picture every {step}",
                  "turn {dir} {tot} degrees and take a picture every {step} degrees",
                  "turn {tot} degrees and take a picture every {step}",
                  "rotate {dir} {tot} degrees with a picture every {step} degrees",
                  "turn {dir} {tot} degrees taking a picture every {step}",
                  "turn {dir} {tot} and take a picture every {step} degrees")
_SEQ_COMBOS = ((90, 45), (180, 45), (180, 90), (360, 45), (360, 90), (360, 180))

_LANDMARKS = ("the orange cone", "the nearby chair", "the table", "the doorway")
_LANDMARK_TEMPLATES = ("go to {lm}", "move to {lm}", "drive to {lm}",
                       "head to {lm}", "go over to {lm}", "navigate to {lm}")

_CLARIFY_MOVE_UTTS = ("move forward", "go forward", "move ahead", "move",
                      "keep moving", "move forward a bit", "go forward a little",
                      "move forward some more", "move a little", "move up",
                      "scoot forward", "back up", "go backward", "reverse",
                      "scoot back", "go back a bit")
_CLARIFY_TURN_UTTS = ("turn left", "turn right", "turn", "rotate",
                      "turn a bit", "rotate left", "turn right a little",
                      "rotate a bit", "turn just a little", "turn the other way")

_INFO_GROUPS = (
    (("what can you do", "what do you do", "what are your capabilities",
      "what all can you do", "help", "list your commands", "how do i use you",
      "what are my options"),
     "I can move, turn, and take pictures. Try: move forward 3 feet."),
    (("hello", "hi robot", "are you there", "hey robot", "good morning",
      "hello scout"),
     "Hello! Ready to explore."),
    (("where are you", "what is your position", "where are you now",
      "how far have you gone"),
     "I share my position on your map display."),
    (("who are you", "what are you", "what is your name", "tell me about yourself"),
     "I am your scout robot."),
)

_REJECT_GROUPS = (
    (("sing me a song", "play some music", "tell me a joke", "dance for me",
      "whistle a tune"),
     "Sorry, that is outside what I can do."),
    (("pick up the box", "grab that object", "open the door", "push the chair",
      "carry this for me", "bring me the cup"),
     "Sorry, I cannot manipulate objects."),
    (("what is the weather", "order a pizza", "call my friend",
      "set an alarm", "turn on the lights", "check my email"),
     "Sorry, I can only help with exploring this area."),
)


def _distance_phrases(n: int) -> list[str]:
    unit = "foot" if n == 1 else "feet"
    phrases = [f"{n} {unit}", f"{_NUM_WORDS[n]} {unit}"]
    if n != 1:
        phrases.append(f"{n} ft")
    return phrases


def _canonical_move(direction: str, n: int) -> str:
    unit = "foot" if n == 1 else "feet"
    return f"Move {direction} {n} {unit}"


def _base_rows() -> list[TrainingPair]:
    """Every undecorated template instantiation, in a fixed order."""
    rows: list[TrainingPair] = []

    def add(utterance, response, rn, label):
        rows.append(TrainingPair(utterance, response, rn, label))

    for n in DISTANCES_FT:
        for d in _distance_phrases(n):
            rn = _canonical_move("forward", n)
            for t in _FWD_TEMPLATES:
                add(t.format(d=d), feedback_for(rn), rn, "actionable")
            rn = _canonical_move("backward", n)
            for t in _BACK_TEMPLATES:
                add(t.format(d=d), feedback_for(rn), rn, "actionable")
    for a in ANGLES_DEG:
        for direction in ("left", "right"):
            rn = f"Turn {direction} {a} degrees"
            for t in _TURN_TEMPLATES:
                add(t.format(dir=direction, a=a), feedback_for(rn), rn, "actionable")
    for utt in _PHOTO_TAKE_UTTERANCES:
        add(utt, feedback_for("Take a picture"), "Take a picture", "actionable")
    for utt in _PHOTO_SEE_UTTERANCES:
        add(utt, _PHOTO_SEE_RESPONSE, "Take a picture", "actionable")
    for tot, step in _SEQ_COMBOS:
        for direction in ("left", "right"):
            rn = f"Turn {direction} {tot} degrees and take a picture every {step} degrees"
            for t in _SEQ_TEMPLATES:
                utt = t.format(dir=direction, tot=tot, step=step)
                add(utt, feedback_for(rn), rn, "actionable")
    for lm in _LANDMARKS:
        rn = f"Go to {lm}"
        for t in _LANDMARK_TEMPLATES:
            add(t.format(lm=lm), feedback_for(rn), rn, "actionable")
    for utt in _CLARIFY_MOVE_UTTS:
        add(utt, CLARIFY_MOVE, None, "clarify")
    for utt in _CLARIFY_TURN_UTTS:
        add(utt, CLARIFY_TURN, None, "clarify")
    for utterances, response in _INFO_GROUPS:
        for utt in utterances:
            add(utt, response, None, "info")
    for utterances, response in _REJECT_GROUPS:
        for utt in utterances:
            add(utt, response, None, "reject")
    return rows


def _class_variants(rows: list[TrainingPair]) -> list[TrainingPair]:
    """Disfluent and polite variants striped over one class's rows.

    Striping inside the class pins the share of filler and politeness
    tokens per response class, so those tokens stay class-neutral instead
    of varying by sampling luck.
    """
    out = []

    def variant(row, utterance):
        out.append(TrainingPair(utterance, row.commander_response,
                                row.rn_instruction, row.label))

    for j, row in enumerate(rows):
        words = row.utterance.split()
        filler = FILLERS[j % len(FILLERS)]
        pos = j % (len(words) + 1)
        variant(row, " ".join(words[:pos] + [filler] + words[pos:]))
        if j % 3 == 1:
            variant(row, _PREFIXES[j % len(_PREFIXES)] + row.utterance)
        if j % 7 == 3:
            variant(row, row.utterance + _SUFFIXES[(j // 7) % len(_SUFFIXES)])
    return out


def _decorate(rng: random.Random, utterance: str) -> str:
    words = utterance.split()
    if rng.random() < 0.15:
        pos = rng.randint(0, len(words))
        words.insert(pos, rng.choice(FILLERS))
    text = " ".join(words)
    if rng.random() < 0.25:
        text = rng.choice(_PREFIXES) + text
    if rng.random() < 0.1:
        text = text + rng.choice(_SUFFIXES)
    return text


def gen_corpus(seed: int, size: int = DEFAULT_SIZE) -> Corpus:
    """Build a corpus of exactly `size` rows, deterministic per seed.

    Row selection is proportional per response class (base rows before
    variants), so rare classes are never starved by the cut; the seed
    drives row order, the train/test split, and any decorated top-up
    beyond the fixed pool.
    """
    if size < MIN_SIZE:
        raise ValueError(f"size must be at least {MIN_SIZE}")
    rng = random.Random(seed)
    base = _base_rows()

    by_class: dict[tuple, list[TrainingPair]] = {}
    for row in base:
        by_class.setdefault(row.response_key(), []).append(row)
    class_keys = sorted(by_class)
    pools = {key: by_class[key] + _class_variants(by_class[key])
             for key in class_keys}
    pool_total = sum(len(p) for p in pools.values())

    # guaranteed single rows first, labels round-robin, so even tiny
    # corpora carry label diversity
    quotas = {key: 0 for key in class_keys}
    by_label: dict[str, list[tuple]] = {}
    for key in class_keys:
        by_label.setdefault(key[2], []).append(key)
    granted = 0
    buckets = [list(by_label[lb]) for lb in sorted(by_label)]
    while granted < min(size, len(class_keys)) and any(buckets):
        for bucket in buckets:
            if bucket and granted < min(size, len(class_keys)):
                quotas[bucket.pop(0)] = 1
                granted += 1

    # largest-remainder proportional fill across classes
    want = min(size, pool_total)
    shares = {key: len(pools[key]) * want / pool_total for key in class_keys}
    for key in class_keys:
        quotas[key] = max(quotas[key], min(int(shares[key]), len(pools[key])))
    remainders = sorted(class_keys,
                        key=lambda k: (shares[k] - int(shares[k])), reverse=True)
    i = 0
    while sum(quotas.values()) < want:
        key = remainders[i % len(remainders)]
        if quotas[key] < len(pools[key]):
            quotas[key] += 1
        i += 1

    rows: list[TrainingPair] = []
    seen: set[tuple] = set()

    def push(pair: TrainingPair) -> bool:
        key = (pair.utterance, pair.rn_instruction)
        if key in seen:
            return False
        seen.add(key)
        rows.append(pair)
        return True

    for key in class_keys:
        for row in pools[key][:quotas[key]]:
            push(row)

    # randomly decorated top-up for sizes beyond the fixed pool
    attempts = 0
    while len(rows) < size and attempts < size * 50:
        key = class_keys[attempts % len(class_keys)]
        template = rng.choice(by_class[key])
        utterance = _decorate(rng, template.utterance)
        push(TrainingPair(utterance, template.commander_response,
                          template.rn_instruction, template.label))
        attempts += 1

    rng.shuffle(rows)
    return Corpus(rows[:size], split_seed=seed)

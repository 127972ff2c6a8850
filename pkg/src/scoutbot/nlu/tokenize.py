"""Tokenizer for Commander utterances.

Lowercased alphanumeric tokens. Fillers ("uh", "um", "like") are kept:
they occur in the training data and carry signal about how people
actually phrase commands.
"""

import re

_TOKEN_RE = re.compile(r"[a-z0-9]+")

FILLERS = ("uh", "um", "like")


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())

from .corpus import (
    LABELS,
    Corpus,
    CorpusError,
    TrainingPair,
    load_corpus,
    save_corpus,
)
from .model import (
    DEFAULT_LAMBDA,
    NO_MATCH_FEEDBACK,
    ModelError,
    RelevanceModel,
    ResponseClass,
    calibrate_tau,
    evaluate,
    load_model,
    save_model,
    train,
)
from .tokenize import FILLERS, tokenize

__all__ = [
    "LABELS", "Corpus", "CorpusError", "TrainingPair", "load_corpus", "save_corpus",
    "DEFAULT_LAMBDA", "NO_MATCH_FEEDBACK", "ModelError", "RelevanceModel",
    "ResponseClass", "calibrate_tau", "evaluate", "load_model", "save_model", "train",
    "FILLERS", "tokenize",
]

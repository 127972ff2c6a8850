import pytest

from scoutbot.harness.corpus_gen import gen_corpus
from scoutbot.nlu import Corpus, train

SEED = 1


@pytest.fixture(scope="session")
def seed1_corpus():
    return gen_corpus(SEED, 1500)


@pytest.fixture(scope="session")
def seed1_split(seed1_corpus):
    return seed1_corpus.split(0.2)


@pytest.fixture(scope="session")
def seed1_model(seed1_corpus, seed1_split):
    train_pairs, _ = seed1_split
    return train(Corpus(train_pairs, seed1_corpus.split_seed))


@pytest.fixture(scope="session")
def full_model(seed1_corpus):
    """Model trained on the whole seeded corpus (pipeline-style)."""
    return train(seed1_corpus)

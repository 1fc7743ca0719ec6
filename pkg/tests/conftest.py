import pytest

from expando.prepmodel import read_tagged_corpus, train
from expando.resources import (
    data_text,
    load_contractions,
    load_seed_lexicon,
    load_seed_model,
)


@pytest.fixture(scope="session")
def seed_lexicon():
    return load_seed_lexicon()


@pytest.fixture(scope="session")
def seed_model():
    return load_seed_model()


@pytest.fixture(scope="session")
def table1_model(seed_lexicon):
    corpus = read_tagged_corpus(data_text("corpus_table1.tsv"))
    return train(corpus, seed_lexicon)


@pytest.fixture(scope="session")
def contractions():
    return load_contractions()

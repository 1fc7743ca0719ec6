"""Access to the bundled seed resources (lexicon, model, corpora, fixtures)."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .lexicon import Lexicon, parse_lexicon
from .prepmodel import PrepModel, TaggedToken, read_tagged_corpus, train

SEED_LEXICON = "seed_lexicon.xml"
SEED_MODEL = "seed_model.tsv"
CONTRACTIONS = "contractions.tsv"
CORPUS_TABLE1 = "corpus_table1.tsv"
CORPUS_TRAIN = "corpus_train.tsv"
CORPUS_GOLDEN = "corpus_golden.tsv"
TABLE10 = "table10_coincidence.tsv"


def data_text(name: str) -> str:
    return resources.files("expando.data").joinpath(name).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def load_seed_lexicon() -> Lexicon:
    return parse_lexicon(data_text(SEED_LEXICON))


@lru_cache(maxsize=None)
def load_seed_model() -> PrepModel:
    return PrepModel.loads(data_text(SEED_MODEL))


@lru_cache(maxsize=None)
def load_contractions() -> dict[str, str]:
    table: dict[str, str] = {}
    for line in data_text(CONTRACTIONS).splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        spelled, contracted = line.split("\t")
        table[spelled] = contracted
    return table


def load_training_corpus() -> list[list[TaggedToken]]:
    return read_tagged_corpus(data_text(CORPUS_TRAIN))


def train_seed_model() -> PrepModel:
    """Retrain the seed model from the bundled corpus (used by tests)."""
    return train(load_training_corpus(), load_seed_lexicon())

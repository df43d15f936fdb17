import pytest

from bicat.corpus import corpus_instances
from bicat.presentation import DEFAULT_BOUNDS


@pytest.fixture(scope="session")
def corpus():
    return {i.name: i for i in corpus_instances()}


@pytest.fixture(scope="session")
def b():
    return DEFAULT_BOUNDS


def presentations(corpus):
    """Every distinct presentation in the corpus, base and invertible variants."""
    seen = {}
    for inst in corpus.values():
        for P in (inst.I, inst.A):
            seen.setdefault((inst.name, P.name), P)
    return seen

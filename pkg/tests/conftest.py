import logging

import pytest

from factorlab.engine import Calculus
from factorlab.gen.corpus import CorpusSpec
from factorlab.kernel.ars import Bounds

logging.basicConfig(level=logging.INFO)


@pytest.fixture
def beta_head():
    return Calculus('beta-head', ['beta'], 'head')


@pytest.fixture
def lambda_oplus():
    return Calculus('lambda-oplus', ['beta', 'oplus'], 'head', constants=['oplus'])


@pytest.fixture
def shuffling():
    return Calculus('shuffling', ['betav', 'sigma1', 'sigma3'], 'left')


@pytest.fixture
def small_corpus():
    return CorpusSpec(max_size=4)


@pytest.fixture
def small_bounds():
    return Bounds(path_bound=4, seq_depth=2, budget=20000)

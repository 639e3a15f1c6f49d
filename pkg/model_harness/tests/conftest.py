"""Shared corpora for the harness tests, built once per session through the
codegraphs command line (the only interface to the primary pipeline)."""

import pytest

from model_harness.experiment import build_corpus_files


@pytest.fixture(scope="session")
def corpus_files(tmp_path_factory):
    workdir = tmp_path_factory.mktemp("corpus")
    return build_corpus_files(workdir, seed=100, count=40, flaw_rate=0.4)

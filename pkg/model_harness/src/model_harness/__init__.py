"""Desk-scale classifier over graph files produced by the codegraphs CLI:
token-embedding node features, one gated graph recurrence step, parallel
width-1/2/3 convolutions with max pooling, and a binary vulnerability head.
"""

from .data import (
    CODE, EDGE_KINDS, THREE_PROP, GraphSample, SchemaError, VocabMismatch,
    load_graphs, load_vocab, sample_from_record,
)
from .experiment import Comparison, build_corpus_files, compare_models
from .model import GatedGraphStep, GraphClassifier, ModelConfig, ShapeError
from .train import (
    DataLeakage, RunSummary, SeedResult, accuracy_f1, run_seeds,
    stratified_split, train_eval, write_metrics,
)

__version__ = "0.1.0"

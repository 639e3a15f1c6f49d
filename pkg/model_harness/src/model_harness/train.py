"""Training and evaluation: stratified 80/20 split, Adam, accuracy and F1 in
percent, one model per seed with a best-F1 summary across seeds."""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass

import torch
from torch import nn

from .data import GraphSample
from .model import GraphClassifier, ModelConfig


class DataLeakage(AssertionError):
    """Train and evaluation splits share samples."""


def stratified_split(samples: list[GraphSample], train_frac: float = 0.8,
                     seed: int = 0) -> tuple[list[GraphSample], list[GraphSample]]:
    """Deterministic label-stratified split."""
    rng = random.Random(f"split:{seed}")
    train: list[GraphSample] = []
    test: list[GraphSample] = []
    for label in (0, 1):
        group = [s for s in samples if s.label == label]
        rng.shuffle(group)
        cut = int(round(len(group) * train_frac))
        train.extend(group[:cut])
        test.extend(group[cut:])
    train.sort(key=lambda s: s.sample_id)
    test.sort(key=lambda s: s.sample_id)
    return train, test


def accuracy_f1(labels: list[int], predictions: list[int]) -> tuple[float, float]:
    """(accuracy, F1 of the positive class), both in percent.

    When a class is absent so that F1 is undefined, returns 0 for F1 and
    emits a warning.
    """
    assert len(labels) == len(predictions) and labels
    correct = sum(1 for y, p in zip(labels, predictions) if y == p)
    acc = 100.0 * correct / len(labels)
    tp = sum(1 for y, p in zip(labels, predictions) if y == 1 and p == 1)
    fp = sum(1 for y, p in zip(labels, predictions) if y == 0 and p == 1)
    fn = sum(1 for y, p in zip(labels, predictions) if y == 1 and p == 0)
    if tp == 0 and (fp + fn == 0 or sum(labels) == 0):
        warnings.warn("F1 undefined (a class is absent); reporting 0")
        return acc, 0.0
    if 2 * tp + fp + fn == 0:
        return acc, 0.0
    return acc, 100.0 * 2 * tp / (2 * tp + fp + fn)


@dataclass
class SeedResult:
    seed: int
    acc: float
    f1: float


def _check_disjoint(train: list[GraphSample], test: list[GraphSample]) -> None:
    overlap = {s.sample_id for s in train} & {s.sample_id for s in test}
    if overlap:
        raise DataLeakage(f"{len(overlap)} samples appear in both splits")


def train_eval(train: list[GraphSample], test: list[GraphSample],
               vocab_size: int, cfg: ModelConfig | None = None,
               seed: int = 0, leak_mode: bool = False) -> SeedResult:
    """Train one model and evaluate on the held-out samples.

    ``leak_mode`` evaluates on the training samples instead (a smoke switch
    for the pipeline; off by default).
    """
    cfg = cfg or ModelConfig()
    if leak_mode:
        test = train
    else:
        _check_disjoint(train, test)

    torch.manual_seed(seed)
    model = GraphClassifier(vocab_size, cfg)
    optimizer = torch.optim.Adam(model.parameters(), lr=cfg.lr)
    loss_fn = nn.BCEWithLogitsLoss()
    order_rng = random.Random(f"order:{seed}")

    model.train()
    for _epoch in range(cfg.epochs):
        order = list(range(len(train)))
        order_rng.shuffle(order)
        for start in range(0, len(order), cfg.batch):
            chunk = order[start:start + cfg.batch]
            optimizer.zero_grad()
            total = None
            for idx in chunk:
                sample = train[idx]
                logit = model(sample)
                loss = loss_fn(logit, torch.tensor(float(sample.label)))
                total = loss if total is None else total + loss
            (total / len(chunk)).backward()
            optimizer.step()

    model.eval()
    labels, preds = [], []
    with torch.no_grad():
        for sample in test:
            logit = model(sample)
            labels.append(sample.label)
            preds.append(int(torch.sigmoid(logit).item() > 0.5))
    acc, f1 = accuracy_f1(labels, preds)
    return SeedResult(seed, acc, f1)


@dataclass
class RunSummary:
    results: list[SeedResult]

    @property
    def best(self) -> SeedResult:
        return max(self.results, key=lambda r: r.f1)

    @property
    def mean_f1(self) -> float:
        return sum(r.f1 for r in self.results) / len(self.results)

    @property
    def mean_acc(self) -> float:
        return sum(r.acc for r in self.results) / len(self.results)


def run_seeds(train: list[GraphSample], test: list[GraphSample],
              vocab_size: int, cfg: ModelConfig | None = None,
              seeds: tuple[int, ...] | None = None) -> RunSummary:
    cfg = cfg or ModelConfig()
    seeds = seeds if seeds is not None else cfg.seeds
    return RunSummary([train_eval(train, test, vocab_size, cfg, seed)
                       for seed in seeds])


def write_metrics(rows: list[tuple], path) -> None:
    """Rows are (seed, variant, encoding, acc, f1)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("seed,variant,encoding,acc,f1\n")
        for seed, variant, encoding, acc, f1 in rows:
            fh.write(f"{seed},{variant},{encoding},{acc:.2f},{f1:.2f}\n")

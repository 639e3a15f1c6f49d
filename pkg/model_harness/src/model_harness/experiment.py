"""The comparison experiment: nameless 3-property ASG model against the
code-token AST baseline on one synthetic corpus.

The corpus and the graph files come from the codegraphs command line, which
is the only interface this package uses; the graph and vocab files are then
consumed directly.
"""

from __future__ import annotations

import subprocess
import sys
from dataclasses import dataclass
from pathlib import Path

from .data import CODE, THREE_PROP, load_graphs, load_vocab
from .model import ModelConfig
from .train import RunSummary, run_seeds, stratified_split, write_metrics

PIPELINE = (sys.executable, "-m", "codegraphs.cli")


def run_pipeline(*args: str) -> None:
    result = subprocess.run([*PIPELINE, *args], capture_output=True, text=True)
    if result.returncode != 0:
        raise RuntimeError(
            f"codegraphs {' '.join(args)} failed: {result.stderr.strip()}")


def build_corpus_files(workdir, seed: int, count: int, flaw_rate: float) -> dict:
    """Generate a corpus and build both graph-file flavors."""
    workdir = Path(workdir)
    corpus = workdir / "corpus"
    run_pipeline("gen", "--seed", str(seed), "--count", str(count),
                 "--flaw-rate", str(flaw_rate), "--out-dir", str(corpus))
    manifest = corpus / "manifest.csv"
    files = {}
    for tag, variant, encoding in (("3prop_asg", "asg", "3prop"),
                                   ("code_ast", "ast", "code")):
        out = workdir / f"{tag}.jsonl"
        run_pipeline("build", str(manifest), "--variant", variant,
                     "--encoding", encoding, "--out", str(out))
        files[tag] = {"graphs": out, "vocab": Path(str(out) + ".vocab"),
                      "variant": variant, "encoding": encoding}
    return files


@dataclass
class Comparison:
    prop_summary: RunSummary
    code_summary: RunSummary

    @property
    def f1_gap(self) -> float:
        return self.prop_summary.mean_f1 - self.code_summary.mean_f1


def compare_models(workdir, seed: int = 0, count: int = 1000,
                   flaw_rate: float = 0.3, seeds: tuple[int, ...] = (0, 1, 2, 3, 4),
                   cfg: ModelConfig | None = None,
                   metrics_path=None) -> Comparison:
    cfg = cfg or ModelConfig()
    files = build_corpus_files(workdir, seed, count, flaw_rate)
    summaries = {}
    rows = []
    for tag, encoding in (("3prop_asg", THREE_PROP), ("code_ast", CODE)):
        info = files[tag]
        vocab = load_vocab(info["vocab"])
        samples = load_graphs(info["graphs"], vocab, encoding)
        train, test = stratified_split(samples, 0.8, seed)
        summary = run_seeds(train, test, len(vocab), cfg, seeds)
        summaries[tag] = summary
        rows += [(r.seed, info["variant"], info["encoding"], r.acc, r.f1)
                 for r in summary.results]
    if metrics_path is not None:
        write_metrics(rows, metrics_path)
    return Comparison(summaries["3prop_asg"], summaries["code_ast"])

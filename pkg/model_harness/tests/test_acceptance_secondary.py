"""Secondary acceptance: the nameless 3-property ASG model beats the
code-token AST baseline by at least five F1 points on held-out data,
averaged over five seeds, on a 1,000-sample synthetic corpus; plus the
shape and gradient contract (exercised in the model tests)."""

import time

from model_harness.experiment import compare_models
from model_harness.model import ModelConfig


def test_f1_gap_on_synthetic_corpus(tmp_path):
    start = time.time()
    comparison = compare_models(
        tmp_path, seed=0, count=1000, flaw_rate=0.3, seeds=(0, 1, 2, 3, 4),
        cfg=ModelConfig(epochs=8), metrics_path=tmp_path / "metrics.csv")
    elapsed = time.time() - start

    prop = comparison.prop_summary
    code = comparison.code_summary
    print(f"\n3prop asg  mean F1 {prop.mean_f1:.2f} (best {prop.best.f1:.2f}, "
          f"mean acc {prop.mean_acc:.2f})")
    print(f"code  ast  mean F1 {code.mean_f1:.2f} (best {code.best.f1:.2f}, "
          f"mean acc {code.mean_acc:.2f})")
    print(f"gap {comparison.f1_gap:.2f} points in {elapsed / 60:.1f} min")

    assert (tmp_path / "metrics.csv").read_text().count("\n") == 11
    assert comparison.f1_gap >= 5.0
    assert elapsed < 30 * 60
    print(f"[PASS] encoding advantage: gap {comparison.f1_gap:.2f} >= 5 F1 "
          f"points over 5 seeds, {elapsed / 60:.1f} min < 30 min")

"""Small, fast experiment runs whose summaries are pinned in tests/golden/regression.json."""
from __future__ import annotations

from metadist.acceptance import CONFIGS, ROOT
from metadist.config import load_config
from metadist.experiments import run_experiment

REGRESSION_GOLDEN = ROOT / "tests" / "golden" / "regression.json"

# case name -> (experiment, config, overrides)
CASES: dict = {
    "main1_bs12_r8": ("main1", "bs12", {"radius": 8}),
    "main1_lambda32_r6": ("main1", "lambda32", {"radius": 6}),
    "embedding_lambda32_r6": ("embedding", "lambda32", {"radius": 6}),
    "semidirect_diag2_r4": ("semidirect", "diag2", {"radius": 4}),
    "certificate_diag2": ("certificate", "diag2", {"fuzz_count": 300}),
    "kronecker_small": ("kronecker", "kronecker", {"fuzz_count": 50}),
    "lattice_cat": ("lattice", "companions", {"fuzz_count": 50}),
    "ring_zsqrt2": ("ring", "zsqrt2", {"fuzz_count": 20}),
    "bound": ("bound", "bound", {"fuzz_count": 200}),
}


def regression_summary(case: str) -> dict:
    """Summary of one case with wall time removed, so it is deterministic."""
    name, config, overrides = CASES[case]
    res = run_experiment(name, load_config(CONFIGS / f"{config}.toml").with_overrides(**overrides))
    out = res.summary()
    out.pop("wall_time")
    return out

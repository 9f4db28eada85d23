from __future__ import annotations

import subprocess
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from adapter_support import BENCH_CLI, TRUTH_ROWS, minimal_png


@pytest.fixture(scope="session")
def corpus(tmp_path_factory) -> tuple[Path, Path]:
    """(manifest path, truth csv path) for a small generated corpus."""
    base = tmp_path_factory.mktemp("adapter_corpus")
    src = base / "src"
    src.mkdir()
    for i, (name, _) in enumerate(TRUTH_ROWS):
        (src / name).write_bytes(minimal_png(8, 8, seed=i + 1))
    out = base / "out"
    proc = subprocess.run(
        BENCH_CLI
        + ["generate", "--corpus", str(src), "--out", str(out), "--seed", "21",
           "--sp-levels", "0", "0.1", "--ga-levels", "0", "0.1", "--ro-levels", "-30", "0", "30"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    truth = base / "truth.csv"
    truth.write_text("filename,label\n" + "".join(f"{n},{l}\n" for n, l in TRUTH_ROWS), encoding="utf-8")
    return out / "manifest.json", truth


@pytest.fixture()
def oracle_model_file(corpus, tmp_path) -> Path:
    """In-process model that predicts by looking filenames up in the truth table."""
    _, truth = corpus
    module = tmp_path / "oracle_model.py"
    module.write_text(
        "import csv, os\n"
        f"TRUTH = {{row[0]: row[1] for row in csv.reader(open({str(truth)!r})) if row and row[0] != 'filename'}}\n"
        "def predict(paths):\n"
        "    return [TRUTH[os.path.basename(p)] for p in paths]\n",
        encoding="utf-8",
    )
    return module

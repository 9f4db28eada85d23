"""Model invocation protocols: in-process Python callables and subprocesses.

A model maps a list of image paths to a list of predicted labels, one per
path, in order. The subprocess protocol lets any framework (or a plain
script) participate: the command is invoked with two extra arguments, a
text file of image paths (one per line) and the output path where it must
write one label per line.
"""

from __future__ import annotations

import importlib
import importlib.util
import shlex
import subprocess
import tempfile
from pathlib import Path
from typing import Callable, Protocol, Sequence


class ModelError(RuntimeError):
    """The model failed to produce labels for a batch."""


class Model(Protocol):
    def predict(self, paths: Sequence[Path]) -> list[str]: ...


class PythonModel:
    """In-process model loaded from "module:callable" or "file.py:callable"."""

    def __init__(self, spec: str):
        if ":" not in spec:
            raise ValueError(f"model spec must be 'module:callable' or 'file.py:callable', got {spec!r}")
        target, attr = spec.rsplit(":", 1)
        if target.endswith(".py"):
            module_path = Path(target)
            module_spec = importlib.util.spec_from_file_location(module_path.stem, module_path)
            if module_spec is None or module_spec.loader is None:
                raise ValueError(f"cannot load model module from {target}")
            module = importlib.util.module_from_spec(module_spec)
            module_spec.loader.exec_module(module)
        else:
            module = importlib.import_module(target)
        fn = getattr(module, attr, None)
        if not callable(fn):
            raise ValueError(f"{spec!r} does not name a callable")
        self._spec = spec
        self._fn: Callable[[list[str]], Sequence[str]] = fn

    def predict(self, paths: Sequence[Path]) -> list[str]:
        try:
            labels = list(self._fn([str(p) for p in paths]))
        except Exception as exc:
            raise ModelError(f"model {self._spec} failed: {exc}") from exc
        if len(labels) != len(paths):
            raise ModelError(f"model {self._spec} returned {len(labels)} labels for {len(paths)} paths")
        return [str(label) for label in labels]


class SubprocessModel:
    """Model behind a command: `cmd <paths_file> <labels_file>`."""

    def __init__(self, command: str):
        self._argv = shlex.split(command)
        if not self._argv:
            raise ValueError("empty model command")

    def predict(self, paths: Sequence[Path]) -> list[str]:
        with tempfile.TemporaryDirectory(prefix="mcvbench-adapter-") as tmp:
            paths_file = Path(tmp) / "paths.txt"
            labels_file = Path(tmp) / "labels.txt"
            paths_file.write_text("".join(f"{p}\n" for p in paths), encoding="utf-8")
            proc = subprocess.run(
                self._argv + [str(paths_file), str(labels_file)],
                capture_output=True,
                text=True,
            )
            if proc.returncode != 0:
                raise ModelError(
                    f"model command {' '.join(self._argv)} exited {proc.returncode}: {proc.stderr.strip()}"
                )
            if not labels_file.is_file():
                raise ModelError(f"model command wrote no labels file {labels_file}")
            labels = labels_file.read_text(encoding="utf-8").splitlines()
        if len(labels) != len(paths):
            raise ModelError(f"model command returned {len(labels)} labels for {len(paths)} paths")
        return labels

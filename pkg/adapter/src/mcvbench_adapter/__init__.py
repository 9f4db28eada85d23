"""Model adapter: run a user-supplied classifier over a benchmark corpus.

Consumes the benchmark toolchain only through its external interfaces
(manifest JSON, corpus tree, results-CSV wire format); never imports it.
"""

from mcvbench_adapter.adapter import AdapterConfig, AdapterError, evaluate
from mcvbench_adapter.models import PythonModel, SubprocessModel

__version__ = "0.1.0"

__all__ = ["AdapterConfig", "AdapterError", "PythonModel", "SubprocessModel", "evaluate"]

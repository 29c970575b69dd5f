"""Code comment completion toolkit: corpus extraction, task generation, n-gram baseline, evaluation."""

from pathlib import Path

__version__ = "0.1.0"

MINI_CORPUS = Path(__file__).parent / "data" / "minicorpus"

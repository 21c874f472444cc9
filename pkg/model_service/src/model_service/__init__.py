"""Fine-tuning and serving for the ten-label sentiment classifier.

This package is the model side of the sinosent toolchain: it trains a
transformer classifier on a labeled ten-category dataset and serves the
same `/classify` wire protocol the pipeline's remote backend consumes.
"""

from .labels import LABELS, NUM_LABELS

__all__ = ["LABELS", "NUM_LABELS"]

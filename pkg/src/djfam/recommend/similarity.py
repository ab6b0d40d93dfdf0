"""Vector standardization and cosine similarity.

Raw feature dimensions live on wildly different scales (centroid ~1e3 Hz
vs zcr ~1e-1), so vectors are z-scored per dimension over the dyad's
combined playlists before comparison. A ``raw_cosine`` switch restores
plain cosine over unstandardized vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidInputError

DEGENERATE_STD = 1e-12


@dataclass(frozen=True)
class CorpusStats:
    """Per-dimension mean/std over the vectors in scope."""

    mean: np.ndarray
    std: np.ndarray

    def __post_init__(self):
        if self.mean.shape != self.std.shape or self.mean.ndim != 1:
            raise InvalidInputError("corpus stats must be matching 1-D arrays")
        if np.any(self.std < 0):
            raise InvalidInputError("corpus std must be non-negative")

    @property
    def degenerate(self) -> np.ndarray:
        """Mask of dimensions with (near-)zero spread across the corpus."""
        return self.std < DEGENERATE_STD

    def apply(self, vectors: np.ndarray) -> np.ndarray:
        """Z-score vectors (1-D or row-wise 2-D); degenerate dimensions go to 0."""
        centered = np.asarray(vectors, dtype=np.float64) - self.mean
        safe = np.where(self.degenerate, 1.0, self.std)
        return np.where(self.degenerate, 0.0, centered / safe)


def corpus_stats(vectors: np.ndarray) -> CorpusStats:
    """Population mean/std per dimension over >= 1 vectors."""
    matrix = np.atleast_2d(np.asarray(vectors, dtype=np.float64))
    if matrix.shape[0] < 1 or matrix.size == 0:
        raise InvalidInputError("need at least one vector for corpus stats")
    return CorpusStats(mean=matrix.mean(axis=0), std=matrix.std(axis=0))


def standardize(vectors, fingerprints=None) -> tuple[np.ndarray, CorpusStats]:
    """Z-score a vector set with its own stats.

    When fingerprints are given they must all match: vectors produced
    under different feature configs are not comparable.
    """
    if fingerprints is not None:
        unique = set(fingerprints)
        if len(unique) > 1:
            raise InvalidInputError(f"mixed feature-config fingerprints: {sorted(unique)}")
    matrix = np.atleast_2d(np.asarray(vectors, dtype=np.float64))
    stats = corpus_stats(matrix)
    return stats.apply(matrix), stats


def cosine_similarity(a, b) -> float:
    """dot(a, b) / (|a| |b|), clamped to [-1, 1]; zero-norm vectors score 0."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise InvalidInputError("cosine similarity needs two equal-length 1-D vectors")
    norm_a = float(np.linalg.norm(a))
    norm_b = float(np.linalg.norm(b))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    return float(np.clip(float(a @ b) / (norm_a * norm_b), -1.0, 1.0))

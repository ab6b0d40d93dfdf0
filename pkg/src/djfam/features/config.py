"""Analysis configuration for the audio featurizer.

Encoding standards:
- Audio: mono, 22.05 kHz, float64 amplitudes in [-1, 1]
- Frames: 2048 samples, hop 512, periodic Hann window, final partial
  frame dropped
- Mel filterbank: 26 triangular filters, HTK mel scale, 0 .. sr/2
- 13 cepstral coefficients via orthonormal DCT-II of log filter energies

Two feature vectors are only comparable when they were produced under
the same configuration; the ``fingerprint`` ties a vector to the exact
parameter set that produced it.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, asdict

DEFAULT_SAMPLE_RATE = 22050


@dataclass(frozen=True)
class FeatureConfig:
    """Frozen parameter set for feature extraction."""

    sample_rate: int = DEFAULT_SAMPLE_RATE
    frame_size: int = 2048
    hop: int = 512
    n_mels: int = 26
    n_mfcc: int = 13
    rolloff_fraction: float = 0.85
    # Band edges in Hz for the spectral-contrast bands; the last edge is
    # pinned to sample_rate / 2 at construction time.
    contrast_band_edges: tuple = (0.0, 200.0, 400.0, 800.0, 1600.0, 3200.0, 6400.0, 11025.0)
    contrast_quantile: float = 0.02
    log_floor: float = 1e-10

    def __post_init__(self):
        if self.frame_size <= 0 or self.frame_size & (self.frame_size - 1):
            raise ValueError("frame_size must be a power of two")
        if not 0 < self.hop <= self.frame_size:
            raise ValueError("hop must be in (0, frame_size]")
        if not 0.0 < self.rolloff_fraction < 1.0:
            raise ValueError("rolloff_fraction must be in (0, 1)")
        if self.contrast_band_edges[-1] != self.sample_rate / 2:
            object.__setattr__(
                self,
                "contrast_band_edges",
                tuple(self.contrast_band_edges[:-1]) + (self.sample_rate / 2,),
            )

    @property
    def n_bins(self) -> int:
        """Number of non-negative frequency bins per frame."""
        return self.frame_size // 2 + 1

    @property
    def bin_width_hz(self) -> float:
        return self.sample_rate / self.frame_size

    @property
    def n_contrast_bands(self) -> int:
        return len(self.contrast_band_edges) - 1

    def fingerprint(self) -> str:
        """Stable hash of the full parameter set."""
        payload = json.dumps(asdict(self), sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


# Base per-frame feature layout: 1 zcr + 1 centroid + 1 bandwidth +
# 1 rolloff + 7 contrast + 13 mfcc = 24 values.
N_BASE_FEATURES = 24
# Aggregated vector: means ++ medians ++ population stds of the 24.
VECTOR_DIM = 3 * N_BASE_FEATURES

BASE_FEATURE_NAMES = (
    ["zcr", "centroid", "bandwidth", "rolloff"]
    + [f"contrast_{i}" for i in range(7)]
    + [f"mfcc_{i}" for i in range(13)]
)

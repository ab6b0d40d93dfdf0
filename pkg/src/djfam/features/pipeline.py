"""The clip -> feature-vector pipeline.

For every frame: Hann window -> rFFT -> spectral descriptors + MFCC;
zero crossing rate on the raw frame. The 24 per-frame features are then
aggregated to a 72-dim vector of per-dimension mean, median, and
population standard deviation. Pure function of (samples, config):
repeated runs are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidInputError
from .config import FeatureConfig, N_BASE_FEATURES, VECTOR_DIM
from .framing import frame_signal, validate_clip
from .mel import mfcc
from .spectral import magnitude_spectrum, spectral_descriptors, zero_crossing_rate


@dataclass(frozen=True)
class AudioClip:
    """Mono audio: amplitudes in [-1, 1] at a known sample rate."""

    samples: np.ndarray
    sample_rate: int


@dataclass(frozen=True)
class FeatureVector:
    """72-dim aggregate: [mean x24] ++ [median x24] ++ [population std x24]."""

    values: np.ndarray
    config_fingerprint: str

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != (VECTOR_DIM,):
            raise InvalidInputError(f"feature vector must have {VECTOR_DIM} dimensions")
        if not np.all(np.isfinite(values)):
            raise InvalidInputError("feature vector contains non-finite values")
        if np.any(values[2 * N_BASE_FEATURES :] < 0):
            raise InvalidInputError("std entries must be non-negative")
        object.__setattr__(self, "values", values)

    def to_list(self) -> list[float]:
        return [float(v) for v in self.values]


# Frames per processing block; keeps the ~1000-bin spectral intermediates
# inside the cache instead of materializing the whole spectrogram.
_BLOCK = 512


def frame_features(frames: np.ndarray, cfg: FeatureConfig) -> np.ndarray:
    """(n_frames, 24) matrix: zcr, centroid, bandwidth, rolloff, contrast[7], mfcc[13]."""
    frames = np.atleast_2d(np.asarray(frames, dtype=np.float64))
    n = frames.shape[0]
    out = np.empty((n, N_BASE_FEATURES))
    for start in range(0, n, _BLOCK):
        block = frames[start : start + _BLOCK]
        spectrum = magnitude_spectrum(block, cfg)
        desc = spectral_descriptors(spectrum, cfg)
        rows = out[start : start + _BLOCK]
        rows[:, 0] = zero_crossing_rate(block)
        rows[:, 1] = desc["centroid"]
        rows[:, 2] = desc["bandwidth"]
        rows[:, 3] = desc["rolloff"]
        rows[:, 4:11] = desc["contrast"]
        rows[:, 11:] = mfcc(spectrum**2, cfg)
    return out


def aggregate_stats(per_frame: np.ndarray, cfg: FeatureConfig) -> FeatureVector:
    """Collapse per-frame features to mean/median/population-std per dimension."""
    per_frame = np.atleast_2d(np.asarray(per_frame, dtype=np.float64))
    if per_frame.shape[0] < 1 or per_frame.size == 0:
        raise InvalidInputError("need at least one frame to aggregate")
    if per_frame.shape[1] != N_BASE_FEATURES:
        raise InvalidInputError(f"expected {N_BASE_FEATURES} base features per frame")
    values = np.concatenate(
        [
            per_frame.mean(axis=0),
            np.median(per_frame, axis=0),
            per_frame.std(axis=0),  # ddof=0: population std
        ]
    )
    return FeatureVector(values=values, config_fingerprint=cfg.fingerprint())


def featurize(clip: AudioClip, cfg: FeatureConfig | None = None) -> FeatureVector:
    """Featurize a full clip; deterministic for a given (samples, cfg)."""
    cfg = cfg or FeatureConfig()
    samples = validate_clip(clip.samples, clip.sample_rate, cfg)
    frames = frame_signal(samples, cfg)
    return aggregate_stats(frame_features(frames, cfg), cfg)

"""Signal framing and windowing.

Frames start at offsets 0, hop, 2*hop, ...; a trailing partial frame is
dropped rather than zero-padded so that window artifacts never leak into
the aggregate statistics.
"""

from __future__ import annotations

import numpy as np

from ..errors import AudioTooShortError, InvalidInputError
from .config import FeatureConfig


def validate_clip(samples: np.ndarray, sample_rate: int, cfg: FeatureConfig) -> np.ndarray:
    """Check the AudioClip invariants and return samples as float64."""
    samples = np.asarray(samples, dtype=np.float64)
    if samples.ndim != 1:
        raise InvalidInputError("expected a mono 1-D sample array")
    if sample_rate != cfg.sample_rate:
        raise InvalidInputError(
            f"clip sample rate {sample_rate} != configured {cfg.sample_rate}"
        )
    if not np.all(np.isfinite(samples)):
        raise InvalidInputError("samples contain non-finite values")
    if samples.size < cfg.frame_size:
        raise AudioTooShortError(
            f"audio too short: {samples.size} samples < one frame ({cfg.frame_size})"
        )
    return samples


def frame_count(n_samples: int, cfg: FeatureConfig) -> int:
    return (n_samples - cfg.frame_size) // cfg.hop + 1


def frame_signal(samples: np.ndarray, cfg: FeatureConfig) -> np.ndarray:
    """Slice a signal into overlapping analysis frames.

    Returns a read-only (n_frames, frame_size) view; raises
    AudioTooShortError when not even one full frame fits.
    """
    samples = np.ascontiguousarray(samples, dtype=np.float64)
    if samples.size < cfg.frame_size:
        raise AudioTooShortError(
            f"audio too short: {samples.size} samples < one frame ({cfg.frame_size})"
        )
    n = frame_count(samples.size, cfg)
    stride = samples.strides[0]
    frames = np.lib.stride_tricks.as_strided(
        samples,
        shape=(n, cfg.frame_size),
        strides=(cfg.hop * stride, stride),
        writeable=False,
    )
    return frames


def hann_window(frame_size: int) -> np.ndarray:
    """Periodic Hann window (the DFT-analysis variant)."""
    return 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(frame_size) / frame_size)

"""PCM WAV ingestion: decode, downmix, resample.

Accepts 8/16/24-bit integer and 32-bit float PCM, mono or stereo, any
sample rate. Channels are averaged to mono and the signal is linearly
resampled to the featurizer's 22050 Hz.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np
from scipy.io import wavfile

from ..errors import InvalidInputError

_INT_SCALES = {
    np.dtype(np.int16): 2**15,
    np.dtype(np.int32): 2**31,  # scipy widens 24-bit PCM into int32
}


def decode_wav(payload: bytes | str | Path) -> tuple[np.ndarray, int]:
    """Decode WAV bytes or a file path to (float64 samples in [-1,1], rate)."""
    source = io.BytesIO(payload) if isinstance(payload, bytes) else str(payload)
    try:
        rate, data = wavfile.read(source)
    except Exception as exc:
        raise InvalidInputError(f"unsupported or corrupt WAV: {exc}") from exc

    if data.ndim == 2:
        if data.shape[1] > 2:
            raise InvalidInputError(f"expected 1-2 channels, got {data.shape[1]}")
        samples = data.astype(np.float64).mean(axis=1)
    elif data.ndim == 1:
        samples = data.astype(np.float64)
    else:
        raise InvalidInputError("unrecognized WAV sample layout")

    if data.dtype == np.uint8:
        samples = (samples - 128.0) / 128.0
    elif data.dtype in _INT_SCALES:
        samples = samples / _INT_SCALES[data.dtype]
    elif data.dtype in (np.float32, np.float64):
        pass
    else:
        raise InvalidInputError(f"unsupported WAV sample format: {data.dtype}")

    if samples.size == 0:
        raise InvalidInputError("WAV contains no samples")
    if not np.all(np.isfinite(samples)):
        raise InvalidInputError("WAV contains non-finite samples")
    return np.clip(samples, -1.0, 1.0), int(rate)


def resample_linear(samples: np.ndarray, src_rate: int, dst_rate: int) -> np.ndarray:
    """Linear-interpolation resampler; edge samples clamp."""
    if src_rate == dst_rate:
        return np.asarray(samples, dtype=np.float64)
    samples = np.asarray(samples, dtype=np.float64)
    n_out = max(1, int(round(samples.size * dst_rate / src_rate)))
    positions = np.arange(n_out) * (src_rate / dst_rate)
    return np.interp(positions, np.arange(samples.size), samples)


def load_audio(payload: bytes | str | Path, target_rate: int) -> np.ndarray:
    """Decode + downmix + resample in one step."""
    samples, rate = decode_wav(payload)
    return resample_linear(samples, rate, target_rate)

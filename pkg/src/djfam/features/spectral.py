"""Per-frame time- and frequency-domain descriptors.

All functions accept either a single frame/spectrum (1-D) or a batch
(2-D, one row per frame) and are vectorized over the batch axis. Silent
input follows the silence convention: all-zero spectra produce zero
descriptors instead of NaN.
"""

from __future__ import annotations

import numpy as np

from .config import FeatureConfig


def zero_crossing_rate(frame: np.ndarray) -> float | np.ndarray:
    """Fraction of adjacent sample pairs with strictly opposite sign.

    Zero counts as non-negative, so silence has rate 0.
    """
    x = np.asarray(frame, dtype=np.float64)
    squeeze = x.ndim == 1
    x = np.atleast_2d(x)
    if x.shape[1] < 2:
        raise ValueError("frame must hold at least 2 samples")
    nonneg = x >= 0.0
    flips = nonneg[:, 1:] != nonneg[:, :-1]
    rate = flips.sum(axis=1) / (x.shape[1] - 1)
    return float(rate[0]) if squeeze else rate


def bin_frequencies(cfg: FeatureConfig) -> np.ndarray:
    """Center frequency of each rFFT bin, 0 .. sr/2."""
    return np.arange(cfg.n_bins) * cfg.bin_width_hz


def magnitude_spectrum(frames: np.ndarray, cfg: FeatureConfig) -> np.ndarray:
    """|rFFT| of Hann-windowed frames; (n_bins,) for one frame, else (n_frames, n_bins)."""
    from .framing import hann_window

    x = np.asarray(frames, dtype=np.float64)
    squeeze = x.ndim == 1
    x = np.atleast_2d(x)
    spec = np.abs(np.fft.rfft(x * hann_window(cfg.frame_size), axis=1))
    return spec[0] if squeeze else spec


def _contrast_band_slices(cfg: FeatureConfig) -> list[slice]:
    """Bin index ranges per contrast band: edge[b] <= f < edge[b+1].

    The top band is closed on the right so the Nyquist bin belongs to it.
    """
    freqs = bin_frequencies(cfg)
    edges = cfg.contrast_band_edges
    slices = []
    for b in range(cfg.n_contrast_bands):
        lo, hi = edges[b], edges[b + 1]
        if b == cfg.n_contrast_bands - 1:
            idx = np.nonzero((freqs >= lo) & (freqs <= hi))[0]
        else:
            idx = np.nonzero((freqs >= lo) & (freqs < hi))[0]
        slices.append(slice(int(idx[0]), int(idx[-1]) + 1))
    return slices


def spectral_contrast(spectrum: np.ndarray, cfg: FeatureConfig) -> np.ndarray:
    """Per-band log10 ratio of top-quantile to bottom-quantile magnitudes."""
    s = np.atleast_2d(np.asarray(spectrum, dtype=np.float64))
    out = np.empty((s.shape[0], cfg.n_contrast_bands))
    for b, band in enumerate(_contrast_band_slices(cfg)):
        band_mags = np.sort(s[:, band], axis=1)
        n_band = band_mags.shape[1]
        # floor(x + 0.5) instead of round() to avoid banker's rounding
        q = max(1, int(cfg.contrast_quantile * n_band + 0.5))
        top = band_mags[:, -q:].mean(axis=1)
        bottom = band_mags[:, :q].mean(axis=1)
        out[:, b] = np.log10((top + cfg.log_floor) / (bottom + cfg.log_floor))
    return out[0] if np.asarray(spectrum).ndim == 1 else out


def spectral_descriptors(spectrum: np.ndarray, cfg: FeatureConfig) -> dict:
    """Centroid, bandwidth, rolloff, and contrast of a magnitude spectrum.

    centroid  = sum(f * m) / sum(m)
    bandwidth = sqrt(sum((f - centroid)^2 * m) / sum(m))
    rolloff   = lowest bin frequency where cumulative m^2 reaches
                rolloff_fraction of the total
    """
    s = np.atleast_2d(np.asarray(spectrum, dtype=np.float64))
    squeeze = np.asarray(spectrum).ndim == 1
    if s.shape[1] != cfg.n_bins:
        raise ValueError(f"expected {cfg.n_bins} spectrum bins, got {s.shape[1]}")
    if np.any(s < 0):
        raise ValueError("magnitude spectrum must be non-negative")

    freqs = bin_frequencies(cfg)
    total = s.sum(axis=1)
    live = total > 0.0
    safe_total = np.where(live, total, 1.0)

    centroid = np.where(live, (s * freqs).sum(axis=1) / safe_total, 0.0)
    spread = (freqs[None, :] - centroid[:, None]) ** 2
    bandwidth = np.where(live, np.sqrt((spread * s).sum(axis=1) / safe_total), 0.0)

    power = s * s
    cum = np.cumsum(power, axis=1)
    threshold = cfg.rolloff_fraction * cum[:, -1]
    roll_idx = np.argmax(cum >= threshold[:, None], axis=1)
    rolloff = np.where(live, freqs[roll_idx], 0.0)

    contrast = spectral_contrast(s, cfg)

    result = {
        "centroid": centroid,
        "bandwidth": bandwidth,
        "rolloff": rolloff,
        "contrast": contrast,
    }
    if squeeze:
        result = {
            "centroid": float(centroid[0]),
            "bandwidth": float(bandwidth[0]),
            "rolloff": float(rolloff[0]),
            "contrast": contrast[0] if contrast.ndim == 2 else contrast,
        }
    return result

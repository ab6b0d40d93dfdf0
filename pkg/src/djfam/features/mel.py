"""Mel filterbank and cepstral coefficients.

HTK mel scale, mel(f) = 2595 * log10(1 + f / 700). Filters are unit-peak
triangles with centers equally spaced in mel between 0 and sr/2, sampled
at the exact rFFT bin frequencies. Filter energies pass through a
floored natural log and an orthonormal DCT-II; the first n_mfcc
coefficients are kept.
"""

from __future__ import annotations

import numpy as np
from scipy.fft import dct

from .config import FeatureConfig
from .spectral import bin_frequencies

_filterbank_cache: dict = {}


def hz_to_mel(f):
    return 2595.0 * np.log10(1.0 + np.asarray(f, dtype=np.float64) / 700.0)


def mel_to_hz(m):
    return 700.0 * (10.0 ** (np.asarray(m, dtype=np.float64) / 2595.0) - 1.0)


def mel_filterbank(cfg: FeatureConfig) -> np.ndarray:
    """(n_mels, n_bins) triangular filter weights, peak 1."""
    key = cfg.fingerprint()
    cached = _filterbank_cache.get(key)
    if cached is not None:
        return cached

    mel_points = np.linspace(0.0, hz_to_mel(cfg.sample_rate / 2.0), cfg.n_mels + 2)
    hz_points = mel_to_hz(mel_points)
    freqs = bin_frequencies(cfg)

    weights = np.zeros((cfg.n_mels, cfg.n_bins))
    for i in range(cfg.n_mels):
        left, center, right = hz_points[i], hz_points[i + 1], hz_points[i + 2]
        rising = (freqs - left) / (center - left)
        falling = (right - freqs) / (right - center)
        weights[i] = np.clip(np.minimum(rising, falling), 0.0, None)

    _filterbank_cache[key] = weights
    return weights


def mel_energies(power_spectrum: np.ndarray, cfg: FeatureConfig) -> np.ndarray:
    """Filterbank energies of a power spectrum (|rFFT|^2)."""
    p = np.atleast_2d(np.asarray(power_spectrum, dtype=np.float64))
    return p @ mel_filterbank(cfg).T


def mfcc(power_spectrum: np.ndarray, cfg: FeatureConfig) -> np.ndarray:
    """First n_mfcc cepstral coefficients of one frame (or a batch)."""
    p = np.asarray(power_spectrum, dtype=np.float64)
    squeeze = p.ndim == 1
    energies = mel_energies(p, cfg)
    log_energies = np.log(np.maximum(energies, cfg.log_floor))
    coeffs = dct(log_energies, type=2, norm="ortho", axis=1)[:, : cfg.n_mfcc]
    return coeffs[0] if squeeze else coeffs

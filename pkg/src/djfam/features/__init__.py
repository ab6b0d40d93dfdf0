from .config import FeatureConfig, BASE_FEATURE_NAMES, N_BASE_FEATURES, VECTOR_DIM
from .framing import frame_signal, hann_window
from .mel import mel_filterbank, mfcc
from .pipeline import AudioClip, FeatureVector, aggregate_stats, featurize, frame_features
from .spectral import (
    bin_frequencies,
    magnitude_spectrum,
    spectral_contrast,
    spectral_descriptors,
    zero_crossing_rate,
)

__all__ = [
    "AudioClip",
    "BASE_FEATURE_NAMES",
    "FeatureConfig",
    "FeatureVector",
    "N_BASE_FEATURES",
    "VECTOR_DIM",
    "aggregate_stats",
    "bin_frequencies",
    "featurize",
    "frame_features",
    "frame_signal",
    "hann_window",
    "magnitude_spectrum",
    "mel_filterbank",
    "mfcc",
    "spectral_contrast",
    "spectral_descriptors",
    "zero_crossing_rate",
]

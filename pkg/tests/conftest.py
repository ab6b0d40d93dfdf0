import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from djfam.features import AudioClip, FeatureConfig

SR = 22050


@pytest.fixture(scope="session")
def cfg() -> FeatureConfig:
    return FeatureConfig()


def make_tone(freq_hz: float, seconds: float = 3.0, amplitude: float = 0.5,
              sr: int = SR, phase: float = 0.0) -> AudioClip:
    t = np.arange(int(seconds * sr), dtype=np.float64) / sr
    return AudioClip(amplitude * np.sin(2.0 * np.pi * freq_hz * t + phase), sr)


def make_noise(seconds: float = 3.0, amplitude: float = 0.3, sr: int = SR,
               seed: int = 0) -> AudioClip:
    rng = np.random.default_rng(seed)
    n = int(seconds * sr)
    return AudioClip(amplitude * rng.uniform(-1.0, 1.0, n), sr)


@pytest.fixture(scope="session")
def tone_1khz() -> AudioClip:
    return make_tone(1000.0)


class FakeClock:
    """Deterministic clock for timestamp-sensitive tests."""

    def __init__(self, start: float = 1_750_000_000.0):
        self.now = start

    def __call__(self) -> float:
        return self.now

    def advance(self, seconds: float) -> None:
        self.now += seconds


def write_wav(path, samples, sr=SR, fmt="int16", stereo=False):
    """Write a PCM WAV test fixture in the given sample format."""
    import struct

    from scipy.io import wavfile

    samples = np.asarray(samples, dtype=np.float64)
    data = np.column_stack([samples, samples]) if stereo else samples

    if fmt == "int16":
        wavfile.write(path, sr, (data * 32767).astype(np.int16))
    elif fmt == "uint8":
        wavfile.write(path, sr, ((data * 127) + 128).astype(np.uint8))
    elif fmt == "float32":
        wavfile.write(path, sr, data.astype(np.float32))
    elif fmt == "int24":
        ints = (data * (2**23 - 1)).astype(np.int32)
        flat = ints.reshape(-1)
        payload = b"".join(struct.pack("<i", int(v))[:3] for v in flat)
        channels = 2 if stereo else 1
        header = (
            b"RIFF"
            + struct.pack("<I", 36 + len(payload))
            + b"WAVEfmt "
            + struct.pack("<IHHIIHH", 16, 1, channels, sr, sr * 3 * channels, 3 * channels, 24)
            + b"data"
            + struct.pack("<I", len(payload))
        )
        with open(path, "wb") as handle:
            handle.write(header + payload)
    else:
        raise ValueError(fmt)
    return path


def song_metadata(title, artist="The Examples", year=1995, **extra):
    meta = {
        "title": title,
        "artist": artist,
        "release_year": year,
        "genre": "pop",
        "lyrics": f"la la {title}",
        "popularity_rank": 1,
    }
    meta.update(extra)
    return meta


def make_corpus_wavs(directory, count, seconds=0.5, seed=100, sr=SR):
    """Procedural tone+noise WAVs with distinct content, one per song."""
    rng = np.random.default_rng(seed)
    paths = []
    n = int(seconds * sr)
    t = np.arange(n) / sr
    for i in range(count):
        freq = float(rng.uniform(150, 4000))
        tone = 0.4 * np.sin(2 * np.pi * freq * t)
        noise = 0.1 * rng.standard_normal(n)
        x = np.clip(tone + noise, -0.99, 0.99)
        path = directory / f"track{i:03d}.wav"
        write_wav(path, x, sr)
        paths.append(path)
    return paths

import numpy as np
import pytest

from djfam.errors import AudioTooShortError, InvalidInputError
from djfam.features import FeatureConfig, frame_signal, hann_window
from djfam.features.framing import validate_clip


@pytest.mark.parametrize(
    "n_samples, expected_frames",
    [
        (2048, 1),              # exactly one frame fits
        (4096, 5),              # floor((4096-2048)/512)+1
        (2048 + 511, 1),        # trailing partial dropped
        (2048 + 512, 2),
        (66150, 126),           # 3 s at 22050
    ],
)
def test_frame_count(n_samples, expected_frames, cfg):
    frames = frame_signal(np.zeros(n_samples), cfg)
    assert frames.shape == (expected_frames, cfg.frame_size)


def test_frame_offsets(cfg):
    x = np.arange(4096, dtype=np.float64)
    frames = frame_signal(x, cfg)
    for i, frame in enumerate(frames):
        assert frame[0] == i * cfg.hop
        assert frame[-1] == i * cfg.hop + cfg.frame_size - 1


def test_too_short_rejected(cfg):
    with pytest.raises(AudioTooShortError, match="audio too short"):
        frame_signal(np.zeros(2047), cfg)


def test_validate_clip_rejects_bad_input(cfg):
    with pytest.raises(InvalidInputError):
        validate_clip(np.zeros(5000), 44100, cfg)
    with pytest.raises(InvalidInputError):
        bad = np.zeros(5000)
        bad[17] = np.nan
        validate_clip(bad, 22050, cfg)
    with pytest.raises(AudioTooShortError):
        validate_clip(np.zeros(1000), 22050, cfg)


def test_hann_window_is_periodic_variant():
    w = hann_window(2048)
    assert w[0] == 0.0
    assert w[1024] == pytest.approx(1.0)
    # periodic: w[n] = 0.5 - 0.5 cos(2 pi n / N), so w[N-1] != 0
    assert w[-1] > 0.0
    assert np.all(w >= 0.0) and np.all(w <= 1.0)


def test_config_validation():
    with pytest.raises(ValueError):
        FeatureConfig(frame_size=1000)
    with pytest.raises(ValueError):
        FeatureConfig(hop=0)
    with pytest.raises(ValueError):
        FeatureConfig(rolloff_fraction=1.0)
    assert FeatureConfig().fingerprint() == FeatureConfig().fingerprint()
    assert FeatureConfig().fingerprint() != FeatureConfig(hop=256).fingerprint()

"""Service/CLI configuration.

One TOML file configures every subcommand; the DJFAM_CONFIG environment
variable overrides the path and command-line flags override individual
values. Feature-extraction parameters live in a [features] table and
feed the config fingerprint, so changing them forces re-featurization.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import InvalidInputError
from .features import FeatureConfig

ENV_VAR = "DJFAM_CONFIG"
DEFAULT_PATH = "djfam.toml"


@dataclass
class AppConfig:
    data_dir: str = "djfam-data"
    host: str = "127.0.0.1"
    port: int = 8080
    playlist_cap: int = 100
    recommend_k: int = 5
    no_repeat_window: int = 0
    raw_cosine: bool = False
    gap_threshold_s: float = 1800.0
    ingest_workers: int = 4
    features: dict = field(default_factory=dict)

    def feature_config(self) -> FeatureConfig:
        overrides = dict(self.features)
        if "contrast_band_edges" in overrides:
            overrides["contrast_band_edges"] = tuple(overrides["contrast_band_edges"])
        try:
            return FeatureConfig(**overrides)
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(f"bad [features] config: {exc}") from exc


def load_config(path: str | None = None) -> AppConfig:
    """Load config from the given path, $DJFAM_CONFIG, or ./djfam.toml."""
    candidate = path or os.environ.get(ENV_VAR) or DEFAULT_PATH
    candidate = Path(candidate)
    if path is None and not candidate.exists():
        return AppConfig()
    if not candidate.exists():
        raise InvalidInputError(f"config file not found: {candidate}")
    try:
        with open(candidate, "rb") as handle:
            raw = tomllib.load(handle)
    except tomllib.TOMLDecodeError as exc:
        raise InvalidInputError(f"malformed config {candidate}: {exc}") from exc

    known = {f.name for f in fields(AppConfig)}
    unknown = set(raw) - known
    if unknown:
        raise InvalidInputError(f"unknown config keys: {sorted(unknown)}")
    return AppConfig(**raw)
